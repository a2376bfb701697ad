"""Pure-Python graph kernels.

Bitmask-based primitives shared by the analysis modules.  Vertices are
integers 0..n-1; vertex sets are int bitmasks (arbitrary width, so graphs of
any size work here).  ``_speedups`` implements the same functions in C for
n <= 64; ``_kernel`` picks whichever applies.
"""

from __future__ import annotations


def reach_masks(n: int, adj: list[int]) -> list[int]:
    """Reflexive-transitive closure of the successor relation.

    ``adj[i]`` is the bitmask of direct successors of vertex i.  Returns one
    mask per vertex containing the vertex itself and everything reachable
    from it.
    """
    masks = [(1 << i) | adj[i] for i in range(n)]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = masks[i]
            rest = adj[i]
            while rest:
                low = rest & -rest
                rest ^= low
                acc |= masks[low.bit_length() - 1]
            if acc != masks[i]:
                masks[i] = acc
                changed = True
    return masks


def scc_labels(n: int, indptr: list[int], indices: list[int]) -> list[int]:
    """Strongly connected components of a CSR adjacency structure.

    Iterative Tarjan.  Components are renumbered so that label order follows
    the smallest member vertex index: the component containing the overall
    smallest unassigned vertex gets the smallest label, and so on.
    """
    UNSEEN = -1
    index = [UNSEEN] * n
    low = [0] * n
    onstack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != UNSEEN:
            continue
        work = [(root, 0)]
        while work:
            v, pos = work[-1]
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                onstack[v] = True
            descended = False
            start, end = indptr[v], indptr[v + 1]
            for k in range(start + pos, end):
                w = indices[k]
                if index[w] == UNSEEN:
                    work[-1] = (v, k - start + 1)
                    work.append((w, 0))
                    descended = True
                    break
                if onstack[w] and low[w] < low[v]:
                    low[v] = low[w]
            if descended:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    onstack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
    comps.sort(key=min)
    labels = [0] * n
    for lab, comp in enumerate(comps):
        for v in comp:
            labels[v] = lab
    return labels


def saturation_fixpoint(
    n: int,
    mask: int,
    reg_vs: list[int],
    reg_targets: list[int],
) -> tuple[int, int]:
    """Iterate the saturation step to a fixpoint.

    ``reg_vs`` lists the regular vertices, ``reg_targets`` their out-target
    masks (same order).  One round adds, simultaneously, every regular vertex
    outside the set whose targets all lie inside.  Returns the fixpoint mask
    and the number of rounds that grew the set.
    """
    rounds = 0
    while True:
        added = 0
        for v, targets in zip(reg_vs, reg_targets):
            bit = 1 << v
            if not mask & bit and not targets & ~mask:
                added |= bit
        if not added:
            return mask, rounds
        mask |= added
        rounds += 1
