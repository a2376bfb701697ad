"""Slow reference implementations used by the test suite.

Everything here recomputes from first principles — plain BFS over
``g.targets`` and explicit enumeration — and deliberately avoids the bitmask
kernels, the closure engine and the classifiers, so that agreement between
the two routes is meaningful evidence rather than a tautology.
"""

from __future__ import annotations

from .graph import OMEGA, Graph


def reach_sets(g: Graph) -> dict:
    """{v: set of vertices reachable from v} via breadth-first search."""
    out = {}
    for v in g.vertices:
        seen = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for t in g.targets(u):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        out[v] = frozenset(seen)
    return out


def _out_pairs(g: Graph, u: str, cap: int = 2):
    """(target, instance-token) pairs with multiplicities capped at ``cap``.

    Capping is harmless for counting closed simple paths into {0, 1, 2+}:
    a path through a third parallel edge always has a sibling through the
    first two, and a unique closed simple path cannot touch a multiplicity
    ≥ 2 bundle at all (swapping the instance would contradict uniqueness).
    """
    pairs = []
    for b in g.out_bundles(u):
        k = cap if b.mult is OMEGA else min(cap, b.mult)
        for i in range(k):
            pairs.append((b.target, (b.id, i)))
    return pairs


def csp_class_oracle(g: Graph, v: str) -> str:
    """|CSP(v)| as Zero/One/TwoPlus by bounded walk enumeration.

    Walks start and end at v, never revisit v internally, and visit each
    internal vertex at most twice.  The bound loses nothing: a unique closed
    simple path has no internal repeats at all (excising the repeat loop
    would produce a second one), and whenever two exist, a second one exists
    within the bound (take a shortest closed simple path different from the
    internally-simple one).
    """
    reach = reach_sets(g)
    visits = {u: 0 for u in g.vertices}
    count = 0

    def extend(u: str) -> None:
        nonlocal count
        for t, _inst in _out_pairs(g, u):
            if count >= 2:
                return
            if t == v:
                count += 1
                continue
            if visits[t] >= 2 or v not in reach[t]:
                continue
            visits[t] += 1
            extend(t)
            visits[t] -= 1

    extend(v)
    if count == 0:
        return "Zero"
    return "One" if count == 1 else "TwoPlus"


def hs_closure_oracle(g: Graph, X) -> frozenset:
    """Hereditary saturated closure by one-element-at-a-time fixpoint."""
    s = set(X)
    changed = True
    while changed:
        changed = False
        for u in list(s):
            for t in g.targets(u):
                if t not in s:
                    s.add(t)
                    changed = True
        for u in g.vertices:
            if u in s or not g.is_regular(u):
                continue
            if all(t in s for t in g.targets(u)):
                s.add(u)
                changed = True
    return frozenset(s)


def simple_cycles(g: Graph) -> tuple:
    """All vertex-simple cycles, each once, rooted at its smallest vertex."""
    order = {v: i for i, v in enumerate(g.vertices)}
    adj = {v: sorted(set(g.targets(v))) for v in g.vertices}
    found = []

    def dfs(start: str, u: str, path: list, onpath: set) -> None:
        for t in adj[u]:
            if t == start:
                found.append(tuple(path))
            elif order[t] > order[start] and t not in onpath:
                onpath.add(t)
                path.append(t)
                dfs(start, t, path, onpath)
                path.pop()
                onpath.remove(t)

    for s in g.vertices:
        dfs(s, s, [s], {s})
    return tuple(found)


def _out_instance_count(g: Graph, u: str):
    total = 0
    for b in g.out_bundles(u):
        if b.mult is OMEGA:
            return OMEGA
        total += b.mult
    return total


def _bifurcates(g: Graph, u: str) -> bool:
    c = _out_instance_count(g, u)
    return c is OMEGA or c >= 2


def cycles_without_exits_oracle(g: Graph) -> tuple:
    out = set()
    for cyc in simple_cycles(g):
        if all(_out_instance_count(g, u) == 1 for u in cyc):
            out.update(cyc)
    return tuple(sorted(out))


def extreme_cycles_oracle(g: Graph) -> tuple:
    """P_ec by the path-return definition, cycle by cycle."""
    reach = reach_sets(g)
    out = set()
    for cyc in simple_cycles(g):
        cset = set(cyc)
        if not any(_bifurcates(g, u) for u in cyc):
            continue
        tree = set()
        for u in cyc:
            tree |= reach[u]
        if all(reach[w] & cset for w in tree):
            out.update(cset)
    return tuple(sorted(out))


def line_points_oracle(g: Graph) -> tuple:
    reach = reach_sets(g)
    out = []
    for v in g.vertices:
        tree = reach[v]
        bifurcates = any(_bifurcates(g, u) for u in tree)
        has_cycle = any(u in reach[t] for u in tree for t in g.targets(u))
        if not bifurcates and not has_cycle:
            out.append(v)
    return tuple(sorted(out))


def b_infinity_oracle(g: Graph) -> tuple:
    reach = reach_sets(g)
    emitters = {u for u in g.vertices if g.is_infinite_emitter(u)}
    return tuple(sorted(v for v in g.vertices if reach[v] & emitters))


def properly_infinite_subsets_oracle(g: Graph) -> tuple:
    """P_pi by the raw existential: some subset of TwoPlus tree vertices
    whose closure recaptures v.  Exponential; callers keep graphs small."""
    reach = reach_sets(g)
    two = [u for u in g.vertices if csp_class_oracle(g, u) == "TwoPlus"]
    out = []
    for v in g.vertices:
        pool = [w for w in two if w in reach[v]]
        hit = False
        for bits in range(1, 1 << len(pool)):
            subset = [w for i, w in enumerate(pool) if bits >> i & 1]
            if v in hs_closure_oracle(g, subset):
                hit = True
                break
        if hit:
            out.append(v)
    return tuple(sorted(out))


def sccs_oracle(g: Graph) -> tuple:
    """SCC partition by pairwise mutual reachability."""
    reach = reach_sets(g)
    comps = []
    seen = set()
    for v in g.vertices:
        if v in seen:
            continue
        comp = frozenset(u for u in g.vertices if u in reach[v] and v in reach[u])
        seen |= comp
        comps.append(comp)
    return tuple(sorted(comps, key=min))


def pprime_classes_oracle(g: Graph, prime) -> tuple:
    """Cycle classes inside P′ by explicit enumeration plus union-find.

    Two cycles relate when either reaches the other; classes are the
    transitive closure.  Returns the c̃⁰ vertex sets, sorted by minimum.
    """
    prime = set(prime)
    reach = reach_sets(g)
    cycles = [c for c in simple_cycles(g) if set(c) <= prime]
    parent = list(range(len(cycles)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    spans = []
    for c in cycles:
        span = set()
        for u in c:
            span |= reach[u]
        spans.append(span)
    for i in range(len(cycles)):
        for j in range(i + 1, len(cycles)):
            if spans[i] & set(cycles[j]) or spans[j] & set(cycles[i]):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, set] = {}
    for i in range(len(cycles)):
        groups.setdefault(find(i), set()).update(cycles[i])
    return tuple(sorted((frozenset(s) for s in groups.values()), key=min))


def hereditary_saturated_sets(g: Graph) -> list:
    """Every hereditary saturated subset, by brute force over 2^n."""
    n = len(g.vertices)
    if n > 14:
        raise ValueError("subset enumeration is for small graphs only")
    out = []
    for bits in range(1 << n):
        s = {g.vertices[i] for i in range(n) if bits >> i & 1}
        hereditary = all(t in s for u in s for t in g.targets(u))
        if not hereditary:
            continue
        saturated = all(
            not (g.is_regular(u) and all(t in s for t in g.targets(u)))
            for u in g.vertices
            if u not in s
        )
        if saturated:
            out.append(frozenset(s))
    return out
