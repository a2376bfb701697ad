# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled graph kernels.

C twins of the functions in ``_kernel_py``.  The bitmask routines use
uint64 masks, so they require n <= 64; ``_kernel`` enforces that and falls
back to the pure versions for larger graphs.
"""

from libc.stdlib cimport free, malloc

ctypedef unsigned long long u64


def reach_masks(int n, list adj):
    """uint64 reflexive-transitive closure; requires n <= 64."""
    if n > 64:
        raise ValueError("compiled reach_masks supports at most 64 vertices")
    cdef u64* masks = <u64*> malloc(64 * sizeof(u64))
    cdef u64* direct = <u64*> malloc(64 * sizeof(u64))
    if masks == NULL or direct == NULL:
        free(masks)
        free(direct)
        raise MemoryError()
    cdef int i, j, changed
    cdef u64 acc, rest
    try:
        for i in range(n):
            direct[i] = <u64> adj[i]
            masks[i] = direct[i] | ((<u64> 1) << i)
        changed = 1
        while changed:
            changed = 0
            for i in range(n):
                acc = masks[i]
                rest = direct[i]
                j = 0
                while rest:
                    if rest & 1:
                        acc |= masks[j]
                    rest >>= 1
                    j += 1
                if acc != masks[i]:
                    masks[i] = acc
                    changed = 1
        return [masks[i] for i in range(n)]
    finally:
        free(masks)
        free(direct)


def scc_labels(int n, list indptr, list indices):
    """Iterative Tarjan over CSR adjacency; any n."""
    cdef int m = len(indices)
    cdef int* c_indptr = <int*> malloc((n + 1) * sizeof(int))
    cdef int* c_indices = <int*> malloc((m if m else 1) * sizeof(int))
    cdef int* index = <int*> malloc(n * sizeof(int))
    cdef int* low = <int*> malloc(n * sizeof(int))
    cdef char* onstack = <char*> malloc(n * sizeof(char))
    cdef int* stack = <int*> malloc(n * sizeof(int))
    cdef int* work_v = <int*> malloc(n * sizeof(int))
    cdef int* work_pos = <int*> malloc(n * sizeof(int))
    cdef int* comp_of = <int*> malloc(n * sizeof(int))
    cdef int* comp_min = <int*> malloc(n * sizeof(int))
    cdef int sp, wp, counter, ncomps, root, v, w, k, start, end, descended
    if (c_indptr == NULL or c_indices == NULL or index == NULL or low == NULL
            or onstack == NULL or stack == NULL or work_v == NULL
            or work_pos == NULL or comp_of == NULL or comp_min == NULL):
        free(c_indptr); free(c_indices); free(index); free(low)
        free(onstack); free(stack); free(work_v); free(work_pos)
        free(comp_of); free(comp_min)
        raise MemoryError()
    try:
        for v in range(n + 1):
            c_indptr[v] = indptr[v]
        for k in range(m):
            c_indices[k] = indices[k]
        for v in range(n):
            index[v] = -1
            onstack[v] = 0
        sp = 0
        counter = 0
        ncomps = 0
        for root in range(n):
            if index[root] != -1:
                continue
            wp = 0
            work_v[wp] = root
            work_pos[wp] = 0
            while wp >= 0:
                v = work_v[wp]
                if work_pos[wp] == 0:
                    index[v] = counter
                    low[v] = counter
                    counter += 1
                    stack[sp] = v
                    sp += 1
                    onstack[v] = 1
                descended = 0
                start = c_indptr[v]
                end = c_indptr[v + 1]
                k = start + work_pos[wp]
                while k < end:
                    w = c_indices[k]
                    if index[w] == -1:
                        work_pos[wp] = k - start + 1
                        wp += 1
                        work_v[wp] = w
                        work_pos[wp] = 0
                        descended = 1
                        break
                    if onstack[w] and low[w] < low[v]:
                        low[v] = low[w]
                    k += 1
                if descended:
                    continue
                wp -= 1
                if low[v] == index[v]:
                    comp_min[ncomps] = n
                    while True:
                        sp -= 1
                        w = stack[sp]
                        onstack[w] = 0
                        comp_of[w] = ncomps
                        if w < comp_min[ncomps]:
                            comp_min[ncomps] = w
                        if w == v:
                            break
                    ncomps += 1
                if wp >= 0:
                    w = work_v[wp]
                    if low[v] < low[w]:
                        low[w] = low[v]
        # Renumber components by smallest member vertex.
        order = sorted(range(ncomps), key=lambda c: comp_min[c])
        rank = [0] * ncomps
        for k in range(ncomps):
            rank[order[k]] = k
        return [rank[comp_of[v]] for v in range(n)]
    finally:
        free(c_indptr); free(c_indices); free(index); free(low)
        free(onstack); free(stack); free(work_v); free(work_pos)
        free(comp_of); free(comp_min)


def saturation_fixpoint(int n, mask, list reg_vs, list reg_targets):
    """uint64 saturation fixpoint; requires n <= 64."""
    if n > 64:
        raise ValueError("compiled saturation_fixpoint supports at most 64 vertices")
    cdef int nreg = len(reg_vs)
    cdef int* vs = <int*> malloc((nreg if nreg else 1) * sizeof(int))
    cdef u64* targets = <u64*> malloc((nreg if nreg else 1) * sizeof(u64))
    if vs == NULL or targets == NULL:
        free(vs)
        free(targets)
        raise MemoryError()
    cdef u64 cur = <u64> mask
    cdef u64 added, bit
    cdef int i, rounds
    try:
        for i in range(nreg):
            vs[i] = reg_vs[i]
            targets[i] = <u64> reg_targets[i]
        rounds = 0
        while True:
            added = 0
            for i in range(nreg):
                bit = (<u64> 1) << vs[i]
                if not (cur & bit) and not (targets[i] & ~cur):
                    added |= bit
            if not added:
                return (int(cur), rounds)
            cur |= added
            rounds += 1
    finally:
        free(vs)
        free(targets)
