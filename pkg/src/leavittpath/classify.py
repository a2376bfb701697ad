"""Vertex-set classifiers.

Closed-simple-path counting, line points (P_l), cycles without exits (P_c),
extreme cycles (P_ec), P_b∞, properly infinite vertices (P_pi), P_ppi, the
P_ec′ / P_pec / P′ split, Conditions (K)/(L), P_(K), and P_ex.

A closed simple path based at v is a closed path that visits v exactly once
as a base (internal vertices may repeat).  csp_class reports |CSP(v)| as
Zero, One, or TwoPlus; exact counts above 2 are never needed.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernel
from .closures import (
    breaking_capable,
    breaking_vertices,
    hs_closure,
    is_hereditary,
    is_saturated,
)
from .errors import InvariantViolation
from .graph import OMEGA, Graph, condense, to_text

CSP_ZERO = "Zero"
CSP_ONE = "One"
CSP_TWO_PLUS = "TwoPlus"


def _class_of_count(count: int) -> str:
    if count == 0:
        return CSP_ZERO
    return CSP_ONE if count == 1 else CSP_TWO_PLUS


def csp_class(g: Graph, v: str) -> str:
    """Classify the number of closed simple paths based at v (0 / 1 / >= 2).

    Splits v into an out-end and an in-end and restricts to the vertices
    lying on a route between them that avoids v.  Any ω-bundle or
    multiplicity >= 2 on such a route, or any cycle inside the route region,
    forces TwoPlus; otherwise the remaining region is a DAG whose paths are
    counted with a cap of 2.
    """
    g.check_vertices((v,))
    self_mult = 0
    for b in g.out_bundles(v):
        if b.target == v:
            if b.mult is OMEGA:
                return CSP_TWO_PLUS
            self_mult += b.mult
    if self_mult >= 2:
        return CSP_TWO_PLUS

    entries = [t for t in g.targets(v) if t != v]
    exits = sorted({b.source for b in g.in_bundles(v)} - {v})
    if not entries or not exits:
        return _class_of_count(self_mult)

    # Adjacency with v deleted.
    n = len(g.vertices)
    adj = [0] * n
    for b in g.bundles:
        if b.source != v and b.target != v:
            adj[g.index(b.source)] |= 1 << g.index(b.target)
    reach = _kernel.reach_masks(n, adj)

    from_entries = 0
    for t in entries:
        from_entries |= reach[g.index(t)]
    exit_bits = g.mask_of(exits)
    region = 0
    for i in range(n):
        if from_entries >> i & 1 and reach[i] & exit_bits:
            region |= 1 << i
    if not region:
        return _class_of_count(self_mult)

    # Multiplicity >= 2 (or ω) anywhere on a viable route.
    for b in g.out_bundles(v):
        if b.target != v and region >> g.index(b.target) & 1:
            if b.mult is OMEGA or b.mult >= 2:
                return CSP_TWO_PLUS
    for b in g.in_bundles(v):
        if b.source != v and region >> g.index(b.source) & 1:
            if b.mult is OMEGA or b.mult >= 2:
                return CSP_TWO_PLUS
    for b in g.bundles:
        if b.source == v or b.target == v:
            continue
        si, ti = g.index(b.source), g.index(b.target)
        if region >> si & 1 and region >> ti & 1:
            if b.mult is OMEGA or b.mult >= 2:
                return CSP_TWO_PLUS

    # Any cycle inside the region pumps the count.
    for i in range(n):
        if not region >> i & 1:
            continue
        if adj[i] >> i & 1:
            return CSP_TWO_PLUS
        for j in range(n):
            if j != i and region >> j & 1:
                if reach[i] >> j & 1 and reach[j] >> i & 1:
                    return CSP_TWO_PLUS

    # The region is a DAG with all multiplicities 1: count paths, capped.
    into_v: dict[int, int] = {}
    for b in g.in_bundles(v):
        if b.source != v and region >> g.index(b.source) & 1:
            i = g.index(b.source)
            into_v[i] = into_v.get(i, 0) + b.mult
    memo: dict[int, int] = {}

    def count_from(i: int) -> int:
        if i in memo:
            return memo[i]
        total = into_v.get(i, 0)
        rest = adj[i] & region
        while rest and total < 2:
            low = rest & -rest
            rest ^= low
            total += count_from(low.bit_length() - 1)
        memo[i] = min(total, 2)
        return memo[i]

    total = self_mult
    for b in g.out_bundles(v):
        if b.target != v and region >> g.index(b.target) & 1:
            total += count_from(g.index(b.target))
        if total >= 2:
            return CSP_TWO_PLUS
    return _class_of_count(total)


def csp_classes(g: Graph) -> dict:
    """csp_class for every vertex (cached on the graph)."""
    cached = g._analysis_cache.get("csp")
    if cached is None:
        cached = {v: csp_class(g, v) for v in g.vertices}
        g._analysis_cache["csp"] = cached
    return cached


def line_points(g: Graph) -> tuple[str, ...]:
    """Vertices whose tree contains no bifurcation and no cycle (P_l)."""
    cond = condense(g)
    bad = 0
    for i, scc in enumerate(cond.sccs):
        if not cond.trivial[i]:
            bad |= g.mask_of(scc)
    for v in g.vertices:
        m = g.out_multiplicity(v)
        if m is OMEGA or m >= 2:
            bad |= 1 << g.index(v)
    reach = g.reach_masks()
    return g.set_of(
        sum(
            1 << i
            for i, v in enumerate(g.vertices)
            if not reach[i] & bad
        )
    )


def cycles_without_exits(g: Graph) -> tuple[str, ...]:
    """Vertices on cycles all of whose vertices emit exactly one edge (P_c)."""
    cond = condense(g)
    out = []
    for i, scc in enumerate(cond.sccs):
        if cond.trivial[i]:
            continue
        if all(g.out_multiplicity(v) == 1 for v in scc):
            out.extend(scc)
    return tuple(sorted(out))


def extreme_cycles(g: Graph) -> tuple[str, ...]:
    """Vertices of extreme cycles (P_ec).

    Computed as the non-trivial *terminal* SCCs carrying more edge instances
    than vertices (so some cycle vertex emits at least two edges: the cycles
    have exits, and terminality makes every departing path return).  The
    equivalence with the path-return definition is oracle-tested rather than
    assumed.
    """
    cond = condense(g)
    out = []
    for i in cond.non_trivial_terminal():
        scc = cond.sccs[i]
        total = 0
        extra = False
        for v in scc:
            m = g.out_multiplicity(v)
            if m is OMEGA:
                extra = True
                break
            total += m
        if extra or total > len(scc):
            out.extend(scc)
    return tuple(sorted(out))


def b_infinity(g: Graph) -> tuple[str, ...]:
    """Vertices whose tree contains an infinite emitter (P_b∞).

    With finitely many vertices the "infinitely many bifurcations" clause of
    the general definition cannot fire, so reaching an ω-bundle source is the
    whole criterion.
    """
    inf_mask = g.mask_of(v for v in g.vertices if g.is_infinite_emitter(v))
    reach = g.reach_masks()
    return g.set_of(
        sum(
            1 << i
            for i in range(len(g.vertices))
            if reach[i] & inf_mask
        )
    )


def properly_infinite(g: Graph) -> tuple[str, ...]:
    """Properly infinite vertices: v lies in the closure of its TwoPlus tree.

    W_v = {w in T(v) : csp_class(w) = TwoPlus}; v is properly infinite iff
    v ∈ hs_closure(W_v).  Using the single maximal witness set is equivalent
    to the existential over finite subsets because the closure operator is
    monotone.
    """
    cached = g._analysis_cache.get("p_pi")
    if cached is not None:
        return cached
    csp = csp_classes(g)
    two_mask = g.mask_of(v for v in g.vertices if csp[v] == CSP_TWO_PLUS)
    reach = g.reach_masks()
    closures: dict[int, set] = {}
    result = []
    for v in g.vertices:
        wmask = reach[g.index(v)] & two_mask
        if wmask not in closures:
            closures[wmask] = set(hs_closure(g, g.set_of(wmask)).members)
        if v in closures[wmask]:
            result.append(v)
    out = tuple(sorted(result))
    g._analysis_cache["p_pi"] = out
    return out


def p_ppi(g: Graph) -> tuple[str, ...]:
    """Vertices with a properly infinite, breaking-vertex-free tree (P_ppi).

    "Breaking-vertex-free" reads on the members of the tree: no vertex of
    T(v) may be a breaking vertex of any hereditary set.  (Testing whether
    the tree itself has breaking vertices outside it would wrongly evict
    extreme cycles that an external emitter pours into, and the P_ec ⊆ P_ppi
    containment would fail.)
    """
    cached = g._analysis_cache.get("p_ppi")
    if cached is not None:
        return cached
    pi_mask = g.mask_of(properly_infinite(g))
    capable_mask = g.mask_of(breaking_capable(g))
    reach = g.reach_masks()
    result = []
    for v in g.vertices:
        tmask = reach[g.index(v)]
        if tmask & ~pi_mask or tmask & capable_mask:
            continue
        result.append(v)
    out = tuple(sorted(result))
    members = set(out)
    if not is_hereditary(g, members) or not is_saturated(g, members):
        raise InvariantViolation(
            f"P_ppi = {sorted(members)} is not hereditary+saturated",
            graph_text=to_text(g),
        )
    g._analysis_cache["p_ppi"] = out
    return out


def split_ppi(g: Graph) -> tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]]:
    """The (P_ec′, P_pec, P′) split of P_ppi.

    P_ec′ = extreme-cycle vertices reachable from some vertex of
    P_ppi ∖ P_ec; P_pec = P_ec ∖ P_ec′; P′ = P_ppi ∖ P_pec.
    """
    ec = set(extreme_cycles(g))
    ppi = set(p_ppi(g))
    reach = g.reach_masks()
    seen = 0
    for u in ppi - ec:
        seen |= reach[g.index(u)]
    ec_prime = tuple(sorted(v for v in ec if seen >> g.index(v) & 1))
    pec = tuple(sorted(ec - set(ec_prime)))
    prime = tuple(sorted(ppi - set(pec)))
    return ec_prime, pec, prime


def condition_K(g: Graph) -> bool:
    """No vertex is the base of exactly one closed simple path."""
    return all(c != CSP_ONE for c in csp_classes(g).values())


def condition_L(g: Graph) -> bool:
    """Every cycle has an exit."""
    return not cycles_without_exits(g)


def p_K(g: Graph) -> tuple[str, ...]:
    """Vertices whose whole tree is free of One-class vertices (P_(K))."""
    csp = csp_classes(g)
    one_mask = g.mask_of(v for v in g.vertices if csp[v] == CSP_ONE)
    reach = g.reach_masks()
    return g.set_of(
        sum(
            1 << i
            for i in range(len(g.vertices))
            if not reach[i] & one_mask
        )
    )


def p_ex(g: Graph) -> tuple[str, ...]:
    """Generators of the largest exchange ideal: P_(K) ∪ B_{P_(K)}."""
    core = p_K(g)
    extra = breaking_vertices(g, core).members
    return tuple(sorted(set(core) | set(extra)))


@dataclass(frozen=True)
class Classification:
    """All classifier outputs for one graph."""

    p_l: tuple[str, ...]
    p_c: tuple[str, ...]
    p_ec: tuple[str, ...]
    p_binf: tuple[str, ...]
    p_pi: tuple[str, ...]
    p_ppi: tuple[str, ...]
    p_ec_prime: tuple[str, ...]
    p_pec: tuple[str, ...]
    p_prime: tuple[str, ...]
    p_K: tuple[str, ...]
    p_ex: tuple[str, ...]
    condition_K: bool
    condition_L: bool


def classify(g: Graph) -> Classification:
    """Run every classifier and cross-check the structural invariants."""
    cached = g._analysis_cache.get("classification")
    if cached is not None:
        return cached
    ec_prime, pec, prime = split_ppi(g)
    result = Classification(
        p_l=line_points(g),
        p_c=cycles_without_exits(g),
        p_ec=extreme_cycles(g),
        p_binf=b_infinity(g),
        p_pi=properly_infinite(g),
        p_ppi=p_ppi(g),
        p_ec_prime=ec_prime,
        p_pec=pec,
        p_prime=prime,
        p_K=p_K(g),
        p_ex=p_ex(g),
        condition_K=condition_K(g),
        condition_L=condition_L(g),
    )
    _check_classification(g, result)
    g._analysis_cache["classification"] = result
    return result


def _check_classification(g: Graph, c: Classification) -> None:
    def fail(detail: str):
        raise InvariantViolation(detail, graph_text=to_text(g))

    pec, prime, ppi = set(c.p_pec), set(c.p_prime), set(c.p_ppi)
    if pec | prime != ppi or pec & prime:
        fail("P_pec and P' do not partition P_ppi")
    if not set(c.p_ec) <= set(c.p_pi):
        fail("P_ec is not contained in P_pi")
    if set(c.p_ec_prime) | pec != set(c.p_ec) or set(c.p_ec_prime) & pec:
        fail("P_ec' and P_pec do not partition P_ec")
    for a, b, name in (
        (c.p_l, c.p_c, "P_l/P_c"),
        (c.p_l, c.p_ec, "P_l/P_ec"),
        (c.p_c, c.p_ec, "P_c/P_ec"),
    ):
        if set(a) & set(b):
            fail(f"{name} are not disjoint")
    if c.condition_L != (not c.p_c):
        fail("Condition (L) disagrees with P_c")
    if c.condition_K != (set(c.p_K) == set(g.vertices)):
        fail("Condition (K) disagrees with P_(K)")
