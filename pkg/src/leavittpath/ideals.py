"""Graded-ideal descriptors and the largest-ideal report.

A graded ideal of the path algebra is named by a pair (H, S): a hereditary
saturated vertex set H together with a set S of breaking vertices of H.
Containment of ideals is decided on the descriptor data.  The headline
report collects, for one graph, the generating vertex sets of the largest
semisimple, locally noetherian, purely infinite and exchange ideals, a
density certificate for the four-set union, and the decomposition of the
purely infinite part into simple and non-simple-indecomposable classes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classify import classify
from .closures import breaking_vertices, density_check, hs_closure
from .errors import GraphValidationError, InvariantViolation
from .graph import Graph, condense, reachable, to_text


@dataclass(frozen=True)
class GradedIdealDescriptor:
    graph: Graph
    H: tuple[str, ...]
    S: tuple[str, ...]


def ideal_descriptor(g: Graph, X, S=()) -> GradedIdealDescriptor:
    """Canonical descriptor of the graded ideal generated by X and {v^H: v ∈ S}."""
    closure = hs_closure(g, X)
    allowed = set(breaking_vertices(g, closure).members)
    S = tuple(sorted(set(S)))
    stray = [v for v in S if v not in allowed]
    if stray:
        raise GraphValidationError(
            f"'{stray[0]}' is not a breaking vertex of the closure"
        )
    return GradedIdealDescriptor(g, closure.members, S)


def descriptor_leq(a: GradedIdealDescriptor, b: GradedIdealDescriptor) -> bool:
    """Ideal containment: a.H inside b.H and each a-breaking vertex absorbed by b."""
    if a.graph != b.graph:
        raise GraphValidationError("descriptors belong to different graphs")
    bh = set(b.H)
    if not set(a.H) <= bh:
        return False
    bs = set(b.S)
    return all(v in bs or v in bh for v in a.S)


def is_purely_infinite_ideal(g: Graph, d: GradedIdealDescriptor) -> bool:
    """True iff the ideal sits inside the largest purely infinite one.

    Breaking-vertex generators never qualify, so S must be empty.
    """
    if d.S:
        return False
    from .classify import p_ppi

    return set(d.H) <= set(p_ppi(g))


PEC_LABEL = "PurelyInfiniteSimple"
PPRIME_LABEL = "PurelyInfiniteNonSimpleIndecomposable"


@dataclass(frozen=True)
class CycleClass:
    kind: str  # "Pec" | "Pprime"
    member_sccs: tuple[int, ...]
    class_vertices: tuple[str, ...]
    tree: tuple[str, ...]
    label: str


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def pi_decomposition(g: Graph) -> tuple[CycleClass, ...]:
    """Split the purely infinite part into direct summands.

    Each non-trivial terminal SCC inside P_pec is one simple class.  The
    non-trivial SCCs inside P′ are grouped by symmetrized reachability,
    closed transitively: two SCCs land together when a chain of
    one-way-connected SCCs joins them.  Working per SCC is sound because
    all cycles within one SCC are mutually connected.
    """
    cls = classify(g)
    pec, prime = set(cls.p_pec), set(cls.p_prime)
    cond = condense(g)
    classes: list[CycleClass] = []

    pec_cover: set[str] = set()
    for i in cond.non_trivial_terminal():
        scc = cond.sccs[i]
        if set(scc) <= pec:
            members = tuple(sorted(scc))
            classes.append(
                CycleClass("Pec", (i,), members, reachable(g, members), PEC_LABEL)
            )
            pec_cover.update(scc)
    if pec_cover != pec:
        raise InvariantViolation(
            "P_pec is not covered by its terminal cycle classes", to_text(g)
        )

    prime_nodes = [
        i
        for i, scc in enumerate(cond.sccs)
        if not cond.trivial[i] and set(scc) <= prime
    ]
    if prime_nodes:
        uf = _UnionFind(len(cond.sccs))
        reach = g.reach_masks()
        for i in prime_nodes:
            bi = g.mask_of(cond.sccs[i][:1])
            for j in prime_nodes:
                if j <= i:
                    continue
                bj = g.mask_of(cond.sccs[j][:1])
                if reach[g.index(cond.sccs[i][0])] & bj or (
                    reach[g.index(cond.sccs[j][0])] & bi
                ):
                    uf.union(i, j)
        groups: dict[int, list[int]] = {}
        for i in prime_nodes:
            groups.setdefault(uf.find(i), []).append(i)
        for root in sorted(groups):
            sccs = tuple(sorted(groups[root]))
            vertices = sorted(v for i in sccs for v in cond.sccs[i])
            classes.append(
                CycleClass(
                    "Pprime",
                    sccs,
                    tuple(vertices),
                    reachable(g, vertices),
                    PPRIME_LABEL,
                )
            )

    classes.sort(key=lambda c: (c.kind != "Pec", c.class_vertices))
    _check_tree_disjointness(g, classes)
    return tuple(classes)


def _check_tree_disjointness(g: Graph, classes) -> None:
    seen: set[str] = set()
    for c in classes:
        overlap = seen.intersection(c.tree)
        if overlap:
            raise InvariantViolation(
                f"cycle-class trees overlap at '{sorted(overlap)[0]}'", to_text(g)
            )
        seen.update(c.tree)


@dataclass(frozen=True)
class LargestIdealsReport:
    semisimple_gens: tuple[str, ...]
    loc_noetherian_gens: tuple[str, ...]
    loc_noetherian_no_min_idem_gens: tuple[str, ...]
    purely_infinite_gens: tuple[str, ...]
    exchange_gens: tuple[str, ...]
    dense_gens: tuple[str, ...]
    dense: bool
    dense_witnesses: dict
    pi_classes: tuple[CycleClass, ...]
    exchange_breaking: tuple[tuple[str, int], ...]
    notes: tuple[str, ...]


_FINITE_FRAGMENT_NOTE = (
    "infinite-emitter reachability read on the finite fragment: a truncation "
    "of a larger graph may classify vertices differently"
)


def largest_ideals_report(g: Graph) -> LargestIdealsReport:
    cls = classify(g)
    union = tuple(
        sorted(set(cls.p_l) | set(cls.p_c) | set(cls.p_ec) | set(cls.p_binf))
    )
    density = density_check(g, union)
    if g.vertices and not density.dense:
        raise InvariantViolation(
            "four-set union failed the density check", to_text(g)
        )
    breaking = breaking_vertices(g, hs_closure(g, cls.p_K))
    exchange_breaking = tuple(
        (v, breaking.outside_counts[v]) for v in breaking.members
    )

    notes = []
    if cls.p_binf:
        notes.append(_FINITE_FRAGMENT_NOTE)
    for v, count in exchange_breaking:
        if count == 0:
            notes.append(
                f"breaking vertex '{v}' emits no edges outside the closure; "
                "it participates with an empty finite sum"
            )

    return LargestIdealsReport(
        semisimple_gens=cls.p_l,
        loc_noetherian_gens=tuple(sorted(set(cls.p_l) | set(cls.p_c))),
        loc_noetherian_no_min_idem_gens=cls.p_c,
        purely_infinite_gens=cls.p_ppi,
        exchange_gens=cls.p_ex,
        dense_gens=union,
        dense=density.dense,
        dense_witnesses=dict(density.witnesses),
        pi_classes=pi_decomposition(g),
        exchange_breaking=exchange_breaking,
        notes=tuple(notes),
    )
