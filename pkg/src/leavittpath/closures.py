"""Hereditary/saturated machinery.

Trees, saturation, hereditary-saturated closures, breaking vertices,
restriction graphs, and the density criterion.  Conventions:

* hereditary: closed under out-edges (if v is in the set, so is every
  vertex v reaches);
* saturated: contains every Regular vertex all of whose edge-targets lie in
  the set (sinks and infinite emitters are never forced in);
* closure: tree step first, then saturation passes to a fixpoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import _kernel
from .errors import GraphValidationError, InvariantViolation
from .graph import OMEGA, Graph, reachable, to_text


def is_hereditary(g: Graph, members) -> bool:
    members = set(members)
    g.check_vertices(members)
    return all(b.target in members for b in g.bundles if b.source in members)


def is_saturated(g: Graph, members) -> bool:
    members = set(members)
    g.check_vertices(members)
    for v in g.vertices:
        if v not in members and g.is_regular(v):
            if all(t in members for t in g.targets(v)):
                return False
    return True


@dataclass(frozen=True)
class HereditarySet:
    """A vertex set with its hereditary/saturated flags certified on build."""

    members: tuple[str, ...]
    is_hereditary: bool
    is_saturated: bool
    rounds: int | None = field(default=None, compare=False)

    @staticmethod
    def certify(g: Graph, members) -> "HereditarySet":
        members = tuple(sorted(set(members)))
        g.check_vertices(members)
        return HereditarySet(
            members, is_hereditary(g, members), is_saturated(g, members)
        )

    def __contains__(self, v) -> bool:
        return v in set(self.members)

    def __iter__(self):
        return iter(self.members)


@dataclass(frozen=True)
class BreakingSet:
    """Breaking vertices of a hereditary set H.

    A breaking vertex is an infinite emitter outside H with only finitely
    many edges landing outside H — equivalently here: every one of its
    ω-bundles targets H.  ``outside_counts`` records, per member, how many
    (finitely many, possibly zero) edges stay outside H.
    """

    members: tuple[str, ...]
    outside_counts: dict

    def __contains__(self, v) -> bool:
        return v in set(self.members)

    def __iter__(self):
        return iter(self.members)


def _members_of(X) -> tuple[str, ...]:
    if isinstance(X, HereditarySet):
        return X.members
    if isinstance(X, BreakingSet):
        return X.members
    return tuple(X)


def saturate_once(g: Graph, X) -> tuple[str, ...]:
    """One saturation step: X plus every Regular vertex emitting only into X."""
    members = set(_members_of(X))
    g.check_vertices(members)
    added = {
        v
        for v in g.vertices
        if v not in members
        and g.is_regular(v)
        and all(t in members for t in g.targets(v))
    }
    return tuple(sorted(members | added))


def hs_closure(g: Graph, X) -> HereditarySet:
    """Smallest hereditary saturated superset of X.

    Tree step once, then simultaneous saturation passes to a fixpoint;
    ``rounds`` on the result counts the passes that grew the set.
    """
    seed = _members_of(X)
    g.check_vertices(seed)
    tree = reachable(g, seed)
    n = len(g.vertices)
    reg_vs = []
    reg_targets = []
    for v in g.vertices:
        if g.is_regular(v):
            reg_vs.append(g.index(v))
            reg_targets.append(g.mask_of(g.targets(v)))
    mask, rounds = _kernel.saturation_fixpoint(
        n, g.mask_of(tree), reg_vs, reg_targets
    )
    members = g.set_of(mask)
    result = HereditarySet(
        members,
        is_hereditary(g, members),
        is_saturated(g, members),
        rounds=rounds,
    )
    if not (result.is_hereditary and result.is_saturated):
        raise InvariantViolation(
            f"closure of {sorted(set(seed))} is not hereditary+saturated: "
            f"{members}",
            graph_text=to_text(g),
        )
    return result


def breaking_vertices(g: Graph, H) -> BreakingSet:
    """Breaking vertices of the hereditary set H, with outside-edge counts."""
    members = set(_members_of(H))
    if not is_hereditary(g, members):
        raise GraphValidationError("H is not hereditary")
    found = []
    counts = {}
    for v in g.vertices:
        if v in members or not g.is_infinite_emitter(v):
            continue
        outside = 0
        ok = True
        for b in g.out_bundles(v):
            if b.target in members:
                continue
            if b.mult is OMEGA:
                ok = False
                break
            outside += b.mult
        if ok:
            found.append(v)
            counts[v] = outside
    return BreakingSet(tuple(sorted(found)), counts)


def breaking_capable(g: Graph) -> tuple[str, ...]:
    """Vertices that break *some* hereditary set (with a nonzero escape).

    An infinite emitter u belongs to B_Y for a hereditary Y exactly when Y
    absorbs every ω-bundle target of u while u itself stays outside and at
    least one finite edge of u escapes.  Any such Y contains the tree of the
    ω-targets, and that tree is itself the smallest candidate, so the test
    collapses to: u is not reachable from its own ω-targets, and some finite
    edge of u leaves their tree.  (An emitter whose every edge lands in the
    tree never witnesses the obstruction: the zero-escape case is what the
    v^H elements degenerate on, not what poisons proper infiniteness.)
    """
    reach = g.reach_masks()
    out = []
    for u in g.vertices:
        if not g.is_infinite_emitter(u):
            continue
        wmask = 0
        for b in g.out_bundles(u):
            if b.mult is OMEGA:
                wmask |= reach[g.index(b.target)]
        if wmask >> g.index(u) & 1:
            continue
        escapes = any(
            b.mult is not OMEGA and not wmask >> g.index(b.target) & 1
            for b in g.out_bundles(u)
        )
        if escapes:
            out.append(u)
    return tuple(sorted(out))


def restriction_graph(g: Graph, H) -> Graph:
    """Subgraph on the hereditary set H with all bundles sourced in H."""
    members = set(_members_of(H))
    if not is_hereditary(g, members):
        raise GraphValidationError("H is not hereditary")
    return Graph(
        sorted(members), [b for b in g.bundles if b.source in members]
    )


@dataclass(frozen=True)
class DensityResult:
    """Verdict of the density criterion plus per-vertex witnesses.

    ``witnesses[v]`` is a (possibly empty) tuple of bundle ids tracing a path
    from v into the target set, or None when v cannot reach it.
    """

    dense: bool
    witnesses: dict


def density_check(g: Graph, X) -> DensityResult:
    """Does every vertex of the graph connect to X?

    X may be any vertex set (the classifier union this is applied to is not
    hereditary in general).
    """
    members = set(_members_of(X))
    g.check_vertices(members)
    dist: dict[str, int] = {v: 0 for v in sorted(members)}
    frontier = sorted(members)
    while frontier:
        nxt = []
        for w in frontier:
            for b in g.in_bundles(w):
                if b.source not in dist:
                    dist[b.source] = dist[w] + 1
                    nxt.append(b.source)
        frontier = sorted(nxt)
    witnesses: dict = {}
    dense = True
    for v in g.vertices:
        if v not in dist:
            witnesses[v] = None
            dense = False
            continue
        path = []
        u = v
        while dist[u] > 0:
            step = min(
                (
                    b
                    for b in g.out_bundles(u)
                    if b.target in dist and dist[b.target] == dist[u] - 1
                ),
                key=lambda b: b.id,
            )
            path.append(step.id)
            u = step.target
        witnesses[v] = tuple(path)
    return DensityResult(dense, witnesses)
