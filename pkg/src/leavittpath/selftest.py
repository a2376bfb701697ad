"""Randomized property suites behind ``lpa selftest``.

Reruns the library's structural invariants and oracle cross-checks on a
stream of seeded random graphs, so the checks shipped with the test suite
can be reproduced from the installed binary alone.  Any failure prints a
reproducer graph to stderr and exits with status 3.
"""

from __future__ import annotations

import sys

from .classify import (
    b_infinity,
    classify,
    csp_class,
    cycles_without_exits,
    extreme_cycles,
    line_points,
    properly_infinite,
)
from .closures import hs_closure
from .errors import InvariantViolation
from .graph import Graph, to_text
from .ideals import (
    ideal_descriptor,
    is_purely_infinite_ideal,
    largest_ideals_report,
    pi_decomposition,
)
from .oracles import (
    b_infinity_oracle,
    csp_class_oracle,
    cycles_without_exits_oracle,
    extreme_cycles_oracle,
    hs_closure_oracle,
    line_points_oracle,
    pprime_classes_oracle,
    properly_infinite_subsets_oracle,
)
from .random_graphs import enumerate_graphs, random_graphs


class _Mismatch(Exception):
    pass


def _fail(detail: str) -> None:
    raise _Mismatch(detail)


def check_invariants(g: Graph) -> None:
    """Structural invariants every graph must satisfy (criterion-style)."""
    c = classify(g)
    if not set(c.p_ec) <= set(c.p_ppi):
        _fail("P_ec not contained in P_ppi")
    if not set(c.p_ppi) <= set(c.p_pi):
        _fail("P_ppi not contained in P_pi")
    ppi = hs_closure(g, c.p_ppi)
    if not (ppi.is_hereditary and ppi.is_saturated and ppi.members == c.p_ppi):
        _fail("P_ppi is not hereditary and saturated")
    report = largest_ideals_report(g)
    if g.vertices and not report.dense:
        _fail("union of the four classifier sets is not dense")


def check_maximality(g: Graph) -> None:
    """P_ppi passes the purely-infinite descriptor test; any vertex added
    from outside makes it fail."""
    c = classify(g)
    base = ideal_descriptor(g, c.p_ppi)
    if not is_purely_infinite_ideal(g, base):
        _fail("P_ppi descriptor rejected by is_purely_infinite_ideal")
    outside = [v for v in g.vertices if v not in set(c.p_ppi)]
    for v in outside:
        grown = ideal_descriptor(g, c.p_ppi + (v,))
        if is_purely_infinite_ideal(g, grown):
            _fail(f"descriptor still purely infinite after adding '{v}'")


def check_oracles(g: Graph) -> None:
    """Cross-check the fast paths against the slow reference definitions."""
    for v in g.vertices:
        fast, slow = csp_class(g, v), csp_class_oracle(g, v)
        if fast != slow:
            _fail(f"csp_class({v}): fast {fast} != oracle {slow}")
    for v in g.vertices:
        fast_m = hs_closure(g, (v,)).members
        slow_m = tuple(sorted(hs_closure_oracle(g, (v,))))
        if fast_m != slow_m:
            _fail(f"hs_closure({{{v}}}) disagrees with naive fixpoint")
    pairs = [
        (extreme_cycles, extreme_cycles_oracle, "extreme_cycles"),
        (line_points, line_points_oracle, "line_points"),
        (cycles_without_exits, cycles_without_exits_oracle, "cycles_without_exits"),
        (b_infinity, b_infinity_oracle, "b_infinity"),
    ]
    for fast_fn, slow_fn, name in pairs:
        fast_t, slow_t = fast_fn(g), slow_fn(g)
        if tuple(fast_t) != tuple(slow_t):
            _fail(f"{name}: fast {fast_t} != oracle {slow_t}")
    if len(g.vertices) <= 5:
        fast_t = properly_infinite(g)
        slow_t = properly_infinite_subsets_oracle(g)
        if tuple(fast_t) != tuple(slow_t):
            _fail(f"properly_infinite: fast {fast_t} != oracle {slow_t}")
    check_pi_classes(g)


def check_pi_classes(g: Graph) -> None:
    """Compare pi_decomposition against cycle enumeration + union-find."""
    c = classify(g)
    classes = pi_decomposition(g)
    fast_prime = sorted(
        frozenset(cl.class_vertices) for cl in classes if cl.kind == "Pprime"
    )
    slow_prime = sorted(pprime_classes_oracle(g, set(c.p_prime)))
    if fast_prime != slow_prime:
        _fail(f"P' classes: fast {fast_prime} != oracle {slow_prime}")
    fast_pec = set()
    for cl in classes:
        if cl.kind == "Pec":
            fast_pec.update(cl.class_vertices)
    if fast_pec != set(c.p_pec):
        _fail("Pec classes do not cover P_pec exactly")


def check_graph(g: Graph, deep: bool = True) -> None:
    check_invariants(g)
    check_maximality(g)
    if deep and len(g.vertices) <= 6:
        check_oracles(g)


def _dump_reproducer(g: Graph, context: str, detail: str) -> None:
    print(f"selftest failure ({context}): {detail}", file=sys.stderr)
    print("--- reproducer graph ---", file=sys.stderr)
    print(to_text(g), end="", file=sys.stderr)
    print("--- end reproducer ---", file=sys.stderr)


def run_selftest(
    cases: int = 300,
    max_vertices: int = 8,
    seed: int = 7,
    exhaustive_n4: bool = False,
) -> int:
    checked = 0
    for i, g in enumerate(random_graphs(cases, seed, max_vertices=max_vertices)):
        try:
            check_graph(g)
        except _Mismatch as exc:
            _dump_reproducer(g, f"case {i}, seed {seed}", str(exc))
            return 3
        except InvariantViolation as exc:
            _dump_reproducer(g, f"case {i}, seed {seed}", str(exc))
            return 3
        checked += 1
    print(f"selftest: {checked} random graphs (max {max_vertices} vertices, "
          f"seed {seed}) passed all property checks")
    if exhaustive_n4:
        swept = 0
        try:
            for g in enumerate_graphs(4, max_mult=2):
                check_oracles(g)
                swept += 1
                if swept % 1_000_000 == 0:
                    print(f"  ... {swept} graphs swept", file=sys.stderr)
        except (_Mismatch, InvariantViolation) as exc:
            _dump_reproducer(g, f"exhaustive n=4 graph {swept}", str(exc))
            return 3
        print(f"selftest: exhaustive 4-vertex sweep passed ({swept} graphs)")
    return 0
