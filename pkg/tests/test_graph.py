import pytest

from leavittpath import (
    OMEGA,
    EdgeBundle,
    Graph,
    GraphSyntaxError,
    GraphValidationError,
    condense,
    graph_digest,
    parse_graph,
    reachable,
    to_dot,
    to_text,
)
from leavittpath.fixtures import FIXTURE_TEXTS
from leavittpath.graph import instance_id, parse_instance

from conftest import fixture_graph


def test_parse_basic():
    g = parse_graph("vertices a b\nedge e a b\n")
    assert g.vertices == ("a", "b")
    assert len(g.bundles) == 1
    assert g.bundles[0] == EdgeBundle("e", "a", "b", 1)


def test_parse_multiplicity_and_omega():
    g = parse_graph("vertices v w\nedge e v w x3\nbundle m v w omega\n")
    assert g.bundle("e").mult == 3
    assert g.bundle("m").mult is OMEGA
    assert g.bundle("m").is_omega


def test_edge_and_bundle_keywords_interchangeable():
    g1 = parse_graph("vertices v\nedge e v v\n")
    g2 = parse_graph("vertices v\nbundle e v v\n")
    assert g1 == g2


def test_parse_comments_and_blank_lines():
    text = "# a graph\nvertices v w\n\nedge e v w  # trailing\n"
    g = parse_graph(text)
    assert g.vertices == ("v", "w")


def test_parse_errors_carry_position():
    with pytest.raises(GraphSyntaxError) as ei:
        parse_graph("vertices v\nedge e v\n")
    assert ei.value.line == 2

    with pytest.raises(GraphSyntaxError):
        parse_graph("frobnicate v\n")
    with pytest.raises(GraphSyntaxError):
        parse_graph("vertices v\nedge e v v x0\n")


def test_validation_rejects_dangling_and_duplicates():
    with pytest.raises(GraphValidationError):
        Graph(("v",), (EdgeBundle("e", "v", "w"),))
    with pytest.raises(GraphValidationError):
        Graph(("v", "v"), ())
    # ids share one namespace across vertices and bundles
    with pytest.raises(GraphValidationError):
        Graph(("v",), (EdgeBundle("v", "v", "v"),))
    with pytest.raises(GraphValidationError):
        Graph(("v",), (EdgeBundle("e", "v", "v"), EdgeBundle("e", "v", "v")))


def test_vertex_kinds():
    g = fixture_graph("omega-h")
    assert g.kind("u") == "InfiniteEmitter"
    assert g.kind("h") == "Regular"
    assert g.kind("x") == "Sink"


def test_roundtrip_canonical_text():
    for name, text in FIXTURE_TEXTS.items():
        g = parse_graph(text)
        assert parse_graph(to_text(g)) == g, name


def test_digest_is_stable_under_reordering():
    a = parse_graph("vertices v w\nedge e v w\nedge f w v\n")
    b = parse_graph("vertices w v\nedge f w v\nedge e v w\n")
    assert graph_digest(a) == graph_digest(b)


def test_reachable():
    g = fixture_graph("chain3sink")
    assert reachable(g, ("v2",)) == ("v2", "v3")
    assert reachable(g, ("v1",)) == ("v1", "v2", "v3", "v4")
    assert reachable(g, ()) == ()


def test_condensation_terminal_and_trivial():
    g = fixture_graph("six")
    cond = condense(g)
    by_min = {min(scc): i for i, scc in enumerate(cond.sccs)}
    assert cond.trivial[by_min["v1"]]
    assert not cond.trivial[by_min["v3"]]
    assert cond.terminal[by_min["v3"]]
    assert not cond.terminal[by_min["v2"]]
    nt = cond.non_trivial_terminal()
    assert sorted(min(cond.sccs[i]) for i in nt) == ["v3", "w1", "w2"]


def test_condensation_self_loop_not_trivial():
    g = parse_graph("vertices v w\nedge e v v\nedge f v w\n")
    cond = condense(g)
    by_min = {min(scc): i for i, scc in enumerate(cond.sccs)}
    assert not cond.trivial[by_min["v"]]
    assert cond.trivial[by_min["w"]]


def test_dot_output_shape():
    g = fixture_graph("omega-h")
    dot = to_dot(g)
    assert dot.startswith("digraph G {")
    assert '"u" -> "h" [label="×ω"];' in dot
    assert '"u" -> "x" [label="×1"];' in dot


def test_instance_addressing():
    g = parse_graph("vertices v\nedge e v v x2\nedge f v v\nbundle m v v omega\n")
    assert parse_instance(g, "e[1]")[1] == 1
    assert parse_instance(g, "f") == (g.bundle("f"), 1)
    assert instance_id(g.bundle("e"), 2) == "e[2]"
    assert instance_id(g.bundle("f"), 1) == "f"
    with pytest.raises(GraphValidationError):
        parse_instance(g, "e")  # needs an index
    with pytest.raises(GraphValidationError):
        parse_instance(g, "e[3]")
    with pytest.raises(GraphValidationError):
        parse_instance(g, "m[1]")  # omega members are not addressable
