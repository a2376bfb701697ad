"""The worked example graphs shipped with the package.

The same texts live under fixtures/ for CLI use; a test pins the two copies
together so they cannot drift.
"""

from __future__ import annotations

from .graph import Graph, parse_graph

CHAIN3 = """\
# three vertices, two loops each, chained left to right
vertices v1 v2 v3
edge a1 v1 v1
edge a2 v1 v1
edge b1 v2 v2
edge b2 v2 v2
edge c1 v3 v3
edge c2 v3 v3
edge f1 v1 v2
edge f2 v2 v3
"""

CHAIN3SINK = """\
# chain3 plus a sink hanging off the first vertex
vertices v1 v2 v3 v4
edge a1 v1 v1
edge a2 v1 v1
edge b1 v2 v2
edge b2 v2 v2
edge c1 v3 v3
edge c2 v3 v3
edge f1 v1 v2
edge f2 v2 v3
edge g v1 v4
"""

SIX = """\
# six vertices: a fork into three looped branches, one of them a single loop
vertices v1 v2 v3 v4 w1 w2
edge e1 v2 v2
edge e2 v2 v2
edge e3 v3 v3
edge e4 v3 v3
edge e5 v4 v4
edge e6 v4 v4
edge e7 w1 w1
edge e8 w1 w1
edge e9 w2 w2
edge f1 v1 v2
edge f2 v2 v3
edge f3 v4 v3
edge f4 v1 w1
edge f5 v1 w2
"""

FORK = """\
# two looped branches meeting at a looped middle through a plain vertex
vertices v1 v2 v3 v4
edge e1 v1 v1
edge e2 v1 v1
edge e3 v3 v3
edge e4 v3 v3
edge e5 v4 v4
edge e6 v4 v4
edge f1 v1 v2
edge f2 v2 v3
edge f3 v4 v3
"""

TWOLOOP = """\
# a double loop feeding a single loop
vertices v w
edge a1 v v
edge a2 v v
edge b w w
edge f v w
"""

OMEGA_H = """\
# an infinite emitter pouring into a doubly-looped vertex, one escape edge
vertices u h x
bundle m u h omega
edge f u x
edge h1 h h
edge h2 h h
"""


def line_text(n: int) -> str:
    if n < 1:
        raise ValueError("a line needs at least one vertex")
    vs = " ".join(f"v{i}" for i in range(1, n + 1))
    edges = "".join(
        f"edge e{i} v{i} v{i + 1}\n" for i in range(1, n)
    )
    return f"vertices {vs}\n{edges}"


def chain3() -> Graph:
    return parse_graph(CHAIN3)


def chain3sink() -> Graph:
    return parse_graph(CHAIN3SINK)


def six() -> Graph:
    return parse_graph(SIX)


def fork() -> Graph:
    return parse_graph(FORK)


def twoloop() -> Graph:
    return parse_graph(TWOLOOP)


def line_n(n: int) -> Graph:
    return parse_graph(line_text(n))


def omega_h() -> Graph:
    return parse_graph(OMEGA_H)


FIXTURE_TEXTS = {
    "chain3": CHAIN3,
    "chain3sink": CHAIN3SINK,
    "six": SIX,
    "fork": FORK,
    "twoloop-oneloop": TWOLOOP,
    "line2": line_text(2),
    "line3": line_text(3),
    "line4": line_text(4),
    "omega-h": OMEGA_H,
}


def all_fixture_graphs() -> dict:
    return {name: parse_graph(text) for name, text in FIXTURE_TEXTS.items()}
