"""Desk-scale symbolic arithmetic in the path algebra of a graph.

Elements are rational linear combinations of monomials α·β* where α and β
are paths (sequences of edge instances) with a common range vertex.  The
defining relations are applied eagerly:

* (V)   vw = δ_vw v            — vertices are orthogonal idempotents;
* (E1)  s(e)e = e r(e) = e     — edges absorb their endpoints;
* (E2)  r(e)e* = e* s(e) = e*  — ghost edges likewise;
* (CK1) e* e' = δ_ee' r(e)     — ghost-against-real cancellation;
* (CK2) v = Σ_{s(e)=v} e e*    — at Regular v, oriented as a rewrite.

The CK2 rewrite fires when a monomial's real and ghost paths both end in
the *special edge* of their common source: γ(v) is the smallest edge
instance leaving v (bundle id lexicographic, index numeric).  Then

    α′γγ*β′*  →  α′vβ′*  −  Σ_{f ∈ s⁻¹(v), f ≠ γ} α′ff*β′*

which terminates (the first term is shorter, the siblings end in a
non-special pair) and yields the canonical spanning basis.  Coefficients
are exact rationals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .closures import breaking_vertices
from .errors import ExpressionError, GraphValidationError
from .graph import OMEGA, Graph, parse_instance


def _inst_bundle(g: Graph, inst: str):
    return parse_instance(g, inst)[0]


def _inst_source(g: Graph, inst: str) -> str:
    return _inst_bundle(g, inst).source


def _inst_target(g: Graph, inst: str) -> str:
    return _inst_bundle(g, inst).target


@dataclass(frozen=True)
class Monomial:
    """α β* with r(α) = r(β) = anchor; both paths stored unstarred."""

    real: tuple[str, ...]
    ghost: tuple[str, ...]
    anchor: str

    @property
    def degree(self) -> int:
        return len(self.real) - len(self.ghost)

    def sort_key(self):
        return (len(self.real) + len(self.ghost), self.real, self.ghost, self.anchor)

    def render(self) -> str:
        parts = []
        if self.real:
            parts.append(" ".join(self.real))
        if self.ghost:
            parts.append("(" + " ".join(self.ghost) + ")*")
        if not parts:
            parts.append(self.anchor)
        return " ".join(parts)


def _check_path(g: Graph, insts: tuple[str, ...]) -> None:
    for a, b in zip(insts, insts[1:]):
        if _inst_target(g, a) != _inst_source(g, b):
            raise GraphValidationError(
                f"'{a}' and '{b}' are not consecutive edges"
            )


def make_monomial(g: Graph, real, ghost, anchor=None) -> Monomial:
    """Validated monomial; the anchor is derived when either path is nonempty."""
    real, ghost = tuple(real), tuple(ghost)
    _check_path(g, real)
    _check_path(g, ghost)
    if real:
        derived = _inst_target(g, real[-1])
    elif ghost:
        derived = _inst_target(g, ghost[-1])
    else:
        if anchor is None:
            raise GraphValidationError("vertex monomial needs an anchor")
        g.check_vertices((anchor,))
        derived = anchor
    if ghost and _inst_target(g, ghost[-1]) != derived:
        raise GraphValidationError("real and ghost paths must share their range")
    if anchor is not None and anchor != derived:
        raise GraphValidationError("anchor disagrees with the path ranges")
    return Monomial(real, ghost, derived)


def _out_instances(g: Graph, v: str) -> tuple[str, ...]:
    """Edge instances leaving the Regular vertex v, in canonical order."""
    cache = g._analysis_cache.setdefault("out_instances", {})
    if v not in cache:
        insts = []
        for b in sorted(g.out_bundles(v), key=lambda b: b.id):
            insts.extend(b.instances)
        cache[v] = tuple(insts)
    return cache[v]


def special_edge(g: Graph, v: str) -> str:
    """γ(v): the canonical first edge instance leaving v."""
    return _out_instances(g, v)[0]


def _is_forbidden(g: Graph, m: Monomial) -> bool:
    if not m.real or not m.ghost or m.real[-1] != m.ghost[-1]:
        return False
    src = _inst_source(g, m.real[-1])
    return g.is_regular(src) and m.real[-1] == special_edge(g, src)


def _normalize_monomial(g: Graph, m: Monomial, coeff: Fraction, acc: dict) -> None:
    """CK2-rewrite m into normal-form terms, accumulating into acc."""
    work = [(m, coeff)]
    while work:
        mono, c = work.pop()
        if not _is_forbidden(g, mono):
            acc[mono] = acc.get(mono, Fraction(0)) + c
            continue
        gamma = mono.real[-1]
        v = _inst_source(g, gamma)
        head_real, head_ghost = mono.real[:-1], mono.ghost[:-1]
        work.append((Monomial(head_real, head_ghost, v), c))
        for f in _out_instances(g, v):
            if f == gamma:
                continue
            anchor = _inst_target(g, f)
            work.append(
                (Monomial(head_real + (f,), head_ghost + (f,), anchor), -c)
            )


def _mono_mul(g: Graph, m1: Monomial, m2: Monomial):
    """Resolve (α₁β₁*)(α₂β₂*): β₁ against α₂, matched from the start."""
    b, a = m1.ghost, m2.real
    k = min(len(b), len(a))
    if b[:k] != a[:k]:
        return None
    if len(b) > k:
        delta = b[k:]
        if k == 0 and m2.anchor != _inst_source(g, delta[0]):
            return None
        return Monomial(m1.real, m2.ghost + delta, m1.anchor)
    if len(a) > k:
        delta = a[k:]
        if k == 0 and m1.anchor != _inst_source(g, delta[0]):
            return None
        return Monomial(m1.real + delta, m2.ghost, m2.anchor)
    if k == 0 and m1.anchor != m2.anchor:
        return None
    return Monomial(m1.real, m2.ghost, m2.anchor)


class AlgebraElement:
    """Immutable normal-form linear combination of monomials."""

    __slots__ = ("graph", "_terms")

    def __init__(self, graph: Graph, terms=None, _normalized=False):
        self.graph = graph
        if terms is None:
            terms = {}
        if _normalized:
            self._terms = dict(terms)
        else:
            acc: dict = {}
            for mono, coeff in dict(terms).items():
                _normalize_monomial(graph, mono, Fraction(coeff), acc)
            self._terms = {m: c for m, c in acc.items() if c}

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(g: Graph) -> "AlgebraElement":
        return AlgebraElement(g, {}, _normalized=True)

    @staticmethod
    def vertex(g: Graph, v: str) -> "AlgebraElement":
        g.check_vertices((v,))
        return AlgebraElement(g, {Monomial((), (), v): Fraction(1)}, _normalized=True)

    @staticmethod
    def edge(g: Graph, inst: str) -> "AlgebraElement":
        b, idx = parse_instance(g, inst)
        from .graph import instance_id

        mono = Monomial((instance_id(b, idx),), (), b.target)
        return AlgebraElement(g, {mono: Fraction(1)}, _normalized=True)

    @staticmethod
    def ghost_edge(g: Graph, inst: str) -> "AlgebraElement":
        return AlgebraElement.edge(g, inst).star()

    # -- arithmetic --------------------------------------------------------

    def _require_same_graph(self, other: "AlgebraElement") -> None:
        if self.graph != other.graph:
            raise GraphValidationError("elements belong to different graphs")

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._require_same_graph(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return AlgebraElement(self.graph, out, _normalized=True)

    def __neg__(self):
        return AlgebraElement(
            self.graph, {m: -c for m, c in self._terms.items()}, _normalized=True
        )

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def scale(self, k) -> "AlgebraElement":
        k = Fraction(k)
        if not k:
            return AlgebraElement.zero(self.graph)
        return AlgebraElement(
            self.graph, {m: c * k for m, c in self._terms.items()}, _normalized=True
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._require_same_graph(other)
        acc: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                prod = _mono_mul(self.graph, m1, m2)
                if prod is not None:
                    _normalize_monomial(self.graph, prod, c1 * c2, acc)
        return AlgebraElement(
            self.graph, {m: c for m, c in acc.items() if c}, _normalized=True
        )

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def star(self) -> "AlgebraElement":
        """The involution: (αβ*)* = βα*, antimultiplicative, ℚ-linear."""
        flipped = {
            Monomial(m.ghost, m.real, m.anchor): c
            for m, c in self._terms.items()
        }
        return AlgebraElement(self.graph, flipped)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.graph == other.graph and self._terms == other._terms

    def __hash__(self):
        return hash((self.graph, frozenset(self._terms.items())))

    def __repr__(self):
        return f"AlgebraElement({format_element(self)})"


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b


def normalize(a: AlgebraElement) -> AlgebraElement:
    """Re-run CK2 normalization (a no-op on the always-normal elements)."""
    return AlgebraElement(a.graph, a._terms)


def graded_components(a: AlgebraElement) -> dict:
    """Split by degree(αβ*) = |α| − |β|; the components sum back to a."""
    split: dict[int, dict] = {}
    for m, c in a._terms.items():
        split.setdefault(m.degree, {})[m] = c
    return {
        d: AlgebraElement(a.graph, terms, _normalized=True)
        for d, terms in sorted(split.items())
    }


def v_H_element(g: Graph, v: str, H) -> AlgebraElement:
    """v^H = v − Σ ee* over the finitely many edges from v landing outside H."""
    bset = breaking_vertices(g, H)
    if v not in bset.members:
        raise GraphValidationError(f"'{v}' is not a breaking vertex of H")
    hset = set(_members(H))
    terms = {Monomial((), (), v): Fraction(1)}
    for b in g.out_bundles(v):
        if b.mult is OMEGA or b.target in hset:
            continue
        for inst in b.instances:
            terms[Monomial((inst,), (inst,), b.target)] = Fraction(-1)
    return AlgebraElement(g, terms, _normalized=True)


def _members(X):
    if hasattr(X, "members"):
        return X.members
    return tuple(X)


# -- rendering ---------------------------------------------------------------


def sorted_terms(a: AlgebraElement):
    return sorted(a._terms.items(), key=lambda item: item[0].sort_key())


def format_element(a: AlgebraElement) -> str:
    if a.is_zero():
        return "0"
    return "\n".join(
        f"{c} · {m.render()}" for m, c in sorted_terms(a)
    )


def element_payload(a: AlgebraElement) -> list:
    """JSON-ready term list in canonical order."""
    return [
        {
            "coeff": str(c),
            "real": list(m.real),
            "ghost": list(m.ghost),
            "anchor": m.anchor,
        }
        for m, c in sorted_terms(a)
    ]


# -- expression parsing ------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*(?:\[\d+\])?)"
    r"|(?P<sym>[()*+-]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            col = len(text) - len(stripped) + 1
            raise ExpressionError(f"unexpected character '{stripped[0]}'", col)
        pos = m.end()
        if m.group("number"):
            tokens.append(("number", m.group("number"), m.start("number") + 1))
        elif m.group("ident"):
            tokens.append(("ident", m.group("ident"), m.start("ident") + 1))
        else:
            tokens.append(("sym", m.group("sym"), m.start("sym") + 1))
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _Parser:
    """Recursive descent over: sum of products of starred atoms."""

    def __init__(self, g: Graph, text: str):
        self.g = g
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self):
        value = self.expr()
        kind, text, col = self.peek()
        if kind != "end":
            raise ExpressionError(f"unexpected token '{text}'", col)
        return value

    def expr(self):
        value = self.term(allow_neg=True)
        while True:
            kind, text, col = self.peek()
            if kind == "sym" and text in "+-":
                self.advance()
                rhs = self.term(allow_neg=False)
                value = self._combine_sum(value, rhs, text, col)
            else:
                return value

    def term(self, allow_neg: bool):
        negate = False
        kind, text, _ = self.peek()
        if allow_neg and kind == "sym" and text == "-":
            self.advance()
            negate = True
        value = self.factor()
        while True:
            kind, text, col = self.peek()
            if kind in ("number", "ident") or (kind == "sym" and text == "("):
                rhs = self.factor()
                value = self._combine_product(value, rhs, col)
            else:
                break
        if negate:
            value = (value[0], -value[1])
        return value

    def factor(self):
        value = self.atom()
        while True:
            kind, text, _ = self.peek()
            if kind == "sym" and text == "*":
                self.advance()
                if value[0] == "element":
                    value = ("element", value[1].star())
                # a starred scalar is the scalar itself (ℚ is fixed by *)
            else:
                return value

    def atom(self):
        kind, text, col = self.advance()
        if kind == "number":
            if "/" in text:
                num, den = text.split("/")
                if int(den) == 0:
                    raise ExpressionError("zero denominator", col)
                return ("scalar", Fraction(int(num), int(den)))
            return ("scalar", Fraction(int(text)))
        if kind == "ident":
            return ("element", self._resolve(text, col))
        if kind == "sym" and text == "(":
            value = self.expr()
            kind, text, col = self.advance()
            if not (kind == "sym" and text == ")"):
                raise ExpressionError("expected ')'", col)
            return value
        raise ExpressionError(
            f"unexpected token '{text}'" if text else "unexpected end of expression",
            col,
        )

    def _resolve(self, name: str, col: int) -> AlgebraElement:
        if self.g.has_vertex(name):
            return AlgebraElement.vertex(self.g, name)
        base = name.split("[", 1)[0]
        if self.g.has_bundle(base):
            try:
                return AlgebraElement.edge(self.g, name)
            except GraphValidationError as exc:
                raise ExpressionError(str(exc), col) from None
        raise ExpressionError(f"unknown generator '{name}'", col)

    def _combine_sum(self, lhs, rhs, op: str, col: int):
        if lhs[0] != "element" or rhs[0] != "element":
            raise ExpressionError("scalar term without generator", col)
        return ("element", lhs[1] + rhs[1] if op == "+" else lhs[1] - rhs[1])

    def _combine_product(self, lhs, rhs, col: int):
        if lhs[0] == "scalar" and rhs[0] == "scalar":
            return ("scalar", lhs[1] * rhs[1])
        if lhs[0] == "scalar":
            return ("element", rhs[1].scale(lhs[1]))
        if rhs[0] == "scalar":
            return ("element", lhs[1].scale(rhs[1]))
        return ("element", lhs[1] * rhs[1])


def parse_element(g: Graph, expr: str) -> AlgebraElement:
    """Parse an expression into a normalized element.

    Grammar: rational scalars, vertex ids, edge-instance ids (``e`` or
    ``e[i]``), ``+``, ``-``, parentheses, juxtaposition for products, and a
    postfix ``*`` for the involution.  A bare scalar is rejected: elements
    live in the span of the monomials.
    """
    kind, value = _Parser(g, expr).parse()
    if kind != "element":
        raise ExpressionError("scalar term without generator")
    return value
