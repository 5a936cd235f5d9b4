"""The graded Lie algebra structure on rational sums of graph classes.

Holds insertion composition, the pre-Lie product and its bracket, the
differential ad(b0), the merger almost-contraction, the Poisson-kernel
projections, the wedge-basis expansions and the antipodal map.
"""
from __future__ import annotations

import itertools
import json
import math
import re
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .graphs import (
    GraphError,
    LabeledGraph,
    SignedGraphClass,
    b0,
    b1,
    b1_power,
    canonicalize,
    gamma1,
    gamma2,
    gamma3,
    merge_boundary,
    superpose,
    transpose,
)


class SigmaDomainError(ValueError):
    """sigma applied to a term with fewer than two internal vertices."""


class WedgeSpanError(ValueError):
    """Wedge-basis expansion hit terms outside the wedge span."""

    def __init__(self, residual: "GraphVector"):
        super().__init__("terms outside the wedge span: %s" % residual)
        self.residual = residual


class GraphVector:
    """Finite formal sum of canonical graph classes with rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[dict[LabeledGraph, Fraction]] = None):
        self._terms = {g: c for g, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls) -> "GraphVector":
        return cls()

    @classmethod
    def from_class(cls, c: SignedGraphClass, coeff=1) -> "GraphVector":
        if c.is_zero:
            return cls()
        return cls({c.graph: Fraction(coeff) * c.sign})

    @classmethod
    def from_graph(cls, g: LabeledGraph, coeff=1) -> "GraphVector":
        return cls.from_class(canonicalize(g), coeff)

    def items(self) -> list[tuple[LabeledGraph, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def coeff(self, g: LabeledGraph) -> Fraction:
        return self._terms.get(g, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[LabeledGraph, Fraction]]:
        return iter(self.items())

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, GraphVector) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "GraphVector") -> "GraphVector":
        acc = dict(self._terms)
        for g, c in other._terms.items():
            acc[g] = acc.get(g, Fraction(0)) + c
        return GraphVector(acc)

    def __sub__(self, other: "GraphVector") -> "GraphVector":
        return self + (-other)

    def __neg__(self) -> "GraphVector":
        return GraphVector({g: -c for g, c in self._terms.items()})

    def scale(self, k) -> "GraphVector":
        k = Fraction(k)
        return GraphVector({g: c * k for g, c in self._terms.items()})

    __mul__ = scale
    __rmul__ = scale

    # -- homogeneity -------------------------------------------------------

    def boundary_arity(self) -> Optional[int]:
        """Common m of all terms, or None if mixed or empty."""
        ms = {g.m for g in self._terms}
        return ms.pop() if len(ms) == 1 else None

    def vertex_count(self) -> Optional[int]:
        ns = {g.n for g in self._terms}
        return ns.pop() if len(ns) == 1 else None

    def lie_degree(self) -> Optional[int]:
        m = self.boundary_arity()
        return None if m is None else m - 1

    # -- serialization -----------------------------------------------------

    def to_literal(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for g, c in self.items():
            chunk = "%s * %s" % (c, g.to_literal())
            parts.append(chunk)
        out = parts[0]
        for chunk in parts[1:]:
            if chunk.startswith("-"):
                out += " - " + chunk[1:]
            else:
                out += " + " + chunk
        return out

    _TERM_RE = re.compile(r"^\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?(G\{[^}]*\})\s*$")

    @classmethod
    def from_literal(cls, text: str) -> "GraphVector":
        text = text.strip()
        if text in ("0", ""):
            return cls()
        # split at +/- outside braces; a sign before any content is a prefix
        chunks: list[tuple[int, str]] = []
        depth = 0
        sign = 1
        cur = ""
        for ch in text:
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
            if depth == 0 and ch in "+-":
                if cur.strip():
                    chunks.append((sign, cur))
                    cur = ""
                    sign = 1
                if ch == "-":
                    sign = -sign
                continue
            cur += ch
        if not cur.strip():
            raise GraphError("malformed vector literal: %r" % text)
        chunks.append((sign, cur))
        acc = cls()
        for sgn, body in chunks:
            match = cls._TERM_RE.match(body)
            if match is None:
                raise GraphError("malformed vector term: %r" % body)
            coeff = Fraction(match.group(1)) if match.group(1) else Fraction(1)
            g = LabeledGraph.from_literal(match.group(2))
            acc = acc + cls.from_graph(g, sgn * coeff)
        return acc

    def to_json_obj(self) -> list[dict]:
        return [
            {"graph": g.to_literal(), "coeff": str(c)} for g, c in self.items()
        ]

    @classmethod
    def from_json_obj(cls, obj: Iterable[dict]) -> "GraphVector":
        acc = cls()
        for entry in obj:
            g = LabeledGraph.from_literal(entry["graph"])
            acc = acc + cls.from_graph(g, Fraction(entry["coeff"]))
        return acc

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    def __repr__(self):
        return "GraphVector(%s)" % self.to_literal()


def vec(c: SignedGraphClass, coeff=1) -> GraphVector:
    return GraphVector.from_class(c, coeff)


# -- insertion composition -------------------------------------------------


def _reattachments(f: LabeledGraph, i: int, g: LabeledGraph) -> Iterator[LabeledGraph]:
    """All graphs obtained by grafting ``g`` into boundary slot ``i`` of ``f``.

    The edges of ``f`` that landed on slot ``i`` are reassigned to every
    vertex of ``g`` (boundary or internal) in all possible ways.
    """
    mf, mg, nf = f.m, g.m, f.n
    new_m = mf + mg - 1
    slot = i - 1

    def remap_f(t: int) -> Optional[int]:
        if t >= mf:
            return new_m + (t - mf)
        if t == slot:
            return None  # to be reattached
        return t if t < slot else t + mg - 1

    def remap_g(t: int) -> int:
        return slot + t if t < mg else new_m + nf + (t - mg)

    base: list[list[Optional[int]]] = [[remap_f(a), remap_f(b)] for a, b in f.targets]
    loose = [
        (k, pos) for k, pair in enumerate(base) for pos in (0, 1) if pair[pos] is None
    ]
    g_part = tuple((remap_g(a), remap_g(b)) for a, b in g.targets)
    g_vertices = [slot + t for t in range(mg)] + [new_m + nf + k for k in range(g.n)]
    for choice in itertools.product(g_vertices, repeat=len(loose)):
        filled = [pair[:] for pair in base]
        for (k, pos), target in zip(loose, choice):
            filled[k][pos] = target
        yield LabeledGraph(new_m, tuple((a, b) for a, b in filled) + g_part)


def insert(f: GraphVector, i: int, g: GraphVector) -> GraphVector:
    """The operation f o_i g, extended bilinearly."""
    acc: dict[LabeledGraph, Fraction] = {}
    for gf, cf in f:
        if not 1 <= i <= gf.m:
            raise GraphError("insertion position %d out of range for m=%d" % (i, gf.m))
        for gg, cg in g:
            coeff = cf * cg
            for raw in _reattachments(gf, i, gg):
                c = canonicalize(raw)
                if c.is_zero:
                    continue
                key = c.graph
                acc[key] = acc.get(key, Fraction(0)) + coeff * c.sign
    return GraphVector(acc)


def compose(f: GraphVector, g: GraphVector) -> GraphVector:
    """Pre-Lie product: sum of insertions with the Gerstenhaber sign."""
    if f.is_zero or g.is_zero:
        return GraphVector()
    deg_g = g.lie_degree()
    if deg_g is None:
        raise GraphError("right factor of compose must be m-homogeneous")
    total = GraphVector()
    for gf, cf in f:
        fv = GraphVector({gf: cf})
        for i in range(1, gf.m + 1):
            term = insert(fv, i, g)
            if ((i - 1) * deg_g) % 2:
                term = -term
            total = total + term
    return total


def bracket(f: GraphVector, g: GraphVector) -> GraphVector:
    """Graded Lie bracket [f, g] = f o g - (-1)^{|f||g|} g o f."""
    if f.is_zero or g.is_zero:
        return GraphVector()
    df, dg = f.lie_degree(), g.lie_degree()
    if df is None or dg is None:
        raise GraphError("bracket requires m-homogeneous arguments")
    fg = compose(f, g)
    gf = compose(g, f)
    return fg - gf if (df * dg) % 2 == 0 else fg + gf


_B0_VEC: Optional[GraphVector] = None


def differential(f: GraphVector) -> GraphVector:
    """The pointed differential ad(b0); raises m by one, preserves n."""
    global _B0_VEC
    if _B0_VEC is None:
        _B0_VEC = vec(b0())
    if f.is_zero:
        return GraphVector()
    return bracket(_B0_VEC, f)


# -- merger contraction ----------------------------------------------------


def sigma_normalization(n: int, normalization: str = "merger") -> Fraction:
    """Per-term constant in front of the alternating merger sum."""
    if n <= 1:
        raise SigmaDomainError("normalization undefined for n=%d" % n)
    if normalization == "merger":
        return Fraction(1, 2 * (2**n - 2))
    if normalization == "linear-alt":
        return Fraction(-1, 2 ** (n - 1) - 1)
    raise ValueError("unknown sigma normalization %r" % normalization)


def sigma(f: GraphVector, normalization: str = "merger") -> GraphVector:
    """Merger almost-contraction: alternating boundary merges, normalized per n."""
    acc = GraphVector()
    for g, c in f:
        if g.n <= 1:
            raise SigmaDomainError(
                "sigma needs n >= 2 internal vertices; offending term %s"
                % g.to_literal()
            )
        norm = c * sigma_normalization(g.n, normalization)
        cls = SignedGraphClass(g, 1)
        for i in range(1, g.m):
            merged = merge_boundary(cls, i)
            if merged.is_zero:
                continue
            coeff = norm if (i - 1) % 2 == 0 else -norm
            acc = acc + GraphVector.from_class(merged, coeff)
    return acc


# -- Poisson-kernel projections -------------------------------------------


def project_constant(f: GraphVector) -> GraphVector:
    """Kill every term with an edge landing on an internal vertex."""
    return GraphVector(
        {g: c for g, c in f._terms.items() if not g.has_internal_landing()}
    )


def project_linear(f: GraphVector) -> GraphVector:
    """Kill every term with an internal vertex of in-degree >= 2."""
    return GraphVector(
        {
            g: c
            for g, c in f._terms.items()
            if all(d <= 1 for d in g.internal_in_degrees())
        }
    )


# -- wedge bases -----------------------------------------------------------


def wedge_basis_element(n: int) -> GraphVector:
    """B_n = b1^n / n!."""
    return vec(b1_power(n), Fraction(1, math.factorial(n)))


def gamma_basis_element(r: int, s: int, t: int) -> GraphVector:
    """Gamma_{rst} = (Gamma_1^r / r!) (Gamma_2^s / s!) (Gamma_3^t / t!)."""
    # r wedges over (2,3), s over (1,3), t over (1,2)
    targets = ((1, 2),) * r + ((0, 2),) * s + ((0, 1),) * t
    norm = math.factorial(r) * math.factorial(s) * math.factorial(t)
    return GraphVector.from_graph(LabeledGraph(3, targets), Fraction(1, norm))


def expand_wedge_basis(f: GraphVector) -> dict:
    """Coefficients of f over {B_n} (m=2) or {Gamma_rst} (m=3).

    Raises WedgeSpanError carrying the residual if some term is not a
    superposition of wedges.
    """
    if f.is_zero:
        return {}
    m = f.boundary_arity()
    if m not in (2, 3):
        raise GraphError("wedge expansion requires m in {2, 3}")
    residual: dict[LabeledGraph, Fraction] = {}
    out: dict = {}
    for g, c in f:
        counts = {(0, 1): 0, (0, 2): 0, (1, 2): 0}
        ok = True
        for pair in g.targets:
            if pair in counts:
                counts[pair] += 1
            else:
                ok = False
                break
        if not ok:
            residual[g] = c
            continue
        if m == 2:
            n = g.n
            out[n] = out.get(n, Fraction(0)) + c * math.factorial(n)
        else:
            r, s, t = counts[(1, 2)], counts[(0, 2)], counts[(0, 1)]
            norm = math.factorial(r) * math.factorial(s) * math.factorial(t)
            key = (r, s, t)
            out[key] = out.get(key, Fraction(0)) + c * norm
    if residual:
        raise WedgeSpanError(GraphVector(residual))
    return {k: v for k, v in out.items() if v}


def reconstruct_wedge_basis(coeffs: dict, m: int) -> GraphVector:
    """Inverse of expand_wedge_basis."""
    acc = GraphVector()
    for key, c in coeffs.items():
        if m == 2:
            acc = acc + wedge_basis_element(key).scale(c)
        else:
            acc = acc + gamma_basis_element(*key).scale(c)
    return acc


# -- antipode and curly bracket -------------------------------------------


def antipode_sign(m: int, convention: str = "reversal") -> int:
    if convention == "reversal":
        return -1 if (m * (m - 1) // 2) % 2 else 1
    if convention == "paper":
        return -1 if m % 2 else 1
    raise ValueError("unknown antipode sign convention %r" % convention)


def antipode(f: GraphVector, convention: str = "reversal") -> GraphVector:
    """S(Gamma) = sign(m) * transpose(Gamma), extended linearly."""
    acc = GraphVector()
    for g, c in f:
        eps = antipode_sign(g.m, convention)
        acc = acc + GraphVector.from_class(
            transpose(SignedGraphClass(g, 1)), c * eps
        )
    return acc


def curly(f: GraphVector, g: GraphVector) -> GraphVector:
    """{f, g} = f o_1 g - g o_2 f, on m=2 terms."""
    for v in (f, g):
        if any(gr.m != 2 for gr, _ in v):
            raise GraphError("curly bracket requires m=2 terms")
    if f.is_zero or g.is_zero:
        return GraphVector()
    return insert(f, 1, g) - insert(g, 2, f)


# -- index-triple codifferential ------------------------------------------


def delta_codifferential(i: int, j: int) -> dict[tuple[int, int, int], int]:
    """Signed formal sum of index triples delta(i, j)."""
    acc: dict[tuple[int, int, int], int] = {}
    for r in range(i + 1):
        key = (r, i - r, j)
        acc[key] = acc.get(key, 0) + 1
    for s in range(j + 1):
        key = (i, s, j - s)
        acc[key] = acc.get(key, 0) - 1
    return {k: v for k, v in acc.items() if v}


def delta_sum_check(n: int) -> bool:
    """Total cancelation of sum_{i+j=n} delta(i, j)."""
    acc: dict[tuple[int, int, int], int] = {}
    for i in range(n + 1):
        for key, v in delta_codifferential(i, n - i).items():
            acc[key] = acc.get(key, 0) + v
    return all(v == 0 for v in acc.values())
