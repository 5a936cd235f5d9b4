"""Evaluation of graphs as polydifferential operators on polynomials.

Each internal vertex carries a copy of the Poisson tensor; its L and R edges
act as partial derivatives (first and second index respectively) on their
targets.  All arithmetic is exact; the deformation parameter is a formal
truncation index.
"""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .algebra import GraphVector
from .graphs import GraphError, LabeledGraph, SignedGraphClass
from .mc import StarSeries


class PoissonError(ValueError):
    """Invalid Poisson structure data."""


# -- polynomials -----------------------------------------------------------


class Poly:
    """Multivariate polynomial over the rationals in x1..xd."""

    __slots__ = ("d", "_terms")

    def __init__(self, d: int, terms: Optional[dict[tuple, Fraction]] = None):
        self.d = d
        self._terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls, d: int) -> "Poly":
        return cls(d)

    @classmethod
    def const(cls, d: int, c) -> "Poly":
        c = Fraction(c)
        return cls(d, {(0,) * d: c} if c else {})

    @classmethod
    def variable(cls, d: int, i: int) -> "Poly":
        """x_i, 1-based."""
        if not 1 <= i <= d:
            raise ValueError("variable index %d out of range" % i)
        exps = [0] * d
        exps[i - 1] = 1
        return cls(d, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, d: int, exps: Sequence[int], c=1) -> "Poly":
        return cls(d, {tuple(exps): Fraction(c)})

    def items(self):
        return sorted(self._terms.items())

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.d == other.d
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.d, frozenset(self._terms.items())))

    def _check(self, other: "Poly") -> None:
        if self.d != other.d:
            raise ValueError("dimension mismatch: %d vs %d" % (self.d, other.d))

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, Fraction(0)) + c
        return Poly(self.d, acc)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(self.d, {e: -c for e, c in self._terms.items()})

    def __mul__(self, other: Union["Poly", int, Fraction]) -> "Poly":
        if not isinstance(other, Poly):
            k = Fraction(other)
            return Poly(self.d, {e: c * k for e, c in self._terms.items()})
        self._check(other)
        acc: dict[tuple, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                acc[key] = acc.get(key, Fraction(0)) + c1 * c2
        return Poly(self.d, acc)

    __rmul__ = __mul__

    def diff(self, i: int) -> "Poly":
        """Partial derivative with respect to x_i (1-based)."""
        acc: dict[tuple, Fraction] = {}
        idx = i - 1
        for e, c in self._terms.items():
            if e[idx] == 0:
                continue
            key = e[:idx] + (e[idx] - 1,) + e[idx + 1:]
            acc[key] = acc.get(key, Fraction(0)) + c * e[idx]
        return Poly(self.d, acc)

    def multi_diff(self, indices: Iterable[int]) -> "Poly":
        p = self
        for i in indices:
            if p.is_zero:
                break
            p = p.diff(i)
        return p

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    # -- text form ---------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for e, c in self.items():
            factors = []
            if abs(c) != 1 or not any(e):
                factors.append(str(abs(c)))
            for i, p in enumerate(e):
                if p == 1:
                    factors.append("x%d" % (i + 1))
                elif p > 1:
                    factors.append("x%d^%d" % (i + 1, p))
            chunk = "*".join(factors)
            parts.append(("- " if c < 0 else "+ ") + chunk)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else out.replace("- ", "-", 1)

    __repr__ = __str__

    _FACTOR_RE = re.compile(r"^(?:(\d+(?:/\d+)?)|x(\d+)(?:\^(\d+))?)$")

    @classmethod
    def parse(cls, text: str, d: int) -> "Poly":
        """Parse literals like ``3/2*x1^2*x3 - x2``."""
        text = text.strip()
        if not text or text == "0":
            return cls.zero(d)
        acc = cls.zero(d)
        sign = 1
        cur = ""
        chunks: list[tuple[int, str]] = []
        for ch in text:
            if ch in "+-":
                if cur.strip():
                    chunks.append((sign, cur))
                    cur = ""
                    sign = 1
                if ch == "-":
                    sign = -sign
                continue
            cur += ch
        if not cur.strip():
            raise ValueError("malformed polynomial literal: %r" % text)
        chunks.append((sign, cur))
        for sgn, body in chunks:
            coeff = Fraction(sgn)
            exps = [0] * d
            for factor in body.split("*"):
                factor = factor.strip()
                fm = cls._FACTOR_RE.match(factor)
                if fm is None:
                    raise ValueError("malformed factor %r" % factor)
                if fm.group(1) is not None:
                    coeff *= Fraction(fm.group(1))
                else:
                    i = int(fm.group(2))
                    if not 1 <= i <= d:
                        raise ValueError("variable x%d out of range (d=%d)" % (i, d))
                    exps[i - 1] += int(fm.group(3)) if fm.group(3) else 1
            acc = acc + cls.monomial(d, exps, coeff)
        return acc


# -- Poisson structures ----------------------------------------------------


@dataclass(frozen=True)
class PoissonStructure:
    """Constant antisymmetric matrix or linear structure-constant tensor."""

    d: int
    kind: str  # "constant" | "linear"
    data: tuple  # matrix alpha[i][j] or tensor c[i][j][k], all Fraction

    @classmethod
    def constant(cls, matrix: Sequence[Sequence]) -> "PoissonStructure":
        d = len(matrix)
        alpha = tuple(tuple(Fraction(x) for x in row) for row in matrix)
        if any(len(row) != d for row in alpha):
            raise PoissonError("matrix must be square")
        for i in range(d):
            for j in range(d):
                if alpha[i][j] != -alpha[j][i]:
                    raise PoissonError("matrix must be antisymmetric")
        return cls(d, "constant", alpha)

    @classmethod
    def linear(cls, tensor: Sequence[Sequence[Sequence]]) -> "PoissonStructure":
        d = len(tensor)
        c = tuple(
            tuple(tuple(Fraction(x) for x in row) for row in plane)
            for plane in tensor
        )
        if any(len(p) != d or any(len(r) != d for r in p) for p in c):
            raise PoissonError("tensor must be d x d x d")
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    if c[i][j][k] != -c[j][i][k]:
                        raise PoissonError("tensor must be antisymmetric in (i, j)")
        # Jacobi identity of the induced bracket
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    for l in range(d):
                        total = sum(
                            c[i][j][mm] * c[mm][k][l]
                            + c[j][k][mm] * c[mm][i][l]
                            + c[k][i][mm] * c[mm][j][l]
                            for mm in range(d)
                        )
                        if total:
                            raise PoissonError(
                                "Jacobi identity fails at (%d,%d,%d,%d)"
                                % (i + 1, j + 1, k + 1, l + 1)
                            )
        return cls(d, "linear", c)

    @classmethod
    def standard_symplectic(cls, d: int = 2) -> "PoissonStructure":
        if d % 2:
            raise PoissonError("symplectic dimension must be even")
        m = [[Fraction(0)] * d for _ in range(d)]
        for k in range(d // 2):
            m[2 * k][2 * k + 1] = Fraction(1)
            m[2 * k + 1][2 * k] = Fraction(-1)
        return cls.constant(m)

    @classmethod
    def so3(cls) -> "PoissonStructure":
        """Linear structure with c^{ij}_k the Levi-Civita symbol."""
        eps = [[[Fraction(0)] * 3 for _ in range(3)] for _ in range(3)]
        for i, j, k, v in (
            (0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1),
            (1, 0, 2, -1), (2, 1, 0, -1), (0, 2, 1, -1),
        ):
            eps[i][j][k] = Fraction(v)
        return cls.linear(eps)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "PoissonStructure":
        try:
            d = int(obj["d"])
            kind = obj["kind"]
            if kind == "constant":
                return cls.constant(
                    [[Fraction(str(x)) for x in row] for row in obj["alpha"]]
                )
            if kind == "linear":
                tensor = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
                for entry in obj["c"]:
                    i, j, k = int(entry["i"]) - 1, int(entry["j"]) - 1, int(entry["k"]) - 1
                    val = Fraction(str(entry["val"]))
                    tensor[i][j][k] = val
                    tensor[j][i][k] = -val
                return cls.linear(tensor)
            raise PoissonError("unknown kind %r" % kind)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, PoissonError):
                raise
            raise PoissonError("malformed Poisson structure: %s" % exc) from exc

    @classmethod
    def from_json_file(cls, path: str) -> "PoissonStructure":
        with open(path) as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise PoissonError("invalid JSON: %s" % exc) from exc
        return cls.from_json_obj(obj)

    def entry(self, i: int, j: int) -> Poly:
        """alpha^{ij} as a polynomial, 0-based indices."""
        if self.kind == "constant":
            return Poly.const(self.d, self.data[i][j])
        acc = Poly.zero(self.d)
        for k in range(self.d):
            c = self.data[i][j][k]
            if c:
                acc = acc + Poly.variable(self.d, k + 1) * c
        return acc

    def nonzero_entries(self) -> list[tuple[int, int, Poly]]:
        out = []
        for i in range(self.d):
            for j in range(self.d):
                p = self.entry(i, j)
                if p:
                    out.append((i, j, p))
        return out


# -- graph evaluation ------------------------------------------------------


def evaluate_graph(g: LabeledGraph, alpha: PoissonStructure, fs: Sequence[Poly]) -> Poly:
    if len(fs) != g.m:
        raise GraphError("need %d boundary functions, got %d" % (g.m, len(fs)))
    d = alpha.d
    for f in fs:
        if f.d != d:
            raise ValueError("polynomial dimension %d != Poisson dimension %d" % (f.d, d))
    pairs = alpha.nonzero_entries()
    total = Poly.zero(d)
    m, n = g.m, g.n
    for assign in itertools.product(pairs, repeat=n):
        derivs: list[list[int]] = [[] for _ in range(m + n)]
        for k, (i, j, _) in enumerate(assign):
            a, b = g.targets[k]
            derivs[a].append(i + 1)
            derivs[b].append(j + 1)
        term = Poly.const(d, 1)
        for k, (_, _, p) in enumerate(assign):
            factor = p.multi_diff(derivs[m + k])
            if factor.is_zero:
                term = Poly.zero(d)
                break
            term = term * factor
        if term.is_zero:
            continue
        for s in range(m):
            factor = fs[s].multi_diff(derivs[s])
            if factor.is_zero:
                term = Poly.zero(d)
                break
            term = term * factor
        total = total + term
    return total


def evaluate(
    x: Union[SignedGraphClass, GraphVector],
    alpha: PoissonStructure,
    fs: Sequence[Poly],
) -> Poly:
    """Kontsevich-rule evaluation, extended linearly and by sign."""
    if isinstance(x, SignedGraphClass):
        if x.is_zero:
            return Poly.zero(alpha.d)
        return evaluate_graph(x.graph, alpha, fs) * x.sign
    acc = Poly.zero(alpha.d)
    for g, c in x:
        acc = acc + evaluate_graph(g, alpha, fs) * c
    return acc


# -- star products and defects --------------------------------------------


def star(series: StarSeries, alpha: PoissonStructure, u: Poly, v: Poly) -> list[Poly]:
    """Truncated series of u * v; index n holds the order-n coefficient."""
    return [evaluate(series.coeffs[n], alpha, [u, v]) for n in range(series.order + 1)]


def star_series(
    series: StarSeries,
    alpha: PoissonStructure,
    A: Sequence[Poly],
    B: Sequence[Poly],
    N: Optional[int] = None,
) -> list[Poly]:
    """Star product of two truncated series, truncated at order N."""
    if N is None:
        N = series.order
    d = alpha.d
    out = [Poly.zero(d) for _ in range(N + 1)]
    for p, ap in enumerate(A):
        if ap.is_zero:
            continue
        for q, bq in enumerate(B):
            if bq.is_zero or p + q > N:
                continue
            for r in range(min(series.order, N - p - q) + 1):
                out[p + q + r] = out[p + q + r] + evaluate(
                    series.coeffs[r], alpha, [ap, bq]
                )
    return out


def associativity_defect(
    series: StarSeries,
    alpha: PoissonStructure,
    u: Poly,
    v: Poly,
    w: Poly,
    N: Optional[int] = None,
) -> list[Poly]:
    """(u * v) * w - u * (v * w), truncated at order N."""
    if N is None:
        N = series.order
    uv = star_series(series, alpha, [u], [v], N)
    vw = star_series(series, alpha, [v], [w], N)
    left = star_series(series, alpha, uv, [w], N)
    right = star_series(series, alpha, [u], vw, N)
    return [l - r for l, r in zip(left, right)]


def monomials_up_to_degree(d: int, degree: int) -> list[Poly]:
    """All monomials in d variables of total degree <= degree."""
    out = []
    for total in range(degree + 1):
        for exps in itertools.product(range(total + 1), repeat=d):
            if sum(exps) == total:
                out.append(Poly.monomial(d, exps))
    return out
