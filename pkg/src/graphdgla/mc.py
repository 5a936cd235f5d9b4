"""Iterative solution of the deformation equation via the merger contraction.

Builds the star-product series order by order as m_n = P(sigma(D_n)), where P
is an optional Poisson-kernel projection, and exposes the associativity
defects and the cocycle/contraction diagnostics per order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    GraphVector,
    bracket,
    differential,
    project_constant,
    project_linear,
    sigma,
    vec,
)
from .graphs import b0, b1

PROJECTIONS = ("none", "constant", "linear")


def apply_projection(v: GraphVector, projection: str) -> GraphVector:
    if projection == "none":
        return v
    if projection == "constant":
        return project_constant(v)
    if projection == "linear":
        return project_linear(v)
    raise ValueError("unknown projection %r" % projection)


@dataclass
class OrderReport:
    """Per-order diagnostics emitted by solve()."""

    n: int
    m_n: GraphVector
    residual: GraphVector  # P(d m_n - D_n), reported, not asserted
    lemma1_identity: bool
    defect_terms: int

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "m_n": self.m_n.to_json_obj(),
            "residual": self.residual.to_json_obj(),
            "lemma1_identity": self.lemma1_identity,
            "defect_norm": self.defect_terms,
        }


@dataclass
class StarSeries:
    """Truncated star-product series; coeffs[n] is the order-n graph vector."""

    order: int
    coeffs: list[GraphVector]
    projection: str = "none"
    sigma_normalization: str = "merger"
    reports: list[OrderReport] = field(default_factory=list)

    def coefficient(self, n: int) -> GraphVector:
        if not 0 <= n <= self.order:
            raise ValueError("order %d outside truncation %d" % (n, self.order))
        return self.coeffs[n]


def initial_series(projection: str = "none", normalization: str = "merger") -> StarSeries:
    return StarSeries(1, [vec(b0()), vec(b1())], projection, normalization)


def d_term(series: StarSeries, n: int) -> GraphVector:
    """D_n = -1/2 sum_{j+k=n, j,k>=1} [m_j, m_k]; zero for n=1."""
    if n < 0:
        raise ValueError("d_term defined for n >= 0")
    if n - 1 > series.order:
        raise ValueError("missing lower-order coefficients for D_%d" % n)
    acc = GraphVector()
    for j in range(1, n):
        acc = acc + bracket(series.coeffs[j], series.coeffs[n - j])
    return acc.scale(Fraction(-1, 2))


def defect(series: StarSeries, n: int) -> GraphVector:
    """Order-n associativity defect sum_{i+j=n} [m_i, m_j] (no projection)."""
    acc = GraphVector()
    for i in range(0, n + 1):
        acc = acc + bracket(series.coeffs[i], series.coeffs[n - i])
    return acc


def lemma1_identity(series: StarSeries, n: int) -> bool:
    """Formal identity defect_n = 2 (d m_n - D_n), with no projection."""
    lhs = defect(series, n)
    rhs = (differential(series.coeffs[n]) - d_term(series, n)).scale(2)
    return lhs == rhs


def cocycle_check(series: StarSeries, n: int) -> GraphVector:
    """P(d D_{n+1}); expected zero when lower orders close, returned as-is."""
    d_next = d_term(series, n + 1)
    return apply_projection(differential(d_next), series.projection)


def solve(
    N: int,
    projection: str = "none",
    sigma_normalization: str = "merger",
) -> StarSeries:
    """Iterate m_n = P(sigma(D_n)) for 2 <= n <= N from m_0 = b0, m_1 = b1."""
    if N < 1:
        raise ValueError("truncation order must be >= 1")
    if projection not in PROJECTIONS:
        raise ValueError("unknown projection %r" % projection)
    series = initial_series(projection, sigma_normalization)
    for n in range(2, N + 1):
        dn = d_term(series, n)
        assert all(g.n >= 2 for g, _ in dn), "D_n term with fewer than 2 vertices"
        mn = apply_projection(sigma(dn, sigma_normalization), projection)
        series.coeffs.append(mn)
        series.order = n
        residual = apply_projection(differential(mn) - dn, projection)
        series.reports.append(
            OrderReport(
                n=n,
                m_n=mn,
                residual=residual,
                lemma1_identity=lemma1_identity(series, n),
                defect_terms=len(apply_projection(defect(series, n), projection)),
            )
        )
    return series


def contraction_residual(series: StarSeries, n: int) -> GraphVector:
    """d sigma D_n + sigma d D_n - D_n on the realized cocycle D_n."""
    dn = d_term(series, n)
    norm = series.sigma_normalization
    ddn = differential(dn)
    part1 = differential(sigma(dn, norm))
    part2 = sigma(ddn, norm) if ddn else GraphVector()
    return part1 + part2 - dn


def hat_iteration(
    k: int,
    projection: str = "none",
    sigma_normalization: str = "merger",
) -> GraphVector:
    """The initiator tower t^{k-1}(b1) with t(v) = P(sigma([b1, v]))."""
    if k < 1:
        raise ValueError("k must be >= 1")
    b1v = vec(b1())
    v = b1v
    for _ in range(k - 1):
        v = apply_projection(sigma(bracket(b1v, v), sigma_normalization), projection)
    return v
