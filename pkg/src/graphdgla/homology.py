"""Exact low-degree cohomology of the graph complex.

The differential preserves the internal-vertex count n, so each (n, m)
component gives a finite exact boundary matrix; ranks are computed with
fraction-free (Bareiss) elimination over big integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import GraphVector, differential, vec
from .graphs import (
    DEFAULT_CAP,
    LabeledGraph,
    SignedGraphClass,
    enumerate_classes,
    merge_boundary,
)


@dataclass
class BoundaryMatrix:
    """Matrix of the differential G_{n,m} -> G_{n,m+1} in enumerated bases."""

    n: int
    m: int
    source: list[LabeledGraph]
    target: list[LabeledGraph]
    columns: list[dict[int, Fraction]]  # per source class: target index -> coeff

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.target), len(self.source))

    def dense_rows(self) -> list[list[Fraction]]:
        rows = [[Fraction(0)] * len(self.source) for _ in self.target]
        for col, entries in enumerate(self.columns):
            for row, c in entries.items():
                rows[row][col] = c
        return rows


def boundary_matrix(n: int, m: int, cap: int = DEFAULT_CAP) -> BoundaryMatrix:
    source = [c.graph for c in enumerate_classes(n, m, cap=cap)]
    target = [c.graph for c in enumerate_classes(n, m + 1, cap=cap)]
    index = {g: i for i, g in enumerate(target)}
    columns = []
    for g in source:
        image = differential(vec(SignedGraphClass(g, 1)))
        entries: dict[int, Fraction] = {}
        for h, c in image:
            if h not in index:
                raise RuntimeError(
                    "differential image %s missing from target basis" % h.to_literal()
                )
            entries[index[h]] = c
        columns.append(entries)
    return BoundaryMatrix(n, m, source, target, columns)


def _integer_rows(rows: list[list[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        scale = math.lcm(*(c.denominator for c in row)) if row else 1
        out.append([int(c * scale) for c in row])
    return out


def rank(matrix: BoundaryMatrix) -> int:
    return _rank_bareiss(_integer_rows(matrix.dense_rows()))


def _rank_bareiss(rows: list[list[int]]) -> int:
    M = [row[:] for row in rows]
    nr = len(M)
    nc = len(M[0]) if M else 0
    prev = 1
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                M[i][j] = (M[r][c] * M[i][j] - M[i][c] * M[r][j]) // prev
            M[i][c] = 0
        prev = M[r][c]
        r += 1
    return r


def composition_is_zero(outer: BoundaryMatrix, inner: BoundaryMatrix) -> bool:
    """Whether outer . inner = 0 (matrix-level d^2 = 0)."""
    if inner.target != outer.source:
        raise ValueError("matrices are not adjacent")
    for entries in inner.columns:
        acc: dict[int, Fraction] = {}
        for mid, c in entries.items():
            for row, c2 in outer.columns[mid].items():
                acc[row] = acc.get(row, Fraction(0)) + c * c2
        if any(acc.values()):
            return False
    return True


def cohomology_dims(n: int, m: int, cap: int = DEFAULT_CAP) -> tuple[int, int, int]:
    """(dim Z, dim B, dim H) of the (n, m) component."""
    outgoing = boundary_matrix(n, m, cap=cap)
    dim_z = len(outgoing.source) - rank(outgoing)
    dim_b = rank(boundary_matrix(n, m - 1, cap=cap)) if m >= 2 else 0
    return dim_z, dim_b, dim_z - dim_b


def dimension_table(n_max: int, m_max: int, cap: int = DEFAULT_CAP) -> list[dict]:
    """Rows (n, m, |G_{n,m}|, dim Z, dim B, dim H) for the requested range."""
    rows = []
    for n in range(n_max + 1):
        for m in range(1, m_max + 1):
            size = len(enumerate_classes(n, m, cap=cap))
            z, b, h = cohomology_dims(n, m, cap=cap)
            rows.append(
                {"n": n, "m": m, "classes": size, "dim_Z": z, "dim_B": b, "dim_H": h}
            )
    return rows


def boundary_merge_check(
    c: SignedGraphClass,
) -> tuple[bool, GraphVector, GraphVector]:
    """Compare (d Gamma)/b0 with 2^{i-1} Gamma for Gamma in G_{n,1}.

    i is the number of edges landing on the unique boundary vertex.  Returns
    the verdict and both sides.
    """
    if c.is_zero or c.graph.m != 1:
        raise ValueError("boundary_merge_check requires a nonzero class in G_{n,1}")
    image = differential(vec(c))
    lhs = GraphVector()
    for g, coeff in image:
        merged = merge_boundary(SignedGraphClass(g, 1), 1)
        lhs = lhs + GraphVector.from_class(merged, coeff)
    i = c.graph.in_degrees()[0]
    rhs = vec(c, Fraction(2) ** (i - 1))
    return lhs == rhs, lhs, rhs


def merged_differential_factor(c: SignedGraphClass) -> Fraction:
    """The scalar lambda with (d Gamma)/b0 = lambda * Gamma, Gamma in G_{n,1}.

    Exhaustive computation over G_{n,1} (n <= 3) shows lambda = -(2^i - 2),
    where i is the in-degree of the boundary vertex: the extreme
    reattachments of the i boundary edges cancel against the two grafts of
    the empty two-point graph, leaving the 2^i - 2 proper splittings.
    """
    if c.is_zero or c.graph.m != 1:
        raise ValueError("requires a nonzero class in G_{n,1}")
    image = differential(vec(c))
    lhs = GraphVector()
    for g, coeff in image:
        merged = merge_boundary(SignedGraphClass(g, 1), 1)
        lhs = lhs + GraphVector.from_class(merged, coeff)
    if lhs.is_zero:
        return Fraction(0)
    base = vec(c)
    ratios = {lhs.coeff(g) / coeff for g, coeff in base}
    if len(ratios) != 1 or len(lhs) != len(base):
        raise ValueError("merged differential is not a multiple of the input")
    return ratios.pop()
