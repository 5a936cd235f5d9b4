"""Admissible edge-labeled directed graphs and signed orientation classes.

A graph has ``m`` linearly ordered boundary vertices (pure sinks, labeled
1..m) and ``n`` internal vertices, each carrying an ordered pair of outgoing
edges (L, R).  Targets are encoded as integers: ``0..m-1`` are the boundary
vertices ``1..m`` and ``m+k`` is the internal vertex of index ``k``.

An orientation class is a graph up to permutation of the internal vertices
(no sign) combined with L/R swaps at individual vertices, each swap
contributing a factor of -1.  A class whose underlying graph admits an
automorphism realizing an odd number of swaps equals its own negative and is
therefore zero.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Optional

Pair = tuple[int, int]

DEFAULT_CAP = 10**8


class GraphError(ValueError):
    """Structurally inadmissible graph or invalid index."""


class ResourceCapExceeded(RuntimeError):
    """Enumeration search space exceeds the configured cap."""


@dataclass(frozen=True)
class LabeledGraph:
    """A concrete labeled representative (not necessarily canonical)."""

    m: int
    targets: tuple[Pair, ...]

    @property
    def n(self) -> int:
        return len(self.targets)

    def validate(self) -> None:
        if self.m < 1:
            raise GraphError("need at least one boundary vertex")
        size = self.m + self.n
        for k, (a, b) in enumerate(self.targets):
            for t in (a, b):
                if not 0 <= t < size:
                    raise GraphError("target %d out of range at vertex v%d" % (t, k + 1))
            if a == self.m + k or b == self.m + k:
                raise GraphError("self-loop at vertex v%d" % (k + 1))
            if a == b:
                raise GraphError("double edge at vertex v%d" % (k + 1))

    def in_degrees(self) -> list[int]:
        """In-degree of every vertex, boundary slots first."""
        deg = [0] * (self.m + self.n)
        for a, b in self.targets:
            deg[a] += 1
            deg[b] += 1
        return deg

    def internal_in_degrees(self) -> list[int]:
        return self.in_degrees()[self.m:]

    def has_internal_landing(self) -> bool:
        return any(t >= self.m for a, b in self.targets for t in (a, b))

    def sort_key(self) -> tuple:
        return (self.n, self.targets)

    # -- text literal ------------------------------------------------------

    def to_literal(self) -> str:
        def fmt(t: int) -> str:
            return "b%d" % (t + 1) if t < self.m else "v%d" % (t - self.m + 1)

        parts = ["m=%d" % self.m]
        for k, (a, b) in enumerate(self.targets):
            parts.append("v%d=(%s,%s)" % (k + 1, fmt(a), fmt(b)))
        return "G{%s}" % "; ".join(parts) if self.n else "G{m=%d;}" % self.m

    _LITERAL_RE = re.compile(r"^G\{\s*m=(\d+)\s*(?:;(.*))?\}$")
    _VERTEX_RE = re.compile(r"^v(\d+)=\(\s*([bv]\d+)\s*,\s*([bv]\d+)\s*\)$")

    @classmethod
    def from_literal(cls, text: str) -> "LabeledGraph":
        match = cls._LITERAL_RE.match(text.strip())
        if match is None:
            raise GraphError("malformed graph literal: %r" % text)
        m = int(match.group(1))
        body = (match.group(2) or "").strip().rstrip(";")
        entries: dict[int, Pair] = {}

        def parse_target(tok: str) -> int:
            idx = int(tok[1:])
            if idx < 1:
                raise GraphError("bad target %r" % tok)
            return idx - 1 if tok[0] == "b" else m + idx - 1

        if body:
            for chunk in body.split(";"):
                chunk = chunk.strip()
                if not chunk:
                    continue
                vm = cls._VERTEX_RE.match(chunk)
                if vm is None:
                    raise GraphError("malformed vertex entry: %r" % chunk)
                k = int(vm.group(1)) - 1
                if k in entries:
                    raise GraphError("duplicate vertex v%d" % (k + 1))
                entries[k] = (parse_target(vm.group(2)), parse_target(vm.group(3)))
        n = len(entries)
        if set(entries) != set(range(n)):
            raise GraphError("vertex labels must be v1..v%d" % n)
        g = cls(m, tuple(entries[k] for k in range(n)))
        g.validate()
        return g


@dataclass(frozen=True)
class SignedGraphClass:
    """A canonical orientation class with a sign, or the zero class."""

    graph: Optional[LabeledGraph]
    sign: int

    @property
    def is_zero(self) -> bool:
        return self.graph is None

    def __neg__(self) -> "SignedGraphClass":
        if self.is_zero:
            return self
        return SignedGraphClass(self.graph, -self.sign)

    def scaled(self, s: int) -> "SignedGraphClass":
        if self.is_zero:
            return self
        return SignedGraphClass(self.graph, self.sign * s)


ZERO = SignedGraphClass(None, 0)


def canonicalize(g: LabeledGraph) -> SignedGraphClass:
    """Canonical representative of the orientation class of ``g``.

    The canonical graph is the lexicographically minimal encoding over all
    internal-vertex permutations combined with per-vertex L/R swaps; the sign
    is the swap parity relating ``g`` to it.  If the minimum is reachable with
    both parities the class is zero.
    """
    g.validate()
    n, m = g.n, g.m
    if n == 0:
        return SignedGraphClass(g, 1)
    best: Optional[tuple] = None
    parities: set[int] = set()
    targets = g.targets
    for perm in itertools.permutations(range(n)):
        new: list[Pair] = [(0, 0)] * n
        flips = 0
        for old in range(n):
            a, b = targets[old]
            if a >= m:
                a = m + perm[a - m]
            if b >= m:
                b = m + perm[b - m]
            if a > b:
                a, b = b, a
                flips += 1
            new[perm[old]] = (a, b)
        key = tuple(new)
        if best is None or key < best:
            best = key
            parities = {flips & 1}
        elif key == best:
            parities.add(flips & 1)
    if len(parities) == 2:
        return ZERO
    sign = 1 if 0 in parities else -1
    return SignedGraphClass(LabeledGraph(m, best), sign)


def merge_boundary(c: SignedGraphClass, i: int) -> SignedGraphClass:
    """Merge boundary vertices ``i`` and ``i+1`` (1-based); zero on a bridge."""
    if c.is_zero:
        return ZERO
    g = c.graph
    if not 1 <= i <= g.m - 1:
        raise GraphError("merge index %d out of range for m=%d" % (i, g.m))
    new: list[Pair] = []
    for a, b in g.targets:
        # boundary slots >= i and internal slots all shift down by one
        na = a if a < i else a - 1
        nb = b if b < i else b - 1
        if na == nb:
            return ZERO
        new.append((na, nb))
    return canonicalize(LabeledGraph(g.m - 1, tuple(new))).scaled(c.sign)


def transpose(c: SignedGraphClass) -> SignedGraphClass:
    """Reverse the order of the boundary points."""
    if c.is_zero:
        return ZERO
    g = c.graph
    new = tuple(
        tuple(g.m - 1 - t if t < g.m else t for t in pair) for pair in g.targets
    )
    return canonicalize(LabeledGraph(g.m, new)).scaled(c.sign)


def superpose(c1: SignedGraphClass, c2: SignedGraphClass) -> SignedGraphClass:
    """Disjoint union of internal vertices over a shared boundary."""
    if c1.is_zero or c2.is_zero:
        return ZERO
    g1, g2 = c1.graph, c2.graph
    if g1.m != g2.m:
        raise GraphError("boundary arity mismatch: %d vs %d" % (g1.m, g2.m))
    shift = g1.n
    moved = tuple(
        tuple(t if t < g2.m else t + shift for t in pair) for pair in g2.targets
    )
    g = LabeledGraph(g1.m, g1.targets + moved)
    return canonicalize(g).scaled(c1.sign * c2.sign)


def enumerate_classes(
    n: int,
    m: int,
    max_in_degree: Optional[int] = None,
    cap: int = DEFAULT_CAP,
) -> list[SignedGraphClass]:
    """All nonzero orientation classes of G_{n,m}, each once with sign +1.

    Deterministic lexicographic order of the canonical encodings.  Classes
    violating ``max_in_degree`` at some internal vertex are omitted.
    """
    if n < 0 or m < 1:
        raise GraphError("need n >= 0 and m >= 1")
    size = m + n
    choices = size - 1
    if n and (choices * (choices - 1)) ** n > cap:
        raise ResourceCapExceeded(
            "labeled search space for G_{%d,%d} exceeds cap %d" % (n, m, cap)
        )
    # ascending pairs suffice: every class has a representative with L < R
    # at each vertex (a swap only flips the sign)
    seen: set[LabeledGraph] = set()
    vertex_options = []
    for k in range(n):
        own = m + k
        opts = [
            (a, b)
            for a, b in itertools.combinations(range(size), 2)
            if a != own and b != own
        ]
        vertex_options.append(opts)
    for assignment in itertools.product(*vertex_options):
        c = canonicalize(LabeledGraph(m, assignment))
        if c.is_zero:
            continue
        if max_in_degree is not None and any(
            d > max_in_degree for d in c.graph.internal_in_degrees()
        ):
            continue
        seen.add(c.graph)
    return [SignedGraphClass(g, 1) for g in sorted(seen, key=LabeledGraph.sort_key)]


# -- named graphs ----------------------------------------------------------


def empty_graph(m: int) -> SignedGraphClass:
    """The edgeless graph on ``m`` boundary points."""
    return SignedGraphClass(LabeledGraph(m, ()), 1)


def b0() -> SignedGraphClass:
    return empty_graph(2)


def wedge(m: int, i: int, j: int) -> SignedGraphClass:
    """Single internal vertex with L -> boundary i, R -> boundary j (1-based)."""
    return canonicalize(LabeledGraph(m, ((i - 1, j - 1),)))


def b1() -> SignedGraphClass:
    return wedge(2, 1, 2)


def b1_power(n: int) -> SignedGraphClass:
    """n disjoint wedges over two shared boundary points."""
    return canonicalize(LabeledGraph(2, ((0, 1),) * n)) if n else b0()


def gamma1() -> SignedGraphClass:
    return wedge(3, 2, 3)


def gamma2() -> SignedGraphClass:
    return wedge(3, 1, 3)


def gamma3() -> SignedGraphClass:
    return wedge(3, 1, 2)


def t2R() -> SignedGraphClass:
    # v1 -> (v2, b3), v2 -> (b1, b2)
    return canonicalize(LabeledGraph(3, ((4, 2), (0, 1))))


def t2L() -> SignedGraphClass:
    # v1 -> (b1, v2), v2 -> (b2, b3)
    return canonicalize(LabeledGraph(3, ((0, 4), (1, 2))))


def c2() -> SignedGraphClass:
    # v1 -> (v2, b2), v2 -> (b1, b3)
    return canonicalize(LabeledGraph(3, ((4, 1), (0, 2))))


def c2R() -> SignedGraphClass:
    # v1 -> (b1, b3), v2 -> (b2, b3)
    return canonicalize(LabeledGraph(3, ((0, 2), (1, 2))))


def c2L() -> SignedGraphClass:
    # v1 -> (b1, b3), v2 -> (b1, b2)
    return canonicalize(LabeledGraph(3, ((0, 2), (0, 1))))
