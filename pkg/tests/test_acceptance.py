"""Acceptance gate: the twelve exact-identity criteria, one verdict line each.

Run with `pytest -s tests/test_acceptance.py` to see the PASS/FAIL lines.
Criterion 10 reproduces a claimed identity that the computed differential
contradicts; it is marked xfail with the measured replacement law (see the
merged_differential_factor docstring and the repository notes).
"""
import math
import time
from fractions import Fraction

import pytest

from graphdgla import mc
from graphdgla.algebra import (
    GraphVector,
    antipode,
    bracket,
    compose,
    delta_sum_check,
    differential,
    expand_wedge_basis,
    project_constant,
    sigma,
    vec,
)
from graphdgla.graphs import (
    b1,
    b1_power,
    c2,
    c2L,
    c2R,
    enumerate_classes,
    merge_boundary,
    t2L,
    t2R,
)
from graphdgla.homology import boundary_merge_check
from graphdgla.kontsevich import (
    PoissonStructure,
    Poly,
    associativity_defect,
    evaluate,
    monomials_up_to_degree,
)


def verdict(number, name, ok, started, limit=None):
    elapsed = time.monotonic() - started
    line = "criterion %2d %-28s %s (%.2fs)" % (
        number,
        name,
        "PASS" if ok else "FAIL",
        elapsed,
    )
    print(line)
    assert ok, line
    if limit is not None:
        assert elapsed < limit, "runtime %.2fs exceeds %ds budget" % (elapsed, limit)


def test_criterion_01_d2_regression():
    started = time.monotonic()
    got = compose(vec(b1()), vec(b1()))
    want = vec(t2R()) - vec(t2L()) + vec(c2L()) - vec(c2R())
    verdict(1, "D2 regression", got == want, started, limit=1)


def test_criterion_02_moyal_recovery():
    started = time.monotonic()
    series = mc.solve(4, "constant")
    ok = all(
        expand_wedge_basis(series.coeffs[n]) == {n: Fraction(1)} for n in (2, 3, 4)
    )
    verdict(2, "Moyal recovery", ok, started, limit=60)


def test_criterion_03_graph_associativity():
    started = time.monotonic()
    series = mc.solve(4, "constant")
    ok = all(project_constant(mc.defect(series, n)).is_zero for n in range(5))
    verdict(3, "graph-level associativity", ok, started, limit=60)


def test_criterion_04_evaluated_associativity():
    started = time.monotonic()
    alpha = PoissonStructure.standard_symplectic(2)
    series = mc.solve(4, "constant")
    corpus = monomials_up_to_degree(2, 3)
    ok = True
    for u in corpus:
        for v in corpus:
            for w in corpus:
                defects = associativity_defect(series, alpha, u, v, w)
                if any(p for p in defects):
                    ok = False
    verdict(4, "evaluated associativity", ok, started, limit=120)


def test_criterion_05_contraction_lemma():
    started = time.monotonic()
    ok = True
    for i in range(1, 5):
        for j in range(1, 5):
            n = i + j
            if n > 5:
                continue
            contracted = project_constant(
                sigma(bracket(vec(b1_power(i)), vec(b1_power(j))))
            )
            if contracted != vec(b1_power(n), Fraction(-1, 2 ** (n - 1) - 1)):
                ok = False
    verdict(5, "contraction lemma", ok, started)


def test_criterion_06_structure_constants():
    started = time.monotonic()
    ok = True
    for i in range(1, 5):
        for j in range(1, 5):
            n = i + j
            if n > 5:
                continue
            Bi = vec(b1_power(i), Fraction(1, math.factorial(i)))
            Bj = vec(b1_power(j), Fraction(1, math.factorial(j)))
            got = expand_wedge_basis(project_constant(bracket(Bi, Bj)))
            want = {}
            for r in range(n + 1):
                for s in range(n + 1 - r):
                    t = n - r - s
                    c = (
                        (r + s == i and t == j)
                        - (r == i and s + t == j)
                        + (r + s == j and t == i)
                        - (r == j and s + t == i)
                    )
                    if c:
                        want[(r, s, t)] = Fraction(c)
            if got != want:
                ok = False
    ok = ok and all(delta_sum_check(n) for n in range(21))
    verdict(6, "structure constants", ok, started)


def test_criterion_07_differential_contraction_algebra():
    started = time.monotonic()
    ok = True
    for n in range(4):
        for m in (1, 2, 3):
            for c in enumerate_classes(n, m):
                if differential(differential(vec(c))):
                    ok = False
    for n in (2, 3):
        for m in range(2, 6):
            for c in enumerate_classes(n, m):
                inner = sigma(vec(c))
                if inner and sigma(inner):
                    ok = False
    for n in range(4):
        for m in range(2, 6):
            for c in enumerate_classes(n, m):
                for i in range(1, m):
                    for j in range(i, m - 1):
                        lhs = merge_boundary(merge_boundary(c, i), j)
                        rhs = merge_boundary(merge_boundary(c, j + 1), i)
                        if GraphVector.from_class(lhs) != GraphVector.from_class(rhs):
                            ok = False
    verdict(7, "differential/contraction", ok, started, limit=120)


def test_criterion_08_antipode():
    started = time.monotonic()
    pool = [vec(c) for n in range(3) for c in enumerate_classes(n, 2)]
    ok = antipode(vec(b1())) == vec(b1())
    for f in pool:
        if antipode(antipode(f)) != f:
            ok = False
        for g in pool:
            if antipode(compose(f, g)) != compose(antipode(f), antipode(g)):
                ok = False
    verdict(8, "antipode morphism", ok, started)


def test_criterion_09_lemma1_identity():
    started = time.monotonic()
    ok = True
    for projection in ("none", "constant", "linear"):
        series = mc.solve(4, projection)
        for n in range(5):
            if not mc.lemma1_identity(series, n):
                ok = False
    verdict(9, "Lemma-1 formal identity", ok, started)


@pytest.mark.xfail(
    strict=True,
    reason=(
        "the claimed law (dGamma)/b0 = 2^{i-1} Gamma does not hold for the "
        "implemented differential: exhaustive computation over G_{n,1}, "
        "n <= 3 gives (dGamma)/b0 = -(2^i - 2) Gamma instead (i the "
        "boundary in-degree); no sign or normalization convention "
        "reconciles the two factors (0 vs 1 at i = 1, -6 vs 4 at i = 3). "
        "The measured law is verified in test_homology and the selftest."
    ),
)
def test_criterion_10_boundary_merge_lemma():
    started = time.monotonic()
    ok = True
    for n in (1, 2, 3):
        for c in enumerate_classes(n, 1):
            passed, _, _ = boundary_merge_check(c)
            if not passed:
                ok = False
    verdict(10, "boundary-merge lemma", ok, started)


def test_criterion_11_kernel_consistency():
    started = time.monotonic()
    alpha = PoissonStructure.standard_symplectic(2)
    fs = [Poly.parse("x1^2*x2^2", 2), Poly.parse("x1*x2", 2)]
    ok = True
    for n in range(4):
        for c in enumerate_classes(n, 2):
            if c.graph.has_internal_landing() and evaluate(c, alpha, fs):
                ok = False
    so3 = PoissonStructure.so3()
    relation = vec(t2R()) - vec(t2L()) - vec(c2())
    corpus = monomials_up_to_degree(3, 2)
    for u in corpus:
        for v in corpus:
            for w in corpus:
                if evaluate(relation, so3, [u, v, w]):
                    ok = False
    verdict(11, "Kontsevich kernel consistency", ok, started)


def test_criterion_12_conjecture_instrumentation():
    started = time.monotonic()
    series = mc.solve(2, "linear")
    report = series.reports[0]
    alpha = PoissonStructure.so3()
    u, v, w = (Poly.variable(3, i) for i in (1, 2, 3))
    defects = associativity_defect(series, alpha, u, v, w)
    # acceptance is deterministic production of the report, not its values
    again = mc.solve(2, "linear")
    ok = (
        report.n == 2
        and report.residual == again.reports[0].residual
        and len(defects) == 3
        and defects == associativity_defect(again, alpha, u, v, w)
    )
    verdict(12, "Conjecture-1 instrumentation", ok, started)
