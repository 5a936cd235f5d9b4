"""The DGLA operations: insertion, bracket, differential, merger contraction,
projections, basis expansions, antipode, and the index-triple codifferential."""
import json
import math
from fractions import Fraction

import pytest

from graphdgla.algebra import (
    GraphVector,
    SigmaDomainError,
    WedgeSpanError,
    antipode,
    bracket,
    compose,
    curly,
    delta_codifferential,
    delta_sum_check,
    differential,
    expand_wedge_basis,
    gamma_basis_element,
    insert,
    project_constant,
    project_linear,
    reconstruct_wedge_basis,
    sigma,
    vec,
    wedge_basis_element,
)
from graphdgla.graphs import (
    LabeledGraph,
    canonicalize,
    b0,
    b1,
    b1_power,
    c2,
    c2L,
    c2R,
    empty_graph,
    enumerate_classes,
    t2L,
    t2R,
)

B0 = vec(b0())
B1 = vec(b1())
# X is the third graph produced by inserting a wedge into a wedge: one foot
# of each wedge on a shared boundary point, no internal landings.
X = vec(canonicalize(LabeledGraph(3, ((1, 2), (0, 1)))))


def lie_degree(v):
    (g, _), *_ = list(v)
    return g.m - 1


class TestInsert:
    def test_wedge_into_slot_1(self):
        assert insert(B1, 1, B1) == vec(t2R()) + vec(c2L()) + X

    def test_wedge_into_slot_2(self):
        assert insert(B1, 2, B1) == vec(t2L()) + X + vec(c2R())

    def test_b0_into_b0(self):
        assert insert(B0, 1, B0) == vec(empty_graph(3))

    def test_position_out_of_range(self):
        with pytest.raises(ValueError):
            insert(B1, 3, B1)

    def test_bilinear(self):
        f = B1 + vec(b1_power(2), Fraction(1, 3))
        g = B1 - B0.scale(2)
        lhs = insert(f, 1, g)
        rhs = (
            insert(B1, 1, B1)
            - insert(B1, 1, B0).scale(2)
            + insert(vec(b1_power(2)), 1, B1).scale(Fraction(1, 3))
            - insert(vec(b1_power(2)), 1, B0).scale(Fraction(2, 3))
        )
        assert lhs == rhs


class TestCompose:
    def test_d2_regression(self):
        got = compose(B1, B1)
        want = vec(t2R()) - vec(t2L()) + vec(c2L()) - vec(c2R())
        assert got == want

    def test_b0_squares_to_zero(self):
        assert compose(B0, B0).is_zero

    def test_inhomogeneous_g_rejected(self):
        with pytest.raises(ValueError):
            compose(B1, B1 + vec(empty_graph(3)))

    def test_pre_lie_associator_symmetry(self):
        """(f.g).h - f.(g.h) is symmetric in g, h for homogeneous samples."""
        samples = [B0, B1, vec(b1_power(2))]
        for f in samples:
            for g in samples:
                for h in samples:
                    lhs = compose(compose(f, g), h) - compose(f, compose(g, h))
                    rhs = compose(compose(f, h), g) - compose(f, compose(h, g))
                    sign = (-1) ** (lie_degree(g) * lie_degree(h))
                    assert lhs == rhs.scale(sign)


class TestBracket:
    def test_b0_b1_commute(self):
        assert bracket(B0, B1).is_zero

    def test_odd_odd_doubles(self):
        assert bracket(B1, B1) == compose(B1, B1).scale(2)

    def test_constant_projected_B1_bracket(self):
        got = project_constant(bracket(wedge_basis_element(1), wedge_basis_element(1)))
        want = (
            gamma_basis_element(0, 1, 1).scale(2)
            - gamma_basis_element(1, 1, 0).scale(2)
        )
        assert got == want
        assert got == (vec(c2L()) - vec(c2R())).scale(2)

    def test_graded_antisymmetry(self):
        pool = [vec(c) for n in range(3) for c in enumerate_classes(n, 2)]
        for f in pool:
            for g in pool:
                sign = (-1) ** (lie_degree(f) * lie_degree(g))
                assert (bracket(f, g) + bracket(g, f).scale(sign)).is_zero

    def test_graded_jacobi_odd_element(self):
        f = B0 + B1
        assert bracket(bracket(f, f), f).is_zero


class TestDifferential:
    def test_wedge_closed(self):
        assert differential(B1).is_zero

    def test_b0_closed(self):
        assert differential(B0).is_zero

    def test_square_zero_on_2_2(self):
        for c in enumerate_classes(2, 2):
            assert differential(differential(vec(c))).is_zero

    def test_raises_m_preserves_n(self):
        for c in enumerate_classes(2, 2):
            for g, _ in differential(vec(c)):
                assert g.m == 3 and g.n == 2


class TestSigma:
    def test_c2R(self):
        assert sigma(vec(c2R())) == vec(b1_power(2), Fraction(1, 4))

    def test_c2L(self):
        assert sigma(vec(c2L())) == vec(b1_power(2), Fraction(-1, 4))

    def test_contraction_coefficients(self):
        for i, j in [(1, 1), (1, 2), (2, 2)]:
            n = i + j
            got = project_constant(sigma(bracket(vec(b1_power(i)), vec(b1_power(j)))))
            assert got == vec(b1_power(n), Fraction(-1, 2 ** (n - 1) - 1))

    def test_domain_error_single_vertex(self):
        with pytest.raises(SigmaDomainError):
            sigma(B1)

    def test_linear_alt_normalization(self):
        n = 2
        base = vec(c2R())
        ratio = Fraction(-1, 2 ** (n - 1) - 1) / Fraction(1, 2 * (2**n - 2))
        assert sigma(base, "linear-alt") == sigma(base).scale(ratio)

    def test_lowers_m_preserves_n(self):
        v = bracket(B1, B1)
        for g, _ in sigma(v):
            assert g.m == 2 and g.n == 2


class TestProjections:
    def test_constant_kills_internal_landing(self):
        assert project_constant(vec(t2R())).is_zero
        assert project_constant(vec(t2L())).is_zero
        assert project_constant(vec(c2())).is_zero

    def test_constant_keeps_wedges(self):
        for n in (1, 2, 3):
            assert project_constant(vec(b1_power(n))) == vec(b1_power(n))

    def test_constant_of_zero(self):
        assert project_constant(GraphVector()).is_zero

    def test_linear_keeps_in_degree_one(self):
        assert project_linear(vec(t2R())) == vec(t2R())

    def test_linear_kills_in_degree_two(self):
        g = canonicalize(LabeledGraph(2, ((0, 4), (0, 4), (0, 1))))
        assert project_linear(vec(g)).is_zero

    def test_linear_keeps_wedges(self):
        assert project_linear(vec(b1_power(3))) == vec(b1_power(3))


class TestWedgeBasis:
    def test_b1_squared(self):
        assert expand_wedge_basis(vec(b1_power(2))) == {2: Fraction(2)}

    def test_c2L_is_gamma_011(self):
        assert expand_wedge_basis(vec(c2L())) == {(0, 1, 1): Fraction(1)}

    def test_four_case_rule(self):
        """expand([B_i, B_j]) coefficient on (r,s,t) is
        [r+s=i, t=j] - [r=i, s+t=j] + [r+s=j, t=i] - [r=j, s+t=i]."""
        for i in range(1, 5):
            for j in range(1, 5 - i + 1):
                got = expand_wedge_basis(
                    project_constant(
                        bracket(wedge_basis_element(i), wedge_basis_element(j))
                    )
                )
                want = {}
                n = i + j
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
                assert got == want
                if i != j:
                    # the four indicator cases cannot coincide unless i = j
                    assert all(abs(c) == 1 for c in want.values())

    def test_residual_reported(self):
        with pytest.raises(WedgeSpanError) as exc:
            expand_wedge_basis(vec(t2R()))
        assert exc.value.residual == vec(t2R())

    def test_round_trip(self):
        v = vec(b1_power(2), Fraction(3, 7)) + vec(b1_power(4), Fraction(-1, 5))
        assert reconstruct_wedge_basis(expand_wedge_basis(v), 2) == v
        w = vec(c2L()) - vec(c2R(), Fraction(5, 2))
        assert reconstruct_wedge_basis(expand_wedge_basis(w), 3) == w


class TestAntipode:
    def test_b1_fixed(self):
        assert antipode(B1) == B1

    def test_involution(self):
        for c in enumerate_classes(2, 3):
            v = vec(c)
            assert antipode(antipode(v)) == v

    def test_pre_lie_morphism_on_d2(self):
        lhs = antipode(compose(B1, B1))
        rhs = compose(antipode(B1), antipode(B1))
        assert lhs == rhs

    def test_alternate_sign_convention_differs(self):
        # the (-1)^m convention sends b1 to -b1; kept only for comparison
        assert antipode(B1, "paper") == -B1


class TestCurly:
    def test_b0_b0(self):
        assert curly(B0, B0).is_zero

    def test_b1_b1_equals_compose(self):
        assert curly(B1, B1) == compose(B1, B1)

    def test_constant_projection(self):
        assert project_constant(curly(B1, B1)) == vec(c2L()) - vec(c2R())

    def test_rejects_wrong_arity(self):
        with pytest.raises(ValueError):
            curly(B1, vec(empty_graph(3)))


class TestDeltaCodifferential:
    def test_delta_1_1(self):
        assert delta_codifferential(1, 1) == {(0, 1, 1): 1, (1, 1, 0): -1}

    def test_delta_0_0(self):
        assert delta_codifferential(0, 0) == {}

    def test_sum_cancels(self):
        for n in range(21):
            assert delta_sum_check(n)


class TestGraphVector:
    def test_no_zero_coefficients_stored(self):
        v = B1 - B1
        assert len(v) == 0 and v.is_zero

    def test_literal_round_trip(self):
        v = vec(t2R(), Fraction(-3, 2)) + vec(c2L()) + vec(c2R(), Fraction(5, 7))
        assert GraphVector.from_literal(v.to_literal()) == v

    def test_json_round_trip(self):
        v = compose(B1, B1)
        blob = json.dumps(v.to_json_obj())
        assert GraphVector.from_json_obj(json.loads(blob)) == v

    def test_wedge_closure_under_composition(self):
        """Adding Poisson-kernel terms to wedge-only inputs cannot change the
        constant-projected composition."""
        f = vec(b1_power(2))
        g = B1
        kernel = vec(canonicalize(LabeledGraph(2, ((0, 3), (0, 1)))))
        assert project_constant(kernel).is_zero
        assert project_constant(compose(f + kernel, g)) == project_constant(
            compose(f, g)
        )
        assert project_constant(compose(g, f + kernel)) == project_constant(
            compose(g, f)
        )


def test_factorials_in_wedge_basis_elements():
    for n in range(1, 5):
        assert wedge_basis_element(n) == vec(
            b1_power(n), Fraction(1, math.factorial(n))
        )
