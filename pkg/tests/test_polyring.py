from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from crysalite.errors import PolySyntaxError, UnknownVariable, ZeroPolynomial
from crysalite.polyring import (
    GradedAlgebra,
    HilbertTable,
    HypersurfaceRing,
    MultiPoly,
    euler_identity_check,
    jacobian_profile,
    monomial_count,
    monomials,
    parse_poly,
    partials,
    quotient_hilbert,
)
from conftest import odp, ring
from oracles import enumerate_monomials, series_power

X2 = ["x0", "x1"]
X3 = ["x0", "x1", "x2"]


def P(text, names, p):
    return parse_poly(text, names, p)


class TestParse:
    def test_sum_of_squares(self):
        f = P("x0^2+x1^2", X2, 5)
        assert len(f.terms) == 2
        assert f.is_homogeneous() and f.degree == 2

    def test_node(self):
        f = P("x0*x1", X2, 5)
        assert f.terms == {(1, 1): 1}
        assert f.degree == 2

    def test_coefficient_reduced(self):
        f = P("x0^2+5*x1^2", X2, 5)
        assert f.terms == {(2, 0): 1}

    def test_whitespace_signs_and_unicode_minus(self):
        f = P(" 3 * x0 ^ 2 − x1^2 - 2*x0*x1 ", X2, 7)
        assert f.terms == {(2, 0): 3, (0, 2): 6, (1, 1): 5}

    def test_like_terms_collected(self):
        assert P("x0*x1 + x1*x0", X2, 5).terms == {(1, 1): 2}

    def test_constant_and_nonhomogeneous(self):
        f = P("x0^2 + x1 + 1", X2, 5)
        assert not f.is_homogeneous()
        assert f.degree is None

    @pytest.mark.parametrize(
        "text,pos",
        [("x0^^2", 3), ("x0 + + x1", 5), ("x0*", 3), ("x0 $ x1", 3), ("x0^x1", 3), ("", 0)],
    )
    def test_syntax_error_position(self, text, pos):
        with pytest.raises(PolySyntaxError) as exc:
            P(text, X2, 5)
        assert exc.value.position == pos

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariable) as exc:
            P("x0*y", X2, 5)
        assert exc.value.position == 3

    def test_zero_polynomial(self):
        assert P("5*x0", X2, 5).is_zero()
        with pytest.raises(ZeroPolynomial):
            HypersurfaceRing.from_text("5*x0^2", X2, 5)

    def test_non_homogeneous_ring_rejected(self):
        with pytest.raises(ValueError, match="homogeneous"):
            HypersurfaceRing.from_text("x0^2+x1", X2, 5)

    def test_round_trip_text(self):
        f = P("x0^3 + 2*x0*x1*x2 - x2^3", X3, 7)
        assert P(f.to_text(X3), X3, 7) == f


class TestPartials:
    def test_odp(self):
        a, b = partials(P("x0^2+x1^2", X2, 5))
        assert a.terms == {(1, 0): 2} and b.terms == {(0, 1): 2}

    def test_node(self):
        a, b = partials(P("x0*x1", X2, 5))
        assert a.terms == {(0, 1): 1} and b.terms == {(1, 0): 1}

    def test_vanish_in_char_p(self):
        assert all(g.is_zero() for g in partials(P("x0^3+x1^3", X2, 3)))


class TestEuler:
    @pytest.mark.parametrize(
        "text,names,p",
        [("x0^2+x1^2+x2^2", X3, 5), ("x0^3+x1^3", X2, 3), ("x0*x1", X2, 7)],
    )
    def test_examples(self, text, names, p):
        assert euler_identity_check(P(text, names, p))

    def test_rejects_nonhomogeneous(self):
        with pytest.raises(ValueError):
            euler_identity_check(P("x0^2+x1", X2, 5))


class TestQuotientHilbert:
    def test_empty_ideal(self):
        assert quotient_hilbert([], 3, nvars=2) == 4

    def test_single_form(self):
        assert quotient_hilbert([P("x0^2+x1^2", X2, 5)], 3) == 2

    def test_all_variables(self):
        assert quotient_hilbert(partials(P("x0^2+x1^2+x2^2", X3, 5)), 1) == 0

    def test_mixed_rings_rejected(self):
        with pytest.raises(ValueError):
            quotient_hilbert([P("x0", X2, 5), P("x0", X3, 5)], 1)


@pytest.mark.parametrize("V", [1, 2, 3, 4])
def test_monomial_count_by_enumeration(V):
    for w in range(13):
        assert monomial_count(V, w) == comb(w + V - 1, V - 1) == len(enumerate_monomials(V, w))
        assert sorted(monomials(V, w)) == sorted(enumerate_monomials(V, w))


def test_monomials_grevlex_order():
    assert monomials(3, 2) == ((2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2))


@st.composite
def homogeneous_forms(draw, max_vars=3, max_deg=4):
    p = draw(st.sampled_from([2, 3, 5, 7]))
    V = draw(st.integers(1, max_vars))
    d = draw(st.integers(1, max_deg))
    mons = enumerate_monomials(V, d)
    coeffs = draw(st.lists(st.integers(0, p - 1), min_size=len(mons), max_size=len(mons)))
    f = MultiPoly(p, V, dict(zip(mons, coeffs)))
    if f.is_zero():
        f = MultiPoly.monomial(p, mons[0])
    return f


@settings(max_examples=40, deadline=None)
@given(homogeneous_forms())
def test_principal_quotient_dimension(f):
    d = f.degree
    for w in range(0, d + 5):
        expect = monomial_count(f.nvars, w) - monomial_count(f.nvars, w - d)
        assert quotient_hilbert([f], w) == expect
        assert GradedAlgebra(f.prime, f.nvars, f).dim(w) == expect


@settings(max_examples=40, deadline=None)
@given(homogeneous_forms())
def test_euler_identity_always_holds(f):
    assert euler_identity_check(f)


@settings(max_examples=30, deadline=None)
@given(homogeneous_forms(max_deg=3))
def test_normal_form_multiplication_is_consistent(f):
    """Reducing a product agrees with reducing the factors first."""
    A = GradedAlgebra(f.prime, f.nvars, f)
    V = f.nvars
    g = MultiPoly(f.prime, V, {m: 1 + i for i, m in enumerate(enumerate_monomials(V, 2))})
    h = MultiPoly(f.prime, V, {m: 2 + i for i, m in enumerate(enumerate_monomials(V, f.degree))})
    assert A.reduce(g * h) == A.reduce(A.reduce(g) * A.reduce(h))
    assert A.is_zero(f * g)


class TestJacobianProfile:
    def test_odp3(self):
        prof = jacobian_profile(odp(3))
        assert prof.m_table.dims == {0: 1}
        assert prof.milnor == 1
        assert prof.smooth and prof.finite_length and not prof.p_divides_d

    def test_fermat_cubic(self):
        prof = jacobian_profile(ring("x0^3+x1^3+x2^3", 3, 7))
        assert prof.m_table.dims == {0: 1, 1: 3, 2: 3, 3: 1}
        assert prof.milnor == 8
        assert prof.m_table.top_weight() == 3
        assert prof.m_table.dims == dict(enumerate(series_power([1, 1], 3, 3)))

    def test_all_partials_vanish(self):
        prof = jacobian_profile(ring("x0^3+x1^3", 2, 3))
        assert not prof.finite_length
        assert prof.milnor is None
        assert prof.p_divides_d
        assert not prof.euler_member

    def test_node_is_projectively_smooth(self):
        prof = jacobian_profile(ring("x0*x1", 2, 5))
        assert prof.m_table.dims == {0: 1} and prof.smooth

    def test_singular_projective_curve(self):
        # x0^2 x2 - x1^3 has a cusp at [0:0:1]
        prof = jacobian_profile(ring("x0^2*x2-x1^3", 3, 5))
        assert not prof.smooth and not prof.finite_length

    def test_cutoff_too_small(self):
        with pytest.raises(ValueError):
            jacobian_profile(ring("x0^3+x1^3+x2^3", 3, 7), w_cutoff=2)

    @pytest.mark.parametrize(
        "poly,V,p",
        [
            ("x0^2+x1^2", 2, 5),
            ("x0^4+x1^4", 2, 5),
            ("x0^3+x1^3+x2^3", 3, 7),
            ("x0^5+x1^5+x2^5", 3, 7),
            ("x0^3+x1^3+x2^3+x3^3", 4, 5),
            ("x^4", 1, 5),
        ],
    )
    def test_regular_sequence_series(self, poly, V, p):
        R = ring(poly, V, p)
        prof = jacobian_profile(R)
        d = R.d
        top = (d - 2) * V
        coeffs = series_power([1] * (d - 1), V, top + 3)
        assert prof.m_table.dims == {w: c for w, c in enumerate(coeffs) if c}
        assert prof.m_table.top_weight() == top
        assert prof.milnor == (d - 1) ** V


def test_hilbert_twist_convention():
    t = HilbertTable({0: 1, 1: 2}, 5, True)
    # M(-j)_i = M_{i-j}
    assert t.twist(-3).dims == {3: 1, 4: 2}
    assert t.twist(2).dims == {-2: 1, -1: 2}


def test_ring_invariants():
    R = ring("x0*x1", 2, 5)
    assert (R.nvars, R.d, R.krull_dim, R.embdim) == (2, 2, 1, 2)
    L = ring("x0", 2, 5)
    assert (L.krull_dim, L.embdim) == (1, 1)
    assert hash(R) == hash(ring("x0*x1", 2, 5))
