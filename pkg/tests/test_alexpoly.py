import pytest
from hypothesis import given, strategies as st

from twobridge.alexpoly import (IntPolynomial, alexander_from_fox, alexander_from_relator,
                                alexander_polynomial, content, format_poly, genus,
                                genus_one_knot_poly, genus_one_link_poly, relator_coefficients)
from twobridge.pairs import CoprimePair, canonical_pairs, even_continued_fraction, reverse_component

from oracles import fox_b, laurent_normal, schubert_letters

polys = st.lists(st.integers(-9, 9), max_size=6).map(lambda c: IntPolynomial(tuple(c)))


def test_golden_values():
    # [DERIVED] 4t^2 - 9t + 4 from the abelianized relator (4, -9, 4)
    assert alexander_polynomial(CoprimePair(17, 13)).coeffs == (4, -9, 4)
    # [PAPER] 4t^4 - 20t^3 + 33t^2 - 20t + 4
    assert alexander_polynomial(CoprimePair(81, 49)).coeffs == (4, -20, 33, -20, 4)
    # [PAPER] the (4,2)-torus link with parallel orientation: 2t - 2
    assert alexander_polynomial(CoprimePair(4, 3)).coeffs == (-2, 2)
    # [PAPER] reversing one component: t^3 - t^2 + t - 1
    rev = reverse_component(CoprimePair(4, 3))
    assert alexander_polynomial(rev).coeffs == (-1, 1, -1, 1)


def test_fox_oracle_all_routes_agree():
    for a in canonical_pairs(200):
        oracle = laurent_normal(fox_b(schubert_letters(a.p, a.q)))
        fox = alexander_from_fox(a)
        assert fox.coeffs == oracle, str(a)
        assert alexander_from_relator(a) == fox, str(a)


def test_knots_have_unit_value_at_one():
    for a in canonical_pairs(200):
        d = alexander_polynomial(a)
        if a.is_knot:
            assert abs(d(1)) == 1
            # symmetric up to sign
            assert d.coeffs == tuple(reversed(d.coeffs))
        else:
            assert d(1) == 0


def test_genus_one_formulas():
    seen = 0
    for a in canonical_pairs(200):
        cf = even_continued_fraction(a)
        if len(cf) == 2:
            expected = genus_one_knot_poly(*cf.halves)
        elif len(cf) == 3:
            expected = genus_one_link_poly(*cf.halves)
        else:
            continue
        seen += 1
        assert alexander_polynomial(a) == expected.normalized(), str(a)
    assert seen > 100


def test_genus_one_formula_examples():
    assert genus_one_knot_poly(2, 2).coeffs == (4, -9, 4)
    # [DERIVED] (t - 1)(t^2 - 4t + 1) = t^3 - 5t^2 + 5t - 1
    assert genus_one_link_poly(1, 1, 1).coeffs == (-1, 5, -5, 1)
    with pytest.raises(ValueError):
        genus_one_knot_poly(0, 1)
    with pytest.raises(ValueError):
        genus_one_link_poly(1, 0, 1)


def test_genus_from_relator_width():
    assert genus(CoprimePair(17, 13)) == 1
    assert genus(CoprimePair(81, 49)) == 2
    for a in canonical_pairs(100):
        m, M, coeffs = relator_coefficients(a)
        assert M - m == alexander_polynomial(a).degree
        assert coeffs[0] != 0 and coeffs[-1] != 0


def test_content():
    assert content(IntPolynomial((-2, 2))) == 2
    assert content(IntPolynomial((4, -9, 4))) == 1
    with pytest.raises(ValueError):
        content(IntPolynomial(()))


def test_format_poly():
    assert format_poly(IntPolynomial((4, -9, 4))) == "4*t^2 - 9*t + 4"
    assert str(IntPolynomial((-1, 1, -1, 1))) == "t^3 - t^2 + t - 1"
    assert str(IntPolynomial(())) == "0"
    assert str(IntPolynomial((0, -1))) == "-t"


def test_from_powers():
    p = IntPolynomial.from_powers({-1: 4, 0: -9, 1: 4})
    assert p.coeffs == (4, -9, 4)
    assert IntPolynomial.from_powers({3: 0}) == IntPolynomial(())


@given(polys, polys, st.integers(-5, 5))
def test_ring_operations(f, g, x):
    assert (f + g)(x) == f(x) + g(x)
    assert (f - g)(x) == f(x) - g(x)
    assert (f * g)(x) == f(x) * g(x)
    assert (3 * f)(x) == 3 * f(x)


@given(polys)
def test_normalized(f):
    n = f.normalized()
    if f:
        assert n.leading > 0 and n.coeffs[0] != 0
        assert n.degree <= f.degree


def test_derivative():
    assert IntPolynomial((4, -9, 4)).derivative().coeffs == (-9, 8)
