"""Exact Z[i] / Q(i) arithmetic and the Hermitian form."""
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import gaussians, nonzero_gaussians, vectors, words
from picard.configurations import REPRESENTATIVES, ConfigClass
from picard.gaussian import (
    UNITS,
    GaussianInt,
    GaussianRat,
    gcd,
    gcd_vec,
    is_isotropic,
    is_reduced,
    norm_q,
    q_form,
    scale_vec,
    unit_normalize,
    vec,
    vec_from_json,
    vec_to_json,
)
from picard.group import eval_word


def test_q_of_standard_basis():
    assert q_form(vec(1, 0, 0), vec(0, 0, 1)) == GaussianInt(0, 1)
    assert norm_q(vec(1, 0, 0), vec(0, 0, 1)) == 1


def test_q_vanishes_on_j22_member():
    assert q_form(vec(1j, 1 + 1j, 1 + 1j), vec(1j, 1 + 1j, 1 + 1j)) == 0


def test_j8_q_values():
    vs = REPRESENTATIVES[ConfigClass.J8].vectors
    vals = {norm_q(u, v) for u in vs for v in vs if u != v}
    assert vals == {1, 2, 4}


@pytest.mark.parametrize("v,expected", [((1, 0, 0), True), ((1j, 2, 2), True), ((1, 1, 1), False)])
def test_is_isotropic_examples(v, expected):
    assert is_isotropic(vec(*v)) is expected


@pytest.mark.parametrize("v,expected", [((1, 0, 2), True), ((1 + 1j, 1 + 1j, 1 + 1j), False), ((2j, 2, 1), True)])
def test_is_reduced_examples(v, expected):
    assert is_reduced(vec(*v)) is expected


def test_is_reduced_rejects_zero():
    with pytest.raises(ValueError):
        is_reduced(vec(0, 0, 0))


@pytest.mark.parametrize(
    "v,expected",
    [((-1, 0, -1), (1, 0, 1)), ((1j, 0, 0), (1, 0, 0)), ((1 + 1j, 1 + 1j, 1), (1 + 1j, 1 + 1j, 1))],
)
def test_unit_normalize_examples(v, expected):
    assert unit_normalize(vec(*v)) == vec(*expected)


def test_unit_normalize_rejects_zero():
    with pytest.raises(ValueError):
        unit_normalize(vec(0, 0, 0))


@given(gaussians(), gaussians(), gaussians())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert (a * b).norm() == a.norm() * b.norm()


def test_units_are_exactly_norm_one():
    small = [GaussianInt(a, b) for a in range(-3, 4) for b in range(-3, 4)]
    assert {z for z in small if z.norm() == 1} == set(UNITS)


@given(gaussians(), nonzero_gaussians())
def test_division_with_remainder(a, b):
    q, r = divmod(a, b)
    assert a == q * b + r
    assert 2 * r.norm() <= b.norm()  # nearest-rounding quotient


@given(gaussians(), gaussians(), gaussians())
def test_rational_field(a, b, c):
    if b.is_zero():
        return
    x = a / b
    assert x * b == GaussianRat.coerce(a)
    y = GaussianRat(Fraction(c.re, 7), Fraction(c.im, 3))
    if not y.is_zero():
        assert y * y.inverse() == GaussianRat(1, 0)
    # denominators stay reduced
    assert x.re.denominator > 0 and Fraction(x.re.numerator, x.re.denominator) == x.re


@given(gaussians(30), gaussians(30), gaussians(8))
def test_gcd_is_greatest(a, b, d):
    g = gcd(a, b)
    if g.is_zero():
        assert a.is_zero() and b.is_zero()
        return
    assert g.divides(a) and g.divides(b)
    if not d.is_zero() and d.divides(a) and d.divides(b):
        assert d.divides(g)
    # oracle: any common divisor scaled up is still a divisor of g
    if not (a * d).is_zero():
        assert (g * d).divides(gcd(a * d, b * d)) and gcd(a * d, b * d).divides(g * d)


@given(vectors())
def test_hermitian_value_is_real(v):
    assert q_form(v, v).im == 0


@given(vectors(6), vectors(6), words(5))
def test_q_invariant_under_group(u, v, w):
    g = eval_word(w)
    assert q_form(g.act(u), g.act(v)) == q_form(u, v)


@given(vectors(10))
def test_unit_orbits_have_size_four(v):
    if all(x.is_zero() for x in v):
        return
    orbit = {scale_vec(u, v) for u in UNITS}
    assert len(orbit) == 4
    assert {unit_normalize(x) for x in orbit} == {unit_normalize(v)}
    n = unit_normalize(v)
    assert unit_normalize(n) == n
    first = next(x for x in n if not x.is_zero())
    assert first.re > 0 and first.im >= 0


@given(vectors(10))
def test_gcd_vec_divides_entries(v):
    g = gcd_vec(v)
    if g.is_zero():
        return
    assert all(g.divides(x) for x in v)
    assert is_reduced(v) == g.is_unit()


@given(vectors())
def test_json_round_trip(v):
    assert vec_from_json(vec_to_json(v)) == v


def test_json_rejects_garbage():
    with pytest.raises(ValueError):
        vec_from_json([[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        vec_from_json([[1, 0], [0, 0], [0.5, 0]])
