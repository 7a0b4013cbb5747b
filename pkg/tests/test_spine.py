"""Exhaustion functions, point reduction, first contacts and spine bounds."""
import math
import random

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import words
from picard.configurations import E1, REPRESENTATIVES, STRONGLY_ADMISSIBLE, ConfigClass
from picard.gaussian import vec
from picard.group import eval_word
from picard.spine import (
    FIRST_CONTACTS,
    TIE_TOL,
    Point,
    act,
    admissibility_report,
    e_surface_y2,
    f_exhaustion,
    first_contact_constant,
    first_contact_pair,
    generator_action,
    max_parabolic,
    reduce_point,
    refine_first_contact,
    sample_cell_values,
    verify_strong_admissibility,
)

C = ConfigClass
points = st.builds(
    Point,
    st.floats(0.2, 3.0),
    st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False),
    st.floats(-3.0, 3.0),
)


def in_square(b: complex) -> bool:
    return abs(b.real) + abs(b.imag - 0.5) <= 0.5 + 1e-9


def test_point_requires_positive_height():
    with pytest.raises(ValueError):
        Point(0.0, 0j, 0.0)


@given(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)))
def test_f_at_base_point(t):
    if t == (0, 0, 0):
        return
    v = vec(*t)
    assert math.isclose(f_exhaustion(v, Point(1, 0, 0)), 1 / math.sqrt(sum(x * x for x in t)), rel_tol=1e-12)


@given(points)
def test_f0_is_height(z):
    assert math.isclose(f_exhaustion(E1, z), z.y, rel_tol=1e-12)


def test_f_example():
    assert abs(f_exhaustion(vec(0, 0, 1), Point(2 ** -0.5, 1j, 0)) - 2 ** -0.5) < 1e-12


def test_generator_examples():
    assert generator_action("t", Point(1, 0, 0)).close_to(Point(1, 0, 1))
    assert generator_action("e", Point(1, 1j, 0.3)).close_to(Point(1, 1, 0.3))
    assert generator_action("s", Point(1, 0, 0)).close_to(Point(1, 1 + 1j, 0))


@given(points, st.sampled_from(["s", "sc", "t", "e"]), st.integers(-3, 3))
def test_closed_forms_agree_with_matrix_action(z, name, k):
    a = generator_action(name, z, k)
    b = act(eval_word(f"{name}^{k}") if k else eval_word("1"), z)
    assert a.close_to(b, 1e-8)


@given(points, words(5))
@settings(max_examples=60)
def test_equivariance(z, w):
    g = eval_word(w)
    gz = act(g, z)
    for v in REPRESENTATIVES[C.J3_3].vectors:
        assert math.isclose(f_exhaustion(g.act(v), gz), f_exhaustion(v, z), rel_tol=1e-9)


def test_reduce_point_examples():
    word, z = reduce_point(Point(1, 0, 0))
    assert str(word) == "1" and z.close_to(Point(1, 0, 0))
    word, z = reduce_point(Point(1, 0, 7.3))
    assert str(word) == "t^-7" and z.close_to(Point(1, 0, 0.3), 1e-12)


@given(st.floats(0.1, 3), st.floats(-50, 50), st.complex_numbers(max_magnitude=40, allow_nan=False, allow_infinity=False))
def test_reduce_point_properties(y, r, b):
    z0 = Point(y, b, r)
    word, z = reduce_point(z0)
    assert z.y == z0.y
    assert -0.5 < z.r <= 0.5 + 1e-12
    assert in_square(z.beta)
    assert act(eval_word(word), z0).close_to(z, 1e-6 * (1 + abs(b) ** 2 + abs(r)))
    _, again = reduce_point(z)
    assert again.close_to(z, 1e-9)
    for v in REPRESENTATIVES[C.J2_2].vectors:
        g = eval_word(word)
        assert math.isclose(f_exhaustion(g.act(v), z), f_exhaustion(v, z0), rel_tol=1e-6)


def test_reduce_example_2_plus_2i():
    rng = random.Random(5)
    for _ in range(20):
        _, z = reduce_point(Point(rng.uniform(0.1, 2), 2 + 2j, rng.uniform(-5, 5)))
        assert in_square(z.beta)


@given(st.complex_numbers(max_magnitude=1, allow_nan=False, allow_infinity=False), st.floats(-0.99, 0.99))
def test_surface_of_e3(b, r):
    y2 = e_surface_y2(vec(0, 0, 1), b, r)
    want = -abs(b) ** 2 / 2 + math.sqrt(1 - r * r)
    assert (y2 is None and want <= 0) or math.isclose(y2, want, abs_tol=1e-12)


@given(st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False), st.floats(-1, 1))
def test_surface_of_i22(b, r):
    y2 = e_surface_y2(vec(1j, 2, 2), b, r)
    rad = 1 - 4 * (b.real + r) ** 2
    want = -abs(b - 1j) ** 2 / 2 + 0.5 * math.sqrt(rad) if rad >= 0 else None
    if want is None or want <= 0:
        assert y2 is None
    else:
        assert math.isclose(y2, want, abs_tol=1e-12)


def test_surface_of_102():
    assert math.isclose(e_surface_y2(vec(1, 0, 2), 0j, 0.5), 0.5)
    assert math.isclose(e_surface_y2(vec(1, 0, 2), 0j, 0.3), math.sqrt(0.3 - 0.09))


def test_surface_rejects_p0():
    with pytest.raises(ValueError):
        e_surface_y2(E1, 0j, 0)


@given(st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False), st.floats(-1, 1))
def test_surface_is_equal_value_locus(b, r):
    for v in (vec(0, 0, 1), vec(1j, 1 + 1j, 1 + 1j), vec(1, 0, 2)):
        y2 = e_surface_y2(v, b, r)
        if y2 is not None:
            z = Point(math.sqrt(y2), b, r)
            assert math.isclose(f_exhaustion(v, z), z.y, rel_tol=1e-9)


@pytest.mark.parametrize(
    "v,point,value",
    [
        ((0, 0, 1), Point(1, 0, 0), 1.0),
        ((1j, 1 + 1j, 1 + 1j), Point(2 ** -0.25, 1j, 0.5), 2 ** -0.25),
        ((1j, 2, 2), Point(2 ** -0.5, 1j, 0), 2 ** -0.5),
    ],
)
def test_first_contact_examples(v, point, value):
    fc = first_contact_pair(E1, vec(*v))
    assert fc.point.close_to(point, 1e-12)
    assert math.isclose(fc.value, value)


@given(words(6))
@settings(max_examples=40)
def test_first_contact_properties(w):
    v = eval_word(w).act(vec(0, 0, 1))
    if v[2].is_zero():
        return
    fc = first_contact_pair(E1, v)
    z = fc.point
    assert math.isclose(f_exhaustion(E1, z), f_exhaustion(v, z), rel_tol=1e-9)
    assert math.isclose(z.y, fc.value, rel_tol=1e-9)
    assert math.isclose(e_surface_y2(v, z.beta, z.r), z.y ** 2, rel_tol=1e-9)


def test_first_contact_general_pair():
    u, v = vec(1j, 1 + 1j, 1 + 1j), vec(1 + 1j, 1 + 1j, 1)
    fc = first_contact_pair(u, v)
    assert math.isclose(f_exhaustion(u, fc.point), fc.value, rel_tol=1e-9)
    assert math.isclose(f_exhaustion(v, fc.point), fc.value, rel_tol=1e-9)


def test_first_contact_rejects_same_line():
    with pytest.raises(ValueError):
        first_contact_pair(E1, vec(1j, 0, 0))


def test_max_parabolic_examples():
    assert max_parabolic(Point(1, 0, 0), 1).vectors() == {E1, vec(0, 0, 1)}
    found = max_parabolic(Point(2 ** -0.5, 1j, 0), 2 ** -0.5)
    assert found.vectors() == REPRESENTATIVES[C.J8].key
    assert found.bounds["q_norm_sq_max"] > 0


def _brute_force(z: Point, floor: float) -> set:
    """Vectorised scan of a box that contains the search region for the sampled ranges."""
    from picard.gaussian import GaussianInt, is_reduced, unit_normalize

    rq, rp, rn = 3, 5, 11
    q = np.array([complex(a, b) for a in range(-rq, rq + 1) for b in range(-rq, rq + 1)])
    p = np.array([complex(a, b) for a in range(-rp, rp + 1) for b in range(-rp, rp + 1)])
    n = np.array([complex(a, b) for a in range(-rn, rn + 1) for b in range(-rn, rn + 1)])
    Q, P, N = np.meshgrid(q, p, n, indexing="ij")
    # exact on the integer grid: |p|^2 = 2 Im(n conj q)
    iso = P.real ** 2 + P.imag ** 2 == 2 * (N.imag * Q.real - N.real * Q.imag)
    nonzero = (np.abs(Q) + np.abs(P) + np.abs(N)) > 0
    Q, P, N = Q[iso & nonzero], P[iso & nonzero], N[iso & nonzero]
    b, y, r = z.beta, z.y, z.r
    a = N - b * P + (1j * abs(b) ** 2 / 2 - r) * Q
    bb = P - 1j * np.conj(b) * Q
    f = y / np.sqrt(np.abs(a) ** 2 + y * y * np.abs(bb) ** 2 + y ** 4 * np.abs(Q) ** 2)
    keep = f >= floor - TIE_TOL
    out = set()
    for nn, pp, qq in zip(N[keep], P[keep], Q[keep]):
        v = tuple(GaussianInt(int(x.real), int(x.imag)) for x in (nn, pp, qq))
        if is_reduced(v):
            out.add(unit_normalize(v))
    return out


@given(
    st.builds(
        Point,
        st.floats(0.7, 1.5),
        st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False),
        st.floats(-1.0, 1.0),
    ),
    st.floats(0.6, 1.0),
)
@settings(max_examples=25)
def test_max_parabolic_against_brute_force(z, floor):
    # |q|^2 <= 1/(y floor)^2 < 5.7, |p| <= 1/floor + |beta||q| < 4.1 and
    # |n| <= y/floor + |beta||p| + (|beta|^2/2 + |r|)|q| < 10.3 fit in the box
    assert max_parabolic(z, floor).vectors() == _brute_force(z, floor)


def test_constants_are_precise():
    for tag, (y, b, r) in FIRST_CONTACTS.items():
        assert isinstance(y, mpmath.mpf)
        with mpmath.workdps(40):
            assert y > 0


@pytest.mark.parametrize("tag", list(STRONGLY_ADMISSIBLE))
def test_constants_are_first_contacts(tag):
    z = first_contact_constant(tag)
    values = [f_exhaustion(v, z) for v in REPRESENTATIVES[tag].vectors]
    assert max(values) - min(values) < 1e-12
    refined = refine_first_contact(tag)
    assert refined.close_to(z, 1e-7)


@pytest.mark.parametrize("tag", list(STRONGLY_ADMISSIBLE))
def test_strong_admissibility(tag):
    assert verify_strong_admissibility(tag)
    rep = admissibility_report(tag)
    assert rep.best_outside < rep.value - 1e-6


def test_sampled_spine_values():
    lower = 5 ** -0.25
    for tag, seed in ((C.J2_1, 1), (C.J2_2, 2)):
        samples = sample_cell_values(tag, 120, random.Random(seed))
        assert len(samples) == 120
        for z, value in samples:
            assert lower < value <= 1 + TIE_TOL
            assert 2 ** -0.5 - TIE_TOL <= value
            assert not [f for _, f in max_parabolic(z, 1.01)]
