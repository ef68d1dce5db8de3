import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from l2plan.errors import DegeneratePolynomial
from l2plan.roots import (Polynomial, polyval, quartic_reach_coefficients, quartic_reach_t1, reach_quartic,
                          real_roots, term_scale)


def from_roots(roots, lead=1.0):
    """Ascending coefficients of lead * prod(x - r)."""
    return list(np.poly(roots)[::-1] * lead)


@pytest.mark.parametrize("roots", [[1.0], [-2.0, 3.0], [0.5, -0.25, 4.0], [1, 2, 3, 4, 5, 6], [-1e-3, 1e-3, 7.0]])
def test_real_roots_recovers_simple_roots(roots):
    got = real_roots(from_roots(roots))
    assert np.allclose(got, sorted(roots), rtol=1e-9, atol=1e-12)


def test_complex_pairs_are_dropped():
    # (x^2 + 1)(x - 2)
    assert real_roots([-2.0, 1.0, -2.0, 1.0]) == pytest.approx([2.0])


def test_multiple_root_collapses_to_one_value():
    # (x - 2)^3 (x^2 + 1)
    c = np.polymul(np.poly([2.0, 2.0, 2.0]), [1.0, 0.0, 1.0])[::-1]
    got = real_roots(c)
    assert len(got) == 1 and got[0] == pytest.approx(2.0, abs=1e-12)


def test_trailing_zero_leading_coefficients_are_trimmed():
    assert real_roots([-1.0, 1.0, 0.0, 0.0]) == pytest.approx([1.0])


def test_all_zero_polynomial_raises():
    with pytest.raises(DegeneratePolynomial):
        real_roots([0.0, 0.0, 0.0])


def test_polynomial_wrapper():
    p = Polynomial((1.0, 0.0, -1.0))
    assert p(2.0) == -3.0
    with pytest.raises(ValueError):
        Polynomial(tuple(range(8)))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=1, max_size=6))
def test_every_returned_root_is_a_root(roots):
    c = from_roots(roots)
    for r in real_roots(c):
        assert abs(polyval(c, r)) <= 1e-7 * max(1.0, term_scale(c, r))


def test_reach_quartic_examples():
    # rest start two metres behind the goal: t^2/2 = 2
    assert quartic_reach_t1(-2.0, 0.0, 0.0) == pytest.approx(2.0, abs=1e-12)
    # half a metre behind, moving toward the goal at 0.5: 0.5 t + t^2/2 = 1/2 ... t = 1
    assert quartic_reach_t1(-1.0, 0.0, 0.5) == pytest.approx(1.0, abs=1e-12)
    assert quartic_reach_t1(0.0, 0.0, 0.3) == 0.0


def test_closed_form_matches_companion_matrix():
    rng = np.random.default_rng(0)
    for _ in range(500):
        px, py = rng.uniform(-3, 3, 2)
        vx = rng.uniform(0, 2)
        expected = min(r for r in real_roots(reach_quartic(px, py, vx)) if r >= 0)
        assert quartic_reach_t1(px, py, vx) == pytest.approx(expected, rel=1e-9, abs=1e-12)


def test_closed_form_real_roots_are_quartic_roots():
    # the closed form is only a starting point for polishing, so agreement is loose
    rng = np.random.default_rng(1)
    for _ in range(500):
        px, py = rng.uniform(-3, 3, 2)
        vx = rng.uniform(0, 2)
        co = quartic_reach_coefficients(px, py, vx)
        if co is None:
            continue
        exact = real_roots(reach_quartic(px, py, vx))
        for z in (co.c4 - co.c5, co.c4 + co.c5, -co.c4 + co.c3, -co.c4 - co.c3):
            if abs(z.imag) < 1e-6:
                assert min(abs(z.real - r) for r in exact) <= 1e-4 * max(1.0, abs(z.real))


def test_reach_quartic_has_a_nonnegative_root_everywhere():
    rng = np.random.default_rng(2)
    for _ in range(200):
        px, py = rng.uniform(-3, 3, 2)
        t = quartic_reach_t1(px, py, rng.uniform(0, 2))
        assert math.isfinite(t) and t >= 0.0
