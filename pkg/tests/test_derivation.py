"""Degree-shifting derivation exponentials: dual routes, solve, uniqueness."""

import random
from fractions import Fraction

import pytest

from taulink.derivation import (LOWERING, RAISING, DerivationCoeffs,
                                apply_exponential, apply_exponential_iterated,
                                derivation_image, solve_coefficients)
from taulink.named import lowering_coefficients, series_f, series_h
from taulink.series import LaurentSeries

F = Fraction


def test_kind_validated():
    with pytest.raises(ValueError):
        DerivationCoeffs("sideways", (F(1),))


def test_single_raising_term_is_mobius_flow():
    # exp(a z^2 d/dz) z = z / (1 - a z) = sum a^(i-1) z^i; the padding
    # zeros are load-bearing: omitted coefficients are unknown, not zero
    a = F(2, 5)
    d = DerivationCoeffs(RAISING, (a,) + (F(0),) * 6)
    got = apply_exponential(d, 1, 8)
    for i in range(1, 9):
        assert got.coefficient(i) == a ** (i - 1)


def test_window_capped_by_known_coefficients():
    from taulink.series import WindowError
    with pytest.raises(WindowError):
        apply_exponential(DerivationCoeffs(RAISING, (F(1),)), 1, 8)


def test_lowering_scale_term():
    # exp(a1 z d/dz) z^n = e^(a1 n) z^n is transcendental unless a1 = 0;
    # with a1 = 0 the exponential fixes z^n through the whole window
    d = DerivationCoeffs(LOWERING, (F(0), F(0), F(0)))
    got = apply_exponential(d, 2, 4)
    assert got.coefficient(2) == 1
    assert all(got.coefficient(2 - s) == 0 for s in range(1, 4))


def test_routes_agree_on_random_coeffs():
    rng = random.Random(7)
    for kind in (LOWERING, RAISING):
        for n in (1, 2, -3) if kind == LOWERING else (1, 3):
            coeffs = tuple(F(rng.randint(-3, 3), rng.randint(1, 4))
                           for _ in range(6))
            d = DerivationCoeffs(kind, coeffs)
            fast = apply_exponential(d, n, 7)
            slow = apply_exponential_iterated(d, n, 7)
            assert fast.mismatches_on_overlap(slow) == []


def test_derivation_image_window_capped():
    d = DerivationCoeffs(LOWERING, (F(1), F(1)))
    s = LaurentSeries({1: F(1)}, True)  # exact z
    img = derivation_image(d, s)
    # a_3 z^-2 d/dz would land at z^-2; with len(d)=2 that slot is unknown
    assert img.stop == -2
    assert img.coefficient(1) == 0
    assert img.coefficient(0) == 1
    assert img.coefficient(-1) == 1


def test_solve_round_trip_random():
    rng = random.Random(11)
    for kind in (LOWERING, RAISING):
        coeffs = tuple(F(rng.randint(-2, 2), rng.randint(1, 3))
                       for _ in range(5))
        d = DerivationCoeffs(kind, coeffs)
        target = apply_exponential(d, 1, 6)
        got = solve_coefficients(target, kind)
        assert got.coeffs == coeffs


def test_solve_infers_count_from_window():
    d = DerivationCoeffs(RAISING, (F(1), F(1, 2), F(-1, 3)))
    target = apply_exponential(d, 1, 4)
    assert solve_coefficients(target, RAISING).coeffs == d.coeffs


def test_solve_uniqueness_perturbation():
    # perturbing a_k changes exp(D) z at order k, so the solved list moves
    base = DerivationCoeffs(LOWERING, (F(1, 3), F(-1, 4), F(1, 5)))
    target = apply_exponential(base, 1, 4)
    for k in (1, 2):
        bumped = list(base.coeffs)
        bumped[k - 1] += F(1, 7)
        other = apply_exponential(DerivationCoeffs(LOWERING, tuple(bumped)),
                                  1, 4)
        assert target.mismatches_on_overlap(other) != []
        got = solve_coefficients(other, LOWERING)
        assert got.coeffs == tuple(bumped)


def test_solve_validates_target_shape():
    with pytest.raises(ValueError):
        solve_coefficients(LaurentSeries({1: F(2)}, True, -3), LOWERING)
    with pytest.raises(ValueError):
        solve_coefficients(LaurentSeries({0: F(1)}, True, -3), LOWERING)
    with pytest.raises(ValueError):
        solve_coefficients(LaurentSeries({1: F(1)}, False, 4), LOWERING)


def test_truncate_shrinks_only():
    d = DerivationCoeffs(RAISING, (F(1), F(2)))
    assert d.truncate(1).coeffs == (F(1),)
    with pytest.raises(ValueError):
        d.truncate(3)


def test_raising_with_lowering_coefficients_gives_h():
    # the same coefficient list drives both directions: lowering maps
    # z -> f-window, raising maps z -> h-window
    K = 9
    a = lowering_coefficients(K)
    low = apply_exponential(DerivationCoeffs(LOWERING, a.coeffs), 1, K)
    assert low.mismatches_on_overlap(series_f(K)) == []
    high = apply_exponential(DerivationCoeffs(RAISING, a.coeffs), 1, K)
    assert high.mismatches_on_overlap(series_h(K)) == []
