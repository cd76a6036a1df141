"""The library's named series and derived coefficient families.

Two expansion habitats:

* at infinity (descending): f, psi, theta, theta-of-f, stirling.  Their
  ``order`` argument counts stored window coefficients (theta, being odd,
  counts odd slots: ``order`` nonzero positions).
* at zero (ascending): w, v, h, eta1.  Their ``order`` is the highest kept
  exponent.

Derived coefficient families: the lowering-derivation coefficients a_m
(from f), the composite ones e_m (from theta-of-f), the even-flow l_m
(from theta), and the quadratic-PDE velocity d_{-1}, d_{-2}, ...
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .core import SequenceTable, bernoulli_numbers, saddle_coefficients
from .derivation import (LOWERING, RAISING, DerivationCoeffs,
                         apply_exponential, solve_coefficients)
from .series import LaurentSeries


def series_w(order: int) -> LaurentSeries:
    """w(x) = 1 + sum (-1)^i b_i x^i, the alternating saddle branch."""
    b = saddle_coefficients(max(order, 1))
    coeffs = {0: Fraction(1)}
    for i in range(1, order + 1):
        coeffs[i] = (-1) ** i * b[i - 1]
    return LaurentSeries(coeffs, False, stop=order + 1)


def series_v(order: int) -> LaurentSeries:
    """v(x) = 1 + sum b_i x^i; satisfies v e^{1-v} = e^{-x^2/2}."""
    b = saddle_coefficients(max(order, 1))
    coeffs = {0: Fraction(1)}
    for i in range(1, order + 1):
        coeffs[i] = b[i - 1]
    return LaurentSeries(coeffs, False, stop=order + 1)


def series_h(order: int) -> LaurentSeries:
    """h = 1/w - 1, a power series of valuation 1."""
    return series_w(order).inverse() - 1


def series_eta1(order: int) -> LaurentSeries:
    """Square root of 2log(1+z) - 2 + 2/(1+z), normalized to lead +1.

    The radicand's z^n coefficient is 2(-1)^n (n-1)/n for n >= 2, so the
    root exists as a power series z + ...; it is the compositional inverse
    of h.
    """
    coeffs = {n: Fraction(2 * (-1) ** n * (n - 1), n) for n in range(2, order + 2)}
    radicand = LaurentSeries(coeffs, False, stop=order + 2)
    return radicand.root(2)


def _f_reciprocal_square(window: int) -> LaurentSeries:
    # (z/f)^2 = 1 - 2 sum_{n>=3} (-1)^{n-1} ((n-1)/n) z^{2-n}
    coeffs = {0: Fraction(1)}
    for n in range(3, window + 3):
        coeffs[2 - n] = Fraction(-2 * (-1) ** (n - 1) * (n - 1), n)
    return LaurentSeries(coeffs, True, stop=-window - 1)


def series_f(order: int) -> LaurentSeries:
    """The branch f = z(1 + 2/(3z) - ...) with (z/f)^2 the explicit
    alternating series; leading coefficient normalized to +1."""
    return _f_reciprocal_square(order).root(-2).shift(1).with_window(order, top=1)


def series_psi(order: int) -> LaurentSeries:
    """psi = sum_{i>=1} (-1)^{i-1} i b_i z^{2-i}, the compositional inverse
    of f at infinity."""
    b = saddle_coefficients(order)
    coeffs = {2 - i: (-1) ** (i - 1) * i * b[i - 1] for i in range(1, order + 1)}
    return LaurentSeries(coeffs, True, stop=1 - order)


def series_stirling(order: int) -> LaurentSeries:
    """exp of the log-Stirling tail sum_k B_2k/(2k(2k-1)) z^{1-2k}.

    Window: exponents 0 .. -order.  Its coefficients form an independent
    route to the C-sequence (generic exp here, convolution powers there).
    """
    B = bernoulli_numbers(order + 2)
    coeffs = {}
    k = 1
    while 2 * k - 1 <= order:
        coeffs[1 - 2 * k] = B[2 * k] / (2 * k * (2 * k - 1))
        k += 1
    tail = LaurentSeries(coeffs, True, stop=-order - 1)
    return tail.exp()


def theta_inverse_cube(window: int) -> LaurentSeries:
    """3 sum_{k>=0} b_{2k+1}/(2k+3) z^{-2k-3}: the defining series whose
    (-1/3) power is theta.  ``window`` consecutive exponents from -3 down."""
    kmax = (window - 1) // 2
    b = saddle_coefficients(2 * kmax + 1)
    coeffs = {}
    for k in range(0, kmax + 1):
        coeffs[-2 * k - 3] = 3 * b[2 * k] / (2 * k + 3)
    return LaurentSeries(coeffs, True, stop=-3 - window)


def _theta_window(window: int) -> LaurentSeries:
    return theta_inverse_cube(window).root(-3)


def series_theta(order: int) -> LaurentSeries:
    """theta = (3 sum b_{2k+1}/(2k+3) z^{-2k-3})^(-1/3), an odd series
    z - (1/180)z^{-1} + ...; ``order`` counts odd slots (window 2*order-1)."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return _theta_window(2 * order - 1)


@lru_cache(maxsize=None)
def _lowering_tuple(count: int) -> DerivationCoeffs:
    return solve_coefficients(series_f(count + 1), LOWERING)


def lowering_coefficients(count: int) -> DerivationCoeffs:
    """a_1..a_count: the unique lowering coefficients with exp(D) z = f.
    Wire key: ``a``."""
    return _lowering_tuple(count)


def series_theta_of_f(order: int) -> LaurentSeries:
    """theta composed with f, evaluated through the f-power basis:
    f^e = exp(D_a) z^e, summed against theta's coefficients.  Generic
    composition would choke on f's constant term; this route never forms
    the constant."""
    th = _theta_window(order)
    a = lowering_coefficients(max(order - 1, 1))
    acc = LaurentSeries.zero(True, stop=1 - order)
    for e, c in sorted(th.coeffs.items(), reverse=True):
        acc = acc + apply_exponential(a, e, e + order - 1) * c
    return acc


def composite_lowering_coefficients(count: int) -> DerivationCoeffs:
    """e_1..e_count: lowering coefficients with exp(D) z = theta(f(z)).
    Wire key: ``e``."""
    return solve_coefficients(series_theta_of_f(count + 1), LOWERING)


def stirling_flow_coefficients(count: int) -> list[Fraction]:
    """l_1..l_count: even-index lowering data with exp(D) z = theta,
    l_m = -a_{2m}; the odd-index coefficients vanish (theta is odd) and
    that is asserted.  Wire key: ``l``."""
    if count < 1:
        return []
    full = solve_coefficients(_theta_window(2 * count + 1), LOWERING)
    out = []
    for m in range(1, count + 1):
        odd = full.coeffs[2 * m - 2]  # a_{2m-1}
        if odd != 0:
            raise ArithmeticError(f"odd lowering coefficient a_{2*m-1} = {odd} != 0")
        out.append(-full.coeffs[2 * m - 1])  # a_{2m}
    return out


def pde_flow_coefficients(count: int) -> list[Fraction]:
    """d_{-1}, d_{-2}, ..., d_{-count}: d_{-n+1} = (-1)^{n-1} 4/((n+1)n(n-1)).
    Wire key: ``d``."""
    return [Fraction((-1) ** (n - 1) * 4, (n + 1) * n * (n - 1))
            for n in range(2, count + 2)]


def flow_derivative(s: LaurentSeries) -> LaurentSeries:
    """D(s) for D = (1+z)^2 z d/dz = (z + 2z^2 + z^3) d/dz."""
    mult = LaurentSeries({1: Fraction(1), 2: Fraction(2), 3: Fraction(1)},
                         s.descending)
    return mult * s.derivative()


def raising_reproduces_h(order: int) -> bool:
    """The raising exponential with the SAME a-coefficients gives h."""
    a = lowering_coefficients(order)
    raised = apply_exponential(DerivationCoeffs(RAISING, a.coeffs), 1, order)
    return raised == series_h(order)


# ---------------------------------------------------------------- registries

NAMED_SERIES = {
    "f": series_f,
    "h": series_h,
    "w": series_w,
    "v": series_v,
    "psi": series_psi,
    "eta1": series_eta1,
    "theta": series_theta,
    "theta-of-f": series_theta_of_f,
    "stirling": series_stirling,
}


def coefficient_table(name: str, count: int) -> SequenceTable:
    """Sequence families by wire key: a, e, b, C, l, d."""
    from .core import stirling_coefficients
    if name == "a":
        vals = lowering_coefficients(count).coeffs
        return SequenceTable("a", 1, tuple(vals))
    if name == "e":
        vals = composite_lowering_coefficients(count).coeffs
        return SequenceTable("e", 1, tuple(vals))
    if name == "b":
        return SequenceTable("b", 1, tuple(saddle_coefficients(count)))
    if name == "C":
        return SequenceTable("C", 0, tuple(stirling_coefficients(count - 1)))
    if name == "l":
        return SequenceTable("l", 1, tuple(stirling_flow_coefficients(count)))
    if name == "d":
        return SequenceTable("d", -1, tuple(pde_flow_coefficients(count)))
    raise KeyError(name)
