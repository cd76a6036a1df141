"""Exponentials of degree-shifting derivations on one variable.

A lowering derivation is D = sum_{k>=1} a_k z^{1-k} d/dz (each application
drops the exponent by at least... by k-1 for the k-th summand, and by 0 for
k=1 with a scale); a raising derivation uses z^{1+k}.  Applying exp(D) to
z^n produces a Laurent window below (lowering) or above (raising) n.

Two independent evaluation routes are provided on purpose:

* ``apply_exponential``: a closed nested-sum recursion, coefficient by
  coefficient (fast, the production route);
* ``apply_exponential_iterated``: literal Taylor summation of operator
  powers acting on series objects (slow, the cross-check route).

Verification suites require the two to agree and never collapse them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .series import LaurentSeries, WindowError

LOWERING = "lowering"
RAISING = "raising"


@dataclass(frozen=True)
class DerivationCoeffs:
    """Coefficient list (a_1, a_2, ...) of a degree-shifting derivation.

    kind = "lowering": D = sum_k a_k z^(1-k) d/dz   (shifts exponents down)
    kind = "raising":  D = sum_k a_k z^(1+k) d/dz   (shifts exponents up)
    """

    kind: str
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.kind not in (LOWERING, RAISING):
            raise ValueError(f"unknown derivation kind {self.kind!r}")
        object.__setattr__(self, "coeffs",
                           tuple(Fraction(c) for c in self.coeffs))

    def __len__(self) -> int:
        return len(self.coeffs)

    def truncate(self, count: int) -> "DerivationCoeffs":
        if count > len(self.coeffs):
            raise ValueError("cannot extend a coefficient list by truncation")
        return DerivationCoeffs(self.kind, self.coeffs[:count])


def apply_exponential(d: DerivationCoeffs, n: int, order: int) -> LaurentSeries:
    """exp(D) z^n as a Laurent window of ``order`` coefficients.

    Lowering: expansion at infinity with top exponent n; raising: expansion
    at zero with bottom exponent n.  Requires len(d) >= order - 1 (the
    omitted a_k first touch the window one slot past it).

    Recursion: with A(s) the coefficient at shift s and G_m the m-fold
    operator contribution,

        G_0 = delta_{s,0},
        G_m(s) = (1/m) sum_k G_{m-1}(s-k) * (n -/+ (s-k)) * a_k,
        A(s)  = sum_m G_m(s),

    where the factor uses the exponent reached before the last application.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if len(d) < order - 1:
        raise WindowError(
            f"need at least {order - 1} derivation coefficients for a window "
            f"of {order}, have {len(d)}")
    sign = -1 if d.kind == LOWERING else 1
    a = d.coeffs
    A = [Fraction(0)] * order
    A[0] = Fraction(1)
    g_prev = [Fraction(0)] * order
    g_prev[0] = Fraction(1)
    m = 0
    while any(g_prev):
        m += 1
        g = [Fraction(0)] * order
        for s in range(1, order):
            acc = Fraction(0)
            for k in range(1, min(s, len(a)) + 1):
                ak = a[k - 1]
                prev = g_prev[s - k]
                if ak and prev:
                    acc += prev * (n + sign * (s - k)) * ak
            if acc:
                g[s] = acc / m
        for s in range(1, order):
            A[s] += g[s]
        g_prev = g
        if m > order + 1:
            break
    if d.kind == LOWERING:
        return LaurentSeries.from_tail(n, A, descending=True)
    return LaurentSeries.from_tail(n, A, descending=False)


def derivation_image(d: DerivationCoeffs, s: LaurentSeries) -> LaurentSeries:
    """D(s) for the derivation D encoded by ``d``, window-honest.

    The coefficients a_k for k > len(d) are unknown, so the result's window
    is capped accordingly: the first omitted summand shifts the dominant
    exponent of ``s`` by len(d) (plus one more for the z^(1 -/+ k) factor
    acting after d/dz).
    """
    sign = -1 if d.kind == LOWERING else 1
    ds = s.derivative()
    acc = LaurentSeries.zero(s.descending)
    for k, ak in enumerate(d.coeffs, start=1):
        if ak:
            acc = acc + ds.shift(1 + sign * k) * ak
    edge = s._edge_bound()
    if edge is not None:
        cap = edge + sign * (len(d.coeffs) + 1)
        acc = acc + LaurentSeries.zero(s.descending, stop=cap)
    return acc


def apply_exponential_iterated(d: DerivationCoeffs, n: int, order: int) -> LaurentSeries:
    """exp(D) z^n by summing operator powers D^m(z^n)/m! on series objects.

    Independent of ``apply_exponential``; used by cross-checks.
    """
    descending = d.kind == LOWERING
    base = LaurentSeries.monomial(n, 1, descending=descending)
    out = base + LaurentSeries.zero(descending,
                                    stop=n - order if descending else n + order)
    term = base
    m = 0
    while True:
        m += 1
        term = derivation_image(d, term) * Fraction(1, m)
        edge = term._edge_bound()
        if edge is None:
            break
        dead = (edge <= out.stop) if descending else (edge >= out.stop)
        if term.coeffs:
            out = out + term
        if dead:
            break
    return out.truncated(n - order if descending else n + order)


def solve_coefficients(target: LaurentSeries, kind: str,
                       count: int | None = None) -> DerivationCoeffs:
    """Recover (a_1, ..., a_count) from exp(D) z^n = target.

    ``target`` must be a window with dominant exponent n and dominant
    coefficient 1, n != 0.  The a_s enter A(s) linearly with coefficient n
    at order s, so the system is triangular.
    """
    n = target._edge_bound()
    if n is None or target.coeffs.get(n) != 1:
        raise ValueError("target must have dominant coefficient 1")
    if n == 0:
        raise ValueError("dominant exponent 0 leaves coefficients undetermined")
    if (kind == LOWERING) != target.descending:
        raise ValueError("target expansion side does not match derivation kind")
    sign = -1 if kind == LOWERING else 1
    if count is None:
        if target.stop is None:
            raise WindowError("unbounded target; pass count explicitly")
        count = abs(target.stop - n) - 1
    coeffs: list[Fraction] = []
    for s in range(1, count + 1):
        trial = DerivationCoeffs(kind, tuple(coeffs) + (Fraction(0),))
        approx = apply_exponential(trial, n, s + 1)
        want = target.coefficient(n + sign * s)
        got = approx.coefficient(n + sign * s)
        coeffs.append((want - got) / n)
    return DerivationCoeffs(kind, tuple(coeffs))
