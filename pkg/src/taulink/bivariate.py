"""Symmetric two-variable coefficient tables.

Three tables live here: Q (log of the h-reciprocal cross ratio), QB (the
double-factorial rescaling of Q's odd-odd part, built directly from the
exponentiated Stirling tail), and T (the quadratic-flow generating table).
Each comes with an independent second route used by the verification
suites; the tables themselves are dense within an inclusive total-degree
cutoff.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .core import double_factorial, format_rational, stirling_coefficients, saddle_coefficients
from .named import pde_flow_coefficients, series_eta1, series_h
from .series import WindowError


def _truncated_product(a: dict, b: dict, cutoff: int) -> dict:
    out: dict = {}
    for (i, j), ca in a.items():
        for (k, l), cb in b.items():
            if i + k + j + l > cutoff:
                continue
            key = (i + k, j + l)
            out[key] = out.get(key, Fraction(0)) + ca * cb
    return {k: v for k, v in out.items() if v != 0}


def _log_one_plus(m: dict, cutoff: int) -> dict:
    # log(1 + M) for M with no constant or linear part, truncated to total
    # degree <= cutoff.  M^k starts at degree 2k, so the sum is finite.
    acc: dict = {}
    power = {k: Fraction(v) for k, v in m.items()}
    k = 1
    while power:
        for key, v in power.items():
            c = Fraction((-1) ** (k - 1), k) * v
            acc[key] = acc.get(key, Fraction(0)) + c
        k += 1
        if 2 * k > cutoff:
            break
        power = _truncated_product(power, m, cutoff)
    return acc


class SymBivariate:
    """Symmetric table c_{ij}, stored dense for min_index <= i <= j and
    i + j <= cutoff (an inclusive bound)."""

    __slots__ = ("coeffs", "min_index", "cutoff")

    def __init__(self, raw: dict, min_index: int, cutoff: int):
        if min_index not in (0, 1):
            raise ValueError("min_index must be 0 or 1")
        table: dict = {}
        for i in range(min_index, cutoff + 1):
            for j in range(i, cutoff - i + 1):
                if j < min_index:
                    continue
                a = raw.get((i, j))
                b = raw.get((j, i))
                if a is not None and b is not None and i != j and a != b:
                    raise ArithmeticError(f"asymmetric entries at {(i, j)}: {a} vs {b}")
                v = a if a is not None else b
                table[(i, j)] = Fraction(v) if v is not None else Fraction(0)
        self.coeffs = table
        self.min_index = min_index
        self.cutoff = cutoff

    def entry(self, i: int, j: int) -> Fraction:
        if i > j:
            i, j = j, i
        if i + j > self.cutoff:
            raise WindowError(f"({i},{j}) beyond cutoff {self.cutoff}")
        if i < self.min_index:
            return Fraction(0)
        return self.coeffs[(i, j)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymBivariate):
            return NotImplemented
        return (self.coeffs == other.coeffs
                and self.min_index == other.min_index
                and self.cutoff == other.cutoff)

    def __hash__(self):
        return hash((frozenset(self.coeffs.items()), self.min_index, self.cutoff))

    def mismatches(self, other: "SymBivariate") -> list:
        """Entries differing on the shared triangle, as (i, j, mine, theirs)."""
        bound = min(self.cutoff, other.cutoff)
        lo = max(self.min_index, other.min_index)
        out = []
        for i in range(lo, bound + 1):
            for j in range(i, bound - i + 1):
                if j < lo:
                    continue
                a, b = self.entry(i, j), other.entry(i, j)
                if a != b:
                    out.append((i, j, a, b))
        return out

    def to_json_dict(self) -> dict:
        items = sorted(self.coeffs.items())
        return {
            "min_index": self.min_index,
            "cutoff": self.cutoff,
            "coeffs": [[i, j, format_rational(v)] for (i, j), v in items],
        }

    def text_lines(self) -> Iterable[str]:
        for (i, j), v in sorted(self.coeffs.items()):
            yield f"({i},{j}) {format_rational(v)}"


def _q_kernel(cutoff: int) -> dict:
    # M = sum_{i>=3} (-1)^i i b_i sum_{m=1}^{i-2} x^m y^{i-1-m}; every
    # monomial has both exponents >= 1 and total degree i-1 >= 2.
    b = saddle_coefficients(max(cutoff + 1, 1))
    m: dict = {}
    for i in range(3, cutoff + 2):
        c = (-1) ** i * i * b[i - 1]
        for mm in range(1, i - 1):
            key = (mm, i - 1 - mm)
            m[key] = m.get(key, Fraction(0)) + c
    return m


def series_Q(cutoff: int) -> SymBivariate:
    """log(1 + M) with M the explicit b-coefficient double sum."""
    if cutoff < 2:
        raise ValueError("cutoff must be >= 2")
    return SymBivariate(_log_one_plus(_q_kernel(cutoff), cutoff), 1, cutoff)


def series_Q_alt(cutoff: int) -> SymBivariate:
    """Same table through the reciprocal of h: the degree-s slice of the
    kernel is -(the z^{s-1} coefficient of 1/h) spread over x^i y^{s-i}.
    The z^{-1} coefficient of 1/h must be exactly 1."""
    if cutoff < 2:
        raise ValueError("cutoff must be >= 2")
    invh = series_h(cutoff + 1).inverse()
    if invh.coefficient(-1) != 1:
        raise ArithmeticError("1/h does not start at z^{-1} with coefficient 1")
    m: dict = {}
    for s in range(2, cutoff + 1):
        c = -invh.coefficient(s - 1)
        if c == 0:
            continue
        for i in range(1, s):
            m[(i, s - i)] = c
    return SymBivariate(_log_one_plus(m, cutoff), 1, cutoff)


def series_QB(cutoff: int) -> SymBivariate:
    """(1 - u(x)u(y))/(x + y) with u the exponentiated Stirling tail in a
    positive-power variable.  The numerator is expanded to total degree
    cutoff + 1 and divided slice by slice; every remainder must vanish
    (each slice of the numerator is divisible by x + y exactly)."""
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    C = stirling_coefficients(cutoff + 1)
    out: dict = {}
    for n in range(1, cutoff + 2):
        coef = [-C[i] * C[n - i] for i in range(0, n + 1)]
        carry = Fraction(0)
        slice_q = {}
        for i in range(n, 0, -1):
            carry = coef[i] - carry
            slice_q[(i - 1, n - i)] = carry
        remainder = coef[0] - carry
        if remainder != 0:
            raise ArithmeticError(f"degree-{n} slice not divisible by x+y "
                                  f"(remainder {remainder})")
        out.update(slice_q)
    return SymBivariate(out, 0, cutoff)


def series_T(cutoff: int) -> SymBivariate:
    """T = sum_{n>=3} (1/2) d_{-n+1} sum_{i=1}^{n-2} x^i y^{n-1-i}."""
    if cutoff < 2:
        raise ValueError("cutoff must be >= 2")
    d = pde_flow_coefficients(cutoff)
    out: dict = {}
    for n in range(3, cutoff + 2):
        half = d[n - 2] / 2
        for i in range(1, n - 1):
            out[(i, n - 1 - i)] = half
    return SymBivariate(out, 1, cutoff)


def t_closed_form_mismatches(cutoff: int) -> list:
    """Cross-multiplied closed form for T:

        x^2 (1+y)^2 log(1+y)/y - y^2 (1+x)^2 log(1+x)/x
            = (x - y) (xy T + x + y + (3/2) xy),

    compared coefficient-wise through total degree cutoff + 2 (the highest
    degree where the truncated T determines the right side)."""
    T = series_T(cutoff)
    bound = cutoff + 2

    def one_sided(xdeg_first: bool) -> dict:
        # x^2 (1+y)^2 log(1+y)/y, with log(1+y)/y = sum (-1)^k y^k/(k+1)
        out = {}
        for j2 in range(0, 3):
            binom = Fraction((1, 2, 1)[j2])
            for k in range(0, bound + 1):
                j = j2 + k
                if 2 + j > bound:
                    continue
                key = (2, j) if xdeg_first else (j, 2)
                out[key] = out.get(key, Fraction(0)) + binom * Fraction((-1) ** k, k + 1)
        return out

    lhs = one_sided(True)
    for key, v in one_sided(False).items():
        lhs[key] = lhs.get(key, Fraction(0)) - v

    inner = {(1, 0): Fraction(1), (0, 1): Fraction(1), (1, 1): Fraction(3, 2)}
    for (i, j), v in T.coeffs.items():
        inner[(i + 1, j + 1)] = inner.get((i + 1, j + 1), Fraction(0)) + v
        if i != j:
            inner[(j + 1, i + 1)] = inner.get((j + 1, i + 1), Fraction(0)) + v
    rhs = {}
    for (i, j), v in inner.items():
        for (dx, dy, s) in ((1, 0, 1), (0, 1, -1)):
            if i + dx + j + dy > bound:
                continue
            key = (i + dx, j + dy)
            rhs[key] = rhs.get(key, Fraction(0)) + s * v

    out = []
    for key in sorted(set(lhs) | set(rhs)):
        if sum(key) > bound:
            continue
        a = lhs.get(key, Fraction(0))
        b = rhs.get(key, Fraction(0))
        if a != b:
            out.append((key, a, b))
    return out


def check_double_factorial_link(max_sum: int) -> dict:
    """QB_{ij} = (2i+1)!! (2j+1)!! Q_{2i+1, 2j+1} for all i + j <= max_sum."""
    qb = series_QB(max_sum)
    q = series_Q(2 * max_sum + 2)
    checked = 0
    mismatches = []
    for i in range(0, max_sum + 1):
        for j in range(i, max_sum - i + 1):
            lhs = qb.entry(i, j)
            rhs = (double_factorial(2 * i + 1) * double_factorial(2 * j + 1)
                   * q.entry(2 * i + 1, 2 * j + 1))
            checked += 1
            if lhs != rhs:
                mismatches.append({"pair": [i, j],
                                   "table": format_rational(lhs),
                                   "rescaled": format_rational(rhs)})
    return {"checked": checked, "mismatches": mismatches}


def eta_pde_mismatches(order: int) -> list:
    """The scaled square-root family eta(u,z) = sum_i c_i u^{i-1} z^i
    (c from the one-variable branch) satisfies

        d/du eta = (sum_{n>=2} d_{-n+1} u^{n-2} z^n) d/dz eta.

    Both sides are complete polynomials in u for z-degree <= order;
    returns [( (u_exp, z_exp), lhs, rhs )] for differing coefficients."""
    eta = series_eta1(order)
    c = {i: eta.coefficient(i) for i in range(1, order + 1)}
    lhs = {}
    for i in range(2, order + 1):
        v = (i - 1) * c[i]
        if v != 0:
            lhs[(i - 2, i)] = v
    d = pde_flow_coefficients(max(order - 1, 1))
    rhs = {}
    for n in range(2, order + 1):
        for i in range(1, order + 1 - n + 1):
            if n + i - 1 > order:
                continue
            v = d[n - 2] * i * c[i]
            if v == 0:
                continue
            key = (n + i - 3, n + i - 1)
            rhs[key] = rhs.get(key, Fraction(0)) + v
    out = []
    for key in sorted(set(lhs) | set(rhs)):
        a = lhs.get(key, Fraction(0))
        b = rhs.get(key, Fraction(0))
        if a != b:
            out.append((key, a, b))
    return out
