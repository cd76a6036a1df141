"""Truncated Laurent series with honest windows.

A series is an expansion either at infinity (exponents descend from a top)
or at zero (exponents ascend from a valuation).  Each object tracks a
``stop`` marker: the first exponent, in the direction of expansion, whose
coefficient is NOT known.  Beyond the window a coefficient is unknown, not
zero; on the other side of the stored support it is known to be zero.

    descending (at infinity): known exactly for e > stop, unknown for e <= stop
    ascending  (at zero):     known exactly for e < stop, unknown for e >= stop

``stop = None`` means the series is exact.  Every operation propagates the
stop marker so that no coefficient is ever reported outside the region the
inputs actually determine.  Asking for an unknown coefficient raises
``WindowError`` instead of silently returning 0.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .core import format_rational


class WindowError(ValueError):
    """Requested data lies outside a series' known window."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"exact coefficient expected, got {type(x).__name__}")


class LaurentSeries:
    __slots__ = ("coeffs", "descending", "stop")

    def __init__(self, coeffs: Mapping[int, Fraction], descending: bool,
                 stop: int | None = None):
        clean: dict[int, Fraction] = {}
        for e, c in coeffs.items():
            c = _as_fraction(c)
            if c == 0:
                continue
            if stop is not None:
                if descending and e <= stop:
                    raise WindowError(f"coefficient at {e} lies in unknown region (stop={stop})")
                if not descending and e >= stop:
                    raise WindowError(f"coefficient at {e} lies in unknown region (stop={stop})")
            clean[int(e)] = c
        self.coeffs = clean
        self.descending = bool(descending)
        self.stop = stop

    # ------------------------------------------------------------------ basics

    @classmethod
    def zero(cls, descending: bool, stop: int | None = None) -> "LaurentSeries":
        return cls({}, descending, stop)

    @classmethod
    def one(cls, descending: bool) -> "LaurentSeries":
        return cls({0: Fraction(1)}, descending)

    @classmethod
    def monomial(cls, exponent: int, coeff=1, *, descending: bool,
                 stop: int | None = None) -> "LaurentSeries":
        return cls({exponent: _as_fraction(coeff)}, descending, stop)

    @classmethod
    def from_tail(cls, lead_exp: int, tail: Iterable, descending: bool) -> "LaurentSeries":
        """Dense window: tail[i] is the coefficient at lead_exp -/+ i."""
        tail = [_as_fraction(c) for c in tail]
        step = -1 if descending else 1
        coeffs = {lead_exp + step * i: c for i, c in enumerate(tail) if c != 0}
        stop = lead_exp + step * len(tail)
        return cls(coeffs, descending, stop)

    @property
    def is_exact(self) -> bool:
        return self.stop is None

    def is_known_zero(self) -> bool:
        """True when the series is exactly zero (not merely zero-on-window)."""
        return not self.coeffs and self.stop is None

    def _edge_bound(self) -> int | None:
        """Extreme exponent that could carry a nonzero coefficient.

        Descending: the highest such exponent; ascending: the lowest.
        None means the series is exactly zero.
        """
        if self.coeffs:
            return max(self.coeffs) if self.descending else min(self.coeffs)
        return self.stop

    def coefficient(self, e: int) -> Fraction:
        if self.stop is not None:
            unknown = e <= self.stop if self.descending else e >= self.stop
            if unknown:
                raise WindowError(f"coefficient at {e} unknown (stop={self.stop})")
        return self.coeffs.get(e, Fraction(0))

    def known_window(self) -> tuple[int, int]:
        """(lo, hi) inclusive exponent range serialized as the dense window."""
        if self.descending:
            hi = max(self.coeffs) if self.coeffs else (self.stop + 1 if self.stop is not None else 0)
            lo = self.stop + 1 if self.stop is not None else (min(self.coeffs) if self.coeffs else hi)
        else:
            lo = min(self.coeffs) if self.coeffs else (self.stop - 1 if self.stop is not None else 0)
            hi = self.stop - 1 if self.stop is not None else (max(self.coeffs) if self.coeffs else lo)
        return lo, hi

    # -------------------------------------------------------------- structure

    def _require_same_side(self, other: "LaurentSeries") -> None:
        if self.descending != other.descending:
            raise ValueError("cannot combine expansions at zero and at infinity")

    def _merge_stop(self, s1: int | None, s2: int | None) -> int | None:
        if s1 is None:
            return s2
        if s2 is None:
            return s1
        return max(s1, s2) if self.descending else min(s1, s2)

    def _rebuild(self, coeffs: dict[int, Fraction], stop: int | None) -> "LaurentSeries":
        if stop is not None:
            if self.descending:
                coeffs = {e: c for e, c in coeffs.items() if e > stop}
            else:
                coeffs = {e: c for e, c in coeffs.items() if e < stop}
        return LaurentSeries(coeffs, self.descending, stop)

    # ------------------------------------------------------------- arithmetic

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries({e: -c for e, c in self.coeffs.items()}, self.descending, self.stop)

    def __add__(self, other) -> "LaurentSeries":
        if isinstance(other, (int, Fraction)):
            other = LaurentSeries({0: _as_fraction(other)}, self.descending)
        self._require_same_side(other)
        stop = self._merge_stop(self.stop, other.stop)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return self._rebuild(out, stop)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentSeries":
        if isinstance(other, (int, Fraction)):
            other = LaurentSeries({0: _as_fraction(other)}, self.descending)
        return self.__add__(-other)

    def __rsub__(self, other) -> "LaurentSeries":
        return (-self).__add__(other)

    def __mul__(self, other) -> "LaurentSeries":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if c == 0:
                # scalar zero wipes unknowns too
                return LaurentSeries.zero(self.descending)
            return LaurentSeries({e: v * c for e, v in self.coeffs.items()},
                                 self.descending, self.stop)
        self._require_same_side(other)
        if self.is_known_zero() or other.is_known_zero():
            return LaurentSeries.zero(self.descending)
        cand = []
        eb_s, eb_o = self._edge_bound(), other._edge_bound()
        if self.stop is not None and eb_o is not None:
            cand.append(self.stop + eb_o)
        if other.stop is not None and eb_s is not None:
            cand.append(other.stop + eb_s)
        if cand:
            stop = max(cand) if self.descending else min(cand)
        else:
            stop = None
        out: dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if stop is not None:
                    if self.descending and e <= stop:
                        continue
                    if not self.descending and e >= stop:
                        continue
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentSeries(out, self.descending, stop)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LaurentSeries":
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / _as_fraction(other))
        if isinstance(other, LaurentSeries):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, n: int) -> "LaurentSeries":
        if not isinstance(n, int):
            raise TypeError("integer power expected")
        if n < 0:
            return self.inverse() ** (-n)
        out = LaurentSeries.one(self.descending)
        base = self
        k = n
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.descending == other.descending and self.stop == other.stop
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.descending, self.stop, tuple(sorted(self.coeffs.items()))))

    # ------------------------------------------------------------ reshaping

    def truncated(self, stop: int) -> "LaurentSeries":
        """Tighten the window so the first unknown exponent is ``stop``."""
        new = self._merge_stop(self.stop, stop)
        return self._rebuild(dict(self.coeffs), new)

    def with_window(self, count: int, top: int | None = None) -> "LaurentSeries":
        """Descending: keep ``count`` consecutive exponents from ``top`` down."""
        if not self.descending:
            raise ValueError("with_window applies to expansions at infinity")
        if top is None:
            top = self._edge_bound()
            if top is None:
                raise WindowError("cannot infer top of zero series")
        return self.truncated(top - count)

    def with_order(self, order: int) -> "LaurentSeries":
        """Ascending: keep exponents <= order."""
        if self.descending:
            raise ValueError("with_order applies to expansions at zero")
        return self.truncated(order + 1)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by z**k (exact reindexing)."""
        stop = None if self.stop is None else self.stop + k
        return LaurentSeries({e + k: c for e, c in self.coeffs.items()},
                             self.descending, stop)

    def derivative(self) -> "LaurentSeries":
        coeffs = {e - 1: c * e for e, c in self.coeffs.items() if e != 0}
        stop = None if self.stop is None else self.stop - 1
        return LaurentSeries(coeffs, self.descending, stop)

    def plus_part(self) -> "LaurentSeries":
        """Exact polynomial part: coefficients at exponents >= 1.

        Requires the window to cover every positive exponent.
        """
        if not self.descending:
            raise ValueError("plus_part applies to expansions at infinity")
        if self.stop is not None and self.stop > 0:
            raise WindowError(f"window stops at {self.stop}, positive exponents unknown")
        return LaurentSeries({e: c for e, c in self.coeffs.items() if e >= 1},
                             self.descending, None)

    # ------------------------------------------------------- analytic kernels

    def _tail_window(self, op: str) -> int:
        if self.stop is None:
            raise WindowError(f"{op} of an exact series is an infinite expansion; "
                              "truncate first (use .truncated/.with_window)")
        edge = self._edge_bound()
        return (edge - self.stop) if self.descending else (self.stop - edge)

    def inverse(self) -> "LaurentSeries":
        """Multiplicative inverse, window-for-window.

        The dominant coefficient (top for descending, valuation for ascending)
        must be stored and nonzero.  A lone exact monomial inverts exactly.
        """
        e0 = self._edge_bound()
        if e0 is None or e0 not in self.coeffs:
            raise WindowError("inverse needs a known nonzero dominant coefficient")
        c0 = self.coeffs[e0]
        if self.stop is None:
            if len(self.coeffs) == 1:
                return LaurentSeries({-e0: 1 / c0}, self.descending)
            raise WindowError("inverse of an exact multi-term series is infinite; truncate first")
        k = self._tail_window("inverse")
        step = -1 if self.descending else 1
        c = [self.coeffs.get(e0 + step * i, Fraction(0)) for i in range(k)]
        d = [Fraction(0)] * k
        d[0] = 1 / c0
        for s in range(1, k):
            acc = Fraction(0)
            for i in range(1, s + 1):
                if c[i]:
                    acc += c[i] * d[s - i]
            d[s] = -acc / c0
        return LaurentSeries.from_tail(-e0, d, self.descending)

    def _small(self) -> bool:
        """True when every possibly-nonzero exponent sits strictly on the
        vanishing side (negative for descending, positive for ascending)."""
        edge = self._edge_bound()
        if edge is None:
            return True
        return edge <= -1 if self.descending else edge >= 1

    def _sum_small_powers(self, term_coeff) -> "LaurentSeries":
        """Sum c_n * self**n for n >= 0 where self is small; c_n = term_coeff(n).

        Convergence in the window: each extra power pushes the support at
        least one exponent further out, so the loop stops once a power's
        entire support falls in the unknown region.
        """
        if not self._small():
            raise WindowError("series must vanish at the expansion point")
        if self.stop is None:
            if self.is_known_zero():
                return LaurentSeries({0: term_coeff(0)}, self.descending)
            raise WindowError("infinite expansion of an exact series; truncate first")
        out = LaurentSeries({0: term_coeff(0)}, self.descending, self.stop)
        power = LaurentSeries.one(self.descending)
        n = 0
        while True:
            n += 1
            power = power * self
            edge = power._edge_bound()
            if edge is None:
                break
            dead = edge <= self.stop if self.descending else edge >= self.stop
            if dead and not power.coeffs:
                break
            c = term_coeff(n)
            if c:
                out = out + power * c
            if dead:
                break
        return out

    def exp(self) -> "LaurentSeries":
        """exp of a series vanishing at its expansion point."""
        from math import factorial
        return self._sum_small_powers(lambda n: Fraction(1, factorial(n)))

    def log1p_of_tail(self) -> "LaurentSeries":
        """log(self) for self = 1 + (small): constant term must be exactly 1."""
        if self.coefficient(0) != 1:
            raise WindowError("log needs constant term exactly 1")
        t = self - 1
        return t._sum_small_powers(lambda n: Fraction(0) if n == 0
                                   else Fraction((-1) ** (n - 1), n))

    def root(self, n: int) -> "LaurentSeries":
        """n-th root (n may be negative): self = z**e0 * (1 + small) with
        e0 divisible by n and unit dominant coefficient."""
        if n == 0:
            raise ValueError("0th root")
        e0 = self._edge_bound()
        if e0 is None or self.coeffs.get(e0) != 1:
            raise WindowError("root needs dominant coefficient exactly 1")
        if e0 % n != 0:
            raise ValueError(f"dominant exponent {e0} not divisible by {n}")
        t = self.shift(-e0) - 1
        p = Fraction(1, n)

        def binom(k: int, _cache={}) -> Fraction:
            if k == 0:
                return Fraction(1)
            if k not in _cache:
                _cache[k] = binom(k - 1) * (p - (k - 1)) / k
            return _cache[k]

        res = t._sum_small_powers(binom)
        return res.shift(e0 // n)

    # ------------------------------------------------------------ composition

    def compose(self, inner: "LaurentSeries") -> "LaurentSeries":
        """self(inner).  Ascending: inner must vanish at 0.  Descending:
        inner must have top exponent exactly 1 (integer powers of inner,
        negative ones via window inversion)."""
        self._require_same_side(inner)
        if not self.descending:
            lo = inner._edge_bound()
            if lo is not None and lo < 1:
                raise ValueError("inner series must have valuation >= 1")
            if any(e < 0 for e in self.coeffs):
                raise ValueError("outer series must have no negative exponents")
            acc = LaurentSeries.zero(False, self.stop)
            power = LaurentSeries.one(False)
            top = max(self.coeffs, default=0)
            for e in range(0, top + 1):
                c = self.coeffs.get(e)
                if c:
                    acc = acc + power * c
                if e < top:
                    power = power * inner
            return acc
        top_in = inner._edge_bound()
        if top_in != 1 or 1 not in inner.coeffs:
            raise ValueError("inner series must have top exponent 1")
        acc = LaurentSeries.zero(True, self.stop)
        lo, hi = self.known_window()
        inv = inner.inverse() if (lo < hi or hi < 0) else None
        power = inner ** hi if hi >= 0 else (inv ** (-hi))
        for e in range(hi, lo - 1, -1):
            c = self.coeffs.get(e)
            if c:
                acc = acc + power * c
            if e > lo:
                power = power * inv
        return acc

    def reversion(self) -> "LaurentSeries":
        """Compositional inverse of an ascending series z + O(z^2).

        Lagrange inversion: [z^n] rev = (1/n) [z^(n-1)] (z/self)^n.
        """
        if self.descending:
            raise ValueError("reversion applies to expansions at zero")
        if self.coeffs.get(1) != 1 or any(e < 1 for e in self.coeffs):
            raise ValueError("reversion needs series of the form z + O(z^2)")
        if self.stop is None:
            raise WindowError("reversion of an exact series is infinite; truncate first")
        k = self.stop  # coefficients 1..k-1 of rev are determined
        ratio_inv = self.shift(-1).inverse()  # (z/self) as power series at 0
        out: dict[int, Fraction] = {}
        power = LaurentSeries.one(False)
        for n in range(1, k):
            power = power * ratio_inv
            c = power.coefficient(n - 1) / n
            if c:
                out[n] = c
        return LaurentSeries(out, False, k)

    # ---------------------------------------------------------- presentation

    def mismatches_on_overlap(self, other: "LaurentSeries") -> list[tuple[int, Fraction, Fraction]]:
        """Compare wherever BOTH series know the coefficient; [] = agreement.

        A mismatch needs a nonzero coefficient on at least one side, so the
        union of supports covers every possible disagreement.
        """
        self._require_same_side(other)

        def known(s: "LaurentSeries", e: int) -> bool:
            if s.stop is None:
                return True
            return e > s.stop if s.descending else e < s.stop

        bad = []
        for e in sorted(set(self.coeffs) | set(other.coeffs)):
            if known(self, e) and known(other, e):
                a = self.coeffs.get(e, Fraction(0))
                b = other.coeffs.get(e, Fraction(0))
                if a != b:
                    bad.append((e, a, b))
        return bad

    def to_json_dict(self) -> dict:
        lo, hi = self.known_window()
        return {
            "top": hi,
            "order": hi - lo + 1,
            "coeffs": [[str(e), format_rational(self.coeffs.get(e, Fraction(0)))]
                       for e in range(hi, lo - 1, -1)],
        }

    def __str__(self) -> str:
        lo, hi = self.known_window()
        parts: list[str] = []
        # expansions print in their natural reading order
        exps = range(hi, lo - 1, -1) if self.descending else range(lo, hi + 1)
        for e in exps:
            c = self.coeffs.get(e, Fraction(0))
            if c == 0:
                continue
            if e == 0:
                body = format_rational(abs(c))
            else:
                ze = "z" if e == 1 else f"z^{e}"
                mag = abs(c)
                body = ze if mag == 1 else (f"({format_rational(mag)}){ze}"
                                            if mag.denominator != 1 else f"{mag}{ze}")
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        if self.stop is not None:
            parts.append(f"+ O(z^{self.stop})" if parts else f"O(z^{self.stop})")
        return " ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        side = "inf" if self.descending else "0"
        return f"<LaurentSeries@{side} {self}>"
