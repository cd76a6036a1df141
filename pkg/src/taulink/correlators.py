"""Bracket values ⟨τ_{d1}...τ_{dn}⟩ from the t-variable constraint family.

The solver imposes no seeded values: every number comes out of the
constraint operators (dilatation + second-order + anomaly scalars), with
a dimension filter deciding which brackets can be nonzero at all.  Two
pivot strategies are provided; they must produce identical tables, which
the verification suites exploit as an internal cross-check.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .core import double_factorial


def genus(multiset: tuple):
    """g with 3g - 3 + n = sum d_i, or None when not a nonnegative integer."""
    n = len(multiset)
    num = sum(multiset) - n + 3
    if num % 3 != 0:
        return None
    g = num // 3
    return g if g >= 0 else None


def admissible(multiset: tuple) -> bool:
    """Nonzero requires integer g >= 0 and a stable count 2g - 2 + n > 0."""
    n = len(multiset)
    if n < 1:
        return False
    g = genus(multiset)
    if g is None:
        return False
    return 2 * g - 2 + n > 0


def multiset_splits(multiset: tuple):
    """Ordered splits (beta, gamma, weight) of a sorted multiset, weight =
    product over values of C(mult, chosen)."""
    values = sorted(set(multiset))
    mults = [multiset.count(v) for v in values]

    def rec(i):
        if i == len(values):
            yield (), (), 1
            return
        v, m = values[i], mults[i]
        for beta_rest, gamma_rest, w in rec(i + 1):
            for take in range(m + 1):
                yield ((v,) * take + beta_rest,
                       (v,) * (m - take) + gamma_rest,
                       w * comb(m, take))

    for beta, gamma, w in rec(0):
        yield tuple(sorted(beta)), tuple(sorted(gamma)), w


def _pick_pivot(multiset: tuple, strategy: str) -> int:
    ordered = sorted(multiset, reverse=True)
    if strategy == "max":
        return ordered[0]
    if strategy == "second":
        if len(ordered) >= 2 and ordered[1] >= 1:
            return ordered[1]
        return ordered[0]
    raise ValueError(f"unknown strategy {strategy!r}")


@lru_cache(maxsize=None)
def make_solver(strategy: str = "max"):
    """Returns value(multiset) -> Fraction, memoized; the memo is shared
    process-wide per strategy (the recursion is pure)."""

    @lru_cache(maxsize=None)
    def value(multiset: tuple) -> Fraction:
        multiset = tuple(sorted(multiset))
        if not admissible(multiset):
            return Fraction(0)
        pivot = _pick_pivot(multiset, strategy)
        m = pivot - 1
        rest = list(multiset)
        rest.remove(pivot)
        alpha = tuple(sorted(rest))

        acc = Fraction(0)
        # dilatation: each remaining insertion slides up by m
        for dd in sorted(set(alpha)):
            k = dd + m
            if k < 0:
                continue
            mult = alpha.count(dd)
            sub = list(alpha)
            sub.remove(dd)
            sub.append(k)
            acc += mult * Fraction(double_factorial(2 * k + 1),
                                   double_factorial(2 * dd - 1)) \
                * value(tuple(sorted(sub)))
        # second order: connected and disconnected contributions
        if m >= 1:
            for k in range(0, m):
                l = m - 1 - k
                coef = Fraction(double_factorial(2 * k + 1)
                                * double_factorial(2 * l + 1), 2)
                acc += coef * value(tuple(sorted(alpha + (k, l))))
                for beta, gamma, w in multiset_splits(alpha):
                    acc += coef * w * value(tuple(sorted(beta + (k,)))) \
                        * value(tuple(sorted(gamma + (l,))))
        # anomaly scalars
        if m == -1 and alpha == (0, 0):
            acc += 1
        if m == 0 and alpha == ():
            acc += Fraction(1, 8)
        return acc / double_factorial(2 * m + 3)

    return value


def all_multisets(weight_bound: int):
    """Sorted multisets (d1 <= ... <= dn), n >= 1, with sum(2d+1) <= bound."""
    out = []

    def rec(prefix, low, budget):
        d = low
        while 2 * d + 1 <= budget:
            cur = prefix + (d,)
            out.append(cur)
            rec(cur, d, budget - (2 * d + 1))
            d += 1

    rec((), 0, weight_bound)
    out.sort(key=lambda t: (len(t), t))
    return out


class CorrelatorTable:
    """All admissible bracket values within a t-weight bound."""

    __slots__ = ("weight_bound", "entries")

    def __init__(self, weight_bound: int, strategy: str = "max"):
        if weight_bound < 3:
            raise ValueError("weight_bound must be >= 3")
        solver = make_solver(strategy)
        entries = {}
        for ms in all_multisets(weight_bound):
            if admissible(ms):
                entries[ms] = solver(ms)
        self.weight_bound = weight_bound
        self.entries = entries

    def value(self, multiset) -> Fraction:
        key = tuple(sorted(multiset))
        if sum(2 * d + 1 for d in key) > self.weight_bound:
            raise KeyError(f"{key} beyond weight bound {self.weight_bound}")
        return self.entries.get(key, Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, CorrelatorTable):
            return NotImplemented
        return (self.weight_bound == other.weight_bound
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.weight_bound, frozenset(self.entries.items())))
