"""Exact rational scalars and the basic coefficient sequences.

Everything downstream runs on ``fractions.Fraction``; no float enters any
computational path.  The sequences here are the numeric bedrock: Bernoulli
numbers, double factorials, the saddle-point coefficients b_i, and the
Stirling expansion coefficients C_i.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial


_RATIONAL_RE = re.compile(r"[+-]?\d+(/[1-9]\d*)?\Z")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" into an exact Fraction; no floats, no decimals."""
    s = text.strip()
    if not _RATIONAL_RE.fullmatch(s):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(s)


def format_rational(x: Fraction) -> str:
    """Render a Fraction as "p/q", or "p" when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def double_factorial(n: int) -> int:
    """n!! with the conventions (-1)!! = 0!! = 1.

    Defined for n >= -1 only; the verification formulas never need smaller
    arguments.
    """
    if n < -1:
        raise ValueError(f"double factorial undefined for {n}")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


@lru_cache(maxsize=None)
def _bernoulli_tuple(count: int) -> tuple[Fraction, ...]:
    # B_n from inverting sum_k t^k/(k+1)!  (the generating identity
    # t/(e^t - 1) = sum B_n t^n / n!), solved triangularly.
    inv = [Fraction(0)] * (count + 1)
    inv[0] = Fraction(1)
    for n in range(1, count + 1):
        acc = Fraction(0)
        for k in range(n):
            acc += inv[k] * Fraction(1, factorial(n - k + 1))
        inv[n] = -acc
    return tuple(inv[n] * factorial(n) for n in range(count + 1))


def bernoulli_numbers(count: int) -> list[Fraction]:
    """[B_0, B_1, ..., B_count] with B_1 = -1/2."""
    if count < 0:
        raise ValueError("count must be >= 0")
    return list(_bernoulli_tuple(count))


@lru_cache(maxsize=None)
def _saddle_tuple(count: int) -> tuple[Fraction, ...]:
    # Coefficients of v(x) = 1 + sum_{i>=1} b_i x^i solving v e^{1-v} = e^{-x^2/2}.
    # Quadratic recursion: (n+1) b_n = b_{n-1} - sum_{k=2}^{n-1} k b_k b_{n+1-k},
    # seeded by b_1 = 1.
    b = [Fraction(0)] * (count + 1)
    if count >= 1:
        b[1] = Fraction(1)
    for n in range(2, count + 1):
        acc = b[n - 1]
        for k in range(2, n):
            acc -= k * b[k] * b[n + 1 - k]
        b[n] = acc / (n + 1)
    return tuple(b[1:])


def saddle_coefficients(count: int) -> list[Fraction]:
    """[b_1, ..., b_count]: Taylor coefficients of the saddle-point branch.

    v(x) = 1 + sum b_i x^i is the branch through v(0) = 1 of v e^{1-v} =
    e^{-x^2/2} with v'(0) = 1.  CLI wire key: ``b``.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    return list(_saddle_tuple(count))


@lru_cache(maxsize=None)
def _stirling_tuple(count: int) -> tuple[Fraction, ...]:
    # C_i = [z^{-i}] exp(sum_{k>=1} B_{2k} / (2k(2k-1)) z^{1-2k}), computed as
    # sum over composition multiplicities via powers of the exponent tail:
    # G_1[2k-1] = B_{2k}/(2k(2k-1)), G_m = G_{m-1} * G_1, C_i = sum_m G_m[i]/m!.
    B = _bernoulli_tuple(2 * count + 2)
    g1 = [Fraction(0)] * (count + 1)
    for k in range(1, count // 2 + 2):
        if 2 * k - 1 <= count:
            g1[2 * k - 1] = B[2 * k] / (2 * k * (2 * k - 1))
    C = [Fraction(0)] * (count + 1)
    C[0] = Fraction(1)
    gm = list(g1)
    m = 1
    while any(gm):
        fact = factorial(m)
        for i in range(count + 1):
            C[i] += gm[i] / fact
        nxt = [Fraction(0)] * (count + 1)
        for i in range(count + 1):
            if gm[i]:
                for j in range(1, count + 1 - i):
                    if g1[j]:
                        nxt[i + j] += gm[i] * g1[j]
        gm = nxt
        m += 1
    return tuple(C)


def stirling_coefficients(count: int) -> list[Fraction]:
    """[C_0, ..., C_count]: coefficients of the exponentiated Stirling tail.

    C_i is the z^{-i} coefficient of exp(sum_{k>=1} B_{2k}/(2k(2k-1)) z^{1-2k}),
    i.e. the classical asymptotic-series coefficients 1, 1/12, 1/288, ...
    CLI wire key: ``C``.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    return list(_stirling_tuple(count))


@dataclass(frozen=True)
class SequenceTable:
    """A named finite slice of a coefficient sequence, for transport/dump."""

    name: str
    start_index: int
    values: tuple[Fraction, ...]

    def rows(self) -> list[tuple[str, str]]:
        step = -1 if self.start_index < 0 else 1
        return [
            (str(self.start_index + step * i), format_rational(v))
            for i, v in enumerate(self.values)
        ]

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "count": len(self.values),
            "values": [[i, v] for i, v in self.rows()],
        }
