"""Sparse graded polynomials in u and an indexed alphabet.

Two alphabets: "q" (variables q_1, q_2, ..., deg q_j = j) and "t"
(variables t_0, t_1, ..., deg t_k = 2k+1).  The scaling variable u has
degree 1 and participates in the weight of every monomial:

    weight(u^a * prod x_i^{e_i}) = a + sum e_i * deg(x_i).

A TruncationSpec fixes the viewport: terms with u-power above u_max,
weight above weight_max, or any variable index above index_max are
discarded at construction, so arithmetic stays exact within the window.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .core import format_rational


@dataclass(frozen=True)
class TruncationSpec:
    u_max: int
    weight_max: int
    index_max: int

    def __post_init__(self):
        if self.u_max < 0 or self.weight_max < 0 or self.index_max < 0:
            raise ValueError("truncation bounds must be >= 0")

    def contains(self, other: "TruncationSpec") -> bool:
        return (self.u_max >= other.u_max
                and self.weight_max >= other.weight_max
                and self.index_max >= other.index_max)

    def to_json_dict(self) -> dict:
        return {"u_max": self.u_max, "weight_max": self.weight_max,
                "index_max": self.index_max}


def variable_degree(alphabet: str, index: int) -> int:
    if alphabet == "q":
        if index < 1:
            raise ValueError(f"q-indices start at 1, got {index}")
        return index
    if alphabet == "t":
        if index < 0:
            raise ValueError(f"t-indices start at 0, got {index}")
        return 2 * index + 1
    raise ValueError(f"unknown alphabet {alphabet!r}")


def monomial_weight(alphabet: str, u_pow: int, vars_: tuple) -> int:
    return u_pow + sum(variable_degree(alphabet, i) * e for i, e in vars_)


def _norm_vars(vars_) -> tuple:
    acc: dict = {}
    for i, e in vars_:
        if e:
            acc[i] = acc.get(i, 0) + e
    items = tuple(sorted((i, e) for i, e in acc.items() if e))
    if any(e < 0 for _, e in items):
        raise ValueError("negative exponent")
    return items


class GradedPoly:
    """Immutable truncation-aware polynomial."""

    __slots__ = ("alphabet", "terms", "trunc")

    def __init__(self, alphabet: str, terms: dict, trunc: TruncationSpec):
        if alphabet not in ("q", "t"):
            raise ValueError(f"unknown alphabet {alphabet!r}")
        kept: dict = {}
        for (u_pow, vars_), c in terms.items():
            c = Fraction(c)
            if c == 0:
                continue
            vars_ = _norm_vars(vars_)
            if u_pow < 0:
                raise ValueError("negative u-power")
            if u_pow > trunc.u_max:
                continue
            if any(i > trunc.index_max for i, _ in vars_):
                continue
            if monomial_weight(alphabet, u_pow, vars_) > trunc.weight_max:
                continue
            key = (u_pow, vars_)
            prev = kept.get(key)
            kept[key] = c if prev is None else prev + c
        self.alphabet = alphabet
        self.terms = {k: v for k, v in kept.items() if v != 0}
        self.trunc = trunc

    # ------------------------------------------------------------ constructors

    @classmethod
    def zero(cls, alphabet: str, trunc: TruncationSpec) -> "GradedPoly":
        return cls(alphabet, {}, trunc)

    @classmethod
    def constant(cls, alphabet: str, value, trunc: TruncationSpec) -> "GradedPoly":
        return cls(alphabet, {(0, ()): Fraction(value)}, trunc)

    @classmethod
    def variable(cls, alphabet: str, index: int, trunc: TruncationSpec) -> "GradedPoly":
        return cls(alphabet, {(0, ((index, 1),)): Fraction(1)}, trunc)

    @classmethod
    def monomial(cls, alphabet: str, u_pow: int, vars_, coeff,
                 trunc: TruncationSpec) -> "GradedPoly":
        return cls(alphabet, {(u_pow, tuple(vars_)): Fraction(coeff)}, trunc)

    # ------------------------------------------------------------- arithmetic

    def _check(self, other: "GradedPoly"):
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch")
        if self.trunc != other.trunc:
            raise ValueError("truncation mismatch")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedPoly.constant(self.alphabet, other, self.trunc)
        self._check(other)
        merged = dict(self.terms)
        for k, v in other.terms.items():
            merged[k] = merged.get(k, Fraction(0)) + v
        return GradedPoly(self.alphabet, merged, self.trunc)

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly(self.alphabet, {k: -v for k, v in self.terms.items()},
                          self.trunc)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedPoly.constant(self.alphabet, other, self.trunc)
        return self + (-other)

    def scale(self, c) -> "GradedPoly":
        c = Fraction(c)
        return GradedPoly(self.alphabet,
                          {k: c * v for k, v in self.terms.items()}, self.trunc)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        wm = self.trunc.weight_max
        out: dict = {}
        for (ua, va), ca in self.terms.items():
            wa = monomial_weight(self.alphabet, ua, va)
            for (ub, vb), cb in other.terms.items():
                if wa + monomial_weight(self.alphabet, ub, vb) > wm:
                    continue
                u = ua + ub
                if u > self.trunc.u_max:
                    continue
                key = (u, _norm_vars(va + vb))
                out[key] = out.get(key, Fraction(0)) + ca * cb
        return GradedPoly(self.alphabet, out, self.trunc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def u_shift(self, k: int) -> "GradedPoly":
        """Multiply by u^k."""
        return GradedPoly(self.alphabet,
                          {(u + k, v): c for (u, v), c in self.terms.items()},
                          self.trunc)

    def min_weight(self):
        if not self.terms:
            return None
        return min(monomial_weight(self.alphabet, u, v) for u, v in self.terms)

    def exp(self) -> "GradedPoly":
        """Sum of powers / n!; requires every term to have positive weight
        so the sum terminates inside the window."""
        mw = self.min_weight()
        if mw is not None and mw < 1:
            raise ValueError("exp needs all terms of positive weight")
        out = GradedPoly.constant(self.alphabet, 1, self.trunc)
        power = out
        n = 0
        while True:
            n += 1
            if mw is None or n * mw > self.trunc.weight_max:
                break
            power = power * self
            if not power.terms:
                break
            out = out + power.scale(Fraction(1, factorial(n)))
        return out

    def log_one_plus_rest(self) -> "GradedPoly":
        """log of self, where self = 1 + r with r of positive minimum
        weight; the constant term must be exactly 1."""
        if self.terms.get((0, ()), Fraction(0)) != 1:
            raise ValueError("constant term must be 1")
        r = self - 1
        mw = r.min_weight()
        if mw is not None and mw < 1:
            raise ValueError("log argument must be 1 + (positive weight)")
        out = GradedPoly.zero(self.alphabet, self.trunc)
        power = GradedPoly.constant(self.alphabet, 1, self.trunc)
        n = 0
        while True:
            n += 1
            if mw is None or n * mw > self.trunc.weight_max:
                break
            power = power * r
            if not power.terms:
                break
            out = out + power.scale(Fraction((-1) ** (n - 1), n))
        return out

    # ------------------------------------------------------------- inspection

    def coefficient(self, u_pow: int, vars_) -> Fraction:
        return self.terms.get((u_pow, _norm_vars(vars_)), Fraction(0))

    def restrict(self, trunc: TruncationSpec) -> "GradedPoly":
        """Re-truncate to a window contained in the current one."""
        if not self.trunc.contains(trunc):
            raise ValueError("can only restrict to a smaller window")
        return GradedPoly(self.alphabet, self.terms, trunc)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items())

    def __eq__(self, other):
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.trunc == other.trunc
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.alphabet, self.trunc,
                     frozenset(self.terms.items())))

    def __repr__(self):
        return f"GradedPoly({self.alphabet!r}, {len(self.terms)} terms)"

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for (u, v), c in self.sorted_terms():
            factors = []
            if u:
                factors.append("u" if u == 1 else f"u^{u}")
            for i, e in v:
                name = f"{self.alphabet}{i}"
                factors.append(name if e == 1 else f"{name}^{e}")
            body = "*".join(factors)
            cs = format_rational(abs(c))
            bit = f"{cs}*{body}" if body else cs
            if not out:
                out = bit if c > 0 else f"-{bit}"
            else:
                out += f" + {bit}" if c > 0 else f" - {bit}"
        return out

    def to_json_dict(self) -> dict:
        return {
            "alphabet": self.alphabet,
            "trunc": self.trunc.to_json_dict(),
            "terms": [{"u": u, "vars": [[i, e] for i, e in v],
                       "coeff": format_rational(c)}
                      for (u, v), c in self.sorted_terms()],
        }


def random_poly(alphabet: str, trunc: TruncationSpec, rng: random.Random,
                max_terms: int = 4) -> GradedPoly:
    """Sparse sample with integer coefficients in {-3..3} \\ {0}; every
    monomial honors the truncation window by construction."""
    lo = 1 if alphabet == "q" else 0
    terms: dict = {}
    n_terms = rng.randint(1, max_terms)
    for _ in range(n_terms):
        u_pow = rng.randint(0, trunc.u_max)
        budget = trunc.weight_max - u_pow
        vars_: list = []
        while budget >= variable_degree(alphabet, lo) and rng.random() < 0.7:
            hi = lo
            while (hi + 1 <= trunc.index_max
                   and variable_degree(alphabet, hi + 1) <= budget):
                hi += 1
            idx = rng.randint(lo, hi)
            vars_.append((idx, 1))
            budget -= variable_degree(alphabet, idx)
        coeff = rng.choice([-3, -2, -1, 1, 2, 3])
        key = (u_pow, _norm_vars(vars_))
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return GradedPoly(alphabet, terms, trunc)
