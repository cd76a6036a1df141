"""Differential operators of order <= 2 on graded polynomials.

Operators are finite term lists: coefficient * u^p * (monomial multiplier)
* (product of at most two partials).  Builders take a TruncationSpec and
emit only terms that can act nontrivially within it (indices up to
index_max + u_max, u-powers up to u_max).

The exponential of an operator is the plain Taylor sum: every term of an
exponentiated operator must carry u, so D^n pushes u-power at least n and
the sum stops at n = u_max.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .bivariate import series_Q, series_QB
from .core import (bernoulli_numbers, double_factorial, saddle_coefficients,
                   stirling_coefficients)
from .grading import GradedPoly, TruncationSpec, monomial_weight, variable_degree


class DiffOperator:
    """Immutable operator: terms map (u_pow, mult_vars, derivs) -> coeff.

    mult_vars is a sorted ((index, exp), ...) monomial; derivs is a sorted
    tuple of 0, 1, or 2 variable indices.
    """

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: str, terms: dict):
        if alphabet not in ("q", "t"):
            raise ValueError(f"unknown alphabet {alphabet!r}")
        kept = {}
        for (u_pow, mult, derivs), c in terms.items():
            c = Fraction(c)
            if c == 0:
                continue
            if u_pow < 0:
                raise ValueError("negative u-power")
            if len(derivs) > 2:
                raise ValueError("derivative order above 2")
            key = (u_pow, tuple(sorted(mult)), tuple(sorted(derivs)))
            kept[key] = kept.get(key, Fraction(0)) + c
        self.alphabet = alphabet
        self.terms = {k: v for k, v in kept.items() if v != 0}

    @classmethod
    def zero(cls, alphabet: str) -> "DiffOperator":
        return cls(alphabet, {})

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch")
        merged = dict(self.terms)
        for k, v in other.terms.items():
            merged[k] = merged.get(k, Fraction(0)) + v
        return DiffOperator(self.alphabet, merged)

    def __sub__(self, other: "DiffOperator") -> "DiffOperator":
        return self + other.scale(-1)

    def scale(self, c) -> "DiffOperator":
        c = Fraction(c)
        return DiffOperator(self.alphabet,
                            {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    def restricted(self, trunc: TruncationSpec) -> "DiffOperator":
        """Drop terms that cannot act within the window: u-power above
        u_max or any index (multiplier or derivative) above index_max."""
        cap = trunc.index_max
        out = {}
        for (u_pow, mult, derivs), c in self.terms.items():
            if u_pow > trunc.u_max:
                continue
            if any(i > cap for i, _ in mult) or any(i > cap for i in derivs):
                continue
            out[(u_pow, mult, derivs)] = c
        return DiffOperator(self.alphabet, out)

    def weights(self) -> set:
        """Set of homogeneous weights of the terms (derivatives count
        negatively)."""
        out = set()
        for (u_pow, mult, derivs), _ in self.terms.items():
            w = monomial_weight(self.alphabet, u_pow, mult)
            w -= sum(variable_degree(self.alphabet, i) for i in derivs)
            out.add(w)
        return out

    def max_order(self) -> int:
        return max((len(d) for (_, _, d) in self.terms), default=0)

    def __repr__(self):
        return f"DiffOperator({self.alphabet!r}, {len(self.terms)} terms)"


def apply_operator(op: DiffOperator, p: GradedPoly) -> GradedPoly:
    """Single exact application, re-truncated to p.trunc."""
    if op.alphabet != p.alphabet:
        raise ValueError("alphabet mismatch")
    out: dict = {}
    for (pu, pv), pc in p.terms.items():
        exps = dict(pv)
        for (ou, mult, derivs), oc in op.terms.items():
            factor = oc * pc
            work = dict(exps)
            dead = False
            for idx in derivs:
                e = work.get(idx, 0)
                if e == 0:
                    dead = True
                    break
                factor *= e
                if e == 1:
                    del work[idx]
                else:
                    work[idx] = e - 1
            if dead:
                continue
            for idx, e in mult:
                work[idx] = work.get(idx, 0) + e
            key = (pu + ou, tuple(sorted(work.items())))
            out[key] = out.get(key, Fraction(0)) + factor
    return GradedPoly(p.alphabet, out, p.trunc)


def exp_apply(op: DiffOperator, p: GradedPoly) -> GradedPoly:
    """sum_{n <= u_max} op^n p / n!.  Every operator term must carry u, so
    the truncated exponential is exact within the window."""
    for (u_pow, _, _) in op.terms:
        if u_pow == 0:
            raise ValueError("exp_apply requires every term to carry u")
    acc = p
    cur = p
    for n in range(1, p.trunc.u_max + 1):
        cur = apply_operator(op, cur)
        if not cur.terms:
            break
        acc = acc + cur.scale(Fraction(1, factorial(n)))
    return acc


def commutator(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    """Symbolic [a, b] for operators of derivative order <= 1 (sufficient
    for every symbolic bracket used here; order-2 bracket identities are
    checked by double application instead)."""
    if a.alphabet != b.alphabet:
        raise ValueError("alphabet mismatch")
    if a.max_order() > 1 or b.max_order() > 1:
        raise NotImplementedError("symbolic bracket only for order <= 1")
    out: dict = {}

    def accumulate(sign: int, ua, ma, da, ca, ub, mb, db, cb):
        # contribution  sign * ca*cb * u^{ua+ub} * M_a (d_a M_b) d_b
        if not da:
            return
        i = da[0]
        mb_d = dict(mb)
        e = mb_d.get(i, 0)
        if e == 0:
            return
        coeff = sign * ca * cb * e
        if e == 1:
            del mb_d[i]
        else:
            mb_d[i] = e - 1
        mult = dict(ma)
        for j, f in mb_d.items():
            mult[j] = mult.get(j, 0) + f
        key = (ua + ub, tuple(sorted(mult.items())), db)
        out[key] = out.get(key, Fraction(0)) + coeff

    for (ua, ma, da), ca in a.terms.items():
        for (ub, mb, db), cb in b.terms.items():
            accumulate(+1, ua, ma, da, ca, ub, mb, db, cb)
            accumulate(-1, ub, mb, db, cb, ua, ma, da, ca)
    return DiffOperator(a.alphabet, out)


# ------------------------------------------------------------------ builders

def _index_cap(trunc: TruncationSpec) -> int:
    return trunc.index_max + trunc.u_max


def build_Xm(m: int, trunc: TruncationSpec) -> DiffOperator:
    """X_m = sum_k (k+m) q_k d/dq_{k+m}."""
    if m < 1:
        raise ValueError("m must be >= 1")
    cap = _index_cap(trunc)
    terms = {}
    for k in range(1, cap - m + 1):
        terms[(0, ((k, 1),), (k + m,))] = Fraction(k + m)
    return DiffOperator("q", terms)


def build_Ym(m: int, trunc: TruncationSpec) -> DiffOperator:
    """Y_m = (1/2) sum_{a+b=m, a,b>=1} ab d2/dq_a dq_b."""
    if m < 1:
        raise ValueError("m must be >= 1")
    terms = {}
    for a in range(1, m):
        b = m - a
        if a > b:
            break
        coeff = Fraction(a * b) if a < b else Fraction(a * a, 2)
        terms[(0, (), (a, b))] = coeff
    return DiffOperator("q", terms)


def build_Lm(m: int, trunc: TruncationSpec) -> DiffOperator:
    return build_Xm(m, trunc) + build_Ym(m, trunc)


def _btilde(k: int, B: list) -> Fraction:
    return B[2 * k] / (2 * k * (2 * k - 1))


def build_Bt(trunc: TruncationSpec) -> DiffOperator:
    """sum_k B~_k u^{4k-2} sum_i t_i d/dt_{i+2k-1}."""
    cap = _index_cap(trunc)
    terms = {}
    k = 1
    while 4 * k - 2 <= trunc.u_max:
        B = bernoulli_numbers(2 * k)
        c = _btilde(k, B)
        for i in range(0, cap - (2 * k - 1) + 1):
            terms[(4 * k - 2, ((i, 1),), (i + 2 * k - 1,))] = c
        k += 1
    return DiffOperator("t", terms)


def build_P0(trunc: TruncationSpec) -> DiffOperator:
    """-sum_k B~_k u^{4k-2} d/dt_{2k}."""
    cap = _index_cap(trunc)
    terms = {}
    k = 1
    while 4 * k - 2 <= trunc.u_max:
        if 2 * k <= cap:
            B = bernoulli_numbers(2 * k)
            terms[(4 * k - 2, (), (2 * k,))] = -_btilde(k, B)
        k += 1
    return DiffOperator("t", terms)


def build_Q0W(trunc: TruncationSpec) -> DiffOperator:
    """sum_k B~_k u^{4k-2} sum_{i+j=2k-2} (-1)^{i+1} d2/dt_i dt_j."""
    terms = {}
    k = 1
    while 4 * k - 2 <= trunc.u_max:
        B = bernoulli_numbers(2 * k)
        c = _btilde(k, B)
        for i in range(0, 2 * k - 1):
            j = 2 * k - 2 - i
            if i > j:
                break
            sign = Fraction((-1) ** (i + 1))
            coeff = 2 * sign * c if i < j else sign * c
            key = (4 * k - 2, (), (i, j))
            terms[key] = terms.get(key, Fraction(0)) + coeff
        k += 1
    return DiffOperator("t", terms)


def build_W(trunc: TruncationSpec) -> DiffOperator:
    """W = B_t + (1/2) Q0^W + P0; homogeneous weights {0, -3}."""
    return build_Bt(trunc) + build_Q0W(trunc).scale(Fraction(1, 2)) + build_P0(trunc)


def build_Pt(trunc: TruncationSpec) -> DiffOperator:
    """P_t = -sum_{i>=1} C_i u^{2i} d/dt_{i+1}."""
    cap = _index_cap(trunc)
    imax = trunc.u_max // 2
    C = stirling_coefficients(max(imax, 0))
    terms = {}
    for i in range(1, imax + 1):
        if i + 1 <= cap:
            terms[(2 * i, (), (i + 1,))] = -C[i]
    return DiffOperator("t", terms)


def build_P(trunc: TruncationSpec) -> DiffOperator:
    """P = -sum_{k>=1} b_{2k+1} u^{2k} d/dq_{2k+3}."""
    cap = _index_cap(trunc)
    kmax = trunc.u_max // 2
    terms = {}
    if kmax >= 1:
        b = saddle_coefficients(2 * kmax + 1)
        for k in range(1, kmax + 1):
            if 2 * k + 3 <= cap:
                terms[(2 * k, (), (2 * k + 3,))] = -b[2 * k]
    return DiffOperator("q", terms)


def build_QtW(trunc: TruncationSpec) -> DiffOperator:
    """Q_t^W = sum_{i,j} QB_{ij} u^{2i+2j+2} d2/dt_i dt_j (ordered sum,
    folded onto sorted derivative pairs)."""
    if trunc.u_max < 2:
        return DiffOperator.zero("t")
    cutoff = (trunc.u_max - 2) // 2
    qb = series_QB(cutoff)
    terms = {}
    for i in range(0, cutoff + 1):
        for j in range(i, cutoff - i + 1):
            c = qb.entry(i, j)
            if c == 0:
                continue
            terms[(2 * i + 2 * j + 2, (), (i, j))] = c if i == j else 2 * c
    return DiffOperator("t", terms)


def build_Qplus(trunc: TruncationSpec) -> DiffOperator:
    """Q+ = sum_{i,j>=1} Q_{ij} u^{i+j} ij d2/dq_i dq_j (ordered sum)."""
    if trunc.u_max < 2:
        return DiffOperator.zero("q")
    cutoff = trunc.u_max
    q = series_Q(cutoff)
    terms = {}
    for i in range(1, cutoff):
        for j in range(i, cutoff - i + 1):
            c = q.entry(i, j) * i * j
            if c == 0:
                continue
            terms[(i + j, (), (i, j))] = c if i == j else 2 * c
    return DiffOperator("q", terms)


def build_Vhat(m: int, trunc: TruncationSpec) -> DiffOperator:
    """The t-variable constraint operator, defined for m >= -1:

        sum_{k>=max(m,0)} (2k+1)!!/(2k-2m-1)!! t_{k-m} d/dt_k
      + (1/2) sum_{k+l=m-1} (2k+1)!!(2l+1)!! d2/dt_k dt_l
      - (2m+3)!! d/dt_{m+1}
      + (t_0^2/2) [m=-1]  +  (1/8) [m=0]
    """
    if m < -1:
        raise ValueError("m must be >= -1")
    cap = _index_cap(trunc)
    terms: dict = {}
    for k in range(max(m, 0), cap + 1):
        if k - m > cap:
            continue
        c = Fraction(double_factorial(2 * k + 1),
                     double_factorial(2 * k - 2 * m - 1))
        key = (0, ((k - m, 1),), (k,))
        terms[key] = terms.get(key, Fraction(0)) + c
    for k in range(0, m):
        l = m - 1 - k
        if k > l:
            break
        c = Fraction(double_factorial(2 * k + 1) * double_factorial(2 * l + 1))
        coeff = c if k < l else c / 2
        key = (0, (), (k, l))
        terms[key] = terms.get(key, Fraction(0)) + coeff
    if m + 1 <= cap:
        key = (0, (), (m + 1,))
        terms[key] = terms.get(key, Fraction(0)) - double_factorial(2 * m + 3)
    if m == -1:
        terms[(0, ((0, 2),), ())] = Fraction(1, 2)
    if m == 0:
        terms[(0, (), ())] = Fraction(1, 8)
    return DiffOperator("t", terms)


def build_Vtilde(m: int, trunc: TruncationSpec) -> DiffOperator:
    """V~_{2m} = L_{2m} - (2m+3) d/dq_{2m+3}, m >= 1 (q-alphabet)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    op = build_Lm(2 * m, trunc)
    extra = DiffOperator("q", {(0, (), (2 * m + 3,)): Fraction(-(2 * m + 3))})
    return op + extra


def sum_scaled(builder, coeffs, trunc: TruncationSpec,
               u_step: int = 1) -> DiffOperator:
    """sum_m c_m u^{m*u_step} builder(m); emits m while the u-power fits."""
    acc = None
    for m, c in enumerate(coeffs, start=1):
        if m * u_step > trunc.u_max:
            break
        op = builder(m, trunc)
        shifted = DiffOperator(op.alphabet,
                               {(u + m * u_step, mult, d): Fraction(c) * v
                                for (u, mult, d), v in op.terms.items()})
        acc = shifted if acc is None else acc + shifted
    if acc is None:
        raise ValueError("empty scaled sum")
    return acc


# --------------------------------------------------------------- phi family

def phi_polynomials(k_max: int, trunc: TruncationSpec) -> list:
    """phi~_k(u, q) for k <= k_max: images of z under the k-th power of
    (u+z)^2 z d/dz, with z^m read as q_m.  Each is homogeneous of weight
    2k+1 and its u^0 part is (2k-1)!! q_{2k+1}."""
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    out = []
    cur = {(0, 1): Fraction(1)}  # (u_pow, z_pow) -> coeff, starting at z
    for k in range(0, k_max + 1):
        poly = GradedPoly("q", {(a, ((mz, 1),)): c for (a, mz), c in cur.items()},
                          trunc)
        out.append(poly)
        nxt: dict = {}
        for (a, mz), c in cur.items():
            for (da, dz, mul) in ((2, 0, 1), (1, 1, 2), (0, 2, 1)):
                key = (a + da, mz + dz)
                nxt[key] = nxt.get(key, Fraction(0)) + c * mz * mul
        cur = nxt
    return out


class SubstitutionMap:
    """Variable index -> replacement polynomial; images must be grading
    homogeneous of the source variable's weight."""

    __slots__ = ("source_alphabet", "images")

    def __init__(self, source_alphabet: str, images: dict):
        for idx, img in images.items():
            want = variable_degree(source_alphabet, idx)
            for (u, v) in img.terms:
                if monomial_weight(img.alphabet, u, v) != want:
                    raise ValueError(
                        f"image of index {idx} not homogeneous of weight {want}")
        self.source_alphabet = source_alphabet
        self.images = dict(images)


def substitute(p: GradedPoly, s: SubstitutionMap) -> GradedPoly:
    if p.alphabet != s.source_alphabet:
        raise ValueError("alphabet mismatch")
    target = None
    for img in s.images.values():
        target = img.alphabet
        break
    if target is None:
        target = p.alphabet
    acc = GradedPoly.zero(target, p.trunc)
    for (u, vars_), c in p.terms.items():
        cur = GradedPoly.monomial(target, u, (), c, p.trunc)
        for idx, e in vars_:
            img = s.images.get(idx)
            if img is None:
                raise KeyError(f"no image for variable index {idx}")
            for _ in range(e):
                cur = cur * img
        acc = acc + cur
    return acc


def classical_map(trunc: TruncationSpec) -> SubstitutionMap:
    """t_k -> (2k-1)!! q_{2k+1}."""
    images = {}
    for k in range(0, trunc.index_max + 1):
        images[k] = GradedPoly.monomial("q", 0, ((2 * k + 1, 1),),
                                        double_factorial(2 * k - 1), trunc)
    return SubstitutionMap("t", images)


def flow_map(trunc: TruncationSpec) -> SubstitutionMap:
    """t_k -> phi~_k(u, q)."""
    k_max = trunc.index_max
    phis = phi_polynomials(k_max, trunc)
    return SubstitutionMap("t", dict(enumerate(phis)))


# ---------------------------------------------------------------- xi bridge

def xi_first(i: int, j: int) -> tuple:
    """(g1, Xi(g1)) for g1 = q_{i+j} d/dq_i; Xi(g1) = -((i+j)/i) q_i d/dq_{i+j}."""
    if i < 1 or j < 1:
        raise ValueError("need i, j >= 1")
    g = DiffOperator("q", {(0, ((i + j, 1),), (i,)): Fraction(1)})
    img = DiffOperator("q", {(0, ((i, 1),), (i + j,)): Fraction(-(i + j), i)})
    return g, img


def xi_second(a: int, b: int) -> tuple:
    """(g2, Xi(g2)) for g2 = q_a q_b (a multiplication operator);
    Xi(g2) = -ab d2/dq_a dq_b."""
    if a < 1 or b < 1:
        raise ValueError("need a, b >= 1")
    mult = ((a, 2),) if a == b else tuple(sorted(((a, 1), (b, 1))))
    g = DiffOperator("q", {(0, mult, ()): Fraction(1)})
    img = DiffOperator("q", {(0, (), tuple(sorted((a, b)))): Fraction(-a * b)})
    return g, img


def xi_image_of_multiplier(op: DiffOperator) -> DiffOperator:
    """Xi applied to a pure multiplication operator whose every term is a
    degree-two monomial q_a q_b (the shape of [g1, g2] brackets)."""
    out: dict = {}
    for (u, mult, derivs), c in op.terms.items():
        if derivs:
            raise ValueError("not a multiplication operator")
        flat = [i for i, e in mult for _ in range(e)]
        if len(flat) != 2:
            raise ValueError("multiplier is not quadratic")
        a, b = flat
        key = (u, (), tuple(sorted((a, b))))
        out[key] = out.get(key, Fraction(0)) + c * Fraction(-a * b)
    return DiffOperator("q", out)


# ------------------------------------------------------ decomposition checks

def pt_via_zassenhaus(trunc: TruncationSpec) -> DiffOperator:
    """sum_{m>=1} ((-1)^{m-1}/m!) ad_{B_t}^{m-1} P0, truncated by u-power;
    an independent route to build_Pt."""
    bt = build_Bt(trunc)
    cur = build_P0(trunc)
    acc = DiffOperator.zero("t")
    m = 1
    while 2 * m <= trunc.u_max:
        acc = acc + cur.scale(Fraction((-1) ** (m - 1), factorial(m)))
        cur = commutator(bt, cur)
        if not cur.terms:
            break
        m += 1
    return acc.restricted(trunc)
