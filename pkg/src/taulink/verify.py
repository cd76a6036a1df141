"""The verification suite registry.

Every suite returns the standard report shape
{"window": {...}, "checked": N, "mismatches": [...]} and is pure given a
RunConfig; `run_all` adds per-suite wall-clock timings (the one field of
any output that is not a deterministic function of the config).
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

from . import bivariate, tau
from .config import RunConfig
from .core import double_factorial, format_rational, stirling_coefficients
from .grading import GradedPoly, TruncationSpec, random_poly
from .named import (flow_derivative, lowering_coefficients, series_f)
from .operators import (apply_operator, build_Bt, build_Lm, build_P,
                        build_Pt, build_Qplus, build_QtW, build_W, build_Xm,
                        classical_map, commutator, exp_apply, flow_map,
                        phi_polynomials, substitute, sum_scaled,
                        xi_first, xi_image_of_multiplier, xi_second)
from .series import LaurentSeries


def _report(u_max, weight_max, checked, mismatches):
    return {"window": {"u_max": u_max, "weight_max": weight_max},
            "checked": checked, "mismatches": mismatches}


def _poly_diffs(lhs: GradedPoly, rhs: GradedPoly, tag: str):
    keys = sorted(set(lhs.terms) | set(rhs.terms))
    checked = len(keys)
    out = []
    for key in keys:
        a = lhs.terms.get(key, Fraction(0))
        b = rhs.terms.get(key, Fraction(0))
        if a != b:
            u, vars_ = key
            out.append({"check": tag,
                        "monomial": {"u": u, "vars": [[i, e] for i, e in vars_]},
                        "lhs": format_rational(a), "rhs": format_rational(b)})
    return checked, out


# ------------------------------------------------------------------- suites

def suite_lemma_c(cfg: RunConfig) -> dict:
    """Alternating self-convolution of the Stirling coefficients vanishes:
    sum_i (-1)^i C_i C_{k-i} = 0 for 1 <= k <= max(10, order)."""
    k_max = max(10, cfg.order)
    C = stirling_coefficients(k_max)
    mismatches = []
    for k in range(1, k_max + 1):
        s = sum((-1) ** i * C[i] * C[k - i] for i in range(0, k + 1))
        if s != 0:
            mismatches.append({"check": "lemma-c", "k": k,
                               "lhs": format_rational(s), "rhs": "0"})
    return _report(0, k_max, k_max, mismatches)


def suite_lemma5(cfg: RunConfig) -> dict:
    """(f^{2n+1})_+ = (1/(2n-1)!!) sum_i C_i D^{n-i} z for 0 <= n <= 5,
    with D = (1+z)^2 z d/dz acting on exact polynomials."""
    n_max = 5
    order = max(cfg.order, 2 * n_max + 2)
    f = series_f(order)
    C = stirling_coefficients(n_max)
    flows = [LaurentSeries({1: Fraction(1)}, True)]
    for _ in range(n_max):
        flows.append(flow_derivative(flows[-1]))
    checked = 0
    mismatches = []
    for n in range(0, n_max + 1):
        lhs = (f ** (2 * n + 1)).plus_part()
        rhs = LaurentSeries.zero(True)
        for i in range(0, n + 1):
            rhs = rhs + flows[n - i] * C[i]
        rhs = rhs * Fraction(1, double_factorial(2 * n - 1))
        checked += 1
        if lhs != rhs:
            mismatches.append({"check": "lemma5", "n": n,
                               "lhs": str(lhs), "rhs": str(rhs)})
    return _report(0, order, checked, mismatches)


def suite_prop_quadratic(cfg: RunConfig) -> dict:
    """Double-factorial link between the two quadratic tables, i+j <= 4."""
    max_sum = 4
    rep = bivariate.check_double_factorial_link(max_sum)
    return _report(0, max_sum, rep["checked"], rep["mismatches"])


def _seeded_polys(alphabet: str, trunc: TruncationSpec, seed: int, count: int):
    rng = random.Random(seed)
    return [random_poly(alphabet, trunc, rng) for _ in range(count)]


def suite_zassenhaus_w(cfg: RunConfig) -> dict:
    """exp(W) p = exp(B_t) exp(Q_t^W/2) exp(P_t) p on seeded samples."""
    trunc = TruncationSpec(cfg.u_max, cfg.weight_max, cfg.weight_max)
    w = build_W(trunc)
    bt = build_Bt(trunc)
    half_qtw = build_QtW(trunc).scale(Fraction(1, 2))
    pt = build_Pt(trunc)
    checked = 0
    mismatches = []
    for idx, p in enumerate(_seeded_polys("t", trunc, cfg.seed, 20)):
        lhs = exp_apply(w, p)
        rhs = exp_apply(bt, exp_apply(half_qtw, exp_apply(pt, p)))
        c, m = _poly_diffs(lhs, rhs, f"zassenhaus-w[{idx}]")
        checked += c
        mismatches += m
    return _report(cfg.u_max, cfg.weight_max, checked, mismatches)


def suite_zassenhaus_l(cfg: RunConfig) -> dict:
    """exp(sum a_m u^m L_m) p = exp(sum a_m u^m X_m) exp(Q+/2) p."""
    trunc = TruncationSpec(cfg.u_max, cfg.weight_max, cfg.weight_max)
    a = lowering_coefficients(max(cfg.u_max, 1)).coeffs
    full = sum_scaled(build_Lm, a, trunc)
    first = sum_scaled(build_Xm, a, trunc)
    half_qp = build_Qplus(trunc).scale(Fraction(1, 2))
    checked = 0
    mismatches = []
    for idx, p in enumerate(_seeded_polys("q", trunc, cfg.seed, 20)):
        lhs = exp_apply(full, p)
        rhs = exp_apply(first, exp_apply(half_qp, p))
        c, m = _poly_diffs(lhs, rhs, f"zassenhaus-l[{idx}]")
        checked += c
        mismatches += m
    return _report(cfg.u_max, cfg.weight_max, checked, mismatches)


def suite_prop_p4(cfg: RunConfig) -> dict:
    """Substitution bridge, two halves.

    (a) For G in {t0, t1, t2, t0*t1}: exp(sum a u X)(G under the classical
        odd map) equals (exp(B_t) G) under the flow map.
    (b) exp(sum a u X) q_{2n+1} = (1/(2n-1)!!) sum_i C_i u^{2i}
        phi~_{n-i}(u,q) for n <= 3.
    """
    trunc = TruncationSpec(cfg.u_max, max(cfg.weight_max, 7),
                           max(cfg.weight_max, 7))
    a = lowering_coefficients(max(cfg.u_max, 1)).coeffs
    xsum = sum_scaled(build_Xm, a, trunc)
    bt = build_Bt(trunc)
    cmap = classical_map(trunc)
    fmap = flow_map(trunc)
    checked = 0
    mismatches = []

    samples = [((0, ((0, 1),)), "t0"), ((0, ((1, 1),)), "t1"),
               ((0, ((2, 1),)), "t2"), ((0, ((0, 1), (1, 1))), "t0t1")]
    for (u_pow, vars_), name in samples:
        g = GradedPoly.monomial("t", u_pow, vars_, 1, trunc)
        lhs = exp_apply(xsum, substitute(g, cmap))
        rhs = substitute(exp_apply(bt, g), fmap)
        c, m = _poly_diffs(lhs, rhs, f"prop32[{name}]")
        checked += c
        mismatches += m

    n_max = 3
    C = stirling_coefficients(n_max)
    phis = phi_polynomials(n_max, trunc)
    for n in range(0, n_max + 1):
        target = GradedPoly.variable("q", 2 * n + 1, trunc)
        lhs = exp_apply(xsum, target)
        rhs = GradedPoly.zero("q", trunc)
        for i in range(0, n + 1):
            rhs = rhs + phis[n - i].u_shift(2 * i).scale(C[i])
        rhs = rhs.scale(Fraction(1, double_factorial(2 * n - 1)))
        c, m = _poly_diffs(lhs, rhs, f"lemma32[n={n}]")
        checked += c
        mismatches += m
    return _report(cfg.u_max, trunc.weight_max, checked, mismatches)


def suite_thm1(cfg: RunConfig) -> dict:
    return tau.verify_theorem1(cfg.u_max, cfg.weight_max, cfg.margin_extra)


def suite_cor2(cfg: RunConfig) -> dict:
    return tau.verify_corollary2(cfg.u_max, cfg.weight_max, cfg.margin_extra)


def suite_virasoro(cfg: RunConfig) -> dict:
    return tau.verify_virasoro(max(15, cfg.weight_max))


def suite_eta_pde(cfg: RunConfig) -> dict:
    order = max(10, cfg.order)
    raw = bivariate.eta_pde_mismatches(order)
    mismatches = [{"check": "eta-pde", "u_exp": k[0], "z_exp": k[1],
                   "lhs": format_rational(a), "rhs": format_rational(b)}
                  for k, a, b in raw]
    return _report(0, order, order - 1, mismatches)


def suite_xi_iso(cfg: RunConfig) -> dict:
    """Bracket-preservation of the first/second order swap map on sampled
    generator pairs, checked by application to probe polynomials.

    Two probes per pair are monomials built from the pair's own indices,
    so the second-order images act nontrivially; one is a seeded random
    polynomial. The weight window is widened to fit the probes."""
    wmax = max(cfg.weight_max, 18)
    trunc = TruncationSpec(cfg.u_max, wmax, wmax)
    rng = random.Random(cfg.seed)
    pairs = []
    for _ in range(6):
        i = rng.randint(1, 3)
        j = rng.randint(1, 3)
        b = rng.randint(1, 3)
        pairs.append((i, j, i, b))  # bracket guaranteed nontrivial
    for _ in range(6):
        pairs.append((rng.randint(1, 3), rng.randint(1, 3),
                      rng.randint(1, 4), rng.randint(1, 4)))
    checked = 0
    mismatches = []
    for i, j, a, b in pairs:
        g1, xg1 = xi_first(i, j)
        g2, xg2 = xi_second(a, b)
        lhs_op = xi_image_of_multiplier(commutator(g1, g2))
        probes = [
            GradedPoly.monomial("q", 0, ((i + j, 1), (a, 1), (b, 1)), 1, trunc),
            GradedPoly.monomial("q", 0, ((i, 1), (a, 1), (b, 1)), 1, trunc),
            random_poly("q", trunc, rng),
        ]
        for p in probes:
            lhs = apply_operator(lhs_op, p)
            rhs = (apply_operator(xg1, apply_operator(xg2, p))
                   - apply_operator(xg2, apply_operator(xg1, p)))
            c, m = _poly_diffs(lhs, rhs, f"xi[{i},{j};{a},{b}]")
            # a both-sides-zero comparison still certifies one equality
            checked += max(c, 1)
            mismatches += m
    return _report(cfg.u_max, wmax, checked, mismatches)


def suite_stability(cfg: RunConfig) -> dict:
    """Margin sufficiency: the certified windows of both end-to-end
    identities must be bit-identical when everything is recomputed with
    the margin enlarged by 3."""
    checked = 0
    mismatches = []
    lhs0, rhs0 = tau.theorem1_sides(cfg.u_max, cfg.weight_max,
                                    cfg.margin_extra)
    lhs1, rhs1 = tau.theorem1_sides(cfg.u_max, cfg.weight_max,
                                    cfg.margin_extra + 3)
    for tag, p0, p1 in (("thm1-lhs", lhs0, lhs1), ("thm1-rhs", rhs0, rhs1)):
        c, m = _poly_diffs(p0, p1, f"stability[{tag}]")
        checked += c
        mismatches += m
    (le0, re0), (lh0, rh0) = tau.corollary2_sides(cfg.u_max, cfg.weight_max,
                                                  cfg.margin_extra)
    (le1, re1), (lh1, rh1) = tau.corollary2_sides(cfg.u_max, cfg.weight_max,
                                                  cfg.margin_extra + 3)
    for tag, p0, p1 in (("cor2-lhs", le0, le1), ("cor2-rhs", re0, re1),
                        ("hatb-lhs", lh0, lh1), ("hatb-rhs", rh0, rh1)):
        c, m = _poly_diffs(p0, p1, f"stability[{tag}]")
        checked += c
        mismatches += m
    return _report(cfg.u_max, cfg.weight_max, checked, mismatches)


SUITES = {
    "lemma-c": suite_lemma_c,
    "lemma5": suite_lemma5,
    "prop-quadratic": suite_prop_quadratic,
    "zassenhaus-w": suite_zassenhaus_w,
    "zassenhaus-l": suite_zassenhaus_l,
    "prop-p4": suite_prop_p4,
    "thm1": suite_thm1,
    "cor2": suite_cor2,
    "virasoro": suite_virasoro,
    "eta-pde": suite_eta_pde,
    "xi-iso": suite_xi_iso,
    "stability": suite_stability,
}


def run_suite(name: str, cfg: RunConfig) -> dict:
    try:
        fn = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}")
    return fn(cfg)


def run_all(cfg: RunConfig) -> dict:
    """Aggregate run; per-suite elapsed_ms is wall-clock (the only
    nondeterministic output field anywhere)."""
    suites = []
    total_checked = 0
    total_mismatches = 0
    for name in SUITES:
        t0 = time.monotonic()
        rep = run_suite(name, cfg)
        elapsed_ms = int((time.monotonic() - t0) * 1000)
        suites.append({"suite": name, "elapsed_ms": elapsed_ms, **rep})
        total_checked += rep["checked"]
        total_mismatches += len(rep["mismatches"])
    return {"window": {"u_max": cfg.u_max, "weight_max": cfg.weight_max},
            "checked": total_checked,
            "mismatches": [s["suite"] for s in suites if s["mismatches"]],
            "suites": suites}
