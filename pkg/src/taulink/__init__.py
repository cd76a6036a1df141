"""Exact-arithmetic toolkit for the tau-function correspondence.

Everything is computed over the rationals with explicit truncation
windows; no floats, no approximation. The public surface groups as

* coefficient sequences and rational helpers (``core``),
* one-variable Laurent/power series with honest windows (``series``),
* exponentials of first-order derivations (``derivation``),
* the named series and coefficient families (``named``),
* symmetric two-index tables (``bivariate``),
* graded polynomials and differential operators (``grading``,
  ``operators``),
* correlator recursion and generating series (``correlators``, ``tau``),
* verification suites (``verify``) plus the HTTP facade (``service``)
  and its command-line client (``cli``).
"""

__version__ = "0.1.0"

from .config import RunConfig, default_weight_max
from .core import (SequenceTable, bernoulli_numbers, double_factorial,
                   format_rational, parse_rational, saddle_coefficients,
                   stirling_coefficients)
from .correlators import CorrelatorTable, admissible, genus, make_solver
from .derivation import (LOWERING, RAISING, DerivationCoeffs,
                         apply_exponential, apply_exponential_iterated,
                         derivation_image, solve_coefficients)
from .grading import GradedPoly, TruncationSpec, monomial_weight, random_poly
from .named import (NAMED_SERIES, coefficient_table, lowering_coefficients,
                    pde_flow_coefficients, series_eta1, series_f, series_h,
                    series_psi, series_stirling, series_theta,
                    series_theta_of_f, series_v, series_w,
                    stirling_flow_coefficients)
from .bivariate import (SymBivariate, series_Q, series_QB, series_T)
from .operators import (DiffOperator, apply_operator, build_Bt, build_Lm,
                        build_P, build_Pt, build_Qplus, build_QtW,
                        build_Vhat, build_Vtilde, build_W, build_Xm,
                        build_Ym, classical_map, commutator, exp_apply,
                        flow_map, phi_polynomials, substitute, sum_scaled)
from .series import LaurentSeries, WindowError
from .tau import (HodgePair, TauSeries, build_fh, fk_series, solve_fk,
                  verify_corollary2, verify_theorem1, verify_virasoro)
from .verify import SUITES, run_all, run_suite

__all__ = [
    "__version__",
    "RunConfig", "default_weight_max",
    "SequenceTable", "bernoulli_numbers", "double_factorial",
    "format_rational", "parse_rational", "saddle_coefficients",
    "stirling_coefficients",
    "CorrelatorTable", "admissible", "genus", "make_solver",
    "LOWERING", "RAISING", "DerivationCoeffs", "apply_exponential",
    "apply_exponential_iterated", "derivation_image", "solve_coefficients",
    "GradedPoly", "TruncationSpec", "monomial_weight", "random_poly",
    "NAMED_SERIES", "coefficient_table", "lowering_coefficients",
    "pde_flow_coefficients", "series_eta1", "series_f", "series_h",
    "series_psi", "series_stirling", "series_theta", "series_theta_of_f",
    "series_v", "series_w", "stirling_flow_coefficients",
    "SymBivariate", "series_Q", "series_QB", "series_T",
    "DiffOperator", "apply_operator", "build_Bt", "build_Lm", "build_P",
    "build_Pt", "build_Qplus", "build_QtW", "build_Vhat", "build_Vtilde",
    "build_W", "build_Xm", "build_Ym", "classical_map", "commutator",
    "exp_apply", "flow_map", "phi_polynomials", "substitute", "sum_scaled",
    "LaurentSeries", "WindowError",
    "HodgePair", "TauSeries", "build_fh", "fk_series", "solve_fk",
    "verify_corollary2", "verify_theorem1", "verify_virasoro",
    "SUITES", "run_all", "run_suite",
]
