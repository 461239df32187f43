"""Mertens sums over quadratic number fields.

Library layout:
  quadfield     discriminants, Kronecker characters, small sieves
  coeffs        a_n / mu_K / Lambda^K coefficient tables and M_K(x)
  lvalues       L(1,chi), L'/L(1,chi), zeta_K at integers (special values)
  mstar         the residue series M_K*(x), thresholds, counterexample search
  zeros         critical-line Hardy functions, zero finding, zero-list I/O
  oscillation   explicit-formula sums, smoothed h*_{K,T}(t), residuals
  distribution  empirical logarithmic distribution of e^{-y/2} M_K(e^y)
  cli           command-line front end (console script `mertensq`)
"""

from .coeffs import (CoeffTables, build_tables, coeff_growth_check, dump_tables,
                     load_tables, mertens, mertens_right_limit)
from .distribution import (EmpiricalDist, bessel_j0_tilde, beta_partial,
                           empirical_cf, log_density, nu_hat_theoretical,
                           sample_phi, weak_mertens_integral)
from .errors import (AccuracyError, DomainError, MultiplicityError,
                     PhaseMissingError, ResourceError, ZeroFileFormatError)
from .lvalues import (EULER_GAMMA, SpecialValue, digamma_shift, l_at_one,
                      l_log_deriv_at_one, zeta_k_at_integer, zeta_k_log_deriv)
from .mstar import (MStarEval, counterexample_search, mstar, mstar_imaginary,
                    mstar_lower_bound_imaginary, mstar_real,
                    mstar_threshold_check_real, residue_at_negative_k,
                    table_scan, trivial_zero_residue_bound)
from .oscillation import (HStarScan, OscSum, explicit_formula_residual, h_star,
                          h_star_scan, jp_kernel, osc_sum)
from .quadfield import (Character, QuadField, character_for,
                        fundamental_discriminants, is_fundamental_discriminant,
                        kronecker, quad_field)
from .zeros import (ZeroRecord, ZeroSet, count_sanity, expected_count,
                    find_zeros, hardy_z_dirichlet, hardy_z_zeta,
                    j_minus_one_partial, read_zeros, write_zeros)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError", "Character", "CoeffTables", "DomainError", "EULER_GAMMA",
    "EmpiricalDist", "HStarScan", "MStarEval", "MultiplicityError", "OscSum",
    "PhaseMissingError", "QuadField", "ResourceError", "SpecialValue",
    "ZeroFileFormatError", "ZeroRecord", "ZeroSet", "bessel_j0_tilde",
    "beta_partial", "build_tables", "character_for", "coeff_growth_check",
    "count_sanity", "counterexample_search", "digamma_shift", "dump_tables",
    "empirical_cf", "expected_count", "explicit_formula_residual",
    "find_zeros", "fundamental_discriminants", "h_star", "h_star_scan",
    "hardy_z_dirichlet", "hardy_z_zeta", "is_fundamental_discriminant",
    "j_minus_one_partial", "jp_kernel", "kronecker", "l_at_one",
    "l_log_deriv_at_one", "load_tables", "log_density", "mertens",
    "mertens_right_limit", "mstar", "mstar_imaginary",
    "mstar_lower_bound_imaginary", "mstar_real", "mstar_threshold_check_real",
    "nu_hat_theoretical", "osc_sum", "quad_field", "read_zeros",
    "residue_at_negative_k", "sample_phi", "table_scan",
    "trivial_zero_residue_bound", "weak_mertens_integral", "write_zeros",
    "zeta_k_at_integer", "zeta_k_log_deriv",
]
