"""Partition hook polynomials, their zeros, and asymptotic checks."""

from .asymptotics import (AsymptoticReport, LocalizationVerdict, hardy_ramanujan_main, main_term_large_w,
                          main_term_small_w, ratio_report, rr_claim_check, zero_localization_check)
from .kernels import BACKEND
from .numerics import (PrecComplex, ThetaSpec, dedekind_sum, euler_inf, eval_At, omega, omega_prime,
                       theta_lattice, theta_partition_form, theta_roots_of_unity_form)
from .partitions import (Partition, brute_force_Pt, brute_force_Qn, count_t_hooks, enumerate_partitions,
                         hook_numbers, partition_numbers)
from .poly import WPolynomial
from .roots import RootSet, cauchy_bound, find_roots, theta_zeros
from .series import (QSeries, RationalPair, evaluate_wpoly, expand_Ht, expand_pab, expand_Qn, expand_tcore,
                     series_mul_factor)

__version__ = "0.1.0"
