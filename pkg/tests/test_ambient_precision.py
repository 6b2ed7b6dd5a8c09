"""Results must not depend on mpmath's global precision.

The autouse fixture in conftest raises the ambient precision for oracle
arithmetic, which would hide a library call that rounds to the global
setting; these tests pin the ambient precision explicitly.
"""

from fractions import Fraction

import mpmath as mp
import pytest

from hookpoly.asymptotics import main_term_large_w, main_term_small_w, ratio_report
from hookpoly.numerics import (ThetaSpec, euler_inf, eval_At, theta_lattice, theta_partition_form,
                               theta_roots_of_unity_form)
from hookpoly.poly import WPolynomial
from hookpoly.records import evaluation_json, roots_csv
from hookpoly.roots import find_roots
from hookpoly.series import evaluate_wpoly, expand_Ht

CASES = {
    "euler": lambda: euler_inf(mp.mpc(0.375, -0.25)).value,
    "theta_lattice": lambda: theta_lattice(ThetaSpec(5, 2), mp.mpc(0.4375, 0.125)).value,
    "theta_partition": lambda: theta_partition_form(ThetaSpec(5, 2), mp.mpc(0.4375, 0.125)).value,
    "theta_roots": lambda: theta_roots_of_unity_form(ThetaSpec(5, 2), mp.mpc(0.4375, 0.125)).value,
    "At0": lambda: eval_At(7, 0, 100).value,
    "At": lambda: eval_At(8, Fraction(1, 50), 60).value,
    "small_w": lambda: main_term_small_w(7, 100, 0).value,
    "large_w": lambda: main_term_large_w(7, 5, 103, 3).modulus,
    "wpoly": lambda: evaluate_wpoly(expand_Ht(7, 40)[40], mp.mpc(1.5, 0.25)).value,
    "roots": lambda: [r.value for r in find_roots(WPolynomial([-2, 0, 1])).roots],
    "roots_csv": lambda: roots_csv(find_roots(WPolynomial([-2, 0, 3]))),
    "report": lambda: ratio_report(7, 5, 3, [103]).csv_rows(),
    "json": lambda: evaluation_json(7, None, 0, eval_At(7, 0, 50), "A_t/series"),
}


def _run(fn, prec):
    with mp.workprec(prec):
        out = fn()
    return repr(out)


@pytest.mark.parametrize("name", sorted(CASES))
def test_independent_of_ambient_precision(name):
    assert _run(CASES[name], 53) == _run(CASES[name], 300)


def test_roots_csv_digits():
    with mp.workprec(53):
        text = roots_csv(find_roots(WPolynomial([-2, 0, 1])))
    last = text.splitlines()[-1].split(",")[0]
    assert last.startswith("1.41421356237309504880168872420969807")


def test_At_error_bound_is_honest():
    # compare against a run at twice the precision
    with mp.workprec(53):
        lo = eval_At(7, 0, 100, prec=128)
        hi = eval_At(7, 0, 100, prec=256)
    with mp.workprec(300):
        assert abs(lo.value - hi.value) <= lo.err + hi.err
