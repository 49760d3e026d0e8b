"""Acceptance gate: thirteen numbered criteria, one pass/fail line each.

Run with `pytest -s tests/test_acceptance.py` to see the per-criterion lines;
without -s they still appear for any failing criterion.  Each criterion is
asserted at its stated tolerance, so a red line here is a real violation,
not a loose check.
"""

import math
import time

from durrmeyer import (
    check_lemma,
    run_direct,
    run_proposition,
    run_theorem1,
    verify_cesaro_contraction,
    verify_eigenstructure,
    verify_kfunc_closed_form,
    verify_telescoping,
)
from durrmeyer.cli import main as cli_main


def _report(ok, crit, detail):
    print("%s %s: %s" % (crit, "PASS" if ok else "FAIL", detail))
    assert ok, "%s: %s" % (crit, detail)


def test_accept_01_multiplier_monotonicity():
    t0 = time.perf_counter()
    rep = check_lemma("L1", rhos=(-0.9, -0.5, 0.0, 0.5, 1.0, 2.5, 6.0),
                      n_max=512)
    elapsed = time.perf_counter() - t0
    strict = all(r.margin > 0.0 for r in rep.rows)
    ok = rep.passed and strict and elapsed < 10.0
    _report(ok, "ACCEPT-01",
            "strict decrease over 7 rho values, 2 <= n <= 512; worst log-gap "
            "%.3e; %.2f s" % (rep.worst_margin, elapsed))


def test_accept_02_successive_degree_identity():
    rep = check_lemma("MULT-ID", n_max=200, tol_identity=1e-12)
    worst = max(r.empirical_constant for r in rep.rows)
    ok = rep.passed and worst <= 1e-12
    _report(ok, "ACCEPT-02",
            "eigenvalue step identity to k = 200, worst relative residual "
            "%.3e <= 1e-12" % worst)


def test_accept_03_eigenstructure():
    rep = verify_eigenstructure(tol=1e-8)
    ok = rep.passed and len(rep.rows) > 0
    _report(ok, "ACCEPT-03",
            "quadrature operator matches diagonal action, worst margin %.3e "
            "at tol 1e-8 (d=1 three weights n<=40 ell<=10; d=2 flat n<=12 "
            "ell<=6)" % rep.worst_margin)


def test_accept_04_direct_estimate():
    rep = run_direct()
    floors = [r.margin for r in rep.rows]
    ok = rep.passed and min(floors) >= -1e-9
    _report(ok, "ACCEPT-04",
            "error <= 2K(1/n) across full suite, p in {1,2,inf}, n dyadic "
            "4..64 (K exact at p=2); worst margin %.3e, %d cells"
            % (min(floors), len(rep.rows)))


def test_accept_05_converse_estimate():
    rep = run_theorem1()
    asserted = [r for r in rep.rows if r.p == 2]
    reported = [r for r in rep.rows if r.p != 2]
    ok = (rep.passed and asserted
          and all(r.margin >= -1e-9 for r in asserted)
          and reported
          and all(r.empirical_constant is not None for r in reported))
    worst = min(r.margin for r in asserted)
    _report(ok, "ACCEPT-05",
            "K(1/n) <= three-term error bound asserted at p=2 (worst margin "
            "%.3e), reported conservatively at p in {1,inf} (%d cells)"
            % (worst, len(reported)))


def test_accept_06_proposition_ratio():
    rep = run_proposition()
    ok = rep.passed and max(r.n for r in rep.rows) == 128
    _report(ok, "ACCEPT-06",
            "K(1/n)_2 <= 3 ||M_n f - f||_2 up to n = 128; worst observed "
            "ratio %.3f" % rep.empirical_constant)


def test_accept_07_closed_form_k():
    rep = verify_kfunc_closed_form(tol=1e-8)
    ok = rep.passed
    _report(ok, "ACCEPT-07",
            "K on eigenfunctions matches min(1, t ell(ell+rho)) to 1e-8, "
            "ell <= 20, 40 scales; worst margin %.3e" % rep.worst_margin)


def test_accept_08_digamma_gap_bounds():
    rep = check_lemma("L5", rhos=(0.0, 0.5, 1.0, 3.0))
    strict = all(r.margin > 0.0 for r in rep.rows)
    ok = rep.passed and strict
    _report(ok, "ACCEPT-08",
            "all five derivative bounds plus the two-sided log bracket, "
            "strict on 200-point tau grids, n in {8..256}, rho in "
            "{0,0.5,1,3}; worst margin %.3e" % rep.worst_margin)


def test_accept_09_second_difference_sums():
    rep = check_lemma("L4", rhos=(0.0, 1.0, 3.0), n_max=2048)
    ok = rep.passed and rep.empirical_constant is not None
    _report(ok, "ACCEPT-09",
            "weighted second-difference sums stabilize over n dyadic "
            "8..2048; published sup %.6f, worst margin %.3e"
            % (rep.empirical_constant, rep.worst_margin))


def test_accept_10_telescoping():
    rep = verify_telescoping(n_max=16, tol=1e-10)
    ok = rep.passed
    _report(ok, "ACCEPT-10",
            "averaged-smoother telescoping identity to 1e-10 for n <= 16; "
            "worst margin %.3e" % rep.worst_margin)


def test_accept_11_multiplier_representations():
    eq = check_lemma("EQ24", n_max=64, tol_identity=1e-10)
    hat = check_lemma("HAT")
    worst_eq = max(r.empirical_constant for r in eq.rows)
    worst_hat = max(r.empirical_constant for r in hat.rows)
    ok = eq.passed and hat.passed and worst_eq <= 1e-10 and worst_hat <= 1e-6
    _report(ok, "ACCEPT-11",
            "combinatorial multiplier form to 1e-10 (worst %.3e) and "
            "hat-weighted integral form to 1e-6 (worst %.3e), n <= 64"
            % (worst_eq, worst_hat))


def test_accept_12_cesaro_contraction():
    rep = verify_cesaro_contraction(tol=1e-12)
    ok = rep.passed
    _report(ok, "ACCEPT-12",
            "Cesaro means never expand the weighted L2 norm, tol 1e-12; "
            "worst margin %.3e" % rep.worst_margin)


def test_accept_13_report_determinism(tmp_path):
    first = tmp_path / "all1.csv"
    second = tmp_path / "all2.csv"
    argv = ["--command", "report-all", "--seed", "12345"]
    rc1 = cli_main(argv + ["--out", str(first)])
    rc2 = cli_main(argv + ["--out", str(second)])
    same = first.read_bytes() == second.read_bytes()
    ok = rc1 == 0 and rc2 == 0 and same
    _report(ok, "ACCEPT-13",
            "two report-all runs with the same seed wrote byte-identical "
            "CSV (%d bytes, exit codes %d/%d)"
            % (first.stat().st_size, rc1, rc2))
