"""Tour of the spectral side: eigenvalues, multipliers, and the continuous
extension in the band parameter.

The operator acts diagonally on the orthonormal degree basis.  This script
prints mu(n, ell) tables for a chosen weight, shows the strict decrease of
the derived multipliers nu(n, ell), and samples the continuous extension
mu_n(tau) together with the digamma factor that drives its derivative.

Usage:
    python demos/spectral_overview.py
    python demos/spectral_overview.py --rho 3 --n 12 24 48 --out spectral.csv
"""

import argparse
import csv
import sys

import numpy as np

from durrmeyer import (
    c_n,
    config_for_rho,
    eigenvalue_mu_all,
    mu_continuous,
    multiplier_nu_all,
)


def eigenvalue_table(cfg, ns, ell_max):
    print("eigenvalues mu(n, ell), rho = %g" % cfg.rho)
    header = "ell  " + "".join("%12s" % ("n=%d" % n) for n in ns)
    print(header)
    rows = []
    for ell in range(ell_max + 1):
        vals = []
        for n in ns:
            mu = eigenvalue_mu_all(cfg, n)
            vals.append(mu[ell] if ell <= n else 0.0)
        print("%3d  " % ell + "".join("%12.6f" % v for v in vals))
        rows.append((ell, vals))
    return rows


def multiplier_table(cfg, ns, ell_max):
    print()
    print("multipliers nu(n, ell) = ell(ell+rho) mu / (n (1 - mu))")
    print("each column decreases strictly in ell; that monotonicity is the")
    print("engine behind the summability results")
    header = "ell  " + "".join("%12s" % ("n=%d" % n) for n in ns)
    print(header)
    for ell in range(1, ell_max + 1):
        vals = []
        for n in ns:
            nu = multiplier_nu_all(cfg, n)
            vals.append(nu[ell - 1] if ell <= n else 0.0)
        print("%3d  " % ell + "".join("%12.6f" % v for v in vals))


def continuous_extension(cfg, n):
    print()
    print("continuous extension mu_%d(tau) and the digamma gap C_%d(tau)" % (n, n))
    print("mu_n'(tau) = -mu_n(tau) C_n(tau), so C_n > 0 makes mu_n decrease")
    taus = np.linspace(0.25, n - 0.25, 8)
    print("%8s %14s %14s" % ("tau", "mu_n(tau)", "C_n(tau)"))
    for tau in taus:
        print("%8.3f %14.8f %14.6f" % (tau, mu_continuous(cfg, n, tau),
                                       c_n(cfg, n, tau)))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rho", type=float, default=1.0,
                    help="spectral parameter of the symmetric weight (default 1)")
    ap.add_argument("--n", type=int, nargs="+", default=[8, 16, 32],
                    help="operator degrees to tabulate")
    ap.add_argument("--ell-max", type=int, default=8)
    ap.add_argument("--out", help="optional CSV with the eigenvalue table")
    args = ap.parse_args(argv)

    if args.rho <= -1.0:
        ap.error("rho must be > -1")
    cfg = config_for_rho(args.rho)
    ns = sorted(set(args.n))
    rows = eigenvalue_table(cfg, ns, args.ell_max)
    multiplier_table(cfg, ns, min(args.ell_max, min(ns)))
    continuous_extension(cfg, ns[-1])

    if args.out:
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["ell"] + ["mu_n%d" % n for n in ns])
            for ell, vals in rows:
                writer.writerow([ell] + ["%.17g" % v for v in vals])
        print()
        print("wrote %s" % args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
