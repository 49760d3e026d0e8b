"""Run the verification battery and read the margins like a dashboard.

Every check reports a worst margin: how much room was left in the tightest
cell of its grid.  Identities sit at the working-precision floor, strict
inequalities keep small positive margins, and the two-sided estimates show
order-one slack.  A negative margin anywhere means a claim failed on that
grid and the exit code says so.

Usage:
    python demos/inequality_tour.py                 # quick selection
    python demos/inequality_tour.py --full          # all 18 checks
    python demos/inequality_tour.py --full --out report.csv
"""

import argparse
import sys

from durrmeyer import check_lemma, report_all, verify_telescoping
from durrmeyer.cli import rows_to_csv

QUICK = ("L1", "L5", "MULT-ID", "EQ24")


def show(rep):
    emp = ("  sup/ratio %.6g" % rep.empirical_constant
           if rep.empirical_constant is not None else "")
    flag = "ok  " if rep.passed else "FAIL"
    print("%s %-10s %4d cells  worst margin %+.3e%s"
          % (flag, rep.check_id, len(rep.rows), rep.worst_margin, emp))
    return rep.passed


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--full", action="store_true",
                    help="run every check, not just the quick selection")
    ap.add_argument("--seed", type=int, default=12345)
    ap.add_argument("--out", help="optional CSV of all rows (full mode)")
    args = ap.parse_args(argv)

    if args.full:
        reports = report_all(seed=args.seed)
    else:
        reports = [check_lemma(lid) for lid in QUICK]
        reports.append(verify_telescoping())

    ok = True
    for rep in reports:
        ok = show(rep) and ok

    if args.out:
        if not args.full:
            print("note: --out writes whatever ran; use --full for all rows")
        rows = [row for rep in reports for row in rep.rows]
        with open(args.out, "w", newline="") as fh:
            fh.write(rows_to_csv(rows))
        print("wrote %s (%d rows)" % (args.out, len(rows)))

    print()
    print("margins read: identity checks hug the precision floor, strict")
    print("monotonicity keeps thin positive room, estimate-style checks")
    print("carry the slack their constants were proved with")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
