"""Certify Y-system half periods h + level for a table of (X, level) pairs and
print the minimal half period, the permutation and the central charges."""
import argparse
import time

from tropclust.dilog import verify_di6
from tropclust.dynkin import dynkin
from tropclust.periodicity import verify_ysystem_period

DEFAULT = ["A1:2", "A1:3", "A1:4", "A1:5", "A2:2", "A2:3", "A3:2", "A3:3", "A4:2", "D4:2"]


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("cases", nargs="*", default=DEFAULT, help="entries like A3:3")
    args = p.parse_args()
    print(f"{'case':8} {'rank':>4} {'h+l':>4} {'minimal':>7} {'nu (1-based)':24} {'charge':>10} {'seconds':>8}")
    for case in args.cases:
        label, level = case.split(":")
        X, level = dynkin(label), int(level)
        t0 = time.perf_counter()
        rep = verify_ysystem_period(X, level)
        charge = verify_di6(X, level)
        dt = time.perf_counter() - t0
        nu = str(rep.half.nu_one_based())
        status = "ok" if rep.ok and charge.passed else "FAIL"
        print(
            f"({label},{level})".ljust(8),
            f"{X.rank * (level - 1):4d} {rep.half_steps:4d} {rep.minimal_steps:7d} {nu[:24]:24} {charge.lhs:10.6f} {dt:8.2f} {status}",
        )


if __name__ == "__main__":
    main()
