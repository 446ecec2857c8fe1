"""Run the acceptance criteria and print one line per criterion.

    python3 scripts/run_acceptance.py [--rng-seed N] [--only TAG ...]
"""
import argparse
import sys

from tropclust.acceptance import AcceptanceConfig, run_acceptance


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--rng-seed", type=int, default=AcceptanceConfig.rng_seed)
    p.add_argument("--only", nargs="*", default=[])
    args = p.parse_args()
    results = run_acceptance(AcceptanceConfig(rng_seed=args.rng_seed), args.only)
    for r in results:
        print(r.line())
    failed = [r.id for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} passed" + (f"; failing: {failed}" if failed else ""))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
