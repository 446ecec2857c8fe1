"""Check quantum dilogarithm identities along Y-system periods at increasing
truncation orders and report the timing of each order."""
import argparse
import time

from tropclust.dynkin import dynkin
from tropclust.exchange import ExchangeMatrix
from tropclust.periodicity import build_ysystem_quiver, composite_sequence
from tropclust.quantum import verify_qdi
from tropclust.reference_tables import A2_B, A2_SEQUENCE


def cases():
    yield "pentagon", ExchangeMatrix(A2_B), A2_SEQUENCE
    for label, level in (("A2", 2), ("A3", 2), ("A1", 4)):
        X = dynkin(label)
        q = build_ysystem_quiver(X, level)
        yield f"({label},{level})", q.B, composite_sequence(q, 2 * (X.coxeter + level))


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--orders", type=int, nargs="*", default=[4, 6, 8])
    args = p.parse_args()
    for name, B, seq in cases():
        for order in args.orders:
            t0 = time.perf_counter()
            rep = verify_qdi(B, seq, order)
            dt = time.perf_counter() - t0
            print(f"{name:10} order={order} length={len(seq):3d} {'ok' if rep.ok else 'FAIL'} {dt:7.2f}s")


if __name__ == "__main__":
    main()
