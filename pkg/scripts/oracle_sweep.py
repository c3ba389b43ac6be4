"""Cross-check closed-form L_k Q_lambda against the differential action.

    python scripts/oracle_sweep.py --n 12 --kmax 5
"""
import argparse
import time

from qvirasoro.partitions import strict_partitions_of
from qvirasoro.virasoro import oracle_agrees


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=10)
    ap.add_argument("--kmax", type=int, default=4)
    args = ap.parse_args()

    print(f"{'k':>4} " + " ".join(f"{n:>4}" for n in range(args.n + 1)))
    total_bad = 0
    for k in [k for k in range(-args.kmax, args.kmax + 1) if k]:
        row = []
        for n in range(args.n + 1):
            basis = strict_partitions_of(n)
            good = sum(oracle_agrees(k, lam) for lam in basis)
            total_bad += len(basis) - good
            row.append("ok" if good == len(basis) else f"{good}/{len(basis)}")
        print(f"{k:>4} " + " ".join(f"{c:>4}" for c in row))
    print(f"disagreements: {total_bad}  ({time.process_time():.1f}s cpu)")


if __name__ == "__main__":
    main()
