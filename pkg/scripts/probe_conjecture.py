"""Probe Q_lambda(D~) tau.tau on random rational KdV soliton taus.

    python scripts/probe_conjecture.py --trials 20 --max 10 --solitons 3
"""
import argparse
import json
import random
from fractions import Fraction

from qvirasoro.hirota import check_kdv_bilinear, conjecture_probe, kdv_tau


def random_params(rnd, count):
    ps = set()
    while len(ps) < count:
        p = Fraction(rnd.choice([-1, 1]) * rnd.randint(1, 7), rnd.randint(1, 5))
        if p not in ps and -p not in ps:
            ps.add(p)
    return [(p, Fraction(rnd.randint(1, 9), rnd.randint(1, 9))) for p in sorted(ps)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--max", type=int, default=10)
    ap.add_argument("--solitons", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--output", default=None)
    args = ap.parse_args()

    rnd = random.Random(args.seed)
    support = args.max if args.max % 2 else args.max + 1
    results = []
    for trial in range(args.trials):
        params = random_params(rnd, rnd.randint(1, args.solitons))
        tau = kdv_tau(params, support)
        report = conjecture_probe(tau, args.max)
        bad = report.nonzero_outside_esp()
        results.append({
            "params": [[str(p), str(c)] for p, c in params],
            "kdv_bilinear_zero": check_kdv_bilinear(tau),
            "nonzero_outside_esp": [r.partition.to_json() for r in bad],
            "nonzero_in_esp": len(report.nonzero_in_esp()),
        })
        print(f"trial {trial}: N={len(params)} outside-ESP nonzero={len(bad)} inside-ESP nonzero={len(report.nonzero_in_esp())}")
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(results, fh, indent=2)


if __name__ == "__main__":
    main()
