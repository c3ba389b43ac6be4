"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable

from . import hirota, qcalc, virasoro
from .partitions import StrictPartition, straighten, strict_partitions_of
from .polyring import inner_product
from .qcalc import QExpansion

COMMANDS = ("qfun", "act", "matrix", "verify", "bracket", "gram", "identities", "probe")
SUITES = ("identities", "bracket", "gram", "even", "oracle")


@dataclass
class RunConfig:
    command: str
    format: str = "text"
    output: str | None = None
    jobs: int = 1
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        for key in ("max", "n", "kmax"):
            v = self.options.get(key)
            if v is not None and v < 0:
                raise ValueError(f"--{key} must be non-negative")


class UsageError(Exception):
    pass


# -- output helpers -----------------------------------------------------------


def _emit(cfg: RunConfig, payload, text: str) -> None:
    out = json.dumps(payload, indent=2, ensure_ascii=False) + "\n" if cfg.format == "json" else text + "\n"
    if cfg.output:
        Path(cfg.output).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)


def _parse_frac(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {s!r}") from exc


def _partition(parts: list[int]) -> StrictPartition:
    try:
        return StrictPartition(tuple(parts))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


# -- commands -----------------------------------------------------------------


def cmd_qfun(cfg: RunConfig) -> int:
    seq = tuple(cfg.options["parts"])
    if any(s < 0 for s in seq):
        raise UsageError("Q-function labels must be non-negative")
    res = straighten(seq)
    poly = qcalc.Q_of_sequence(seq)
    payload = {
        "sequence": list(seq),
        "straightened": None if res.is_zero else {
            "coeff": str(res.coefficient),
            "partition": res.partition.to_json(),
        },
        "polynomial": poly.to_json(),
    }
    _emit(cfg, payload, str(poly))
    return 0


def cmd_act(cfg: RunConfig) -> int:
    k = cfg.options["k"]
    lam = _partition(cfg.options["parts"])
    method = cfg.options.get("method", "both")
    diff = qcalc.expand_in_Q(virasoro.act_diff(k, qcalc.Q(lam))) if method in ("diff", "both") else None
    closed = virasoro.act_closed(k, QExpansion({lam: 1})) if method in ("closed", "both") else None
    result = diff if diff is not None else closed
    payload = {"k": k, "partition": lam.to_json(), "method": method, "expansion": result.to_json()}
    text = str(result)
    code = 0
    if method == "both":
        agree = diff == closed
        payload["agree"] = agree
        if not agree:
            payload["closed"] = closed.to_json()
            code = 1
        text += f"\nagree={str(agree).lower()}"
    _emit(cfg, payload, text)
    return code


def cmd_matrix(cfg: RunConfig) -> int:
    M = virasoro.matrix_of_L(cfg.options["k"], cfg.options["n"], jobs=cfg.jobs)
    lines = [f"L_{M.k}: V({M.n}) -> V({M.n - 2 * M.k})", "cols: " + " ".join(map(str, M.cols))]
    for mu, row in zip(M.rows, M.entries):
        lines.append(f"{mu}: " + " ".join(str(x) for x in row))
    _emit(cfg, M.to_json(), "\n".join(lines))
    return 0


def _suite_checks(suite: str, opts: dict) -> Iterable[tuple[str, Callable[[], bool]]]:
    """Yield (label, zero-argument check) pairs for a verification suite."""
    if suite == "identities":
        bound = opts.get("max") if opts.get("max") is not None else 9
        for n in range(bound + 1):
            for lam in strict_partitions_of(n):
                yield f"quadratic{lam}", _bind(qcalc.check_quadratic_relation, lam)
        for case in (1, 2, 3, 4):
            odd = case in (1, 3)
            for ell in range(0, 5):
                if (ell % 2 == 1) != odd or (ell == 0 and not odd):
                    continue
                for alpha in qcalc.nonnegative_sequences(ell, bound):
                    room = bound - sum(alpha)
                    for x in range(room + 1):
                        for y in range(room - x + 1) if case in (3, 4) else (0,):
                            yield f"lemma1.{case}{alpha},{x},{y}", _bind(qcalc.check_lemma1, case, alpha, x, y)
        for m in range(1, 5):
            yield f"prop1(m={m})", _bind(qcalc.check_prop1, m)
        for n in range(bound + 2):
            for k in (1, 2):
                yield f"L-{k}q{n}", _bind(_lowered_q_ok, k, n)
    elif suite == "bracket":
        n_max, kmax = _n(opts, 8), _kmax(opts, 3)
        for n in range(n_max + 1):
            for k in range(-kmax, kmax + 1):
                for l in range(-kmax, kmax + 1):
                    yield f"[L{k},L{l}]@V({n})", _bind(virasoro.check_virasoro_bracket, k, l, n)
    elif suite == "gram":
        n_max, kmax = _n(opts, 8), _kmax(opts, 3)
        for n in range(n_max + 1):
            yield f"orthogonal@V({n})", _bind(_orthogonal, n)
            for k in range(1, kmax + 1):
                yield f"contravariant(k={k})@V({n})", _bind(virasoro.check_contravariance, k, n)
    elif suite == "even":
        for n in range(_n(opts, 10) + 1):
            yield f"even@V({n})", _bind(virasoro.check_even_invariance, n)
    elif suite == "oracle":
        n_max, kmax = _n(opts, 10), _kmax(opts, 4)
        for n in range(n_max + 1):
            for lam in strict_partitions_of(n):
                for k in range(1, kmax + 1):
                    yield f"L-{k}Q{lam}", _bind(virasoro.oracle_agrees, -k, lam)
                    yield f"L{k}Q{lam}", _bind(virasoro.oracle_agrees, k, lam)
    else:
        raise UsageError(f"unknown suite {suite!r}")


def _n(opts, default):
    return opts["n"] if opts.get("n") is not None else default


def _kmax(opts, default):
    return opts["kmax"] if opts.get("kmax") is not None else default


class _bind:
    """Picklable partial application (so checks can be shipped to workers)."""

    def __init__(self, fn, *args):
        self.fn, self.args = fn, args

    def __call__(self):
        return self.fn(*self.args)


def _lowered_q_ok(k: int, n: int) -> bool:
    return virasoro.act_diff(-k, qcalc.q(n)) == virasoro.lowered_q_formula(k, n)


def _orthogonal(n: int) -> bool:
    basis = strict_partitions_of(n)
    for i, lam in enumerate(basis):
        if qcalc.norm_squared(lam) == 0:
            return False
        for mu in basis[i + 1:]:
            if inner_product(qcalc.Q(lam), qcalc.Q(mu)) != 0:
                return False
    return True


def _run(check) -> bool:
    return check()


def run_suite(suite: str, opts: dict, jobs: int = 1) -> dict:
    checks = list(_suite_checks(suite, opts))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run, [c for _, c in checks], chunksize=16))
    else:
        results = [c() for _, c in checks]
    failures = [label for (label, _), ok in zip(checks, results) if not ok]
    return {"suite": suite, "checks": len(checks), "failures": failures, "passed": not failures}


def cmd_verify(cfg: RunConfig) -> int:
    report = run_suite(cfg.options["suite"], cfg.options, cfg.jobs)
    text = f"{report['suite']}: {report['checks'] - len(report['failures'])}/{report['checks']} passed"
    if report["failures"]:
        text += "\nfailed: " + ", ".join(report["failures"])
    _emit(cfg, report, text)
    return 0 if report["passed"] else 1


def parse_solitons(spec: str) -> list[tuple[Fraction, Fraction]]:
    """'none' | 'p[:c],p[:c],...' -> [(p, c), ...]; c defaults to 1."""
    spec = spec.strip()
    if spec.lower() in ("none", ""):
        return []
    out = []
    for item in spec.split(","):
        p, _, c = item.partition(":")
        out.append((_parse_frac(p), _parse_frac(c) if c else Fraction(1)))
    return out


def cmd_probe(cfg: RunConfig) -> int:
    params = parse_solitons(cfg.options["solitons"])
    max_weight = cfg.options["max"] if cfg.options.get("max") is not None else 8
    support = cfg.options.get("support") or (max_weight if max_weight % 2 else max_weight + 1)
    try:
        tau = hirota.kdv_tau(params, max(support, 1))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    kdv_ok = hirota.check_kdv_bilinear(tau)
    report = hirota.conjecture_probe(tau, max_weight)
    payload = {
        "solitons": [{"p": str(p), "c": str(c)} for p, c in params],
        "max_weight": max_weight,
        "support": tau.support,
        "kdv_bilinear_zero": kdv_ok,
        "records": report.to_json(),
    }
    if report.nonzero_outside_esp() or not kdv_ok:
        payload["note"] = hirota.NORMALIZATION_NOTE
    text = f"KdV bilinear identity: {'zero' if kdv_ok else 'NONZERO'}\n" + report.summary()
    _emit(cfg, payload, text)
    return 0


HANDLERS = {
    "qfun": cmd_qfun,
    "act": cmd_act,
    "matrix": cmd_matrix,
    "verify": cmd_verify,
    "probe": cmd_probe,
}


# -- argument parsing -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    common.add_argument("--config", default=None, help="JSON or YAML file with flag defaults")

    parser = argparse.ArgumentParser(prog="qvirasoro", description="Schur Q-functions and the Virasoro action.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qfun", parents=[common], help="print Q_alpha as a polynomial")
    p.add_argument("parts", type=int, nargs="*")

    p = sub.add_parser("act", parents=[common], help="L_k Q_lambda in the Q-basis")
    p.add_argument("k", type=int)
    p.add_argument("parts", type=int, nargs="*")
    p.add_argument("--method", choices=("diff", "closed", "both"), default="both")

    p = sub.add_parser("matrix", parents=[common], help="matrix of L_k on V(n)")
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    _bound_flags(p)

    for name in ("bracket", "gram", "identities"):
        p = sub.add_parser(name, parents=[common], help=f"same as 'verify {name}'")
        _bound_flags(p)

    p = sub.add_parser("probe", parents=[common], help="KdV conjecture probe on soliton taus")
    p.add_argument("--solitons", default="none", help="'none' or comma list of p[:c]")
    p.add_argument("--max", type=int, default=8)
    p.add_argument("--support", type=int, default=None, help="largest odd time kept in the tau")
    return parser


def _bound_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max", type=int, default=None, help="size bound (identities)")
    p.add_argument("--n", type=int, default=None, help="degree bound")
    p.add_argument("--kmax", type=int, default=None, help="largest |k|")


def _load_config(path: str) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    if path.endswith((".yaml", ".yml")):
        import yaml

        data = yaml.safe_load(text)
    else:
        data = json.loads(text)
    if not isinstance(data, dict):
        raise UsageError("config file must hold a mapping")
    return data


def _config_path(argv: list[str]) -> str | None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)
    return known.config


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        path = _config_path(argv)
        if path:
            defaults = _load_config(path)
            for action in parser._subparsers._group_actions:
                for subparser in action.choices.values():
                    subparser.set_defaults(**defaults)
        args = parser.parse_args(argv)
        opts = {k: v for k, v in vars(args).items() if k not in ("command", "format", "output", "jobs", "config")}
        command = args.command
        if command in ("bracket", "gram", "identities"):
            opts["suite"] = command
            command_handler = cmd_verify
        else:
            command_handler = HANDLERS[command]
        cfg = RunConfig(args.command, args.format, args.output, args.jobs, opts)
        return command_handler(cfg)
    except (UsageError, ValueError, OSError) as exc:
        print(f"qvirasoro: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2


if __name__ == "__main__":
    sys.exit(main())
