"""Command-line interface.  Mutation indices are 1-based on input and output.

Every check is reported as one JSON object per line with the keys
``id, status, lhs, rhs, tol, detail`` (or as aligned text with
``--format text``).  Exit status is 0 exactly when every reported check passes.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .acceptance import AcceptanceConfig, run_acceptance, sample_rng
from .dilog import (
    classical_di_reports,
    random_full_grid_init,
    random_positive_rational,
    verify_di6,
    verify_di7,
    verify_functional_identities,
)
from .dynkin import dynkin
from .exchange import ExchangeMatrix
from .periodicity import cvector_tableau, detect_period, verify_ysystem_period, ysystem_domain, ysystem_iterate
from .quantum import default_order, verify_qdi
from .seed import Falsification, var_names
from .tropical import run_sequence


class InputError(Exception):
    """Malformed user input (exit status 2)."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    matrix_source: str | None = None
    sequence: tuple[int, ...] = ()
    dynkin_type: str | None = None
    level: int | None = None
    order: int | None = None
    tolerance: float | None = None
    samples: int = 100
    rng_seed: int = 2024
    output_format: str = "json"
    only: tuple[str, ...] = field(default=())
    timings: bool = False
    identities: tuple[str, ...] = field(default=())


DILOG_IDENTITIES = (
    "euler",
    "pentagon",
    "pentagon-product-form",
    "rogers-vs-li2",
    "rogers-negative-argument",
    "classical-signed",
    "classical-count-minus",
    "classical-count-plus",
)


def _json_default(obj):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    return str(obj)


def load_matrix(source: str) -> ExchangeMatrix:
    """``source`` is a path to ``{"B": [[int]], "d": [int]?}`` or that JSON inline."""
    text = source if source.lstrip().startswith("{") else None
    if text is None:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {source}: {exc}") from exc
    if not isinstance(data, dict) or "B" not in data:
        raise InputError('matrix JSON must be an object with key "B"')
    b, d = data["B"], data.get("d")
    if not isinstance(b, list) or not all(isinstance(r, list) and all(isinstance(v, int) for v in r) for r in b):
        raise InputError('"B" must be a list of integer rows')
    try:
        return ExchangeMatrix(b, d)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def parse_sequence(text: str, n: int | None = None) -> tuple[int, ...]:
    """``"1,2,1"`` to 0-based ``(0, 1, 0)``."""
    text = text.strip()
    if not text:
        return ()
    try:
        seq = tuple(int(p) - 1 for p in text.split(","))
    except ValueError as exc:
        raise InputError(f"bad mutation sequence {text!r}") from exc
    if any(k < 0 for k in seq):
        raise InputError("mutation indices are 1-based")
    if n is not None and any(not 0 <= k < n for k in seq):
        raise InputError(f"mutation indices must lie in 1..{n}")
    return seq


def _one_based(seq: Sequence[int]) -> list[int]:
    return [k + 1 for k in seq]


def _report(id: str, ok: bool, lhs, rhs, tol, detail=None) -> dict:
    return {"id": id, "status": "pass" if ok else "fail", "lhs": lhs, "rhs": rhs, "tol": tol, "detail": detail or {}}


def _emit(records: list[dict], fmt: str, out) -> None:
    for rec in records:
        if fmt == "json":
            out.write(json.dumps(rec, sort_keys=True, default=_json_default) + "\n")
        elif "status" not in rec:
            out.write(" ".join(f"{k}={json.dumps(v, default=_json_default)}" for k, v in rec.items()) + "\n")
        else:
            out.write(f"{rec.get('status', '').upper():5} {rec['id']}: lhs={rec['lhs']} rhs={rec['rhs']} tol={rec['tol']}\n")


# commands --------------------------------------------------------------------
def cmd_mutate(cfg: RunConfig) -> list[dict]:
    B = load_matrix(cfg.matrix_source)
    seq = cfg.sequence
    if any(not 0 <= k < B.n for k in seq):
        raise InputError(f"mutation indices must lie in 1..{B.n}")
    run = run_sequence(B, seq, universal=True, principal=True)
    n = B.n
    names = var_names(n)
    records = []
    for st in run.steps:
        t = st.tropical
        records.append(
            {
                "id": f"seed-{st.index}",
                "t": st.index,
                "k": None if st.k is None else st.k + 1,
                "eps": st.eps,
                "B": st.B.tolist(),
                "x": [v.to_str(names) for v in st.universal.x],
                "y": [v.to_str(names[n:]) for v in st.universal.y],
                "C": t.C.tolist(),
                "G": t.G.tolist(),
                "F": [f.to_str(names[n:]) for f in t.F] if t.F else ["1"] * n,
            }
        )
    if cfg.output_format == "text":
        return [{"text": cvector_tableau(run)}] + records
    return records


def cmd_period(cfg: RunConfig) -> list[dict]:
    B = load_matrix(cfg.matrix_source)
    seq = cfg.sequence
    if any(not 0 <= k < B.n for k in seq):
        raise InputError(f"mutation indices must lie in 1..{B.n}")
    run = run_sequence(B, seq)
    cert = detect_period(B, seq, run=run)
    detail = {"sequence": _one_based(seq), "signs": list(run.signs)}
    if cert is None:
        return [_report("period", False, None, "permutation nu", "exact", detail)]
    detail.update(half=cert.half, method=cert.method, C=cert.C.tolist())
    return [_report("period", True, cert.nu_one_based(), "permutation nu", "exact", detail)]


def cmd_ysystem(cfg: RunConfig) -> list[dict]:
    try:
        X = dynkin(cfg.dynkin_type)
    except (KeyError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    level = cfg.level
    if level is None or level < 2:
        raise InputError("--level must be at least 2")
    rep = verify_ysystem_period(X, level)
    h = X.coxeter
    out = [
        _report(
            "ysystem-period", rep.ok and rep.half_steps == h + level, rep.half_steps, h + level, "exact",
            {
                "nu": rep.half.nu_one_based() if rep.half else None,
                "full_period_certified": rep.full is not None,
                "minimal_steps": rep.minimal_steps,
                "cross_validated": rep.cross_validated,
            },
        )
    ]
    period = 2 * (h + level)
    init = random_full_grid_init(X, level, sample_rng(cfg.rng_seed, "cli-ysystem"))
    Y = ysystem_iterate(X, level, init, period + 1)
    back = all(Y[(a, m, u + period)] == Y[(a, m, u)] for u in (0, 1) for a, m in ysystem_domain(X, level, u, None))
    out.append(_report("exact-periodicity", back, f"Y(u + {period})", "Y(u)", "exact"))
    di6 = verify_di6(X, level)
    out.append(_report(di6.id, di6.passed, di6.lhs, di6.rhs, di6.tol, {"sample": di6.sample}))
    di7 = verify_di7(X, level, init)
    out.append(_report(di7.id, di7.passed, di7.lhs, di7.rhs, di7.tol, {"sample": di7.sample}))
    return out


def cmd_dilog_check(cfg: RunConfig) -> list[dict]:
    out = []
    reps = verify_functional_identities(cfg.samples, sample_rng(cfg.rng_seed, "cli-functional"))
    by_id: dict[str, list] = {}
    for r in reps:
        by_id.setdefault(r.id, []).append(r)
    for id, rs in by_id.items():
        worst = max(rs, key=lambda r: r.diff)
        out.append(
            _report(id, all(r.passed for r in rs), worst.lhs, worst.rhs, worst.tol, {"samples": len(rs), "worst": worst.sample})
        )
    if cfg.matrix_source is not None:
        B = load_matrix(cfg.matrix_source)
        if any(not 0 <= k < B.n for k in cfg.sequence):
            raise InputError(f"mutation indices must lie in 1..{B.n}")
        if detect_period(B, cfg.sequence) is None:
            return out + [_report("classical-period", False, None, "certified period", "exact", {"error": "sequence is not a certified period"})]
        tol = cfg.tolerance or 1e-9
        agg: dict[str, list] = {}
        for s in range(cfg.samples):
            rng = sample_rng(cfg.rng_seed, "cli-classical", s)
            init = [random_positive_rational(rng) for _ in range(B.n)]
            for key, rep in classical_di_reports(B, cfg.sequence, init, tol).items():
                agg.setdefault(key, []).append(rep)
        for key, rs in agg.items():
            worst = max(rs, key=lambda r: r.diff)
            out.append(
                _report(
                    f"classical-{key}", all(r.passed for r in rs), worst.lhs, worst.rhs, tol,
                    {"samples": len(rs), "worst": worst.sample, "N+": worst.n_plus, "N-": worst.n_minus},
                )
            )
    if cfg.identities:
        out = [r for r in out if r["id"] in cfg.identities]
    return out


def cmd_quantum_check(cfg: RunConfig) -> list[dict]:
    B = load_matrix(cfg.matrix_source)
    if not B.is_skew_symmetric():
        raise InputError("quantum checks need a skew-symmetric exchange matrix")
    if any(not 0 <= k < B.n for k in cfg.sequence):
        raise InputError(f"mutation indices must lie in 1..{B.n}")
    try:
        rep = verify_qdi(B, cfg.sequence, cfg.order or default_order(B.n))
    except ValueError as exc:
        return [_report("quantum-identity", False, None, 1, "exact", {"error": str(exc)})]
    return [rep.as_dict()]


def cmd_verify_all(cfg: RunConfig) -> list[dict]:
    try:
        results = run_acceptance(AcceptanceConfig(rng_seed=cfg.rng_seed), cfg.only)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return [r.as_dict(cfg.timings) for r in sorted(results, key=lambda r: r.id)]


COMMANDS = {
    "mutate": cmd_mutate,
    "period": cmd_period,
    "ysystem": cmd_ysystem,
    "dilog-check": cmd_dilog_check,
    "quantum-check": cmd_quantum_check,
    "verify-all": cmd_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropclust", description="Exact cluster mutation, periodicity and dilogarithm checks.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json", dest="output_format")
    common.add_argument("--rng-seed", type=int, default=2024)
    sub = p.add_subparsers(dest="command", required=True)

    def matrix_args(sp, required=True):
        sp.add_argument("--B", dest="matrix_source", required=required, help='path to (or inline) {"B": [[...]], "d": [...]}')
        sp.add_argument("--seq", default="", help="comma-separated 1-based mutation indices")

    sp = sub.add_parser("mutate", parents=[common], help="dump all seeds along a sequence")
    matrix_args(sp)
    sp = sub.add_parser("period", parents=[common], help="certify a period via the tropical criterion")
    matrix_args(sp)
    sp = sub.add_parser("ysystem", parents=[common], help="Y-system periodicity and central charges")
    sp.add_argument("--X", "--type", dest="dynkin_type", required=True, help="simply-laced type, e.g. A3, D4, E6")
    sp.add_argument("--level", type=int, required=True)
    sp.add_argument("--verify-period", action="store_true", help="accepted for clarity; the period is always verified")
    sp = sub.add_parser("dilog-check", parents=[common], help="dilogarithm identities")
    matrix_args(sp, required=False)
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--tol", type=float, default=None, dest="tolerance")
    sp.add_argument("--identity", action="append", default=[], choices=DILOG_IDENTITIES, dest="identities",
                    help="restrict the report to these identities (repeatable)")
    sp = sub.add_parser("quantum-check", parents=[common], help="quantum dilogarithm identity along a period")
    matrix_args(sp)
    sp.add_argument("--order", type=int, default=None)
    sp = sub.add_parser("verify-all", parents=[common], help="run the acceptance criteria")
    sp.add_argument("--only", action="append", default=[], help="criterion numbers or tags, comma separated")
    sp.add_argument("--timings", action="store_true", help="include wall-clock times (output no longer byte-stable)")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    only = tuple(s for chunk in getattr(args, "only", []) for s in chunk.split(",") if s.strip())
    return RunConfig(
        command=args.command,
        matrix_source=getattr(args, "matrix_source", None),
        sequence=parse_sequence(getattr(args, "seq", "") or ""),
        dynkin_type=getattr(args, "dynkin_type", None),
        level=getattr(args, "level", None),
        order=getattr(args, "order", None),
        tolerance=getattr(args, "tolerance", None),
        samples=getattr(args, "samples", 100),
        rng_seed=args.rng_seed,
        output_format=args.output_format,
        only=only,
        timings=getattr(args, "timings", False),
        identities=tuple(getattr(args, "identities", [])),
    )


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        records = COMMANDS[cfg.command](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Falsification as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 1
    text_blocks = [r["text"] for r in records if "text" in r]
    records = [r for r in records if "text" not in r]
    for block in text_blocks:
        out.write(block + "\n")
    _emit(records, cfg.output_format, out)
    failed = any(r.get("status") == "fail" for r in records)
    if cfg.output_format == "text" and cfg.command == "verify-all":
        out.write(f"{sum(r['status'] == 'pass' for r in records)}/{len(records)} criteria passed\n")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
