"""Command-line front end: construction, verification, sampling, reporting.

Every randomized suite is deterministic: trial i uses seed ``seed + i`` and
trials are reported in index order, so identical configurations produce
byte-identical JSON.  Negative outcomes exit with code 1 and carry a
structured falsifier payload (the offending factorization and its evaluated
matrix) rather than a bare failure; invalid configuration exits with code 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .atoms import (
    FalsificationError,
    NoPatternMatches,
    antidiagonal_witness,
    classify_pattern_d2,
    evaluate,
    factorization_to_json,
    sample_atom,
)
from .bitcore import EPS_ZERO, matrix_to_csv, matrix_to_json, udisj, val
from .bounds import bound_report, report_to_json, report_to_text
from .covering import (
    CoveringFamily,
    certificate_to_json,
    check_induction_inequality,
    explicit_covering_d2,
    family_from_json,
    family_to_json,
    maximal_certificates,
    maximal_support,
    pattern_certificates_d2,
    recursive_covering,
)

OUT_DIR_ENV = "LIFTCERT_OUT_DIR"

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_BAD_CONFIG = 2


@dataclass
class RunConfig:
    """Resolved invocation parameters; the seed defaults to a fixed constant."""

    command: str
    subcommand: str = ""
    n: Optional[int] = None
    d: Optional[int] = None
    k: Optional[int] = None
    seed: int = 0
    trials: int = 1
    family_path: Optional[str] = None
    out_path: Optional[str] = None
    format: str = "json"
    epsilon: Optional[float] = None
    mode: str = "maximal"
    check: str = "patterns"
    explicit_d2: bool = False
    direction: str = "both"
    rank_profile: str = "uniform"

    @property
    def eps(self) -> float:
        return EPS_ZERO if self.epsilon is None else self.epsilon

    def directions(self) -> tuple[str, ...]:
        if self.direction == "both":
            return ("u-first", "v-first")
        return (self.direction,)


def _falsifier(trial: int, seed: int, direction: str, factorization, matrix,
               reason: str) -> dict:
    return {
        "trial": trial,
        "seed": seed,
        "direction": direction,
        "reason": reason,
        "factorization": json.loads(factorization_to_json(factorization)),
        "matrix": json.loads(matrix_to_json(matrix)),
    }


def run_pattern_oracle(
    trials: int,
    seed: int = 0,
    rank_profile: str = "uniform",
    directions: Sequence[str] = ("u-first", "v-first"),
    eps: float = EPS_ZERO,
) -> dict:
    """Sample width-2 atoms over 2x2 cones; classify each against the six
    patterns and check val <= 7.  Stops at the first falsification."""
    counts: Counter[int] = Counter()
    max_val = 0
    for i in range(trials):
        trial_seed = seed + i
        direction = directions[i % len(directions)]
        f = sample_atom(2, 2, rank_profile, rng=trial_seed, direction=direction)
        m = evaluate(f)
        try:
            pid = classify_pattern_d2(m, eps)
        except NoPatternMatches:
            return {
                "seed": seed,
                "trials": trials,
                "passes": i,
                "pattern_counts": dict(sorted(counts.items())),
                "falsifier": _falsifier(
                    i, trial_seed, direction, f, m, "support fits no pattern"
                ),
            }
        v = val(m, eps)
        max_val = max(max_val, v)
        if v > 7:
            return {
                "seed": seed,
                "trials": trials,
                "passes": i,
                "pattern_counts": dict(sorted(counts.items())),
                "falsifier": _falsifier(
                    i, trial_seed, direction, f, m, f"val = {v} exceeds 7"
                ),
            }
        counts[int(pid)] += 1
    return {
        "seed": seed,
        "trials": trials,
        "passes": trials,
        "max_val": max_val,
        "pattern_counts": dict(sorted(counts.items())),
        "falsifier": None,
    }


def run_witness_oracle(
    d: int,
    trials: int,
    seed: int = 0,
    rank_profile: str = "uniform",
    directions: Sequence[str] = ("u-first", "v-first"),
    eps: float = EPS_ZERO,
) -> dict:
    """Find the antidiagonal zero of each sampled square atom; every entry
    found must clear the relative zero threshold."""
    witness_rows: Counter[str] = Counter()
    for i in range(trials):
        trial_seed = seed + i
        direction = directions[i % len(directions)]
        f = sample_atom(d, d, rank_profile, rng=trial_seed, direction=direction)
        try:
            a = antidiagonal_witness(f, eps)
        except FalsificationError as exc:
            return {
                "seed": seed,
                "d": d,
                "trials": trials,
                "passes": i,
                "falsifier": _falsifier(
                    i, trial_seed, direction, f, evaluate(f), str(exc)
                ),
            }
        witness_rows[str(a)] += 1
    return {
        "seed": seed,
        "d": d,
        "trials": trials,
        "passes": trials,
        "witness_rows": dict(sorted(witness_rows.items())),
        "falsifier": None,
    }


def run_induction_oracle(
    n: int,
    d: int,
    trials: int,
    seed: int = 0,
    family: Optional[CoveringFamily] = None,
    rank_profile: str = "uniform",
    directions: Sequence[str] = ("u-first", "v-first"),
    eps: float = EPS_ZERO,
) -> dict:
    """Check val(M) <= sum_i val(M_i) over sampled atoms, and that every
    aggregate again vanishes on intersection-one pairs."""
    if family is None:
        family = recursive_covering(d)
    if family.d != d:
        raise ValueError(f"family width {family.d} does not match d = {d}")
    max_val = 0
    for i in range(trials):
        trial_seed = seed + i
        direction = directions[i % len(directions)]
        f = sample_atom(n, d, rank_profile, rng=trial_seed, direction=direction)
        rep = check_induction_inequality(f, family, eps)
        max_val = max(max_val, rep.val_total)
        if not (rep.holds and rep.aggregates_are_atoms):
            reason = (
                f"val {rep.val_total} > bound {rep.bound}"
                if not rep.holds
                else "an aggregate has a positive intersection-one entry"
            )
            return {
                "seed": seed,
                "n": n,
                "d": d,
                "family": family.label,
                "trials": trials,
                "passes": i,
                "falsifier": _falsifier(
                    i, trial_seed, direction, f, evaluate(f), reason
                ),
            }
    return {
        "seed": seed,
        "n": n,
        "d": d,
        "family": family.label,
        "trials": trials,
        "passes": trials,
        "max_val": max_val,
        "falsifier": None,
    }


def _resolve_out(path: Optional[str]) -> Optional[Path]:
    if path is None:
        return None
    p = Path(path)
    base = os.environ.get(OUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _emit(text: str, cfg: RunConfig) -> None:
    target = _resolve_out(cfg.out_path)
    if target is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text if text.endswith("\n") else text + "\n")


def _emit_json(obj: dict, cfg: RunConfig) -> None:
    _emit(json.dumps(obj, indent=2, sort_keys=True), cfg)


def _load_family(cfg: RunConfig) -> CoveringFamily:
    if cfg.family_path is None:
        raise ValueError("a --family file is required")
    return family_from_json(Path(cfg.family_path).read_text())


def _cmd_udisj(cfg: RunConfig) -> int:
    m = udisj(cfg.n)
    v = val(m, cfg.eps)
    if cfg.format == "csv":
        _emit(matrix_to_csv(m), cfg)
    elif cfg.format == "text":
        _emit(
            matrix_to_csv(m) + f"val = {v} (expected 3^{cfg.n} = {3 ** cfg.n})\n", cfg
        )
    else:
        _emit_json(
            {
                "command": "udisj",
                "n": cfg.n,
                "val": v,
                "expected_val": 3**cfg.n,
                "matrix": json.loads(matrix_to_json(m, cfg.eps)),
            },
            cfg,
        )
    return EXIT_OK if v == 3**cfg.n else EXIT_FALSIFIED


def _cmd_covering_build(cfg: RunConfig) -> int:
    family = explicit_covering_d2() if cfg.explicit_d2 else recursive_covering(cfg.d)
    _emit(family_to_json(family), cfg)
    return EXIT_OK


def _cmd_covering_verify(cfg: RunConfig) -> int:
    family = _load_family(cfg)
    report: dict = {
        "command": "covering-verify",
        "mode": cfg.mode,
        "d": family.d,
        "k": family.k,
        "label": family.label,
    }
    if cfg.mode == "maximal":
        certs = maximal_certificates(family)
        report["certificates"] = {
            str(alpha): json.loads(certificate_to_json(c)) if c else None
            for alpha, c in certs.items()
        }
        report["failures"] = [
            {
                "alpha": str(alpha),
                "support_size": len(maximal_support(family.d, alpha)),
                "k": family.k,
            }
            for alpha, c in certs.items()
            if c is None
        ]
    else:
        certs = pattern_certificates_d2(family)
        report["certificates"] = {
            str(int(pid)): json.loads(certificate_to_json(c)) if c else None
            for pid, c in certs.items()
        }
        report["failures"] = [
            {"pattern": int(pid), "k": family.k}
            for pid, c in certs.items()
            if c is None
        ]
    report["passed"] = not report["failures"]
    _emit_json(report, cfg)
    return EXIT_OK if report["passed"] else EXIT_FALSIFIED


def _cmd_atom_sample(cfg: RunConfig) -> int:
    if cfg.check == "patterns":
        if (cfg.n, cfg.d) != (2, 2):
            raise ValueError("pattern classification is defined for n = d = 2")
        result = run_pattern_oracle(
            cfg.trials, cfg.seed, cfg.rank_profile, cfg.directions(), cfg.eps
        )
    elif cfg.check == "antidiagonal":
        if cfg.n != cfg.d:
            raise ValueError("the antidiagonal witness needs n = d")
        result = run_witness_oracle(
            cfg.d, cfg.trials, cfg.seed, cfg.rank_profile, cfg.directions(), cfg.eps
        )
    else:
        result = run_induction_oracle(
            cfg.n,
            cfg.d,
            cfg.trials,
            cfg.seed,
            rank_profile=cfg.rank_profile,
            directions=cfg.directions(),
            eps=cfg.eps,
        )
    report = {"command": "atom-sample", "check": cfg.check, "n": cfg.n, "d": cfg.d}
    report.update(result)
    _emit_json(report, cfg)
    return EXIT_OK if result["falsifier"] is None else EXIT_FALSIFIED


def _cmd_bound(cfg: RunConfig) -> int:
    report = bound_report(cfg.n, cfg.d, cfg.k)
    if cfg.format == "text":
        _emit(report_to_text(report), cfg)
    else:
        _emit(
            json.dumps(json.loads(report_to_json(report)), indent=2, sort_keys=True),
            cfg,
        )
    return EXIT_OK


def _cmd_induction(cfg: RunConfig) -> int:
    family = _load_family(cfg) if cfg.family_path else None
    result = run_induction_oracle(
        cfg.n,
        cfg.d,
        cfg.trials,
        cfg.seed,
        family=family,
        rank_profile=cfg.rank_profile,
        directions=cfg.directions(),
        eps=cfg.eps,
    )
    report = {"command": "induction"}
    report.update(result)
    _emit_json(report, cfg)
    return EXIT_OK if result["falsifier"] is None else EXIT_FALSIFIED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liftcert",
        description="Construct and certify covering-based lift lower bounds "
        "for the unique-disjointness matrix.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("udisj", help="emit UDISJ(n) and report val = 3^n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")
    p.add_argument("--out")
    p.add_argument("--epsilon", type=float)

    cov = sub.add_parser("covering", help="build or verify rectangle families")
    cov_sub = cov.add_subparsers(dest="subcommand", required=True)
    p = cov_sub.add_parser("build", help="emit a covering family as JSON")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--explicit-d2", action="store_true",
                   help="emit the 7-rectangle width-2 family instead")
    p.add_argument("--out")
    p = cov_sub.add_parser("verify", help="certify a family by exact matchings")
    p.add_argument("--family", required=True)
    p.add_argument("--mode", choices=["maximal", "patterns-d2"], default="maximal")
    p.add_argument("--out")

    atom = sub.add_parser("atom", help="randomized oracles over sampled atoms")
    atom_sub = atom.add_subparsers(dest="subcommand", required=True)
    p = atom_sub.add_parser("sample", help="sample atoms and run a check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--check", choices=["antidiagonal", "patterns", "induction"],
                   default="patterns")
    p.add_argument("--direction", choices=["both", "u-first", "v-first"],
                   default="both")
    p.add_argument("--rank-profile", choices=["uniform", "full"], default="uniform")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--out")

    p = sub.add_parser("bound", help="emit the bound report for (n, d)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--out")

    p = sub.add_parser("induction", help="block-induction inequality over samples")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--family", help="family JSON (defaults to the recursive family)")
    p.add_argument("--direction", choices=["both", "u-first", "v-first"],
                   default="both")
    p.add_argument("--rank-profile", choices=["uniform", "full"], default="uniform")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--out")

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    def get(name, default=None):
        return getattr(args, name, default)

    return RunConfig(
        command=args.command,
        subcommand=get("subcommand", "") or "",
        n=get("n"),
        d=get("d"),
        k=get("k"),
        seed=get("seed", 0) or 0,
        trials=get("trials", 1) or 1,
        family_path=get("family"),
        out_path=get("out"),
        format=get("format", "json") or "json",
        epsilon=get("epsilon"),
        mode=get("mode", "maximal") or "maximal",
        check=get("check", "patterns") or "patterns",
        explicit_d2=bool(get("explicit_d2", False)),
        direction=get("direction", "both") or "both",
        rank_profile=get("rank_profile", "uniform") or "uniform",
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    handlers = {
        ("udisj", ""): _cmd_udisj,
        ("covering", "build"): _cmd_covering_build,
        ("covering", "verify"): _cmd_covering_verify,
        ("atom", "sample"): _cmd_atom_sample,
        ("bound", ""): _cmd_bound,
        ("induction", ""): _cmd_induction,
    }
    handler = handlers[(cfg.command, cfg.subcommand)]
    try:
        return handler(cfg)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
