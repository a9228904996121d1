"""Command-line entry point: configure, run, emit JSON lines, set exit status.

Output layout: line 1 is the manifest, one line per trial follows, and the
last line is the summary. Floats are serialized with 17 significant digits so
files round-trip exactly and repeated runs are byte-identical.

Exit codes: 0 all hard checks passed; 2 a hard violation or a re-verified
conjecture candidate (a finding, not a crash); 1 usage, configuration or I/O
error.
"""

from __future__ import annotations

import argparse
import datetime
import math
import os
import sys
from dataclasses import dataclass

from . import _kernels as kernels
from ._version import __version__
from .errors import IoFailure, QuditEpiError, UsageError
from .harness import (
    EXPERIMENTS,
    MAX_DIM,
    MAX_ENV_DIM,
    Summary,
    TrialConfig,
    TrialRecord,
    run_experiment,
    run_metadata,
    summarize,
    validate_config,
)
from .rand import RNG_ALGORITHM

_EPOCH_TIMESTAMP = "1970-01-01T00:00:00+00:00"

__all__ = ["RunManifest", "dispatch", "emit", "main", "render_line", "parse_lines"]


# ---------------------------------------------------------------- serialization


def _format_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _render(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _format_float(obj)
    if isinstance(obj, str):
        import json

        return json.dumps(obj)
    if isinstance(obj, dict):
        inner = ",".join(f"{_render(str(k))}:{_render(v)}" for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_render(v) for v in obj) + "]"
    try:
        import numpy as np

        if isinstance(obj, np.integer):
            return str(int(obj))
        if isinstance(obj, np.floating):
            return _format_float(float(obj))
    except ImportError:  # pragma: no cover
        pass
    raise TypeError(f"cannot serialize {type(obj)!r}")


def render_line(obj: dict) -> str:
    """One JSON line, deterministic byte-for-byte."""
    return _render(obj) + "\n"


def parse_lines(text: str) -> list[dict]:
    """Parse an emitted file back into objects (accepts NaN/Infinity tokens)."""
    import json

    return [json.loads(line) for line in text.splitlines() if line.strip()]


# -------------------------------------------------------------------- manifest


@dataclass(frozen=True)
class RunManifest:
    command: str
    config: TrialConfig
    version: str = __version__
    rng: str = RNG_ALGORITHM
    log_base: str = "natural"
    timestamp: str = ""

    def to_object(self) -> dict:
        cfg = self.config
        return {
            "type": "manifest",
            "command": self.command,
            "config": {
                "d": cfg.d,
                "d_e1": cfg.d_e1,
                "d_e2": cfg.d_e2,
                "tau": cfg.tau if cfg.tau is not None else "random",
                "kappa": cfg.kappa,
                "state_kind": cfg.state_kind,
                "rank": cfg.rank,
                "trials": cfg.trials,
                "seed": cfg.seed,
                "tolerance": cfg.tolerance,
                "exploratory_kappa": cfg.exploratory_kappa,
                "min_form": cfg.min_form,
                "opt_restarts": cfg.opt_restarts,
                "opt_refine": cfg.opt_refine,
                "opt_step": cfg.opt_step,
            },
            "version": self.version,
            "rng": self.rng,
            "log_base": self.log_base,
            "timestamp": self.timestamp,
            "kernels_backend": kernels.BACKEND,
            "conventions": {
                "subsystem_order": "leftmost factor is the slowest-varying index",
                "measurement_family": "haar-projective-rank1",
                "conjecture_channel": "swap unitary on (X1, X2) tensor identity on E, then trace X2",
            },
        }


def manifest_from_object(obj: dict) -> RunManifest:
    c = obj["config"]
    cfg = TrialConfig(
        d=c["d"],
        d_e1=c["d_e1"],
        d_e2=c["d_e2"],
        tau=None if c["tau"] == "random" else float(c["tau"]),
        kappa=c["kappa"],
        state_kind=c["state_kind"],
        rank=c["rank"],
        trials=c["trials"],
        seed=c["seed"],
        tolerance=c["tolerance"],
        exploratory_kappa=c["exploratory_kappa"],
        min_form=c["min_form"],
        opt_restarts=c["opt_restarts"],
        opt_refine=c["opt_refine"],
        opt_step=c["opt_step"],
    )
    return RunManifest(
        command=obj["command"],
        config=cfg,
        version=obj["version"],
        rng=obj["rng"],
        log_base=obj["log_base"],
        timestamp=obj["timestamp"],
    )


def _resolve_timestamp() -> str:
    """Deterministic by default so repeated runs emit identical bytes.

    Wall-clock time only enters when the caller asks for it through
    QUDIT_EPI_TIMESTAMP (ISO-8601) or SOURCE_DATE_EPOCH (seconds).
    """
    explicit = os.environ.get("QUDIT_EPI_TIMESTAMP")
    if explicit:
        return explicit
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch:
        dt = datetime.datetime.fromtimestamp(int(epoch), tz=datetime.timezone.utc)
        return dt.isoformat()
    return _EPOCH_TIMESTAMP


def record_to_object(record: TrialRecord, with_experiment: bool) -> dict:
    obj: dict = {"type": "trial"}
    if with_experiment:
        obj["experiment"] = record.experiment
    obj.update(
        {
            "index": record.index,
            "tau": record.tau,
            "kappa": list(record.kappas),
            "slacks": dict(record.slacks),
            "residuals": dict(record.residuals),
            "pass": record.passed,
        }
    )
    if record.negligible:
        obj["negligible_outcomes"] = record.negligible
    return obj


def summary_to_object(summary: Summary) -> dict:
    return {
        "type": "summary",
        "trials": summary.trials,
        "violations": summary.violations,
        "min_slack": dict(summary.min_slack),
        "max_residual": summary.max_residual,
        "histogram": summary.histogram,
        "metadata": dict(summary.metadata),
    }


def emit(manifest: RunManifest, records, summary: Summary, out: str) -> None:
    """Write manifest, one line per record, then the summary."""
    with_exp = manifest.command == "all"
    lines = [render_line(manifest.to_object())]
    lines.extend(render_line(record_to_object(r, with_exp)) for r in records)
    lines.append(render_line(summary_to_object(summary)))
    payload = "".join(lines)
    if out == "-":
        sys.stdout.write(payload)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(payload)
    except OSError as exc:
        raise IoFailure(f"cannot write {out!r}: {exc}") from exc


# ------------------------------------------------------------------- arguments


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; we reserve that
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dim", type=int, default=2, help=f"qudit dimension d, 2..{MAX_DIM}")
    p.add_argument("--env-dim1", type=int, default=2, help=f"first environment dimension, 1..{MAX_ENV_DIM}")
    p.add_argument("--env-dim2", type=int, default=2, help=f"second environment dimension, 1..{MAX_ENV_DIM}")
    p.add_argument("--trials", type=int, default=1000, help="number of randomized trials")
    p.add_argument("--tau", default="random", help="'random' or a fixed value in [0, 1]")
    p.add_argument("--kappa", default="grid", help="'grid' (0, k1/2, k1), 'max' (k1) or a number")
    p.add_argument("--seed", type=int, default=42, help="master seed (fixed default, never time-derived)")
    p.add_argument("--tol", type=float, default=1e-9, help="slack/residual tolerance")
    p.add_argument("--out", default="-", help="output JSONL path, '-' for stdout")
    p.add_argument(
        "--parallel",
        type=int,
        default=os.cpu_count() or 1,
        help="worker processes (QUDIT_EPI_THREADS overrides)",
    )
    p.add_argument("--state-kind", default="ginibre", help="ginibre | pure | rank-k:K")
    p.add_argument(
        "--exploratory-kappa",
        action="store_true",
        help="allow kappa beyond 1/(ln d)^2; those checks become diagnostics",
    )


_COMMAND_EXPERIMENTS = {
    "verify-lemma": ("lemma",),
    "verify-theorem": ("theorem",),
    "verify-qepi": ("qepi",),
    "concavity-scan": ("concavity",),
    "search-conjecture": ("conjecture",),
    "all": EXPERIMENTS,
}


def build_parser() -> _Parser:
    parser = _Parser(prog="qudit-epi", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    descriptions = {
        "verify-lemma": "conditional identity and majorization checks",
        "verify-theorem": "conditional entropy power inequality (per-measurement form)",
        "verify-qepi": "unconditional entropy power inequality and majorization",
        "concavity-scan": "midpoint concavity of the entropy power on the simplex",
        "search-conjecture": "counterexample search for the conditional-entropy version",
        "all": "run every experiment with a shared configuration",
    }
    for name, desc in descriptions.items():
        p = sub.add_parser(name, help=desc)
        _add_common(p)
    return parser


def _parse_tau(raw) -> float | None:
    if raw == "random":
        return None
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"--tau must be 'random' or a number, got {raw!r}") from None


def _parse_kappa(raw):
    if raw in ("grid", "max"):
        return raw
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"--kappa must be 'grid', 'max' or a number, got {raw!r}") from None


def _parse_state_kind(raw: str) -> tuple[str, int | None]:
    if raw.startswith("rank-k:"):
        try:
            return "rank-k", int(raw.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"--state-kind rank-k:K needs integer K, got {raw!r}") from None
    return raw, None


def _config_from_args(args) -> TrialConfig:
    kind, rank = _parse_state_kind(args.state_kind)
    return TrialConfig(
        d=args.dim,
        d_e1=args.env_dim1,
        d_e2=args.env_dim2,
        tau=_parse_tau(args.tau),
        kappa=_parse_kappa(args.kappa),
        state_kind=kind,
        rank=rank,
        trials=args.trials,
        seed=args.seed,
        tolerance=args.tol,
        exploratory_kappa=args.exploratory_kappa,
    )


def _resolve_parallel(args) -> int:
    env = os.environ.get("QUDIT_EPI_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"QUDIT_EPI_THREADS must be an integer, got {env!r}") from None
    return max(1, args.parallel)


def dispatch(argv=None) -> int:
    """Parse one subcommand, run it, write output, and return the exit code."""
    try:
        args = build_parser().parse_args(argv)
        cfg = _config_from_args(args)
        experiments = _COMMAND_EXPERIMENTS[args.command]
        for experiment in experiments:
            validate_config(cfg, experiment)
        parallel = _resolve_parallel(args)

        all_records: list[TrialRecord] = []
        for experiment in experiments:
            records, _ = run_experiment(experiment, cfg, parallel)
            all_records.extend(records)
        summary = summarize(all_records, run_metadata(cfg))
        manifest = RunManifest(command=args.command, config=cfg, timestamp=_resolve_timestamp())
        emit(manifest, all_records, summary, args.out)
        return 2 if summary.violations else 0
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except IoFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except QuditEpiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
