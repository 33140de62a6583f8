"""Command line: single shifts, seed ensembles, the KPI table, and the paired
resilience comparison.

Configuration resolution order: built-in defaults, then --config file, then
--variant/--seed shorthands, then --set overrides (last wins).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .charts import emit_svg_chart
from .configio import ConfigError, config_with_overrides, parse_config
from .engine import (
    EnsembleSummary,
    ModelConfig,
    ModelVariant,
    median_recovery_capped,
    run_ensemble,
    run_shift,
)
from .reports import emit_summary_json, emit_trajectory_csv

EMIT_FORMATS = ("csv", "json", "svg")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cobotsim",
        description="Simulate human-cobot picking shifts with trust and fatigue "
        "co-regulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", metavar="FILE", help="key = value config file")
        p.add_argument(
            "--set",
            dest="overrides",
            metavar="KEY=VALUE",
            action="append",
            default=[],
            help="override any config scalar by dotted key (repeatable)",
        )
        p.add_argument("--variant", help="model variant: v1.0, v1.1, v1.2 or v1.3")
        p.add_argument("--seed", type=int, help="random seed (unsigned 64-bit)")

    run_p = sub.add_parser("run", help="simulate one shift and write its artifacts")
    add_config_flags(run_p)
    run_p.add_argument("--out", metavar="DIR", default="out", help="output directory")
    run_p.add_argument(
        "--emit",
        default="csv,json",
        help="comma-separated artifact formats from: csv, json, svg",
    )

    ens_p = sub.add_parser("ensemble", help="run one variant across consecutive seeds")
    add_config_flags(ens_p)
    ens_p.add_argument("--seeds", type=int, default=1000, help="number of seeds")
    ens_p.add_argument("--base-seed", type=int, default=1, help="first seed")
    ens_p.add_argument("--out", metavar="DIR", default=None, help="output directory")

    t2_p = sub.add_parser(
        "table2", help="KPI table: deterministic variants exactly, stochastic as ensembles"
    )
    t2_p.add_argument("--seeds", type=int, default=1000, help="ensemble size")
    t2_p.add_argument("--base-seed", type=int, default=1, help="first seed")
    t2_p.add_argument("--out", metavar="DIR", default=None, help="output directory")

    cmp_p = sub.add_parser(
        "compare", help="paired-seed resilience comparison of v1.2 vs v1.3"
    )
    cmp_p.add_argument("--seeds", type=int, default=1000, help="number of paired seeds")
    cmp_p.add_argument("--base-seed", type=int, default=1, help="first seed")
    cmp_p.add_argument("--out", metavar="DIR", default=None, help="output directory")

    return parser


def _load_config(args: argparse.Namespace) -> ModelConfig:
    if getattr(args, "config", None):
        path = Path(args.config)
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        cfg = parse_config(path.read_text(encoding="utf-8"))
    else:
        cfg = ModelConfig()
    shorthand = []
    if getattr(args, "variant", None):
        shorthand.append(f"variant = {args.variant}")
    if getattr(args, "seed", None) is not None:
        shorthand.append(f"seed = {args.seed}")
    if shorthand:
        cfg = config_with_overrides(cfg, shorthand)
    if args.overrides:
        cfg = config_with_overrides(cfg, args.overrides)
    return cfg


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    formats = [f.strip() for f in args.emit.split(",") if f.strip()]
    for f in formats:
        if f not in EMIT_FORMATS:
            raise ConfigError(
                f"unknown emit format '{f}' (valid: {', '.join(EMIT_FORMATS)})"
            )
    if not formats:
        raise ConfigError("at least one emit format is required")

    records, summary = run_shift(cfg)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    if "csv" in formats:
        path = out_dir / "trajectory.csv"
        path.write_text(emit_trajectory_csv(records), encoding="utf-8")
        written.append(path)
    if "json" in formats:
        path = out_dir / "summary.json"
        path.write_text(emit_summary_json(summary), encoding="utf-8")
        written.append(path)
    if "svg" in formats:
        path = out_dir / "chart.svg"
        path.write_text(emit_svg_chart(records), encoding="utf-8")
        written.append(path)
    print(
        f"{cfg.variant.value} seed {cfg.seed}: productivity {summary.productivity:g}, "
        f"final trust {summary.final_trust:g}, final fatigue {summary.final_fatigue:g}"
    )
    for path in written:
        print(f"wrote {path}")
    return 0


def _cmd_ensemble(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    if args.seeds < 1:
        raise ConfigError(f"--seeds must be >= 1 (got {args.seeds})")
    ens = run_ensemble(cfg, args.seeds, args.base_seed)
    print(
        f"{cfg.variant.value}: {ens.n_seeds} seeds from {ens.base_seed} — "
        f"mean productivity {ens.mean_productivity:.2f}, "
        f"mean final trust {ens.mean_final_trust:.3f}, "
        f"mean final fatigue {ens.mean_final_fatigue:.2f}, "
        f"censored recoveries {ens.censored_count}/{ens.runs_with_severe}"
    )
    if args.out is not None:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / "ensemble.json"
        path.write_text(emit_summary_json(ens), encoding="utf-8")
        print(f"wrote {path}")
    return 0


def format_kpi_table(n_seeds: int, base_seed: int = 1) -> str:
    """KPI table across all variants: deterministic rows exactly, stochastic
    rows as ensemble means (single runs of those variants are seed lottery)."""
    rows = []
    for variant in (ModelVariant.V1_0, ModelVariant.V1_1):
        _, s = run_shift(ModelConfig(variant=variant))
        behavior = (
            "trust collapses to 0"
            if s.final_trust < 0.5
            else "trust stable at maximum"
        )
        rows.append(
            (variant.value, f"{s.productivity:g}", f"{s.final_fatigue:g}",
             f"{s.final_trust:.2f}", behavior)
        )

    ensembles: dict[ModelVariant, EnsembleSummary] = {}
    for variant in (ModelVariant.V1_2, ModelVariant.V1_3):
        ens = run_ensemble(ModelConfig(variant=variant), n_seeds, base_seed)
        ensembles[variant] = ens
        med = median_recovery_capped(ens, cap=50.0)
        behavior = (
            f"median recovery {med:g} turns, "
            f"{ens.censored_count}/{ens.runs_with_severe} censored"
        )
        rows.append(
            (f"{variant.value}*", f"{ens.mean_productivity:.1f}",
             f"{ens.mean_final_fatigue:.1f}", f"{ens.mean_final_trust:.2f}", behavior)
        )

    med12 = median_recovery_capped(ensembles[ModelVariant.V1_2], cap=50.0)
    med13 = median_recovery_capped(ensembles[ModelVariant.V1_3], cap=50.0)
    ratio = med13 / med12 if med12 else float("nan")

    header = ("Model", "Productivity", "Final fatigue", "Final trust", "Trust behavior / recovery")
    widths = [
        max(len(header[i]), *(len(r[i]) for r in rows)) for i in range(len(header))
    ]
    sep = "-+-".join("-" * w for w in widths)
    lines = [
        " | ".join(h.ljust(w) for h, w in zip(header, widths)),
        sep,
    ]
    lines += [" | ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
    lines += [
        "",
        f"* ensemble mean over {n_seeds} seeds (base seed {base_seed}); "
        "single runs of the stochastic variants depend entirely on the seed.",
        f"recovery-time ratio v1.3/v1.2 (medians, censored counted as 50): {ratio:.3f}",
    ]
    return "\n".join(lines) + "\n"


def _cmd_table2(args: argparse.Namespace) -> int:
    if args.seeds < 1:
        raise ConfigError(f"--seeds must be >= 1 (got {args.seeds})")
    text = format_kpi_table(args.seeds, args.base_seed)
    print(text, end="")
    if args.out is not None:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / "table2.txt"
        path.write_text(text, encoding="utf-8")
        print(f"wrote {path}")
    return 0


def format_comparison(n_seeds: int, base_seed: int = 1) -> str:
    """Paired-seed v1.2 vs v1.3 report. The same seed yields the same
    disruption schedule in both variants, so each row is a controlled pair."""
    if n_seeds < 2:
        raise ConfigError(f"compare requires at least 2 seeds (got {n_seeds})")
    base = ModelConfig()
    ens12 = run_ensemble(replace(base, variant=ModelVariant.V1_2), n_seeds, base_seed)
    ens13 = run_ensemble(replace(base, variant=ModelVariant.V1_3), n_seeds, base_seed)

    def cell(summary) -> str:
        if not summary.recovery_times:
            return "no severe failure"
        turn, steps = summary.recovery_times[0]
        return f"t={turn} k={'censored' if steps is None else steps}"

    lines = [
        f"paired comparison, {n_seeds} seeds from {base_seed} "
        "(identical disruption schedules per seed)",
        "",
        f"{'seed':>8} | {'v1.2 first recovery':<22} | {'v1.3 first recovery':<22}",
        f"{'-' * 8}-+-{'-' * 22}-+-{'-' * 22}",
    ]
    for i in range(n_seeds):
        s12, s13 = ens12.summaries[i], ens13.summaries[i]
        lines.append(f"{base_seed + i:>8} | {cell(s12):<22} | {cell(s13):<22}")

    med12 = median_recovery_capped(ens12, cap=50.0)
    med13 = median_recovery_capped(ens13, cap=50.0)
    ratio = med13 / med12 if med12 else float("nan")
    lines += [
        "",
        f"runs with a severe failure: v1.2 {ens12.runs_with_severe}, "
        f"v1.3 {ens13.runs_with_severe}",
        f"censored recoveries:        v1.2 {ens12.censored_count}, "
        f"v1.3 {ens13.censored_count}",
        f"median first recovery (censored as 50): "
        f"v1.2 {med12 if med12 is not None else 'n/a'}, "
        f"v1.3 {med13 if med13 is not None else 'n/a'}",
        f"reduction ratio v1.3/v1.2: {ratio:.3f}",
        f"mean final trust:   v1.2 {ens12.mean_final_trust:.3f}, "
        f"v1.3 {ens13.mean_final_trust:.3f}",
        f"mean final fatigue: v1.2 {ens12.mean_final_fatigue:.2f}, "
        f"v1.3 {ens13.mean_final_fatigue:.2f}",
    ]
    return "\n".join(lines) + "\n"


def _cmd_compare(args: argparse.Namespace) -> int:
    text = format_comparison(args.seeds, args.base_seed)
    print(text, end="")
    if args.out is not None:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / "compare.txt"
        path.write_text(text, encoding="utf-8")
        print(f"wrote {path}")
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "ensemble": _cmd_ensemble,
    "table2": _cmd_table2,
    "compare": _cmd_compare,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
