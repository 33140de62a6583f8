#!/usr/bin/env python3
"""Render trajectory charts and CSVs for all four model variants.

The deterministic variants show the trust collapse and the saturating
high-trust regime; the stochastic pair is rendered at one shared seed so the
same disruption schedule hits both, which makes the apology mode's effect
visible.
"""

import sys
from pathlib import Path

from cobotsim import ModelConfig, ModelVariant, emit_svg_chart, emit_trajectory_csv, run_shift

SEED = 42  # shared by v1.2/v1.3: identical disruption schedules


def main() -> int:
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("out/figures")
    out_dir.mkdir(parents=True, exist_ok=True)
    for variant in ModelVariant:
        seed = SEED if variant.has_disruptions else 0
        records, summary = run_shift(ModelConfig(variant=variant, seed=seed))
        stem = variant.value.replace(".", "_")
        (out_dir / f"{stem}.svg").write_text(emit_svg_chart(records), encoding="utf-8")
        (out_dir / f"{stem}.csv").write_text(
            emit_trajectory_csv(records), encoding="utf-8"
        )
        print(
            f"{variant.value} (seed {seed}): productivity {summary.productivity:g}, "
            f"final trust {summary.final_trust:g}, "
            f"final fatigue {summary.final_fatigue:g} -> {out_dir / stem}.svg"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
