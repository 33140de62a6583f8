"""Plain-text run artifacts: trajectory CSV and summary JSON."""

from __future__ import annotations

import json
import math

from .disruption import DisruptionEvent
from .dynamics import InteractionOutcome
from .engine import EnsembleSummary, ShiftSummary, StepRecord
from .game import CollabLevel, EffortLevel

CSV_HEADER = (
    "step,trust_pre,fatigue_pre,cobot_action,human_action,"
    "disruption,outcome,items,trust_post,fatigue_post,apology_remaining"
)


def format_real(value: float) -> str:
    """Shortest decimal that parses back to the same float; integral values
    drop the trailing '.0'."""
    if value == int(value):
        return str(int(value))
    return repr(value)


def emit_trajectory_csv(records: list[StepRecord]) -> str:
    """Serialize a shift trajectory, one row per turn, LF line endings."""
    if not records:
        raise ValueError("cannot emit a trajectory for zero records")
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            ",".join(
                (
                    str(r.step),
                    format_real(r.trust_pre),
                    format_real(r.fatigue_pre),
                    r.cobot_action.value,
                    r.human_action.value,
                    r.disruption_event.value,
                    r.outcome.value,
                    format_real(r.items_picked),
                    format_real(r.trust_post),
                    format_real(r.fatigue_post),
                    str(r.apology_remaining_post),
                )
            )
        )
    return "\n".join(lines) + "\n"


def parse_trajectory_csv(text: str) -> list[dict]:
    """Parse an emitted trajectory back into typed row dicts (keys follow the
    CSV header). Numeric fields round-trip exactly."""
    lines = [line for line in text.split("\n") if line]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("unrecognized trajectory header")
    columns = CSV_HEADER.split(",")
    rows = []
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != len(columns):
            raise ValueError(f"malformed trajectory row: '{line}'")
        row = dict(zip(columns, parts))
        rows.append(
            {
                "step": int(row["step"]),
                "trust_pre": float(row["trust_pre"]),
                "fatigue_pre": float(row["fatigue_pre"]),
                "cobot_action": CollabLevel(row["cobot_action"]),
                "human_action": EffortLevel(row["human_action"]),
                "disruption": DisruptionEvent(row["disruption"]),
                "outcome": InteractionOutcome(row["outcome"]),
                "items": float(row["items"]),
                "trust_post": float(row["trust_post"]),
                "fatigue_post": float(row["fatigue_post"]),
                "apology_remaining": int(row["apology_remaining"]),
            }
        )
    return rows


def _recovery_entry(turn: int, steps: int | None) -> dict:
    return {"turn": turn, "steps": steps, "censored": steps is None}


def emit_summary_json(summary: ShiftSummary | EnsembleSummary) -> str:
    """Serialize shift or ensemble KPIs with a stable key order."""
    if isinstance(summary, EnsembleSummary):
        median_recovery = summary.median_first_recovery
        if median_recovery is not None and math.isinf(median_recovery):
            median_recovery = None  # censored median; see censoring_count
        payload = {
            "n_seeds": summary.n_seeds,
            "means": {
                "productivity": summary.mean_productivity,
                "final_fatigue": summary.mean_final_fatigue,
                "final_trust": summary.mean_final_trust,
            },
            "medians": {
                "productivity": summary.median_productivity,
                "final_fatigue": summary.median_final_fatigue,
                "final_trust": summary.median_final_trust,
                "first_recovery": median_recovery,
            },
            "censoring_count": summary.censored_count,
            "runs_with_severe": summary.runs_with_severe,
        }
    else:
        payload = {
            "productivity": summary.productivity,
            "final_fatigue": summary.final_fatigue,
            "final_trust": summary.final_trust,
            "peak_fatigue": summary.peak_fatigue,
            "severe_failures": list(summary.severe_failure_turns),
            "recovery_times": [
                _recovery_entry(turn, steps) for turn, steps in summary.recovery_times
            ],
        }
    return json.dumps(payload, indent=2) + "\n"
