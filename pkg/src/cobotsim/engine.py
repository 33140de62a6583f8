"""Shift loop: the fixed per-turn sequence, whole-shift runs, and seed ensembles.

Every turn executes the same sequence, and the sequence is part of the
external contract because reordering it changes trajectories:

1. apology override consulted (apology variant only);
2. leader action = override, or the stage-game equilibrium;
3. follower action = best response to the leader action;
4. disruption sampled (stochastic variants only; deterministic variants
   consume no random draws);
5. fatigue updated — a cobot failure charges the turn as if collaboration
   had been low, a difficult pick adds its surcharge;
6. outcome classified under the variant's trust rule, trust updated;
7. apology controller ticked for a consumed override, then fed the outcome.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field, replace
from enum import Enum

from .disruption import DisruptionEvent, DisruptionParams, RandomStream, sample_disruption
from .dynamics import (
    InteractionOutcome,
    TrustParams,
    TrustRule,
    classify_interaction,
    update_fatigue,
    update_trust,
)
from .game import (
    ActionPair,
    CollabLevel,
    EffortLevel,
    GameParams,
    HumanState,
    human_best_response,
    human_reward,
    solve_stage_game,
)
from .repair import ApologyController, leader_override, on_outcome, tick

_MASK64 = (1 << 64) - 1


class ModelVariant(str, Enum):
    V1_0 = "v1.0"  # naive trust rule, deterministic
    V1_1 = "v1.1"  # refined trust rule, deterministic
    V1_2 = "v1.2"  # refined rule plus random disruptions
    V1_3 = "v1.3"  # disruptions plus the apology mode

    @property
    def trust_rule(self) -> TrustRule:
        return TrustRule.NAIVE if self is ModelVariant.V1_0 else TrustRule.REFINED

    @property
    def has_disruptions(self) -> bool:
        return self in (ModelVariant.V1_2, ModelVariant.V1_3)

    @property
    def has_apology(self) -> bool:
        return self is ModelVariant.V1_3


@dataclass
class ModelConfig:
    """Everything a run depends on; two equal configs give bit-identical runs."""

    variant: ModelVariant = ModelVariant.V1_1
    horizon: int = 50
    seed: int = 0
    game: GameParams = field(default_factory=GameParams)
    trust: TrustParams = field(default_factory=TrustParams)
    disruption: DisruptionParams = field(default_factory=DisruptionParams)
    apology_duration: int = 3

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if self.horizon < 1:
            raise ValueError(f"horizon must be >= 1 (got {self.horizon})")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError(
                f"seed must be an unsigned 64-bit integer (got {self.seed})"
            )
        if self.apology_duration < 1:
            raise ValueError(
                f"apology duration must be >= 1 (got {self.apology_duration})"
            )
        self.game.validate()
        self.trust.validate()
        self.disruption.validate()


@dataclass(slots=True)
class StepRecord:
    """Full audit of one turn."""

    step: int
    trust_pre: float
    fatigue_pre: float
    cobot_action: CollabLevel
    human_action: EffortLevel
    disruption_event: DisruptionEvent
    outcome: InteractionOutcome
    items_picked: float
    extra_fatigue: float
    trust_post: float
    fatigue_post: float
    apology_remaining_post: int


@dataclass
class ShiftSummary:
    """KPIs of one shift. ``recovery_times`` holds one entry per severe
    failure: (turn, steps until trust regained its pre-drop level, or None
    when the shift ended first)."""

    productivity: float
    final_fatigue: float
    final_trust: float
    peak_fatigue: float
    severe_failure_turns: list[int]
    recovery_times: list[tuple[int, int | None]]


def run_step(
    state: HumanState,
    ctrl: ApologyController,
    stream: RandomStream,
    cfg: ModelConfig,
    step: int = 1,
) -> tuple[StepRecord, HumanState, ApologyController]:
    """Execute one turn of the fixed sequence documented at module level."""
    variant = cfg.variant
    override = leader_override(ctrl) if variant.has_apology else None
    if override is not None:
        pair = ActionPair(override, human_best_response(override, state.trust, cfg.game))
    else:
        pair = solve_stage_game(state, cfg.game)

    if variant.has_disruptions:
        event = sample_disruption(stream, cfg.disruption)
    else:
        event = DisruptionEvent.NONE
    severe = event is DisruptionEvent.COBOT_FAILURE

    # Failed assistance still tires the human as if the cobot had stayed low.
    charged = ActionPair(CollabLevel.LOW, pair.human) if severe else pair
    extra = (
        cfg.disruption.difficult_pick_fatigue
        if event is DisruptionEvent.DIFFICULT_PICK
        else 0.0
    )
    fatigue_post = update_fatigue(state.fatigue, charged, extra, cfg.game)

    outcome = classify_interaction(variant.trust_rule, pair, severe, cfg.game)
    trust_post = update_trust(state.trust, outcome, cfg.trust)

    new_ctrl = ctrl
    if variant.has_apology:
        # Tick before arming: a severe failure during an active apology must
        # still leave a full window behind it.
        if override is not None:
            new_ctrl = tick(new_ctrl)
        new_ctrl = on_outcome(new_ctrl, outcome)

    record = StepRecord(
        step=step,
        trust_pre=state.trust,
        fatigue_pre=state.fatigue,
        cobot_action=pair.cobot,
        human_action=pair.human,
        disruption_event=event,
        outcome=outcome,
        items_picked=human_reward(pair.human, cfg.game),
        extra_fatigue=extra,
        trust_post=trust_post,
        fatigue_post=fatigue_post,
        apology_remaining_post=new_ctrl.remaining,
    )
    return record, HumanState(fatigue=fatigue_post, trust=trust_post), new_ctrl


def run_shift(cfg: ModelConfig) -> tuple[list[StepRecord], ShiftSummary]:
    """Run one full shift from the configured initial state."""
    state = HumanState(fatigue=cfg.trust.initial_fatigue, trust=cfg.trust.initial_trust)
    ctrl = ApologyController(remaining=0, duration=cfg.apology_duration)
    stream = RandomStream(cfg.seed)
    records: list[StepRecord] = []
    for step in range(1, cfg.horizon + 1):
        record, state, ctrl = run_step(state, ctrl, stream, cfg, step=step)
        records.append(record)
    return records, summarize_shift(records, cfg.horizon)


def summarize_shift(records: list[StepRecord], horizon: int) -> ShiftSummary:
    severe_turns = [
        r.step for r in records if r.outcome is InteractionOutcome.SEVERE_FAILURE
    ]
    return ShiftSummary(
        productivity=sum(r.items_picked for r in records),
        final_fatigue=records[-1].fatigue_post,
        final_trust=records[-1].trust_post,
        peak_fatigue=max(r.fatigue_post for r in records),
        severe_failure_turns=severe_turns,
        recovery_times=[(t, recovery_time(records, t, horizon)) for t in severe_turns],
    )


def recovery_time(
    records: list[StepRecord], severe_turn: int, horizon: int
) -> int | None:
    """Steps until trust first returns to its level just before the drop.

    Returns None (censored) when no turn within the horizon gets there.
    """
    if not 1 <= severe_turn <= len(records):
        raise ValueError(f"severe_turn {severe_turn} outside the recorded shift")
    origin = records[severe_turn - 1]
    if origin.outcome is not InteractionOutcome.SEVERE_FAILURE:
        raise ValueError(f"turn {severe_turn} is not a severe failure")
    target = origin.trust_pre
    last = min(horizon, len(records))
    for k in range(1, last - severe_turn + 1):
        if records[severe_turn + k - 1].trust_post >= target:
            return k
    return None


@dataclass
class EnsembleSummary:
    """Aggregates over consecutive-seed runs of one configuration.

    ``first_recovery_steps`` has one entry per run that saw at least one
    severe failure: the first failure's recovery time, or None when censored.
    The median treats censored entries as +inf.
    """

    n_seeds: int
    base_seed: int
    summaries: list[ShiftSummary]
    mean_productivity: float
    median_productivity: float
    mean_final_trust: float
    median_final_trust: float
    mean_final_fatigue: float
    median_final_fatigue: float
    runs_with_severe: int
    first_recovery_steps: list[int | None]
    censored_count: int
    median_first_recovery: float | None


def run_ensemble(cfg: ModelConfig, n_seeds: int, base_seed: int = 1) -> EnsembleSummary:
    """Run seeds base_seed, base_seed + 1, ... and aggregate their KPIs."""
    if n_seeds < 1:
        raise ValueError(f"n_seeds must be >= 1 (got {n_seeds})")
    summaries: list[ShiftSummary] = []
    for i in range(n_seeds):
        _, summary = run_shift(replace(cfg, seed=(base_seed + i) & _MASK64))
        summaries.append(summary)

    productivity = [s.productivity for s in summaries]
    trust = [s.final_trust for s in summaries]
    fatigue = [s.final_fatigue for s in summaries]
    first_recovery = [
        s.recovery_times[0][1] for s in summaries if s.recovery_times
    ]
    censored = sum(1 for k in first_recovery if k is None)
    median_recovery = (
        statistics.median(math.inf if k is None else k for k in first_recovery)
        if first_recovery
        else None
    )
    return EnsembleSummary(
        n_seeds=n_seeds,
        base_seed=base_seed,
        summaries=summaries,
        mean_productivity=statistics.fmean(productivity),
        median_productivity=statistics.median(productivity),
        mean_final_trust=statistics.fmean(trust),
        median_final_trust=statistics.median(trust),
        mean_final_fatigue=statistics.fmean(fatigue),
        median_final_fatigue=statistics.median(fatigue),
        runs_with_severe=len(first_recovery),
        first_recovery_steps=first_recovery,
        censored_count=censored,
        median_first_recovery=median_recovery,
    )


def median_recovery_capped(ens: EnsembleSummary, cap: float) -> float | None:
    """Median first recovery with censored entries counted as ``cap`` —
    the convention used when forming recovery-time ratios."""
    if not ens.first_recovery_steps:
        return None
    return statistics.median(
        cap if k is None else k for k in ens.first_recovery_steps
    )
