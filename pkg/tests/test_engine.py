"""Shift-loop tests: the fixed step sequence, whole-shift KPIs, determinism,
paired schedules, the apology invariant, and ensemble aggregation."""

import math
from dataclasses import replace

import pytest

from cobotsim import (
    ApologyController,
    CollabLevel,
    DisruptionEvent,
    DisruptionParams,
    EffortLevel,
    HumanState,
    InteractionOutcome,
    ModelConfig,
    ModelVariant,
    RandomStream,
    StepRecord,
    TrustParams,
    recovery_time,
    run_ensemble,
    run_shift,
    run_step,
)

NORMAL, HIGH_E = EffortLevel.NORMAL, EffortLevel.HIGH
LOW_C, HIGH_C = CollabLevel.LOW, CollabLevel.HIGH
SEVERE = InteractionOutcome.SEVERE_FAILURE


def cfg_for(variant, **kwargs):
    return ModelConfig(variant=ModelVariant(variant), **kwargs)


# ---------------------------------------------------------------- run_step


def test_opening_turn_refined():
    cfg = cfg_for("v1.1")
    record, state, _ = run_step(
        HumanState(0.0, 0.5), ApologyController(), RandomStream(0), cfg
    )
    assert record.cobot_action is HIGH_C
    assert record.human_action is NORMAL
    assert record.outcome is InteractionOutcome.SUCCESS
    assert record.trust_post == 0.55
    assert record.fatigue_post == 0.5
    assert record.items_picked == 1.0
    assert state == HumanState(0.5, 0.55)


def test_opening_turn_naive():
    cfg = cfg_for("v1.0")
    record, _, _ = run_step(
        HumanState(0.0, 0.5), ApologyController(), RandomStream(0), cfg
    )
    assert (record.cobot_action, record.human_action) == (HIGH_C, NORMAL)
    assert record.outcome is InteractionOutcome.MINOR_FAILURE
    assert record.trust_post == 0.4


def test_apology_override_forces_high_collaboration():
    cfg = cfg_for("v1.3", disruption=DisruptionParams(chance=0.0))
    for trust in (0.0, 0.1, 0.45, 0.9):
        record, _, ctrl = run_step(
            HumanState(0.0, trust),
            ApologyController(remaining=2, duration=3),
            RandomStream(0),
            cfg,
        )
        assert record.cobot_action is HIGH_C
        assert ctrl.remaining == 1  # consumed one apology turn


def test_cobot_failure_charges_low_collaboration_fatigue():
    # chance 1 + severe share 1 forces a cobot failure on a turn whose chosen
    # pair would have been (high, high): fatigue must be charged at (high, low)
    cfg = cfg_for("v1.2", disruption=DisruptionParams(chance=1.0, severe_share=1.0))
    record, _, _ = run_step(
        HumanState(0.0, 0.9), ApologyController(), RandomStream(0), cfg
    )
    assert record.cobot_action is HIGH_C
    assert record.human_action is HIGH_E
    assert record.disruption_event is DisruptionEvent.COBOT_FAILURE
    assert record.outcome is SEVERE
    assert record.fatigue_post == 2.5
    assert record.trust_post == 0.4
    assert record.items_picked == 2.0  # the pick itself still lands


def test_difficult_pick_adds_surcharge_without_touching_trust():
    cfg = cfg_for("v1.2", disruption=DisruptionParams(chance=1.0, severe_share=0.0))
    record, _, _ = run_step(
        HumanState(0.0, 0.9), ApologyController(), RandomStream(0), cfg
    )
    assert record.disruption_event is DisruptionEvent.DIFFICULT_PICK
    assert record.extra_fatigue == 5.0
    assert record.fatigue_post == 6.0  # (high, high) increment 1.0 + 5.0
    assert record.outcome is InteractionOutcome.SUCCESS
    assert record.trust_post == 0.95


# ---------------------------------------------------------------- run_shift


def test_naive_shift_kpis():
    records, summary = run_shift(cfg_for("v1.0"))
    assert summary.productivity == 50.0
    assert summary.final_trust == 0.0
    assert summary.final_fatigue == 49.5
    trajectory = [r.trust_post for r in records]
    assert trajectory[4] == 0.0  # zero by the end of turn 5
    assert all(b <= a for a, b in zip(trajectory, trajectory[1:]))


def test_refined_shift_kpis():
    records, summary = run_shift(cfg_for("v1.1"))
    assert summary.productivity == 98.0
    assert summary.final_trust == 1.0
    assert summary.final_fatigue == 49.0
    trajectory = [r.trust_post for r in records]
    assert all(b >= a for a, b in zip(trajectory, trajectory[1:]))
    assert trajectory[9] == 1.0  # saturated at the end of turn 10
    assert all(t == 1.0 for t in trajectory[9:])


def test_single_turn_shift():
    _, summary = run_shift(cfg_for("v1.1", horizon=1))
    assert summary.productivity == 1.0
    assert summary.final_trust == 0.55


def test_deterministic_variants_consume_no_draws():
    for variant in ("v1.0", "v1.1"):
        cfg = cfg_for(variant, seed=7)
        stream = RandomStream(cfg.seed)
        state = HumanState(cfg.trust.initial_fatigue, cfg.trust.initial_trust)
        ctrl = ApologyController(duration=cfg.apology_duration)
        for step in range(1, cfg.horizon + 1):
            _, state, ctrl = run_step(state, ctrl, stream, cfg, step=step)
        assert stream.state == cfg.seed


def test_shift_is_deterministic():
    cfg = cfg_for("v1.3", seed=123)
    first_records, first_summary = run_shift(cfg)
    second_records, second_summary = run_shift(cfg)
    assert first_records == second_records
    assert first_summary == second_summary


def test_paired_variants_see_identical_disruption_schedules():
    for seed in range(30):
        records12, _ = run_shift(cfg_for("v1.2", seed=seed))
        records13, _ = run_shift(cfg_for("v1.3", seed=seed))
        events12 = [r.disruption_event for r in records12]
        events13 = [r.disruption_event for r in records13]
        assert events12 == events13


def test_every_severe_failure_triggers_three_forced_turns():
    found = 0
    for seed in range(60):
        records, _ = run_shift(cfg_for("v1.3", seed=seed))
        for r in records:
            if r.outcome is SEVERE:
                found += 1
                window = records[r.step : r.step + 3]
                assert all(w.cobot_action is HIGH_C for w in window)
    assert found > 20


def test_controller_inert_outside_apology_variant():
    for variant in ("v1.0", "v1.1", "v1.2"):
        records, _ = run_shift(cfg_for(variant, seed=9))
        assert all(r.apology_remaining_post == 0 for r in records)


def test_apology_escapes_low_trust_trap():
    # fresh apology at trust 0.45: three forced successes reach 0.60, after
    # which the stage game keeps collaborating on its own
    cfg = cfg_for("v1.3", disruption=DisruptionParams(chance=0.0))
    state = HumanState(10.0, 0.45)
    ctrl = ApologyController(remaining=3, duration=3)
    stream = RandomStream(0)
    trust_path = []
    for step in range(1, 6):
        record, state, ctrl = run_step(state, ctrl, stream, cfg, step=step)
        trust_path.append(record.trust_post)
    assert trust_path[:3] == [0.5, 0.55, 0.6]
    assert trust_path[3] > 0.6


def test_disengagement_trap_without_apology():
    # same start without the apology: the leader disengages below 0.5 and
    # trust decays monotonically to zero
    cfg = cfg_for("v1.2", disruption=DisruptionParams(chance=0.0))
    state = HumanState(10.0, 0.45)
    ctrl = ApologyController()
    stream = RandomStream(0)
    trust_path = []
    for step in range(1, 11):
        record, state, ctrl = run_step(state, ctrl, stream, cfg, step=step)
        trust_path.append(record.trust_post)
        assert record.cobot_action is LOW_C
    assert all(b < a or b == 0.0 for a, b in zip(trust_path, trust_path[1:]))
    assert trust_path[-1] == 0.0


# ---------------------------------------------------------------- recovery


def synthetic_records(trust_pre_list, trust_post_list, severe_steps):
    records = []
    for i, (pre, post) in enumerate(zip(trust_pre_list, trust_post_list), start=1):
        records.append(
            StepRecord(
                step=i,
                trust_pre=pre,
                fatigue_pre=0.0,
                cobot_action=HIGH_C,
                human_action=NORMAL,
                disruption_event=DisruptionEvent.COBOT_FAILURE
                if i in severe_steps
                else DisruptionEvent.NONE,
                outcome=SEVERE if i in severe_steps else InteractionOutcome.SUCCESS,
                items_picked=1.0,
                extra_fatigue=0.0,
                trust_post=post,
                fatigue_post=1.0,
                apology_remaining_post=0,
            )
        )
    return records


def test_recovery_time_arithmetic():
    # pre 0.65, drop to 0.15, then +0.05 per turn: back at 0.65 after 10 steps
    posts = [0.15 + 0.05 * k for k in range(12)]
    pres = [0.65] + posts[:-1]
    records = synthetic_records(pres, posts, severe_steps={1})
    assert recovery_time(records, 1, horizon=12) == 10


def test_recovery_censored_when_trust_never_returns():
    posts = [0.15 - 0.01 * k for k in range(10)]
    pres = [0.65] + posts[:-1]
    records = synthetic_records(pres, posts, severe_steps={1})
    assert recovery_time(records, 1, horizon=10) is None


def test_recovery_censored_at_final_turn():
    records = synthetic_records([0.55], [0.05], severe_steps={1})
    assert recovery_time(records, 1, horizon=1) is None


def test_recovery_time_rejects_bad_turns():
    records = synthetic_records([0.5, 0.55], [0.55, 0.6], severe_steps=set())
    with pytest.raises(ValueError):
        recovery_time(records, 1, horizon=2)  # not severe
    with pytest.raises(ValueError):
        recovery_time(records, 3, horizon=2)  # out of range


def test_summary_collects_recoveries():
    _, summary = run_shift(cfg_for("v1.3", seed=12))
    assert summary.severe_failure_turns == [t for t, _ in summary.recovery_times]
    for turn, steps in summary.recovery_times:
        assert steps is None or steps >= 1


# ---------------------------------------------------------------- ensembles


def test_deterministic_ensemble_is_constant():
    ens = run_ensemble(cfg_for("v1.1"), n_seeds=5, base_seed=17)
    assert all(s == ens.summaries[0] for s in ens.summaries)
    assert ens.mean_productivity == 98.0
    assert ens.runs_with_severe == 0
    assert ens.median_first_recovery is None


def test_singleton_ensemble_matches_single_run():
    cfg = cfg_for("v1.2")
    _, summary = run_shift(replace(cfg, seed=42))
    ens = run_ensemble(cfg, n_seeds=1, base_seed=42)
    assert ens.summaries == [summary]
    assert ens.mean_productivity == summary.productivity
    assert ens.median_final_fatigue == summary.final_fatigue


def test_severe_failure_prevalence():
    # P(at least one severe in 50 turns) = 1 - (1 - 0.05)^50 ~ 0.923
    ens = run_ensemble(cfg_for("v1.2"), n_seeds=1000, base_seed=1)
    fraction = ens.runs_with_severe / ens.n_seeds
    assert abs(fraction - (1.0 - 0.95**50)) <= 0.03


def test_productivity_accounting_identity():
    for variant in ("v1.0", "v1.1", "v1.2", "v1.3"):
        for seed in (0, 5, 99):
            cfg = cfg_for(variant, seed=seed)
            records, summary = run_shift(cfg)
            high_turns = sum(1 for r in records if r.human_action is HIGH_E)
            expected = cfg.horizon * cfg.game.reward_normal + high_turns * (
                cfg.game.reward_high - cfg.game.reward_normal
            )
            assert summary.productivity == pytest.approx(expected)


def test_trust_and_fatigue_bounds_along_stochastic_runs():
    for seed in range(20):
        records, _ = run_shift(cfg_for("v1.3", seed=seed))
        for r in records:
            assert 0.0 <= r.trust_pre <= 1.0
            assert 0.0 <= r.trust_post <= 1.0
            assert r.fatigue_pre >= 0.0
            assert r.fatigue_post >= 0.0


def test_model_config_validation():
    with pytest.raises(ValueError):
        ModelConfig(horizon=0)
    with pytest.raises(ValueError):
        ModelConfig(seed=-1)
    with pytest.raises(ValueError):
        ModelConfig(seed=2**64)
    with pytest.raises(ValueError):
        ModelConfig(apology_duration=0)


def test_initial_state_comes_from_trust_params():
    cfg = cfg_for("v1.1", trust=TrustParams(initial_trust=0.8, initial_fatigue=3.0))
    records, _ = run_shift(cfg)
    assert records[0].trust_pre == 0.8
    assert records[0].fatigue_pre == 3.0


def test_run_ensemble_rejects_zero_seeds():
    with pytest.raises(ValueError):
        run_ensemble(cfg_for("v1.2"), n_seeds=0)


def test_median_recovery_uses_infinity_for_censored():
    ens = run_ensemble(cfg_for("v1.2"), n_seeds=50, base_seed=1)
    if ens.censored_count * 2 > ens.runs_with_severe:
        assert math.isinf(ens.median_first_recovery)
