"""Stage game between a collaborative robot (leader) and a human picker (follower).

Each turn the cobot commits to a collaboration level first; the human then
chooses an effort level knowing that commitment. Both action sets are binary,
so the equilibrium of the stage is found by direct enumeration: compute the
follower's best response to each leader action, then let the leader pick the
collaboration level whose anticipated outcome it prefers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

# Utility differences within this tolerance count as exact ties, so the trust
# level where high and normal effort break even resolves through the explicit
# tie-break rules instead of accumulated binary-float dust.
TIE_EPS = 1e-9


class EffortLevel(str, Enum):
    """Human effort: standard pace, or an accelerated pace that tires faster."""

    NORMAL = "normal"
    HIGH = "high"


class CollabLevel(str, Enum):
    """Cobot assistance: baseline following, or active help such as carrying."""

    LOW = "low"
    HIGH = "high"


@dataclass(frozen=True, slots=True)
class HumanState:
    """Follower state observed by the leader at the start of a turn."""

    fatigue: float
    trust: float

    def __post_init__(self) -> None:
        if not self.fatigue >= 0.0:
            raise ValueError(f"fatigue must be >= 0 (got {self.fatigue})")
        if not 0.0 <= self.trust <= 1.0:
            raise ValueError(f"trust must lie in [0, 1] (got {self.trust})")


@dataclass(frozen=True, slots=True)
class ActionPair:
    """One turn's joint choice."""

    cobot: CollabLevel
    human: EffortLevel


def _default_fatigue_table() -> dict[tuple[EffortLevel, CollabLevel], float]:
    return {
        (EffortLevel.NORMAL, CollabLevel.LOW): 1.0,
        (EffortLevel.NORMAL, CollabLevel.HIGH): 0.5,
        (EffortLevel.HIGH, CollabLevel.LOW): 2.5,
        (EffortLevel.HIGH, CollabLevel.HIGH): 1.0,
    }


@dataclass
class GameParams:
    """Stage-game constants.

    The fatigue table gives the increment per (effort, collaboration) pair:
    high effort costs more than normal, and low collaboration adds walking on
    top of either effort. The perceived-cost multiplier shrinks linearly with
    trust, so a trusted cobot makes the same physical work feel cheaper. The
    leader is fined ``penalty_weight`` whenever its anticipated next fatigue
    level would exceed ``fatigue_threshold``.
    """

    reward_normal: float = 1.0
    reward_high: float = 2.0
    fatigue_table: dict[tuple[EffortLevel, CollabLevel], float] = field(
        default_factory=_default_fatigue_table
    )
    cost_kappa_base: float = 2.6
    cost_kappa_trust_slope: float = 1.0
    fatigue_threshold: float = 80.0
    penalty_weight: float = 100.0
    cobot_tiebreak_trust: float = 0.5

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        scalars = {
            "reward_normal": self.reward_normal,
            "reward_high": self.reward_high,
            "cost_kappa_base": self.cost_kappa_base,
            "cost_kappa_trust_slope": self.cost_kappa_trust_slope,
            "fatigue_threshold": self.fatigue_threshold,
            "penalty_weight": self.penalty_weight,
            "cobot_tiebreak_trust": self.cobot_tiebreak_trust,
        }
        for name, value in scalars.items():
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite (got {value})")
        for key, value in self.fatigue_table.items():
            if not math.isfinite(value):
                raise ValueError(f"fatigue table entry {key} must be finite")
        if not self.reward_high > self.reward_normal:
            raise ValueError(
                f"reward_high must exceed reward_normal "
                f"(got {self.reward_high} <= {self.reward_normal})"
            )
        if not self.fatigue_threshold > 0.0:
            raise ValueError(
                f"fatigue_threshold must be positive (got {self.fatigue_threshold})"
            )
        if not self.penalty_weight > self.reward_high:
            raise ValueError(
                f"penalty_weight must exceed reward_high "
                f"(got {self.penalty_weight} <= {self.reward_high})"
            )
        # kappa is linear in trust, so positivity on [0, 1] reduces to the endpoints.
        if min(self.cost_multiplier(0.0), self.cost_multiplier(1.0)) <= 0.0:
            raise ValueError(
                "cost multiplier cost_kappa_base - cost_kappa_trust_slope * trust "
                "must stay positive for trust in [0, 1]"
            )

    def cost_multiplier(self, trust: float) -> float:
        return self.cost_kappa_base - self.cost_kappa_trust_slope * trust


def human_reward(effort: EffortLevel, params: GameParams) -> float:
    """Items picked in one turn at the given effort."""
    return params.reward_high if effort is EffortLevel.HIGH else params.reward_normal


def fatigue_increment(pair: ActionPair, params: GameParams) -> float:
    """Fatigue added by one turn of the given joint action."""
    return params.fatigue_table[(pair.human, pair.cobot)]


def perceived_cost(pair: ActionPair, trust: float, params: GameParams) -> float:
    """Subjective cost of the turn: its fatigue increment scaled by the
    trust-dependent multiplier."""
    if not 0.0 <= trust <= 1.0:
        raise ValueError(f"trust must lie in [0, 1] (got {trust})")
    return fatigue_increment(pair, params) * params.cost_multiplier(trust)


def human_utility(pair: ActionPair, trust: float, params: GameParams) -> float:
    """Reward from items picked minus the perceived fatigue cost."""
    return human_reward(pair.human, params) - perceived_cost(pair, trust, params)


def human_best_response(
    collab: CollabLevel, trust: float, params: GameParams
) -> EffortLevel:
    """Effort maximizing the human's utility given the cobot's commitment.

    Ties reciprocate high collaboration with high effort and otherwise
    conserve energy.
    """
    u_normal = human_utility(ActionPair(collab, EffortLevel.NORMAL), trust, params)
    u_high = human_utility(ActionPair(collab, EffortLevel.HIGH), trust, params)
    if abs(u_high - u_normal) <= TIE_EPS:
        return EffortLevel.HIGH if collab is CollabLevel.HIGH else EffortLevel.NORMAL
    return EffortLevel.HIGH if u_high > u_normal else EffortLevel.NORMAL


def cobot_utility(pair: ActionPair, state: HumanState, params: GameParams) -> float:
    """Leader payoff: the human's reward, minus the ergonomic penalty when the
    disruption-free next fatigue level would cross the threshold.

    The anticipated fatigue ignores random events; the leader only sees the
    observed state and the joint action.
    """
    value = human_reward(pair.human, params)
    if state.fatigue + fatigue_increment(pair, params) > params.fatigue_threshold:
        value -= params.penalty_weight
    return value


def solve_stage_game(state: HumanState, params: GameParams) -> ActionPair:
    """Equilibrium action pair for one turn.

    For each collaboration level, anticipate the follower's best response,
    then return the pair whose anticipated outcome the leader prefers. When
    the leader is indifferent it collaborates iff trust has reached the
    tie-break level.
    """
    pair_low = ActionPair(
        CollabLevel.LOW, human_best_response(CollabLevel.LOW, state.trust, params)
    )
    pair_high = ActionPair(
        CollabLevel.HIGH, human_best_response(CollabLevel.HIGH, state.trust, params)
    )
    u_low = cobot_utility(pair_low, state, params)
    u_high = cobot_utility(pair_high, state, params)
    if abs(u_high - u_low) <= TIE_EPS:
        return pair_high if state.trust >= params.cobot_tiebreak_trust else pair_low
    return pair_high if u_high > u_low else pair_low
