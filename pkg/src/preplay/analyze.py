"""Pure-strategy analysis by exhaustive enumeration.

Games here are desk-scale, so everything below just walks the payoff
tensor: pure Nash equilibria, strict/weak dominance between one player's
strategies, constant-sum detection, and Pareto-optimal outcomes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .core import Game, Profile

__all__ = [
    "AnalysisReport",
    "DominancePair",
    "constant_sum",
    "dominance",
    "pareto_optimal",
    "pure_nash",
    "report",
    "strictly_dominant_profile",
]

# (dominating strategy, dominated strategy, "strict" | "weak");
# every strict pair also appears labeled weak
DominancePair = tuple[str, str, str]


def pure_nash(game: Game) -> frozenset[Profile]:
    """Profiles where no player gains by a unilateral strategy change."""
    shape = game.shape
    counts, strides = shape.strategy_counts, shape.strides
    cells = game.payoffs
    equilibria = []
    for flat, profile in enumerate(shape.profiles()):
        stable = True
        for k, chosen in enumerate(profile):
            current = cells[flat][k]
            origin = flat - chosen * strides[k]
            if any(
                cells[origin + t * strides[k]][k] > current
                for t in range(counts[k])
                if t != chosen
            ):
                stable = False
                break
        if stable:
            equilibria.append(profile)
    return frozenset(equilibria)


def dominance(game: Game, player: str) -> frozenset[DominancePair]:
    """All ordered dominance pairs among one player's strategies.

    (s, t, "strict"): s beats t at every opposing profile.
    (s, t, "weak"): s never falls below t and beats it somewhere.
    """
    space = game.space
    k = space.player_index(player)
    shape = game.shape
    stride = shape.strides[k]
    count = shape.strategy_counts[k]
    names = space.strategies[k]
    cells = game.payoffs
    opposing = [flat for flat, p in enumerate(shape.profiles()) if p[k] == 0]

    pairs = set()
    for s in range(count):
        for t in range(count):
            if s == t:
                continue
            always_ge = always_gt = True
            ever_gt = False
            for flat in opposing:
                a = cells[flat + s * stride][k]
                b = cells[flat + t * stride][k]
                if a < b:
                    always_ge = False
                    break
                if a > b:
                    ever_gt = True
                else:
                    always_gt = False
            if not always_ge:
                continue
            if always_gt:
                pairs.add((names[s], names[t], "strict"))
            if ever_gt:
                pairs.add((names[s], names[t], "weak"))
    return frozenset(pairs)


def constant_sum(game: Game) -> Optional[Fraction]:
    """The common outcome total, if every outcome shares one."""
    totals = {sum(cell, Fraction(0)) for cell in game.payoffs}
    if len(totals) == 1:
        return totals.pop()
    return None


def pareto_optimal(game: Game) -> frozenset[Profile]:
    """Profiles whose payoff vector no other profile strongly dominates
    (>= in every coordinate, > in at least one)."""
    cells = game.payoffs
    optimal = []
    for flat, profile in enumerate(game.shape.profiles()):
        mine = cells[flat]
        dominated = any(
            all(o >= m for o, m in zip(other, mine)) and other != mine
            for other in cells
        )
        if not dominated:
            optimal.append(profile)
    return frozenset(optimal)


def strictly_dominant_profile(game: Game) -> Optional[Profile]:
    """The profile of per-player strictly dominant strategies, if every
    player has one (single-strategy players qualify vacuously)."""
    space = game.space
    profile = []
    for k, player in enumerate(space.players):
        names = space.strategies[k]
        pairs = dominance(game, player)
        winners = [
            s
            for s in range(len(names))
            if all((names[s], names[t], "strict") in pairs for t in range(len(names)) if t != s)
        ]
        if len(winners) != 1:
            return None
        profile.append(winners[0])
    return tuple(profile)


@dataclass(frozen=True)
class AnalysisReport:
    pure_nash: frozenset[Profile]
    dominance: Mapping[str, frozenset[DominancePair]]
    constant_sum: Optional[Fraction]
    pareto_optimal: frozenset[Profile]
    strictly_dominant_profile: Optional[Profile]


def report(game: Game) -> AnalysisReport:
    return AnalysisReport(
        pure_nash=pure_nash(game),
        dominance={player: dominance(game, player) for player in game.players},
        constant_sum=constant_sum(game),
        pareto_optimal=pareto_optimal(game),
        strictly_dominant_profile=strictly_dominant_profile(game),
    )
