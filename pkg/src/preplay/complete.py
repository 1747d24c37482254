"""Complete a partially specified target game from a coordinate star.

Fixing target payoffs on the star of a base profile (the base plus every
profile differing from it in exactly one coordinate) pins down the entire
reachable target: the step-difference condition that characterizes
reachability doubles as a recurrence.  Writing c for the per-player
difference against the source, every profile p off the star satisfies

    c(p) = c(p with axis k stepped toward base)
         + c(p with axis l stepped toward base)
         - c(p with both stepped toward base)

for any two axes k, l where p differs from the base.  Sweeping profiles in
an order that fills those three neighbours first extends the seed uniquely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .characterize import check_equivalence
from .core import (
    Game,
    GameShape,
    PayoffVector,
    Profile,
    RationalLike,
    as_rational,
    format_profile,
    payoff_sum,
)
from .errors import ArityMismatch, IncompleteSeed, SeedSumViolation

__all__ = ["Seed", "complete_from_seed", "two_person_seed"]

SWEEPS = ("row-major", "diagonal")


@dataclass(frozen=True)
class Seed:
    """Target payoff vectors for every profile on the star of ``base_profile``."""

    base_profile: Profile
    assignments: Mapping[Profile, PayoffVector]

    def __post_init__(self):
        object.__setattr__(self, "base_profile", tuple(int(i) for i in self.base_profile))
        fixed = {
            tuple(int(i) for i in profile): tuple(as_rational(v) for v in vector)
            for profile, vector in dict(self.assignments).items()
        }
        object.__setattr__(self, "assignments", fixed)


def _sweep_order(shape: GameShape, base: Profile, sweep: str) -> list[Profile]:
    """Profiles ordered so that stepping any coordinate toward the base moves
    strictly earlier in the order."""
    if sweep == "row-major":
        # per axis: base first, then the upper side ascending, then the lower
        # side descending; lexicographic over those per-axis positions
        def axis_position(k: int, v: int) -> int:
            if v >= base[k]:
                return v - base[k]
            return (shape.strategy_counts[k] - base[k]) + (base[k] - v)

        key = lambda p: tuple(axis_position(k, v) for k, v in enumerate(p))
    elif sweep == "diagonal":
        key = lambda p: (sum(abs(v - b) for v, b in zip(p, base)), p)
    else:
        raise ValueError(f"unknown sweep {sweep!r}; expected one of {SWEEPS}")
    return sorted(shape.profiles(), key=key)


def _toward_base(profile: Profile, axis: int, base: Profile) -> Profile:
    step = -1 if profile[axis] > base[axis] else 1
    return profile[:axis] + (profile[axis] + step,) + profile[axis + 1 :]


def complete_from_seed(source: Game, seed: Seed, *, sweep: str = "row-major") -> Game:
    """The unique game that agrees with the seed on the star and is
    reachable from ``source`` by offers.

    The seed must cover exactly the star of its base profile, and each seed
    vector must have the same payoff total as the source at that profile
    (offers cannot change outcome totals, so no other seed is realizable).
    Both supported sweep orders produce the same game; ``diagonal`` exists
    to let tests confirm that.
    """
    space = source.space
    shape = space.shape
    n = shape.player_count
    base = shape.validate_profile(seed.base_profile)

    star = list(shape.star(base))
    star_set = set(star)
    provided = set(seed.assignments)
    missing = sorted(star_set - provided)
    extra = sorted(provided - star_set)
    if missing or extra:
        parts = []
        if missing:
            parts.append("missing " + ", ".join(format_profile(p) for p in missing))
        if extra:
            parts.append("unexpected " + ", ".join(format_profile(p) for p in extra))
        raise IncompleteSeed(
            f"seed must cover exactly the star of {format_profile(base)}: " + "; ".join(parts)
        )

    diff: dict[Profile, PayoffVector] = {}
    for p in star:
        vector = seed.assignments[p]
        if len(vector) != n:
            raise ArityMismatch(
                f"seed at {format_profile(p)}: payoff vector of length {len(vector)} "
                f"in a {n}-player game"
            )
        total = sum(vector, Fraction(0))
        required = payoff_sum(source, p)
        if total != required:
            raise SeedSumViolation(
                f"seed at {space.name_profile(p)} has payoff total {total}; "
                f"offers preserve the source total {required}"
            )
        diff[p] = tuple(t - s for t, s in zip(vector, source.payoff(p)))

    for p in _sweep_order(shape, base, sweep):
        if p in diff:
            continue
        k, l = [axis for axis in range(n) if p[axis] != base[axis]][:2]
        a = _toward_base(p, k, base)
        b = _toward_base(p, l, base)
        ab = _toward_base(a, l, base)
        diff[p] = tuple(x + y - z for x, y, z in zip(diff[a], diff[b], diff[ab]))

    payoffs = tuple(
        tuple(s + d for s, d in zip(cell, diff[p]))
        for cell, p in zip(source.payoffs, shape.profiles())
    )
    completed = Game(source.players, source.strategies, payoffs)
    if not check_equivalence(source, completed).equivalent:
        raise RuntimeError("completed game failed the reachability post-check")
    return completed


def two_person_seed(
    source: Game,
    base_profile: Sequence[int],
    first_player_values: Mapping[Sequence[int], RationalLike],
) -> Seed:
    """Build a two-person seed from the first player's target values alone;
    the second player's values are forced by outcome-sum preservation."""
    if source.shape.player_count != 2:
        raise ArityMismatch(
            f"first-player seeding needs exactly 2 players, got {source.shape.player_count}"
        )
    assignments = {}
    for profile, value in dict(first_player_values).items():
        profile = tuple(int(i) for i in profile)
        first = as_rational(value)
        assignments[profile] = (first, payoff_sum(source, profile) - first)
    return Seed(tuple(base_profile), assignments)
