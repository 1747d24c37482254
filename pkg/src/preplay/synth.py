"""Construct concrete offer sets.

Three constructions:

* ``synthesize_offers`` — given a reachable target, solve for net pairwise
  offers that realize it.  The unknowns are one net amount per (payer,
  payee, payee-strategy) triple; player j's payoff difference at profile p
  must equal (incoming offers contingent on j's own choice) minus (outgoing
  offers contingent on the payees' choices):

      c_j(p) = sum_k e[k, j, p_j] - sum_k e[j, k, p_k]

  The system is underdetermined; exact Gauss-Jordan elimination solves it
  and every free variable is pinned to zero, giving a canonical result.

* ``nonnegative_decomposition`` — rewrite any offer set as one with only
  nonnegative amounts inducing the same transformation (a negative offer is
  the inverse of its positive mirror, and inverses are built from
  nonnegative offers).

* ``make_profile_dominant`` — pay each player just enough, contingent on
  their designated strategy, to make that strategy strictly dominant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .characterize import check_equivalence, diff_tensor
from .core import Game, Profile, RationalLike, as_rational
from .errors import (
    ArityMismatch,
    IndexOutOfRange,
    InvalidProfile,
    NonpositiveMargin,
    NotEquivalent,
)
from .offers import Offer, OfferSet, canonicalize, invert_offer

__all__ = [
    "SynthesisResult",
    "make_profile_dominant",
    "nonnegative_decomposition",
    "synthesize_offers",
]


@dataclass(frozen=True)
class SynthesisResult:
    """A canonical offer set realizing the requested target, plus the free
    variables of the underdetermined system that were pinned to zero.

    Variable ids read ``payer->payee/strategy``.
    """

    offers: OfferSet
    pinned_variables: tuple[tuple[str, Fraction], ...]


def _solve_pinning_free(
    rows: list[list[Fraction]], rhs: list[Fraction]
) -> tuple[list[Fraction], list[int]]:
    """Exact Gauss-Jordan over the rationals.

    Returns one solution (every non-pivot column set to zero) together with
    the list of free column indices.  Raises if the system is inconsistent.
    """
    height = len(rows)
    width = len(rows[0]) if rows else 0
    aug = [row + [b] for row, b in zip(rows, rhs)]
    pivot_cols: list[int] = []
    r = 0
    for col in range(width):
        pivot = next((i for i in range(r, height) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        lead = aug[r][col]
        if lead != 1:
            aug[r] = [x / lead for x in aug[r]]
        for i in range(height):
            if i != r and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[r])]
        pivot_cols.append(col)
        r += 1
        if r == height:
            break
    for i in range(r, height):
        if aug[i][width] != 0:
            raise RuntimeError("offer system inconsistent despite passing the reachability check")
    solution = [Fraction(0)] * width
    for row_index, col in enumerate(pivot_cols):
        solution[col] = aug[row_index][width]
    pivot_set = set(pivot_cols)
    free = [c for c in range(width) if c not in pivot_set]
    return solution, free


def synthesize_offers(source: Game, target: Game) -> SynthesisResult:
    """Find a canonical offer set tau with apply_offer_set(source, tau) == target.

    Raises NotEquivalent (carrying the failed verdict) when no offer set can
    reach the target.  Amounts in the result may be negative; feed the result
    through ``nonnegative_decomposition`` if payments must be nonnegative.

    Once the reachability check passes, the difference tensor is additively
    separable per player, so it is fully determined by its values on the
    coordinate star of (1,…,1); the linear system is therefore built over
    star profiles only, which keeps it tiny.
    """
    verdict = check_equivalence(source, target)
    if not verdict.equivalent:
        raise NotEquivalent(verdict)

    space = source.space
    shape = space.shape
    n = shape.player_count
    diff = diff_tensor(source, target)

    # unknown net offers e[payer, payee, payee-strategy], payee-major order:
    # the 2-person column order is then [all of B's offers to A, all of A's
    # offers to B] and left-to-right elimination leaves A's offer on B's
    # last strategy free, i.e. pinned to zero.
    columns: list[tuple[int, int, int]] = [
        (payer, payee, action)
        for payee in range(n)
        for payer in range(n)
        if payer != payee
        for action in range(shape.strategy_counts[payee])
    ]
    index_of = {var: i for i, var in enumerate(columns)}

    base = (0,) * n
    star = list(shape.star(base))
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    zero = Fraction(0)
    for j in range(n):
        for p in star:
            row = [zero] * len(columns)
            for k in range(n):
                if k == j:
                    continue
                row[index_of[(k, j, p[j])]] += 1
                row[index_of[(j, k, p[k])]] -= 1
            rows.append(row)
            rhs.append(diff.value(p, j))

    solution, free = _solve_pinning_free(rows, rhs)

    def var_id(var: tuple[int, int, int]) -> str:
        payer, payee, action = var
        return f"{space.players[payer]}->{space.players[payee]}/{space.strategies[payee][action]}"

    offers = tuple(
        Offer(
            space.players[payer],
            space.players[payee],
            space.strategies[payee][action],
            amount,
        )
        for (payer, payee, action), amount in zip(columns, solution)
        if amount != 0
    )
    pinned = tuple((var_id(columns[c]), Fraction(0)) for c in free)
    return SynthesisResult(canonicalize(OfferSet(space, offers)), pinned)


def nonnegative_decomposition(offer_set: OfferSet) -> OfferSet:
    """Rewrite an offer set with nonnegative amounts only.

    Each net negative offer of amount -d is replaced by the inverse of its
    positive mirror: the payer offers d on each of the payee's other
    strategies and the payee offers d back on every payer strategy.  The
    replacement induces the same transformation on every game of the shape.
    """
    space = offer_set.space
    out: list[Offer] = []
    for offer in canonicalize(offer_set):
        if offer.amount >= 0:
            out.append(offer)
        else:
            mirror = Offer(offer.payer, offer.payee, offer.payee_strategy, -offer.amount)
            out.extend(invert_offer(mirror, space))
    return canonicalize(OfferSet(space, tuple(out)))


def make_profile_dominant(
    game: Game, profile: Sequence[int], margin: RationalLike
) -> OfferSet:
    """Offers that make each player's designated strategy strictly dominant.

    For each player the cyclically next player offers just enough —
    contingent on the designated strategy — that it beats every alternative
    by at least ``margin`` against every opposing profile.  Players already
    dominant by more than the margin get no offer.  A player's own outgoing
    offers are contingent on *other* players' choices, so they never disturb
    that player's own dominance order; incoming offers alone settle it.
    """
    margin = as_rational(margin)
    if margin <= 0:
        raise NonpositiveMargin(f"margin must be positive, got {margin}")
    shape = game.shape
    try:
        profile = shape.validate_profile(profile)
    except (ArityMismatch, IndexOutOfRange) as exc:
        raise InvalidProfile(str(exc)) from None

    space = game.space
    n = shape.player_count
    offers: list[Offer] = []
    for k in range(n):
        designated = profile[k]
        # worst shortfall: how much some alternative beats the designated
        # strategy by, across all opposing profiles
        gap = None
        for p in shape.profiles():
            if p[k] == designated:
                continue
            q = p[:k] + (designated,) + p[k + 1 :]
            advantage = game.payoff(p)[k] - game.payoff(q)[k]
            if gap is None or advantage > gap:
                gap = advantage
        if gap is None:
            continue  # single strategy: nothing to dominate
        amount = max(Fraction(0), gap + margin)
        offers.append(
            Offer(
                space.players[(k + 1) % n],
                space.players[k],
                space.strategies[k][designated],
                amount,
            )
        )
    return canonicalize(OfferSet(space, tuple(offers)))
