"""File-based command line interface.

Documents are JSON.  A game document looks like

    {
      "schema": 1,
      "players": ["I", "II"],
      "strategies": [["C", "D"], ["C", "D"]],
      "payoffs": [[["4", "4"], ["0", "5"]], [["5", "0"], ["1", "1"]]]
    }

with payoffs nested one level per player (player 1 outermost) and each
innermost list holding one rational per player.  Rationals may be written
as integers, integer strings, decimal strings ("0.5"), or ratio strings
("1/2"); they are always re-serialized as ratio strings in lowest terms
(integers without a denominator).  Seed documents reuse the same grammar
with ``null`` for unspecified cells.  An offer document is

    {"schema": 1, "offers": [{"payer": "I", "payee": "II",
                              "strategy": "C", "amount": "2"}]}

Exit codes: 0 success, 1 domain failure (target unreachable, seed sum
violation, nonpositive margin), 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from .analyze import report
from .characterize import check_equivalence
from .complete import Seed, complete_from_seed
from .core import Game, Profile, StrategySpace, as_rational, make_game
from .errors import (
    NonpositiveMargin,
    NotEquivalent,
    ParseError,
    PreplayError,
    SeedSumViolation,
)
from .offers import Offer, OfferSet, apply_offer_set, invert_offer_set
from .synth import make_profile_dominant, nonnegative_decomposition, synthesize_offers

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# document parsing and serialization


def _load_json(data: Union[str, bytes], source: str):
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(source, "document", f"not valid UTF-8: {exc}") from None
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(source, f"line {exc.lineno} column {exc.colno}", exc.msg) from None


def _expect_object(node, source: str, location: str) -> dict:
    if not isinstance(node, dict):
        raise ParseError(source, location, f"expected an object, got {type(node).__name__}")
    return node


def _expect_list(node, source: str, location: str, length: Optional[int] = None) -> list:
    if not isinstance(node, list):
        raise ParseError(source, location, f"expected an array, got {type(node).__name__}")
    if length is not None and len(node) != length:
        raise ParseError(source, location, f"expected {length} elements, got {len(node)}")
    return node


def _expect_string(node, source: str, location: str) -> str:
    if not isinstance(node, str):
        raise ParseError(source, location, f"expected a string, got {type(node).__name__}")
    return node


def _expect_rational(node, source: str, location: str) -> Fraction:
    if isinstance(node, bool) or not isinstance(node, (int, str)):
        raise ParseError(
            source,
            location,
            f"expected an integer or a rational string, got {json.dumps(node)}",
        )
    try:
        return as_rational(node)
    except ValueError:
        raise ParseError(source, location, f"not a rational: {json.dumps(node)}") from None


def _check_schema(doc: dict, source: str) -> None:
    version = doc.get("schema", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ParseError(source, "schema", f"unsupported schema version {version!r}")


def _parse_frame(doc: dict, source: str) -> StrategySpace:
    players = _expect_list(doc.get("players"), source, "players")
    players = tuple(
        _expect_string(p, source, f"players[{i}]") for i, p in enumerate(players)
    )
    strategy_rows = _expect_list(doc.get("strategies"), source, "strategies", len(players))
    strategies = tuple(
        tuple(
            _expect_string(s, source, f"strategies[{i}][{j}]")
            for j, s in enumerate(_expect_list(row, source, f"strategies[{i}]"))
        )
        for i, row in enumerate(strategy_rows)
    )
    try:
        return StrategySpace(players, strategies)
    except PreplayError as exc:
        raise ParseError(source, "players/strategies", str(exc)) from None


def _walk_payoffs(node, space: StrategySpace, source: str, visit) -> None:
    """Drive ``visit(profile, cell_node, location)`` over the nested payoff
    arrays, one nesting level per player."""
    counts = space.shape.strategy_counts

    def walk(node, prefix: tuple[int, ...], location: str) -> None:
        depth = len(prefix)
        if depth == len(counts):
            visit(prefix, node, location)
            return
        children = _expect_list(node, source, location, counts[depth])
        for i, child in enumerate(children):
            walk(child, prefix + (i,), f"{location}[{i}]")

    walk(node, (), "payoffs")


def parse_game(data: Union[str, bytes], *, source: str = "<game>") -> Game:
    """Parse a game document; raises ParseError naming the offending element."""
    doc = _expect_object(_load_json(data, source), source, "document")
    _check_schema(doc, source)
    space = _parse_frame(doc, source)
    n = len(space.players)
    cells: list[tuple[Fraction, ...]] = []

    def visit(profile, node, location):
        values = _expect_list(node, source, location, n)
        cells.append(
            tuple(
                _expect_rational(v, source, f"{location}[{i}]") for i, v in enumerate(values)
            )
        )

    _walk_payoffs(doc.get("payoffs"), space, source, visit)
    return Game(space.players, space.strategies, tuple(cells))


def _render_rational(value: Fraction) -> str:
    return str(value)


def serialize_game(game: Game) -> str:
    """Deterministic game document; parse(serialize(g)) == g and
    serialize(parse(serialize(...))) is a fixpoint."""
    shape = game.shape
    counts, strides = shape.strategy_counts, shape.strides

    def nest(axis: int, flat: int):
        if axis == len(counts):
            return [_render_rational(v) for v in game.payoffs[flat]]
        return [nest(axis + 1, flat + i * strides[axis]) for i in range(counts[axis])]

    doc = {
        "schema": SCHEMA_VERSION,
        "players": list(game.players),
        "strategies": [list(row) for row in game.strategies],
        "payoffs": nest(0, 0),
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_offers(
    data: Union[str, bytes],
    space: StrategySpace,
    *,
    source: str = "<offers>",
    strict: bool = False,
) -> OfferSet:
    """Parse an offer document against a game's players and strategies.

    With ``strict`` set, negative amounts are rejected (offers as raw
    promises of payment); by default they are admitted as reverse transfers.
    """
    doc = _expect_object(_load_json(data, source), source, "document")
    _check_schema(doc, source)
    entries = _expect_list(doc.get("offers"), source, "offers")
    offers = []
    for i, entry in enumerate(entries):
        location = f"offers[{i}]"
        entry = _expect_object(entry, source, location)
        payer = _expect_string(entry.get("payer"), source, f"{location}.payer")
        payee = _expect_string(entry.get("payee"), source, f"{location}.payee")
        strategy = _expect_string(entry.get("strategy"), source, f"{location}.strategy")
        amount = _expect_rational(entry.get("amount"), source, f"{location}.amount")
        if strict and amount < 0:
            raise ParseError(
                source, f"{location}.amount", f"negative amount {amount} (strict mode)"
            )
        try:
            offer = Offer(payer, payee, strategy, amount)
            space.player_index(payer)
            space.strategy_index(payee, strategy)
        except PreplayError as exc:
            raise ParseError(source, location, str(exc)) from None
        offers.append(offer)
    return OfferSet(space, tuple(offers))


def serialize_offers(offer_set: OfferSet) -> str:
    doc = {
        "schema": SCHEMA_VERSION,
        "offers": [
            {
                "payer": o.payer,
                "payee": o.payee,
                "strategy": o.payee_strategy,
                "amount": _render_rational(o.amount),
            }
            for o in offer_set
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_seed_assignments(
    data: Union[str, bytes], game: Game, *, source: str = "<seed>"
) -> dict[Profile, tuple[Fraction, ...]]:
    """Parse a seed document: the game document grammar with ``null`` in
    every unspecified cell.  Players and strategies must match the game."""
    doc = _expect_object(_load_json(data, source), source, "document")
    _check_schema(doc, source)
    space = _parse_frame(doc, source)
    if space != game.space:
        raise ParseError(
            source, "players/strategies", "seed document does not match the game's frame"
        )
    n = len(space.players)
    assignments: dict[Profile, tuple[Fraction, ...]] = {}

    def visit(profile, node, location):
        if node is None:
            return
        values = _expect_list(node, source, location, n)
        assignments[profile] = tuple(
            _expect_rational(v, source, f"{location}[{i}]") for i, v in enumerate(values)
        )

    _walk_payoffs(doc.get("payoffs"), space, source, visit)
    return assignments


# ---------------------------------------------------------------------------
# rendering


def format_matrix(game: Game) -> str:
    """Two-person payoff matrix, row player first; generic outcome listing
    for other player counts."""
    shape = game.shape
    if shape.player_count != 2:
        lines = []
        for p in shape.profiles():
            cell = ",".join(_render_rational(v) for v in game.payoff(p))
            lines.append(f"{game.space.name_profile(p)}: {cell}")
        return "\n".join(lines)
    rows, cols = game.strategies
    cell_text = {
        (i, j): ",".join(_render_rational(v) for v in game.payoff((i, j)))
        for i in range(len(rows))
        for j in range(len(cols))
    }
    row_width = max(len(r) for r in rows)
    col_widths = [
        max(len(cols[j]), max(len(cell_text[(i, j)]) for i in range(len(rows))))
        for j in range(len(cols))
    ]
    header = " " * row_width + " | " + " | ".join(
        cols[j].rjust(col_widths[j]) for j in range(len(cols))
    )
    lines = [header]
    for i, r in enumerate(rows):
        lines.append(
            r.rjust(row_width)
            + " | "
            + " | ".join(cell_text[(i, j)].rjust(col_widths[j]) for j in range(len(cols)))
        )
    return "\n".join(lines)


def _format_profiles(game: Game, profiles) -> str:
    if not profiles:
        return "none"
    return ", ".join(game.space.name_profile(p) for p in sorted(profiles))


def _sorted_pairs(game: Game, player: str, pairs):
    index = {name: i for i, name in enumerate(game.strategies[game.space.player_index(player)])}
    return sorted(pairs, key=lambda pair: (index[pair[0]], index[pair[1]], pair[2]))


def format_report(game: Game) -> str:
    analysis = report(game)
    lines = [f"players: {', '.join(game.players)}"]
    lines.append(f"pure Nash equilibria: {_format_profiles(game, analysis.pure_nash)}")
    lines.append("dominance:")
    for player in game.players:
        pairs = analysis.dominance[player]
        strict = {(s, t) for s, t, kind in pairs if kind == "strict"}
        phrases = []
        for s, t, kind in _sorted_pairs(game, player, pairs):
            if kind == "strict":
                phrases.append(f"{s} strictly dominates {t}")
            elif (s, t) not in strict:
                phrases.append(f"{s} weakly dominates {t}")
        lines.append(f"  {player}: " + ("; ".join(phrases) if phrases else "none"))
    total = analysis.constant_sum
    lines.append(f"constant sum: {_render_rational(total) if total is not None else 'none'}")
    lines.append(f"Pareto optimal: {_format_profiles(game, analysis.pareto_optimal)}")
    dominant = analysis.strictly_dominant_profile
    lines.append(
        "strictly dominant profile: "
        + (game.space.name_profile(dominant) if dominant is not None else "none")
    )
    return "\n".join(lines) + "\n"


def _json_report(game: Game) -> str:
    analysis = report(game)
    names = game.space.profile_names
    doc = {
        "players": list(game.players),
        "pure_nash": [list(names(p)) for p in sorted(analysis.pure_nash)],
        "dominance": {
            player: [
                {"dominator": s, "dominated": t, "kind": kind}
                for s, t, kind in _sorted_pairs(game, player, analysis.dominance[player])
            ]
            for player in game.players
        },
        "constant_sum": (
            _render_rational(analysis.constant_sum)
            if analysis.constant_sum is not None
            else None
        ),
        "pareto_optimal": [list(names(p)) for p in sorted(analysis.pareto_optimal)],
        "strictly_dominant_profile": (
            list(names(analysis.strictly_dominant_profile))
            if analysis.strictly_dominant_profile is not None
            else None
        ),
    }
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# commands


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _read_game(path: str) -> Game:
    return parse_game(_read_text(path), source=path)


def _read_offers(path: str, space: StrategySpace, strict: bool) -> OfferSet:
    return parse_offers(_read_text(path), space, source=path, strict=strict)


def _profile_option(game: Game, text: str, option: str) -> Profile:
    names = text.split(",")
    try:
        return game.space.profile_from_names(names)
    except PreplayError as exc:
        raise ParseError("command line", option, str(exc)) from None


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_apply(args) -> int:
    game = _read_game(args.game)
    offers = _read_offers(args.offers, game.space, args.strict)
    _emit(args, serialize_game(apply_offer_set(game, offers)))
    return 0


def _cmd_check(args) -> int:
    source = _read_game(args.game)
    target = _read_game(args.target)
    verdict = check_equivalence(source, target)
    print(verdict.describe())
    return 0 if verdict.equivalent else 1


def _cmd_synth(args) -> int:
    source = _read_game(args.game)
    target = _read_game(args.target)
    try:
        result = synthesize_offers(source, target)
    except NotEquivalent as exc:
        print(exc.verdict.describe(), file=sys.stderr)
        return 1
    offers = result.offers
    if args.nonnegative:
        offers = nonnegative_decomposition(offers)
    _emit(args, serialize_offers(offers))
    return 0


def _cmd_complete(args) -> int:
    game = _read_game(args.game)
    assignments = parse_seed_assignments(_read_text(args.seed), game, source=args.seed)
    if args.base is not None:
        base = _profile_option(game, args.base, "--base")
    else:
        base = (0,) * game.shape.player_count
    completed = complete_from_seed(game, Seed(base, assignments))
    _emit(args, serialize_game(completed))
    return 0


def _cmd_invert(args) -> int:
    game = _read_game(args.game)
    offers = _read_offers(args.offers, game.space, args.strict)
    _emit(args, serialize_offers(invert_offer_set(offers)))
    return 0


def _cmd_dominate(args) -> int:
    game = _read_game(args.game)
    profile = _profile_option(game, args.profile, "--profile")
    try:
        margin = as_rational(args.margin)
    except ValueError:
        raise ParseError("command line", "--margin", f"not a rational: {args.margin!r}") from None
    _emit(args, serialize_offers(make_profile_dominant(game, profile, margin)))
    return 0


def _cmd_analyze(args) -> int:
    game = _read_game(args.game)
    sys.stdout.write(_json_report(game) if args.json else format_report(game))
    return 0


_PD_PAYOFFS = {
    ("C", "C"): ("4", "4"),
    ("C", "D"): ("0", "5"),
    ("D", "C"): ("5", "0"),
    ("D", "D"): ("1", "1"),
}


def _cmd_demo(args) -> int:
    game = make_game(("I", "II"), (("C", "D"), ("C", "D")), _PD_PAYOFFS)
    space = game.space
    steps = [
        ("M0 (the Prisoner's Dilemma)", None),
        ("M1 = M0 after the offer", Offer("I", "II", "C", Fraction(2))),
        ("M2 = M1 after the offer", Offer("II", "I", "C", Fraction(2))),
    ]
    out = ["Prisoner's Dilemma, transformed by two preplay offers", ""]
    for title, offer in steps:
        if offer is not None:
            out.append(f"offer: {offer.describe()}")
            game = apply_offer_set(game, OfferSet(space, (offer,)))
        out.append(f"{title}:")
        out.append(format_matrix(game))
        nash = _format_profiles(game, report(game).pure_nash)
        out.append(f"pure Nash equilibria: {nash}")
        out.append("")
    sys.stdout.write("\n".join(out))
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="preplay",
        description="Transform normal form games with binding preplay offers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("apply", _cmd_apply, "apply an offer set to a game")
    p.add_argument("game")
    p.add_argument("offers")
    p.add_argument("-o", "--output")
    p.add_argument("--strict", action="store_true", help="reject negative amounts")

    p = add("check", _cmd_check, "decide whether a target is reachable by offers")
    p.add_argument("game")
    p.add_argument("target")

    p = add("synth", _cmd_synth, "construct offers realizing a reachable target")
    p.add_argument("game")
    p.add_argument("target")
    p.add_argument("--nonnegative", action="store_true", help="decompose negative amounts")
    p.add_argument("-o", "--output")

    p = add("complete", _cmd_complete, "extend a star seed to the unique reachable game")
    p.add_argument("game")
    p.add_argument("seed")
    p.add_argument("--base", help="base profile as comma-separated strategy names")
    p.add_argument("-o", "--output")

    p = add("invert", _cmd_invert, "construct the offer set undoing another")
    p.add_argument("game")
    p.add_argument("offers")
    p.add_argument("-o", "--output")
    p.add_argument("--strict", action="store_true", help="reject negative amounts")

    p = add("dominate", _cmd_dominate, "make a chosen profile strictly dominant")
    p.add_argument("game")
    p.add_argument("--profile", required=True, help="comma-separated strategy names")
    p.add_argument("--margin", default="1", help="required dominance margin (positive rational)")
    p.add_argument("-o", "--output")

    p = add("analyze", _cmd_analyze, "pure-strategy analysis of a game")
    p.add_argument("game")
    p.add_argument("--json", action="store_true")

    p = add("demo", _cmd_demo, "worked walkthrough")
    p.add_argument("topic", choices=["pd"])

    return parser


def run(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SeedSumViolation, NonpositiveMargin) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NotEquivalent as exc:
        print(exc.verdict.describe(), file=sys.stderr)
        return 1
    except PreplayError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
