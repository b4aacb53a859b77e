# %%
"""JSON game documents and profile specs.

A document holds ``n``, an optional ``name`` and exactly one of

* ``values``: the dense table of 2^n reals, index = bitmask, bit i-1 = player i;
* ``mobius``: a sparse list of ``{"players": [...], "coeff": c}`` terms, players 1-based.
"""
import json
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from src.games.core import (
    Game,
    MobiusTransform,
    check_players,
    coalition,
    from_mobius,
    members,
)
from src.games.weights import ProbabilityProfile
from src.models.approximation import Approximation
from src.utils.exceptions import GameFileError, GameValidationError, ProfileError
from src.utils.utils import clean

log = logging.getLogger(__name__)

VALUES = "values"
MOBIUS = "mobius"


@dataclass
class GameDocument:
    n: int
    values: Optional[List[float]] = None
    mobius: Optional[List[Tuple[List[int], float]]] = None
    name: Optional[str] = None

    def to_game(self) -> Game:
        if self.values is not None:
            return Game(self.n, self.values)
        coeffs = np.zeros(1 << self.n)
        for players, coeff in self.mobius:
            coeffs[coalition(players)] = coeff
        return from_mobius(MobiusTransform(self.n, coeffs))

    def to_json(self) -> Dict[str, Any]:
        doc: Dict[str, Any] = {}
        if self.name is not None:
            doc["name"] = self.name
        doc["n"] = self.n
        if self.values is not None:
            doc[VALUES] = [clean(v) for v in self.values]
        else:
            doc[MOBIUS] = [{"players": list(ps), "coeff": clean(c)} for ps, c in self.mobius]
        return doc


def _reject_constant(token: str):
    raise GameFileError(f"non-finite number {token} in game document")


def _number(x: Any, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise GameFileError(f"{where} must be a number, got {x!r}")
    try:
        value = float(x)
    except OverflowError:
        raise GameFileError(f"{where} is too large for a float")
    if not math.isfinite(value):
        raise GameFileError(f"{where} is not finite")
    return value


def parse_document(raw: Dict[str, Any]) -> GameDocument:
    if not isinstance(raw, dict):
        raise GameFileError("game document must be a JSON object")
    unknown = set(raw) - {"n", "name", VALUES, MOBIUS}
    if unknown:
        raise GameFileError(f"unknown keys {sorted(unknown)}")
    n = raw.get("n")
    if isinstance(n, bool) or not isinstance(n, int):
        raise GameFileError(f"'n' must be an integer, got {n!r}")
    try:
        n = check_players(n)
    except GameValidationError as e:
        raise GameFileError(str(e))
    name = raw.get("name")
    if name is not None and not isinstance(name, str):
        raise GameFileError("'name' must be a string")
    if (VALUES in raw) == (MOBIUS in raw):
        raise GameFileError("exactly one of 'values' and 'mobius' must be present")

    if VALUES in raw:
        values = raw[VALUES]
        if not isinstance(values, list) or len(values) != 1 << n:
            raise GameFileError(f"'values' must be a list of 2^{n}={1 << n} numbers")
        return GameDocument(n, [_number(v, f"values[{m}]") for m, v in enumerate(values)], None, name)

    terms = raw[MOBIUS]
    if not isinstance(terms, list):
        raise GameFileError("'mobius' must be a list of terms")
    parsed, seen = [], set()
    for idx, term in enumerate(terms):
        if not isinstance(term, dict) or set(term) != {"players", "coeff"}:
            raise GameFileError(f"mobius[{idx}] must have exactly 'players' and 'coeff'")
        players = term["players"]
        if not isinstance(players, list) or any(
            isinstance(i, bool) or not isinstance(i, int) or not 1 <= i <= n for i in players
        ):
            raise GameFileError(f"mobius[{idx}].players must list player ids in 1..{n}")
        if len(set(players)) != len(players):
            raise GameFileError(f"mobius[{idx}].players has duplicates")
        mask = coalition(players)
        if mask in seen:
            raise GameFileError(f"coalition {sorted(players)} appears twice in 'mobius'")
        seen.add(mask)
        parsed.append((sorted(players), _number(term["coeff"], f"mobius[{idx}].coeff")))
    return GameDocument(n, None, parsed, name)


def load_document(path: str) -> GameDocument:
    """read a game document; OSError propagates, malformed content raises GameFileError"""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except UnicodeDecodeError as e:
        raise GameFileError(f"{path}: not UTF-8 text ({e.reason} at byte {e.start})")
    try:
        raw = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise GameFileError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})")
    except (ValueError, RecursionError) as e:
        raise GameFileError(f"{path}: invalid JSON ({e})")
    doc = parse_document(raw)
    log.info("loaded %s: n=%d, %s representation", path, doc.n, VALUES if doc.values is not None else MOBIUS)
    return doc


def dumps_document(doc: GameDocument) -> str:
    return json.dumps(doc.to_json(), indent=2) + "\n"


def save_document(doc: GameDocument, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_document(doc))


def document_from_game(game: Game, name: Optional[str] = None) -> GameDocument:
    return GameDocument(game.n, [float(v) for v in game.values], None, name)


def document_from_approximation(approx: Approximation, name: Optional[str] = None) -> GameDocument:
    terms = [(members(m), c) for m, c in approx.terms()]
    return GameDocument(approx.n, None, terms, name)


# %%
def parse_profile(text: str, n: int) -> ProbabilityProfile:
    """a single value (uniform profile) or n comma-separated values"""
    tokens = [t.strip() for t in str(text).split(",")]
    try:
        values = [float(t) for t in tokens]
    except ValueError:
        raise ProfileError(f"profile {text!r} is not a number or a list of numbers")
    if len(values) == 1:
        values = values * n
    if len(values) != n:
        raise ProfileError(f"profile lists {len(values)} values but the game has {n} players")
    return ProbabilityProfile(np.array(values))
