# %%
"""Games on N = {1, ..., n} stored as dense tables indexed by coalition bitmask."""
import logging
from dataclasses import dataclass
from typing import Callable, Iterable, List, Sequence, Union

import numpy as np
from jaxtyping import Float

from src.games import fast_transforms as ft
from src.utils.exceptions import GameValidationError

log = logging.getLogger(__name__)

MAX_PLAYERS = 26

# bit i - 1 of the mask is player i
Coalition = int


def coalition(players: Iterable[int]) -> Coalition:
    """mask of the 1-based player ids"""
    mask = 0
    for i in players:
        i = int(i)
        if i < 1:
            raise GameValidationError(f"player ids are 1-based, got {i}")
        mask |= 1 << (i - 1)
    return mask


def members(mask: Coalition) -> List[int]:
    return [j + 1 for j in ft.bits(int(mask))]


def cardinalities(n: int) -> np.ndarray:
    return ft.cardinalities(n)


def check_players(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise GameValidationError(f"player count must be an integer, got {n!r}")
    if not 1 <= n <= MAX_PLAYERS:
        raise GameValidationError(f"player count must be in [1, {MAX_PLAYERS}], got {n}")
    return int(n)


def check_coalition(n: int, s: Coalition) -> Coalition:
    if isinstance(s, bool) or not isinstance(s, (int, np.integer)) or not 0 <= s < (1 << n):
        raise GameValidationError(f"coalition mask {s!r} is not valid for n={n}")
    return int(s)


def check_player(n: int, i: int) -> int:
    if isinstance(i, bool) or not isinstance(i, (int, np.integer)) or not 1 <= i <= n:
        raise GameValidationError(f"player {i!r} is not in 1..{n}")
    return int(i)


def _validated_table(n: int, values, what: str) -> np.ndarray:
    n = check_players(n)
    table = np.array(values, dtype=np.float64)
    if table.ndim != 1 or table.shape[0] != 1 << n:
        raise GameValidationError(
            f"{what} table must have length 2^{n}={1 << n}, got shape {table.shape}"
        )
    bad = np.flatnonzero(~np.isfinite(table))
    if bad.size:
        raise GameValidationError(
            f"{what} entry at mask {int(bad[0])} {members(int(bad[0]))} is not finite"
        )
    table.setflags(write=False)
    return table


# %%
@dataclass(frozen=True, eq=False)
class Game:
    """f : 2^N -> R, equivalently the pseudo-Boolean function x -> f(1_S)"""

    n: int
    values: Float[np.ndarray, "m"]

    def __post_init__(self):
        object.__setattr__(self, "n", check_players(self.n))
        object.__setattr__(self, "values", _validated_table(self.n, self.values, "game"))

    @classmethod
    def from_function(cls, n: int, fn: Callable[[Coalition], float]) -> "Game":
        return cls(n, [fn(m) for m in range(1 << check_players(n))])

    def __getitem__(self, s: Coalition) -> float:
        return float(self.values[check_coalition(self.n, s)])

    def _check_same(self, other: "Game"):
        if not isinstance(other, Game) or other.n != self.n:
            raise GameValidationError("games must share the same player set")

    def __add__(self, other: "Game") -> "Game":
        self._check_same(other)
        return Game(self.n, self.values + other.values)

    def __sub__(self, other: "Game") -> "Game":
        self._check_same(other)
        return Game(self.n, self.values - other.values)

    def __mul__(self, c: float) -> "Game":
        return Game(self.n, float(c) * self.values)

    __rmul__ = __mul__

    def shift(self, c: float) -> "Game":
        return Game(self.n, self.values + float(c))


@dataclass(frozen=True, eq=False)
class MobiusTransform:
    """coefficients a(S) of f = sum_S a(S) prod_{i in S} x_i"""

    n: int
    coeffs: Float[np.ndarray, "m"]

    def __post_init__(self):
        object.__setattr__(self, "n", check_players(self.n))
        object.__setattr__(self, "coeffs", _validated_table(self.n, self.coeffs, "Mobius"))

    def __getitem__(self, s: Coalition) -> float:
        return float(self.coeffs[check_coalition(self.n, s)])

    def degree(self, atol: float = 0.0) -> int:
        support = np.abs(self.coeffs) > atol
        if not support.any():
            return 0
        return int(cardinalities(self.n)[support].max())


# %%
def mobius(game: Game) -> MobiusTransform:
    table = np.array(game.values)
    ft.mobius_(table)
    return MobiusTransform(game.n, table)


def from_mobius(a: MobiusTransform) -> Game:
    table = np.array(a.coeffs)
    ft.zeta_(table)
    return Game(a.n, table)


def s_difference(game: Game, s: Coalition) -> Game:
    """table T -> (Delta^S f)(T); depends on T only through T \\ S"""
    s = check_coalition(game.n, s)
    table = np.array(game.values)
    ft.difference_(table, s)
    return Game(game.n, table)


def check_point(n: int, x: Union[Sequence[float], np.ndarray]) -> np.ndarray:
    point = np.asarray(x, dtype=np.float64)
    if point.shape != (n,):
        raise GameValidationError(f"point must have {n} coordinates, got shape {point.shape}")
    outside = np.flatnonzero(~((point >= 0.0) & (point <= 1.0)))
    if outside.size:
        i = int(outside[0])
        raise GameValidationError(f"coordinate of player {i + 1} is {point[i]!r}, not in [0, 1]")
    return point


def multilinear_eval(game: Game, x: Union[Sequence[float], np.ndarray]) -> float:
    """multilinear extension sum_S f(S) prod_{i in S} x_i prod_{i not in S} (1 - x_i)"""
    return ft.contract(game.values, check_point(game.n, x))


def unanimity(n: int, s: Coalition) -> Game:
    n = check_players(n)
    s = check_coalition(n, s)
    m = ft.masks(n)
    return Game(n, ((m & s) == s).astype(np.float64))


# %%
def _check_permutation(n: int, perm: Sequence[int]) -> List[int]:
    perm = [int(i) for i in perm]
    if sorted(perm) != list(range(1, n + 1)):
        raise GameValidationError(f"{perm} is not a permutation of 1..{n}")
    return perm


def permute_coalition(s: Coalition, perm: Sequence[int]) -> Coalition:
    """image of S when player i is relabelled perm[i - 1]"""
    return coalition(perm[i - 1] for i in members(s))


def permute(game: Game, perm: Sequence[int]) -> Game:
    """relabel player i as perm[i - 1]; coalition S of f becomes permute_coalition(S, perm)"""
    perm = _check_permutation(game.n, perm)
    m = ft.masks(game.n)
    image = np.zeros_like(m)
    for i, target in enumerate(perm):
        image |= ((m >> i) & 1) << (target - 1)
    table = np.empty(1 << game.n, dtype=np.float64)
    table[image] = game.values
    return Game(game.n, table)
