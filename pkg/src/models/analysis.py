# %%
"""Null players, dummy coalitions, the normalized index and coefficients of determination."""
import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from src.games import fast_transforms as ft
from src.games.core import (
    Coalition,
    Game,
    cardinalities,
    check_coalition,
    check_player,
    mobius,
    multilinear_eval,
    s_difference,
)
from src.games.weights import ProfileLike, as_profile, orthonormal_coefficients, weights
from src.models.approximation import best_approximation, check_degree
from src.models.indexes import weighted_banzhaf
from src.utils.exceptions import ConstantGameError, GameValidationError
from src.utils.utils import table_scale

log = logging.getLogger(__name__)

# zero tests are absolute, scaled by max(1, ||f||_inf)
ZERO_ATOL = 1e-10
# below this standard deviation a game counts as constant
MIN_STD = 1e-12


@dataclass(frozen=True)
class GameStatistics:
    """mean and variance of f(C) for the random coalition C"""

    mean: float
    variance: float

    @property
    def std(self) -> float:
        return float(np.sqrt(self.variance))


def _zero_tol(f: Game) -> float:
    return ZERO_ATOL * table_scale(f.values)


# %%
def is_null_player(f: Game, i: int) -> bool:
    i = check_player(f.n, i)
    diff = s_difference(f, 1 << (i - 1)).values
    return bool(np.all(np.abs(diff) <= _zero_tol(f)))


def null_players(f: Game) -> List[int]:
    return [i for i in range(1, f.n + 1) if is_null_player(f, i)]


def is_dummy_coalition(f: Game, s: Coalition) -> bool:
    """no Mobius coefficient above tolerance crosses the partition {S, N \\ S}"""
    s = check_coalition(f.n, s)
    m = ft.masks(f.n)
    full = (1 << f.n) - 1
    crossing = ((m & s) != 0) & ((m & (full ^ s)) != 0)
    a = mobius(f).coeffs
    return not bool(np.any(np.abs(a[crossing]) > _zero_tol(f)))


def is_dummy_player(f: Game, i: int) -> bool:
    return is_dummy_coalition(f, 1 << (check_player(f.n, i) - 1))


def dummy_decomposition(f: Game, s: Coalition) -> Tuple[Game, Game]:
    """f_S(T) = f(T & S) and f_{N \\ S}(T) = f(T \\ S) - f(empty)

    The sum of the two parts equals f exactly when S is dummy in f.
    """
    s = check_coalition(f.n, s)
    m = ft.masks(f.n)
    inside = f.values[m & s]
    outside = f.values[m & ~s] - f.values[0]
    return Game(f.n, inside), Game(f.n, outside)


# %%
def statistics(f: Game, p: ProfileLike) -> GameStatistics:
    p = as_profile(p).require_players(f.n)
    mean = multilinear_eval(f, p.p)
    centered = f.values - mean
    variance = float(np.dot(weights(p).w, centered * centered))
    return GameStatistics(mean, max(variance, 0.0))


def _std_or_raise(f: Game, p) -> float:
    std = statistics(f, p).std
    if std <= MIN_STD:
        raise ConstantGameError("the game is constant under this profile; r is undefined")
    return std


def normalized_index(f: Game, p: ProfileLike, s: Coalition) -> float:
    """r(f, S) = I_{B,p}(f, S) prod_{i in S} sqrt(p_i (1 - p_i)) / sigma(f)"""
    p = as_profile(p).require_players(f.n).require_strict()
    s = check_coalition(f.n, s)
    if s == 0:
        raise GameValidationError("the normalized index is defined for nonempty coalitions only")
    std = _std_or_raise(f, p)
    scale = float(np.prod(p.scales[[j for j in ft.bits(s)]]))
    return weighted_banzhaf(f, p, s) * scale / std


def normalized_index_all(f: Game, p: ProfileLike) -> np.ndarray:
    """r(f, S) = <f, v_S> / sigma(f) for every S; the entry at the empty set is 0"""
    p = as_profile(p).require_players(f.n).require_strict()
    std = _std_or_raise(f, p)
    r = orthonormal_coefficients(f, p) / std
    r[0] = 0.0
    return r


def r_squared(f: Game, p: ProfileLike, k: int) -> float:
    """sigma^2(f_k) / sigma^2(f)"""
    p = as_profile(p).require_players(f.n).require_strict()
    k = check_degree(f.n, k)
    std = _std_or_raise(f, p)
    approx = best_approximation(f, p, k)
    return statistics(approx.game(), p).variance / (std * std)


def r_squared_from_correlations(f: Game, p: ProfileLike, k: int) -> float:
    """sum_{1 <= |T| <= k} r(f, T)^2"""
    p = as_profile(p).require_players(f.n).require_strict()
    k = check_degree(f.n, k)
    r = normalized_index_all(f, p)
    return float(np.sum(np.square(r[cardinalities(f.n) <= k])))
