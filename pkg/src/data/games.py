# %%
"""Game generators: voting games, additive and random games, structural injections."""
from typing import Sequence

import numpy as np

from src.games import fast_transforms as ft
from src.games.core import Coalition, Game, cardinalities, check_coalition, check_player, check_players
from src.games.weights import ProbabilityProfile


def majority_game(n: int = 3) -> Game:
    """f(S) = 1 iff |S| > n / 2"""
    n = check_players(n)
    return Game(n, (2 * cardinalities(n) > n).astype(np.float64))


def weighted_voting_game(player_weights: Sequence[float], quota: float) -> Game:
    """f(S) = 1 iff the weights of S sum above the quota"""
    player_weights = np.asarray(player_weights, dtype=np.float64)
    n = check_players(len(player_weights))
    total = np.zeros(1 << n)
    for j in range(n):
        _, hi = ft.halves(total, j)
        hi += player_weights[j]
    return Game(n, (total > quota).astype(np.float64))


def additive_game(values: Sequence[float], constant: float = 0.0) -> Game:
    """f(S) = constant + sum_{i in S} values[i - 1]"""
    values = np.asarray(values, dtype=np.float64)
    n = check_players(len(values))
    table = np.full(1 << n, float(constant))
    for j in range(n):
        _, hi = ft.halves(table, j)
        hi += values[j]
    return Game(n, table)


def random_game(n: int, rng: np.random.Generator, low: float = -1.0, high: float = 1.0) -> Game:
    n = check_players(n)
    return Game(n, rng.uniform(low, high, size=1 << n))


def random_profile(
    n: int, rng: np.random.Generator, low: float = 1e-3, high: float = 1.0 - 1e-3
) -> ProbabilityProfile:
    return ProbabilityProfile(rng.uniform(low, high, size=check_players(n)))


# %%
def with_null_player(f: Game, i: int) -> Game:
    """f'(T) = f(T \\ {i}); player i becomes null"""
    i = check_player(f.n, i)
    m = ft.masks(f.n)
    return Game(f.n, f.values[m & ~(1 << (i - 1))])


def with_dummy_coalition(f: Game, s: Coalition) -> Game:
    """f'(T) = f(T & S) + f(T \\ S) - f(empty); S and N \\ S become dummy"""
    s = check_coalition(f.n, s)
    m = ft.masks(f.n)
    return Game(f.n, f.values[m & s] + f.values[m & ~s] - f.values[0])
