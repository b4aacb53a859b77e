# %%
"""Weighted Banzhaf, Banzhaf and Shapley interaction indexes and their conversions."""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from jaxtyping import Float

from src.games import fast_transforms as ft
from src.games.core import (
    Coalition,
    Game,
    MobiusTransform,
    cardinalities,
    check_coalition,
    check_players,
    members,
    mobius,
    s_difference,
)
from src.games.weights import ProbabilityProfile, ProfileLike, as_profile
from src.utils.exceptions import GameValidationError, ProfileError

log = logging.getLogger(__name__)

WEIGHTED_BANZHAF = "weighted-banzhaf"
BANZHAF = "banzhaf"
SHAPLEY = "shapley"
MOBIUS = "mobius"


@dataclass(frozen=True, eq=False)
class InteractionTable:
    """I(f, S) for every coalition S; the profile is None for profile-free families"""

    n: int
    values: Float[np.ndarray, "m"]
    profile: Optional[ProbabilityProfile] = None
    family: str = WEIGHTED_BANZHAF

    def __post_init__(self):
        n = check_players(self.n)
        values = np.array(self.values, dtype=np.float64)
        if values.shape != (1 << n,):
            raise GameValidationError(f"index table must have length 2^{n}, got {values.shape}")
        if self.profile is not None:
            self.profile.require_players(n)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __getitem__(self, s: Coalition) -> float:
        return float(self.values[check_coalition(self.n, s)])

    def power_index(self) -> np.ndarray:
        """singleton entries: the (weighted) Banzhaf power index, or the Shapley value"""
        return np.array([self.values[1 << j] for j in range(self.n)])

    def require_profile(self) -> ProbabilityProfile:
        if self.profile is None:
            raise ProfileError(f"{self.family} table carries no probability profile")
        return self.profile


def _supersets(n: int, s: Coalition) -> np.ndarray:
    m = ft.masks(n)
    return m[(m & s) == s]


# %%
def index_from_mobius(a: MobiusTransform, p: ProfileLike) -> InteractionTable:
    """sum_{T >= S} a(T) prod_{i in T \\ S} p_i for every S; any profile in [0, 1]^n"""
    p = as_profile(p).require_players(a.n)
    table = np.array(a.coeffs)
    ft.superset_accumulate_(table, p.p)
    return InteractionTable(a.n, table, p)


def weighted_banzhaf_all(f: Game, p: ProfileLike) -> InteractionTable:
    p = as_profile(p).require_players(f.n)
    log.debug("weighted Banzhaf table for n=%d", f.n)
    return index_from_mobius(mobius(f), p)


def banzhaf_all(f: Game) -> InteractionTable:
    table = weighted_banzhaf_all(f, ProbabilityProfile.uniform(f.n, 0.5))
    return InteractionTable(f.n, table.values, table.profile, BANZHAF)


def probabilistic_coefficients(p: ProfileLike, s: Coalition) -> np.ndarray:
    """p_T^S = prod_{i in T} p_i prod_{i in (N \\ S) \\ T} (1 - p_i); zero when T meets S"""
    p = as_profile(p)
    s = check_coalition(p.n, s)
    in_s = np.array([(s >> j) & 1 for j in range(p.n)], dtype=bool)
    return ft.product_table(np.where(in_s, 1.0, 1.0 - p.p), np.where(in_s, 0.0, p.p))


def probabilistic_coefficient(p: ProfileLike, s: Coalition, t: Coalition) -> float:
    p = as_profile(p)
    s = check_coalition(p.n, s)
    t = check_coalition(p.n, t)
    if s & t:
        raise GameValidationError(f"T={members(t)} meets S={members(s)}")
    value = 1.0
    for j in range(p.n):
        if (t >> j) & 1:
            value *= p.p[j]
        elif not (s >> j) & 1:
            value *= 1.0 - p.p[j]
    return float(value)


def weighted_banzhaf(f: Game, p: ProfileLike, s: Coalition) -> float:
    """expected S-difference, sum_{T <= N \\ S} p_T^S (Delta^S f)(T)"""
    p = as_profile(p).require_players(f.n)
    s = check_coalition(f.n, s)
    coefficients = probabilistic_coefficients(p, s)
    return float(np.dot(coefficients, s_difference(f, s).values))


def banzhaf(f: Game, s: Coalition) -> float:
    """average of (Delta^S f)(T) over T <= N \\ S"""
    s = check_coalition(f.n, s)
    m = ft.masks(f.n)
    diffs = s_difference(f, s).values[(m & s) == 0]
    return float(np.ldexp(np.sum(diffs), -(f.n - bin(s).count("1"))))


def banzhaf_center_of_mass(f: Game, s: Coalition) -> float:
    """integral of I_{B,p}(f, S) over p in [0, 1]^n: sum_{T >= S} a(T) 2^{-|T \\ S|}"""
    s = check_coalition(f.n, s)
    a = mobius(f).coeffs
    sup = _supersets(f.n, s)
    extra = cardinalities(f.n)[sup] - bin(s).count("1")
    return float(np.sum(np.ldexp(a[sup], -extra)))


def shapley_interaction(f: Game, s: Coalition) -> float:
    """sum_{T >= S} a(T) / (|T| - |S| + 1)"""
    s = check_coalition(f.n, s)
    a = mobius(f).coeffs
    sup = _supersets(f.n, s)
    extra = cardinalities(f.n)[sup] - bin(s).count("1")
    return float(np.sum(a[sup] / (extra + 1)))


def shapley_interaction_all(f: Game) -> InteractionTable:
    """all S at once, one superset sweep per cardinality bucket"""
    a = mobius(f).coeffs
    card = cardinalities(f.n)
    ones = np.ones(f.n)
    result = np.zeros(1 << f.n)
    for t in range(f.n + 1):
        g = ft.superset_sums_by_cardinality(a, ones, t)
        result += g / np.maximum(t - card + 1, 1)
    return InteractionTable(f.n, result, None, SHAPLEY)


def shapley_value(f: Game) -> np.ndarray:
    return shapley_interaction_all(f).power_index()


def banzhaf_value(f: Game, p: Optional[ProfileLike] = None) -> np.ndarray:
    if p is None:
        return banzhaf_all(f).power_index()
    return weighted_banzhaf_all(f, p).power_index()


# %%
def index_to_mobius(table: InteractionTable) -> MobiusTransform:
    """a(S) = sum_{T >= S} I(T) prod_{i in T \\ S} (-p_i)"""
    p = table.require_profile()
    coeffs = np.array(table.values)
    ft.superset_accumulate_(coeffs, -p.p)
    return MobiusTransform(table.n, coeffs)


def reindex(table: InteractionTable, p_new: ProfileLike) -> InteractionTable:
    """I_{p'}(S) = sum_{T >= S} I_p(T) prod_{i in T \\ S} (p'_i - p_i)"""
    p = table.require_profile()
    p_new = as_profile(p_new).require_players(table.n)
    values = np.array(table.values)
    ft.superset_accumulate_(values, p_new.p - p.p)
    return InteractionTable(table.n, values, p_new)


def reconstruct_game(table: InteractionTable) -> Game:
    """vertex values of f(x) = sum_T I(T) prod_{i in T} (x_i - p_i)"""
    p = table.require_profile()
    values = np.array(table.values)
    ft.shifted_zeta_(values, p.p)
    return Game(table.n, values)
