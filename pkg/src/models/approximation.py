# %%
"""Best degree-k approximations of a game in the weighted least-squares sense."""
import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from jaxtyping import Float
from scipy.special import comb

from src.games import fast_transforms as ft
from src.games.core import (
    Coalition,
    Game,
    MobiusTransform,
    cardinalities,
    check_coalition,
    check_players,
    from_mobius,
)
from src.games.weights import ProbabilityProfile, ProfileLike, as_profile, orthonormal_coefficients, weights
from src.utils.exceptions import GameValidationError, ProfileError

log = logging.getLogger(__name__)


def check_degree(n: int, k: int) -> int:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or not 0 <= k <= n:
        raise GameValidationError(f"degree k must be an integer in [0, {n}], got {k!r}")
    return int(k)


@dataclass(frozen=True, eq=False)
class Approximation:
    """f_k = sum_{|S| <= k} a_k(S) u_S; coeffs is zero above cardinality k"""

    n: int
    k: int
    coeffs: Float[np.ndarray, "m"]
    profile: ProbabilityProfile

    def __post_init__(self):
        n = check_players(self.n)
        check_degree(n, self.k)
        self.profile.require_players(n)
        coeffs = np.array(self.coeffs, dtype=np.float64)
        if coeffs.shape != (1 << n,):
            raise GameValidationError(f"coefficient table must have length 2^{n}")
        coeffs[cardinalities(n) > self.k] = 0.0
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    def mobius(self) -> MobiusTransform:
        return MobiusTransform(self.n, self.coeffs)

    def game(self) -> Game:
        """vertex table of f_k"""
        return from_mobius(self.mobius())

    def terms(self) -> List[Tuple[Coalition, float]]:
        """(mask, a_k(S)) for every |S| <= k, mask ascending"""
        keep = np.flatnonzero(cardinalities(self.n) <= self.k)
        return [(int(m), float(self.coeffs[m])) for m in keep]


# %%
def best_approximation(f: Game, p: ProfileLike, k: int) -> Approximation:
    """projection onto V_k through the orthonormal basis v_T

    The coefficients <f, v_T> of every T come from one weighted sweep; dividing by
    prod_{i in T} sqrt(p_i (1 - p_i)) gives the interaction indexes, which are cut
    at cardinality k and mapped back to monomial coefficients with factors -p_i.
    """
    p = as_profile(p).require_players(f.n).require_strict()
    k = check_degree(f.n, k)
    c = orthonormal_coefficients(f, p)
    indexes = c * ft.product_table(np.ones(f.n), 1.0 / p.scales)
    indexes[cardinalities(f.n) > k] = 0.0
    ft.superset_accumulate_(indexes, -p.p)
    log.debug("best approximation n=%d k=%d", f.n, k)
    return Approximation(f.n, k, indexes, p)


def approximation_coeffs_via_mobius(a: MobiusTransform, p: ProfileLike, k: int) -> Approximation:
    """closed form in the Mobius coefficients, valid for any profile in [0, 1]^n

    a_k(S) = a(S) + (-1)^{k-|S|} sum_{T >= S, |T| > k} C(|T|-|S|-1, k-|S|) prod_{i in T \\ S} p_i a(T)
    """
    p = as_profile(p).require_players(a.n)
    k = check_degree(a.n, k)
    card = cardinalities(a.n)
    low = card <= k
    s = np.where(low, card, 0)
    correction = np.zeros(1 << a.n)
    for t in range(k + 1, a.n + 1):
        g = ft.superset_sums_by_cardinality(a.coeffs, p.p, t)
        correction += np.where(low, comb(t - s - 1, k - s), 0.0) * g
    sign = np.where((k - s) % 2 == 0, 1.0, -1.0)
    coeffs = np.where(low, a.coeffs + sign * correction, 0.0)
    return Approximation(a.n, k, coeffs, p)


def evaluate(approx: Approximation, s: Coalition) -> float:
    """f_k(S) = sum_{T <= S} a_k(T)"""
    s = check_coalition(approx.n, s)
    m = ft.masks(approx.n)
    return float(np.sum(approx.coeffs[(m & ~s) == 0]))


def residual_norm(f: Game, approx: Approximation, p: ProfileLike) -> float:
    """||f - f_k||_w"""
    p = as_profile(p).require_players(f.n)
    if approx.n != f.n:
        raise GameValidationError(f"approximation has n={approx.n}, game has n={f.n}")
    if not p.same_as(approx.profile):
        raise ProfileError("profile differs from the one the approximation was built with")
    diff = f.values - approx.game().values
    return float(np.sqrt(max(float(np.dot(weights(p).w, diff * diff)), 0.0)))
