# %%
"""Product distributions over coalitions and the orthonormal basis they induce."""
import logging
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from jaxtyping import Float

from src.games import fast_transforms as ft
from src.games.core import Coalition, Game, check_coalition, check_players, members
from src.utils.exceptions import GameValidationError, ProfileError

log = logging.getLogger(__name__)

# strict profiles must stay this far away from 0 and 1
BOUNDARY_EPS = 1e-12


@dataclass(frozen=True, eq=False)
class ProbabilityProfile:
    """p_i = Pr(player i belongs to the random coalition), players independent"""

    p: Float[np.ndarray, "n"]

    def __post_init__(self):
        p = np.array(self.p, dtype=np.float64)
        if p.ndim != 1 or p.shape[0] < 1:
            raise ProfileError(f"profile must be a non-empty vector, got shape {p.shape}")
        for i, pi in enumerate(p):
            if not (np.isfinite(pi) and 0.0 <= pi <= 1.0):
                raise ProfileError(f"player {i + 1} has p={pi!r}, not in [0, 1]")
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    @classmethod
    def uniform(cls, n: int, value: float = 0.5) -> "ProbabilityProfile":
        return cls(np.full(check_players(n), float(value)))

    @property
    def n(self) -> int:
        return int(self.p.shape[0])

    @property
    def is_strict(self) -> bool:
        return bool(np.all((self.p > BOUNDARY_EPS) & (self.p < 1.0 - BOUNDARY_EPS)))

    @property
    def scales(self) -> np.ndarray:
        """sqrt(p_i (1 - p_i))"""
        return np.sqrt(self.p * (1.0 - self.p))

    def require_players(self, n: int) -> "ProbabilityProfile":
        if self.n != n:
            raise ProfileError(f"profile has {self.n} entries but the game has {n} players")
        return self

    def require_strict(self) -> "ProbabilityProfile":
        for i, pi in enumerate(self.p):
            if not BOUNDARY_EPS < pi < 1.0 - BOUNDARY_EPS:
                raise ProfileError(
                    f"player {i + 1} has p={pi!r}; a strict profile needs 0 < p < 1"
                )
        return self

    def same_as(self, other: "ProbabilityProfile") -> bool:
        return self.n == other.n and bool(np.array_equal(self.p, other.p))


ProfileLike = Union[ProbabilityProfile, Sequence[float], np.ndarray]


def as_profile(p: ProfileLike) -> ProbabilityProfile:
    if isinstance(p, ProbabilityProfile):
        return p
    return ProbabilityProfile(np.asarray(p, dtype=np.float64))


@dataclass(frozen=True, eq=False)
class WeightTable:
    """w(S) = prod_{i in S} p_i prod_{i not in S} (1 - p_i)"""

    n: int
    w: Float[np.ndarray, "m"]

    def __getitem__(self, s: Coalition) -> float:
        return float(self.w[check_coalition(self.n, s)])


# %%
def weights(p: ProfileLike) -> WeightTable:
    p = as_profile(p)
    w = ft.product_table(1.0 - p.p, p.p)
    w.setflags(write=False)
    return WeightTable(p.n, w)


def inner_product(f: Game, g: Game, w: WeightTable) -> float:
    """<f, g> = sum_S w(S) f(S) g(S)"""
    if not (f.n == g.n == w.n):
        raise GameValidationError(f"dimension mismatch: n={f.n}, n={g.n}, weights n={w.n}")
    return float(np.dot(w.w, f.values * g.values))


def basis_v(n: int, s: Coalition, p: ProfileLike) -> Game:
    """v_S(x) = prod_{i in S} (x_i - p_i) / sqrt(p_i (1 - p_i)) at every vertex"""
    p = as_profile(p).require_players(check_players(n)).require_strict()
    s = check_coalition(n, s)
    lo = np.ones(n)
    hi = np.ones(n)
    for i in members(s):
        scale = np.sqrt(p.p[i - 1] * (1.0 - p.p[i - 1]))
        lo[i - 1] = -p.p[i - 1] / scale
        hi[i - 1] = (1.0 - p.p[i - 1]) / scale
    return Game(n, ft.product_table(lo, hi))


def orthonormal_coefficients(f: Game, p: ProfileLike) -> np.ndarray:
    """<f, v_T> for every T, by one weighted sweep per player"""
    p = as_profile(p).require_players(f.n).require_strict()
    table = np.array(f.values)
    ft.weighted_difference_(table, p.p, p.scales)
    log.debug("orthonormal coefficients computed for n=%d", f.n)
    return table
