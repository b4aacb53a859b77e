# %%
"""Identity suite behind the ``verify`` command.

Every identity is a function of one :class:`Case` (a game, a strict profile and a few
seeded extras) returning the error observed on it, already divided by
max(1, ||f||_inf), or ``None`` when the case is outside the identity's size limit.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from omegaconf import DictConfig

from src.games import fast_transforms as ft
from src.games.core import (
    Coalition,
    Game,
    cardinalities,
    from_mobius,
    members,
    mobius,
    multilinear_eval,
    permute,
    permute_coalition,
    s_difference,
    unanimity,
)
from src.games.weights import ProbabilityProfile, orthonormal_coefficients, weights
from src.data.games import random_game, random_profile, with_dummy_coalition, with_null_player
from src.models import oracles
from src.models.analysis import (
    MIN_STD,
    dummy_decomposition,
    is_dummy_coalition,
    normalized_index_all,
    null_players,
    r_squared,
    r_squared_from_correlations,
    statistics,
)
from src.models.approximation import approximation_coeffs_via_mobius, best_approximation, residual_norm
from src.models.indexes import (
    banzhaf_all,
    banzhaf_center_of_mass,
    index_to_mobius,
    probabilistic_coefficient,
    probabilistic_coefficients,
    reconstruct_game,
    reindex,
    shapley_interaction_all,
    shapley_value,
    weighted_banzhaf,
    weighted_banzhaf_all,
)
from src.utils.utils import clean, make_rng, table_scale

log = logging.getLogger(__name__)

# error reported when a boolean predicate fails
PREDICATE_FAILURE = 1.0


@dataclass(frozen=True, eq=False)
class Case:
    label: str
    f: Game
    p: ProbabilityProfile
    q: ProbabilityProfile
    g: Game
    coalitions: List[Coalition]
    limits: DictConfig

    @property
    def n(self) -> int:
        return self.f.n

    @property
    def scale(self) -> float:
        return table_scale(self.f.values)


@dataclass
class CheckResult:
    identity: str
    tolerance: float
    games: int = 0
    max_error: float = 0.0

    @property
    def passed(self) -> bool:
        return self.max_error <= self.tolerance

    def record(self, error: float):
        self.games += 1
        self.max_error = max(self.max_error, float(error))

    def to_json(self, errors: bool = False) -> Dict:
        """max_error is left out unless asked for; its last bits depend on the BLAS build"""
        record = {"identity": self.identity, "games": self.games, "tolerance": self.tolerance}
        if errors:
            record["max_error"] = clean(self.max_error)
        record["passed"] = self.passed
        return record


@dataclass
class VerificationReport:
    game: str
    n: int
    profile: List[float]
    seed: int
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[str]:
        return [c.identity for c in self.checks if not c.passed]

    def to_json(self, errors: bool = False) -> Dict:
        return {
            "game": self.game,
            "n": self.n,
            "profile": [clean(v) for v in self.profile],
            "seed": self.seed,
            "passed": self.passed,
            "checks": [c.to_json(errors) for c in self.checks],
        }


def _gap(actual, expected) -> float:
    actual = np.asarray(actual, dtype=np.float64)
    expected = np.asarray(expected, dtype=np.float64)
    if actual.size == 0:
        return 0.0
    return float(np.max(np.abs(actual - expected)))


def _is_constant(c: Case) -> bool:
    return statistics(c.f, c.p).std <= MIN_STD


# %% transforms
def _mobius_roundtrip(c: Case) -> float:
    a = mobius(c.f)
    return max(_gap(from_mobius(a).values, c.f.values), _gap(mobius(from_mobius(a)).coeffs, a.coeffs)) / c.scale


def _fast_vs_alternating_sum(c: Case) -> Optional[float]:
    if c.n > c.limits.alternating_sum:
        return None
    return _gap(mobius(c.f).coeffs, oracles.naive_mobius(c.f.values)) / c.scale


def _difference_order(c: Case) -> float:
    error = 0.0
    for s in c.coalitions:
        g = c.f
        for i in reversed(members(s)):
            g = s_difference(g, 1 << (i - 1))
        error = max(error, _gap(s_difference(c.f, s).values, g.values))
    return error / c.scale


def _vertex_interpolation(c: Case) -> float:
    error = 0.0
    for s in c.coalitions:
        x = np.array([(s >> j) & 1 for j in range(c.n)], dtype=np.float64)
        error = max(error, abs(multilinear_eval(c.f, x) - c.f.values[s]))
    return error / c.scale


# %% weights
def _weights_sum(c: Case) -> float:
    return abs(float(np.sum(weights(c.p).w)) - 1.0)


def _weight_marginals(c: Case) -> float:
    w = weights(c.p).w
    m = ft.masks(c.n)
    marginals = [np.sum(w[((m >> j) & 1) == 1]) for j in range(c.n)]
    return _gap(marginals, c.p.p)


def _orthonormal_basis(c: Case) -> Optional[float]:
    if c.n > c.limits.dense_forms:
        return None
    return oracles.orthonormality_gap(c.n, c.p)


def _expectation(c: Case) -> float:
    mean = float(np.dot(weights(c.p).w, c.f.values))
    table = weighted_banzhaf_all(c.f, c.p)
    return max(abs(multilinear_eval(c.f, c.p.p) - mean), abs(table[0] - mean)) / c.scale


# %% approximation
def _normal_equations(c: Case) -> Optional[float]:
    if c.n > c.limits.normal_equations:
        return None
    error = 0.0
    for k in range(c.n + 1):
        oracle = oracles.normal_equations_approximation(c.f, c.p, k)
        coeffs = best_approximation(c.f, c.p, k).coeffs
        error = max(error, _gap(coeffs, oracle) / table_scale(oracle))
    return error


def _residual_orthogonality(c: Case) -> float:
    card = cardinalities(c.n)
    error = 0.0
    for k in range(c.n + 1):
        residual = c.f - best_approximation(c.f, c.p, k).game()
        error = max(error, _gap(orthonormal_coefficients(residual, c.p)[card <= k], 0.0))
    return error / c.scale


def _index_preservation(c: Case) -> float:
    card = cardinalities(c.n)
    exact = weighted_banzhaf_all(c.f, c.p).values
    error = 0.0
    for k in range(c.n + 1):
        approx = weighted_banzhaf_all(best_approximation(c.f, c.p, k).game(), c.p).values
        error = max(error, _gap(approx[card <= k], exact[card <= k]))
    return error / c.scale


def _idempotence(c: Case) -> float:
    error = 0.0
    for k in range(c.n + 1):
        approx = best_approximation(c.f, c.p, k)
        again = best_approximation(approx.game(), c.p, k)
        error = max(error, _gap(again.coeffs, approx.coeffs) / table_scale(approx.coeffs))
    return error


def _residual_monotone(c: Case) -> float:
    norms = [residual_norm(c.f, best_approximation(c.f, c.p, k), c.p) for k in range(c.n + 1)]
    increase = max([0.0] + [b - a for a, b in zip(norms, norms[1:])])
    return max(increase, norms[-1]) / c.scale


def _pythagoras(c: Case) -> float:
    w = weights(c.p).w
    squared = float(np.dot(w, c.f.values * c.f.values))
    coeffs = orthonormal_coefficients(c.f, c.p)
    card = cardinalities(c.n)
    error = 0.0
    for k in range(c.n + 1):
        expected = squared - float(np.sum(np.square(coeffs[card <= k])))
        error = max(error, abs(residual_norm(c.f, best_approximation(c.f, c.p, k), c.p) ** 2 - expected))
    return error / c.scale**2


def _mobius_closed_form(c: Case) -> float:
    a = mobius(c.f)
    error = 0.0
    for k in range(c.n + 1):
        projected = best_approximation(c.f, c.p, k).coeffs
        closed = approximation_coeffs_via_mobius(a, c.p, k).coeffs
        error = max(error, _gap(closed, projected) / table_scale(projected))
    return error


# %% indexes
def _index_forms(c: Case) -> Optional[float]:
    if c.n > c.limits.dense_forms:
        return None
    error = 0.0
    for s in c.coalitions:
        forms = oracles.four_index_forms(c.f, c.p, s)
        error = max(error, max(forms) - min(forms))
    return error / c.scale


def _mixed_partial(c: Case) -> Optional[float]:
    if c.n > c.limits.dense_forms:
        return None
    table = weighted_banzhaf_all(c.f, c.p)
    error = 0.0
    for s in c.coalitions:
        if s == 0 or bin(s).count("1") > c.limits.derivative_order:
            continue
        error = max(error, abs(oracles.finite_difference_index(c.f, c.p, s) - table[s]))
    return error / c.scale


def _difference_expectation(c: Case) -> float:
    table = weighted_banzhaf_all(c.f, c.p)
    error = 0.0
    for s in c.coalitions:
        error = max(error, abs(weighted_banzhaf(c.f, c.p, s) - table[s]))
    return error / c.scale


def _probabilistic_coefficients(c: Case) -> float:
    error = 0.0
    for s in c.coalitions:
        table = probabilistic_coefficients(c.p, s)
        error = max(error, abs(float(np.sum(table)) - 1.0))
        t = ((1 << c.n) - 1) & ~s
        error = max(error, abs(probabilistic_coefficient(c.p, s, t) - table[t]))
    return error


def _index_to_mobius(c: Case) -> float:
    a = mobius(c.f).coeffs
    back = index_to_mobius(weighted_banzhaf_all(c.f, c.p)).coeffs
    return _gap(back, a) / max(c.scale, table_scale(a))


def _reindex_roundtrip(c: Case) -> float:
    table = weighted_banzhaf_all(c.f, c.p)
    back = reindex(reindex(table, c.q), c.p)
    return _gap(back.values, table.values) / c.scale


def _reindex_recompute(c: Case) -> float:
    moved = reindex(weighted_banzhaf_all(c.f, c.p), c.q)
    return _gap(moved.values, weighted_banzhaf_all(c.f, c.q).values) / c.scale


def _reconstruction(c: Case) -> float:
    return _gap(reconstruct_game(weighted_banzhaf_all(c.f, c.p)).values, c.f.values) / c.scale


def _shapley_quadrature(c: Case) -> Optional[float]:
    if c.n > c.limits.quadrature:
        return None
    table = shapley_interaction_all(c.f)
    error = 0.0
    for s in c.coalitions:
        error = max(error, abs(oracles.legendre_shapley(c.f, s) - table[s]))
    return error / c.scale


def _shapley_efficiency(c: Case) -> float:
    full = (1 << c.n) - 1
    return abs(float(np.sum(shapley_value(c.f))) - (c.f.values[full] - c.f.values[0])) / c.scale


def _center_of_mass(c: Case) -> float:
    table = banzhaf_all(c.f)
    error = 0.0
    for s in c.coalitions:
        error = max(error, abs(banzhaf_center_of_mass(c.f, s) - table[s]))
    return error / c.scale


def _cube_quadrature(c: Case) -> Optional[float]:
    if c.n > c.limits.quadrature:
        return None
    table = banzhaf_all(c.f)
    error = 0.0
    for s in c.coalitions[:2]:
        error = max(error, abs(oracles.legendre_banzhaf(c.f, s) - table[s]))
    return error / c.scale


def _signed_sum_banzhaf(c: Case) -> float:
    table = banzhaf_all(c.f)
    error = 0.0
    for s in c.coalitions:
        error = max(error, abs(oracles.signed_sum_index(c.f, s) - table[s]))
    return error / c.scale


def _linearity(c: Case) -> float:
    alpha, beta = 1.5, -0.75
    combined = weighted_banzhaf_all(alpha * c.f + beta * c.g, c.p).values
    separate = alpha * weighted_banzhaf_all(c.f, c.p).values + beta * weighted_banzhaf_all(c.g, c.p).values
    return _gap(combined, separate) / max(c.scale, table_scale(c.g.values))


def _relabelling(c: Case) -> float:
    perm = list(range(2, c.n + 1)) + [1]
    p_perm = np.empty(c.n)
    p_perm[np.array(perm) - 1] = c.p.p
    moved = weighted_banzhaf_all(permute(c.f, perm), p_perm)
    table = weighted_banzhaf_all(c.f, c.p)
    error = 0.0
    for s in c.coalitions:
        error = max(error, abs(moved[permute_coalition(s, perm)] - table[s]))
    return error / c.scale


def _asymmetric_witness(c: Case) -> Optional[float]:
    if c.n < 2:
        return None
    u = unanimity(c.n, 0b11)
    table = weighted_banzhaf_all(u, c.p)
    return max(abs(table[0b10] - c.p.p[0]), abs(table[0b01] - c.p.p[1]))


def _shift_invariance(c: Case) -> float:
    shifted = weighted_banzhaf_all(c.f.shift(1.0), c.p).values.copy()
    shifted[0] -= 1.0
    return _gap(shifted, weighted_banzhaf_all(c.f, c.p).values) / c.scale


# %% analysis
def _mean_preserved(c: Case) -> float:
    mean = statistics(c.f, c.p).mean
    error = 0.0
    for k in range(c.n + 1):
        error = max(error, abs(statistics(best_approximation(c.f, c.p, k).game(), c.p).mean - mean))
    return error / c.scale


def _variance_decomposition(c: Case) -> float:
    stats = statistics(c.f, c.p)
    w = weights(c.p).w
    raw = float(np.dot(w, c.f.values * c.f.values)) - stats.mean**2
    coeffs = orthonormal_coefficients(c.f, c.p)
    spectral = float(np.sum(np.square(coeffs[1:])))
    return max(abs(stats.variance - raw), abs(stats.variance - spectral)) / c.scale**2


def _r_squared_formulas(c: Case) -> Optional[float]:
    if _is_constant(c):
        return None
    return max(
        abs(r_squared(c.f, c.p, k) - r_squared_from_correlations(c.f, c.p, k)) for k in range(c.n + 1)
    )


def _normalized_bounds(c: Case) -> Optional[float]:
    if _is_constant(c):
        return None
    r = normalized_index_all(c.f, c.p)
    rescaled = normalized_index_all(2.5 * c.f.shift(-0.5), c.p)
    r2 = [r_squared(c.f, c.p, k) for k in range(c.n + 1)]
    error = max(0.0, float(np.max(np.abs(r))) - 1.0, _gap(rescaled, r))
    error = max(error, -min(r2), max(r2) - 1.0, abs(r2[-1] - 1.0))
    return max([error] + [a - b for a, b in zip(r2, r2[1:])])


def _null_zeroing(c: Case) -> float:
    error = 0.0
    for i in range(1, c.n + 1):
        f = with_null_player(c.f, i)
        if i not in null_players(f):
            return PREDICATE_FAILURE
        table = weighted_banzhaf_all(f, c.p).values
        m = ft.masks(c.n)
        error = max(error, _gap(table[((m >> (i - 1)) & 1) == 1], 0.0))
    return error / c.scale


def _dummy_zeroing(c: Case) -> float:
    full = (1 << c.n) - 1
    m = ft.masks(c.n)
    error = 0.0
    for s in c.coalitions:
        if s in (0, full):
            continue
        f = with_dummy_coalition(c.f, s)
        if not (is_dummy_coalition(f, s) and is_dummy_coalition(f, full ^ s)):
            return PREDICATE_FAILURE
        if c.n <= c.limits.normal_equations:
            if not oracles.satisfies_dummy_definition(f, s, 1e-10 * table_scale(f.values)):
                return PREDICATE_FAILURE
        inside, outside = dummy_decomposition(f, s)
        error = max(error, _gap((inside + outside).values, f.values))
        crossing = ((m & s) != 0) & ((m & (full ^ s)) != 0)
        error = max(error, _gap(weighted_banzhaf_all(f, c.p).values[crossing], 0.0))
    return error / c.scale


IDENTITIES: List[Tuple[str, float, Callable[[Case], Optional[float]]]] = [
    ("mobius and zeta transforms are inverse", 1e-10, _mobius_roundtrip),
    ("fast mobius transform equals alternating subset sums", 1e-10, _fast_vs_alternating_sum),
    ("S-difference does not depend on player order", 1e-11, _difference_order),
    ("multilinear extension interpolates vertices", 0.0, _vertex_interpolation),
    ("coalition weights sum to one", 1e-12, _weights_sum),
    ("coalition weights have marginals p", 1e-12, _weight_marginals),
    ("product basis is orthonormal", 1e-10, _orthonormal_basis),
    ("empty-coalition index is the expectation", 1e-10, _expectation),
    ("projection matches weighted normal equations", 1e-8, _normal_equations),
    ("residual is orthogonal to the low-degree basis", 1e-9, _residual_orthogonality),
    ("projection preserves low-order indexes", 1e-9, _index_preservation),
    ("projection is idempotent", 1e-9, _idempotence),
    ("residual norm is nonincreasing in k", 1e-10, _residual_monotone),
    ("residual norm satisfies pythagoras", 1e-9, _pythagoras),
    ("mobius closed form equals projection", 1e-9, _mobius_closed_form),
    ("four index forms agree", 1e-9, _index_forms),
    ("index equals mixed partial derivative", 1e-8, _mixed_partial),
    ("index equals expected S-difference", 1e-10, _difference_expectation),
    ("probabilistic coefficients sum to one", 1e-12, _probabilistic_coefficients),
    ("index to mobius inverts the index table", 1e-9, _index_to_mobius),
    ("reindex roundtrip", 1e-9, _reindex_roundtrip),
    ("reindex equals recomputation", 1e-9, _reindex_recompute),
    ("game reconstruction from indexes", 1e-9, _reconstruction),
    ("shapley index equals diagonal quadrature", 1e-10, _shapley_quadrature),
    ("shapley value is efficient", 1e-10, _shapley_efficiency),
    ("banzhaf index is the center of mass", 1e-11, _center_of_mass),
    ("banzhaf index equals cube quadrature", 1e-12, _cube_quadrature),
    ("signed-sum banzhaf equals uniform profile", 1e-10, _signed_sum_banzhaf),
    ("index is linear in the game", 1e-10, _linearity),
    ("index is invariant under relabelling", 1e-10, _relabelling),
    ("unanimity witness of asymmetric profiles", 1e-12, _asymmetric_witness),
    ("nonempty indexes ignore constant shifts", 1e-10, _shift_invariance),
    ("projection preserves the mean", 1e-10, _mean_preserved),
    ("variance decomposes over the basis", 1e-9, _variance_decomposition),
    ("R-squared formulas agree", 1e-9, _r_squared_formulas),
    ("normalized index and R-squared are bounded", 1e-9, _normalized_bounds),
    ("null player indexes vanish", 1e-10, _null_zeroing),
    ("dummy coalition indexes vanish", 1e-10, _dummy_zeroing),
]


# %%
def sample_coalitions(n: int, rng: np.random.Generator, count: int) -> List[Coalition]:
    """the empty set, the grand coalition, player 1 and count seeded random masks"""
    full = (1 << n) - 1
    picked = [0, full, 1]
    picked += [int(m) for m in rng.integers(0, full + 1, size=count)]
    return list(dict.fromkeys(picked))


def make_case(
    label: str, f: Game, p: ProbabilityProfile, rng: np.random.Generator, cfg: DictConfig
) -> Case:
    q = random_profile(f.n, rng, cfg.profile_low, cfg.profile_high)
    g = random_game(f.n, rng)
    coalitions = sample_coalitions(f.n, rng, cfg.coalitions_per_game)
    return Case(label, f, p.require_players(f.n).require_strict(), q, g, coalitions, cfg.limits)


def random_cases(rng: np.random.Generator, cfg: DictConfig) -> List[Case]:
    cases = []
    for n in cfg.sizes:
        for idx in range(cfg.games_per_size):
            f = random_game(n, rng)
            p = random_profile(n, rng, cfg.profile_low, cfg.profile_high)
            cases.append(make_case(f"random n={n} #{idx}", f, p, rng, cfg))
    return cases


def run_identities(cases: Sequence[Case]) -> List[CheckResult]:
    results = []
    for identity, tolerance, check in IDENTITIES:
        result = CheckResult(identity, tolerance)
        for case in cases:
            error = check(case)
            if error is not None:
                result.record(error)
        level = logging.DEBUG if result.passed else logging.WARNING
        log.log(
            level, "%s: %d games, max error %.3g, tolerance %.3g", identity, result.games, result.max_error, tolerance
        )
        results.append(result)
    return results


def run_suite(game: Game, p: ProbabilityProfile, seed: int, cfg: DictConfig, name: str = "game") -> VerificationReport:
    """run every identity on the given game and on the seeded random games

    Args:
        game (Game): the game under test
        p (ProbabilityProfile): strict profile used for the given game
        seed (int): seed of the random games, profiles and coalition samples
        cfg (DictConfig): the ``verify`` section of the CLI config
        name (str): label of the game in the report

    Returns:
        VerificationReport: one result per identity
    """
    rng = make_rng(seed)
    cases = [make_case(name, game, p, rng, cfg)] + random_cases(rng, cfg)
    report = VerificationReport(name, game.n, list(p.p), seed, run_identities(cases))
    log.info(
        "verified %d identities on %d games: %s",
        len(report.checks),
        len(cases),
        "all passed" if report.passed else f"{len(report.failures)} failed",
    )
    return report
