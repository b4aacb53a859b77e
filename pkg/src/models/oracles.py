# %%
"""Brute-force reference forms, written straight from the defining sums.

They cost O(3^n) to O(4^n) and exist to cross-check the fast transforms, both in
the test suite and in the verify command.
"""
import itertools
import math
from typing import Tuple

import numpy as np
import scipy.linalg
from scipy.special import roots_legendre

from src.games import fast_transforms as ft
from src.games.core import Coalition, Game, cardinalities, multilinear_eval, s_difference
from src.games.weights import ProfileLike, as_profile, basis_v, inner_product, weights
from src.models.indexes import weighted_banzhaf, weighted_banzhaf_all


def submasks(s: Coalition):
    t = s
    while True:
        yield t
        if t == 0:
            return
        t = (t - 1) & s


def naive_mobius(values: np.ndarray) -> np.ndarray:
    """a(S) = sum_{T <= S} (-1)^{|S| - |T|} f(T), subset by subset"""
    n = ft.num_players(values)
    a = np.zeros(1 << n)
    for s in range(1 << n):
        size = bin(s).count("1")
        a[s] = sum((-1) ** (size - bin(t).count("1")) * values[t] for t in submasks(s))
    return a


# %%
def inner_product_index(f: Game, p: ProfileLike, s: Coalition) -> float:
    """<f, v_S> / prod_{i in S} sqrt(p_i (1 - p_i))"""
    p = as_profile(p)
    scale = np.prod([p.scales[j] for j in ft.bits(s)])
    return inner_product(f, basis_v(f.n, s, p), weights(p)) / scale


def vertex_sum_index(f: Game, p: ProfileLike, s: Coalition) -> float:
    """sum_T (-1)^{|S \\ T|} f(T) prod_{i in T \\ S} p_i prod_{i not in T u S} (1 - p_i)"""
    p = as_profile(p)
    total = 0.0
    for t in range(1 << f.n):
        term = (-1.0) ** bin(s & ~t).count("1") * f.values[t]
        for j in range(f.n):
            if (s >> j) & 1:
                continue
            term *= p.p[j] if (t >> j) & 1 else 1.0 - p.p[j]
        total += term
    return total


def signed_sum_index(f: Game, s: Coalition) -> float:
    """2^{-(n - |S|)} sum_T (-1)^{|S \\ T|} f(T), the unweighted Banzhaf index"""
    n = f.n
    signs = 1.0 - 2.0 * (ft.cardinalities(n)[s & ~ft.masks(n)] % 2)
    return float(np.dot(signs, f.values)) / 2.0 ** (n - bin(s).count("1"))


def expected_difference_index(f: Game, p: ProfileLike, s: Coalition) -> float:
    """sum_T w(T) (Delta^S f)(T)"""
    return float(np.dot(weights(p).w, s_difference(f, s).values))


def finite_difference_index(f: Game, p: ProfileLike, s: Coalition) -> float:
    """mixed divided difference of the multilinear extension at p in the players of S

    Each player of S steps halfway toward the farther face of the cube. The extension
    is affine in every coordinate, so the estimate is exact up to rounding.
    """
    p = as_profile(p)
    players = list(ft.bits(s))
    step = {j: 0.5 * (1.0 - p.p[j]) if p.p[j] < 0.5 else -0.5 * p.p[j] for j in players}
    total = 0.0
    for moved in itertools.product((0, 1), repeat=len(players)):
        x = np.array(p.p)
        for j, e in zip(players, moved):
            x[j] += e * step[j]
        total += (-1.0) ** (len(players) - sum(moved)) * multilinear_eval(f, x)
    return total / np.prod([step[j] for j in players])


# %%
def normal_equations_approximation(f: Game, p: ProfileLike, k: int) -> np.ndarray:
    """monomial coefficients of the weighted least-squares fit, solved densely

    Returns a table of length 2^n with zeros above cardinality k.
    """
    p = as_profile(p)
    m = ft.masks(f.n)
    basis = np.flatnonzero(cardinalities(f.n) <= k)
    design = ((m[:, None] & basis[None, :]) == basis[None, :]).astype(np.float64)
    w = weights(p).w
    gram = design.T @ (w[:, None] * design)
    rhs = design.T @ (w * f.values)
    solution = scipy.linalg.solve(gram, rhs, assume_a="pos")
    coeffs = np.zeros(1 << f.n)
    coeffs[basis] = solution
    return coeffs


def orthonormality_gap(n: int, p: ProfileLike) -> float:
    """max |<v_S, v_T> - [S = T]| over all pairs"""
    p = as_profile(p)
    v = np.stack([basis_v(n, s, p).values for s in range(1 << n)], axis=1)
    gram = v.T @ (weights(p).w[:, None] * v)
    return float(np.max(np.abs(gram - np.eye(1 << n))))


def legendre_shapley(f: Game, s: Coalition) -> float:
    """integral over p in [0, 1] of I_{B,(p,...,p)}(f, S), exact for degree <= n"""
    nodes, quad_weights = roots_legendre(math.ceil((f.n + 1) / 2))
    total = 0.0
    for x, wq in zip(nodes, quad_weights):
        p = np.full(f.n, 0.5 * (x + 1.0))
        total += 0.5 * wq * weighted_banzhaf(f, p, s)
    return total


def legendre_banzhaf(f: Game, s: Coalition) -> float:
    """integral of I_{B,p}(f, S) over the cube, tensor Gauss-Legendre with 2 nodes per axis"""
    nodes, quad_weights = roots_legendre(2)
    nodes = 0.5 * (nodes + 1.0)
    quad_weights = 0.5 * quad_weights
    total = 0.0
    for idx in itertools.product(range(2), repeat=f.n):
        p = nodes[list(idx)]
        total += np.prod(quad_weights[list(idx)]) * weighted_banzhaf_all(f, p)[s]
    return total


def satisfies_dummy_definition(f: Game, s: Coalition, atol: float) -> bool:
    """f(R u T) = f(R) + f(T) - f(empty) for all R <= S, T <= N \\ S"""
    full = (1 << f.n) - 1
    for r in submasks(s):
        for t in submasks(full ^ s):
            if abs(f.values[r | t] - f.values[r] - f.values[t] + f.values[0]) > atol:
                return False
    return True


def four_index_forms(f: Game, p: ProfileLike, s: Coalition) -> Tuple[float, float, float, float]:
    """inner-product, vertex-sum, expected-difference and Mobius forms of I_{B,p}(f, S)"""
    return (
        inner_product_index(f, p, s),
        vertex_sum_index(f, p, s),
        expected_difference_index(f, p, s),
        weighted_banzhaf_all(f, p)[s],
    )
