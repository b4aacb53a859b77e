# %%
"""In-place dimension sweeps over tables indexed by coalition bitmask.

Entry ``m`` of a table of length ``2**n`` belongs to the coalition holding player
``i`` iff bit ``i - 1`` of ``m`` is set. Sweeping dimension ``j`` views the table as
``(2**(n - j - 1), 2, 2**j)``, so that ``[:, 0, :]`` are the coalitions without player
``j + 1`` and ``[:, 1, :]`` the same coalitions with the player added. Every transform
below is a sequence of such sweeps, in ascending ``j``, hence ``O(n 2**n)`` with a fixed
summation order per entry.
"""
from functools import lru_cache
from typing import Iterable, Optional, Tuple

import numpy as np
from jaxtyping import Float, Int

Table = Float[np.ndarray, "m"]


def num_players(table: np.ndarray) -> int:
    return int(table.shape[0]).bit_length() - 1


def halves(table: Table, j: int) -> Tuple[Table, Table]:
    """views of the coalitions without / with player j + 1"""
    view = table.reshape(-1, 2, 1 << j)
    return view[:, 0, :], view[:, 1, :]


# larger tables are rebuilt on every call rather than held for the process lifetime
CACHED_PLAYERS = 20


def cardinalities(n: int) -> Int[np.ndarray, "m"]:
    """popcount of every mask, read-only"""
    return _cached_cardinalities(n) if n <= CACHED_PLAYERS else _cardinalities(n)


def masks(n: int) -> Int[np.ndarray, "m"]:
    """0, 1, ..., 2^n - 1, read-only"""
    return _cached_masks(n) if n <= CACHED_PLAYERS else _masks(n)


def _cardinalities(n: int) -> Int[np.ndarray, "m"]:
    card = np.zeros(1 << n, dtype=np.int64)
    for j in range(n):
        _, hi = halves(card, j)
        hi += 1
    card.setflags(write=False)
    return card


def _masks(n: int) -> Int[np.ndarray, "m"]:
    m = np.arange(1 << n, dtype=np.int64)
    m.setflags(write=False)
    return m


_cached_cardinalities = lru_cache(maxsize=4)(_cardinalities)
_cached_masks = lru_cache(maxsize=4)(_masks)


def bits(mask: int) -> Iterable[int]:
    j = 0
    while mask:
        if mask & 1:
            yield j
        mask >>= 1
        j += 1


# %%
def zeta_(table: Table) -> Table:
    """subset sums f(S) = sum_{T <= S} a(T)"""
    for j in range(num_players(table)):
        lo, hi = halves(table, j)
        hi += lo
    return table


def mobius_(table: Table) -> Table:
    """alternating subset sums, the inverse of zeta_"""
    for j in range(num_players(table)):
        lo, hi = halves(table, j)
        hi -= lo
    return table


def difference_(table: Table, mask: int) -> Table:
    """S-difference restricted to the players of mask; both halves get the same value"""
    for j in bits(mask):
        lo, hi = halves(table, j)
        d = hi - lo
        lo[...] = d
        hi[...] = d
    return table


def superset_accumulate_(table: Table, factors: np.ndarray) -> Table:
    """cur[S] += factors[j] * cur[S + {j+1}] for every S without player j + 1

    After all sweeps, entry S holds sum_{T >= S} table[T] prod_{i in T \\ S} factors[i].
    """
    for j in range(num_players(table)):
        c = float(factors[j])
        if c == 0.0:
            continue
        lo, hi = halves(table, j)
        lo += c * hi
    return table


def shifted_zeta_(table: Table, shift: np.ndarray) -> Table:
    """vertex values of sum_T c(T) prod_{i in T} (x_i - shift_i) from the coefficients c"""
    for j in range(num_players(table)):
        q = float(shift[j])
        lo, hi = halves(table, j)
        at_zero = lo - q * hi
        hi *= 1.0 - q
        hi += lo
        lo[...] = at_zero
    return table


def weighted_difference_(table: Table, p: np.ndarray, scales: Optional[np.ndarray] = None) -> Table:
    """per dimension: lo <- (1 - p) lo + p hi, hi <- scale * (hi - lo)

    With scale = sqrt(p (1 - p)) this maps vertex values to the coefficients <f, v_T>
    in the orthonormal product basis; with scale = 1 it maps them to the expected
    S-differences directly.
    """
    for j in range(num_players(table)):
        q = float(p[j])
        lo, hi = halves(table, j)
        mean = (1.0 - q) * lo + q * hi
        d = hi - lo
        if scales is not None:
            d *= float(scales[j])
        lo[...] = mean
        hi[...] = d
    return table


def product_table(lo_factors: np.ndarray, hi_factors: np.ndarray) -> Table:
    """table of prod_{i in S} hi_factors[i] prod_{i not in S} lo_factors[i]"""
    n = len(lo_factors)
    table = np.ones(1 << n, dtype=np.float64)
    for j in range(n):
        lo, hi = halves(table, j)
        lo *= float(lo_factors[j])
        hi *= float(hi_factors[j])
    return table


def contract(table: Table, x: np.ndarray) -> float:
    """multilinear interpolation of the vertex table at x, halving the table per player"""
    vals = np.asarray(table, dtype=np.float64)
    for j in range(len(x)):
        pairs = vals.reshape(-1, 2)
        vals = pairs[:, 0] * (1.0 - float(x[j])) + pairs[:, 1] * float(x[j])
    return float(vals[0])


def superset_sums_by_cardinality(table: Table, factors: np.ndarray, t: int) -> Table:
    """sum_{T >= S, |T| = t} table[T] prod_{i in T \\ S} factors[i] for every S"""
    card = cardinalities(num_players(table))
    bucket = np.where(card == t, table, 0.0)
    return superset_accumulate_(bucket, factors)
