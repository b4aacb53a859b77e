"""hypothesis strategies for games and strict profiles"""
import numpy as np
from hypothesis import strategies as st

from src.games.core import Game, MobiusTransform, from_mobius
from src.games.weights import ProbabilityProfile

finite = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)
probability = st.floats(min_value=1e-3, max_value=1.0 - 1e-3, allow_nan=False)


@st.composite
def games(draw, min_players: int = 1, max_players: int = 6) -> Game:
    n = draw(st.integers(min_players, max_players))
    values = draw(st.lists(finite, min_size=1 << n, max_size=1 << n))
    return Game(n, np.array(values))


@st.composite
def games_and_profiles(draw, min_players: int = 1, max_players: int = 6):
    f = draw(games(min_players, max_players))
    p = draw(st.lists(probability, min_size=f.n, max_size=f.n))
    return f, ProbabilityProfile(np.array(p))


@st.composite
def games_profiles_and_coalitions(draw, min_players: int = 1, max_players: int = 6):
    f, p = draw(games_and_profiles(min_players, max_players))
    s = draw(st.integers(0, (1 << f.n) - 1))
    return f, p, s


@st.composite
def games_and_coalitions(draw, min_players: int = 1, max_players: int = 6):
    f = draw(games(min_players, max_players))
    s = draw(st.integers(0, (1 << f.n) - 1))
    return f, s


@st.composite
def increasing_games(draw, max_players: int = 6):
    """(f, p, S) with f S-increasing: Mobius coefficients on supersets of S are nonnegative"""
    n = draw(st.integers(1, max_players))
    s = draw(st.integers(0, (1 << n) - 1))
    coeffs = np.array(draw(st.lists(finite, min_size=1 << n, max_size=1 << n)))
    supersets = (np.arange(1 << n) & s) == s
    coeffs[supersets] = np.abs(coeffs[supersets])
    p = draw(st.lists(probability, min_size=n, max_size=n))
    return from_mobius(MobiusTransform(n, coeffs)), ProbabilityProfile(np.array(p)), s
