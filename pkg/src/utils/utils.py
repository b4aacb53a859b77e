# %%
from typing import List, Optional

import numpy as np

from src.utils.exceptions import GameValidationError


def clean(x: float) -> float:
    """float without the sign of zero"""
    return float(x) + 0.0


def format_float(x: float) -> str:
    """17 significant digits, enough to round-trip any binary64"""
    return format(clean(x), ".17g")


def table_scale(values: np.ndarray) -> float:
    """max(1, ||f||_inf), the factor absolute tolerances are scaled by"""
    if values.size == 0:
        return 1.0
    return max(1.0, float(np.max(np.abs(values))))


def make_rng(seed: Optional[int]) -> np.random.Generator:
    return np.random.default_rng(seed)


def parse_players(text: str) -> List[int]:
    """parse a member list like "2,3" (an empty string is the empty coalition)

    Args:
        text (str): comma-separated 1-based player ids

    Returns:
        List[int]: player ids in the given order
    """
    text = text.strip().strip("{}")
    if not text:
        return []
    players = []
    for token in text.split(","):
        token = token.strip()
        try:
            players.append(int(token))
        except ValueError:
            raise GameValidationError(f"invalid player id {token!r} in {text!r}")
    return players
