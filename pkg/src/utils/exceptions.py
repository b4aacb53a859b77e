# %%
class GameError(ValueError):
    """Base class of every error raised by the library."""


class GameValidationError(GameError):
    """Invalid game table, player count, coalition, player or degree."""


class GameFileError(GameValidationError):
    """Malformed game document."""


class ProfileError(GameError):
    """Invalid probability profile or profile/game dimension mismatch."""


class ConstantGameError(GameError):
    """Statistic undefined because the game has zero variance."""
