# %%
import logging
from typing import Dict

import hydra
import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from omegaconf import DictConfig
from tqdm import tqdm

from src.data.game_io import GameDocument, document_from_game, save_document
from src.data.games import (
    additive_game,
    majority_game,
    random_game,
    weighted_voting_game,
    with_dummy_coalition,
    with_null_player,
)
from src.games.core import Game, coalition, members, mobius
from src.games.weights import ProbabilityProfile
from src.models.analysis import null_players, statistics
from src.models.indexes import shapley_value

log = logging.getLogger(__name__)


# %%
def sample_game(cfg: DictConfig, rng: np.random.Generator) -> Game:
    """draw one game of the configured kind

    Args:
        cfg (DictConfig): generation config
        rng (np.random.Generator): per-game generator

    Returns:
        Game: the game, with the configured null player and dummy coalition injected
    """
    if cfg.kind == "random":
        game = random_game(cfg.n, rng, cfg.low, cfg.high)
    elif cfg.kind == "majority":
        game = majority_game(cfg.n)
    elif cfg.kind == "weighted_voting":
        player_weights = rng.uniform(0.0, 1.0, size=cfg.n)
        game = weighted_voting_game(player_weights, cfg.quota * player_weights.sum())
    elif cfg.kind == "additive":
        game = additive_game(rng.uniform(cfg.low, cfg.high, size=cfg.n))
    else:
        raise NotImplementedError(cfg.kind)

    if cfg.null_player is not None:
        game = with_null_player(game, int(cfg.null_player))
    if cfg.dummy_coalition is not None:
        game = with_dummy_coalition(game, coalition(cfg.dummy_coalition))
    return game


def get_meta_df(cfg: DictConfig) -> pd.DataFrame:
    seeds = np.random.SeedSequence(cfg.seed).generate_state(cfg.N_data)
    return pd.DataFrame({"seed": seeds.astype(np.int64), "kind": cfg.kind, "n": cfg.n})


def generate_game(i: int, seed: int, cfg: DictConfig) -> Dict:
    game = sample_game(cfg, np.random.default_rng(seed))
    name = f"{cfg.kind} #{i}"
    if cfg.representation == "mobius":
        a = mobius(game)
        terms = [(members(m), float(c)) for m, c in enumerate(a.coeffs) if c != 0.0]
        doc = GameDocument(game.n, None, terms, name)
    else:
        doc = document_from_game(game, name)
    save_document(doc, f"{i}_game.json")

    stats = statistics(game, ProbabilityProfile.uniform(game.n))
    return {
        "mean": stats.mean,
        "variance": stats.variance,
        "null_players": len(null_players(game)),
        "max_shapley": float(np.max(shapley_value(game))),
    }


@hydra.main(config_path="../configs", config_name="generate_games")
def main(cfg: DictConfig):
    meta_df = get_meta_df(cfg)
    stats = Parallel(verbose=10, n_jobs=-1)(
        delayed(generate_game)(i, int(row.seed), cfg)
        for i, row in tqdm(meta_df.iterrows(), total=len(meta_df))
    )
    meta_df = pd.concat([meta_df, pd.DataFrame(stats)], axis=1)
    meta_df.to_csv("meta_df.csv", index=False)
    log.info("wrote %d %s games with n=%d", len(meta_df), cfg.kind, cfg.n)


# %%
if __name__ == "__main__":
    main()
