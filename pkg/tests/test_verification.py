import numpy as np
import pandas as pd
import pytest
from omegaconf import OmegaConf

from src.cli.main import CONFIG_PATH
from src.data.game_io import load_document
from src.data.games import majority_game, weighted_voting_game
from src.data.generate_games import generate_game, get_meta_df, sample_game
from src.games.weights import ProbabilityProfile
from src.models.indexes import BANZHAF, InteractionTable
from src.models.verification import IDENTITIES, CheckResult, run_suite, sample_coalitions
from src.utils.exceptions import ProfileError


@pytest.fixture
def verify_cfg():
    return OmegaConf.load(CONFIG_PATH).verify


class TestSuite:
    def test_majority_passes(self, verify_cfg):
        report = run_suite(majority_game(3), ProbabilityProfile.uniform(3, 0.3), 7, verify_cfg, "majority3")
        assert report.failures == []
        assert [c.identity for c in report.checks] == [name for name, _, _ in IDENTITIES]

    def test_voting_game_passes(self, verify_cfg):
        f = weighted_voting_game([4.0, 3.0, 2.0, 1.0, 1.0], 5.5)
        report = run_suite(f, ProbabilityProfile(np.array([0.2, 0.4, 0.5, 0.6, 0.8])), 1, verify_cfg)
        assert report.passed

    def test_size_limits_skip_oracles(self, verify_cfg):
        cfg = OmegaConf.merge(verify_cfg, {"sizes": [], "limits": {"alternating_sum": 2, "quadrature": 2}})
        report = run_suite(majority_game(3), ProbabilityProfile.uniform(3), 0, cfg)
        games = {c.identity: c.games for c in report.checks}
        assert games["fast mobius transform equals alternating subset sums"] == 0
        assert games["shapley index equals diagonal quadrature"] == 0
        assert games["mobius and zeta transforms are inverse"] == 1

    def test_requires_strict_profile(self, verify_cfg):
        with pytest.raises(ProfileError):
            run_suite(majority_game(3), ProbabilityProfile(np.array([1.0, 0.5, 0.5])), 0, verify_cfg)

    def test_deterministic(self, verify_cfg):
        first = run_suite(majority_game(3), ProbabilityProfile.uniform(3), 3, verify_cfg).to_json()
        assert run_suite(majority_game(3), ProbabilityProfile.uniform(3), 3, verify_cfg).to_json() == first


class TestCheckResult:
    def test_record(self):
        result = CheckResult("x", 1e-10)
        result.record(1e-12)
        result.record(5e-11)
        assert result.games == 2 and result.max_error == 5e-11 and result.passed
        result.record(1e-9)
        assert not result.passed

    def test_error_only_on_request(self):
        result = CheckResult("x", 1e-10)
        result.record(3e-12)
        assert result.to_json() == {"identity": "x", "games": 1, "tolerance": 1e-10, "passed": True}
        assert result.to_json(errors=True)["max_error"] == 3e-12

    def test_signed_sum_identity_catches_wrong_banzhaf(self, verify_cfg, monkeypatch):
        from src.models import verification

        table = verification.banzhaf_all
        shifted = lambda f: InteractionTable(f.n, table(f).values + 1e-6, None, BANZHAF)
        monkeypatch.setattr(verification, "banzhaf_all", shifted)
        report = run_suite(majority_game(3), ProbabilityProfile.uniform(3), 0, verify_cfg)
        assert "signed-sum banzhaf equals uniform profile" in report.failures

    def test_sample_coalitions(self, rng):
        picked = sample_coalitions(3, rng, 4)
        assert picked[:3] == [0, 7, 1]
        assert len(set(picked)) == len(picked)


class TestGenerateGames:
    def test_batch(self, tmp_path, monkeypatch):
        cfg = OmegaConf.create(
            {
                "N_data": 3,
                "n": 4,
                "kind": "random",
                "low": -1.0,
                "high": 1.0,
                "quota": 0.5,
                "null_player": 2,
                "dummy_coalition": [1, 3],
                "representation": "mobius",
                "seed": 0,
            }
        )
        monkeypatch.chdir(tmp_path)
        meta_df = get_meta_df(cfg)
        assert list(meta_df.columns) == ["seed", "kind", "n"]
        stats = [generate_game(i, int(row.seed), cfg) for i, row in meta_df.iterrows()]
        assert all(s["null_players"] >= 1 for s in stats)
        doc = load_document(tmp_path / "0_game.json")
        assert doc.n == 4 and doc.mobius is not None
        assert pd.DataFrame(stats).shape == (3, 4)

    def test_unknown_kind(self, rng):
        cfg = OmegaConf.create({"kind": "nope", "n": 3, "null_player": None, "dummy_coalition": None})
        with pytest.raises(NotImplementedError):
            sample_game(cfg, rng)
