import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given

from src.data.games import additive_game, random_game, random_profile
from src.games.core import Game, mobius, permute, permute_coalition, s_difference, unanimity
from src.games.weights import ProbabilityProfile
from src.models import oracles
from src.models.indexes import (
    BANZHAF,
    SHAPLEY,
    InteractionTable,
    banzhaf,
    banzhaf_all,
    banzhaf_center_of_mass,
    banzhaf_value,
    index_from_mobius,
    index_to_mobius,
    probabilistic_coefficient,
    probabilistic_coefficients,
    reconstruct_game,
    reindex,
    shapley_interaction,
    shapley_interaction_all,
    shapley_value,
    weighted_banzhaf,
    weighted_banzhaf_all,
)
from src.utils.exceptions import GameValidationError, ProfileError
from tests.strategies import games, games_and_profiles, games_profiles_and_coalitions, increasing_games
from tests.symbolic import mixed_partial_at


class TestMajorityGame:
    """I_{B,p}(f, {i, j}) = 1 - 2 p_k on the 3-player majority game"""

    PAIRS = [(0b011, 2), (0b101, 1), (0b110, 0)]

    def test_pairs(self, majority3, rng):
        profiles = [np.array([0.9, 0.5, 0.5])] + [rng.uniform(0, 1, 3) for _ in range(20)]
        for p in profiles:
            table = weighted_banzhaf_all(majority3, p)
            for s, k in self.PAIRS:
                assert abs(table[s] - (1.0 - 2.0 * p[k])) <= 1e-12

    def test_cited_value(self, majority3):
        assert weighted_banzhaf(majority3, [0.9, 0.5, 0.5], 0b110) == pytest.approx(-0.8, abs=1e-12)

    def test_banzhaf(self, majority3):
        table = banzhaf_all(majority3)
        assert table.family == BANZHAF
        np.testing.assert_array_equal(table.values, [0.5, 0.5, 0.5, 0, 0.5, 0, 0, -2])
        for s, _ in self.PAIRS:
            assert abs(banzhaf(majority3, s)) <= 1e-12

    def test_power_indexes(self, majority3):
        np.testing.assert_allclose(shapley_value(majority3), [1 / 3] * 3, atol=1e-15)
        np.testing.assert_array_equal(banzhaf_value(majority3), [0.5] * 3)


class TestWeightedBanzhaf:
    def test_unanimity(self):
        p = np.array([0.3, 0.6, 0.8])
        table = weighted_banzhaf_all(unanimity(3, 0b011), p)
        assert table[0b011] == 1.0
        assert table[0b001] == pytest.approx(0.6, abs=1e-15)
        assert table[0b010] == pytest.approx(0.3, abs=1e-15)
        assert table[0] == pytest.approx(0.18, abs=1e-15)
        assert table[0b100] == 0.0

    def test_boundary_profile_reduces_to_mobius(self, rng):
        f = Game(4, rng.uniform(-1, 1, 16))
        np.testing.assert_array_equal(weighted_banzhaf_all(f, np.zeros(4)).values, mobius(f).coeffs)

    def test_additive_game(self):
        f = additive_game([1.0, 2.0, 3.0], constant=0.5)
        table = weighted_banzhaf_all(f, [0.5, 0.5, 0.5])
        np.testing.assert_allclose(table.power_index(), [1.0, 2.0, 3.0], atol=1e-15)
        assert table[0] == pytest.approx(3.5, abs=1e-15)

    def test_empty_coalition_is_mean(self, rng):
        f = Game(5, rng.uniform(-1, 1, 32))
        p = rng.uniform(0, 1, 5)
        assert weighted_banzhaf_all(f, p)[0] == pytest.approx(oracles.expected_difference_index(f, p, 0), abs=1e-12)

    def test_exact_derivative(self, rng):
        f = Game(3, rng.uniform(-1, 1, 8))
        p = [sympy.Rational(1, 5), sympy.Rational(2, 3), sympy.Rational(1, 2)]
        table = weighted_banzhaf_all(f, [float(v) for v in p])
        for s in range(8):
            assert table[s] == pytest.approx(float(mixed_partial_at(f, s, p)), abs=1e-12)

    @given(games_profiles_and_coalitions(max_players=6))
    def test_four_forms_agree(self, case):
        f, p, s = case
        forms = oracles.four_index_forms(f, p, s)
        assert max(forms) - min(forms) <= 1e-9

    def test_four_forms_random_triples(self, rng):
        for _ in range(100):
            n = int(rng.integers(1, 9))
            f, p = random_game(n, rng), random_profile(n, rng)
            s = int(rng.integers(0, 1 << n))
            forms = oracles.four_index_forms(f, p, s)
            assert max(forms) - min(forms) <= 1e-9

    @given(games_profiles_and_coalitions(max_players=5))
    def test_expected_difference(self, case):
        f, p, s = case
        assert weighted_banzhaf(f, p, s) == pytest.approx(weighted_banzhaf_all(f, p)[s], abs=1e-10)

    def test_mixed_partial(self, rng):
        for n in range(1, 7):
            f, p = random_game(n, rng), random_profile(n, rng)
            table = weighted_banzhaf_all(f, p)
            for s in range(1 << n):
                if bin(s).count("1") <= 3:
                    assert oracles.finite_difference_index(f, p, s) == pytest.approx(table[s], abs=1e-8)

    @given(games_and_profiles(max_players=6), games(max_players=6))
    def test_linear(self, case, g):
        f, p = case
        if g.n != f.n:
            g = Game(f.n, np.resize(g.values, 1 << f.n))
        combined = weighted_banzhaf_all(2.0 * f - 0.5 * g, p).values
        separate = 2.0 * weighted_banzhaf_all(f, p).values - 0.5 * weighted_banzhaf_all(g, p).values
        np.testing.assert_allclose(combined, separate, atol=1e-10)

    @given(increasing_games())
    def test_monotone(self, case):
        f, p, s = case
        assert s_difference(f, s).values.min() >= -1e-12
        assert weighted_banzhaf(f, p, s) >= -1e-12
        assert weighted_banzhaf_all(f, p)[s] >= -1e-12

    def test_symmetric_profile(self, rng):
        f = random_game(4, rng)
        p = np.full(4, 0.3)
        table = weighted_banzhaf_all(f, p)
        for perm in itertools.permutations([1, 2, 3, 4]):
            moved = weighted_banzhaf_all(permute(f, perm), p)
            for s in range(16):
                assert abs(moved[permute_coalition(s, perm)] - table[s]) <= 1e-10

    def test_asymmetric_profile_witness(self):
        p = np.array([0.2, 0.7, 0.5])
        table = weighted_banzhaf_all(unanimity(3, 0b011), p)
        assert table[0b010] == pytest.approx(0.2, abs=1e-12)
        assert table[0b001] == pytest.approx(0.7, abs=1e-12)
        assert table[0b010] != table[0b001]

    def test_dimension_mismatch(self, majority3):
        with pytest.raises(ProfileError):
            weighted_banzhaf_all(majority3, [0.5, 0.5])


class TestProbabilisticCoefficients:
    def test_sum_to_one(self, rng):
        for _ in range(20):
            n = int(rng.integers(1, 8))
            p = rng.uniform(0, 1, n)
            s = int(rng.integers(0, 1 << n))
            table = probabilistic_coefficients(p, s)
            assert abs(table.sum() - 1.0) <= 1e-12
            m = np.arange(1 << n)
            assert np.all(table[(m & s) != 0] == 0.0)

    def test_scalar_form(self):
        p = [0.2, 0.4, 0.7]
        assert probabilistic_coefficient(p, 0b001, 0b010) == pytest.approx(0.4 * 0.3, abs=1e-15)
        assert probabilistic_coefficient(p, 0b001, 0b010) == probabilistic_coefficients(p, 0b001)[0b010]

    def test_rejects_overlap(self):
        with pytest.raises(GameValidationError):
            probabilistic_coefficient([0.5, 0.5], 0b01, 0b11)


class TestConversions:
    @given(games_and_profiles(max_players=8))
    def test_index_to_mobius(self, case):
        f, p = case
        np.testing.assert_allclose(index_to_mobius(weighted_banzhaf_all(f, p)).coeffs, mobius(f).coeffs, atol=1e-9)

    def test_zero_profile_is_identity(self, rng):
        f = Game(3, rng.uniform(-1, 1, 8))
        table = InteractionTable(3, mobius(f).coeffs, ProbabilityProfile(np.zeros(3)))
        np.testing.assert_array_equal(index_to_mobius(table).coeffs, mobius(f).coeffs)

    def test_roundtrips(self, rng):
        for _ in range(20):
            n = int(rng.integers(1, 11))
            f, p, q = random_game(n, rng), random_profile(n, rng), random_profile(n, rng)
            table = weighted_banzhaf_all(f, p)
            np.testing.assert_allclose(reindex(reindex(table, q), p).values, table.values, atol=1e-9)
            np.testing.assert_allclose(reconstruct_game(table).values, f.values, atol=1e-9)

    def test_reindex_matches_recompute(self, rng):
        for n in range(1, 9):
            f, p, q = random_game(n, rng), random_profile(n, rng), random_profile(n, rng)
            moved = reindex(weighted_banzhaf_all(f, p), q)
            np.testing.assert_allclose(moved.values, weighted_banzhaf_all(f, q).values, atol=1e-9)
            assert moved.profile is not None and moved.profile.same_as(q)

    def test_index_from_mobius(self, majority3):
        table = index_from_mobius(mobius(majority3), [0.5, 0.5, 0.5])
        np.testing.assert_array_equal(table.values, banzhaf_all(majority3).values)

    def test_shapley_table_has_no_profile(self, majority3):
        with pytest.raises(ProfileError):
            index_to_mobius(shapley_interaction_all(majority3))


class TestShapleyAndBanzhaf:
    def test_majority(self, majority3):
        table = shapley_interaction_all(majority3)
        assert table.family == SHAPLEY
        assert table[0b011] == pytest.approx(0.0, abs=1e-15)
        assert table[0b111] == -2.0

    @given(games(max_players=6))
    def test_bucketed_matches_direct(self, f):
        table = shapley_interaction_all(f)
        for s in range(1 << f.n):
            assert table[s] == pytest.approx(shapley_interaction(f, s), abs=1e-10)

    def test_quadrature(self, rng):
        for _ in range(50):
            n = int(rng.integers(1, 7))
            f = random_game(n, rng)
            table = shapley_interaction_all(f)
            for s in range(1 << n):
                assert abs(oracles.legendre_shapley(f, s) - table[s]) <= 1e-10

    def test_efficiency(self, rng):
        f = random_game(6, rng)
        assert shapley_value(f).sum() == pytest.approx(f[63] - f[0], abs=1e-12)

    def test_center_of_mass(self, rng):
        for _ in range(50):
            n = int(rng.integers(1, 7))
            f = random_game(n, rng)
            table = banzhaf_all(f)
            for s in range(1 << n):
                assert abs(banzhaf_center_of_mass(f, s) - table[s]) <= 1e-12
                assert abs(banzhaf(f, s) - table[s]) <= 1e-10

    def test_cube_quadrature(self, rng):
        for n in range(1, 5):
            f = random_game(n, rng)
            table = banzhaf_all(f)
            for s in range(1 << n):
                assert abs(oracles.legendre_banzhaf(f, s) - table[s]) <= 1e-12

    @given(games_profiles_and_coalitions())
    def test_signed_sum(self, case):
        f, _, s = case
        signed = oracles.signed_sum_index(f, s)
        assert signed == pytest.approx(banzhaf_all(f)[s], abs=1e-10)
        assert signed == pytest.approx(weighted_banzhaf(f, ProbabilityProfile.uniform(f.n), s), abs=1e-10)
        assert signed == pytest.approx(oracles.vertex_sum_index(f, ProbabilityProfile.uniform(f.n), s), abs=1e-10)

    def test_signed_sum_majority(self, majority3):
        assert oracles.signed_sum_index(majority3, 0b001) == 0.5
        assert oracles.signed_sum_index(majority3, 0b011) == 0.0
        assert oracles.signed_sum_index(majority3, 0b111) == -2.0


@pytest.mark.slow
def test_twenty_players_in_linear_sweeps(rng):
    import time

    f = Game(20, rng.uniform(-1, 1, 1 << 20))
    start = time.perf_counter()
    table = weighted_banzhaf_all(f, rng.uniform(0, 1, 20))
    assert time.perf_counter() - start < 2.0
    assert table.values.shape == (1 << 20,)
