"""Entanglement criteria and Gaussian discord against closed-form and
definition-level oracles."""

import math

import numpy as np
import pytest

from qradar.channels import attenuation_channel
from qradar.criteria import (
    BipartiteBlocks,
    gaussian_discord,
    lambda_sph,
    standard_form,
    two_eta,
)
from qradar.errors import NonStandardFormError, ValidationError
from qradar.gaussian import (
    GaussianState,
    apply_channel,
    entropy_term,
    symplectic_eigenvalues,
)

from conftest import random_physical_two_mode, random_symplectic, tmsv_cov


def tmsv_blocks(r: float) -> BipartiteBlocks:
    return BipartiteBlocks.from_covariance(tmsv_cov(r))


def vacuum_blocks() -> BipartiteBlocks:
    return BipartiteBlocks(0.5 * np.eye(2), 0.5 * np.eye(2), np.zeros((2, 2)))


def definition_level_discord(cov: np.ndarray) -> float:
    """Independent oracle: S(B) - S(AB) + S(A|heterodyne-on-B)."""
    a_block, b_block, c_block = cov[:2, :2], cov[2:, 2:], cov[:2, 2:]
    s_b = entropy_term(math.sqrt(np.linalg.det(b_block)))
    s_ab = sum(entropy_term(nu) for nu in symplectic_eigenvalues(cov))
    cond = a_block - c_block @ np.linalg.inv(b_block + 0.5 * np.eye(2)) @ c_block.T
    s_cond = entropy_term(math.sqrt(np.linalg.det(cond)))
    return s_b - s_ab + s_cond


class TestLambdaSph:
    def test_vacuum_boundary_exact(self):
        assert lambda_sph(vacuum_blocks()) == 0.0

    @pytest.mark.parametrize("r", [0.1, 0.5, 1.0])
    def test_tmsv_closed_form(self, r):
        assert lambda_sph(tmsv_blocks(r)) == pytest.approx(
            (1.0 - math.cosh(4 * r)) / 8.0, abs=1e-9
        )

    def test_thermal_product_arithmetic(self):
        blocks = BipartiteBlocks(1.5 * np.eye(2), 1.5 * np.eye(2), np.zeros((2, 2)))
        assert lambda_sph(blocks) == 4.0

    def test_unphysical_blocks_rejected(self):
        with pytest.raises(ValidationError):
            lambda_sph(BipartiteBlocks(0.1 * np.eye(2), 0.1 * np.eye(2), np.zeros((2, 2))))


class TestTwoEta:
    def test_vacuum_boundary_exact(self):
        assert two_eta(vacuum_blocks()) == 1.0

    @pytest.mark.parametrize("r", [0.1, 0.5, 1.0])
    def test_tmsv_ppt_oracle(self, r):
        assert two_eta(tmsv_blocks(r)) == pytest.approx(math.exp(-2 * r), abs=1e-9)

    def test_thermal_product(self):
        blocks = BipartiteBlocks(1.5 * np.eye(2), 1.5 * np.eye(2), np.zeros((2, 2)))
        assert two_eta(blocks) == pytest.approx(3.0, abs=1e-12)

    def test_loss_monotonicity(self):
        source = GaussianState(2, np.zeros(4), tmsv_cov(0.8))
        previous = -np.inf
        for kappa_r in np.linspace(0.0, 1.5, 12):
            lossy = apply_channel(
                source, attenuation_channel(kappa_r, 1.0, 0.0).expand(0, 2)
            )
            value = two_eta(BipartiteBlocks.from_covariance(lossy.cov))
            assert value >= previous - 1e-12
            previous = value


class TestStandardForm:
    def test_vacuum(self):
        params = standard_form(vacuum_blocks())
        assert (params.a, params.b, params.tau, params.eta_param) == (0.5, 0.5, 0.0, 0.5)

    def test_tmsv_plugin_arithmetic(self):
        params = standard_form(tmsv_blocks(0.5))
        a = math.cosh(1.0) / 2
        d = math.sinh(1.0) / 2
        assert params.a == pytest.approx(a, rel=1e-12)
        assert params.b == pytest.approx(a, rel=1e-12)
        # b < 1 here, so the printed tau = d^2/(b^2-1) is negative.
        assert params.tau == pytest.approx(d**2 / (a**2 - 1.0), rel=1e-9)
        assert params.eta_param == pytest.approx(a - a * d**2 / (a**2 - 1.0), rel=1e-9)

    def test_two_mode_squeezed_thermal_reduction(self, rng):
        # Brute-force local-symplectic oracle: scramble a standard-form state
        # with local symplectics, then recover (a, b, d).
        n_occ, r = 1.0, 0.5
        a = b = 1.5 * math.cosh(1.0)
        d = 1.5 * math.sinh(1.0)
        cov = np.block([
            [a * np.eye(2), d * np.diag([1.0, -1.0])],
            [d * np.diag([1.0, -1.0]), b * np.eye(2)],
        ])
        local = np.zeros((4, 4))
        local[:2, :2] = random_symplectic(rng, 1)
        local[2:, 2:] = random_symplectic(rng, 1)
        scrambled = BipartiteBlocks.from_covariance(local @ cov @ local.T)
        params = standard_form(scrambled)
        assert params.a == pytest.approx(a, rel=1e-9)
        assert params.b == pytest.approx(b, rel=1e-9)
        assert params.tau == pytest.approx(d**2 / (b**2 - 1.0), rel=1e-8)

    def test_non_reducible_blocks_rejected(self):
        # Distinct |c+| != |c-| cannot reduce to d diag(1, -1).
        blocks = BipartiteBlocks(
            2.0 * np.eye(2), 2.0 * np.eye(2), np.diag([0.9, -0.2])
        )
        with pytest.raises(NonStandardFormError) as err:
            standard_form(blocks)
        assert err.value.residuals


class TestGaussianDiscord:
    def test_product_state_vanishes(self):
        blocks = BipartiteBlocks(1.2 * np.eye(2), 0.8 * np.eye(2), np.zeros((2, 2)))
        report = gaussian_discord(blocks)
        assert report.discord == pytest.approx(0.0, abs=1e-9)
        assert report.classical_corr == pytest.approx(0.0, abs=1e-9)
        assert report.mutual_info == pytest.approx(0.0, abs=1e-9)

    def test_tmsv_matches_definition_level_oracle(self):
        cov = tmsv_cov(0.5)
        report = gaussian_discord(BipartiteBlocks.from_covariance(cov))
        assert report.discord == pytest.approx(definition_level_discord(cov), abs=1e-10)
        assert report.discord > 0
        assert report.classical_corr > 0

    def test_entangled_implies_discordant(self, rng):
        found = 0
        for _ in range(200):
            state = random_physical_two_mode(rng)
            report = gaussian_discord(BipartiteBlocks.from_covariance(state.cov))
            if report.lambda_sph < 0:
                found += 1
                assert report.discord > 0
        assert found > 10

    def test_report_fields_consistent(self, rng):
        for _ in range(50):
            state = random_physical_two_mode(rng)
            report = gaussian_discord(BipartiteBlocks.from_covariance(state.cov))
            assert report.entangled_by_sph == (report.lambda_sph < 0)
            assert report.entangled_by_ppt == (report.two_eta < 1)
            assert report.discord >= 0
            assert report.mutual_info >= report.classical_corr >= 0


class TestLocalSymplecticInvariance:
    def test_lambda_and_eta_invariant(self, rng):
        for _ in range(25):
            state = random_physical_two_mode(rng)
            blocks = BipartiteBlocks.from_covariance(state.cov)
            local = np.zeros((4, 4))
            local[:2, :2] = random_symplectic(rng, 1)
            local[2:, 2:] = random_symplectic(rng, 1)
            moved = BipartiteBlocks.from_covariance(local @ state.cov @ local.T)
            assert lambda_sph(moved) == pytest.approx(
                lambda_sph(blocks), rel=1e-9, abs=1e-9
            )
            assert two_eta(moved) == pytest.approx(two_eta(blocks), rel=1e-9, abs=1e-9)


def test_criterion_agreement_sample(rng):
    for _ in range(200):
        state = random_physical_two_mode(rng)
        blocks = BipartiteBlocks.from_covariance(state.cov)
        assert (lambda_sph(blocks) < 0) == (two_eta(blocks) < 1)
