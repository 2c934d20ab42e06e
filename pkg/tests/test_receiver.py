"""Detection chain: source covariance, correlation coefficient, Monte-Carlo
statistics, ROC construction, and the classical baseline."""

import dataclasses
import math

import numpy as np
import pytest
from scipy import stats

from qradar.channels import attenuation_channel, thermal_background_channel
from qradar.errors import ValidationError
from qradar.gaussian import apply_channel
from qradar.receiver import (
    QiScenario,
    ci_baseline,
    correlation_coefficient,
    low_signal_channels,
    roc_curve,
    run_detection,
    tmsv_cm,
)


def make_scenario(**overrides) -> QiScenario:
    signal, background = low_signal_channels(n_background=10.0, transmissivity=0.2)
    defaults = dict(
        r=math.asinh(0.1),
        signal_channel=signal,
        background_channel=background,
        samples_per_decision=500,
        n_decisions=400,
        seed=77,
    )
    defaults.update(overrides)
    return QiScenario(**defaults)


class TestSource:
    def test_r_zero_is_vacuum(self):
        assert np.array_equal(tmsv_cm(0.0).cov, 0.5 * np.eye(4))

    def test_structure_at_r_half(self):
        state = tmsv_cm(0.5)
        assert state.cov[0, 0] == pytest.approx(0.5 * math.cosh(1.0))
        assert state.cov[0, 2] == pytest.approx(0.5 * math.sinh(1.0))
        assert state.cov[1, 3] == pytest.approx(-0.5 * math.sinh(1.0))

    @pytest.mark.parametrize("r", [0.2, 0.9, 1.6])
    def test_purity(self, r):
        from qradar.gaussian import symplectic_eigenvalues

        assert symplectic_eigenvalues(tmsv_cm(r)) == pytest.approx([0.5, 0.5], abs=1e-10)


class TestCorrelationCoefficient:
    def test_vacuum_uncorrelated(self):
        assert correlation_coefficient(tmsv_cm(0.0)) == 0.0

    def test_tmsv_tanh(self):
        assert correlation_coefficient(tmsv_cm(0.5)) == pytest.approx(math.tanh(1.0))

    def test_through_loss_closed_form(self):
        r, tau, n_b = 0.5, 0.3, 2.0
        state = tmsv_cm(r)
        lossy = apply_channel(
            state, attenuation_channel(-0.5 * math.log(tau), 1.0, n_b).expand(0, 2)
        )
        expected = (
            math.sqrt(tau) * math.sinh(2 * r)
            / math.sqrt(math.cosh(2 * r) * (tau * math.cosh(2 * r) + (1 - tau) * (2 * n_b + 1)))
        )
        assert correlation_coefficient(lossy) == pytest.approx(expected, rel=1e-12)


class TestRunDetection:
    def test_deterministic(self):
        scenario = make_scenario()
        a = run_detection(scenario)
        b = run_detection(scenario)
        assert np.array_equal(a.h0, b.h0) and np.array_equal(a.h1, b.h1)

    def test_parallel_reproduces_serial(self):
        scenario = make_scenario()
        serial = run_detection(scenario, parallelism=1)
        parallel = run_detection(scenario, parallelism=3)
        assert np.array_equal(serial.h0, parallel.h0)
        assert np.array_equal(serial.h1, parallel.h1)

    def test_null_scenario_distributions_identical(self):
        background = thermal_background_channel(10.0)
        scenario = make_scenario(
            r=0.0, signal_channel=background, background_channel=background,
            n_decisions=2000, samples_per_decision=20,
        )
        samples = run_detection(scenario)
        ks = stats.ks_2samp(samples.h0, samples.h1)
        assert ks.pvalue > 0.01

    def test_mean_separation_grows_with_samples(self):
        small = run_detection(make_scenario(samples_per_decision=100, n_decisions=800))
        large = run_detection(make_scenario(samples_per_decision=1600, n_decisions=800))

        def deflection(s):
            pooled = 0.5 * (s.h0.var(ddof=1) + s.h1.var(ddof=1))
            return (s.h1.mean() - s.h0.mean()) / math.sqrt(pooled)

        # d' scales as sqrt(K); allow generous Monte-Carlo slack.
        assert deflection(large) > 2.5 * deflection(small)

    def test_statistic_mean_matches_analytic(self):
        scenario = make_scenario(n_decisions=3000, samples_per_decision=200)
        samples = run_detection(scenario)
        tau, r = 0.2, scenario.r
        analytic = math.sqrt(tau) * math.sinh(2 * r)
        se = samples.h1.std(ddof=1) / math.sqrt(samples.h1.size)
        assert abs(samples.h1.mean() - analytic) < 4 * se
        assert abs(samples.h0.mean()) < 4 * samples.h0.std(ddof=1) / math.sqrt(samples.h0.size)

    def test_energy_detector_ignores_idler(self):
        scenario = make_scenario(detector="energy_detector", n_decisions=200)
        samples = run_detection(scenario)
        assert (samples.h0 > 0).all() and (samples.h1 > 0).all()

    def test_record_covariance_converges_to_analytic(self):
        # The per-record second moments match the measured H1 covariance,
        # every entry within 4 standard errors at 1e5 samples.
        from qradar.gaussian import GaussianState, sample
        from qradar.receiver import _qi_moments

        scenario = make_scenario()
        (mean1, cov1), _ = _qi_moments(scenario)
        n = 100_000
        draws = sample(GaussianState(2, mean1, cov1), n, seed=13)
        empirical = np.cov(draws, rowvar=False, ddof=1)
        for i in range(4):
            for j in range(4):
                se = math.sqrt((cov1[i, i] * cov1[j, j] + cov1[i, j] ** 2) / n)
                assert abs(empirical[i, j] - cov1[i, j]) < 4 * se


class TestRocCurve:
    def test_identical_distributions_chance_auc(self, rng):
        a = rng.standard_normal(10_000)
        b = rng.standard_normal(10_000)
        assert roc_curve(a, b).auc == pytest.approx(0.5, abs=0.01)

    def test_perfect_separation(self):
        assert roc_curve([0.0, 1.0, 2.0], [10.0, 11.0]).auc == 1.0

    def test_endpoints_and_monotonicity(self, rng):
        roc = roc_curve(rng.standard_normal(500), 1.0 + rng.standard_normal(500))
        assert roc.pfa[0] == 1.0 and roc.pfa[-1] == 0.0
        assert roc.pd[0] == 1.0 and roc.pd[-1] == 0.0
        assert (np.diff(roc.pfa) <= 0).all()
        assert (np.diff(roc.pd) <= 0).all()

    def test_auc_invariant_under_monotone_transform(self, rng):
        h0 = rng.standard_normal(400)
        h1 = 0.5 + rng.standard_normal(400)
        base = roc_curve(h0, h1).auc
        assert roc_curve(np.exp(h0), np.exp(h1)).auc == pytest.approx(base, abs=1e-12)

    def test_correlation_ordering(self):
        # Larger rho at the same noise must dominate in AUC.
        weak = run_detection(make_scenario(r=math.asinh(0.1), n_decisions=1500))
        strong = run_detection(make_scenario(r=math.asinh(0.35), n_decisions=1500))
        assert roc_curve(strong.h0, strong.h1).auc > roc_curve(weak.h0, weak.h1).auc

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            roc_curve([], [1.0])


class TestCiBaseline:
    def test_r_zero_chance_for_both(self):
        scenario = make_scenario(r=0.0, n_decisions=3000, samples_per_decision=30)
        qi = run_detection(scenario)
        ci = ci_baseline(scenario)
        assert roc_curve(qi.h0, qi.h1).auc == pytest.approx(0.5, abs=0.02)
        assert roc_curve(ci.h0, ci.h1).auc == pytest.approx(0.5, abs=0.02)

    def test_low_signal_quantum_advantage(self):
        scenario = make_scenario(n_decisions=2500, samples_per_decision=2000)
        qi = run_detection(scenario)
        ci = ci_baseline(scenario)
        assert roc_curve(qi.h0, qi.h1).auc > roc_curve(ci.h0, ci.h1).auc + 0.05

    def test_strong_signal_advantage_shrinks(self):
        low = make_scenario(n_decisions=1200, samples_per_decision=2000)
        strong = make_scenario(
            r=math.asinh(2.0), n_decisions=1200, samples_per_decision=6,
        )
        gaps = {}
        for name, scenario in (("low", low), ("strong", strong)):
            qi = roc_curve(*dataclasses.astuple(run_detection(scenario))).auc
            ci = roc_curve(*dataclasses.astuple(ci_baseline(scenario))).auc
            gaps[name] = qi - ci
        assert gaps["strong"] < gaps["low"]

    def test_matched_seed_decisions(self):
        scenario = make_scenario(n_decisions=50)
        qi = run_detection(scenario)
        ci = ci_baseline(scenario)
        assert qi.h0.shape == ci.h0.shape


class TestScenarioValidation:
    def test_counts_positive(self):
        with pytest.raises(ValidationError):
            make_scenario(n_decisions=0)

    def test_detector_choices(self):
        with pytest.raises(ValidationError):
            make_scenario(detector="telepathy")

    def test_channel_arity(self):
        bad = attenuation_channel(0.1, 1.0).expand(0, 2)
        with pytest.raises(ValidationError):
            make_scenario(signal_channel=bad)
