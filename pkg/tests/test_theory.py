import math

import pytest

from sparsekit import (
    geometric_profile,
    geometric_to_decay_params,
    noiseless_condition,
    noisy_conditions,
    recoverable_count,
    snr_to_nu,
    worst_case_conditions,
)
from sparsekit.theory import BoundReport, DecayParams


def params(**kw):
    base = dict(t=1, lam=1.0, m=1.0, S=1, K=256, mu=0.125)
    base.update(kw)
    return DecayParams(**base)


class TestNoiselessCondition:
    def test_reference_point(self):
        # Hand recomputation: (1*ceil(1/1) + sqrt(1*1*1*ln(256)/1) + 1) * 1 * 0.125^2.
        expected = (1 + math.sqrt(math.log(256.0)) + 1) * 0.015625
        report = noiseless_condition(params())
        assert abs(report.lhs - expected) < 1e-15
        assert abs(report.lhs - 0.06804406320360859) < 1e-12
        assert report.satisfied  # 1/13 ~ 0.0769
        assert report.failure_probability == 0.0078125

    def test_vanishing_coherence_always_satisfied(self):
        report = noiseless_condition(params(mu=1e-9, S=48))
        assert report.lhs < 1e-12
        assert report.satisfied

    def test_monotone_in_each_parameter(self):
        base_kw = dict(S=4, lam=2.0, mu=0.1, m=1.0, t=1)
        lhs0 = noiseless_condition(params(**base_kw)).lhs
        for kw in (dict(S=5), dict(mu=0.12), dict(m=1.5), dict(t=2)):
            bumped = params(**{**base_kw, **kw})
            assert noiseless_condition(bumped).lhs > lhs0

    def test_monotone_on_grid(self):
        for S in (2, 8, 32):
            for mu in (0.05, 0.125, 0.3):
                seq = [
                    noiseless_condition(params(S=S, mu=mu, m=m, lam=2.0)).lhs
                    for m in (0.5, 1.0, 2.0, 4.0)
                ]
                assert seq == sorted(seq)

    def test_vacuous_probability_reported_unclamped(self):
        report = noiseless_condition(params(S=7, m=0.5))
        assert report.failure_probability == 14.0


class TestNoisyConditions:
    def test_reference_point(self):
        profile = geometric_profile(16, 1.0)
        nu = snr_to_nu(256, 128)
        p = params(S=16, lam=4.0)
        decay, floor = noisy_conditions(p, s=16, nu=nu, profile=profile)
        assert abs(floor.lhs - 0.18212132119074634) < 1e-12
        assert floor.threshold == 0.25
        assert floor.satisfied
        assert decay.failure_probability == floor.failure_probability == 4 * 16 / 256

    def test_zero_noise_floor_trivially_satisfied(self):
        profile = geometric_profile(4, 0.9)
        _, floor = noisy_conditions(params(S=4, lam=0.4), s=2, nu=0.0, profile=profile)
        assert floor.lhs == 0.0 and floor.satisfied

    def test_noisy_variant_binds_tighter_than_noiseless(self):
        # Normalised slack comparison at s = S over a parameter grid: the
        # noisy predicate is always the stricter one.
        for S in (2, 8, 24):
            for mu in (0.05, 0.125, 0.25):
                for alpha in (0.75, 0.9):
                    p = geometric_to_decay_params(alpha, S, 1.0, 256, mu)
                    profile = geometric_profile(S, alpha)
                    noiseless = noiseless_condition(p)
                    noisy, _ = noisy_conditions(p, s=S, nu=0.0, profile=profile)
                    assert (
                        noisy.lhs / noisy.threshold
                        > noiseless.lhs / noiseless.threshold
                    )

    def test_depth_validation(self):
        profile = geometric_profile(4, 0.9)
        with pytest.raises(ValueError):
            noisy_conditions(params(S=4, lam=0.4), s=5, nu=0.1, profile=profile)
        with pytest.raises(ValueError):
            noisy_conditions(params(S=4, lam=0.4), s=0, nu=0.1, profile=profile)


class TestWorstCase:
    def test_guaranteed_region(self):
        profile = geometric_profile(3, 0.9)
        pair, _ = worst_case_conditions(3, 0.125, profile)
        assert pair.lhs == 0.75 and pair.satisfied
        assert pair.failure_probability == 0.0

    def test_flat_profile_conditions_coincide(self):
        profile = geometric_profile(5, 1.0)
        pair, thresh = worst_case_conditions(5, 0.08, profile)
        assert thresh.threshold == pytest.approx(1.0, abs=1e-12)
        assert pair.satisfied == thresh.satisfied

    def test_decaying_profile_threshold(self):
        profile = geometric_profile(4, 0.75)
        pair, thresh = worst_case_conditions(4, 0.125, profile)
        assert pair.lhs == 1.0
        assert not pair.satisfied  # strict: 1.0 < 1.0 is false
        assert abs(thresh.threshold - 0.75 ** 3) < 1e-12
        assert not thresh.satisfied

    def test_ratio_uses_the_sparsity_prefix(self):
        profile = geometric_profile(6, 0.8)
        _, thresh = worst_case_conditions(4, 0.01, profile)
        assert abs(thresh.threshold - 0.8 ** 3) < 1e-12


class TestRecoverableCount:
    def test_zero_noise_counts_everything(self):
        profile = geometric_profile(9, 0.8)
        assert recoverable_count(profile, 0.0, 256) == 9

    def test_flat_high_snr_reference(self):
        profile = geometric_profile(16, 1.0)
        assert recoverable_count(profile, snr_to_nu(256, 128), 256) == 16

    def test_decaying_low_snr_regression(self):
        # Frozen after first computation: c_i = beta * 0.75^i with S = 32
        # against the SNR-16 noise level keeps exactly 8 coefficients.
        profile = geometric_profile(32, 0.75)
        assert recoverable_count(profile, snr_to_nu(16, 128), 256) == 8

    def test_decaying_high_snr_regression(self):
        profile = geometric_profile(32, 0.75)
        assert recoverable_count(profile, snr_to_nu(256, 128), 256) == 13

    def test_monotone_in_noise(self):
        profile = geometric_profile(24, 0.85)
        counts = [recoverable_count(profile, nu, 256) for nu in (0.0, 0.005, 0.02, 0.08)]
        assert counts == sorted(counts, reverse=True)

    def test_monotone_in_sparsity_on_experiment_grid(self):
        for alpha in (0.75, 0.85, 1.0):
            for snr in (16, 256):
                nu = snr_to_nu(snr, 128)
                counts = [
                    recoverable_count(geometric_profile(S, alpha), nu, 256)
                    for S in range(2, 49, 2)
                ]
                assert counts == sorted(counts)


class TestDecayParams:
    def test_geometric_conversion(self):
        p = geometric_to_decay_params(0.9, 20, 1.0, 256, 0.125)
        assert p.t == 1 and abs(p.lam - 2.0) < 1e-12

    def test_conversion_bracket_example(self):
        p = geometric_to_decay_params(0.75, 4, 1.0, 256, 0.125)
        assert abs(p.lam - 1.0) < 1e-12
        assert p.t * math.ceil(p.S / p.lam) == 4

    def test_flat_profile_rejected(self):
        with pytest.raises(ValueError):
            geometric_to_decay_params(1.0, 20, 1.0, 256, 0.125)

    def test_lambda_to_zero_blows_up(self):
        lhs = [
            noiseless_condition(geometric_to_decay_params(a, 20, 1.0, 256, 0.125)).lhs
            for a in (0.9, 0.99, 0.999999)
        ]
        assert lhs == sorted(lhs) and lhs[-1] > 1e3

    @pytest.mark.parametrize(
        "kw",
        [dict(t=0), dict(lam=0.0), dict(m=0.0), dict(S=0), dict(K=1), dict(mu=0.0), dict(mu=1.0)],
    )
    def test_invalid_params_rejected(self, kw):
        with pytest.raises(ValueError):
            params(**kw)


def test_bound_report_consistency_enforced():
    with pytest.raises(ValueError):
        BoundReport(
            label="x", lhs=2.0, threshold=1.0, satisfied=True, failure_probability=0.0
        )
    report = BoundReport(
        label="x", lhs=1.0, threshold=1.0, satisfied=False, failure_probability=0.0, strict=True
    )
    assert not report.satisfied
