import math

import numpy as np
import pytest

from noma_ber import analytic
from noma_ber.analytic import symbol_class
from noma_ber.errors import ConfigError, DetectionError, DomainError
from noma_ber.model import BitTriple, all_bit_triples, allocate_power, effective_snrs, map_symbol
from noma_ber.sim import (
    AwgnFixedGain,
    BerEstimate,
    NoiseModel,
    RayleighFlat,
    SimConfig,
    add_channel_and_noise,
    count_errors,
    detect_fu,
    detect_nu_sic,
    draw_channel,
    simulate_ber,
    substream,
    transmit,
    trial_outcomes,
)

N_DRAWS = 1_000_000


class TestChannel:
    def test_fixed(self):
        rng = substream(0, 0)
        assert draw_channel(AwgnFixedGain(1.0), rng) == 1.0
        assert np.all(draw_channel(AwgnFixedGain(0.5), rng, 10) == 0.5)

    def test_rayleigh_moments(self):
        h = draw_channel(RayleighFlat(1.0), substream(1, 0), N_DRAWS)
        p = np.abs(h) ** 2
        # exponential(1): sd of the sample mean is 1/sqrt(N)
        assert abs(p.mean() - 1.0) <= 3 / math.sqrt(N_DRAWS)
        tail = np.mean(p > 1.0)
        se = math.sqrt(math.exp(-1) * (1 - math.exp(-1)) / N_DRAWS)
        assert abs(tail - math.exp(-1)) <= 3 * se

    def test_bad_models(self):
        with pytest.raises(DomainError):
            AwgnFixedGain(-1.0)
        with pytest.raises(DomainError):
            RayleighFlat(0.0)
        with pytest.raises(DomainError):
            NoiseModel(0.0)


class TestNoise:
    def test_vanishing(self):
        y = add_channel_and_noise(0.3 - 0.2j, 0.7 + 0.1j, NoiseModel(1e-30), substream(2, 0))
        assert y == pytest.approx((0.7 + 0.1j) * (0.3 - 0.2j), abs=1e-14)

    def test_variance_and_independence(self):
        n0 = 0.8
        w = add_channel_and_noise(np.zeros(N_DRAWS), 1.3, NoiseModel(n0), substream(3, 0))
        var = n0 / 2
        # sd of a Gaussian sample variance: var*sqrt(2/N)
        for comp in (w.real, w.imag):
            assert abs(comp.var() - var) <= 3 * var * math.sqrt(2 / N_DRAWS)
        corr = np.corrcoef(w.real, w.imag)[0, 1]
        assert abs(corr) <= 3 / math.sqrt(N_DRAWS)


class TestDetectors:
    alloc = allocate_power(0.2, 1.0)

    def test_fu_noiseless(self):
        a, b = self.alloc.fu_amplitude, self.alloc.nu_amplitude
        h = 0.6 - 0.8j
        assert detect_fu(h * a, h, self.alloc) == 1
        assert detect_fu(h * (-a + b), h, self.alloc) == 0
        assert detect_fu(0.0, h, self.alloc) == 0

    def test_zero_channel(self):
        with pytest.raises(DetectionError):
            detect_fu(1.0, 0.0, self.alloc)
        with pytest.raises(DetectionError):
            detect_nu_sic(1.0, 0.0, self.alloc)

    @pytest.mark.parametrize("alpha", [0.05, 0.2, 0.4, 0.49])
    @pytest.mark.parametrize("h", [1.0, 0.3 + 2j, -1j])
    def test_noiseless_exhaustive(self, alpha, h):
        alloc = allocate_power(alpha, 1.0)
        rng = substream(4, 0)
        for bits in all_bit_triples():
            y = add_channel_and_noise(transmit(bits, alloc), h, NoiseModel(1e-30), rng)
            assert detect_fu(y, h, alloc) == bits.fu_bit
            assert detect_nu_sic(y, h, alloc) == (bits.nu_bit1, bits.nu_bit2, bits.fu_bit)

    def test_transmit_matches_mapper(self):
        for bits in all_bit_triples():
            assert transmit(bits, self.alloc) == complex(map_symbol(bits, self.alloc))

    def test_wrong_cancellation_flips_nu_bit1(self):
        # cancelling the wrong FU level moves the residual by 2*sqrt(eps2), past 0
        for bits in all_bit_triples():
            x = transmit(bits, self.alloc)
            nu1, nu2, _ = detect_nu_sic(x, 1.0, self.alloc, fu_override=1 - bits.fu_bit)
            residual = x.real - (2 * (1 - bits.fu_bit) - 1) * self.alloc.fu_amplitude
            flips = (residual < 0) != (bits.nu_bit1 == 1)
            assert (nu1 != bits.nu_bit1) == flips
            assert nu2 == bits.nu_bit2
        # noiseless, a wrong cancellation corrupts exactly the inner-level symbols
        for b in all_bit_triples():
            nu1 = detect_nu_sic(transmit(b, self.alloc), 1.0, self.alloc, fu_override=1 - b.fu_bit)[0]
            assert (nu1 != b.nu_bit1) == symbol_class(b).is_inner


class TestEstimate:
    def test_fields(self):
        e = BerEstimate(25, 100)
        assert e.ber == 0.25
        assert e.std_error == pytest.approx(math.sqrt(0.25 * 0.75 / 100))
        assert BerEstimate(0, 10).sigma_distance(0.1) == math.inf

    def test_invalid(self):
        with pytest.raises(DomainError):
            BerEstimate(11, 10)


class TestConfig:
    def test_zero_trials(self):
        with pytest.raises(ConfigError):
            SimConfig(0)

    def test_batch_larger_than_trials(self):
        with pytest.raises(ConfigError):
            SimConfig(10, batch_size=11)

    def test_batches_cover(self):
        cfg = SimConfig(1000, batch_size=300)
        assert cfg.batches() == [(0, 300), (1, 300), (2, 300), (3, 100)]


class TestSimulate:
    alloc = allocate_power(0.2, 1.0)

    @pytest.mark.parametrize("alpha", [0.05, 0.2, 0.4])
    @pytest.mark.parametrize("channel", [AwgnFixedGain(1.0), RayleighFlat(1.0)])
    def test_noiseless(self, alpha, channel):
        r = simulate_ber(allocate_power(alpha, 1.0), channel, NoiseModel(1e-30), SimConfig(20_000, seed=5))
        assert r.fu.bit_errors == 0 and r.nu.bit_errors == 0

    def test_deterministic_and_worker_invariant(self):
        cfg = dict(trials=200_000, seed=9, batch_size=30_000)
        runs = [
            simulate_ber(self.alloc, RayleighFlat(1.0), NoiseModel(0.3), SimConfig(worker_count=w, **cfg))
            for w in (1, 1, 4, 8)
        ]
        assert all(r == runs[0] for r in runs)

    def test_batch_size_is_part_of_the_key(self):
        a = simulate_ber(self.alloc, RayleighFlat(1.0), NoiseModel(0.3), SimConfig(100_000, seed=9, batch_size=50_000))
        b = simulate_ber(self.alloc, RayleighFlat(1.0), NoiseModel(0.3), SimConfig(100_000, seed=9, batch_size=25_000))
        assert a != b

    def test_class_partition(self):
        r = simulate_ber(self.alloc, AwgnFixedGain(1.0), NoiseModel(1.0), SimConfig(100_000, seed=3))
        assert r.nu_class1.bit_errors + r.nu_class2.bit_errors == r.nu.bit_errors
        assert r.nu.bits_tested == 200_000 and r.fu.bits_tested == 100_000

    def test_zero_gain_raises(self):
        with pytest.raises(DetectionError):
            simulate_ber(self.alloc, AwgnFixedGain(0.0), NoiseModel(1.0), SimConfig(1000))

    def test_point_symmetry(self):
        rng = substream(11, 0)
        n = 200_000
        bits = rng.integers(0, 2, size=(n, 3), dtype=np.int8)
        h_fu = draw_channel(RayleighFlat(1.0), rng, n)
        h_nu = draw_channel(RayleighFlat(1.0), rng, n)
        sigma = math.sqrt(0.5 / 2)
        w_fu = sigma * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
        w_nu = sigma * (rng.standard_normal(n) + 1j * rng.standard_normal(n))

        def run(b, sign):
            x = np.array([transmit(BitTriple(*map(int, r)), self.alloc) for r in b[:2000]])
            xs = np.concatenate([x, _vec_tx(b[2000:], self.alloc)])
            return count_errors(b, h_fu * xs + sign * w_fu, h_fu, h_nu * xs + sign * w_nu, h_nu, self.alloc)

        assert run(bits, 1) == run(1 - bits, -1)

    def test_outcomes_agree_with_counts(self):
        rng = substream(12, 0)
        n = 3000
        bits = rng.integers(0, 2, size=(n, 3), dtype=np.int8)
        x = _vec_tx(bits, self.alloc)
        h = draw_channel(RayleighFlat(1.0), rng, n)
        y = h * x + 0.7 * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
        out = trial_outcomes(bits, y, h, y, h, self.alloc)
        fu_e, nu_e, c1, c2 = count_errors(bits, y, h, y, h, self.alloc)
        assert sum(o.fu_bit_error_at_fu for o in out) == fu_e
        assert sum(o.nu_bit_errors for o in out) == nu_e
        assert sum(o.nu_bit_errors for o in out if o.fu_detected_correctly_at_nu) == c1
        assert c1 + c2 == nu_e

    def test_fixed_gain_quick_agreement(self):
        n0 = 10 ** (-0.8)
        r = simulate_ber(self.alloc, AwgnFixedGain(1.0), NoiseModel(n0), SimConfig(1_000_000, seed=21))
        s = effective_snrs(self.alloc, 1.0, n0)
        assert r.fu.sigma_distance(analytic.fu_ber_awgn(s)) <= 4
        assert r.nu.sigma_distance(analytic.nu_ber_awgn(s).total) <= 4


def _vec_tx(bits, alloc):
    from noma_ber.model import map_components

    i, q = map_components(bits[:, 0], bits[:, 1], bits[:, 2], alloc)
    return i + 1j * q


@pytest.mark.slow
def test_estimator_calibration():
    """z-scores of (sim - analytic)/stderr over many seeds look standard normal."""
    alloc = allocate_power(0.2, 1.0)
    n0 = 10 ** (-0.6)
    s = effective_snrs(alloc, 1.0, n0)
    ref = analytic.nu_ber_awgn(s).total
    z = []
    for seed in range(200):
        r = simulate_ber(alloc, AwgnFixedGain(1.0), NoiseModel(n0), SimConfig(50_000, seed=seed))
        z.append((r.nu.ber - ref) / r.nu.std_error)
    z = np.array(z)
    assert abs(z.mean()) < 0.2
    assert 0.5 <= z.var(ddof=1) <= 2.0
