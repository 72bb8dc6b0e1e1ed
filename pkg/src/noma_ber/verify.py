"""Oracle suite behind ``noma-ber verify``.

Each check pits a closed form against an independent route (quadrature,
Monte Carlo, or a known reduction) at desk scale.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from . import analytic
from .model import allocate_power, effective_snrs, mean_effective_snrs
from .sim import AwgnFixedGain, NoiseModel, RayleighFlat, SimConfig, simulate_ber
from .special import erfc_exp_definite, q_func, quadrature_expectation, rayleigh_q_average

from scipy import integrate, special


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _q_sqrt(g):
    return q_func(math.sqrt(g))


def check_rayleigh_quadrature():
    worst = 0.0
    for gb in (0.01, 0.1, 1.0, 2.0, 10.0, 100.0, 1e4):
        worst = max(worst, abs(rayleigh_q_average(gb) - quadrature_expectation(_q_sqrt, gb)))
    return CheckResult("rayleigh_q_average vs quadrature", worst <= 1e-9, f"max |diff| = {worst:.3e}")


def check_antiderivative():
    worst = 0.0
    for upper in (0.1, 0.5, 2.0, 10.0, 50.0):
        for a in (0.1, 0.5, 1.0, 5.0, 50.0):
            ref, _ = integrate.quad(
                lambda x: special.erfc(math.sqrt(x)) * math.exp(-x / a), 0, upper,
                epsabs=1e-13, epsrel=1e-13, limit=200,
            )
            worst = max(worst, abs(erfc_exp_definite(upper, a) - ref))
    return CheckResult("erfc-exp antiderivative vs quadrature", worst <= 1e-8, f"max |diff| = {worst:.3e}")


def check_decomposition(samples=1000, seed=0):
    rnd = random.Random(seed)
    worst = 0.0
    for _ in range(samples):
        alloc = allocate_power(rnd.uniform(1e-6, 0.5 - 1e-6), rnd.uniform(0.1, 10.0))
        snrs = effective_snrs(alloc, rnd.expovariate(1.0), 10 ** rnd.uniform(-3, 1))
        b = analytic.nu_ber_awgn(snrs)
        worst = max(worst, abs(b.total - b.correct_fu - b.error_fu))
    return CheckResult("NU class I + class II = total", worst <= 1e-12, f"max |diff| = {worst:.3e}")


def check_degenerate_reduction():
    alloc = allocate_power(1e-9, 1.0)
    worst = 0.0
    for snr_db in range(0, 31, 2):
        n0 = 1.0 / 10 ** (snr_db / 10)
        gb = 2 * alloc.eps2 / n0
        classic = 0.5 * (1 - math.sqrt(gb / (gb + 2)))
        got = analytic.fu_ber_rayleigh(mean_effective_snrs(alloc, 1.0, n0))
        worst = max(worst, abs(got - classic))
    return CheckResult("FU Rayleigh BER -> BPSK at alpha=1e-9", worst <= 1e-6, f"max |diff| = {worst:.3e}")


def check_rayleigh_terms():
    worst = 0.0
    alloc = allocate_power(0.2, 1.0)
    for snr_db in (0, 10, 20, 30):
        m = mean_effective_snrs(alloc, 1.0, 10 ** (-snr_db / 10))
        e = {k: quadrature_expectation(_q_sqrt, v) for k, v in m.as_dict().items()}
        fu = 0.5 * (e["gamma_a"] + e["gamma_b"])
        nu = e["gamma_c"] + 0.25 * (e["gamma_f"] + e["gamma_e"] - e["gamma_d"] - e["gamma_g"])
        worst = max(worst, abs(fu - analytic.fu_ber_rayleigh(m)), abs(nu - analytic.nu_ber_rayleigh(m)))
    return CheckResult("Rayleigh closed forms vs quadrature", worst <= 1e-9, f"max |diff| = {worst:.3e}")


def check_monte_carlo(trials=1_000_000, seed=1, workers=1):
    alloc = allocate_power(0.2, 1.0)
    worst = 0.0
    for k, snr_db in enumerate((0, 4, 8, 12)):
        n0 = 10 ** (-snr_db / 10)
        res = simulate_ber(alloc, AwgnFixedGain(1.0), NoiseModel(n0),
                           SimConfig(trials, seed=seed + k, worker_count=workers))
        snrs = effective_snrs(alloc, 1.0, n0)
        worst = max(worst, res.fu.sigma_distance(analytic.fu_ber_awgn(snrs)),
                    res.nu.sigma_distance(analytic.nu_ber_awgn(snrs).total))
    for k, snr_db in enumerate((0, 10, 20)):
        n0 = 10 ** (-snr_db / 10)
        res = simulate_ber(alloc, RayleighFlat(1.0), NoiseModel(n0),
                           SimConfig(trials, seed=seed + 100 + k, worker_count=workers))
        m = mean_effective_snrs(alloc, 1.0, n0)
        worst = max(worst, res.fu.sigma_distance(analytic.fu_ber_rayleigh(m)),
                    res.nu.sigma_distance(analytic.nu_ber_rayleigh(m)))
    # 14 comparisons: allow 4 sigma so a correct model fails < 0.1% of the time
    return CheckResult("Monte Carlo vs closed forms", worst <= 4.0, f"max deviation = {worst:.2f} sigma")


def run_all(trials=1_000_000, seed=1, workers=1) -> list[CheckResult]:
    return [
        check_rayleigh_quadrature(),
        check_antiderivative(),
        check_rayleigh_terms(),
        check_decomposition(),
        check_degenerate_reduction(),
        check_monte_carlo(trials, seed, workers),
    ]
