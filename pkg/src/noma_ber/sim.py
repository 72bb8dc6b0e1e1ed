"""Monte Carlo link simulator for the two-user NOMA downlink.

The simulator is the brute-force counterpart of :mod:`noma_ber.analytic`:
random bits are superposed, passed through a channel and AWGN, and detected
with an ML threshold detector (FU) and a SIC receiver (NU), both with genie
channel knowledge.

Randomness comes from Philox substreams keyed by ``(seed, batch_index)``, so
a run is a pure function of ``(trials, seed, batch_size)`` regardless of how
many workers execute the batches.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DetectionError, DomainError
from .model import BitTriple, PowerAllocation, map_components

__all__ = [
    "AwgnFixedGain",
    "RayleighFlat",
    "NoiseModel",
    "SimConfig",
    "BerEstimate",
    "TrialOutcome",
    "SimResult",
    "substream",
    "draw_channel",
    "transmit",
    "add_channel_and_noise",
    "detect_fu",
    "detect_nu_sic",
    "count_errors",
    "simulate_ber",
]

DEFAULT_BATCH = 1 << 18


@dataclass(frozen=True)
class AwgnFixedGain:
    gain: float = 1.0

    def __post_init__(self):
        if not self.gain >= 0:
            raise DomainError(f"gain must be non-negative, got {self.gain!r}")


@dataclass(frozen=True)
class RayleighFlat:
    mean_power: float = 1.0

    def __post_init__(self):
        if not self.mean_power > 0:
            raise DomainError(f"mean_power must be positive, got {self.mean_power!r}")


ChannelModel = AwgnFixedGain | RayleighFlat


@dataclass(frozen=True)
class NoiseModel:
    n0: float

    def __post_init__(self):
        if not self.n0 > 0:
            raise DomainError(f"n0 must be positive, got {self.n0!r}")

    @property
    def sigma(self) -> float:
        """Per-quadrature standard deviation, sqrt(N0/2)."""
        return math.sqrt(self.n0 / 2.0)


@dataclass(frozen=True)
class SimConfig:
    trials: int
    seed: int = 0
    batch_size: int | None = None
    worker_count: int = 1

    def __post_init__(self):
        problems = []
        if not isinstance(self.trials, (int, np.integer)) or self.trials < 1:
            problems.append(f"trials must be a positive integer, got {self.trials!r}")
        if not 0 <= int(self.seed) < 2**64:
            problems.append(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.batch_size is not None:
            if self.batch_size < 1:
                problems.append(f"batch_size must be positive, got {self.batch_size!r}")
            elif isinstance(self.trials, (int, np.integer)) and self.batch_size > self.trials:
                problems.append(
                    f"batch_size must not exceed trials ({self.trials}), got {self.batch_size!r}"
                )
        if self.worker_count < 1:
            problems.append(f"worker_count must be positive, got {self.worker_count!r}")
        if problems:
            raise ConfigError(problems)

    @property
    def effective_batch_size(self) -> int:
        return self.batch_size if self.batch_size is not None else min(self.trials, DEFAULT_BATCH)

    def batches(self) -> list[tuple[int, int]]:
        """(batch_index, trial_count) pairs covering ``trials``."""
        size = self.effective_batch_size
        full, rest = divmod(self.trials, size)
        out = [(i, size) for i in range(full)]
        if rest:
            out.append((full, rest))
        return out


@dataclass(frozen=True)
class BerEstimate:
    bit_errors: int
    bits_tested: int

    def __post_init__(self):
        if not 0 <= self.bit_errors <= self.bits_tested:
            raise DomainError(f"need 0 <= bit_errors <= bits_tested, got {self}")

    @property
    def ber(self) -> float:
        return self.bit_errors / self.bits_tested if self.bits_tested else 0.0

    @property
    def std_error(self) -> float:
        if not self.bits_tested:
            return 0.0
        p = self.ber
        return math.sqrt(p * (1.0 - p) / self.bits_tested)

    def sigma_distance(self, reference: float) -> float:
        """|reference - ber| in standard errors; inf when the standard error is 0."""
        se = self.std_error
        if se == 0:
            return math.inf
        return abs(reference - self.ber) / se


@dataclass(frozen=True)
class TrialOutcome:
    fu_bit_error_at_fu: bool
    nu_bit_errors: int
    fu_detected_correctly_at_nu: bool


@dataclass(frozen=True)
class SimResult:
    fu: BerEstimate
    nu: BerEstimate
    nu_class1: BerEstimate
    nu_class2: BerEstimate


def substream(seed: int, index: int) -> np.random.Generator:
    """Independent Philox generator for ``(seed, index)``."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(index)])))


def draw_channel(model: ChannelModel, rng: np.random.Generator, size=None):
    """Channel coefficient(s): fixed real gain, or CN(0, mean_power) for Rayleigh."""
    if isinstance(model, AwgnFixedGain):
        if size is None:
            return complex(model.gain)
        return np.full(size, model.gain, dtype=complex)
    if isinstance(model, RayleighFlat):
        s = math.sqrt(model.mean_power / 2.0)
        re = rng.standard_normal(size)
        im = rng.standard_normal(size)
        h = s * (re + 1j * im)
        return complex(h) if size is None else h
    raise TypeError(f"unknown channel model {model!r}")


def transmit(bits: BitTriple, alloc: PowerAllocation) -> complex:
    i, q = map_components(bits.nu_bit1, bits.nu_bit2, bits.fu_bit, alloc)
    return complex(float(i), float(q))


def add_channel_and_noise(x, h, noise: NoiseModel, rng: np.random.Generator):
    """y = h*x + w with w ~ CN(0, N0); ``x`` and ``h`` may be arrays."""
    x = np.asarray(x)
    shape = np.broadcast(x, np.asarray(h)).shape
    w = noise.sigma * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
    y = h * x + w
    return complex(y) if y.ndim == 0 else y


def _derotate(y, h):
    """Rotate y by the conjugate phase of h; returns (compensated y, |h|)."""
    y = np.asarray(y, dtype=complex)
    h = np.asarray(h, dtype=complex)
    mag = np.abs(h)
    if (mag == 0).any():
        raise DetectionError("channel gain is zero; coherent detection impossible")
    return y * np.conj(h) / mag, mag


def _fu_decision(z_real):
    # exact 0 resolves to bit 0
    return (z_real > 0).astype(np.int8)


def _scalar(v):
    return int(v) if np.ndim(v) == 0 else v


def detect_fu(y, h, alloc: PowerAllocation):
    """ML detection of the FU bit: in-phase threshold at 0 after phase compensation."""
    z, _ = _derotate(y, h)
    return _scalar(_fu_decision(z.real))


def _sic(z, mag, alloc: PowerAllocation, fu_hat=None):
    if fu_hat is None:
        fu_hat = _fu_decision(z.real)
    s_fu = 2 * np.asarray(fu_hat, dtype=np.int8) - 1
    residual_i = z.real - mag * s_fu * alloc.fu_amplitude
    nu1 = (residual_i < 0).astype(np.int8)
    nu2 = (z.imag < 0).astype(np.int8)
    return nu1, nu2, np.asarray(fu_hat, dtype=np.int8)


def detect_nu_sic(y, h, alloc: PowerAllocation, *, fu_override=None):
    """SIC detection at the NU: decide the FU bit, cancel it, slice the residual.

    Returns ``(nu_bit1, nu_bit2, fu_bit_hat)``. ``fu_override`` forces the
    FU decision used for cancellation (for constructing class-II cases).
    """
    z, mag = _derotate(y, h)
    nu1, nu2, fu_hat = _sic(z, mag, alloc, fu_override)
    return _scalar(nu1), _scalar(nu2), _scalar(fu_hat)


def count_errors(bits, y_fu, h_fu, y_nu, h_nu, alloc: PowerAllocation):
    """Run both receivers over arrays of trials and return raw error counts.

    ``bits`` is an ``(n, 3)`` integer array of ``(nu_bit1, nu_bit2, fu_bit)``.
    Returns ``(fu_errors, nu_errors, nu_errors_class1, nu_errors_class2)``.
    """
    bits = np.asarray(bits)
    nu1, nu2, fu = bits[:, 0], bits[:, 1], bits[:, 2]
    z_fu, _ = _derotate(y_fu, h_fu)
    fu_errors = int(np.count_nonzero(_fu_decision(z_fu.real) != fu))

    z_nu, mag_nu = _derotate(y_nu, h_nu)
    nu1_hat, nu2_hat, fu_hat = _sic(z_nu, mag_nu, alloc)
    per_trial = (nu1_hat != nu1).astype(np.int64) + (nu2_hat != nu2)
    fu_ok = fu_hat == fu
    class1 = int(per_trial[fu_ok].sum())
    class2 = int(per_trial[~fu_ok].sum())
    return fu_errors, class1 + class2, class1, class2


def trial_outcomes(bits, y_fu, h_fu, y_nu, h_nu, alloc: PowerAllocation) -> list[TrialOutcome]:
    """Per-trial outcomes; the slow path of :func:`count_errors`, for inspection."""
    bits = np.asarray(bits)
    out = []
    for row, yf, hf, yn, hn in zip(bits, np.atleast_1d(y_fu), np.atleast_1d(h_fu),
                                   np.atleast_1d(y_nu), np.atleast_1d(h_nu)):
        nu1, nu2, fu = (int(v) for v in row)
        n1, n2, fh = detect_nu_sic(yn, hn, alloc)
        out.append(TrialOutcome(
            fu_bit_error_at_fu=detect_fu(yf, hf, alloc) != fu,
            nu_bit_errors=int(n1 != nu1) + int(n2 != nu2),
            fu_detected_correctly_at_nu=fh == fu,
        ))
    return out


def _run_batch(index, n, seed, alloc, channel, fu_channel, noise):
    rng = substream(seed, index)
    bits = rng.integers(0, 2, size=(n, 3), dtype=np.int8)
    i, q = map_components(bits[:, 0], bits[:, 1], bits[:, 2], alloc)
    x = i + 1j * q
    h_fu = draw_channel(fu_channel, rng, n)
    h_nu = draw_channel(channel, rng, n)
    y_fu = add_channel_and_noise(x, h_fu, noise, rng)
    y_nu = add_channel_and_noise(x, h_nu, noise, rng)
    return count_errors(bits, y_fu, h_fu, y_nu, h_nu, alloc)


def simulate_ber(
    alloc: PowerAllocation,
    channel: ChannelModel,
    noise: NoiseModel,
    config: SimConfig,
    fu_channel: ChannelModel | None = None,
) -> SimResult:
    """Estimate FU and NU bit error rates by Monte Carlo.

    ``channel`` is the NU's channel and, unless ``fu_channel`` is given, the
    FU's as well; the two users always fade independently. Class-1/class-2
    NU estimates split NU bit errors by whether SIC decided the FU bit
    correctly and are both normalised by all NU bits, so they sum to ``nu``.
    """
    if fu_channel is None:
        fu_channel = channel
    jobs = config.batches()

    def run(job):
        return _run_batch(job[0], job[1], config.seed, alloc, channel, fu_channel, noise)

    if config.worker_count == 1 or len(jobs) == 1:
        counts = [run(j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=config.worker_count) as pool:
            counts = list(pool.map(run, jobs))

    fu_e, nu_e, c1, c2 = (sum(c[k] for c in counts) for k in range(4))
    n = config.trials
    return SimResult(
        fu=BerEstimate(fu_e, n),
        nu=BerEstimate(nu_e, 2 * n),
        nu_class1=BerEstimate(c1, 2 * n),
        nu_class2=BerEstimate(c2, 2 * n),
    )
