"""Two-user downlink NOMA model: power split, constellation and effective SNRs.

The near user (NU) receives QPSK at power ``eps1`` and the far user (FU)
BPSK at power ``eps2``; the transmitted symbol is their superposition.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import AllocationError, DomainError

__all__ = [
    "PowerAllocation",
    "BitTriple",
    "ConstellationPoint",
    "EffectiveSnrSet",
    "allocate_power",
    "map_symbol",
    "all_bit_triples",
    "effective_snrs",
    "mean_effective_snrs",
]


@dataclass(frozen=True)
class PowerAllocation:
    alpha: float
    total_power: float
    eps1: float
    eps2: float

    @property
    def fu_amplitude(self) -> float:
        """sqrt(eps2): FU BPSK amplitude."""
        return math.sqrt(self.eps2)

    @property
    def nu_amplitude(self) -> float:
        """sqrt(eps1/2): NU QPSK per-axis amplitude."""
        return math.sqrt(self.eps1 / 2.0)


def allocate_power(alpha: float, total_power: float = 1.0) -> PowerAllocation:
    """Split ``total_power`` as eps1 = alpha*P_s (NU), eps2 = P_s - eps1 (FU)."""
    alpha = float(alpha)
    total_power = float(total_power)
    if not math.isfinite(total_power) or total_power <= 0:
        raise DomainError(f"total_power must be positive and finite, got {total_power!r}")
    if not alpha > 0:
        raise AllocationError(f"alpha must be in (0, 0.5): alpha > 0 violated, got {alpha!r}")
    if not alpha < 0.5:
        raise AllocationError(
            f"alpha must be in (0, 0.5): NU/FU power ordering (alpha < 0.5) violated, got {alpha!r}"
        )
    eps1 = alpha * total_power
    eps2 = total_power - eps1
    alloc = PowerAllocation(alpha, total_power, eps1, eps2)
    # constellation validity, checked on its own rather than inferred from alpha < 0.5
    if not alloc.fu_amplitude > alloc.nu_amplitude:
        raise AllocationError("constellation invalid: sqrt(eps2) <= sqrt(eps1/2)")
    return alloc


@dataclass(frozen=True)
class BitTriple:
    """One superposed symbol's bits.

    ``nu_bit1`` rides the in-phase axis, ``nu_bit2`` the quadrature axis and
    ``fu_bit`` is the FU BPSK bit.
    """

    nu_bit1: int
    nu_bit2: int
    fu_bit: int

    def __post_init__(self):
        for name in ("nu_bit1", "nu_bit2", "fu_bit"):
            if getattr(self, name) not in (0, 1):
                raise DomainError(f"{name} must be 0 or 1, got {getattr(self, name)!r}")

    @classmethod
    def from_label(cls, label: str) -> "BitTriple":
        """Parse the ``"xy,z"`` notation: x = NU quadrature bit, y = NU in-phase bit, z = FU bit."""
        pair, fu = label.strip("() ").split(",")
        return cls(nu_bit1=int(pair[1]), nu_bit2=int(pair[0]), fu_bit=int(fu))

    @property
    def label(self) -> str:
        return f"({self.nu_bit2}{self.nu_bit1},{self.fu_bit})"


def all_bit_triples() -> list[BitTriple]:
    return [BitTriple(a, b, c) for a, b, c in itertools.product((0, 1), repeat=3)]


@dataclass(frozen=True)
class ConstellationPoint:
    in_phase: float
    quadrature: float

    def __complex__(self) -> complex:
        return complex(self.in_phase, self.quadrature)


def _signs(nu_bit1, nu_bit2, fu_bit):
    # bit 0 -> +1 on both NU axes; FU bit 1 -> positive side
    s_fu = 2 * np.asarray(fu_bit, dtype=np.int8) - 1
    s_nu1 = 1 - 2 * np.asarray(nu_bit1, dtype=np.int8)
    s_nu2 = 1 - 2 * np.asarray(nu_bit2, dtype=np.int8)
    return s_fu, s_nu1, s_nu2


def map_components(nu_bit1, nu_bit2, fu_bit, alloc: PowerAllocation):
    """Vectorised mapper; returns (in_phase, quadrature) arrays."""
    s_fu, s_nu1, s_nu2 = _signs(nu_bit1, nu_bit2, fu_bit)
    a, b = alloc.fu_amplitude, alloc.nu_amplitude
    return s_fu * a + s_nu1 * b, s_nu2 * b


def map_symbol(bits: BitTriple, alloc: PowerAllocation) -> ConstellationPoint:
    i, q = map_components(bits.nu_bit1, bits.nu_bit2, bits.fu_bit, alloc)
    return ConstellationPoint(float(i), float(q))


_SNR_FIELDS = ("gamma_a", "gamma_b", "gamma_c", "gamma_d", "gamma_e", "gamma_f", "gamma_g")


@dataclass(frozen=True)
class EffectiveSnrSet:
    """Linear effective SNRs (or their means under Rayleigh fading).

    gamma_a/gamma_b drive the FU formulas, gamma_c..gamma_g the NU ones.
    """

    gamma_a: float
    gamma_b: float
    gamma_c: float
    gamma_d: float
    gamma_e: float
    gamma_f: float
    gamma_g: float

    def __post_init__(self):
        for name in _SNR_FIELDS:
            v = getattr(self, name)
            if not v >= 0:
                raise DomainError(f"{name} must be non-negative, got {v!r}")

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in _SNR_FIELDS}

    def scaled(self, factor: float) -> "EffectiveSnrSet":
        return EffectiveSnrSet(*(getattr(self, n) * factor for n in _SNR_FIELDS))

    @classmethod
    def uniform(cls, value: float) -> "EffectiveSnrSet":
        return cls(*([float(value)] * len(_SNR_FIELDS)))


def effective_snrs(alloc: PowerAllocation, channel_power: float, n0: float) -> EffectiveSnrSet:
    """Effective SNRs for channel power ``|h|^2`` and noise density ``n0``."""
    channel_power = float(channel_power)
    n0 = float(n0)
    if not n0 > 0:
        raise DomainError(f"n0 must be positive, got {n0!r}")
    if not channel_power >= 0:
        raise DomainError(f"channel_power must be non-negative, got {channel_power!r}")
    a, b = alloc.fu_amplitude, alloc.nu_amplitude
    scale = channel_power / (n0 / 2.0)
    inner = (a - b) ** 2 * scale
    outer = (a + b) ** 2 * scale
    return EffectiveSnrSet(
        gamma_a=inner,
        gamma_b=outer,
        gamma_c=alloc.eps1 * channel_power / n0,
        gamma_d=outer,
        gamma_e=inner,
        gamma_f=(2 * a + b) ** 2 * scale,
        gamma_g=(2 * a - b) ** 2 * scale,
    )


def mean_effective_snrs(
    alloc: PowerAllocation, mean_channel_power: float = 1.0, n0: float = 1.0
) -> EffectiveSnrSet:
    """Mean effective SNRs under Rayleigh fading with E[|h|^2] = ``mean_channel_power``.

    Each gamma is a fixed multiple of |h|^2, hence exponential with this mean.
    """
    if not float(mean_channel_power) > 0:
        raise DomainError(f"mean_channel_power must be positive, got {mean_channel_power!r}")
    return effective_snrs(alloc, mean_channel_power, n0)
