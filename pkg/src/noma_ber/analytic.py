"""Closed-form BER of the two-user NOMA downlink.

AWGN-conditional forms take instantaneous effective SNRs; the ``*_rayleigh``
forms take mean effective SNRs and replace every Q(sqrt(g)) term by its
exponential average.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .model import BitTriple, EffectiveSnrSet
from .special import q_func, rayleigh_q_average

__all__ = [
    "SymbolClass",
    "NuBerBreakdown",
    "symbol_class",
    "fu_conditional_error",
    "fu_ber_awgn",
    "fu_ber_rayleigh",
    "nu_ber_awgn_correct_fu",
    "nu_ber_awgn_error_fu",
    "nu_ber_awgn",
    "nu_ber_rayleigh",
]


class SymbolClass(enum.Enum):
    """In-phase level pairs seen by the FU detector."""

    INNER_NEGATIVE = "inner_negative"  # (10,0), (00,0) at -sqrt(eps2) + sqrt(eps1/2)
    OUTER_NEGATIVE = "outer_negative"  # (01,0), (11,0) at -sqrt(eps2) - sqrt(eps1/2)
    INNER_POSITIVE = "inner_positive"  # (01,1), (11,1) at +sqrt(eps2) - sqrt(eps1/2)
    OUTER_POSITIVE = "outer_positive"  # (00,1), (10,1) at +sqrt(eps2) + sqrt(eps1/2)

    @property
    def is_inner(self) -> bool:
        return self in (SymbolClass.INNER_NEGATIVE, SymbolClass.INNER_POSITIVE)


def symbol_class(bits: BitTriple) -> SymbolClass:
    # inner level iff the NU in-phase offset points back toward zero
    inner = (bits.nu_bit1 == 0) == (bits.fu_bit == 0)
    if bits.fu_bit == 0:
        return SymbolClass.INNER_NEGATIVE if inner else SymbolClass.OUTER_NEGATIVE
    return SymbolClass.INNER_POSITIVE if inner else SymbolClass.OUTER_POSITIVE


def _q(g: float) -> float:
    return q_func(math.sqrt(g))


def fu_conditional_error(cls: SymbolClass, snrs: EffectiveSnrSet) -> float:
    """FU error probability given the transmitted level pair."""
    return _q(snrs.gamma_a) if cls.is_inner else _q(snrs.gamma_b)


def fu_ber_awgn(snrs: EffectiveSnrSet) -> float:
    return 0.5 * (_q(snrs.gamma_a) + _q(snrs.gamma_b))


def fu_ber_rayleigh(mean_snrs: EffectiveSnrSet) -> float:
    return 0.5 * (rayleigh_q_average(mean_snrs.gamma_a) + rayleigh_q_average(mean_snrs.gamma_b))


def nu_ber_awgn_correct_fu(snrs: EffectiveSnrSet) -> float:
    """NU bit errors jointly with a correct FU decision during SIC (class I)."""
    qc, qd, qe = _q(snrs.gamma_c), _q(snrs.gamma_d), _q(snrs.gamma_e)
    return 0.25 * (qc * (4.0 - qd - qe) - qd)


def nu_ber_awgn_error_fu(snrs: EffectiveSnrSet) -> float:
    """NU bit errors jointly with a wrong FU decision during SIC (class II)."""
    qc, qd, qe = _q(snrs.gamma_c), _q(snrs.gamma_d), _q(snrs.gamma_e)
    qf, qg = _q(snrs.gamma_f), _q(snrs.gamma_g)
    return 0.25 * (qf + qe - qg + qc * (qd + qe))


@dataclass(frozen=True)
class NuBerBreakdown:
    correct_fu: float
    error_fu: float
    total: float


def nu_ber_awgn(snrs: EffectiveSnrSet) -> NuBerBreakdown:
    qc, qd, qe = _q(snrs.gamma_c), _q(snrs.gamma_d), _q(snrs.gamma_e)
    qf, qg = _q(snrs.gamma_f), _q(snrs.gamma_g)
    total = qc + 0.25 * (qf + qe - qd - qg)
    correct = nu_ber_awgn_correct_fu(snrs)
    error = nu_ber_awgn_error_fu(snrs)
    # cross terms qc*qd, qc*qe cancel between the two classes
    assert abs(correct + error - total) <= 1e-12, (correct, error, total)
    return NuBerBreakdown(correct_fu=correct, error_fu=error, total=total)


def nu_ber_rayleigh(mean_snrs: EffectiveSnrSet) -> float:
    def root(g):
        return math.sqrt(g / (g + 2.0))

    m = mean_snrs
    return rayleigh_q_average(m.gamma_c) + 0.125 * (
        root(m.gamma_d) + root(m.gamma_g) - root(m.gamma_e) - root(m.gamma_f)
    )
