"""Closed-form and simulated BER for two-user downlink NOMA (BPSK FU, QPSK NU with SIC)."""

from .analytic import (
    NuBerBreakdown,
    SymbolClass,
    fu_ber_awgn,
    fu_ber_rayleigh,
    fu_conditional_error,
    nu_ber_awgn,
    nu_ber_awgn_correct_fu,
    nu_ber_awgn_error_fu,
    nu_ber_rayleigh,
    symbol_class,
)
from .model import (
    BitTriple,
    ConstellationPoint,
    EffectiveSnrSet,
    PowerAllocation,
    allocate_power,
    effective_snrs,
    map_symbol,
    mean_effective_snrs,
)
from .sim import (
    AwgnFixedGain,
    BerEstimate,
    NoiseModel,
    RayleighFlat,
    SimConfig,
    SimResult,
    simulate_ber,
)
from .special import (
    erfc_exp_antiderivative,
    erfc_func,
    phi,
    q_func,
    quadrature_expectation,
    rayleigh_q_average,
)

__version__ = "0.1.0"
