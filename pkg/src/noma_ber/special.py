"""Gaussian tail functions and Rayleigh averages of Q(sqrt(gamma)).

Everything here works on linear-scale quantities; dB conversion happens at
the CLI boundary only. All functions accept scalars or numpy arrays.
"""

from __future__ import annotations

import math
import warnings

import numpy as np
from scipy import integrate, special

from .errors import DomainError, NumericalError

__all__ = [
    "phi",
    "q_func",
    "erfc_func",
    "erfc_exp_antiderivative",
    "erfc_exp_definite",
    "rayleigh_q_average",
    "quadrature_expectation",
]

QUAD_TOL = 1e-10


def _as_checked(x, name="x"):
    arr = np.asarray(x, dtype=float)
    if np.isnan(arr).any():
        raise DomainError(f"{name} is NaN")
    return arr


def _out(arr):
    return float(arr) if arr.ndim == 0 else arr


def phi(z):
    """Standard normal CDF, P(Z <= z)."""
    return _out(special.ndtr(_as_checked(z, "z")))


def q_func(z):
    """Gaussian tail probability Q(z) = P(Z > z) = 1 - phi(z)."""
    return _out(special.ndtr(-_as_checked(z, "z")))


def erfc_func(x):
    """Complementary error function; equals 2*q_func(x*sqrt(2))."""
    return _out(special.erfc(_as_checked(x)))


def erfc_exp_antiderivative(x, alpha):
    r"""Antiderivative of ``erfc(sqrt(x)) * exp(-x/alpha)`` in ``x``.

    .. math::

        F(x) = -\alpha\,\mathrm{erfc}(\sqrt{x})e^{-x/\alpha}
               - \alpha\sqrt{\alpha/(\alpha+1)}\,
                 \mathrm{erf}\big(\sqrt{(\alpha+1)x/\alpha}\big)

    ``x = inf`` is allowed and returns the limit ``-alpha*sqrt(alpha/(alpha+1))``.
    """
    alpha = float(alpha)
    if not alpha > 0 or not math.isfinite(alpha):
        raise DomainError(f"alpha must be a positive finite real, got {alpha!r}")
    x = _as_checked(x)
    if (x < 0).any():
        raise DomainError("x must be non-negative")
    ratio = alpha / (alpha + 1.0)
    with np.errstate(invalid="ignore", over="ignore"):
        first = special.erfc(np.sqrt(x)) * np.exp(-x / alpha)
    first = np.where(np.isinf(x), 0.0, first)
    second = math.sqrt(ratio) * special.erf(np.sqrt(x / ratio))
    return _out(-alpha * (first + second))


def erfc_exp_definite(upper, alpha):
    """Definite integral of ``erfc(sqrt(x)) exp(-x/alpha)`` over ``[0, upper]``."""
    return erfc_exp_antiderivative(upper, alpha) - erfc_exp_antiderivative(0.0, alpha)


def rayleigh_q_average(gamma_bar):
    """E[Q(sqrt(g))] for g exponentially distributed with mean ``gamma_bar``.

    Closed form ``0.5 * (1 - sqrt(gamma_bar / (gamma_bar + 2)))``, obtained by
    integrating the erfc-exponential antiderivative over [0, inf).
    """
    g = _as_checked(gamma_bar, "gamma_bar")
    if (g < 0).any() or np.isinf(g).any():
        raise DomainError("gamma_bar must be a finite non-negative real")
    # 1 - sqrt(g/(g+2)) = 2 / ((g+2) * (1 + sqrt(g/(g+2)))), no cancellation at high SNR
    root = np.sqrt(g / (g + 2.0))
    return _out(1.0 / ((g + 2.0) * (1.0 + root)))


def quadrature_expectation(integrand, gamma_bar, tol=QUAD_TOL):
    """Integrate ``integrand(g) * exp(-g/gamma_bar)/gamma_bar`` over [0, inf).

    Independent numerical oracle for the Rayleigh-averaged closed forms.
    The integral is rescaled to ``t = g/gamma_bar`` and split at geometric
    breakpoints so that integrands concentrated near the origin (high mean
    SNR) are still resolved.

    Raises
    ------
    NumericalError
        If the estimated absolute error exceeds ``tol``.
    """
    gamma_bar = float(gamma_bar)
    if not gamma_bar > 0 or not math.isfinite(gamma_bar):
        raise DomainError(f"gamma_bar must be positive and finite, got {gamma_bar!r}")

    def f(t):
        return float(integrand(gamma_bar * t)) * math.exp(-t)

    # Breakpoints where Q(sqrt(gamma_bar*t)) changes scale.
    edges = [0.0]
    k = 1.0 / gamma_bar
    while k < 1.0:
        edges.append(k)
        k *= 10.0
    edges += [1.0, 10.0, 40.0]
    total = 0.0
    err = 0.0
    pieces = list(zip(edges[:-1], edges[1:])) + [(edges[-1], np.inf)]
    with warnings.catch_warnings():
        # non-convergence is reported through the error estimate below
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for lo, hi in pieces:
            val, e = integrate.quad(f, lo, hi, epsabs=tol / 10, epsrel=1e-13, limit=200)
            total += val
            err += e
    if err > tol:
        raise NumericalError(
            f"quadrature error estimate {err:.3g} exceeds tolerance {tol:.3g}", achieved=err
        )
    return total
