"""Jacobi polynomials and log-gamma helpers.

All evaluators accept scalars or arrays for ``x``; the polynomial index is
always the leading axis of the result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from pfsc.errors import DomainError, ParameterError


@dataclass(frozen=True)
class JacobiParams:
    r"""Parameters :math:`(\alpha, \beta)` of the Jacobi weight
    :math:`(1 - x)^\alpha (1 + x)^\beta`."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if not (self.alpha > -1.0 and self.beta > -1.0):
            raise ParameterError(
                f"Jacobi parameters must exceed -1: alpha={self.alpha}, beta={self.beta}"
            )


LEGENDRE = JacobiParams(0.0, 0.0)


# {{{ gamma

def log_gamma(x: float) -> float:
    """Natural logarithm of the gamma function for ``x > 0``."""
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


# Stirling series coefficients B_{2k} / (2k (2k - 1)) for k = 1..5
_STIRLING = (1 / 12, -1 / 360, 1 / 1260, -1 / 1680, 1 / 1188)
_STIRLING_MIN = 20.0


def _stirling_tail(z: float) -> float:
    zi2 = 1.0 / (z * z)
    acc = 0.0
    for c in reversed(_STIRLING):
        acc = acc * zi2 + c
    return acc / z


def gamma_ratio(num: float, den: float) -> float:
    r"""Compute :math:`\Gamma(num) / \Gamma(den)` without overflow.

    For large arguments the difference of the two Stirling series is formed
    with ``log1p`` so the leading terms cancel analytically; a plain
    difference of :func:`log_gamma` values loses about ``1e-12`` near 1000.
    """
    if not (num > 0 and den > 0):
        raise DomainError(f"gamma_ratio requires positive arguments, got ({num}, {den})")
    if min(num, den) < _STIRLING_MIN:
        return math.exp(log_gamma(num) - log_gamma(den))

    s = num - den
    log_ratio = (
        (num - 0.5) * math.log1p(s / den) + s * math.log(den) - s
        + _stirling_tail(num) - _stirling_tail(den)
    )
    return math.exp(log_ratio)


def gamma_ratios(n, shift: float) -> np.ndarray:
    r"""Elementwise :math:`\Gamma(n + shift) / \Gamma(n)` over an array *n*."""
    n = np.asarray(n, dtype=np.float64)
    out = [gamma_ratio(k + shift, k) for k in n.ravel().tolist()]
    return np.array(out, dtype=np.float64).reshape(n.shape)

# }}}


# {{{ evaluation

def jacobi_eval_all(params: JacobiParams, nmax: int, x) -> np.ndarray:
    """Evaluate :math:`P_0, \\dots, P_{nmax}` at *x* by the three-term recurrence.

    :returns: an array of shape ``(nmax + 1, *np.shape(x))``.
    """
    if nmax < 0:
        raise ParameterError(f"nmax must be non-negative, got {nmax}")

    a, b = params.alpha, params.beta
    x = np.asarray(x, dtype=np.float64)
    p = np.empty((nmax + 1, *x.shape))
    p[0] = 1.0
    if nmax == 0:
        return p

    p[1] = ((a - b) + (a + b + 2) * x) / 2
    ab = a + b
    a2b2 = a * a - b * b
    for n in range(2, nmax + 1):
        c = 2 * n + ab
        c1 = 2 * n * (n + ab) * (c - 2)
        c2 = (c - 1) * (c * (c - 2) * x + a2b2)
        c3 = 2 * (n + a - 1) * (n + b - 1) * c
        p[n] = (c2 * p[n - 1] - c3 * p[n - 2]) / c1

    return p


def jacobi_eval(params: JacobiParams, n: int, x) -> np.ndarray:
    """Evaluate the single polynomial :math:`P_n^{(\\alpha, \\beta)}(x)`."""
    return jacobi_eval_all(params, n, x)[n]


def jacobi_deriv_all(params: JacobiParams, nmax: int, x) -> np.ndarray:
    """Derivatives of :math:`P_0, \\dots, P_{nmax}` at *x*.

    Uses :math:`P_n' = (n + \\alpha + \\beta + 1) / 2 \\, P_{n - 1}^{(\\alpha + 1, \\beta + 1)}`.
    """
    x = np.asarray(x, dtype=np.float64)
    dp = np.zeros((nmax + 1, *x.shape))
    if nmax == 0:
        return dp

    shifted = JacobiParams(params.alpha + 1, params.beta + 1)
    q = jacobi_eval_all(shifted, nmax - 1, x)
    n = np.arange(1, nmax + 1, dtype=np.float64)
    scale = (n + params.alpha + params.beta + 1) / 2
    dp[1:] = scale.reshape(-1, *([1] * x.ndim)) * q
    return dp


def jacobi_deriv(params: JacobiParams, n: int, x) -> np.ndarray:
    """Derivative of :math:`P_n^{(\\alpha, \\beta)}` at *x*; zero for ``n = 0``."""
    if n < 0:
        raise ParameterError(f"n must be non-negative, got {n}")
    if n == 0:
        return np.zeros(np.shape(x))

    shifted = JacobiParams(params.alpha + 1, params.beta + 1)
    return (n + params.alpha + params.beta + 1) / 2 * jacobi_eval(shifted, n - 1, x)


def jacobi_at_one(params: JacobiParams, n) -> np.ndarray:
    """Endpoint values :math:`P_n^{(\\alpha, \\beta)}(1) = \\binom{n + \\alpha}{n}`.

    *n* may be an integer or an integer array.
    """
    n = np.asarray(n)
    a = params.alpha
    out = np.array(
        [math.exp(log_gamma(k + a + 1) - log_gamma(a + 1) - log_gamma(k + 1))
         for k in n.ravel().tolist()],
        dtype=np.float64,
    )
    return out.reshape(n.shape)

# }}}
