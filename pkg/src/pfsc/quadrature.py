"""Gauss-Jacobi rules and Chebyshev points of the second kind."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from pfsc.errors import NumericalFailure, ParameterError
from pfsc.orthopoly import LEGENDRE, JacobiParams, gamma_ratio, jacobi_eval_all

NEWTON_MAXIT = 100
NEWTON_TOL = 1.0e-15


@dataclass(frozen=True)
class QuadratureRule:
    r"""Gauss quadrature for the weight :math:`(1 - x)^\alpha (1 + x)^\beta`."""

    params: JacobiParams
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def n(self) -> int:
        return self.nodes.size

    def integrate(self, f) -> float:
        """Apply the rule to a callable (the weight is implicit)."""
        return float(self.weights @ f(self.nodes))


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.float64)
    a.flags.writeable = False
    return a


def _value_and_derivative(params: JacobiParams, n: int, x: np.ndarray):
    p = jacobi_eval_all(params, n, x)[n]
    shifted = JacobiParams(params.alpha + 1, params.beta + 1)
    dp = (n + params.alpha + params.beta + 1) / 2 * jacobi_eval_all(shifted, n - 1, x)[n - 1]
    return p, dp


def _initial_guess(params: JacobiParams, n: int) -> np.ndarray:
    # asymptotic root angles, measured from x = -1 so they come out ascending
    a, b = params.alpha, params.beta
    k = np.arange(1, n + 1, dtype=np.float64)
    theta = (k + b / 2 - 0.25) * np.pi / (n + (a + b + 1) / 2)
    return -np.cos(theta)


def _aberth_roots(params: JacobiParams, n: int) -> np.ndarray:
    x = _initial_guess(params, n)
    best = np.inf
    for _ in range(NEWTON_MAXIT):
        p, dp = _value_and_derivative(params, n, x)
        newton = p / dp
        if n > 1:
            diff = x[:, None] - x[None, :]
            np.fill_diagonal(diff, np.inf)
            step = newton / (1.0 - newton * np.sum(1.0 / diff, axis=1))
        else:
            step = newton
        x = x - step

        delta = float(np.max(np.abs(step)))
        if delta <= NEWTON_TOL:
            break
        # roundoff floor: the step stopped shrinking after reaching it
        if delta < 1.0e-13 and delta >= best:
            break
        best = min(best, delta)
    else:
        raise NumericalFailure(
            f"Gauss-Jacobi nodes did not converge (n={n}, {params}, |dx|={delta:.3e})"
        )

    return np.sort(x)


def _jacobi_near_one(params: JacobiParams, n: int, t: np.ndarray) -> np.ndarray:
    """:math:`P_n^{(\\alpha, \\beta)}(1 - t)` by the recurrence written in *t*.

    Avoids forming ``x = 1 - t``, whose rounding is large relative to *t*
    for nodes clustered at the endpoint.
    """
    a, b = params.alpha, params.beta
    p0 = np.ones_like(t)
    if n == 0:
        return p0

    p1 = (a + 1) - (a + b + 2) * t / 2
    ab = a + b
    a2b2 = a * a - b * b
    for k in range(2, n + 1):
        c = 2 * k + ab
        c1 = 2 * k * (k + ab) * (c - 2)
        c2 = (c - 1) * ((c * (c - 2) + a2b2) - c * (c - 2) * t)
        c3 = 2 * (k + a - 1) * (k + b - 1) * c
        p0, p1 = p1, (c2 * p1 - c3 * p0) / c1
    return p1


# below this n^2 t the endpoint series cancels at most ~e^4 in magnitude
SERIES_LIMIT = 8.0


def _endpoint_series(params: JacobiParams, n: int, t: np.ndarray):
    r"""Value and ``d/dx`` of :math:`P_n^{(\alpha, \beta)}(1 - t)` from

    .. math::

        P_n(1 - t) = P_n(1) \sum_m \frac{(-n)_m (n + \alpha + \beta + 1)_m}
            {(\alpha + 1)_m \, m!} \left(\frac{t}{2}\right)^m,

    which is accurate relative to *t* when :math:`n^2 t` is small.
    """
    a, b = params.alpha, params.beta
    h = t / 2
    term = np.ones_like(t)
    value = np.ones_like(t)
    # d/dt of the sum; the term index m appears as a factor m / 2 / h
    slope = np.zeros_like(t)
    for m in range(n):
        term = term * ((m - n) * (n + a + b + 1 + m) / ((a + 1 + m) * (m + 1))) * h
        value += term
        slope += term * ((m + 1) / 2)
        if np.all(np.abs(term) * (m + 1) <= 1e-18 * np.abs(slope)):
            break

    at_one = gamma_ratio(n + a + 1, n + 1) / math.gamma(a + 1)
    # slope / h = dS/dt; dP/dx = -dP/dt
    return at_one * value, -at_one * slope / h


def _polish_near_one(params: JacobiParams, n: int, t: np.ndarray):
    """Newton steps on the endpoint distance *t*; returns ``t`` and
    :math:`dP_n / dx` there."""
    shifted = JacobiParams(params.alpha + 1, params.beta + 1)
    scale = (n + params.alpha + params.beta + 1) / 2
    near = n * n * t < SERIES_LIMIT

    def evaluate(t):
        p = _jacobi_near_one(params, n, t)
        dp = scale * _jacobi_near_one(shifted, n - 1, t)
        if np.any(near):
            p[near], dp[near] = _endpoint_series(params, n, t[near])
        return p, dp

    for _ in range(3):
        p, dp = evaluate(t)
        # d/dt = -d/dx
        t = t + p / dp
    return t, evaluate(t)[1]


def gauss_jacobi(n: int, params: JacobiParams) -> QuadratureRule:
    """Gauss-Jacobi nodes (roots of :math:`P_n^{(\\alpha, \\beta)}`) and weights."""
    if n < 1:
        raise ParameterError(f"rule size must be positive, got {n}")

    x = _aberth_roots(params, n)

    # final polish and weights in the distance to the nearest endpoint; the
    # left half uses P_n^{(a, b)}(x) = (-1)^n P_n^{(b, a)}(-x)
    a, b = params.alpha, params.beta
    right = x >= 0
    t_right, dp_right = _polish_near_one(params, n, 1 - x[right])
    t_left, dp_left = _polish_near_one(JacobiParams(b, a), n, 1 + x[~right])

    t = np.empty(n)
    dp = np.empty(n)
    t[right], dp[right] = t_right, dp_right
    t[~right], dp[~right] = t_left, dp_left
    x = np.where(right, 1 - t, t - 1)

    # ratios of nearby Gammas; exp(lgamma - lgamma) loses ~1e-12 at n ~ 1000
    c = 2.0 ** (a + b + 1) * gamma_ratio(n + a + 1, n + 1) * gamma_ratio(n + b + 1, n + a + b + 1)
    w = c / (t * (2 - t) * dp**2)

    if not (np.all(np.diff(x) > 0) and x[0] > -1 and x[-1] < 1):
        raise NumericalFailure(f"Gauss-Jacobi nodes are not distinct (n={n}, {params})")

    return QuadratureRule(params=params, nodes=_readonly(x), weights=_readonly(w))


def gauss_legendre(n: int) -> QuadratureRule:
    return gauss_jacobi(n, LEGENDRE)


def chebyshev_lobatto(n: int) -> np.ndarray:
    """Chebyshev points of the second kind :math:`x_j = -\\cos(j \\pi / n)`, ``j = 0..n``.

    Written as a sine so that the points are exactly antisymmetric and the
    endpoints are exactly :math:`\\pm 1`.
    """
    if n < 2:
        raise ParameterError(f"need at least 2 intervals, got {n}")

    j = np.arange(n + 1, dtype=np.float64)
    return np.sin(np.pi * (2 * j - n) / (2 * n))
