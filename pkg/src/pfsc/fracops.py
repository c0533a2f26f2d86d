r"""Fractional Lagrange basis and its differentiation matrices.

The cardinal functions on the nodes :math:`x_1 < \dots < x_N` are

.. math::

    \ell_j^\mu(x) = \left(\frac{x + 1}{x_j + 1}\right)^\mu
        \prod_{n \ne j} \frac{x - x_n}{x_j - x_n}
    = (x + 1)^\mu \sum_{n = 1}^N \alpha_{nj} P_{n - 1}^{(-\mu, \mu)}(x),

and every matrix below maps nodal values at the ``x`` points to values of a
(fractional) derivative at a second set of points ``y``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from pfsc.errors import AssemblyError, DomainError, ParameterError, UsageError
from pfsc.linsolve import lu_solve
from pfsc.orthopoly import (
    LEGENDRE,
    JacobiParams,
    gamma_ratio,
    gamma_ratios,
    jacobi_deriv_all,
    jacobi_eval_all,
)
from pfsc.quadrature import QuadratureRule

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FracBasis:
    mu: float
    x_nodes: np.ndarray
    #: column ``j`` holds the Jacobi coefficients of the ``j``-th cardinal function
    coeffs: np.ndarray

    @property
    def n(self) -> int:
        return self.x_nodes.size

    @property
    def params(self) -> JacobiParams:
        return JacobiParams(-self.mu, self.mu)


def check_nodes(x) -> np.ndarray:
    """Validate a node set :math:`-1 < x_1 < \\dots < x_N \\le 1`."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.size == 0:
        raise UsageError("nodes must be a non-empty 1d sequence")
    if not (x[0] > -1.0 and x[-1] <= 1.0):
        raise DomainError(f"nodes must lie in (-1, 1], got [{x[0]}, {x[-1]}]")
    if np.any(np.diff(x) <= 0):
        raise AssemblyError("nodes must be distinct and strictly increasing")
    return x


def _check_mu(mu: float) -> None:
    if not 0.0 < mu < 1.0:
        raise ParameterError(f"basis exponent must be in (0, 1), got {mu}")


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


# {{{ basis construction

def vandermonde(mu: float, x) -> np.ndarray:
    """Generalized Vandermonde matrix :math:`(x_i + 1)^\\mu P_{n - 1}^{(-\\mu, \\mu)}(x_i)`."""
    x = np.asarray(x, dtype=np.float64)
    p = jacobi_eval_all(JacobiParams(-mu, mu), x.size - 1, x)
    return ((x + 1) ** mu)[:, None] * p.T


def build_basis(mu: float, x_nodes) -> FracBasis:
    """Cardinal-function coefficients for arbitrary nodes by a dense solve."""
    _check_mu(mu)
    x = check_nodes(x_nodes)

    coeffs = lu_solve(vandermonde(mu, x), np.eye(x.size))
    return FracBasis(mu=mu, x_nodes=_readonly(x), coeffs=_readonly(coeffs))


def build_basis_gj(mu: float, rule: QuadratureRule) -> FracBasis:
    """Closed-form coefficients when the nodes are Gauss-Jacobi points of
    :math:`P_N^{(-\\mu, \\mu)}`.

    The coefficients follow from the discrete orthogonality of the rule and
    need no linear solve.
    """
    _check_mu(mu)
    if rule.params != JacobiParams(-mu, mu):
        raise UsageError(
            f"rule has parameters {rule.params}, expected ({-mu}, {mu})"
        )

    x, w = rule.nodes, rule.weights
    n = np.arange(1, x.size + 1)
    # inverse squared norms (2n - 1) ((n - 1)!)^2 / (2 Gamma(n - mu) Gamma(n + mu))
    inv_h = (2 * n - 1) / 2 * np.array(
        [gamma_ratio(k, k - mu) * gamma_ratio(k, k + mu) for k in n.tolist()]
    )
    p = jacobi_eval_all(rule.params, x.size - 1, x)
    coeffs = inv_h[:, None] * p * (w / (x + 1) ** mu)[None, :]

    return FracBasis(mu=mu, x_nodes=rule.nodes, coeffs=_readonly(coeffs))

# }}}


# {{{ matrices

def value_matrix(basis: FracBasis, y) -> np.ndarray:
    """Entries :math:`\\ell_j^\\mu(y_i)`."""
    y = np.asarray(y, dtype=np.float64)
    p = jacobi_eval_all(basis.params, basis.n - 1, y)
    return ((y + 1) ** basis.mu)[:, None] * (p.T @ basis.coeffs)


def deriv1_matrix(basis: FracBasis, y) -> np.ndarray:
    """Entries :math:`\\frac{d}{dx} \\ell_j^\\mu(y_i)` for interior points."""
    y = np.asarray(y, dtype=np.float64)
    if np.any(y <= -1.0):
        raise DomainError("first derivative is singular at x = -1")

    mu = basis.mu
    p = jacobi_eval_all(basis.params, basis.n - 1, y).T @ basis.coeffs
    dp = jacobi_deriv_all(basis.params, basis.n - 1, y).T @ basis.coeffs
    return (mu * (y + 1) ** (mu - 1))[:, None] * p + ((y + 1) ** mu)[:, None] * dp


def frac_deriv_matrix(basis: FracBasis, y) -> np.ndarray:
    """Entries :math:`D^\\mu \\ell_j^\\mu(y_i)` (left Riemann-Liouville).

    Each term maps as :math:`D^\\mu [(x + 1)^\\mu P_{n-1}^{(-\\mu, \\mu)}]
    = \\Gamma(n + \\mu) / \\Gamma(n) \\, P_{n - 1}(x)`.
    """
    y = np.asarray(y, dtype=np.float64)
    n = np.arange(1, basis.n + 1)
    g = gamma_ratios(n, basis.mu)
    leg = jacobi_eval_all(LEGENDRE, basis.n - 1, y)
    return (g[:, None] * leg).T @ basis.coeffs


def frac_deriv1p_matrix(basis: FracBasis, y) -> np.ndarray:
    """Entries :math:`D^{1 + \\mu} \\ell_j^\\mu(y_i)`, the derivative of
    :func:`frac_deriv_matrix` in ``y``."""
    y = np.asarray(y, dtype=np.float64)
    if basis.n == 1:
        logger.warning("D^(1+mu) of a one-point basis is identically zero")
        return np.zeros((y.size, 1))

    n = np.arange(2, basis.n + 1)
    g = gamma_ratios(n, basis.mu) * n / 2
    q = jacobi_eval_all(JacobiParams(1.0, 1.0), basis.n - 2, y)
    return (g[:, None] * q).T @ basis.coeffs[1:]

# }}}
