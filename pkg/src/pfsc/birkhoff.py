r"""Fractional Birkhoff interpolation and the integration matrices built on it.

Two problems are covered, both posed in :math:`(x + 1)^\mu \mathbb{P}_{N - 1}`:

* order :math:`\nu \in (0, 1)`: match :math:`D^\nu p` at ``N`` points;
* order :math:`\nu = 1 + \mu \in (1, 2)`: match :math:`D^\nu p` at ``N - 1``
  interior points and impose :math:`p(1) = 0`.

The matrices of Birkhoff basis values are exact right inverses of the
corresponding fractional differentiation matrices from :mod:`pfsc.fracops`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from pfsc.errors import DomainError, ParameterError, UsageError
from pfsc.linsolve import lu_solve
from pfsc.orthopoly import (
    LEGENDRE,
    JacobiParams,
    gamma_ratios,
    jacobi_at_one,
    jacobi_deriv_all,
    jacobi_eval_all,
)
from pfsc.quadrature import QuadratureRule

JACOBI11 = JacobiParams(1.0, 1.0)


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


class Case(enum.Enum):
    #: :math:`\nu \in (0, 1)`
    ORDER_01 = "order-in-(0,1)"
    #: :math:`\nu \in (1, 2)`
    ORDER_12 = "order-in-(1,2)"


@dataclass(frozen=True)
class BirkhoffBasis:
    nu: float
    case: Case
    y_nodes: np.ndarray
    coeffs: np.ndarray

    @property
    def mu(self) -> float:
        """Exponent of the :math:`(x + 1)` factor of the trial space."""
        return self.nu if self.case is Case.ORDER_01 else self.nu - 1.0

    @property
    def size(self) -> int:
        return self.y_nodes.size


def _check_points(y, *, interior: bool) -> np.ndarray:
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1 or y.size == 0:
        raise UsageError("points must be a non-empty 1d sequence")
    upper_ok = y[-1] < 1.0 if interior else y[-1] <= 1.0
    if not (y[0] > -1.0 and upper_ok):
        raise DomainError(f"points out of range: [{y[0]}, {y[-1]}]")
    if np.any(np.diff(y) <= 0):
        raise UsageError("points must be distinct and strictly increasing")
    return y


# {{{ order in (0, 1)

def _case1_system(nu: float, m: int, y: np.ndarray) -> np.ndarray:
    # rows: D^nu of the m trial functions (x + 1)^nu P_{n-1}^{(-nu, nu)} at y
    n = np.arange(1, m + 1)
    g = gamma_ratios(n, nu)
    return (g[:, None] * jacobi_eval_all(LEGENDRE, m - 1, y)).T


def birkhoff_basis_case1(nu: float, y) -> BirkhoffBasis:
    """Coefficients :math:`\\tilde{\\alpha}_{nj}` by a dense solve at arbitrary *y*."""
    if not 0.0 < nu < 1.0:
        raise ParameterError(f"order must be in (0, 1), got {nu}")
    y = _check_points(y, interior=False)

    coeffs = lu_solve(_case1_system(nu, y.size, y), np.eye(y.size))
    return BirkhoffBasis(nu, Case.ORDER_01, _readonly(y), _readonly(coeffs))


def birkhoff_basis_case1_gl(nu: float, rule: QuadratureRule) -> BirkhoffBasis:
    """Closed-form :math:`\\tilde{\\alpha}_{nj}` on Gauss-Legendre points."""
    if not 0.0 < nu < 1.0:
        raise ParameterError(f"order must be in (0, 1), got {nu}")
    if rule.params != LEGENDRE:
        raise UsageError(f"expected a Gauss-Legendre rule, got {rule.params}")

    y, w = rule.nodes, rule.weights
    n = np.arange(1, y.size + 1)
    scale = (2 * n - 1) / 2 / gamma_ratios(n, nu)
    coeffs = scale[:, None] * jacobi_eval_all(LEGENDRE, y.size - 1, y) * w[None, :]
    return BirkhoffBasis(nu, Case.ORDER_01, rule.nodes, _readonly(coeffs))


def birkhoff_matrix_case1(basis: BirkhoffBasis, x) -> np.ndarray:
    """Entries :math:`B_j^\\nu(x_i) = (x_i + 1)^\\nu \\sum_n \\tilde{\\alpha}_{nj}
    P_{n - 1}^{(-\\nu, \\nu)}(x_i)`."""
    if basis.case is not Case.ORDER_01:
        raise UsageError("expected a basis for order in (0, 1)")

    x = np.asarray(x, dtype=np.float64)
    nu = basis.nu
    p = jacobi_eval_all(JacobiParams(-nu, nu), basis.size - 1, x)
    return ((x + 1) ** nu)[:, None] * (p.T @ basis.coeffs)

# }}}


# {{{ order in (1, 2)

def _case2_system(mu: float, m: int, y: np.ndarray) -> np.ndarray:
    n = np.arange(1, m + 1)
    g = gamma_ratios(n + 1, mu) * (n + 1) / 2
    return (g[:, None] * jacobi_eval_all(JACOBI11, m - 1, y)).T


def birkhoff_basis_case2(nu: float, y) -> BirkhoffBasis:
    """Coefficients :math:`\\tilde{\\beta}_{nj}` by a dense solve at interior *y*."""
    if not 1.0 < nu < 2.0:
        raise ParameterError(f"order must be in (1, 2), got {nu}")
    y = _check_points(y, interior=True)

    coeffs = lu_solve(_case2_system(nu - 1.0, y.size, y), np.eye(y.size))
    return BirkhoffBasis(nu, Case.ORDER_12, _readonly(y), _readonly(coeffs))


def birkhoff_basis_case2_gj(nu: float, rule: QuadratureRule) -> BirkhoffBasis:
    """Closed-form :math:`\\tilde{\\beta}_{nj}` on Gauss-Jacobi points of
    :math:`P_{N - 1}^{(1, 1)}`."""
    if not 1.0 < nu < 2.0:
        raise ParameterError(f"order must be in (1, 2), got {nu}")
    if rule.params != JACOBI11:
        raise UsageError(f"expected a Gauss-Jacobi (1, 1) rule, got {rule.params}")

    mu = nu - 1.0
    y, w = rule.nodes, rule.weights
    n = np.arange(1, y.size + 1)
    scale = (2 * n + 1) / (4 * n) / gamma_ratios(n + 1, mu)
    coeffs = scale[:, None] * jacobi_eval_all(JACOBI11, y.size - 1, y) * w[None, :]
    return BirkhoffBasis(nu, Case.ORDER_12, rule.nodes, _readonly(coeffs))


def birkhoff_matrix_case2(basis: BirkhoffBasis, x, deriv_order: int = 0) -> np.ndarray:
    """Entries :math:`B_j^\\nu(x_i)` (``deriv_order=0``) or their first
    derivative (``deriv_order=1``), where

    .. math::

        B_j^\\nu(x) = (x + 1)^\\mu \\sum_{n = 1}^{N - 1} \\tilde{\\beta}_{nj}
            \\left(P_n^{(-\\mu, \\mu)}(x) - P_n^{(-\\mu, \\mu)}(1)\\right).
    """
    if basis.case is not Case.ORDER_12:
        raise UsageError("expected a basis for order in (1, 2)")
    if deriv_order not in (0, 1):
        raise UsageError(f"deriv_order must be 0 or 1, got {deriv_order}")

    x = np.asarray(x, dtype=np.float64)
    mu = basis.mu
    params = JacobiParams(-mu, mu)
    m = basis.size
    n = np.arange(1, m + 1)

    p = jacobi_eval_all(params, m, x)[1:] - jacobi_at_one(params, n)[:, None]
    p = p.T @ basis.coeffs
    if deriv_order == 0:
        return ((x + 1) ** mu)[:, None] * p

    if np.any(x <= -1.0):
        raise DomainError("first derivative is singular at x = -1")
    dp = jacobi_deriv_all(params, m, x)[1:].T @ basis.coeffs
    return (mu * (x + 1) ** (mu - 1))[:, None] * p + ((x + 1) ** mu)[:, None] * dp

# }}}


def frac_deriv_values(basis: BirkhoffBasis, y) -> np.ndarray:
    """Entries :math:`D^\\nu B_j^\\nu(y_i)`, i.e. the left-hand side of the
    interpolation conditions evaluated at arbitrary *y*."""
    y = np.asarray(y, dtype=np.float64)
    if basis.case is Case.ORDER_01:
        m = _case1_system(basis.nu, basis.size, y)
    else:
        m = _case2_system(basis.mu, basis.size, y)
    return m @ basis.coeffs
