"""Dense direct solves, spectral condition numbers and BiCGSTAB."""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from pfsc.errors import SingularMatrixError, UsageError

PIVOT_FLOOR = 1.0e-300
BREAKDOWN_FLOOR = 1.0e-290


def lu_solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``a @ x = b`` by LU with partial pivoting.

    *b* may be a vector or a matrix of right-hand sides.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise UsageError(f"expected a square matrix, got shape {a.shape}")
    if b.shape[0] != a.shape[0]:
        raise UsageError(f"right-hand side has {b.shape[0]} rows, expected {a.shape[0]}")

    # singularity is reported below as an exception instead
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(a, check_finite=True)
    if np.min(np.abs(np.diag(lu))) < PIVOT_FLOOR:
        raise SingularMatrixError("matrix is singular to working precision")

    return sla.lu_solve((lu, piv), b)


def cond2(a: np.ndarray) -> float:
    """Spectral condition number :math:`\\sigma_{max} / \\sigma_{min}`.

    Returns ``inf`` for an exactly singular matrix.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise UsageError(f"expected a square matrix, got shape {a.shape}")

    s = np.linalg.svd(a, compute_uv=False)
    if s[-1] == 0.0:
        return float("inf")
    return float(s[0] / s[-1])


# {{{ bicgstab

class Status(enum.Enum):
    CONVERGED = "converged"
    MAX_ITERATIONS = "max-iterations"
    BREAKDOWN = "breakdown"


@dataclass(frozen=True)
class IterReport:
    solution: np.ndarray
    #: iteration count; convergence after a half step is reported as ``k + 0.5``
    iterations: float
    #: relative residual :math:`\|b - A x\|_2 / \|b\|_2` of *solution*
    relative_residual: float
    status: Status

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED


def bicgstab(
    a: np.ndarray,
    b: np.ndarray,
    tol: float = 1.0e-9,
    maxit: int | None = None,
) -> IterReport:
    """Unpreconditioned BiCGSTAB with zero initial guess.

    Convergence is tested after each half step on the recursively updated
    residual and confirmed on the true residual before stopping. When the
    method does not converge, the iterate with the smallest residual seen is
    returned. The shadow residual is the initial residual, so runs are
    deterministic.

    :arg maxit: maximum number of full iterations, defaults to the system size.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    n = b.size
    if a.shape != (n, n):
        raise UsageError(f"shape mismatch: matrix {a.shape}, right-hand side {b.shape}")
    if maxit is None:
        maxit = n

    x = np.zeros(n)
    normb = np.linalg.norm(b)
    if normb == 0.0:
        return IterReport(x, 0.0, 0.0, Status.CONVERGED)

    def true_residual(z):
        return float(np.linalg.norm(b - a @ z) / normb)

    r = b.copy()
    rhat = r.copy()
    p = np.zeros(n)
    v = np.zeros(n)
    rho = alpha = omega = 1.0

    xmin, resmin, itmin = x, 1.0, 0.0
    status = Status.MAX_ITERATIONS

    for k in range(1, maxit + 1):
        rho_new = rhat @ r
        if abs(rho_new) < BREAKDOWN_FLOOR:
            status = Status.BREAKDOWN
            break

        if k == 1:
            p = r.copy()
        else:
            beta = (rho_new / rho) * (alpha / omega)
            p = r + beta * (p - omega * v)

        v = a @ p
        rhat_v = rhat @ v
        if abs(rhat_v) < BREAKDOWN_FLOOR:
            status = Status.BREAKDOWN
            break

        alpha = rho_new / rhat_v
        s = r - alpha * v
        xhalf = x + alpha * p

        res = np.linalg.norm(s) / normb
        if res <= tol:
            res = true_residual(xhalf)
            if res <= tol:
                return IterReport(xhalf, k - 0.5, res, Status.CONVERGED)
        if res < resmin:
            xmin, resmin, itmin = xhalf, res, k - 0.5

        t = a @ s
        tt = t @ t
        if tt == 0.0:
            status = Status.BREAKDOWN
            break
        omega = (t @ s) / tt
        if abs(omega) < BREAKDOWN_FLOOR:
            status = Status.BREAKDOWN
            break

        x = xhalf + omega * s
        r = s - omega * t

        res = np.linalg.norm(r) / normb
        if res <= tol:
            res = true_residual(x)
            if res <= tol:
                return IterReport(x, float(k), res, Status.CONVERGED)
        if res < resmin:
            xmin, resmin, itmin = x, res, float(k)

        rho = rho_new

    return IterReport(xmin, itmin, true_residual(xmin), status)

# }}}
