r"""Model problems, manufactured right-hand sides and FSC/PFSC assembly.

Two linear problems with left Riemann-Liouville derivatives are handled:

* initial value problem, :math:`\nu \in (0, 1)`:
  :math:`D^\nu u + a u = f`, :math:`u(-1) = 0`;
* boundary value problem, :math:`\nu \in (1, 2)`:
  :math:`D^\nu u + a u' + b u = f`, :math:`u(\pm 1) = 0`.

Exact solutions are generalized power sums in :math:`(x + 1)`, so right-hand
sides follow analytically from the power rule and carry no quadrature error.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from pfsc import birkhoff as bk
from pfsc import fracops as fo
from pfsc.errors import DomainError, ParameterError, UsageError
from pfsc.linsolve import IterReport, Status, bicgstab, cond2, lu_solve
from pfsc.orthopoly import JacobiParams, gamma_ratio
from pfsc.quadrature import chebyshev_lobatto, gauss_jacobi, gauss_legendre

Func = Callable[[np.ndarray], np.ndarray]

EXPONENT_TOL = 1.0e-12


# {{{ generalized power sums

@dataclass(frozen=True)
class GeneralizedPowerSum:
    r"""A function :math:`\sum_k c_k (x + 1)^{\sigma_k}` with :math:`\sigma_k > -1`.

    Terms with equal exponents are merged and exactly vanishing terms are
    dropped on construction.
    """

    terms: tuple[tuple[float, float], ...] = ()

    def __post_init__(self) -> None:
        merged: dict[float, float] = {}
        for c, sigma in self.terms:
            if sigma <= -1.0:
                raise DomainError(f"exponent must exceed -1, got {sigma}")
            key = next((s for s in merged if abs(s - sigma) < EXPONENT_TOL), float(sigma))
            merged[key] = merged.get(key, 0.0) + float(c)

        terms = tuple(sorted(
            ((c, s) for s, c in merged.items() if c != 0.0), key=lambda t: t[1]
        ))
        object.__setattr__(self, "terms", terms)

    @property
    def exponents(self) -> tuple[float, ...]:
        return tuple(s for _, s in self.terms)

    def has_constant_term(self) -> bool:
        return any(abs(s) < EXPONENT_TOL for s in self.exponents)

    def __call__(self, x) -> np.ndarray:
        xp1 = np.asarray(x, dtype=np.float64) + 1.0
        out = np.zeros_like(xp1)
        # smallest exponents last so the dominant smooth part is summed first
        for c, s in reversed(self.terms):
            out = out + c * xp1**s
        return out

    def __add__(self, other: GeneralizedPowerSum) -> GeneralizedPowerSum:
        return GeneralizedPowerSum(self.terms + other.terms)

    def scale(self, factor: float) -> GeneralizedPowerSum:
        return GeneralizedPowerSum(tuple((factor * c, s) for c, s in self.terms))

    def derivative(self) -> GeneralizedPowerSum:
        """Classical first derivative; constants drop out."""
        return GeneralizedPowerSum(tuple(
            (c * s, s - 1.0) for c, s in self.terms if abs(s) >= EXPONENT_TOL
        ))


def power(sigma: float, c: float = 1.0) -> GeneralizedPowerSum:
    return GeneralizedPowerSum(((c, sigma),))


def exp_series_order(bound: float = 1.0e-16) -> int:
    """Smallest ``K`` with :math:`2^{K + 1} / (K + 1)! < bound`, the largest
    dropped term of :math:`e^{x + 1}` on :math:`[-1, 1]`."""
    k = 0
    while 2.0 ** (k + 1) / math.factorial(k + 1) >= bound:
        k += 1
    return k


def exp_shifted() -> GeneralizedPowerSum:
    """Truncated Taylor series of :math:`e^{x + 1}` about :math:`x = -1`."""
    order = exp_series_order()
    return GeneralizedPowerSum(tuple(
        (1.0 / math.factorial(k), float(k)) for k in range(order + 1)
    ))


def rl_power_rule(nu: float, f: GeneralizedPowerSum) -> GeneralizedPowerSum:
    r"""Left Riemann-Liouville derivative of order *nu* of a power sum.

    Maps :math:`c (x + 1)^\sigma \mapsto c \, \Gamma(\sigma + 1) /
    \Gamma(\sigma + 1 - \nu) \, (x + 1)^{\sigma - \nu}`; terms at a pole of
    :math:`1 / \Gamma` vanish.
    """
    if not nu > 0:
        raise ParameterError(f"order must be positive, got {nu}")

    terms = []
    for c, s in f.terms:
        shifted = s + 1.0 - nu
        if shifted <= EXPONENT_TOL and abs(shifted - round(shifted)) < EXPONENT_TOL:
            continue
        if s - nu <= -1.0:
            raise DomainError(
                f"D^{nu} of (x + 1)^{s} has exponent {s - nu} <= -1"
            )
        terms.append((c * gamma_ratio(s + 1.0, shifted), s - nu))

    return GeneralizedPowerSum(tuple(terms))

# }}}


# {{{ problem definitions

class Kind(enum.Enum):
    IVP = "ivp"
    BVP = "bvp"


class Scheme(enum.Enum):
    FSC = "fsc"
    PFSC = "pfsc"


@dataclass(frozen=True)
class ProblemSpec:
    kind: Kind
    nu: float
    a: Func
    rhs: Func
    b: Func | None = None
    exact: GeneralizedPowerSum | None = None

    def __post_init__(self) -> None:
        if self.kind is Kind.IVP and not 0.0 < self.nu < 1.0:
            raise ParameterError(f"IVP order must be in (0, 1), got {self.nu}")
        if self.kind is Kind.BVP:
            if not 1.0 < self.nu < 2.0:
                raise ParameterError(f"BVP order must be in (1, 2), got {self.nu}")
            if self.b is None:
                raise ParameterError("BVP requires the zeroth-order coefficient b")

        if self.exact is not None:
            ends = [-1.0] if self.kind is Kind.IVP else [-1.0, 1.0]
            values = np.abs(self.exact(np.array(ends)))
            if np.any(values > 1.0e-12):
                raise ParameterError(
                    f"exact solution violates homogeneous conditions: {values}"
                )


def example1_a(x):
    return 2.0 + np.sin(25.0 * x)


def example2_a(x):
    return 2.0 + np.sin(4.0 * np.pi * x)


def example2_b(x):
    return 2.0 + np.cos(x)


def example1_solution() -> GeneralizedPowerSum:
    r""":math:`u(x) = e^{x + 1} - 1 + (x + 1)^{46/7}`."""
    return exp_shifted() + power(0.0, -1.0) + power(46.0 / 7.0)


def example2_solution() -> GeneralizedPowerSum:
    r""":math:`u(x) = e^{x + 1} - x - 2 - \frac{e^2 - 3}{4} (x + 1)^2
    + (x + 1)^{46/7} - 2 (x + 1)^{39/7}`, with :math:`-x - 2 = -(x + 1) - 1`."""
    c2 = (math.exp(2.0) - 3.0) / 4.0
    return (
        exp_shifted()
        + power(1.0, -1.0) + power(0.0, -1.0)
        + power(2.0, -c2)
        + power(46.0 / 7.0) + power(39.0 / 7.0, -2.0)
    )


def manufactured_ivp(nu: float, a: Func, u: GeneralizedPowerSum) -> ProblemSpec:
    if u.has_constant_term():
        raise DomainError("exact solution must not contain a constant term")

    du = rl_power_rule(nu, u)

    def f(x):
        return du(x) + a(x) * u(x)

    return ProblemSpec(Kind.IVP, nu, a=a, rhs=f, exact=u)


def manufactured_bvp(nu: float, a: Func, b: Func, u: GeneralizedPowerSum) -> ProblemSpec:
    if u.has_constant_term():
        raise DomainError("exact solution must not contain a constant term")

    du = rl_power_rule(nu, u)
    u1 = u.derivative()

    def f(x):
        return du(x) + a(x) * u1(x) + b(x) * u(x)

    return ProblemSpec(Kind.BVP, nu, a=a, b=b, rhs=f, exact=u)


def example1_spec(nu: float = 0.8) -> ProblemSpec:
    """Initial value problem with :math:`a(x) = 2 + \\sin 25 x`."""
    return manufactured_ivp(nu, example1_a, example1_solution())


def example2_spec(nu: float = 1.9) -> ProblemSpec:
    """Boundary value problem with :math:`a(x) = 2 + \\sin 4 \\pi x` and
    :math:`b(x) = 2 + \\cos x`."""
    return manufactured_bvp(nu, example2_a, example2_b, example2_solution())

# }}}


# {{{ assembly

NODE_FAMILIES = ("auto", "gauss-jacobi", "chebyshev")


@dataclass(frozen=True)
class AssembledSystem:
    spec: ProblemSpec
    scheme: Scheme
    matrix: np.ndarray
    rhs: np.ndarray
    #: fractional Lagrange basis on the full node set
    basis: fo.FracBasis
    #: collocation points
    y_nodes: np.ndarray
    #: maps the PFSC unknowns to nodal values, ``u = recovery @ v``
    recovery: np.ndarray | None = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return self.rhs.size

    @property
    def x_nodes(self) -> np.ndarray:
        """Nodes carrying the unknowns (``x_N = 1`` is excluded for the BVP)."""
        return self.basis.x_nodes[: self.size]


def _ivp_basis(nu: float, n: int, nodes: str) -> fo.FracBasis:
    if nodes in ("auto", "gauss-jacobi"):
        return fo.build_basis_gj(nu, gauss_jacobi(n, JacobiParams(-nu, nu)))
    if nodes == "chebyshev":
        if n < 2:
            raise UsageError("Chebyshev nodes need N >= 2")
        return fo.build_basis(nu, chebyshev_lobatto(n)[1:])
    raise UsageError(f"unknown node family {nodes!r}")


def _bvp_basis(mu: float, n: int, nodes: str) -> fo.FracBasis:
    if nodes in ("auto", "chebyshev"):
        x = chebyshev_lobatto(n)[1:]
    elif nodes == "gauss-jacobi":
        x = np.append(gauss_jacobi(n - 1, JacobiParams(-mu, mu)).nodes, 1.0)
    else:
        raise UsageError(f"unknown node family {nodes!r}")
    return fo.build_basis(mu, x)


def assemble_ivp(
    spec: ProblemSpec, n: int, scheme: Scheme, nodes: str = "auto"
) -> AssembledSystem:
    """Collocation system for the initial value problem on *n* points.

    Unknowns live at Gauss-Jacobi :math:`(-\\nu, \\nu)` points and equations
    are collocated at Gauss-Legendre points.
    """
    if spec.kind is not Kind.IVP:
        raise UsageError("assemble_ivp needs an initial value problem")
    if n < 1:
        raise UsageError(f"N must be positive, got {n}")

    nu = spec.nu
    basis = _ivp_basis(nu, n, nodes)
    y = gauss_legendre(n)
    a = spec.a(y.nodes)
    f = spec.rhs(y.nodes)

    if scheme is Scheme.FSC:
        mat = fo.frac_deriv_matrix(basis, y.nodes) + a[:, None] * fo.value_matrix(basis, y.nodes)
        return AssembledSystem(spec, scheme, mat, f, basis, y.nodes)

    bb = bk.birkhoff_basis_case1_gl(nu, y)
    mat = np.eye(n) + a[:, None] * bk.birkhoff_matrix_case1(bb, y.nodes)
    recovery = bk.birkhoff_matrix_case1(bb, basis.x_nodes)
    return AssembledSystem(spec, scheme, mat, f, basis, y.nodes, recovery)


def assemble_bvp(
    spec: ProblemSpec, n: int, scheme: Scheme, nodes: str = "auto"
) -> AssembledSystem:
    """Collocation system for the boundary value problem with ``N - 1`` unknowns.

    The basis lives on Chebyshev points :math:`x_1, \\dots, x_N = 1`; the
    value at :math:`x_N` is zero and eliminated. Equations are collocated at
    the Gauss-Jacobi :math:`(1, 1)` points of degree ``N - 1``.
    """
    if spec.kind is not Kind.BVP:
        raise UsageError("assemble_bvp needs a boundary value problem")
    if n < 3:
        raise UsageError(f"N must be at least 3, got {n}")

    nu = spec.nu
    mu = nu - 1.0
    m = n - 1
    basis = _bvp_basis(mu, n, nodes)
    y = gauss_jacobi(m, bk.JACOBI11)
    a = spec.a(y.nodes)
    b = spec.b(y.nodes)
    f = spec.rhs(y.nodes)

    if scheme is Scheme.FSC:
        mat = (
            fo.frac_deriv1p_matrix(basis, y.nodes)
            + a[:, None] * fo.deriv1_matrix(basis, y.nodes)
            + b[:, None] * fo.value_matrix(basis, y.nodes)
        )[:, :m]
        return AssembledSystem(spec, scheme, mat, f, basis, y.nodes)

    bb = bk.birkhoff_basis_case2_gj(nu, y)
    mat = (
        np.eye(m)
        + a[:, None] * bk.birkhoff_matrix_case2(bb, y.nodes, deriv_order=1)
        + b[:, None] * bk.birkhoff_matrix_case2(bb, y.nodes, deriv_order=0)
    )
    recovery = bk.birkhoff_matrix_case2(bb, basis.x_nodes[:m])
    return AssembledSystem(spec, scheme, mat, f, basis, y.nodes, recovery)


def assemble(spec: ProblemSpec, n: int, scheme: Scheme, nodes: str = "auto") -> AssembledSystem:
    if spec.kind is Kind.IVP:
        return assemble_ivp(spec, n, scheme, nodes)
    return assemble_bvp(spec, n, scheme, nodes)

# }}}


# {{{ solving and errors

def recover(system: AssembledSystem, v) -> np.ndarray:
    """Nodal values ``u = B v`` from the solution of a preconditioned system."""
    if system.scheme is not Scheme.PFSC or system.recovery is None:
        raise UsageError("only preconditioned systems carry a recovery matrix")
    return system.recovery @ np.asarray(v, dtype=np.float64)


def max_error(u_numeric, spec: ProblemSpec, x_nodes) -> float:
    """Maximum pointwise error against the exact solution at *x_nodes*."""
    if spec.exact is None:
        raise UsageError("problem has no exact solution")
    u = np.asarray(u_numeric, dtype=np.float64)
    return float(np.max(np.abs(u - spec.exact(np.asarray(x_nodes)))))


def max_error_grid(system: AssembledSystem, u_numeric, npoints: int = 1000) -> float:
    """Maximum error of the fractional interpolant on a uniform grid of [-1, 1]."""
    if system.spec.exact is None:
        raise UsageError("problem has no exact solution")

    u = np.zeros(system.basis.n)
    u[: system.size] = u_numeric
    xs = np.linspace(-1.0, 1.0, npoints)
    values = fo.value_matrix(system.basis, xs) @ u
    return float(np.max(np.abs(values - system.spec.exact(xs))))


@dataclass(frozen=True)
class SolveReport:
    n: int
    scheme: Scheme
    solver: str
    #: nodal values at :attr:`AssembledSystem.x_nodes`
    solution: np.ndarray
    iterations: float | None
    relative_residual: float
    status: Status
    condition: float | None = None
    error: float | None = None
    error_grid: float | None = None

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED


def solve(
    system: AssembledSystem,
    solver: str = "direct",
    tol: float = 1.0e-9,
    maxit: int | None = None,
    with_condition: bool = False,
    with_grid_error: bool = False,
) -> SolveReport:
    """Solve an assembled system and recover nodal values."""
    mat, f = system.matrix, system.rhs
    if solver == "direct":
        w = lu_solve(mat, f)
        normf = np.linalg.norm(f)
        res = float(np.linalg.norm(f - mat @ w) / normf) if normf > 0 else 0.0
        report = IterReport(w, 0.0, res, Status.CONVERGED)
        iterations = None
    elif solver == "bicgstab":
        report = bicgstab(mat, f, tol=tol, maxit=maxit)
        iterations = report.iterations
    else:
        raise UsageError(f"unknown solver {solver!r}")

    u = recover(system, report.solution) if system.scheme is Scheme.PFSC else report.solution
    err = err_grid = None
    if system.spec.exact is not None:
        err = max_error(u, system.spec, system.x_nodes)
        if with_grid_error:
            err_grid = max_error_grid(system, u)

    return SolveReport(
        n=system.basis.n,
        scheme=system.scheme,
        solver=solver,
        solution=u,
        iterations=iterations,
        relative_residual=report.relative_residual,
        status=report.status,
        condition=cond2(mat) if with_condition else None,
        error=err,
        error_grid=err_grid,
    )

# }}}
