"""Fractional spectral collocation with Birkhoff integration preconditioning."""

from pfsc.birkhoff import (
    BirkhoffBasis,
    birkhoff_basis_case1,
    birkhoff_basis_case1_gl,
    birkhoff_basis_case2,
    birkhoff_basis_case2_gj,
    birkhoff_matrix_case1,
    birkhoff_matrix_case2,
)
from pfsc.fracops import (
    FracBasis,
    build_basis,
    build_basis_gj,
    deriv1_matrix,
    frac_deriv1p_matrix,
    frac_deriv_matrix,
    value_matrix,
)
from pfsc.linsolve import IterReport, Status, bicgstab, cond2, lu_solve
from pfsc.orthopoly import JacobiParams, gamma_ratio, jacobi_eval_all, log_gamma
from pfsc.problems import (
    GeneralizedPowerSum,
    ProblemSpec,
    Scheme,
    assemble,
    assemble_bvp,
    assemble_ivp,
    example1_spec,
    example2_spec,
    recover,
    rl_power_rule,
    solve,
)
from pfsc.quadrature import QuadratureRule, chebyshev_lobatto, gauss_jacobi, gauss_legendre

__version__ = "0.1.0"

__all__ = [
    "BirkhoffBasis",
    "FracBasis",
    "GeneralizedPowerSum",
    "IterReport",
    "JacobiParams",
    "ProblemSpec",
    "QuadratureRule",
    "Scheme",
    "Status",
    "assemble",
    "assemble_bvp",
    "assemble_ivp",
    "bicgstab",
    "birkhoff_basis_case1",
    "birkhoff_basis_case1_gl",
    "birkhoff_basis_case2",
    "birkhoff_basis_case2_gj",
    "birkhoff_matrix_case1",
    "birkhoff_matrix_case2",
    "build_basis",
    "build_basis_gj",
    "chebyshev_lobatto",
    "cond2",
    "deriv1_matrix",
    "example1_spec",
    "example2_spec",
    "frac_deriv1p_matrix",
    "frac_deriv_matrix",
    "gamma_ratio",
    "gauss_jacobi",
    "gauss_legendre",
    "jacobi_eval_all",
    "log_gamma",
    "lu_solve",
    "recover",
    "rl_power_rule",
    "solve",
    "value_matrix",
]
