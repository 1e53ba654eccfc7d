"""Numerical solver for the cyclic self-duality equations on a flat torus."""

from .kernels import BACKEND
from .solver import (
    NO_CONSTANT_SOLUTION, CoercivityError, NoConstantSolution, SolveReport, TodaProblem, TodaState,
    area_density, build_problem, choose_sign, coercivity, constant_solution, residual, solve,
    solve_newton,
)

__all__ = [
    "BACKEND", "NO_CONSTANT_SOLUTION", "CoercivityError", "NoConstantSolution", "SolveReport",
    "TodaProblem", "TodaState", "area_density", "build_problem", "choose_sign", "coercivity",
    "constant_solution", "residual", "solve", "solve_newton",
]
