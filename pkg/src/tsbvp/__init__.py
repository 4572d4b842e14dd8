"""Boundary value problems on bounded time scales.

Builds hybrid discrete/continuous time scales, provides delta and nabla
calculus over them, evaluates the integral operators of three p-Laplacian
boundary value problem families (a nonlocal thermistor problem, a
quasilinear elliptic problem, and a functional problem with delay),
verifies the hypothesis sets of the associated triple-solution theorems,
and searches for fixed points by damped Picard iteration.
"""

from .calculus import (GridFunction, cumulative_delta_integral,
                       cumulative_nabla_integral, delta_derivative,
                       delta_integral, grid_function, nabla_derivative,
                       nabla_integral, sup_norm)
from .cone import (ConeReport, ConeSpec, LWParams, LWReport, check_cone,
                   sample_cone_member, sample_lw_conditions, window_min)
from .config import ProblemSetup, build_problem, load_problem
from .errors import (ConfigParseError, DegenerateDenominator,
                     DelayOutOfRange, EmptyTimeScale, EmptyWindow,
                     InvalidExponent, OverlappingSegments,
                     PointNotInTimeScale, ReversedBounds, SamplerExhausted,
                     TsbvpError, UndefinedAtBoundary, Y1Empty)
from .hypotheses import (DelayConstants, HypothesisReport,
                         QuasilinearConstants, ThermistorConstants,
                         check_delay, check_quasilinear, check_thermistor,
                         delay_constants, lw_params_for,
                         quasilinear_constants, thermistor_constants)
from .operators import (BivariateComposite, DelaySpec, QuasilinearSpec,
                        ThermistorSpec, apply_delay, apply_quasilinear,
                        apply_thermistor, boundary_residuals,
                        split_delay_domains, thermistor_boundary_value,
                        thermistor_flux, thermistor_initial_flux,
                        thermistor_source)
from .piecewise import PiecewiseFunction
from .plaplacian import PExponent, conjugate_exponent, phi, phi_inverse
from .presets import PRESET_NAMES, build_preset, preset_config
from .solver import (SolutionSet, SolveResult, SolverConfig, find_three,
                     fixed_point_residual, operator_for, picard)
from .timescale import (ContinuousInterval, DiscretePoints, GeometricFamily,
                        PointClass, TimeScale, build_timescale, classify,
                        rho, sigma)

__version__ = "0.1.0"

__all__ = [
    "BivariateComposite", "ConeReport", "ConeSpec", "ConfigParseError",
    "ContinuousInterval", "DegenerateDenominator", "DelayConstants",
    "DelayOutOfRange", "DelaySpec", "DiscretePoints", "EmptyTimeScale",
    "EmptyWindow", "GeometricFamily", "GridFunction", "HypothesisReport",
    "InvalidExponent", "LWParams", "LWReport", "OverlappingSegments",
    "PExponent", "PRESET_NAMES", "PiecewiseFunction", "PointClass",
    "PointNotInTimeScale", "ProblemSetup", "QuasilinearConstants",
    "QuasilinearSpec", "ReversedBounds", "SamplerExhausted", "SolutionSet",
    "SolveResult", "SolverConfig", "ThermistorConstants", "ThermistorSpec",
    "TimeScale", "TsbvpError", "UndefinedAtBoundary", "Y1Empty",
    "apply_delay", "apply_quasilinear", "apply_thermistor",
    "boundary_residuals", "build_preset", "build_problem",
    "build_timescale", "check_cone", "check_delay", "check_quasilinear",
    "check_thermistor", "classify", "conjugate_exponent",
    "cumulative_delta_integral", "cumulative_nabla_integral",
    "delay_constants", "delta_derivative", "delta_integral", "find_three",
    "fixed_point_residual", "grid_function", "load_problem",
    "lw_params_for", "nabla_derivative", "nabla_integral", "operator_for",
    "phi", "phi_inverse", "picard", "preset_config",
    "quasilinear_constants", "rho", "sample_cone_member",
    "sample_lw_conditions", "sigma", "split_delay_domains", "sup_norm",
    "thermistor_boundary_value", "thermistor_constants", "thermistor_flux",
    "thermistor_initial_flux", "thermistor_source", "window_min",
]
