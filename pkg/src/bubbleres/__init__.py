"""Shape-mode resonances of a gas bubble and the exponentially small decay rate.

The resonances are roots of ``z h_l(z) + Q h_l'(z) = 0`` with
``Q = (l+2)(l-1) eps**2 / We``; the slowest decay over all modes scales as
``Gamma_z ~ eps**-2 A0 exp(-B / eps**2)``.
"""

__version__ = "0.1.0"

from .constants import AsymptoticConstants, gamma_asymptotic, solve_constants
from .dispersion import PhysicalParams, ResonanceRoot, default_seed, find_root, regime_of
from .errors import (
    BubbleResError,
    ConvergenceError,
    DomainError,
    InsufficientPointsError,
    PrecisionError,
    RegimeError,
    SingularJacobianError,
    WindowError,
)
from .gamma import FitResult, GammaResult, fit_ab, gamma, optimal_l
from .scaled import ScaledState, SolveWindow, solve_FG, solve_mode

__all__ = [
    "AsymptoticConstants",
    "BubbleResError",
    "ConvergenceError",
    "DomainError",
    "FitResult",
    "GammaResult",
    "InsufficientPointsError",
    "PhysicalParams",
    "PrecisionError",
    "RegimeError",
    "ResonanceRoot",
    "ScaledState",
    "SingularJacobianError",
    "SolveWindow",
    "WindowError",
    "default_seed",
    "find_root",
    "fit_ab",
    "gamma",
    "gamma_asymptotic",
    "optimal_l",
    "regime_of",
    "solve_FG",
    "solve_constants",
    "solve_mode",
]
