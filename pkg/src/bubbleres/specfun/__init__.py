"""Spherical Bessel functions of complex argument, with log-space channels."""

from .airy import airy, wronskian_defect
from .asymptotic import (
    action_integral,
    airy_distance,
    eval_jy_airy,
    eval_jy_uniform,
    eval_large_arg,
    u_correction,
)
from .core import eval_jy, log_jy_ratio, real_log_jy
from .invariants import recurrence_relative_defect, wronskian_relative_defect
from .recurrence import jy_scaled, second_derivative_ratio
from .types import BesselEval, LogRatio, RealLogJY, UniformEval

__all__ = [
    "BesselEval",
    "LogRatio",
    "RealLogJY",
    "UniformEval",
    "action_integral",
    "airy",
    "airy_distance",
    "eval_jy",
    "eval_jy_airy",
    "eval_jy_uniform",
    "eval_large_arg",
    "jy_scaled",
    "log_jy_ratio",
    "real_log_jy",
    "recurrence_relative_defect",
    "second_derivative_ratio",
    "u_correction",
    "wronskian_defect",
    "wronskian_relative_defect",
]
