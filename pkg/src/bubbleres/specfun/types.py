"""Result records shared by the special-function evaluators."""

import math
from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class BesselEval:
    """Values of ``j_l, y_l`` and their derivatives at one point.

    Attributes
    ----------
    order, arg : int, complex
        ``l`` and ``z``.
    j, y, jp, yp : complex
        ``j_l(z)``, ``y_l(z)``, ``j_l'(z)``, ``y_l'(z)``.
    method : str
        One of ``series``, ``recurrence``, ``uniform-asymptotic``, ``airy``,
        ``large-arg``.
    error_bound : float or None
        Estimated relative error for the asymptotic paths; ``None`` when
        the value is accurate to rounding.
    """

    order: int
    arg: complex
    j: complex
    y: complex
    jp: complex
    yp: complex
    method: str
    error_bound: Optional[float] = None

    @property
    def h(self):
        """``h_l^(1) = j_l + i y_l``."""
        return self.j + 1j * self.y

    @property
    def hp(self):
        return self.jp + 1j * self.yp

    def wronskian_defect(self):
        """``z**2 (j y' - j' y) - 1``; zero for exact values."""
        z = self.arg
        return z * z * (self.j * self.yp - self.jp * self.y) - 1.0


@dataclass(frozen=True)
class UniformEval:
    """Large-order two-term evaluation at ``z = sqrt(l(l+1)) * xi``.

    Magnitudes are kept in log form (``j > 0``, ``y < 0`` in this regime),
    so the record is usable even when the values themselves overflow.
    """

    order: int
    xi: float
    arg: float
    log_abs_j: float
    log_abs_y: float
    dlog_j: float
    dlog_y: float
    error_bound: float
    method: str = "uniform-asymptotic"

    @property
    def j(self):
        return _checked_exp(self.log_abs_j)

    @property
    def y(self):
        return -_checked_exp(self.log_abs_y)

    @property
    def jp(self):
        return self.dlog_j * self.j

    @property
    def yp(self):
        return self.dlog_y * self.y

    def as_bessel_eval(self):
        return BesselEval(self.order, complex(self.arg), self.j, self.y, self.jp, self.yp,
                          self.method, self.error_bound)


@dataclass(frozen=True)
class LogRatio:
    """``value = log(-2 j_l(x) / y_l(x))`` for real ``x`` where the ratio is negative."""

    order: int
    arg: float
    value: float
    method: str


@dataclass(frozen=True)
class RealLogJY:
    """``j_l(x) = sign_j * exp(log_abs_j)``, likewise ``y``; plus ``u'/u`` for each."""

    order: float
    arg: float
    log_abs_j: float
    sign_j: int
    dlog_j: float
    log_abs_y: float
    sign_y: int
    dlog_y: float
    method: str


def _checked_exp(v):
    if v > 709.0:
        raise OverflowError(f"exp({v:.6g}) exceeds the double range; use the log fields")
    return math.exp(v)
