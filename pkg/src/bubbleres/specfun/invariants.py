"""Identity defects used as runtime self-checks."""

import math

from .recurrence import jy_scaled


def wronskian_relative_defect(l, z):
    """Defect of ``z**2 (j y' - j' y) = 1`` relative to the size of its terms.

    For large ``|Im z|`` both products are ``O(exp(2|Im z|))`` and cancel to
    ``z**-2``, so the defect is measured against ``max(1, |z|**2 (|j y'| + |j' y|))``.
    """
    r = jy_scaled(l, z)
    zz = z * z
    w = (r.j * r.yp - r.jp * r.y) * zz
    size = (abs(r.j * r.yp) + abs(r.jp * r.y)) * abs(zz)
    log_scale = r.log_j + r.log_y
    if log_scale + math.log(size) > 0:
        return abs(w - math.exp(-log_scale)) / size
    return abs(w * math.exp(log_scale) - 1.0)


def _relative_three_term(values):
    top = max(s for _, s in values)
    terms = [m * math.exp(s - top) for m, s in values]
    return abs(sum(terms)) / sum(abs(t) for t in terms)


def recurrence_relative_defect(l, z):
    """Worst relative defect of ``u_{l-1} + u_{l+1} = (2l+1)/z u_l`` over ``u = j, y``."""
    if l < 1:
        raise ValueError("recurrence check needs l >= 1")
    lo, mid, hi = (jy_scaled(m, z) for m in (l - 1, l, l + 1))
    c = -(2 * l + 1) / z
    dj = _relative_three_term([(lo.j, lo.log_j), (c * mid.j, mid.log_j), (hi.j, hi.log_j)])
    dy = _relative_three_term([(lo.y, lo.log_y), (c * mid.y, mid.log_y), (hi.y, hi.log_y)])
    return max(dj, dy)
