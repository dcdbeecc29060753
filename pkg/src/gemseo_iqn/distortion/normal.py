# Copyright 2025 IRT Saint Exupéry, https://www.irt-saintexupery.com
#
# This program is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License version 3 as published by the Free Software Foundation.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the GNU
# Lesser General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public License
# along with this program; if not, write to the Free Software Foundation,
# Inc., 51 Franklin Street, Fifth Floor, Boston, MA  02110-1301, USA.
"""The distribution function of the standard normal law and its inverse.

The inverse is computed with the rational approximation of P. J. Acklam
and refined by a single step of Halley's method.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from numpy import array
from numpy import asarray
from numpy import exp
from numpy import log
from numpy import pi
from numpy import polyval
from numpy import sqrt
from numpy import where
from scipy.special import ndtr

if TYPE_CHECKING:
    from numpy.typing import ArrayLike

    from gemseo.typing import RealArray

_A = array([
    -3.969683028665376e01,
    2.209460984245205e02,
    -2.759285104469687e02,
    1.383577518672690e02,
    -3.066479806614716e01,
    2.506628277459239e00,
])
_B = array([
    -5.447609879822406e01,
    1.615858368580409e02,
    -1.556989798598866e02,
    6.680131188771972e01,
    -1.328068155288572e01,
    1.0,
])
_C = array([
    -7.784894002430293e-03,
    -3.223964580411365e-01,
    -2.400758277161838e00,
    -2.549732539343734e00,
    4.374664141464968e00,
    2.938163982698783e00,
])
_D = array([
    7.784695709041462e-03,
    3.224671290700398e-01,
    2.445134137142996e00,
    3.754408661907416e00,
    1.0,
])
_LOW_TAIL = 0.02425
"""The probability below which the tail approximation is used."""


def normal_cdf(z: ArrayLike) -> float | RealArray:
    """Evaluate the cumulative distribution function of the standard normal law.

    Args:
        z: The finite value(s).

    Returns:
        The probability(ies) that a standard normal variable is lower than `z`.
    """
    result = ndtr(asarray(z, dtype=float))
    return result if result.ndim else float(result)


def normal_inv_cdf(u: ArrayLike) -> float | RealArray:
    """Evaluate the quantile function of the standard normal law.

    Args:
        u: The probability(ies) in $]0,1[$.

    Returns:
        The quantile(s).

    Raises:
        ValueError: When a probability is not in $]0,1[$,
            whose quantile is infinite.
    """
    u = asarray(u, dtype=float)
    if not ((u > 0) & (u < 1)).all():
        msg = (
            "The probabilities must be in ]0,1[; "
            "the quantiles of 0 and 1 are infinite."
        )
        raise ValueError(msg)

    # Work in the lower half where the probability is represented accurately.
    is_upper = u > 0.5
    p = where(is_upper, 1 - u, u)
    is_tail = p < _LOW_TAIL
    q_tail = sqrt(-2 * log(where(is_tail, p, 0.5)))
    q_central = p - 0.5
    r_central = q_central**2
    x = where(
        is_tail,
        polyval(_C, q_tail) / polyval(_D, q_tail),
        q_central * polyval(_A, r_central) / polyval(_B, r_central),
    )
    error = (ndtr(x) - p) * sqrt(2 * pi) * exp(0.5 * x**2)
    x -= error / (1 + 0.5 * x * error)
    result = where(is_upper, -x, x)
    return result if result.ndim else float(result)
