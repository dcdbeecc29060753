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
r"""The Huber quantile regression loss and its derivative.

The Huber function with threshold $\kappa$ is
$L_\kappa(\delta)=\frac{1}{2}\delta^2$ if $|\delta|\leq\kappa$
and $\kappa(|\delta|-\frac{1}{2}\kappa)$ otherwise.
The Huber quantile loss at level $\tau$ is
$\rho^\kappa_\tau(\delta)=|\tau-\mathbb{1}_{\delta<0}|L_\kappa(\delta)/\kappa$,
whose limit when $\kappa\to 0$ is the pinball loss
$\rho^0_\tau(\delta)=\delta(\tau-\mathbb{1}_{\delta<0})$.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from numpy import abs as np_abs
from numpy import asarray
from numpy import sign
from numpy import where

if TYPE_CHECKING:
    from numpy.typing import ArrayLike

    from gemseo.typing import RealArray


def _check_kappa(kappa: float) -> None:
    """Check that the Huber threshold is non-negative.

    Args:
        kappa: The Huber threshold.

    Raises:
        ValueError: When the Huber threshold is negative.
    """
    if kappa < 0:
        msg = f"The Huber threshold must be non-negative; got {kappa}."
        raise ValueError(msg)


def huber(delta: ArrayLike, kappa: float) -> RealArray:
    """Evaluate the Huber function.

    Args:
        delta: The errors.
        kappa: The Huber threshold; 0 gives the absolute value.

    Returns:
        The Huber function at the errors.

    Raises:
        ValueError: When the Huber threshold is negative.
    """
    _check_kappa(kappa)
    delta = asarray(delta, dtype=float)
    absolute_delta = np_abs(delta)
    if kappa == 0:
        return absolute_delta

    return where(
        absolute_delta <= kappa,
        0.5 * delta**2,
        kappa * (absolute_delta - 0.5 * kappa),
    )


def huber_gradient(delta: ArrayLike, kappa: float) -> RealArray:
    """Evaluate the derivative of the Huber function.

    Args:
        delta: The errors.
        kappa: The Huber threshold; 0 gives the absolute value.

    Returns:
        The derivative of the Huber function at the errors.

    Raises:
        ValueError: When the Huber threshold is negative.
    """
    _check_kappa(kappa)
    delta = asarray(delta, dtype=float)
    if kappa == 0:
        return sign(delta)

    return where(np_abs(delta) <= kappa, delta, kappa * sign(delta))


def _quantile_weight(delta: RealArray, tau: ArrayLike) -> RealArray:
    r"""Return the asymmetric weight $|\tau-\mathbb{1}_{\delta<0}|$.

    Args:
        delta: The errors.
        tau: The quantile levels.

    Returns:
        The weights.
    """
    return np_abs(asarray(tau, dtype=float) - (delta < 0))


def huber_quantile(delta: ArrayLike, tau: ArrayLike, kappa: float) -> RealArray:
    r"""Evaluate the Huber quantile loss.

    Args:
        delta: The errors, i.e. targets minus predictions.
        tau: The quantile levels in $[0,1]$, broadcastable to the errors.
        kappa: The Huber threshold; 0 gives the pinball loss.

    Returns:
        The Huber quantile loss at the errors.

    Raises:
        ValueError: When the Huber threshold is negative.
    """
    _check_kappa(kappa)
    delta = asarray(delta, dtype=float)
    weight = _quantile_weight(delta, tau)
    if kappa == 0:
        return weight * np_abs(delta)

    return weight * huber(delta, kappa) / kappa


def huber_quantile_gradient(
    delta: ArrayLike, tau: ArrayLike, kappa: float
) -> RealArray:
    """Evaluate the derivative of the Huber quantile loss with respect to the error.

    Args:
        delta: The errors, i.e. targets minus predictions.
        tau: The quantile levels in $[0,1]$, broadcastable to the errors.
        kappa: The Huber threshold; 0 gives the pinball loss.

    Returns:
        The derivative at the errors, 0 where the errors are 0.

    Raises:
        ValueError: When the Huber threshold is negative.
    """
    delta = asarray(delta, dtype=float)
    gradient = huber_gradient(delta, kappa)
    if kappa > 0:
        gradient = gradient / kappa

    return _quantile_weight(delta, tau) * gradient
