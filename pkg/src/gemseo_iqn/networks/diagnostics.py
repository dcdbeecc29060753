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
"""Diagnostics of the estimated quantiles."""

from __future__ import annotations

from typing import TYPE_CHECKING

from numpy import asarray
from numpy import diff

if TYPE_CHECKING:
    from numpy.typing import ArrayLike


def count_crossings(quantiles: ArrayLike, axis: int = -2) -> int:
    """Count the crossing quantiles.

    Nothing constrains the estimated quantile function to be non-decreasing.
    A crossing is a pair of consecutive quantiles of increasing levels
    whose values decrease.

    Args:
        quantiles: The quantiles estimated at increasing quantile levels,
            e.g. shaped as `(batch_size, n_taus, action_count)`.
        axis: The axis of the quantile levels.

    Returns:
        The number of crossings.
    """
    return int((diff(asarray(quantiles, dtype=float), axis=axis) < 0).sum())
