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
"""The initialization of the parameters of dense layers."""

from __future__ import annotations

from typing import TYPE_CHECKING

from numpy import sqrt

if TYPE_CHECKING:
    from numpy import ndarray
    from numpy.random import Generator


def initialize_dense(
    rng: Generator, fan_in: int, fan_out: int
) -> tuple[ndarray, ndarray]:
    r"""Draw the weights and the bias of a dense layer.

    All the values are drawn uniformly in $[-1/\sqrt{n},1/\sqrt{n}]$
    where $n$ is the input dimension.

    Args:
        rng: The random number generator.
        fan_in: The input dimension.
        fan_out: The output dimension.

    Returns:
        The weights shaped as `(fan_in, fan_out)` and the bias shaped as `(fan_out,)`.
    """
    bound = 1.0 / sqrt(fan_in)
    weight = rng.uniform(-bound, bound, (fan_in, fan_out))
    bias = rng.uniform(-bound, bound, fan_out)
    return weight, bias
