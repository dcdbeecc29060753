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
r"""The base distortion risk measure defined as a map $\beta:[0,1]\to[0,1]$."""

from __future__ import annotations

from abc import abstractmethod
from typing import TYPE_CHECKING
from typing import Callable

from numpy import asarray
from numpy import full_like
from numpy import ones_like
from numpy import where
from numpy import zeros_like

from gemseo_iqn.distortion.measures.base_distortion_measure import (
    BaseDistortionMeasure,
)

if TYPE_CHECKING:
    from numpy.random import Generator
    from numpy.typing import ArrayLike

    from gemseo.typing import RealArray


class BasePointwiseDistortionMeasure(BaseDistortionMeasure):
    r"""The base distortion risk measure defined as a map $\beta:[0,1]\to[0,1]$.

    Sampling from the measure consists in applying $\beta$
    to a uniform quantile level.
    """

    _INVERSE_TOLERANCE: float = 1e-12
    """The tolerance of the bisection inverting the measure."""

    def apply(self, tau: ArrayLike) -> float | RealArray:  # noqa: D102
        return self.__evaluate(self._apply, tau)

    def inverse(self, u: ArrayLike) -> float | RealArray:  # noqa: D102
        return self.__evaluate(self._inverse, u)

    def sample(  # noqa: D102
        self, rng: Generator, size: int | tuple[int, ...] | None = None
    ) -> float | RealArray:
        return self.apply(rng.random(size))

    @staticmethod
    def __evaluate(
        function: Callable[[RealArray], RealArray], value: ArrayLike
    ) -> float | RealArray:
        """Evaluate a function on values in $[0,1]$.

        Args:
            function: The function, vectorized over 1D arrays.
            value: The value(s) in $[0,1]$.

        Returns:
            The output value(s), shaped as the input value(s).

        Raises:
            ValueError: When a value is not in $[0,1]$.
        """
        value = asarray(value, dtype=float)
        if not ((value >= 0) & (value <= 1)).all():
            msg = "The quantile levels must be in [0,1]."
            raise ValueError(msg)

        result = function(value.ravel()).reshape(value.shape)
        return result if result.ndim else float(result)

    @abstractmethod
    def _apply(self, tau: RealArray) -> RealArray:
        """Distort quantile levels.

        Args:
            tau: The quantile levels in $[0,1]$.

        Returns:
            The distorted quantile levels.
        """

    def _inverse(self, u: RealArray) -> RealArray:
        """Evaluate the generalized inverse of the measure by bisection.

        Args:
            u: The distorted quantile levels in $[0,1]$.

        Returns:
            The quantile levels.
        """
        lower = zeros_like(u)
        upper = ones_like(u)
        while (upper - lower).max(initial=0.0) > self._INVERSE_TOLERANCE:
            middle = 0.5 * (lower + upper)
            is_below = self._apply(middle) <= u
            lower = where(is_below, middle, lower)
            upper = where(is_below, upper, middle)

        return where(u >= 1, full_like(u, 1.0), 0.5 * (lower + upper))
