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
r"""The base distortion risk measure.

A distortion risk measure $\beta$ changes the law of the quantile level
$\tau\sim\mathcal{U}([0,1])$ used to evaluate a return distribution.
The distorted expectation of a return $Z$ is
$E_{\tau\sim\mathcal{U}([0,1])}[F_Z^{-1}(\beta(\tau))]$.
"""

from __future__ import annotations

from abc import abstractmethod
from typing import TYPE_CHECKING
from typing import ClassVar

from gemseo.utils.metaclasses import ABCGoogleDocstringInheritanceMeta

if TYPE_CHECKING:
    from numpy.random import Generator
    from numpy.typing import ArrayLike

    from gemseo.typing import RealArray


class BaseDistortionMeasure(metaclass=ABCGoogleDocstringInheritanceMeta):
    """The base distortion risk measure."""

    SHORT_NAME: ClassVar[str]
    """The short name of the measure used in the configuration files."""

    DEFAULT_ETA: ClassVar[float] = 0.0
    """The default value of the parameter of the measure."""

    eta: float
    """The parameter of the measure."""

    def __init__(self, eta: float | None = None) -> None:
        """
        Args:
            eta: The parameter of the measure.
                If `None`, use the default value.

        Raises:
            ValueError: When the parameter is invalid.
        """  # noqa: D205 D212 D415
        self.eta = self.DEFAULT_ETA if eta is None else eta
        self._check_eta(self.eta)

    def _check_eta(self, eta: float) -> None:
        """Check the parameter of the measure.

        Args:
            eta: The parameter of the measure.

        Raises:
            ValueError: When the parameter is invalid.
        """

    @property
    def is_pointwise(self) -> bool:
        r"""Whether the measure is a map $\beta:[0,1]\to[0,1]$."""
        return True

    @abstractmethod
    def apply(self, tau: ArrayLike) -> float | RealArray:
        """Distort quantile levels.

        Args:
            tau: The quantile level(s) in $[0,1]$.

        Returns:
            The distorted quantile level(s).

        Raises:
            ValueError: When the measure is not pointwise
                or when a quantile level is not in $[0,1]$.
        """

    @abstractmethod
    def inverse(self, u: ArrayLike) -> float | RealArray:
        r"""Evaluate the generalized inverse of the measure.

        This is the largest quantile level $\tau$ such that $\beta(\tau)\leq u$.

        Args:
            u: The distorted quantile level(s) in $[0,1]$.

        Returns:
            The quantile level(s).

        Raises:
            ValueError: When the measure is not pointwise
                or when a distorted quantile level is not in $[0,1]$.
        """

    @abstractmethod
    def sample(
        self, rng: Generator, size: int | tuple[int, ...] | None = None
    ) -> float | RealArray:
        """Sample quantile levels distorted by the measure.

        Args:
            rng: The random number generator.
            size: The shape of the samples.
                If `None`, return a single sample.

        Returns:
            The distorted quantile level(s).
        """

    def __str__(self) -> str:
        return f"{self.SHORT_NAME}:{self.eta:g}"

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(eta={self.eta!r})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BaseDistortionMeasure)
            and self.SHORT_NAME == other.SHORT_NAME
            and self.eta == other.eta
        )

    def __hash__(self) -> int:
        return hash((self.SHORT_NAME, self.eta))
