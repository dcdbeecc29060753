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
"""The sampling distortion averaging uniform quantile levels."""

from __future__ import annotations

from typing import TYPE_CHECKING
from typing import ClassVar

from gemseo_iqn.distortion.measures.base_distortion_measure import (
    BaseDistortionMeasure,
)

if TYPE_CHECKING:
    from numpy.random import Generator
    from numpy.typing import ArrayLike

    from gemseo.typing import RealArray


class Norm(BaseDistortionMeasure):
    r"""The sampling distortion averaging $\eta$ uniform quantile levels.

    The quantile level is the mean of $\eta$ independent uniform variables,
    which concentrates the quantile levels around the median.
    This measure has no pointwise map; it can only be sampled.
    """

    SHORT_NAME: ClassVar[str] = "norm"

    DEFAULT_ETA: ClassVar[float] = 3

    def _check_eta(self, eta: float) -> None:
        if eta < 1 or int(eta) != eta:
            msg = f"The parameter of the Norm must be an integer >= 1; got {eta}."
            raise ValueError(msg)

        self.eta = int(eta)

    @property
    def is_pointwise(self) -> bool:  # noqa: D102
        return False

    def __raise(self) -> None:
        """Raise an error as the measure has no pointwise map.

        Raises:
            ValueError: Always.
        """
        msg = f"The measure {self} is a sampling-only measure."
        raise ValueError(msg)

    def apply(self, tau: ArrayLike) -> float | RealArray:  # noqa: D102
        self.__raise()

    def inverse(self, u: ArrayLike) -> float | RealArray:  # noqa: D102
        self.__raise()

    def sample(  # noqa: D102
        self, rng: Generator, size: int | tuple[int, ...] | None = None
    ) -> float | RealArray:
        if size is None:
            shape = ()
        elif isinstance(size, int):
            shape = (size,)
        else:
            shape = tuple(size)

        result = rng.random((self.eta, *shape)).mean(axis=0)
        return result if result.ndim else float(result)
