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
"""The Wang transform."""

from __future__ import annotations

from typing import TYPE_CHECKING
from typing import ClassVar

from gemseo_iqn.distortion.measures.base_pointwise_measure import (
    BasePointwiseDistortionMeasure,
)
from gemseo_iqn.distortion.normal import normal_cdf
from gemseo_iqn.distortion.normal import normal_inv_cdf

if TYPE_CHECKING:
    from gemseo.typing import RealArray


class Wang(BasePointwiseDistortionMeasure):
    r"""The Wang transform $\beta(\tau)=\Phi(\Phi^{-1}(\tau)+\eta)$.

    $\Phi$ is the distribution function of the standard normal law.
    The measure is risk-averse for $\eta<0$ and risk-seeking for $\eta>0$.
    It is extended by continuity at 0 and 1.
    """

    SHORT_NAME: ClassVar[str] = "wang"

    DEFAULT_ETA: ClassVar[float] = -0.75

    def __shift(self, tau: RealArray, eta: float) -> RealArray:
        """Shift the normal quantiles of quantile levels.

        Args:
            tau: The quantile levels.
            eta: The shift.

        Returns:
            The shifted quantile levels, 0 and 1 being fixed points.
        """
        result = tau.copy()
        is_interior = (tau > 0) & (tau < 1)
        result[is_interior] = normal_cdf(normal_inv_cdf(tau[is_interior]) + eta)
        return result

    def _apply(self, tau: RealArray) -> RealArray:
        return self.__shift(tau, self.eta)

    def _inverse(self, u: RealArray) -> RealArray:
        return self.__shift(u, -self.eta)
