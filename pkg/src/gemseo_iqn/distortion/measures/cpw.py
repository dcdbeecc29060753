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
"""The cumulative probability weighting."""

from __future__ import annotations

from typing import TYPE_CHECKING
from typing import ClassVar

from gemseo_iqn.distortion.measures.base_pointwise_measure import (
    BasePointwiseDistortionMeasure,
)

if TYPE_CHECKING:
    from gemseo.typing import RealArray


class CPW(BasePointwiseDistortionMeasure):
    r"""The cumulative probability weighting of the cumulative prospect theory.

    $\beta(\tau)=\tau^\eta/(\tau^\eta+(1-\tau)^\eta)^{1/\eta}$ with $\eta>0$.

    For $\eta=0.71$,
    the measure is locally concave for small quantile levels
    and locally convex for large ones.
    Its inverse has no closed form and is computed by bisection.
    """

    SHORT_NAME: ClassVar[str] = "cpw"

    DEFAULT_ETA: ClassVar[float] = 0.71

    def _check_eta(self, eta: float) -> None:
        if eta <= 0:
            msg = f"The parameter of the CPW must be positive; got {eta}."
            raise ValueError(msg)

    def _apply(self, tau: RealArray) -> RealArray:
        power = tau**self.eta
        return power / (power + (1 - tau) ** self.eta) ** (1 / self.eta)
