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
"""The conditional value-at-risk."""

from __future__ import annotations

from typing import TYPE_CHECKING
from typing import ClassVar

from numpy import minimum

from gemseo_iqn.distortion.measures.base_pointwise_measure import (
    BasePointwiseDistortionMeasure,
)

if TYPE_CHECKING:
    from gemseo.typing import RealArray


class CVaR(BasePointwiseDistortionMeasure):
    r"""The conditional value-at-risk $\beta(\tau)=\eta\tau$ with $\eta\in]0,1]$.

    The distorted expectation is the mean of the $\eta$-fraction of worst returns.
    """

    SHORT_NAME: ClassVar[str] = "cvar"

    DEFAULT_ETA: ClassVar[float] = 0.25

    def _check_eta(self, eta: float) -> None:
        if not 0 < eta <= 1:
            msg = f"The parameter of the CVaR must be in ]0,1]; got {eta}."
            raise ValueError(msg)

    def _apply(self, tau: RealArray) -> RealArray:
        return self.eta * tau

    def _inverse(self, u: RealArray) -> RealArray:
        return minimum(u / self.eta, 1.0)
