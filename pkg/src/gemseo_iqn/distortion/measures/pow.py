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
"""The power distortion."""

from __future__ import annotations

from typing import TYPE_CHECKING
from typing import ClassVar

from gemseo_iqn.distortion.measures.base_pointwise_measure import (
    BasePointwiseDistortionMeasure,
)

if TYPE_CHECKING:
    from gemseo.typing import RealArray


class Pow(BasePointwiseDistortionMeasure):
    r"""The power distortion.

    $\beta(\tau)=\tau^{1/(1+\eta)}$ if $\eta\geq 0$ (risk-seeking)
    and $\beta(\tau)=1-(1-\tau)^{1/(1-\eta)}$ otherwise (risk-averse).
    """

    SHORT_NAME: ClassVar[str] = "pow"

    DEFAULT_ETA: ClassVar[float] = -2.0

    def _apply(self, tau: RealArray) -> RealArray:
        exponent = 1 / (1 + abs(self.eta))
        if self.eta >= 0:
            return tau**exponent

        return 1 - (1 - tau) ** exponent

    def _inverse(self, u: RealArray) -> RealArray:
        exponent = 1 + abs(self.eta)
        if self.eta >= 0:
            return u**exponent

        return 1 - (1 - u) ** exponent
