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
"""The risk-neutral measure."""

from __future__ import annotations

from typing import TYPE_CHECKING
from typing import ClassVar

from gemseo_iqn.distortion.measures.base_pointwise_measure import (
    BasePointwiseDistortionMeasure,
)

if TYPE_CHECKING:
    from gemseo.typing import RealArray


class Identity(BasePointwiseDistortionMeasure):
    r"""The risk-neutral measure $\beta(\tau)=\tau$."""

    SHORT_NAME: ClassVar[str] = "neutral"

    def _apply(self, tau: RealArray) -> RealArray:
        return tau.copy()

    def _inverse(self, u: RealArray) -> RealArray:
        return u.copy()

    def __str__(self) -> str:
        return self.SHORT_NAME
