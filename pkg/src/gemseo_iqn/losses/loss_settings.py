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
"""The settings of the losses."""

from __future__ import annotations

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import NonNegativeFloat
from pydantic import PositiveInt
from pydantic import field_validator

from gemseo_iqn.distortion.factory import parse_measure


class LossConfig(BaseModel):
    """The settings of the losses."""

    model_config = ConfigDict(extra="forbid")

    n_online: PositiveInt = Field(
        default=8,
        description="The number N of quantile levels sampled for the online network.",
    )

    n_target: PositiveInt = Field(
        default=8,
        description="The number N' of quantile levels sampled for the target network.",
    )

    k_policy: PositiveInt = Field(
        default=32,
        description="""The number K of quantile levels sampled from the policy measure
to estimate the distorted expectations of the actions.""",
    )

    kappa: NonNegativeFloat = Field(
        default=1.0,
        description="""The Huber threshold.

0 gives the pinball loss.""",
    )

    gamma: float = Field(default=0.99, ge=0.0, lt=1.0, description="The discount.")

    policy_measure: str = Field(
        default="neutral",
        description="""The distortion risk measure of the greedy policy
described as `"name:eta"`, e.g. `"cvar:0.1"`.""",
    )

    normalize_by_n_online: bool = Field(
        default=False,
        description="""Whether to divide the loss of a transition
by the number of quantile levels sampled for the online network.""",
    )

    @field_validator("policy_measure")
    @classmethod
    def __check_policy_measure(cls, policy_measure: str) -> str:
        """Check that the policy measure can be parsed."""
        parse_measure(policy_measure)
        return policy_measure.strip()
