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
"""The settings of the agent."""

from __future__ import annotations

from gemseo.utils.seeder import SEED
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import NonNegativeInt
from pydantic import PositiveFloat
from pydantic import PositiveInt
from strenum import StrEnum

from gemseo_iqn.losses.loss_settings import LossConfig
from gemseo_iqn.networks.architecture_settings import ArchitectureSpec


class Algorithm(StrEnum):
    """The learning algorithm."""

    IQN = "iqn"
    """The implicit quantile network."""

    QR = "qr"
    """The network estimating fixed quantiles."""

    DQN = "dqn"
    """The network estimating the expected returns."""


class AgentConfig(BaseModel):
    """The settings of the agent."""

    model_config = ConfigDict(extra="forbid")

    algorithm: Algorithm = Field(
        default=Algorithm.IQN, description="The learning algorithm."
    )

    loss: LossConfig = Field(
        default_factory=LossConfig, description="The settings of the loss."
    )

    architecture: ArchitectureSpec = Field(
        default_factory=ArchitectureSpec,
        description="""The architecture of the networks.

Its state dimension and number of actions are set from the environment.""",
    )

    n_quantiles: PositiveInt = Field(
        default=32,
        description="""The number of quantiles
of the network estimating fixed quantiles.""",
    )

    epsilon_start: float = Field(
        default=1.0,
        ge=0.0,
        le=1.0,
        description="The initial probability of playing a random action.",
    )

    epsilon_end: float = Field(
        default=0.05,
        ge=0.0,
        le=1.0,
        description="The final probability of playing a random action.",
    )

    epsilon_decay_steps: PositiveInt = Field(
        default=10000,
        description="""The number of steps of the linear decay of the probability
of playing a random action.""",
    )

    buffer_capacity: PositiveInt = Field(
        default=10000, description="The capacity of the replay buffer."
    )

    batch_size: PositiveInt = Field(
        default=32, description="The number of transitions per gradient step."
    )

    target_sync_period: PositiveInt = Field(
        default=500,
        description="""The number of gradient steps
between two synchronizations of the target network.""",
    )

    train_period: PositiveInt = Field(
        default=1,
        description="The number of environment steps between two gradient steps.",
    )

    warmup_steps: NonNegativeInt = Field(
        default=1000,
        description="""The number of transitions in the replay buffer
before the first gradient step.""",
    )

    learning_rate: PositiveFloat = Field(
        default=1e-3, description="The learning rate of the Adam optimizer."
    )

    beta_1: float = Field(
        default=0.9,
        ge=0.0,
        lt=1.0,
        description="The decay rate of the first moments of the Adam optimizer.",
    )

    beta_2: float = Field(
        default=0.999,
        ge=0.0,
        lt=1.0,
        description="The decay rate of the second moments of the Adam optimizer.",
    )

    adam_epsilon: PositiveFloat = Field(
        default=3.125e-4,
        description="""The constant added to the square root of the second moments
of the Adam optimizer.""",
    )

    eval_period: PositiveInt = Field(
        default=1000,
        description="The number of environment steps between two evaluations.",
    )

    eval_episodes: PositiveInt = Field(
        default=10, description="The number of episodes of an evaluation."
    )

    eval_with_policy_measure: bool = Field(
        default=True,
        description="""Whether the evaluation episodes act greedily
with respect to the policy measure rather than the expectation.""",
    )

    discount_returns: bool = Field(
        default=False,
        description="Whether the reported returns are discounted.",
    )

    seed: NonNegativeInt = Field(
        default=SEED, description="The seed of the random number generators."
    )

    def get_epsilon(self, step: int) -> float:
        """Return the probability of playing a random action.

        Args:
            step: The number of environment steps already played.

        Returns:
            The linear interpolation between the initial and final probabilities,
            constant after the decay.
        """
        progress = min(step / self.epsilon_decay_steps, 1.0)
        return self.epsilon_start + progress * (self.epsilon_end - self.epsilon_start)
