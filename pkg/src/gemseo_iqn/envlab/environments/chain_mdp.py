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
"""A chain of cells ending with a rewarding exit."""

from __future__ import annotations

from typing import TYPE_CHECKING
from typing import ClassVar

from numpy import asarray
from numpy import zeros

from gemseo_iqn.envlab.environments.base_environment import BaseEnvironment

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.random import Generator

    from gemseo.typing import RealArray


class ChainMDP(BaseEnvironment):
    r"""A chain of cells ending with a rewarding exit.

    The agent starts in the first of $L$ cells encoded as one-hot vectors.
    The action 1 moves it forward and the action 0 backward,
    a move succeeding with probability $p$ and leaving the agent in place otherwise.
    Moving forward from the last cell exits the chain
    with the terminal reward and ends the episode.
    The always-forward policy gets the return $\gamma^{L-1}r$ when $p=1$.
    """

    SHORT_NAME: ClassVar[str] = "chain"

    PARAMETER_ALIASES: ClassVar[dict[str, str]] = {
        "L": "length",
        "r": "terminal_reward",
    }

    FORWARD: ClassVar[int] = 1
    """The action moving forward."""

    length: int
    """The number of cells."""

    p: float
    """The probability that a move succeeds."""

    rewards: RealArray
    """The rewards of the steps from the cells."""

    terminal_reward: float
    """The reward of the exit."""

    __cell: int
    """The cell of the agent."""

    def __init__(
        self,
        length: int = 5,
        p: float = 1.0,
        rewards: Sequence[float] = (),
        terminal_reward: float = 1.0,
        rng: Generator | None = None,
    ) -> None:
        """
        Args:
            length: The number of cells.
            p: The probability that a move succeeds.
            rewards: The rewards of the steps from the cells.
                If empty, use zeros.
            terminal_reward: The reward of the exit.

        Raises:
            ValueError: When the number of cells is lower than 2,
                when the probability is not in $]0,1]$
                or when the rewards are not one per cell.
        """  # noqa: D205 D212 D415
        super().__init__(rng=rng)
        if length < 2:
            msg = f"The chain must have at least 2 cells; got {length}."
            raise ValueError(msg)

        if not 0 < p <= 1:
            msg = f"The probability that a move succeeds must be in ]0,1]; got {p}."
            raise ValueError(msg)

        self.rewards = asarray(rewards, dtype=float) if len(rewards) else zeros(length)
        if self.rewards.shape != (length,):
            msg = f"The chain must have one reward per cell; got {len(self.rewards)}."
            raise ValueError(msg)

        self.length = length
        self.p = p
        self.terminal_reward = terminal_reward
        self.__cell = 0

    @property
    def state_dimension(self) -> int:  # noqa: D102
        return self.length

    @property
    def action_count(self) -> int:  # noqa: D102
        return 2

    @property
    def recommended_gamma(self) -> float:  # noqa: D102
        return 0.9

    @property
    def step_limit(self) -> int:  # noqa: D102
        return 4 * self.length

    def __encode(self) -> RealArray:
        """Return the one-hot encoding of the cell of the agent."""
        state = zeros(self.length)
        state[self.__cell] = 1.0
        return state

    def _reset(self) -> RealArray:
        self.__cell = 0
        return self.__encode()

    def _step(self, action: int) -> tuple[RealArray, float, bool]:
        reward = float(self.rewards[self.__cell])
        if self.p < 1 and self.rng.random() >= self.p:
            return self.__encode(), reward, False

        if action != self.FORWARD:
            self.__cell = max(self.__cell - 1, 0)
            return self.__encode(), reward, False

        if self.__cell == self.length - 1:
            return self.__encode(), reward + self.terminal_reward, True

        self.__cell += 1
        return self.__encode(), reward, False

    def __str__(self) -> str:
        return f"{self.SHORT_NAME}:L={self.length},p={self.p:g}"
