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
"""The base environment."""

from __future__ import annotations

from abc import abstractmethod
from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING
from typing import ClassVar

from gemseo.utils.metaclasses import ABCGoogleDocstringInheritanceMeta
from gemseo.utils.seeder import SEED
from numpy import isfinite
from numpy.random import default_rng

from gemseo_iqn.envlab.errors import EpisodeEndedError

if TYPE_CHECKING:
    from numpy.random import Generator

    from gemseo.typing import RealArray


@dataclass(frozen=True)
class StepResult:
    """The result of a step of an environment."""

    next_state: RealArray
    """The state reached after the step."""

    reward: float
    """The reward received after the step."""

    terminal: bool
    """Whether the reached state is terminal."""

    truncated: bool = False
    """Whether the episode has been stopped by the step limit.

    A truncated episode does not end in a terminal state.
    """

    @property
    def done(self) -> bool:
        """Whether the episode has ended."""
        return self.terminal or self.truncated


class BaseEnvironment(metaclass=ABCGoogleDocstringInheritanceMeta):
    """The base environment.

    An episode starts with `reset()` and continues with `step(action)`
    until a terminal state is reached or the step limit is exceeded.
    """

    SHORT_NAME: ClassVar[str]
    """The short name of the environment used in the configuration files."""

    PARAMETER_ALIASES: ClassVar[dict[str, str]] = {}
    """The aliases of the parameters used in the configuration files."""

    diagnostics: Counter[str]
    """The counters of the events of the environment, e.g. the number of steps."""

    rng: Generator
    """The random number generator of the transitions."""

    __episode_is_running: bool
    """Whether an episode is running."""

    __step_count: int
    """The number of steps of the running episode."""

    def __init__(self, rng: Generator | None = None) -> None:
        """
        Args:
            rng: The random number generator of the transitions.
                If `None`, use a generator seeded with the default seed.
        """  # noqa: D205 D212 D415
        self.rng = default_rng(SEED) if rng is None else rng
        self.diagnostics = Counter()
        self.__episode_is_running = False
        self.__step_count = 0

    @property
    @abstractmethod
    def state_dimension(self) -> int:
        """The dimension of the states."""

    @property
    @abstractmethod
    def action_count(self) -> int:
        """The number of actions."""

    @property
    @abstractmethod
    def recommended_gamma(self) -> float:
        """The recommended discount."""

    @property
    @abstractmethod
    def step_limit(self) -> int:
        """The maximum number of steps of an episode."""

    def reset(self) -> RealArray:
        """Start a new episode.

        Returns:
            The initial state.
        """
        self.__episode_is_running = True
        self.__step_count = 0
        self.diagnostics["episodes"] += 1
        return self._reset()

    def step(self, action: int) -> StepResult:
        """Play an action.

        Args:
            action: The action.

        Returns:
            The result of the step.

        Raises:
            EpisodeEndedError: When the episode has ended or has not started.
            ValueError: When the action does not exist.
        """
        if not self.__episode_is_running:
            msg = f"The episode of {self} has ended; reset the environment."
            raise EpisodeEndedError(msg)

        if not 0 <= action < self.action_count:
            msg = f"The action must be in [0, {self.action_count}); got {action}."
            raise ValueError(msg)

        next_state, reward, terminal = self._step(int(action))
        if not isfinite(reward):
            msg = f"The reward of {self} is not finite."
            raise ValueError(msg)

        self.__step_count += 1
        self.diagnostics["steps"] += 1
        truncated = not terminal and self.__step_count >= self.step_limit
        self.__episode_is_running = not (terminal or truncated)
        return StepResult(next_state, float(reward), terminal, truncated)

    @abstractmethod
    def _reset(self) -> RealArray:
        """Reset the internal state of the environment.

        Returns:
            The initial state.
        """

    @abstractmethod
    def _step(self, action: int) -> tuple[RealArray, float, bool]:
        """Play an action from the internal state.

        Args:
            action: The valid action.

        Returns:
            The next state, the reward and whether the next state is terminal.
        """

    @abstractmethod
    def __str__(self) -> str:
        """The description of the environment, e.g. `"chain:L=5,p=1"`."""
