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
"""A replay buffer of transitions."""

from __future__ import annotations

from typing import TYPE_CHECKING

from numpy import arange
from numpy import asarray
from numpy import zeros

from gemseo_iqn.agent.transitions import TransitionBatch

if TYPE_CHECKING:
    from numpy.random import Generator

    from gemseo.typing import BooleanArray
    from gemseo.typing import IntegerArray
    from gemseo.typing import RealArray
    from gemseo_iqn.agent.transitions import Transition


class ReplayBuffer:
    """A ring buffer of transitions evicting the oldest ones first."""

    capacity: int
    """The maximum number of transitions."""

    insertion_count: int
    """The number of transitions added since the creation of the buffer."""

    __actions: IntegerArray
    """The actions per slot."""

    __next_states: RealArray
    """The next states per slot."""

    __rewards: RealArray
    """The rewards per slot."""

    __states: RealArray
    """The states per slot."""

    __terminals: BooleanArray
    """Whether the next states are terminal per slot."""

    def __init__(self, capacity: int) -> None:
        """
        Args:
            capacity: The maximum number of transitions.

        Raises:
            ValueError: When the capacity is lower than 1.
        """  # noqa: D205 D212 D415
        if capacity < 1:
            msg = (
                "The capacity of the replay buffer must be at least 1; "
                f"got {capacity}."
            )
            raise ValueError(msg)

        self.capacity = capacity
        self.insertion_count = 0
        self.__states = self.__next_states = zeros((capacity, 0))
        self.__actions = zeros(capacity, dtype=int)
        self.__rewards = zeros(capacity)
        self.__terminals = zeros(capacity, dtype=bool)

    def __len__(self) -> int:
        return min(self.insertion_count, self.capacity)

    def add(self, transition: Transition) -> None:
        """Add a transition, evicting the oldest one when the buffer is full.

        Args:
            transition: The transition.

        Raises:
            ValueError: When the states are not shaped as the stored ones.
        """
        state = asarray(transition.state, dtype=float)
        next_state = asarray(transition.next_state, dtype=float)
        if self.insertion_count == 0:
            self.__states = zeros((self.capacity, state.size))
            self.__next_states = zeros((self.capacity, state.size))

        state_dim = self.__states.shape[1]
        if state.shape != (state_dim,) or next_state.shape != (state_dim,):
            msg = (
                f"The states must be shaped as ({state_dim},); "
                f"got {state.shape} and {next_state.shape}."
            )
            raise ValueError(msg)

        index = self.insertion_count % self.capacity
        self.__states[index] = state
        self.__actions[index] = transition.action
        self.__rewards[index] = transition.reward
        self.__next_states[index] = next_state
        self.__terminals[index] = transition.terminal
        self.insertion_count += 1

    def __get_batch(self, indices: IntegerArray) -> TransitionBatch:
        """Return the transitions stored at some slots.

        Args:
            indices: The slots.

        Returns:
            The transitions.
        """
        return TransitionBatch(
            self.__states[indices],
            self.__actions[indices],
            self.__rewards[indices],
            self.__next_states[indices],
            self.__terminals[indices],
        )

    def get_contents(self) -> TransitionBatch:
        """Return the stored transitions from the oldest to the newest.

        Returns:
            The stored transitions.
        """
        size = len(self)
        start = self.insertion_count - size
        return self.__get_batch((start + arange(size)) % self.capacity)

    def sample_indices(self, batch_size: int, rng: Generator) -> IntegerArray:
        """Sample slots uniformly with replacement.

        Args:
            batch_size: The number of slots.
            rng: The random number generator.

        Returns:
            The slots.

        Raises:
            ValueError: When the buffer is empty.
        """
        if not len(self):
            msg = "The replay buffer is empty."
            raise ValueError(msg)

        return rng.integers(len(self), size=batch_size)

    def sample(self, batch_size: int, rng: Generator) -> TransitionBatch:
        """Sample transitions uniformly with replacement.

        Args:
            batch_size: The number of transitions.
            rng: The random number generator.

        Returns:
            The transitions.

        Raises:
            ValueError: When the buffer is empty.
        """
        return self.__get_batch(self.sample_indices(batch_size, rng))
