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
"""The transitions observed by an agent."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from numpy import asarray
from numpy import stack

if TYPE_CHECKING:
    from collections.abc import Sequence

    from gemseo.typing import BooleanArray
    from gemseo.typing import IntegerArray
    from gemseo.typing import RealArray


@dataclass(frozen=True)
class Transition:
    """A transition $(x,a,r,x')$ observed by an agent."""

    state: RealArray
    """The state."""

    action: int
    """The action played in the state."""

    reward: float
    """The reward received after playing the action."""

    next_state: RealArray
    """The state reached after playing the action."""

    terminal: bool
    """Whether the next state is terminal."""


@dataclass(frozen=True)
class TransitionBatch:
    """A batch of transitions stored column-wise."""

    states: RealArray
    """The states shaped as `(batch_size, state_dim)`."""

    actions: IntegerArray
    """The actions shaped as `(batch_size,)`."""

    rewards: RealArray
    """The rewards shaped as `(batch_size,)`."""

    next_states: RealArray
    """The next states shaped as `(batch_size, state_dim)`."""

    terminals: BooleanArray
    """Whether the next states are terminal, shaped as `(batch_size,)`."""

    def __len__(self) -> int:
        return len(self.actions)

    @classmethod
    def from_transitions(cls, transitions: Sequence[Transition]) -> TransitionBatch:
        """Stack transitions.

        Args:
            transitions: The transitions.

        Returns:
            The batch of transitions.

        Raises:
            ValueError: When there is no transition.
        """
        if not transitions:
            msg = "The batch of transitions is empty."
            raise ValueError(msg)

        return cls(
            stack([asarray(t.state, dtype=float) for t in transitions]),
            asarray([t.action for t in transitions], dtype=int),
            asarray([t.reward for t in transitions], dtype=float),
            stack([asarray(t.next_state, dtype=float) for t in transitions]),
            asarray([t.terminal for t in transitions], dtype=bool),
        )
