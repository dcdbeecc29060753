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
r"""The cliff walking grid with slippery moves.

The grid has 4 rows and 12 columns.
The agent starts in the bottom-left cell and the goal is the bottom-right cell;
the cells between them are the cliff.
Each step costs 1, falling costs 100 and ends the episode,
reaching the goal ends the episode.
With probability $p$, the agent slips
in one of the two directions perpendicular to the chosen one.

The states are the one-hot encodings of the 48 cells
numbered row by row from the top-left cell.
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING
from typing import ClassVar

from numpy import eye
from numpy import full
from numpy import zeros
from numpy.linalg import LinAlgError
from scipy.linalg import solve

from gemseo_iqn.envlab.environments.base_environment import BaseEnvironment

if TYPE_CHECKING:
    from numpy.random import Generator
    from numpy.typing import ArrayLike

    from gemseo.typing import IntegerArray
    from gemseo.typing import RealArray

LOGGER = logging.getLogger(__name__)

HEIGHT = 4
WIDTH = 12
UP, RIGHT, DOWN, LEFT = range(4)
_MOVES = ((-1, 0), (0, 1), (1, 0), (0, -1))
START = (HEIGHT - 1) * WIDTH
GOAL = HEIGHT * WIDTH - 1
CLIFF = frozenset(range(START + 1, GOAL))
STEP_REWARD = -1.0
CLIFF_REWARD = -100.0


def _move(cell: int, direction: int) -> int:
    """Return the cell reached by a move, staying in place at the borders.

    Args:
        cell: The cell.
        direction: The direction of the move.

    Returns:
        The reached cell.
    """
    row, column = divmod(cell, WIDTH)
    row_shift, column_shift = _MOVES[direction]
    row = min(max(row + row_shift, 0), HEIGHT - 1)
    column = min(max(column + column_shift, 0), WIDTH - 1)
    return row * WIDTH + column


def is_terminal(cell: int) -> bool:
    """Whether a cell ends the episode.

    Args:
        cell: The cell.

    Returns:
        Whether the cell is the goal or a cliff cell.
    """
    return cell == GOAL or cell in CLIFF


def cliff_hugging_policy() -> IntegerArray:
    """Return the policy walking along the cliff edge.

    Returns:
        The action per cell.
    """
    policy = full(HEIGHT * WIDTH, DOWN)
    policy[2 * WIDTH : 3 * WIDTH - 1] = RIGHT
    policy[START] = UP
    return policy


def safe_path_policy() -> IntegerArray:
    """Return the policy walking along the top edge, far from the cliff.

    Returns:
        The action per cell.
    """
    policy = full(HEIGHT * WIDTH, UP)
    policy[: WIDTH - 1] = RIGHT
    policy[WIDTH - 1 :: WIDTH] = DOWN
    return policy


class CliffGrid(BaseEnvironment):
    """The cliff walking grid with slippery moves."""

    SHORT_NAME: ClassVar[str] = "cliff"

    p: float
    """The probability of slipping in a perpendicular direction."""

    __cell: int
    """The cell of the agent."""

    def __init__(self, p: float = 0.0, rng: Generator | None = None) -> None:
        """
        Args:
            p: The probability of slipping in a perpendicular direction.

        Raises:
            ValueError: When the probability is not in $[0,0.5]$.
        """  # noqa: D205 D212 D415
        super().__init__(rng=rng)
        if not 0 <= p <= 0.5:
            msg = f"The slip probability must be in [0,0.5]; got {p}."
            raise ValueError(msg)

        self.p = p
        self.__cell = START

    @property
    def state_dimension(self) -> int:  # noqa: D102
        return HEIGHT * WIDTH

    @property
    def action_count(self) -> int:  # noqa: D102
        return len(_MOVES)

    @property
    def recommended_gamma(self) -> float:  # noqa: D102
        return 0.99

    @property
    def step_limit(self) -> int:  # noqa: D102
        return 200

    def get_transitions(self, cell: int, action: int) -> list[tuple[int, float]]:
        """Return the cells reachable by an action and their probabilities.

        Args:
            cell: The cell of the agent.
            action: The action.

        Returns:
            The reachable cells and their probabilities.
        """
        transitions = [(_move(cell, action), 1.0 - self.p)]
        if self.p > 0:
            transitions.extend(
                (_move(cell, (action + shift) % 4), self.p / 2) for shift in (1, 3)
            )

        return transitions

    def evaluate_policy(self, policy: ArrayLike, gamma: float) -> RealArray:
        """Compute the expected returns of a deterministic policy.

        The linear Bellman system over the non-terminal cells is solved exactly,
        ignoring the step limit.

        Args:
            policy: The action per cell.
            gamma: The discount.

        Returns:
            The expected return per cell, zero at the terminal cells.

        Raises:
            ValueError: When the policy can avoid the terminal cells forever
                without discount.
        """
        n_cells = HEIGHT * WIDTH
        matrix = eye(n_cells)
        rewards = zeros(n_cells)
        for cell in range(n_cells):
            if is_terminal(cell):
                continue

            for next_cell, probability in self.get_transitions(cell, int(policy[cell])):
                reward = CLIFF_REWARD if next_cell in CLIFF else STEP_REWARD
                rewards[cell] += probability * reward
                if not is_terminal(next_cell):
                    matrix[cell, next_cell] -= gamma * probability

        try:
            return solve(matrix, rewards)
        except LinAlgError:
            msg = "The policy does not reach a terminal cell from every cell."
            raise ValueError(msg) from None

    def _reset(self) -> RealArray:
        self.__cell = START
        return self.__encode()

    def _step(self, action: int) -> tuple[RealArray, float, bool]:
        transitions = self.get_transitions(self.__cell, action)
        if len(transitions) == 1:
            self.__cell = transitions[0][0]
        else:
            cells, probabilities = zip(*transitions)
            self.__cell = int(self.rng.choice(cells, p=probabilities))

        if self.__cell in CLIFF:
            self.diagnostics["cliff_falls"] += 1
            LOGGER.debug("Fall from the cliff at step %s.", self.diagnostics["steps"])
            return self.__encode(), CLIFF_REWARD, True

        return self.__encode(), STEP_REWARD, self.__cell == GOAL

    def __encode(self) -> RealArray:
        """Return the one-hot encoding of the cell of the agent."""
        state = zeros(HEIGHT * WIDTH)
        state[self.__cell] = 1.0
        return state

    def __str__(self) -> str:
        return f"{self.SHORT_NAME}:p={self.p:g}"
