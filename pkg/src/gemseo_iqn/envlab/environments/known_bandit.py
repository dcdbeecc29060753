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
"""A multi-armed bandit with known discrete reward distributions."""

from __future__ import annotations

from typing import TYPE_CHECKING
from typing import ClassVar

from numpy import array
from numpy import cumsum
from numpy import isfinite
from numpy import ones

from gemseo_iqn.envlab.environments.base_environment import BaseEnvironment

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.random import Generator

    from gemseo.typing import RealArray

Arm = tuple[tuple[float, float], ...]
"""A discrete reward distribution as `(value, probability)` pairs."""


class KnownBandit(BaseEnvironment):
    """A multi-armed bandit with known discrete reward distributions.

    An episode is a single pull of an arm from the constant state `[1.0]`.
    """

    SHORT_NAME: ClassVar[str] = "bandit"

    VARIANTS: ClassVar[dict[str, tuple[Arm, ...]]] = {
        "risky": (((0.5, 1.0),), ((0.0, 0.45), (1.0, 0.55))),
        "lottery": (((1.0, 1.0),), ((0.0, 0.9), (12.0, 0.1))),
    }
    """The predefined arms.

    - `risky`: a Dirac at 0.5 against a Bernoulli arm with mean 0.55,
    - `lottery`: a Dirac at 1 against a lottery with mean 1.2.
    """

    arms: tuple[Arm, ...]
    """The reward distributions of the arms."""

    variant: str
    """The name of the predefined arms, if any."""

    __cumulative_probabilities: list[RealArray]
    """The cumulative probabilities of the rewards of the arms."""

    __values: list[RealArray]
    """The rewards of the arms."""

    def __init__(
        self,
        variant: str = "risky",
        arms: Sequence[Sequence[tuple[float, float]]] = (),
        rng: Generator | None = None,
    ) -> None:
        """
        Args:
            variant: The name of the predefined arms,
                used when `arms` is empty.
            arms: The reward distributions of the arms
                as sequences of `(value, probability)` pairs.

        Raises:
            ValueError: When the variant is unknown
                or when a reward distribution is invalid.
        """  # noqa: D205 D212 D415
        super().__init__(rng=rng)
        if arms:
            self.variant = ""
        elif variant in self.VARIANTS:
            self.variant = variant
            arms = self.VARIANTS[variant]
        else:
            msg = (
                f"The bandit {variant!r} is unknown; "
                f"available ones are {', '.join(sorted(self.VARIANTS))}."
            )
            raise ValueError(msg)

        self.arms = tuple(
            tuple((float(value), float(probability)) for value, probability in arm)
            for arm in arms
        )
        self.__values = []
        self.__cumulative_probabilities = []
        for index, arm in enumerate(self.arms):
            values, probabilities = array(arm).T
            if (
                not isfinite(values).all()
                or (probabilities <= 0).any()
                or abs(probabilities.sum() - 1) > 1e-12
            ):
                msg = (
                    f"The rewards of the arm {index} must be finite "
                    "and their probabilities positive and summing to 1."
                )
                raise ValueError(msg)

            self.__values.append(values)
            self.__cumulative_probabilities.append(cumsum(probabilities))

    @property
    def state_dimension(self) -> int:  # noqa: D102
        return 1

    @property
    def action_count(self) -> int:  # noqa: D102
        return len(self.arms)

    @property
    def recommended_gamma(self) -> float:  # noqa: D102
        return 0.0

    @property
    def step_limit(self) -> int:  # noqa: D102
        return 1

    def get_mean(self, arm: int) -> float:
        """Return the expected reward of an arm.

        Args:
            arm: The arm.

        Returns:
            The expected reward.
        """
        return sum(value * probability for value, probability in self.arms[arm])

    def _reset(self) -> RealArray:
        return ones(1)

    def _step(self, action: int) -> tuple[RealArray, float, bool]:
        self.diagnostics[f"pulls_arm_{action}"] += 1
        cumulative_probabilities = self.__cumulative_probabilities[action]
        index = min(
            int(cumulative_probabilities.searchsorted(self.rng.random(), "right")),
            len(cumulative_probabilities) - 1,
        )
        return ones(1), float(self.__values[action][index]), True

    def __str__(self) -> str:
        return f"{self.SHORT_NAME}:{self.variant or 'custom'}"
