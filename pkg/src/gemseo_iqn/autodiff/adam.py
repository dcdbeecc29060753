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
"""The Adam optimizer."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from numpy import sqrt
from numpy import zeros_like

if TYPE_CHECKING:
    from collections.abc import Mapping

    from numpy import ndarray


@dataclass(frozen=True)
class AdamState:
    """The state of the Adam optimizer."""

    first_moments: dict[str, ndarray]
    """The first moments of the gradients per parameter."""

    second_moments: dict[str, ndarray]
    """The second moments of the gradients per parameter."""

    step_count: int = 0
    """The number of updates."""

    learning_rate: float = 5e-5
    """The learning rate."""

    beta_1: float = 0.9
    """The decay rate of the first moments."""

    beta_2: float = 0.999
    """The decay rate of the second moments."""

    epsilon: float = 3.125e-4
    """The constant added to the square root of the second moments."""

    def __post_init__(self) -> None:
        if self.learning_rate <= 0:
            msg = f"The learning rate must be positive; got {self.learning_rate}."
            raise ValueError(msg)

    @classmethod
    def create(
        cls,
        parameters: Mapping[str, ndarray],
        learning_rate: float = 5e-5,
        beta_1: float = 0.9,
        beta_2: float = 0.999,
        epsilon: float = 3.125e-4,
    ) -> AdamState:
        """Create a fresh state with zero moments.

        Args:
            parameters: The parameters to optimize.
            learning_rate: The learning rate.
            beta_1: The decay rate of the first moments.
            beta_2: The decay rate of the second moments.
            epsilon: The constant added to the square root of the second moments.

        Returns:
            The state.
        """
        moments = {
            name: zeros_like(value, dtype=float) for name, value in parameters.items()
        }
        return cls(
            moments,
            {name: value.copy() for name, value in moments.items()},
            learning_rate=learning_rate,
            beta_1=beta_1,
            beta_2=beta_2,
            epsilon=epsilon,
        )


def adam_step(
    parameters: Mapping[str, ndarray],
    gradients: Mapping[str, ndarray],
    state: AdamState,
) -> tuple[dict[str, ndarray], AdamState]:
    """Update parameters with the Adam rule and its bias correction.

    This function is pure: neither the parameters nor the state are modified.

    Args:
        parameters: The parameters.
        gradients: The gradients of the objective with respect to the parameters.
        state: The state of the optimizer.

    Returns:
        The updated parameters and the updated state.

    Raises:
        ValueError: When the gradients or the moments miss parameters
            or are not shaped as the parameters.
    """
    for mapping_name, mapping in (
        ("gradients", gradients),
        ("first moments", state.first_moments),
        ("second moments", state.second_moments),
    ):
        missing_names = sorted(parameters.keys() - mapping.keys())
        if missing_names:
            msg = (
                f"The {mapping_name} of the parameters "
                f"{', '.join(map(repr, missing_names))} are missing."
            )
            raise ValueError(msg)

    step_count = state.step_count + 1
    beta_1 = state.beta_1
    beta_2 = state.beta_2
    correction_1 = 1 - beta_1**step_count
    correction_2 = 1 - beta_2**step_count
    new_parameters = {}
    first_moments = {}
    second_moments = {}
    for name, value in parameters.items():
        gradient = gradients[name]
        first_moment = state.first_moments[name]
        if not value.shape == gradient.shape == first_moment.shape:
            msg = (
                f"The parameter {name!r} is shaped as {value.shape} "
                f"but its gradient as {gradient.shape} "
                f"and its moments as {first_moment.shape}."
            )
            raise ValueError(msg)

        first_moments[name] = beta_1 * first_moment + (1 - beta_1) * gradient
        second_moments[name] = (
            beta_2 * state.second_moments[name] + (1 - beta_2) * gradient**2
        )
        new_parameters[name] = value - state.learning_rate * (
            first_moments[name] / correction_1
        ) / (sqrt(second_moments[name] / correction_2) + state.epsilon)

    return new_parameters, AdamState(
        first_moments,
        second_moments,
        step_count=step_count,
        learning_rate=state.learning_rate,
        beta_1=beta_1,
        beta_2=beta_2,
        epsilon=state.epsilon,
    )
