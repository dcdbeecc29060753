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
"""The base primitive operation of a computational graph."""

from __future__ import annotations

from abc import abstractmethod
from typing import TYPE_CHECKING
from typing import ClassVar

from gemseo.utils.metaclasses import ABCGoogleDocstringInheritanceMeta

if TYPE_CHECKING:
    from numpy import ndarray


class BasePrimitive(metaclass=ABCGoogleDocstringInheritanceMeta):
    """The base primitive operation of a computational graph.

    A primitive maps input arrays to an output array
    and propagates the gradient of a scalar quantity
    with respect to its output back to its inputs.
    """

    NAME: ClassVar[str]
    """The name of the primitive, used to name the graph nodes."""

    N_INPUTS: ClassVar[int] = 1
    """The number of inputs of the primitive."""

    @abstractmethod
    def infer_shape(self, *shapes: tuple[int, ...]) -> tuple[int, ...]:
        """Return the output shape from the input shapes.

        Args:
            *shapes: The shapes of the inputs.

        Returns:
            The shape of the output.

        Raises:
            ValueError: When the input shapes violate the shape rule.
        """

    @abstractmethod
    def forward(self, *values: ndarray) -> ndarray:
        """Compute the output from the inputs.

        Args:
            *values: The values of the inputs.

        Returns:
            The value of the output.
        """

    @abstractmethod
    def backward(
        self, output_gradient: ndarray, output: ndarray, *values: ndarray
    ) -> tuple[ndarray | None, ...]:
        """Propagate a gradient from the output to the inputs.

        Args:
            output_gradient: The gradient with respect to the output.
            output: The value of the output.
            *values: The values of the inputs.

        Returns:
            The gradients with respect to the inputs,
            `None` for the inputs which are not differentiable.
        """

    def compute_kink_signature(self, *values: ndarray) -> ndarray | None:
        """Return the sign pattern locating the non-differentiable points.

        Two input values sharing the same signature lie
        in the same differentiable piece of the primitive.

        Args:
            *values: The values of the inputs.

        Returns:
            The sign pattern, or `None` if the primitive is smooth.
        """
        return None

    def __repr__(self) -> str:
        return self.NAME
