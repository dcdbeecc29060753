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
"""The errors raised by the computational graphs."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Sequence


class ShapeMismatchError(ValueError):
    """An error raised when the input shapes of a node are inconsistent."""

    node_name: str
    """The name of the node whose inputs are inconsistent."""

    shapes: tuple[tuple[int, ...], ...]
    """The shapes of the inputs of the node."""

    def __init__(
        self, node_name: str, shapes: Sequence[tuple[int, ...]], reason: str
    ) -> None:
        """
        Args:
            node_name: The name of the node whose inputs are inconsistent.
            shapes: The shapes of the inputs of the node.
            reason: The violated shape rule.
        """  # noqa: D205 D212 D415
        self.node_name = node_name
        self.shapes = tuple(tuple(shape) for shape in shapes)
        super().__init__(
            f"The node {node_name!r} cannot be evaluated "
            f"from inputs shaped as {list(self.shapes)}: {reason}"
        )


class NonFiniteInputError(ValueError):
    """An error raised when a graph input contains NaN or infinite values."""

    input_name: str
    """The name of the non-finite input."""

    def __init__(self, input_name: str) -> None:
        """
        Args:
            input_name: The name of the non-finite input.
        """  # noqa: D205 D212 D415
        self.input_name = input_name
        super().__init__(f"The input {input_name!r} contains non-finite values.")


class GraphStateError(RuntimeError):
    """An error raised when an operation is called in a wrong graph state."""
