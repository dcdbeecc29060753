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
"""Primitives combining, reducing or rearranging arrays."""

from __future__ import annotations

from typing import TYPE_CHECKING
from typing import ClassVar

from numpy import arange
from numpy import add
from numpy import broadcast_to
from numpy import concatenate
from numpy import prod
from numpy import split
from numpy import zeros

from gemseo_iqn.autodiff.primitives.base_primitive import BasePrimitive

if TYPE_CHECKING:
    from numpy import ndarray


class MatMul(BasePrimitive):
    """The product of a matrix shaped as `(a, b)` by a matrix shaped as `(b, c)`."""

    NAME: ClassVar[str] = "matmul"
    N_INPUTS: ClassVar[int] = 2

    def infer_shape(  # noqa: D102
        self, shape: tuple[int, ...], other_shape: tuple[int, ...]
    ) -> tuple[int, ...]:
        if len(shape) != 2 or len(other_shape) != 2 or shape[1] != other_shape[0]:
            msg = "matmul requires (a, b) and (b, c) matrices"
            raise ValueError(msg)

        return shape[0], other_shape[1]

    def forward(self, value: ndarray, other_value: ndarray) -> ndarray:  # noqa: D102
        return value @ other_value

    def backward(  # noqa: D102
        self,
        output_gradient: ndarray,
        output: ndarray,
        value: ndarray,
        other_value: ndarray,
    ) -> tuple[ndarray, ndarray]:
        return output_gradient @ other_value.T, value.T @ output_gradient


class Concatenate(BasePrimitive):
    """The concatenation of two arrays along an axis."""

    NAME: ClassVar[str] = "concatenate"
    N_INPUTS: ClassVar[int] = 2

    axis: int
    """The concatenation axis."""

    def __init__(self, axis: int = -1) -> None:
        """
        Args:
            axis: The concatenation axis.
        """  # noqa: D205 D212 D415
        self.axis = axis

    def infer_shape(  # noqa: D102
        self, shape: tuple[int, ...], other_shape: tuple[int, ...]
    ) -> tuple[int, ...]:
        if len(shape) != len(other_shape) or not shape:
            msg = "concatenate requires arrays of the same rank"
            raise ValueError(msg)

        axis = self.axis % len(shape)
        if any(
            size != other_size
            for index, (size, other_size) in enumerate(zip(shape, other_shape))
            if index != axis
        ):
            msg = "concatenate requires identical sizes out of the concatenation axis"
            raise ValueError(msg)

        output_shape = list(shape)
        output_shape[axis] += other_shape[axis]
        return tuple(output_shape)

    def forward(self, value: ndarray, other_value: ndarray) -> ndarray:  # noqa: D102
        return concatenate((value, other_value), axis=self.axis)

    def backward(  # noqa: D102
        self,
        output_gradient: ndarray,
        output: ndarray,
        value: ndarray,
        other_value: ndarray,
    ) -> tuple[ndarray, ndarray]:
        gradient, other_gradient = split(
            output_gradient, [value.shape[self.axis]], axis=self.axis
        )
        return gradient, other_gradient


class BaseReduction(BasePrimitive):
    """The reduction of an array over an axis or over all its elements."""

    axis: int | None
    """The reduction axis, `None` to reduce all the elements."""

    def __init__(self, axis: int | None = None) -> None:
        """
        Args:
            axis: The reduction axis, `None` to reduce all the elements.
        """  # noqa: D205 D212 D415
        self.axis = axis

    def infer_shape(self, shape: tuple[int, ...]) -> tuple[int, ...]:  # noqa: D102
        if self.axis is None:
            return ()

        if not shape:
            msg = "cannot reduce a scalar over an axis"
            raise ValueError(msg)

        axis = self.axis % len(shape)
        return shape[:axis] + shape[axis + 1 :]

    def _expand(self, output_gradient: ndarray, shape: tuple[int, ...]) -> ndarray:
        """Broadcast the gradient of the reduced array to the input shape.

        Args:
            output_gradient: The gradient with respect to the reduced array.
            shape: The shape of the input.

        Returns:
            The broadcast gradient.
        """
        if self.axis is None:
            return broadcast_to(output_gradient, shape).copy()

        axis = self.axis % len(shape)
        expanded_shape = list(shape)
        expanded_shape[axis] = 1
        return broadcast_to(output_gradient.reshape(expanded_shape), shape).copy()


class ReduceSum(BaseReduction):
    """The sum of the elements of an array."""

    NAME: ClassVar[str] = "reduce_sum"

    def forward(self, value: ndarray) -> ndarray:  # noqa: D102
        return value.sum(axis=self.axis)

    def backward(  # noqa: D102
        self, output_gradient: ndarray, output: ndarray, value: ndarray
    ) -> tuple[ndarray]:
        return (self._expand(output_gradient, value.shape),)


class ReduceMean(BaseReduction):
    """The mean of the elements of an array."""

    NAME: ClassVar[str] = "reduce_mean"

    def forward(self, value: ndarray) -> ndarray:  # noqa: D102
        return value.mean(axis=self.axis)

    def backward(  # noqa: D102
        self, output_gradient: ndarray, output: ndarray, value: ndarray
    ) -> tuple[ndarray]:
        size = value.size if self.axis is None else value.shape[self.axis]
        return (self._expand(output_gradient, value.shape) / size,)


class ElementSelect(BaseReduction):
    """The selection of one element per row of a matrix.

    The second input is the integer vector of the column to select in each row.
    """

    NAME: ClassVar[str] = "element_select"
    N_INPUTS: ClassVar[int] = 2

    def __init__(self) -> None:  # noqa: D107
        super().__init__(axis=-1)

    def infer_shape(  # noqa: D102
        self, shape: tuple[int, ...], index_shape: tuple[int, ...]
    ) -> tuple[int, ...]:
        if len(shape) != 2 or index_shape != (shape[0],):
            msg = "element_select requires a (n, m) matrix and a (n,) index vector"
            raise ValueError(msg)

        return (shape[0],)

    def forward(self, value: ndarray, indices: ndarray) -> ndarray:  # noqa: D102
        return value[arange(len(value)), indices]

    def backward(  # noqa: D102
        self,
        output_gradient: ndarray,
        output: ndarray,
        value: ndarray,
        indices: ndarray,
    ) -> tuple[ndarray, None]:
        gradient = zeros(value.shape)
        gradient[arange(len(value)), indices] = output_gradient
        return gradient, None


class TakeRows(BasePrimitive):
    """The rows of a matrix selected by an integer vector, possibly repeated."""

    NAME: ClassVar[str] = "take_rows"
    N_INPUTS: ClassVar[int] = 2

    def infer_shape(  # noqa: D102
        self, shape: tuple[int, ...], index_shape: tuple[int, ...]
    ) -> tuple[int, ...]:
        if len(shape) != 2 or len(index_shape) != 1:
            msg = "take_rows requires a matrix and an index vector"
            raise ValueError(msg)

        return index_shape[0], shape[1]

    def forward(self, value: ndarray, indices: ndarray) -> ndarray:  # noqa: D102
        return value[indices]

    def backward(  # noqa: D102
        self,
        output_gradient: ndarray,
        output: ndarray,
        value: ndarray,
        indices: ndarray,
    ) -> tuple[ndarray, None]:
        gradient = zeros(value.shape)
        add.at(gradient, indices, output_gradient)
        return gradient, None


class Reshape(BasePrimitive):
    """The reshaping of an array in row-major order."""

    NAME: ClassVar[str] = "reshape"

    shape: tuple[int, ...]
    """The output shape; one dimension can be -1 to be inferred."""

    def __init__(self, shape: tuple[int, ...]) -> None:
        """
        Args:
            shape: The output shape; one dimension can be -1 to be inferred.
        """  # noqa: D205 D212 D415
        self.shape = tuple(shape)

    def infer_shape(self, shape: tuple[int, ...]) -> tuple[int, ...]:  # noqa: D102
        size = int(prod(shape))
        known_size = int(prod([dim for dim in self.shape if dim != -1]))
        if -1 in self.shape:
            if known_size == 0 or size % known_size:
                msg = f"cannot reshape {size} elements to {self.shape}"
                raise ValueError(msg)

            return tuple(size // known_size if dim == -1 else dim for dim in self.shape)

        if known_size != size:
            msg = f"cannot reshape {size} elements to {self.shape}"
            raise ValueError(msg)

        return self.shape

    def forward(self, value: ndarray) -> ndarray:  # noqa: D102
        return value.reshape(self.shape)

    def backward(  # noqa: D102
        self, output_gradient: ndarray, output: ndarray, value: ndarray
    ) -> tuple[ndarray]:
        return (output_gradient.reshape(value.shape),)
