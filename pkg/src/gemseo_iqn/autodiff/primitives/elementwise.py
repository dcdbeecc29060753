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
"""Element-wise primitives."""

from __future__ import annotations

from typing import TYPE_CHECKING
from typing import ClassVar

from numpy import cos
from numpy import exp
from numpy import maximum
from numpy import sign
from numpy import sin
from numpy import where

from gemseo_iqn.autodiff.primitives.base_primitive import BasePrimitive

if TYPE_CHECKING:
    from numpy import ndarray


class Add(BasePrimitive):
    """The sum of two arrays.

    The second array can also be a vector broadcast along the leading axes of the
    first one, e.g. a bias added to each row of a matrix.
    """

    NAME: ClassVar[str] = "add"
    N_INPUTS: ClassVar[int] = 2

    def infer_shape(  # noqa: D102
        self, shape: tuple[int, ...], other_shape: tuple[int, ...]
    ) -> tuple[int, ...]:
        if shape == other_shape:
            return shape

        if len(other_shape) == 1 and shape and shape[-1] == other_shape[0]:
            return shape

        msg = "add requires identical shapes or a trailing vector"
        raise ValueError(msg)

    def forward(self, value: ndarray, other_value: ndarray) -> ndarray:  # noqa: D102
        return value + other_value

    def backward(  # noqa: D102
        self,
        output_gradient: ndarray,
        output: ndarray,
        value: ndarray,
        other_value: ndarray,
    ) -> tuple[ndarray, ndarray]:
        if other_value.shape == value.shape:
            return output_gradient, output_gradient

        axes = tuple(range(output_gradient.ndim - 1))
        return output_gradient, output_gradient.sum(axis=axes)


class Hadamard(BasePrimitive):
    """The element-wise product of two arrays of identical shapes."""

    NAME: ClassVar[str] = "hadamard"
    N_INPUTS: ClassVar[int] = 2

    def infer_shape(  # noqa: D102
        self, shape: tuple[int, ...], other_shape: tuple[int, ...]
    ) -> tuple[int, ...]:
        if shape != other_shape:
            msg = "hadamard requires identical shapes"
            raise ValueError(msg)

        return shape

    def forward(self, value: ndarray, other_value: ndarray) -> ndarray:  # noqa: D102
        return value * other_value

    def backward(  # noqa: D102
        self,
        output_gradient: ndarray,
        output: ndarray,
        value: ndarray,
        other_value: ndarray,
    ) -> tuple[ndarray, ndarray]:
        return output_gradient * other_value, output_gradient * value


class BaseUnaryPrimitive(BasePrimitive):
    """A primitive applied to each element of its unique input."""

    def infer_shape(self, shape: tuple[int, ...]) -> tuple[int, ...]:  # noqa: D102
        return shape


class ReLU(BaseUnaryPrimitive):
    """The rectified linear unit.

    Its subgradient at 0 is 0.
    """

    NAME: ClassVar[str] = "relu"

    def forward(self, value: ndarray) -> ndarray:  # noqa: D102
        return maximum(value, 0.0)

    def backward(  # noqa: D102
        self, output_gradient: ndarray, output: ndarray, value: ndarray
    ) -> tuple[ndarray]:
        return (where(value > 0.0, output_gradient, 0.0),)

    def compute_kink_signature(self, value: ndarray) -> ndarray:  # noqa: D102
        return sign(value)


class Sigmoid(BaseUnaryPrimitive):
    """The logistic function."""

    NAME: ClassVar[str] = "sigmoid"

    def forward(self, value: ndarray) -> ndarray:  # noqa: D102
        return 1.0 / (1.0 + exp(-value))

    def backward(  # noqa: D102
        self, output_gradient: ndarray, output: ndarray, value: ndarray
    ) -> tuple[ndarray]:
        return (output_gradient * output * (1.0 - output),)


class Cosine(BaseUnaryPrimitive):
    """The cosine function."""

    NAME: ClassVar[str] = "cosine"

    def forward(self, value: ndarray) -> ndarray:  # noqa: D102
        return cos(value)

    def backward(  # noqa: D102
        self, output_gradient: ndarray, output: ndarray, value: ndarray
    ) -> tuple[ndarray]:
        return (-output_gradient * sin(value),)


class ScalarMultiply(BaseUnaryPrimitive):
    """The product of an array by a constant scalar."""

    NAME: ClassVar[str] = "scalar_multiply"

    factor: float
    """The constant scalar."""

    def __init__(self, factor: float) -> None:
        """
        Args:
            factor: The constant scalar.
        """  # noqa: D205 D212 D415
        self.factor = factor

    def forward(self, value: ndarray) -> ndarray:  # noqa: D102
        return self.factor * value

    def backward(  # noqa: D102
        self, output_gradient: ndarray, output: ndarray, value: ndarray
    ) -> tuple[ndarray]:
        return (self.factor * output_gradient,)
