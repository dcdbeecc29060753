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
"""A static computational graph with reverse-mode automatic differentiation."""

from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field
from typing import TYPE_CHECKING

from gemseo.utils.string_tools import MultiLineString
from numpy import array
from numpy import asarray
from numpy import concatenate
from numpy import integer
from numpy import isfinite
from numpy import issubdtype
from numpy import zeros
from strenum import StrEnum

from gemseo_iqn.autodiff.errors import GraphStateError
from gemseo_iqn.autodiff.errors import NonFiniteInputError
from gemseo_iqn.autodiff.errors import ShapeMismatchError

if TYPE_CHECKING:
    from collections.abc import Mapping

    from numpy import ndarray
    from numpy.typing import ArrayLike

    from gemseo_iqn.autodiff.primitives.base_primitive import BasePrimitive


class NodeKind(StrEnum):
    """The kind of a graph node."""

    INPUT = "input"
    PARAMETER = "parameter"
    CONSTANT = "constant"
    OPERATION = "operation"


@dataclass
class Node:
    """A node of a computational graph."""

    name: str
    """The name of the node."""

    kind: NodeKind
    """The kind of the node."""

    primitive: BasePrimitive | None = None
    """The primitive of an operation node."""

    input_names: tuple[str, ...] = ()
    """The names of the input nodes of an operation node."""

    shape: tuple[int, ...] | None = None
    """The shape of a parameter or constant node."""

    is_integer: bool = False
    """Whether the values of an input node are integers."""

    requires_gradient: bool = False
    """Whether a parameter lies upstream of the node."""

    value: ndarray | None = field(default=None, repr=False)
    """The value of a constant node."""


class ComputeGraph:
    """A static computational graph.

    The nodes are added in a topological order:
    an operation node can only use nodes added before it.
    The leaves are the inputs, bound at each forward pass,
    the parameters, bound at each forward pass and differentiated by the backward pass,
    and the constants, bound at construction.
    """

    name: str
    """The name of the graph."""

    __nodes: dict[str, Node]
    """The nodes in topological order."""

    __outputs: dict[str, str]
    """The output names bound to their node names."""

    __values: dict[str, ndarray]
    """The values of the nodes computed by the last forward pass."""

    def __init__(self, name: str = "graph") -> None:
        """
        Args:
            name: The name of the graph.
        """  # noqa: D205 D212 D415
        self.name = name
        self.__nodes = {}
        self.__outputs = {}
        self.__values = {}

    def __add_node(self, node: Node) -> str:
        """Add a node.

        Args:
            node: The node.

        Returns:
            The name of the node.

        Raises:
            ValueError: When a node with the same name already exists.
        """
        if node.name in self.__nodes:
            msg = f"The graph {self.name!r} already has a node named {node.name!r}."
            raise ValueError(msg)

        self.__nodes[node.name] = node
        self.__values.clear()
        return node.name

    def add_input(self, name: str, is_integer: bool = False) -> str:
        """Add an input node.

        Args:
            name: The name of the input.
            is_integer: Whether the values of the input are integers,
                e.g. indices.

        Returns:
            The name of the node.
        """
        return self.__add_node(Node(name, NodeKind.INPUT, is_integer=is_integer))

    def add_parameter(self, name: str, shape: tuple[int, ...]) -> str:
        """Add a parameter node.

        Args:
            name: The name of the parameter.
            shape: The shape of the parameter.

        Returns:
            The name of the node.
        """
        return self.__add_node(
            Node(name, NodeKind.PARAMETER, shape=tuple(shape), requires_gradient=True)
        )

    def add_constant(self, name: str, value: ArrayLike) -> str:
        """Add a constant node.

        Args:
            name: The name of the constant.
            value: The value of the constant.

        Returns:
            The name of the node.
        """
        value = array(value, dtype=float)
        return self.__add_node(
            Node(name, NodeKind.CONSTANT, shape=value.shape, value=value)
        )

    def add_operation(
        self, primitive: BasePrimitive, *input_names: str, name: str = ""
    ) -> str:
        """Add an operation node.

        Args:
            primitive: The primitive of the operation.
            *input_names: The names of the input nodes.
            name: The name of the node.
                If empty, use the name of the primitive suffixed by the node index.

        Returns:
            The name of the node.

        Raises:
            ValueError: When the number of inputs does not match the primitive
                or when an input node does not exist.
        """
        if len(input_names) != primitive.N_INPUTS:
            msg = (
                f"The primitive {primitive} expects {primitive.N_INPUTS} input(s); "
                f"got {len(input_names)}."
            )
            raise ValueError(msg)

        unknown_names = [
            input_name for input_name in input_names if input_name not in self.__nodes
        ]
        if unknown_names:
            msg = f"The graph {self.name!r} has no node named {unknown_names}."
            raise ValueError(msg)

        name = name or f"{primitive.NAME}_{len(self.__nodes)}"
        return self.__add_node(
            Node(
                name,
                NodeKind.OPERATION,
                primitive=primitive,
                input_names=input_names,
                requires_gradient=any(
                    self.__nodes[input_name].requires_gradient
                    for input_name in input_names
                ),
            )
        )

    def set_output(self, output_name: str, node_name: str) -> None:
        """Declare a node as an output of the graph.

        Args:
            output_name: The name of the output.
            node_name: The name of the node.

        Raises:
            ValueError: When the node does not exist.
        """
        if node_name not in self.__nodes:
            msg = f"The graph {self.name!r} has no node named {node_name!r}."
            raise ValueError(msg)

        self.__outputs[output_name] = node_name

    @property
    def input_names(self) -> list[str]:
        """The names of the inputs."""
        return self.__get_node_names(NodeKind.INPUT)

    @property
    def parameter_names(self) -> list[str]:
        """The names of the parameters."""
        return self.__get_node_names(NodeKind.PARAMETER)

    @property
    def parameter_shapes(self) -> dict[str, tuple[int, ...]]:
        """The shapes of the parameters."""
        return {name: self.__nodes[name].shape for name in self.parameter_names}

    @property
    def output_names(self) -> list[str]:
        """The names of the outputs."""
        return list(self.__outputs)

    @property
    def operations(self) -> list[str]:
        """The names of the operation nodes in evaluation order."""
        return self.__get_node_names(NodeKind.OPERATION)

    def __get_node_names(self, kind: NodeKind) -> list[str]:
        return [name for name, node in self.__nodes.items() if node.kind == kind]

    def forward(
        self, inputs: Mapping[str, ArrayLike], parameters: Mapping[str, ndarray]
    ) -> dict[str, ndarray]:
        """Evaluate the graph.

        Args:
            inputs: The values of the inputs.
            parameters: The values of the parameters.

        Returns:
            The values of the outputs.

        Raises:
            NonFiniteInputError: When a real input contains non-finite values.
            ShapeMismatchError: When the shapes of the inputs of a node
                violate the shape rule of its primitive.
            ValueError: When an input or a parameter is missing.
        """
        self.__values = {}
        values = {}
        for name, node in self.__nodes.items():
            if node.kind == NodeKind.INPUT:
                values[name] = self.__check_input(name, node, inputs)
            elif node.kind == NodeKind.PARAMETER:
                values[name] = self.__check_parameter(name, node, parameters)
            elif node.kind == NodeKind.CONSTANT:
                values[name] = node.value
            else:
                input_values = [values[input_name] for input_name in node.input_names]
                shapes = [value.shape for value in input_values]
                try:
                    node.primitive.infer_shape(*shapes)
                except ValueError as error:
                    raise ShapeMismatchError(name, shapes, str(error)) from None

                values[name] = asarray(node.primitive.forward(*input_values))

        self.__values = values
        return {
            output_name: values[node_name]
            for output_name, node_name in self.__outputs.items()
        }

    def __check_input(
        self, name: str, node: Node, inputs: Mapping[str, ArrayLike]
    ) -> ndarray:
        """Return the value of an input after checking it.

        Args:
            name: The name of the input.
            node: The input node.
            inputs: The values of the inputs.

        Returns:
            The value of the input.

        Raises:
            NonFiniteInputError: When a real input contains non-finite values.
            ValueError: When the input is missing.
        """
        if name not in inputs:
            msg = f"The input {name!r} of the graph {self.name!r} is missing."
            raise ValueError(msg)

        value = asarray(inputs[name])
        if node.is_integer:
            if not issubdtype(value.dtype, integer):
                msg = f"The input {name!r} must be an array of integers."
                raise ValueError(msg)

            return value

        value = value.astype(float)
        if not isfinite(value).all():
            raise NonFiniteInputError(name)

        return value

    def __check_parameter(
        self, name: str, node: Node, parameters: Mapping[str, ndarray]
    ) -> ndarray:
        """Return the value of a parameter after checking it.

        Args:
            name: The name of the parameter.
            node: The parameter node.
            parameters: The values of the parameters.

        Returns:
            The value of the parameter.

        Raises:
            ShapeMismatchError: When the parameter is wrongly shaped.
            ValueError: When the parameter is missing.
        """
        if name not in parameters:
            msg = f"The parameter {name!r} of the graph {self.name!r} is missing."
            raise ValueError(msg)

        value = asarray(parameters[name], dtype=float)
        if value.shape != node.shape:
            raise ShapeMismatchError(
                name, [value.shape], f"the parameter must be shaped as {node.shape}"
            )

        return value

    def get_value(self, node_name: str) -> ndarray:
        """Return the value of a node computed by the last forward pass.

        Args:
            node_name: The name of the node.

        Returns:
            The value of the node.

        Raises:
            GraphStateError: When the graph has not been evaluated.
        """
        self.__check_evaluated()
        return self.__values[node_name]

    def __check_evaluated(self) -> None:
        """Check that the graph has been evaluated.

        Raises:
            GraphStateError: When the graph has not been evaluated.
        """
        if not self.__values:
            msg = f"The graph {self.name!r} must be evaluated before this operation."
            raise GraphStateError(msg)

    def backward(
        self, seed: ArrayLike = 1.0, output_name: str = ""
    ) -> dict[str, ndarray]:
        """Differentiate an output with respect to the parameters.

        Args:
            seed: The gradient with respect to the output;
                the gradients of the parameters are the vector-Jacobian products
                of this seed.
            output_name: The name of the output.
                If empty, use the first output.

        Returns:
            The gradients with respect to the parameters,
            zero for the parameters the output does not depend on.

        Raises:
            GraphStateError: When the graph has not been evaluated.
            ShapeMismatchError: When the seed is not shaped as the output.
        """
        self.__check_evaluated()
        node_name = self.__outputs[output_name or self.output_names[0]]
        seed = array(seed, dtype=float)
        output_shape = self.__values[node_name].shape
        if seed.shape != output_shape:
            raise ShapeMismatchError(
                node_name,
                [seed.shape],
                f"the seed gradient must be shaped as the output {output_shape}",
            )

        gradients = {node_name: seed}
        for name in reversed(self.operations):
            node = self.__nodes[name]
            if name not in gradients or not node.requires_gradient:
                continue

            input_values = [
                self.__values[input_name] for input_name in node.input_names
            ]
            input_gradients = node.primitive.backward(
                gradients.pop(name), self.__values[name], *input_values
            )
            for input_name, input_gradient in zip(node.input_names, input_gradients):
                if (
                    input_gradient is None
                    or not self.__nodes[input_name].requires_gradient
                ):
                    continue

                if input_name in gradients:
                    gradients[input_name] = gradients[input_name] + input_gradient
                else:
                    gradients[input_name] = asarray(input_gradient, dtype=float)

        return {
            name: gradients.get(name, zeros(shape))
            for name, shape in self.parameter_shapes.items()
        }

    def compute_kink_signature(self) -> ndarray:
        """Return the sign pattern locating the evaluation among the smooth pieces.

        Two evaluations sharing the same signature lie in the same smooth piece
        of the function computed by the graph.

        Returns:
            The concatenated kink signatures of the non-smooth operations
            at the last forward pass.

        Raises:
            GraphStateError: When the graph has not been evaluated.
        """
        self.__check_evaluated()
        signatures = [zeros(0)]
        for name in self.operations:
            node = self.__nodes[name]
            signature = node.primitive.compute_kink_signature(
                *(self.__values[input_name] for input_name in node.input_names)
            )
            if signature is not None:
                signatures.append(asarray(signature, dtype=float).ravel())

        return concatenate(signatures)

    def __str__(self) -> str:
        text = MultiLineString()
        text.add("Computational graph {}", self.name)
        text.indent()
        for name, node in self.__nodes.items():
            if node.kind == NodeKind.OPERATION:
                text.add(
                    "{} = {}({})", name, node.primitive, ", ".join(node.input_names)
                )
            else:
                text.add("{} ({})", name, node.kind)

        return str(text)
