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
"""The base network estimating the action values of the states."""

from __future__ import annotations

from abc import abstractmethod
from copy import deepcopy
from typing import TYPE_CHECKING
from typing import ClassVar

from gemseo.utils.metaclasses import ABCGoogleDocstringInheritanceMeta
from gemseo.utils.seeder import SEED
from gemseo.utils.string_tools import MultiLineString
from numpy import asarray
from numpy import atleast_2d
from numpy.random import default_rng

from gemseo_iqn.autodiff.graph import ComputeGraph
from gemseo_iqn.autodiff.initialization import initialize_dense
from gemseo_iqn.autodiff.primitives.elementwise import Add
from gemseo_iqn.autodiff.primitives.elementwise import ReLU
from gemseo_iqn.autodiff.primitives.quantile_huber_loss import QuantileHuberLoss
from gemseo_iqn.autodiff.primitives.structural import ElementSelect
from gemseo_iqn.autodiff.primitives.structural import MatMul

if TYPE_CHECKING:
    from collections.abc import Mapping

    from numpy import ndarray
    from numpy.random import Generator
    from numpy.typing import ArrayLike

    from gemseo.typing import IntegerArray
    from gemseo.typing import RealArray
    from gemseo_iqn.autodiff.primitives.base_primitive import BasePrimitive
    from gemseo_iqn.distortion.measures.base_distortion_measure import (
        BaseDistortionMeasure,
    )
    from gemseo_iqn.networks.architecture_settings import ArchitectureSpec


class BaseQuantileNetwork(metaclass=ABCGoogleDocstringInheritanceMeta):
    """The base network estimating the action values of the states.

    A network owns its parameters and two kinds of computational graphs:
    a prediction graph mapping the inputs to a matrix of predictions
    whose rows are indexed by the pairs (state, quantile level)
    and whose columns are indexed by the actions,
    and loss graphs extending the prediction graph
    with the selection of the played actions and the Huber quantile loss.
    """

    _QUANTILE_WEIGHTED: ClassVar[bool] = True
    """Whether the loss weights the Huber function by the quantile levels."""

    spec: ArchitectureSpec
    """The architecture of the network."""

    __loss_graphs: dict[tuple[float, bool], ComputeGraph]
    """The loss graphs bound to their Huber threshold and normalization."""

    __parameters: dict[str, ndarray]
    """The parameters."""

    __prediction_graph: ComputeGraph
    """The prediction graph."""

    def __init__(self, spec: ArchitectureSpec, rng: Generator | None = None) -> None:
        """
        Args:
            spec: The architecture of the network.
            rng: The random number generator to initialize the parameters.
                If `None`, use a generator seeded with the default seed.
        """  # noqa: D205 D212 D415
        self.spec = spec
        self.__prediction_graph = ComputeGraph(f"{self.__class__.__name__}")
        self.__prediction_graph.set_output(
            "predictions", self._add_predictions(self.__prediction_graph)
        )
        self.__loss_graphs = {}
        rng = default_rng(SEED) if rng is None else rng
        self.__parameters = {}
        for name, shape in self.__prediction_graph.parameter_shapes.items():
            if name.endswith(".weight"):
                layer_name = name.removesuffix(".weight")
                self.__parameters[name], self.__parameters[f"{layer_name}.bias"] = (
                    initialize_dense(rng, *shape)
                )

    @property
    def parameters(self) -> dict[str, ndarray]:
        """The parameters."""
        return self.__parameters

    @property
    def prediction_graph(self) -> ComputeGraph:
        """The prediction graph."""
        return self.__prediction_graph

    @property
    def parameter_count(self) -> int:
        """The number of scalar parameters."""
        return sum(value.size for value in self.__parameters.values())

    def set_parameters(self, parameters: Mapping[str, ArrayLike]) -> None:
        """Set the parameters.

        Args:
            parameters: The values of all the parameters.

        Raises:
            ValueError: When the names or the shapes of the parameters are wrong.
        """
        if set(parameters) != set(self.__parameters):
            msg = (
                f"The parameters of {self.__class__.__name__} are "
                f"{sorted(self.__parameters)}; got {sorted(parameters)}."
            )
            raise ValueError(msg)

        new_parameters = {}
        for name, value in self.__parameters.items():
            new_value = asarray(parameters[name], dtype=float).copy()
            if new_value.shape != value.shape:
                msg = (
                    f"The parameter {name!r} must be shaped as {value.shape}; "
                    f"got {new_value.shape}."
                )
                raise ValueError(msg)

            new_parameters[name] = new_value

        self.__parameters = new_parameters

    def copy(self) -> BaseQuantileNetwork:
        """Return a deep copy of the network, e.g. to snapshot a target network.

        Returns:
            The copy.
        """
        return deepcopy(self)

    def _predict(self, inputs: Mapping[str, ArrayLike]) -> RealArray:
        """Evaluate the prediction graph.

        Args:
            inputs: The inputs of the prediction graph.

        Returns:
            The predictions.
        """
        return self.__prediction_graph.forward(inputs, self.__parameters)[
            "predictions"
        ]

    def get_loss_graph(self, kappa: float, normalize: bool = False) -> ComputeGraph:
        """Return the graph computing the loss.

        The loss graph extends the prediction graph
        with the inputs `actions` (one per prediction row),
        `targets` (one row per state) and `taus` (one per prediction row).

        Args:
            kappa: The Huber threshold.
            normalize: Whether to divide the loss of a transition
                by its number of predictions.

        Returns:
            The loss graph.
        """
        key = (kappa, normalize)
        if key not in self.__loss_graphs:
            graph = ComputeGraph(f"{self.__class__.__name__} loss")
            predictions = self._add_predictions(graph)
            actions = graph.add_input("actions", is_integer=True)
            targets = graph.add_input("targets")
            taus = "taus" if "taus" in graph.input_names else graph.add_input("taus")
            selected_predictions = graph.add_operation(
                ElementSelect(), predictions, actions, name="selected_predictions"
            )
            loss = graph.add_operation(
                QuantileHuberLoss(
                    kappa,
                    normalize=normalize,
                    quantile_weighted=self._QUANTILE_WEIGHTED,
                ),
                selected_predictions,
                targets,
                taus,
                name="loss",
            )
            graph.set_output("loss", loss)
            self.__loss_graphs[key] = graph

        return self.__loss_graphs[key]

    def compute_loss(
        self, inputs: Mapping[str, ArrayLike], kappa: float, normalize: bool = False
    ) -> tuple[float, dict[str, ndarray]]:
        """Compute the loss and its gradients with respect to the parameters.

        Args:
            inputs: The inputs of the loss graph.
            kappa: The Huber threshold.
            normalize: Whether to divide the loss of a transition
                by its number of predictions.

        Returns:
            The loss and its gradients.
        """
        graph = self.get_loss_graph(kappa, normalize)
        value = float(graph.forward(inputs, self.__parameters)["loss"])
        return value, graph.backward()

    @abstractmethod
    def create_loss_inputs(
        self,
        states: RealArray,
        actions: IntegerArray,
        targets: RealArray,
        taus: RealArray | None = None,
    ) -> dict[str, ndarray]:
        """Create the inputs of the loss graph.

        Args:
            states: The states shaped as `(batch_size, state_dim)`.
            actions: The played actions shaped as `(batch_size,)`.
            targets: The target returns shaped as `(batch_size, n_targets)`.
            taus: The quantile levels of the predictions
                shaped as `(batch_size, n_predictions)`, if any.

        Returns:
            The inputs of the loss graph.
        """

    @abstractmethod
    def compute_action_values(
        self,
        states: ArrayLike,
        measure: BaseDistortionMeasure,
        n_samples: int,
        rng: Generator,
    ) -> RealArray:
        """Compute the values of the actions used for greedy action selection.

        Args:
            states: The states shaped as `(batch_size, state_dim)`.
            measure: The distortion risk measure.
            n_samples: The number of quantile levels to sample when required.
            rng: The random number generator to sample the quantile levels.

        Returns:
            The action values shaped as `(batch_size, action_count)`.
        """

    def greedy_actions(
        self,
        states: ArrayLike,
        measure: BaseDistortionMeasure,
        n_samples: int,
        rng: Generator,
    ) -> IntegerArray:
        """Return the actions maximizing the action values.

        Ties are broken by the lowest action index.

        Args:
            states: The states shaped as `(batch_size, state_dim)`.
            measure: The distortion risk measure.
            n_samples: The number of quantile levels to sample when required.
            rng: The random number generator to sample the quantile levels.

        Returns:
            The greedy actions shaped as `(batch_size,)`.
        """
        return self.compute_action_values(
            atleast_2d(states), measure, n_samples, rng
        ).argmax(axis=1)

    @abstractmethod
    def _add_predictions(self, graph: ComputeGraph) -> str:
        """Add the nodes computing the predictions to a graph.

        Args:
            graph: The graph.

        Returns:
            The name of the node computing the matrix of predictions.
        """

    def _add_dense(
        self,
        graph: ComputeGraph,
        input_name: str,
        layer_name: str,
        shape: tuple[int, int],
        activation: BasePrimitive | None = None,
        name: str = "",
    ) -> str:
        """Add a dense layer to a graph.

        Args:
            graph: The graph.
            input_name: The name of the input node.
            layer_name: The name of the layer prefixing its parameter names.
            shape: The input and output dimensions of the layer.
            activation: The activation function, if any.
            name: The name of the output node.
                If empty, use a default name.

        Returns:
            The name of the output node.
        """
        weight = graph.add_parameter(f"{layer_name}.weight", shape)
        bias = graph.add_parameter(f"{layer_name}.bias", shape[1:])
        product = graph.add_operation(MatMul(), input_name, weight)
        if activation is None:
            return graph.add_operation(Add(), product, bias, name=name)

        return graph.add_operation(
            activation, graph.add_operation(Add(), product, bias), name=name
        )

    def _add_state_network(self, graph: ComputeGraph, states: str) -> str:
        r"""Add the state network $\psi$ to a graph.

        Args:
            graph: The graph.
            states: The name of the node of the states.

        Returns:
            The name of the node of the state features.
        """
        dimensions = [self.spec.state_dim, *self.spec.psi_hidden, self.spec.feature_dim]
        output = states
        n_layers = len(dimensions) - 1
        for index in range(n_layers):
            output = self._add_dense(
                graph,
                output,
                f"psi.{index}",
                (dimensions[index], dimensions[index + 1]),
                ReLU(),
                name="psi" if index == n_layers - 1 else "",
            )

        return output

    def _add_head(
        self, graph: ComputeGraph, features: str, input_dim: int, output_dim: int
    ) -> str:
        """Add the head $f$ to a graph.

        Args:
            graph: The graph.
            features: The name of the node of the input features.
            input_dim: The dimension of the input features.
            output_dim: The dimension of the output.

        Returns:
            The name of the output node.
        """
        dimensions = [input_dim, *self.spec.head_hidden]
        output = features
        for index in range(len(dimensions) - 1):
            output = self._add_dense(
                graph,
                output,
                f"f.{index}",
                (dimensions[index], dimensions[index + 1]),
                ReLU(),
            )

        return self._add_dense(
            graph, output, "f.output", (dimensions[-1], output_dim), name="head"
        )

    def __str__(self) -> str:
        text = MultiLineString()
        text.add(self.__class__.__name__)
        text.indent()
        for name, value in self.spec.model_dump().items():
            text.add("{}: {}", name, value)

        text.add("Number of parameters: {}", self.parameter_count)
        return str(text)
