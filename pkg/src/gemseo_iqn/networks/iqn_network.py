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
r"""The implicit quantile network.

The network approximates the quantile function of the return
$Z_\tau(x,a)\approx f(m(\psi(x),\phi(\tau)))_a$ at any quantile level $\tau$.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from numpy import arange
from numpy import asarray
from numpy import atleast_2d
from numpy import cos
from numpy import newaxis
from numpy import pi
from numpy import repeat
from numpy import tile

from gemseo_iqn.autodiff.graph import ComputeGraph
from gemseo_iqn.autodiff.primitives.elementwise import Add
from gemseo_iqn.autodiff.primitives.elementwise import Cosine
from gemseo_iqn.autodiff.primitives.elementwise import Hadamard
from gemseo_iqn.autodiff.primitives.elementwise import ReLU
from gemseo_iqn.autodiff.primitives.elementwise import Sigmoid
from gemseo_iqn.autodiff.primitives.structural import Concatenate
from gemseo_iqn.autodiff.primitives.structural import MatMul
from gemseo_iqn.autodiff.primitives.structural import Reshape
from gemseo_iqn.autodiff.primitives.structural import TakeRows
from gemseo_iqn.networks.architecture_settings import Embedding
from gemseo_iqn.networks.architecture_settings import Merge
from gemseo_iqn.networks.architecture_settings import Nonlinearity
from gemseo_iqn.networks.base_quantile_network import BaseQuantileNetwork

if TYPE_CHECKING:
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


def compute_cosine_features(taus: ArrayLike, embedding_dim: int) -> RealArray:
    r"""Compute the cosine features $\cos(\pi i\tau)$, $i=0,\ldots,n-1$.

    Args:
        taus: The quantile levels.
        embedding_dim: The number $n$ of features.

    Returns:
        The features shaped as `(n_taus, embedding_dim)`.
    """
    taus = asarray(taus, dtype=float).reshape(-1, 1)
    return cos(taus @ (pi * arange(embedding_dim))[newaxis])


class IqnNetwork(BaseQuantileNetwork):
    r"""The implicit quantile network.

    The rows of the prediction matrix are the pairs (state, quantile level):
    the prediction graph takes the states shaped as `(B, state_dim)`,
    the quantile levels `taus` shaped as `(R,)`
    and the integer vector `rows` of length `R`
    indicating the state of each quantile level.
    """

    __embedding_graph: ComputeGraph
    """The graph computing the embedding of the quantile levels."""

    def __init__(  # noqa: D107
        self, spec: ArchitectureSpec, rng: Generator | None = None
    ) -> None:
        super().__init__(spec, rng=rng)
        self.__embedding_graph = ComputeGraph("embedding")
        taus = self.__embedding_graph.add_input("taus")
        self.__embedding_graph.set_output(
            "embedding", self.__add_embedding(self.__embedding_graph, taus)
        )

    def __create_activation(self) -> BasePrimitive:
        """Return the activation function of the embedding."""
        if self.spec.nonlinearity == Nonlinearity.SIGMOID:
            return Sigmoid()

        return ReLU()

    def __add_embedding(self, graph: ComputeGraph, taus: str) -> str:
        r"""Add the embedding $\phi$ of the quantile levels to a graph.

        Args:
            graph: The graph.
            taus: The name of the node of the quantile levels shaped as `(R,)`.

        Returns:
            The name of the node of the embedding shaped as `(R, feature_dim)`.
        """
        spec = self.spec
        features = graph.add_operation(Reshape((-1, 1)), taus, name="tau_column")
        input_dim = spec.embedding_dim
        if spec.embedding == Embedding.COSINE:
            frequencies = graph.add_constant(
                "phi.frequencies", (pi * arange(spec.embedding_dim))[newaxis]
            )
            features = graph.add_operation(
                Cosine(),
                graph.add_operation(MatMul(), features, frequencies),
                name="cosine_features",
            )
        elif spec.embedding == Embedding.MLP:
            features = self._add_dense(
                graph,
                features,
                "phi.hidden",
                (1, spec.embedding_dim),
                self.__create_activation(),
            )
        else:
            input_dim = 1

        return self._add_dense(
            graph,
            features,
            "phi",
            (input_dim, spec.feature_dim),
            self.__create_activation(),
            name="phi",
        )

    def _add_predictions(self, graph: ComputeGraph) -> str:
        states = graph.add_input("states")
        taus = graph.add_input("taus")
        rows = graph.add_input("rows", is_integer=True)
        psi = graph.add_operation(
            TakeRows(), self._add_state_network(graph, states), rows, name="psi_rows"
        )
        phi = self.__add_embedding(graph, taus)
        if self.spec.merge == Merge.HADAMARD:
            merged = graph.add_operation(Hadamard(), psi, phi, name="merged")
        elif self.spec.merge == Merge.RESIDUAL:
            merged = graph.add_operation(
                Add(), psi, graph.add_operation(Hadamard(), psi, phi), name="merged"
            )
        else:
            merged = graph.add_operation(Concatenate(), psi, phi, name="merged")

        return self._add_head(
            graph, merged, self.spec.head_input_dim, self.spec.action_count
        )

    @staticmethod
    def __check_taus(taus: ArrayLike) -> RealArray:
        """Check that the quantile levels are in $[0,1]$.

        Args:
            taus: The quantile levels.

        Returns:
            The quantile levels as an array.

        Raises:
            ValueError: When a quantile level is not in $[0,1]$.
        """
        taus = asarray(taus, dtype=float)
        if not ((taus >= 0) & (taus <= 1)).all():
            msg = "The quantile levels must be in [0,1]."
            raise ValueError(msg)

        return taus

    def embed_tau(self, taus: ArrayLike) -> RealArray:
        """Embed quantile levels.

        Args:
            taus: The quantile levels in $[0,1]$.

        Returns:
            The embedding shaped as `(n_taus, feature_dim)`.

        Raises:
            ValueError: When a quantile level is not in $[0,1]$.
        """
        taus = self.__check_taus(taus).ravel()
        return self.__embedding_graph.forward({"taus": taus}, self.parameters)[
            "embedding"
        ]

    def __create_prediction_inputs(
        self, states: ArrayLike, taus: ArrayLike
    ) -> dict[str, ndarray]:
        """Create the inputs of the prediction graph.

        Args:
            states: The states shaped as `(batch_size, state_dim)`.
            taus: The quantile levels shaped as `(n_taus,)`, shared by the states,
                or as `(batch_size, n_taus)`.

        Returns:
            The inputs of the prediction graph.

        Raises:
            ValueError: When the quantile levels are not in $[0,1]$
                or are not consistent with the states.
        """
        states = atleast_2d(asarray(states, dtype=float))
        batch_size = len(states)
        taus = self.__check_taus(taus)
        if taus.ndim == 1:
            taus = tile(taus, (batch_size, 1))

        if taus.ndim != 2 or len(taus) != batch_size:
            msg = (
                "The quantile levels must be shaped as (n_taus,) "
                f"or ({batch_size}, n_taus); got {taus.shape}."
            )
            raise ValueError(msg)

        return {
            "states": states,
            "taus": taus.ravel(),
            "rows": repeat(arange(batch_size), taus.shape[1]),
        }

    def forward(self, states: ArrayLike, taus: ArrayLike) -> RealArray:
        """Estimate the quantiles of the returns of the actions.

        Args:
            states: The states shaped as `(batch_size, state_dim)`.
            taus: The quantile levels shaped as `(n_taus,)`, shared by the states,
                or as `(batch_size, n_taus)`.

        Returns:
            The quantiles shaped as `(batch_size, n_taus, action_count)`.

        Raises:
            ValueError: When the quantile levels are not in $[0,1]$
                or are not consistent with the states.
        """
        inputs = self.__create_prediction_inputs(states, taus)
        batch_size = len(inputs["states"])
        return self._predict(inputs).reshape(batch_size, -1, self.spec.action_count)

    def create_loss_inputs(  # noqa: D102
        self,
        states: RealArray,
        actions: IntegerArray,
        targets: RealArray,
        taus: RealArray | None = None,
    ) -> dict[str, ndarray]:
        if taus is None:
            msg = "The quantile levels of the predictions are required."
            raise ValueError(msg)

        inputs = self.__create_prediction_inputs(states, taus)
        inputs["actions"] = repeat(asarray(actions), asarray(taus).shape[-1])
        inputs["targets"] = asarray(targets, dtype=float)
        return inputs

    def compute_action_values(  # noqa: D102
        self,
        states: ArrayLike,
        measure: BaseDistortionMeasure,
        n_samples: int,
        rng: Generator,
    ) -> RealArray:
        states = atleast_2d(asarray(states, dtype=float))
        taus = measure.sample(rng, (len(states), n_samples))
        return self.forward(states, taus).mean(axis=1)

    def q_beta_estimate(
        self,
        state: ArrayLike,
        measure: BaseDistortionMeasure,
        n_samples: int,
        rng: Generator,
    ) -> RealArray:
        r"""Estimate the distorted expectations of the returns of the actions.

        This is the mean of $Z_{\tilde\tau_k}(x,a)$
        over $K$ quantile levels $\tilde\tau_k$ sampled from the measure.

        Args:
            state: The state.
            measure: The distortion risk measure.
            n_samples: The number $K$ of quantile levels.
            rng: The random number generator to sample the quantile levels.

        Returns:
            The distorted expectations shaped as `(action_count,)`.
        """
        return self.compute_action_values(
            asarray(state, dtype=float).reshape(1, -1), measure, n_samples, rng
        )[0]
