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
r"""The network estimating fixed quantiles of the returns.

The return of an action is the uniform mixture of $N$ Diracs
located at the estimated quantiles $\theta_i$ of the levels
$\hat\tau_i=(2i-1)/(2N)$.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from numpy import asarray
from numpy import atleast_2d
from numpy import ceil
from numpy import clip
from numpy import einsum
from numpy import repeat
from numpy import sort
from numpy import take_along_axis
from numpy import tile

from gemseo_iqn.autodiff.primitives.structural import Reshape
from gemseo_iqn.distortion.expectation import compute_quantile_weights
from gemseo_iqn.losses.qr_loss import qr_midpoints
from gemseo_iqn.networks.base_quantile_network import BaseQuantileNetwork

if TYPE_CHECKING:
    from numpy import ndarray
    from numpy.random import Generator
    from numpy.typing import ArrayLike

    from gemseo.typing import IntegerArray
    from gemseo.typing import RealArray
    from gemseo_iqn.autodiff.graph import ComputeGraph
    from gemseo_iqn.distortion.measures.base_distortion_measure import (
        BaseDistortionMeasure,
    )
    from gemseo_iqn.networks.architecture_settings import ArchitectureSpec


class QrNetwork(BaseQuantileNetwork):
    """The network estimating fixed quantiles of the returns.

    The embedding and the merge of the architecture are ignored:
    the head maps the state features to the quantiles of all the actions.
    """

    n_quantiles: int
    """The number of quantiles."""

    taus: RealArray
    """The quantile levels."""

    def __init__(
        self,
        spec: ArchitectureSpec,
        n_quantiles: int = 32,
        rng: Generator | None = None,
    ) -> None:
        """
        Args:
            n_quantiles: The number of quantiles.

        Raises:
            ValueError: When the number of quantiles is lower than 1.
        """  # noqa: D205 D212 D415
        self.taus = qr_midpoints(n_quantiles)
        self.n_quantiles = n_quantiles
        super().__init__(spec, rng=rng)

    def _add_predictions(self, graph: ComputeGraph) -> str:
        states = graph.add_input("states")
        head = self._add_head(
            graph,
            self._add_state_network(graph, states),
            self.spec.feature_dim,
            self.n_quantiles * self.spec.action_count,
        )
        return graph.add_operation(
            Reshape((-1, self.spec.action_count)), head, name="predictions"
        )

    def forward(self, states: ArrayLike) -> RealArray:
        """Estimate the quantiles of the returns of the actions.

        Args:
            states: The states shaped as `(batch_size, state_dim)`.

        Returns:
            The quantiles shaped as `(batch_size, n_quantiles, action_count)`.
        """
        states = atleast_2d(asarray(states, dtype=float))
        return self._predict({"states": states}).reshape(
            len(states), self.n_quantiles, self.spec.action_count
        )

    def create_loss_inputs(  # noqa: D102
        self,
        states: RealArray,
        actions: IntegerArray,
        targets: RealArray,
        taus: RealArray | None = None,
    ) -> dict[str, ndarray]:
        states = atleast_2d(asarray(states, dtype=float))
        return {
            "states": states,
            "actions": repeat(asarray(actions), self.n_quantiles),
            "targets": asarray(targets, dtype=float),
            "taus": tile(self.taus, len(states)),
        }

    def compute_action_values(  # noqa: D102
        self,
        states: ArrayLike,
        measure: BaseDistortionMeasure,
        n_samples: int,
        rng: Generator,
    ) -> RealArray:
        quantiles = sort(self.forward(states), axis=1)
        if measure.is_pointwise:
            return einsum(
                "bna,n->ba",
                quantiles,
                compute_quantile_weights(self.n_quantiles, measure),
            )

        taus = measure.sample(rng, (len(quantiles), n_samples))
        indices = clip(
            ceil(taus * self.n_quantiles).astype(int) - 1, 0, self.n_quantiles - 1
        )
        return take_along_axis(quantiles, indices[:, :, None], axis=1).mean(axis=1)
