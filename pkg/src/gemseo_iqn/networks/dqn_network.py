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
r"""The network estimating the expected returns $Q(x,a)\approx f(\psi(x))_a$."""

from __future__ import annotations

from typing import TYPE_CHECKING
from typing import ClassVar

from numpy import asarray
from numpy import atleast_2d
from numpy import full

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


class DqnNetwork(BaseQuantileNetwork):
    """The network estimating the expected returns.

    The embedding and the merge of the architecture are ignored.
    The loss is the Huber function of the temporal difference errors.
    """

    _QUANTILE_WEIGHTED: ClassVar[bool] = False

    def _add_predictions(self, graph: ComputeGraph) -> str:
        states = graph.add_input("states")
        return self._add_head(
            graph,
            self._add_state_network(graph, states),
            self.spec.feature_dim,
            self.spec.action_count,
        )

    def forward(self, states: ArrayLike) -> RealArray:
        """Estimate the expected returns of the actions.

        Args:
            states: The states shaped as `(batch_size, state_dim)`.

        Returns:
            The expected returns shaped as `(batch_size, action_count)`.
        """
        return self._predict({"states": atleast_2d(asarray(states, dtype=float))})

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
            "actions": asarray(actions),
            "targets": asarray(targets, dtype=float).reshape(len(states), -1),
            "taus": full(len(states), 0.5),
        }

    def compute_action_values(  # noqa: D102
        self,
        states: ArrayLike,
        measure: BaseDistortionMeasure,
        n_samples: int,
        rng: Generator,
    ) -> RealArray:
        return self.forward(states)
