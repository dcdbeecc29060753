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
r"""The Huber loss of the temporal difference errors of the expected returns.

The error of a transition is $\delta=r+\gamma\max_{a'}Q'(x',a')-Q(x,a)$
where $Q'$ is the target network.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from numpy import full

from gemseo_iqn.losses.bellman import check_batch
from gemseo_iqn.losses.bellman import compute_bellman_targets
from gemseo_iqn.losses.loss_result import LossResult
from gemseo_iqn.losses.loss_result import TdErrorMatrix

if TYPE_CHECKING:
    from gemseo_iqn.agent.transitions import TransitionBatch
    from gemseo_iqn.losses.loss_settings import LossConfig
    from gemseo_iqn.networks.dqn_network import DqnNetwork


def dqn_loss(
    online: DqnNetwork,
    target: DqnNetwork,
    batch: TransitionBatch,
    config: LossConfig,
) -> LossResult:
    """Compute the mean over a batch of the Huber function of the errors.

    Args:
        online: The online network.
        target: The target network.
        batch: The batch of transitions.
        config: The settings of the loss.

    Returns:
        The loss, its gradients with respect to the online parameters
        and the errors.

    Raises:
        ValueError: When the batch is empty.
    """
    check_batch(batch)
    batch_size = len(batch)
    next_values = target.forward(batch.next_states).max(axis=1, keepdims=True)
    targets = compute_bellman_targets(batch, next_values, config.gamma)
    inputs = online.create_loss_inputs(batch.states, batch.actions, targets)
    value, gradients = online.compute_loss(inputs, config.kappa)
    predictions = online.get_loss_graph(config.kappa).get_value(
        "selected_predictions"
    )
    taus = full((batch_size, 1), 0.5)
    return LossResult(
        value,
        gradients,
        TdErrorMatrix(targets[:, None, :] - predictions[:, None, None], taus, taus),
        inputs,
    )
