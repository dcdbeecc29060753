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
r"""The quantile regression loss of the network estimating fixed quantiles.

The pairwise errors $\delta_{ij}=r+\gamma\theta_j(x',a^*)-\theta_i(x,a)$
involve the $N$ quantiles estimated at the midpoints $\hat\tau_i$
by the online network and by the target network.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from gemseo.utils.seeder import SEED
from numpy import arange
from numpy import tile
from numpy.random import default_rng

from gemseo_iqn.distortion.factory import parse_measure
from gemseo_iqn.losses.bellman import check_batch
from gemseo_iqn.losses.bellman import compute_bellman_targets
from gemseo_iqn.losses.loss_result import LossResult
from gemseo_iqn.losses.loss_result import TdErrorMatrix

if TYPE_CHECKING:
    from numpy.random import Generator

    from gemseo.typing import RealArray
    from gemseo_iqn.agent.transitions import TransitionBatch
    from gemseo_iqn.losses.loss_settings import LossConfig
    from gemseo_iqn.networks.qr_network import QrNetwork


def qr_midpoints(n_quantiles: int) -> RealArray:
    r"""Return the midpoints $\hat\tau_i=(2i-1)/(2N)$ of the quantile levels $i/N$.

    Args:
        n_quantiles: The number $N$ of quantiles.

    Returns:
        The midpoints.

    Raises:
        ValueError: When the number of quantiles is lower than 1.
    """
    if n_quantiles < 1:
        msg = f"The number of quantiles must be at least 1; got {n_quantiles}."
        raise ValueError(msg)

    return (2 * arange(n_quantiles) + 1) / (2 * n_quantiles)


def qr_loss(
    online: QrNetwork,
    target: QrNetwork,
    batch: TransitionBatch,
    config: LossConfig,
    rng: Generator | None = None,
) -> LossResult:
    """Compute the quantile regression loss of a batch of transitions.

    The loss of a transition is
    the sum over the online quantiles of the mean over the target quantiles
    of the Huber quantile losses of the pairwise errors;
    the loss of the batch is the mean of the losses of the transitions.
    The greedy action in the next state maximizes the distorted expectation
    of the target quantiles for the policy measure.

    Args:
        online: The online network.
        target: The target network.
        batch: The batch of transitions.
        config: The settings of the loss.
        rng: The random number generator
            used when the policy measure is a sampling-only measure.
            If `None`, use a generator seeded with the default seed.

    Returns:
        The loss, its gradients with respect to the online parameters
        and the pairwise errors.

    Raises:
        ValueError: When the batch is empty.
    """
    check_batch(batch)
    rng = default_rng(SEED) if rng is None else rng
    batch_size = len(batch)
    measure = parse_measure(config.policy_measure)
    next_actions = target.greedy_actions(
        batch.next_states, measure, config.k_policy, rng
    )
    next_quantiles = target.forward(batch.next_states)[
        arange(batch_size), :, next_actions
    ]
    targets = compute_bellman_targets(batch, next_quantiles, config.gamma)
    inputs = online.create_loss_inputs(batch.states, batch.actions, targets)
    value, gradients = online.compute_loss(
        inputs, config.kappa, config.normalize_by_n_online
    )
    predictions = (
        online.get_loss_graph(config.kappa, config.normalize_by_n_online)
        .get_value("selected_predictions")
        .reshape(batch_size, -1)
    )
    taus = tile(online.taus, (batch_size, 1))
    return LossResult(
        value,
        gradients,
        TdErrorMatrix(targets[:, None, :] - predictions[:, :, None], taus, taus),
        inputs,
    )
