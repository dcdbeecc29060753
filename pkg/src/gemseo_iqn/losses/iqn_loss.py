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
r"""The loss of the implicit quantile network.

For a transition $(x,a,r,x')$,
$N$ quantile levels $\tau_i$ and $N'$ quantile levels $\tau'_j$
are sampled uniformly and independently,
the greedy action $a^*$ maximizes the mean of $Z_{\tilde\tau_k}(x',\cdot)$
over $K$ quantile levels $\tilde\tau_k$ sampled from the policy measure
and the loss is
$\sum_{i=1}^N\frac{1}{N'}\sum_{j=1}^{N'}\rho^\kappa_{\tau_i}(\delta_{ij})$
with $\delta_{ij}=r+\gamma Z_{\tau'_j}(x',a^*)-Z_{\tau_i}(x,a)$.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from numpy import arange
from numpy import asarray
from numpy import broadcast_to

from gemseo_iqn.distortion.factory import parse_measure
from gemseo_iqn.losses.bellman import check_batch
from gemseo_iqn.losses.bellman import compute_bellman_targets
from gemseo_iqn.losses.loss_result import LossResult
from gemseo_iqn.losses.loss_result import TdErrorMatrix

if TYPE_CHECKING:
    from numpy.random import Generator
    from numpy.typing import ArrayLike

    from gemseo.typing import RealArray
    from gemseo_iqn.agent.transitions import TransitionBatch
    from gemseo_iqn.losses.loss_settings import LossConfig
    from gemseo_iqn.networks.iqn_network import IqnNetwork


def _get_taus(
    taus: ArrayLike | None, batch_size: int, n_taus: int, rng: Generator
) -> RealArray:
    """Return the quantile levels of the transitions.

    Args:
        taus: The quantile levels shaped as `(n_taus,)`, shared by the transitions,
            or as `(batch_size, n_taus)`.
            If `None`, sample them uniformly.
        batch_size: The number of transitions.
        n_taus: The number of quantile levels per transition.
        rng: The random number generator.

    Returns:
        The quantile levels shaped as `(batch_size, n_taus)`.
    """
    if taus is None:
        return rng.random((batch_size, n_taus))

    taus = asarray(taus, dtype=float)
    return broadcast_to(taus, (batch_size, taus.shape[-1])).copy()


def iqn_loss(
    online: IqnNetwork,
    target: IqnNetwork,
    batch: TransitionBatch,
    config: LossConfig,
    rng: Generator,
    online_taus: ArrayLike | None = None,
    target_taus: ArrayLike | None = None,
) -> LossResult:
    """Compute the loss of the implicit quantile network.

    Args:
        online: The online network.
        target: The target network.
        batch: The batch of transitions.
        config: The settings of the loss.
        rng: The random number generator to sample the quantile levels.
        online_taus: The quantile levels of the online network
            shaped as `(n_online,)` or `(batch_size, n_online)`.
            If `None`, sample `config.n_online` levels per transition.
        target_taus: The quantile levels of the target network
            shaped as `(n_target,)` or `(batch_size, n_target)`.
            If `None`, sample `config.n_target` levels per transition.

    Returns:
        The loss, its gradients with respect to the online parameters
        and the sampled temporal difference errors.

    Raises:
        ValueError: When the batch is empty.
    """
    check_batch(batch)
    batch_size = len(batch)
    online_taus = _get_taus(online_taus, batch_size, config.n_online, rng)
    target_taus = _get_taus(target_taus, batch_size, config.n_target, rng)
    measure = parse_measure(config.policy_measure)
    next_actions = target.greedy_actions(
        batch.next_states, measure, config.k_policy, rng
    )
    next_quantiles = target.forward(batch.next_states, target_taus)[
        arange(batch_size), :, next_actions
    ]
    targets = compute_bellman_targets(batch, next_quantiles, config.gamma)
    inputs = online.create_loss_inputs(
        batch.states, batch.actions, targets, online_taus
    )
    value, gradients = online.compute_loss(
        inputs, config.kappa, config.normalize_by_n_online
    )
    predictions = (
        online.get_loss_graph(config.kappa, config.normalize_by_n_online)
        .get_value("selected_predictions")
        .reshape(batch_size, -1)
    )
    return LossResult(
        value,
        gradients,
        TdErrorMatrix(
            targets[:, None, :] - predictions[:, :, None], online_taus, target_taus
        ),
        inputs,
    )
