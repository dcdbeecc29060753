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
"""The oracles of the return distributions of the environments."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

from numpy import array
from numpy import asarray
from numpy import cumsum

from gemseo_iqn.distortion.return_quantiles import ReturnQuantiles

if TYPE_CHECKING:
    from collections.abc import Callable

    from numpy.random import Generator
    from numpy.typing import ArrayLike

    from gemseo.typing import RealArray
    from gemseo_iqn.envlab.environments.base_environment import BaseEnvironment
    from gemseo_iqn.envlab.environments.known_bandit import KnownBandit

    Policy = Callable[[RealArray], int]

LOGGER = logging.getLogger(__name__)


def create_tabular_policy(actions: ArrayLike) -> Policy:
    """Create a policy from one action per one-hot encoded state.

    Args:
        actions: The action per state.

    Returns:
        The policy mapping a one-hot encoded state to its action.
    """
    actions = asarray(actions, dtype=int)

    def policy(state: RealArray) -> int:
        return int(actions[state.argmax()])

    return policy


def analytic_quantiles(
    bandit: KnownBandit, arm: int, taus: ArrayLike
) -> ReturnQuantiles:
    r"""Compute the exact quantiles of the reward of an arm.

    The quantile at level $\tau$ is $F^{-1}(\tau)=\min\{z:F(z)\geq\tau\}$.

    Args:
        bandit: The bandit.
        arm: The arm.
        taus: The non-decreasing quantile levels in $[0,1]$.

    Returns:
        The quantiles.

    Raises:
        ValueError: When the arm does not exist
            or when a quantile level is not in $[0,1]$.
    """
    if not 0 <= arm < bandit.action_count:
        msg = f"The arm must be in [0, {bandit.action_count}); got {arm}."
        raise ValueError(msg)

    taus = asarray(taus, dtype=float)
    if ((taus < 0) | (taus > 1)).any():
        msg = "The quantile levels must be in [0,1]."
        raise ValueError(msg)

    values, probabilities = array(sorted(bandit.arms[arm])).T
    cumulative_probabilities = cumsum(probabilities)
    indices = cumulative_probabilities.searchsorted(taus, "left").clip(
        max=len(values) - 1
    )
    return ReturnQuantiles(values[indices], taus)


def sample_returns(
    environment: BaseEnvironment,
    policy: Policy,
    gamma: float,
    n_episodes: int,
) -> RealArray:
    r"""Sample the discounted returns $\sum_t\gamma^t r_t$ of a policy.

    Args:
        environment: The environment.
        policy: The policy mapping a state to an action.
        gamma: The discount.
        n_episodes: The number of episodes.

    Returns:
        The returns of the episodes.

    Raises:
        ValueError: When the number of episodes is lower than 1.
    """
    if n_episodes < 1:
        msg = f"The number of episodes must be at least 1; got {n_episodes}."
        raise ValueError(msg)

    returns = []
    for _ in range(n_episodes):
        state = environment.reset()
        episode_return = 0.0
        discount = 1.0
        done = False
        while not done:
            result = environment.step(policy(state))
            episode_return += discount * result.reward
            discount *= gamma
            state = result.next_state
            done = result.done

        returns.append(episode_return)

    return array(returns)


def mc_return_quantiles(
    environment: BaseEnvironment,
    policy: Policy,
    gamma: float,
    n_episodes: int,
    taus: ArrayLike,
    rng: Generator | None = None,
) -> ReturnQuantiles:
    """Estimate the quantiles of the discounted return from the initial state.

    The episodes stop at the step limit of the environment.

    Args:
        environment: The environment.
        policy: The policy mapping a state to an action.
        gamma: The discount.
        n_episodes: The number of episodes.
        taus: The non-decreasing quantile levels in $[0,1]$.
        rng: The random number generator of the transitions.
            If `None`, use the one of the environment.

    Returns:
        The empirical quantiles of the returns.

    Raises:
        ValueError: When the number of episodes is lower than 1.
    """
    if rng is not None:
        environment.rng = rng

    LOGGER.debug("Sample %s episodes of %s.", n_episodes, environment)
    return ReturnQuantiles.from_samples(
        sample_returns(environment, policy, gamma, n_episodes), taus
    )
