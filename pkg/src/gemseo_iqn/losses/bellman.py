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
"""The Bellman targets of a batch of transitions."""

from __future__ import annotations

from typing import TYPE_CHECKING

from numpy import asarray

if TYPE_CHECKING:
    from gemseo.typing import RealArray
    from gemseo_iqn.agent.transitions import TransitionBatch


def check_batch(batch: TransitionBatch) -> None:
    """Check that a batch of transitions is not empty.

    Args:
        batch: The batch of transitions.

    Raises:
        ValueError: When the batch is empty.
    """
    if len(batch) == 0:
        msg = "The batch of transitions is empty."
        raise ValueError(msg)


def compute_bellman_targets(
    batch: TransitionBatch, next_returns: RealArray, gamma: float
) -> RealArray:
    r"""Compute the Bellman targets $r+\gamma z'$.

    The target of a transition reaching a terminal state is the reward.

    Args:
        batch: The batch of transitions.
        next_returns: The returns $z'$ from the next states
            shaped as `(batch_size, n_targets)`.
        gamma: The discount.

    Returns:
        The targets shaped as `(batch_size, n_targets)`.
    """
    discounts = gamma * (1.0 - asarray(batch.terminals, dtype=float))
    return batch.rewards[:, None] + discounts[:, None] * next_returns
