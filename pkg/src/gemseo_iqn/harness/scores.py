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
r"""Scores comparing an agent with reference players.

The human-normalized score of an agent is
$\frac{\text{agent}-\text{random}}{\text{human}-\text{random}}$
and its human gap is $\min(\max(1-\text{score},0),1)$.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from numpy import abs as np_abs
from numpy import asarray
from numpy import sort

if TYPE_CHECKING:
    from numpy.typing import ArrayLike


@dataclass(frozen=True)
class ScoreTriple:
    """The raw scores of an agent and of two reference players."""

    agent: float
    """The score of the agent."""

    human: float
    """The score of a human player."""

    random: float
    """The score of a uniformly random player."""


def human_normalized_score(scores: ScoreTriple) -> float:
    """Normalize the score of an agent by the scores of the reference players.

    Args:
        scores: The raw scores.

    Returns:
        The human-normalized score: 0 for the random player and 1 for the human one.

    Raises:
        ValueError: When the human and random scores are equal.
    """
    if scores.human == scores.random:
        msg = (
            "The human and random scores must differ "
            f"to normalize a score; got {scores.human} for both."
        )
        raise ValueError(msg)

    return (scores.agent - scores.random) / (scores.human - scores.random)


def human_gap(score: float) -> float:
    """Compute the gap between an agent and a human player.

    Args:
        score: The human-normalized score of the agent.

    Returns:
        The gap in $[0,1]$, zero for super-human agents.
    """
    return min(max(1.0 - score, 0.0), 1.0)


def wasserstein1(samples: ArrayLike, other_samples: ArrayLike) -> float:
    """Compute the 1-Wasserstein distance between two empirical distributions.

    The distributions weight their samples equally.

    Args:
        samples: The samples of the first distribution.
        other_samples: The samples of the second distribution.

    Returns:
        The mean absolute difference of the sorted samples.

    Raises:
        ValueError: When the numbers of samples differ or are zero.
    """
    samples = asarray(samples, dtype=float).ravel()
    other_samples = asarray(other_samples, dtype=float).ravel()
    if samples.size != other_samples.size:
        msg = (
            "The distributions must have the same number of samples; "
            f"got {samples.size} and {other_samples.size}."
        )
        raise ValueError(msg)

    if not samples.size:
        msg = "The distributions must have at least one sample."
        raise ValueError(msg)

    return float(np_abs(sort(samples) - sort(other_samples)).mean())
