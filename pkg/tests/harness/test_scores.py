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
"""Tests for the scores comparing an agent with reference players."""

from __future__ import annotations

import re

import pytest
from numpy.random import default_rng

from gemseo_iqn.harness.scores import ScoreTriple
from gemseo_iqn.harness.scores import human_gap
from gemseo_iqn.harness.scores import human_normalized_score
from gemseo_iqn.harness.scores import wasserstein1

# The raw scores of an agent, a human player and a random player on Atari games.
GAMES = {
    "Alien": (ScoreTriple(7022.0, 7127.7, 227.8), 0.9847),
    "Boxing": (ScoreTriple(99.8, 12.1, 0.1), 8.3083),
    "Breakout": (ScoreTriple(734.0, 30.5, 1.7), 25.4271),
    "Pong": (ScoreTriple(21.0, 14.6, -20.7), 1.1813),
    "Seaquest": (ScoreTriple(30140.0, 42054.7, 68.4), 0.7162),
}


@pytest.mark.parametrize(("scores", "expected"), GAMES.values(), ids=GAMES)
def test_human_normalized_score(scores, expected):
    """Check the human-normalized score on Atari games."""
    score = human_normalized_score(scores)
    assert score == pytest.approx(expected, abs=1e-4)
    assert 0 <= human_gap(score) <= 1


@pytest.mark.parametrize(("scores", "expected"), GAMES.values(), ids=GAMES)
def test_human_normalized_score_references(scores, expected):
    """Check that the reference players have the scores 0 and 1."""
    assert human_normalized_score(
        ScoreTriple(scores.human, scores.human, scores.random)
    ) == pytest.approx(1.0)
    assert (
        human_normalized_score(ScoreTriple(scores.random, scores.human, scores.random))
        == 0.0
    )


def test_human_normalized_score_error():
    """Check that the human and random scores must differ."""
    msg = "The human and random scores must differ to normalize a score; got 2.0"
    with pytest.raises(ValueError, match=re.escape(msg)):
        human_normalized_score(ScoreTriple(1.0, 2.0, 2.0))


@pytest.mark.parametrize(
    ("score", "expected"), [(1.2, 0.0), (1.0, 0.0), (0.3, 0.7), (-0.5, 1.0)]
)
def test_human_gap(score, expected):
    """Check the human gap clipped in [0,1]."""
    assert human_gap(score) == pytest.approx(expected)


@pytest.mark.parametrize(
    ("samples", "other_samples", "expected"),
    [
        ([0.5, 2.0, -1.0], [0.5, 2.0, -1.0], 0.0),
        ([0.0], [3.0], 3.0),
        ([0.0, 1.0], [1.0, 2.0], 1.0),
        ([1.0, 0.0], [2.0, 1.0], 1.0),
        ([0.0, 0.0, 3.0], [1.0, 1.0, 1.0], 5 / 3),
    ],
)
def test_wasserstein1(samples, other_samples, expected):
    """Check the 1-Wasserstein distance between empirical distributions."""
    assert wasserstein1(samples, other_samples) == pytest.approx(expected)


def test_wasserstein1_metric():
    """Check that the 1-Wasserstein distance is a metric."""
    rng = default_rng(1)
    for _ in range(100):
        a, b, c = rng.normal(size=(3, 7)) * rng.uniform(0.1, 10.0, size=(3, 1))
        assert wasserstein1(a, b) >= 0
        assert wasserstein1(a, b) == pytest.approx(wasserstein1(b, a), abs=1e-12)
        assert wasserstein1(a, c) <= wasserstein1(a, b) + wasserstein1(b, c) + 1e-12


@pytest.mark.parametrize(
    ("samples", "other_samples", "msg"),
    [
        (
            [1.0, 2.0],
            [1.0, 2.0, 3.0],
            "The distributions must have the same number of samples; got 2 and 3.",
        ),
        ([], [], "The distributions must have at least one sample."),
    ],
)
def test_wasserstein1_error(samples, other_samples, msg):
    """Check that the distributions must have the same positive number of samples."""
    with pytest.raises(ValueError, match=re.escape(msg)):
        wasserstein1(samples, other_samples)
