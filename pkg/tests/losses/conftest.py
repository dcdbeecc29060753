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
"""Fixtures for the tests of the losses."""

from __future__ import annotations

import pytest
from numpy import array

from gemseo_iqn.agent.transitions import TransitionBatch
from gemseo_iqn.networks.architecture_settings import ArchitectureSpec


@pytest.fixture(scope="module")
def spec() -> ArchitectureSpec:
    """A small architecture with two actions."""
    return ArchitectureSpec(
        state_dim=2, action_count=2, psi_hidden=(5,), feature_dim=4, embedding_dim=6
    )


@pytest.fixture
def batch() -> TransitionBatch:
    """A batch of three transitions, the last one reaching a terminal state."""
    return TransitionBatch(
        array([[0.5, -1.0], [2.0, 0.3], [-0.7, 0.1]]),
        array([1, 0, 1]),
        array([1.0, -0.5, 2.0]),
        array([[0.1, 0.2], [-1.0, 1.5], [0.0, 0.0]]),
        array([False, False, True]),
    )


@pytest.fixture
def single_batch() -> TransitionBatch:
    """A single non-terminal transition with reward 1."""
    return TransitionBatch(
        array([[0.5, -1.0]]),
        array([0]),
        array([1.0]),
        array([[0.1, 0.2]]),
        array([False]),
    )


@pytest.fixture
def empty_batch() -> TransitionBatch:
    """An empty batch of transitions."""
    return TransitionBatch(
        array([]).reshape(0, 2),
        array([], dtype=int),
        array([]),
        array([]).reshape(0, 2),
        array([], dtype=bool),
    )
