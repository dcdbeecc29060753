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
"""Tests for ReplayBuffer."""

from __future__ import annotations

import re

import pytest
from numpy import bincount
from numpy import full
from numpy import sqrt
from numpy.random import default_rng
from numpy.testing import assert_equal

from gemseo_iqn.agent.replay_buffer import ReplayBuffer
from gemseo_iqn.agent.transitions import Transition
from gemseo_iqn.agent.transitions import TransitionBatch


def create_transition(index: int) -> Transition:
    """Create a transition identified by its reward."""
    return Transition(full(2, index), index % 3, float(index), full(2, -index), False)


def test_add():
    """Check the contents of a buffer filled below its capacity."""
    buffer = ReplayBuffer(5)
    for index in range(3):
        buffer.add(create_transition(index))

    assert len(buffer) == 3
    contents = buffer.get_contents()
    assert_equal(contents.rewards, [0.0, 1.0, 2.0])
    assert_equal(contents.actions, [0, 1, 2])
    assert_equal(contents.states[:, 0], [0.0, 1.0, 2.0])
    assert_equal(contents.next_states[:, 0], [0.0, -1.0, -2.0])


def test_eviction():
    """Check that the oldest transitions are evicted first."""
    buffer = ReplayBuffer(4)
    for index in range(7):
        buffer.add(create_transition(index))

    assert len(buffer) == 4
    assert buffer.insertion_count == 7
    assert_equal(buffer.get_contents().rewards, [3.0, 4.0, 5.0, 6.0])


def test_uniform_sampling():
    """Check that the slots of a full buffer are sampled uniformly."""
    buffer = ReplayBuffer(10)
    for index in range(10):
        buffer.add(create_transition(index))

    n_draws = 100000
    counts = bincount(buffer.sample_indices(n_draws, default_rng(1)), minlength=10)
    expected = n_draws / 10
    assert (abs(counts - expected) < 5 * sqrt(expected * 0.9)).all()


def test_sample():
    """Check that a sample is a batch of stored transitions."""
    buffer = ReplayBuffer(3)
    for index in range(5):
        buffer.add(create_transition(index))

    batch = buffer.sample(50, default_rng(2))
    assert isinstance(batch, TransitionBatch)
    assert len(batch) == 50
    assert set(batch.rewards) == {2.0, 3.0, 4.0}
    assert_equal(batch.states[:, 0], batch.rewards)
    assert not batch.terminals.any()


def test_empty():
    """Check that an empty buffer cannot be sampled."""
    with pytest.raises(ValueError, match=re.escape("The replay buffer is empty.")):
        ReplayBuffer(2).sample(1, default_rng())


def test_capacity():
    """Check that the capacity must be positive."""
    msg = "The capacity of the replay buffer must be at least 1; got 0."
    with pytest.raises(ValueError, match=re.escape(msg)):
        ReplayBuffer(0)


def test_state_shape():
    """Check that the states must keep the same dimension."""
    buffer = ReplayBuffer(2)
    buffer.add(create_transition(0))
    msg = "The states must be shaped as (2,); got (3,) and (2,)."
    with pytest.raises(ValueError, match=re.escape(msg)):
        buffer.add(Transition(full(3, 1.0), 0, 0.0, full(2, 1.0), True))


def test_from_transitions():
    """Check the stacking of transitions."""
    transitions = [create_transition(1), create_transition(2)]
    batch = TransitionBatch.from_transitions(transitions)
    assert_equal(batch.actions, [1, 2])
    assert batch.states.shape == (2, 2)
    msg = "The batch of transitions is empty."
    with pytest.raises(ValueError, match=re.escape(msg)):
        TransitionBatch.from_transitions([])
