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
"""Tests for the oracles of the return distributions."""

from __future__ import annotations

import re

import pytest
from numpy import array
from numpy import linspace
from numpy.random import default_rng
from numpy.testing import assert_allclose
from numpy.testing import assert_equal

from gemseo_iqn.envlab.environments.chain_mdp import ChainMDP
from gemseo_iqn.envlab.environments.cliff_grid import CliffGrid
from gemseo_iqn.envlab.environments.cliff_grid import safe_path_policy
from gemseo_iqn.envlab.environments.known_bandit import KnownBandit
from gemseo_iqn.envlab.oracles import analytic_quantiles
from gemseo_iqn.envlab.oracles import create_tabular_policy
from gemseo_iqn.envlab.oracles import mc_return_quantiles
from gemseo_iqn.envlab.oracles import sample_returns


@pytest.mark.parametrize(
    ("arm", "taus", "expected"),
    [
        (1, [0.0, 0.3, 0.45, 0.5, 1.0], [0.0, 0.0, 0.0, 1.0, 1.0]),
        (0, [0.0, 0.2, 0.9, 1.0], [0.5] * 4),
    ],
)
def test_analytic_quantiles(arm, taus, expected):
    """Check the generalized inverse of the cumulative distribution function."""
    quantiles = analytic_quantiles(KnownBandit(), arm, taus)
    assert_equal(quantiles.values, expected)
    assert_equal(quantiles.taus, taus)


def test_analytic_quantiles_unsorted_atoms():
    """Check that the atoms of an arm do not need to be sorted."""
    bandit = KnownBandit(arms=[[(3.0, 0.25), (-1.0, 0.5), (0.0, 0.25)]])
    quantiles = analytic_quantiles(bandit, 0, [0.1, 0.5, 0.6, 0.8])
    assert_equal(quantiles.values, [-1.0, -1.0, 0.0, 3.0])


def test_analytic_quantiles_monotonic():
    """Check that the quantiles are non-decreasing."""
    quantiles = analytic_quantiles(KnownBandit("lottery"), 1, linspace(0, 1, 101))
    assert (quantiles.values[1:] >= quantiles.values[:-1]).all()


@pytest.mark.parametrize(
    ("arm", "taus", "msg"),
    [
        (2, [0.5], "The arm must be in [0, 2); got 2."),
        (0, [0.5, 1.1], "The quantile levels must be in [0,1]."),
    ],
)
def test_analytic_quantiles_errors(arm, taus, msg):
    """Check the errors of the exact quantiles."""
    with pytest.raises(ValueError, match=re.escape(msg)):
        analytic_quantiles(KnownBandit(), arm, taus)


def test_mc_return_quantiles_bandit():
    """Check that the empirical quantiles converge to the exact ones."""
    taus = array([0.05, 0.2, 0.4, 0.5, 0.7, 0.95])
    quantiles = mc_return_quantiles(
        KnownBandit(), lambda state: 1, 1.0, 100000, taus, rng=default_rng(1)
    )
    assert_equal(quantiles.values, analytic_quantiles(KnownBandit(), 1, taus).values)


def test_mc_return_quantiles_deterministic():
    """Check that a deterministic episode gives a degenerate distribution."""
    quantiles = mc_return_quantiles(
        ChainMDP(length=4), lambda state: 1, 0.9, 10, [0.1, 0.5, 0.9]
    )
    assert_allclose(quantiles.values, 0.9**3)


def test_mc_return_quantiles_safe_path():
    """Check the quantiles of the safe path without slipping."""
    quantiles = mc_return_quantiles(
        CliffGrid(), create_tabular_policy(safe_path_policy()), 1.0, 5, [0.0, 0.5, 1.0]
    )
    assert_equal(quantiles.values, -17.0)


def test_mc_return_quantiles_truncation():
    """Check that the episodes stop at the step limit."""
    returns = sample_returns(ChainMDP(length=3), lambda state: 0, 1.0, 2)
    assert_equal(returns, 0.0)


def test_sample_returns_error():
    """Check that at least one episode is required."""
    msg = "The number of episodes must be at least 1; got 0."
    with pytest.raises(ValueError, match=re.escape(msg)):
        sample_returns(KnownBandit(), lambda state: 0, 1.0, 0)
