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
"""Tests for QrNetwork and DqnNetwork."""

from __future__ import annotations

import re

import pytest
from numpy import arange
from numpy import array
from numpy import zeros_like
from numpy.random import default_rng
from numpy.testing import assert_allclose
from numpy.testing import assert_equal

from gemseo_iqn.autodiff.grad_check import grad_check
from gemseo_iqn.distortion.measures.cvar import CVaR
from gemseo_iqn.distortion.measures.identity import Identity
from gemseo_iqn.distortion.measures.norm import Norm
from gemseo_iqn.networks.architecture_settings import ArchitectureSpec
from gemseo_iqn.networks.diagnostics import count_crossings
from gemseo_iqn.networks.dqn_network import DqnNetwork
from gemseo_iqn.networks.qr_network import QrNetwork

SPEC = ArchitectureSpec(state_dim=2, action_count=3, psi_hidden=(5,), feature_dim=4)

STATES = array([[0.5, -1.0], [2.0, 0.3]])


def set_head_bias(network, bias) -> None:
    """Zero the parameters of a network except the bias of its output layer."""
    parameters = {name: zeros_like(value) for name, value in network.parameters.items()}
    parameters["f.output.bias"] = array(bias, dtype=float)
    network.set_parameters(parameters)


def test_qr_parameters():
    """Check the shapes of the parameters of the fixed-quantile network."""
    network = QrNetwork(SPEC, n_quantiles=8)
    assert {name: value.shape for name, value in network.parameters.items()} == {
        "psi.0.weight": (2, 5),
        "psi.0.bias": (5,),
        "psi.1.weight": (5, 4),
        "psi.1.bias": (4,),
        "f.output.weight": (4, 24),
        "f.output.bias": (24,),
    }
    assert_allclose(network.taus, arange(1, 16, 2) / 16)


def test_qr_constant_network():
    """Check that a zero network with a head bias gives this bias."""
    network = QrNetwork(SPEC, n_quantiles=2)
    set_head_bias(network, [1.0, 2.0, 3.0, 4.0, 5.0, 6.0])
    assert_equal(network.forward(STATES), [[[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]]] * 2)


def test_qr_single_quantile():
    """Check that a single quantile gives a scalar per action at the median."""
    network = QrNetwork(SPEC, n_quantiles=1)
    assert_equal(network.taus, [0.5])
    assert network.forward(STATES).shape == (2, 1, 3)


def test_qr_identical_states():
    """Check that identical states give identical quantiles."""
    network = QrNetwork(SPEC, n_quantiles=4, rng=default_rng(1))
    quantiles = network.forward(array([[0.3, 0.2]] * 3))
    assert_equal(quantiles[1], quantiles[0])
    assert_equal(quantiles[2], quantiles[0])


def test_qr_invalid_number_of_quantiles():
    """Check that the number of quantiles must be positive."""
    msg = "The number of quantiles must be at least 1; got 0."
    with pytest.raises(ValueError, match=re.escape(msg)):
        QrNetwork(SPEC, n_quantiles=0)


@pytest.mark.parametrize(
    ("measure", "expected"),
    [(Identity(), [2.5, 1.5, 0.0]), (CVaR(0.5), [1.5, 0.5, 0.0]), (Norm(3), None)],
    ids=str,
)
def test_qr_action_values(measure, expected):
    """Check the distorted expectations of the mixtures of Diracs."""
    network = QrNetwork(SPEC, n_quantiles=4)
    # The quantiles of the first action are given in a decreasing order.
    set_head_bias(network, [4, 3, 0, 3, 2, 0, 2, 1, 0, 1, 0, 0])
    values = network.compute_action_values(STATES, measure, 100000, default_rng(2))
    if expected is None:
        assert_allclose(values, [[2.5, 1.5, 0.0]] * 2, atol=0.02)
    else:
        assert_allclose(values, [expected] * 2)


def test_qr_grad_check():
    """Check the gradients of the quantile regression loss."""
    rng = default_rng(3)
    network = QrNetwork(SPEC, n_quantiles=3, rng=rng)
    inputs = network.create_loss_inputs(STATES, array([2, 0]), rng.normal(size=(2, 3)))
    assert_allclose(inputs["taus"], [1 / 6, 0.5, 5 / 6] * 2)
    assert_equal(inputs["actions"], [2, 2, 2, 0, 0, 0])
    assert grad_check(network.get_loss_graph(1.0), network.parameters, inputs).passed


def test_dqn():
    """Check the network estimating the expected returns."""
    network = DqnNetwork(SPEC, rng=default_rng(4))
    assert network.parameters["f.output.weight"].shape == (4, 3)
    values = network.forward(STATES)
    assert values.shape == (2, 3)
    assert_equal(
        network.compute_action_values(STATES, CVaR(0.1), 1, default_rng()), values
    )
    set_head_bias(network, [0.0, 1.0, 1.0])
    assert_equal(network.greedy_actions(STATES, Identity(), 1, default_rng()), [1, 1])


def test_dqn_grad_check():
    """Check the gradients of the Huber loss of the temporal difference errors."""
    rng = default_rng(5)
    network = DqnNetwork(SPEC, rng=rng)
    inputs = network.create_loss_inputs(STATES, array([1, 2]), rng.normal(size=2))
    assert inputs["targets"].shape == (2, 1)
    assert grad_check(network.get_loss_graph(0.5), network.parameters, inputs).passed


@pytest.mark.parametrize(
    ("quantiles", "expected"),
    [
        ([[[0.0], [1.0], [2.0]]], 0),
        ([[[0.0], [2.0], [1.0]]], 1),
        ([[[3.0, 0.0], [2.0, 0.0], [1.0, 0.0]]], 2),
        ([[[1.0], [1.0]]], 0),
    ],
)
def test_count_crossings(quantiles, expected):
    """Check the number of crossing quantiles."""
    assert count_crossings(quantiles) == expected
