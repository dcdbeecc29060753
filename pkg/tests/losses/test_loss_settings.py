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
"""Tests for LossConfig."""

from __future__ import annotations

import pytest
from pydantic import ValidationError

from gemseo_iqn.losses.loss_settings import LossConfig


def test_default():
    """Check the default settings."""
    config = LossConfig()
    assert config.n_online == 8
    assert config.n_target == 8
    assert config.k_policy == 32
    assert config.kappa == 1.0
    assert config.gamma == 0.99
    assert config.policy_measure == "neutral"
    assert not config.normalize_by_n_online


def test_policy_measure():
    """Check that the policy measure is stripped."""
    assert LossConfig(policy_measure=" cvar:0.25 ").policy_measure == "cvar:0.25"


@pytest.mark.parametrize(
    "settings",
    [
        {"n_online": 0},
        {"n_target": -1},
        {"k_policy": 0},
        {"kappa": -0.1},
        {"gamma": 1.0},
        {"gamma": -0.1},
        {"policy_measure": "foo"},
        {"policy_measure": "cvar:2"},
        {"foo": 1},
    ],
)
def test_invalid_settings(settings):
    """Check that invalid settings are rejected."""
    with pytest.raises(ValidationError):
        LossConfig(**settings)
