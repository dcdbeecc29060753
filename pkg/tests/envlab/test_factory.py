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
"""Tests for EnvironmentFactory."""

from __future__ import annotations

import re

import pytest

from gemseo_iqn.envlab.environments.chain_mdp import ChainMDP
from gemseo_iqn.envlab.environments.cliff_grid import CliffGrid
from gemseo_iqn.envlab.environments.known_bandit import KnownBandit
from gemseo_iqn.envlab.factory import EnvironmentFactory


@pytest.fixture(scope="module")
def factory() -> EnvironmentFactory:
    """The factory of environments."""
    return EnvironmentFactory()


def test_class_names(factory):
    """Check the names of the environments."""
    assert {"ChainMDP", "CliffGrid", "KnownBandit"}.issubset(factory.class_names)
    assert factory.short_names == ["bandit", "chain", "cliff"]


@pytest.mark.parametrize(
    ("description", "cls", "attributes"),
    [
        ("bandit:risky", KnownBandit, {"variant": "risky"}),
        ("bandit:lottery", KnownBandit, {"variant": "lottery"}),
        ("bandit", KnownBandit, {"variant": "risky"}),
        ("chain:L=5,p=1.0", ChainMDP, {"length": 5, "p": 1.0}),
        (" chain: L=7 , p=0.5 ", ChainMDP, {"length": 7, "p": 0.5}),
        ("chain:length=3,r=2", ChainMDP, {"length": 3, "terminal_reward": 2}),
        ("cliff:p=0.1", CliffGrid, {"p": 0.1}),
        ("CliffGrid", CliffGrid, {"p": 0.0}),
    ],
)
def test_parse(factory, description, cls, attributes):
    """Check the creation of an environment from its description."""
    environment = factory.parse(description)
    assert isinstance(environment, cls)
    for name, value in attributes.items():
        assert getattr(environment, name) == value


@pytest.mark.parametrize(
    "description", ["bandit:risky", "chain:L=5,p=1", "cliff:p=0.1"]
)
def test_str(factory, description):
    """Check that the description of an environment can be parsed back."""
    assert str(factory.parse(description)) == description


@pytest.mark.parametrize(
    ("description", "msg"),
    [
        (
            "foo:p=1",
            "The environment 'foo' is unknown; "
            "available ones are bandit, chain, cliff.",
        ),
        (
            "chain:L=5,forward",
            "The argument 'forward' of the environment 'chain:L=5,forward' "
            "is not a key=value pair.",
        ),
        ("chain:q=1", "The environment 'chain:q=1' has invalid parameters"),
        ("cliff:p=0.9", "The slip probability must be in [0,0.5]; got 0.9."),
    ],
)
def test_parse_errors(factory, description, msg):
    """Check the errors raised when parsing a description."""
    with pytest.raises(ValueError, match=re.escape(msg)):
        factory.parse(description)
