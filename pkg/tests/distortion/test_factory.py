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
"""Tests for DistortionMeasureFactory."""

from __future__ import annotations

import re

import pytest

from gemseo_iqn.distortion.factory import DistortionMeasureFactory
from gemseo_iqn.distortion.measures.cpw import CPW
from gemseo_iqn.distortion.measures.cvar import CVaR
from gemseo_iqn.distortion.measures.identity import Identity
from gemseo_iqn.distortion.measures.norm import Norm
from gemseo_iqn.distortion.measures.pow import Pow
from gemseo_iqn.distortion.measures.wang import Wang


@pytest.fixture(scope="module")
def factory() -> DistortionMeasureFactory:
    """The factory of distortion risk measures."""
    return DistortionMeasureFactory()


def test_classes(factory):
    """Check the classes that the factory can build."""
    assert {"CPW", "CVaR", "Identity", "Norm", "Pow", "Wang"}.issubset(
        factory.class_names
    )
    assert factory.short_names == ["cpw", "cvar", "neutral", "norm", "pow", "wang"]


@pytest.mark.parametrize(
    ("description", "expected"),
    [
        ("neutral", Identity()),
        ("cpw:0.71", CPW(0.71)),
        ("wang:-0.75", Wang(-0.75)),
        ("wang:1.5", Wang(1.5)),
        ("pow:-2", Pow(-2.0)),
        ("cvar:0.1", CVaR(0.1)),
        ("norm:3", Norm(3)),
        (" cvar ", CVaR(0.25)),
    ],
)
def test_parse(factory, description, expected):
    """Check the creation of a measure from its description."""
    measure = factory.parse(description)
    assert measure == expected
    assert type(measure) is type(expected)


@pytest.mark.parametrize(
    "description", ["neutral", "cpw:0.71", "wang:1.5", "pow:-2", "cvar:0.1", "norm:3"]
)
def test_str_round_trip(factory, description):
    """Check that a measure is described by its string representation."""
    assert str(factory.parse(description)) == description


def test_create_from_class_name(factory):
    """Check the creation of a measure from its class name."""
    assert factory.create("CVaR", 0.5) == CVaR(0.5)


def test_unknown(factory):
    """Check that an unknown measure raises an error."""
    with pytest.raises(
        ValueError,
        match=re.escape(
            "The distortion risk measure 'foo' is unknown; "
            "available ones are cpw, cvar, neutral, norm, pow, wang."
        ),
    ):
        factory.parse("foo:1")


def test_not_a_number(factory):
    """Check that a non-numeric parameter raises an error."""
    with pytest.raises(
        ValueError,
        match=re.escape(
            "The parameter of the distortion risk measure 'cvar:low' is not a number."
        ),
    ):
        factory.parse("cvar:low")


def test_invalid_parameter(factory):
    """Check that an invalid parameter raises an error."""
    with pytest.raises(ValueError, match=re.escape("must be in ]0,1]; got 2.0.")):
        factory.parse("cvar:2")
