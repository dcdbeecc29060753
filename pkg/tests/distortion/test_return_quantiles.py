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
"""Tests for ReturnQuantiles."""

from __future__ import annotations

import re

import pytest
from numpy import arange
from numpy import array
from numpy.testing import assert_equal

from gemseo_iqn.distortion.return_quantiles import ReturnQuantiles


@pytest.fixture(scope="module")
def quantiles() -> ReturnQuantiles:
    """Four quantiles of a return distribution."""
    return ReturnQuantiles(array([-1.0, 0.0, 2.0, 5.0]))


@pytest.mark.parametrize(
    ("tau", "expected"),
    [(0.0, -1.0), (0.25, -1.0), (0.26, 0.0), (0.5, 0.0), (0.75, 2.0), (1.0, 5.0)],
)
def test_quantile_function(quantiles, tau, expected):
    """Check the step quantile function."""
    assert quantiles.quantile_function(tau) == expected


def test_quantile_function_vectorized(quantiles):
    """Check the step quantile function at several quantile levels."""
    assert_equal(quantiles.quantile_function([[0.1, 0.9]]), [[-1.0, 5.0]])


def test_size(quantiles):
    """Check the number of quantiles."""
    assert quantiles.size == 4
    assert quantiles.taus is None


def test_from_samples():
    """Check the empirical quantiles."""
    quantiles = ReturnQuantiles.from_samples(arange(10, 0, -1), [0.0, 0.1, 0.5, 1.0])
    assert_equal(quantiles.values, [1.0, 1.0, 5.0, 10.0])
    assert_equal(quantiles.taus, [0.0, 0.1, 0.5, 1.0])


@pytest.mark.parametrize(
    ("values", "message"),
    [
        ([], "The quantile values must be a non-empty vector."),
        ([[1.0]], "The quantile values must be a non-empty vector."),
        ([1.0, 0.0], "The quantile values must be sorted in non-decreasing order."),
    ],
)
def test_invalid_values(values, message):
    """Check that invalid quantile values raise an error."""
    with pytest.raises(ValueError, match=re.escape(message)):
        ReturnQuantiles(values)


def test_invalid_taus():
    """Check that the quantile levels must be shaped as the values."""
    with pytest.raises(
        ValueError,
        match=re.escape("The quantile levels must be shaped as the quantile values."),
    ):
        ReturnQuantiles([0.0, 1.0], [0.5])
