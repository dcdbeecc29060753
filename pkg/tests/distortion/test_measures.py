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
"""Tests for the distortion risk measures."""

from __future__ import annotations

import re

import pytest
from numpy import diff
from numpy import linspace
from numpy import sign
from numpy.random import default_rng
from numpy.testing import assert_allclose
from scipy.stats import kstest

from gemseo_iqn.distortion.measures.cpw import CPW
from gemseo_iqn.distortion.measures.cvar import CVaR
from gemseo_iqn.distortion.measures.identity import Identity
from gemseo_iqn.distortion.measures.norm import Norm
from gemseo_iqn.distortion.measures.pow import Pow
from gemseo_iqn.distortion.measures.wang import Wang

POINTWISE_MEASURES = [
    Identity(),
    CPW(0.71),
    Wang(-0.75),
    Wang(1.5),
    Pow(-2.0),
    Pow(1.0),
    CVaR(0.1),
    CVaR(0.25),
]

TAU_GRID = linspace(0, 1, 1000)


@pytest.mark.parametrize(
    ("measure", "tau", "expected"),
    [
        (CVaR(0.1), 0.5, 0.05),
        (Wang(0.0), 0.3, 0.3),
        (Pow(0.0), 0.3, 0.3),
        (Identity(), 0.7, 0.7),
        (Pow(1.0), 0.25, 0.5),
        (Pow(-1.0), 0.75, 0.5),
    ],
)
def test_apply(measure, tau, expected):
    """Check the distortion of a quantile level."""
    assert measure.apply(tau) == pytest.approx(expected, abs=1e-12)


def test_cpw():
    """Check the CPW at the median."""
    assert CPW(0.71).apply(0.5) == pytest.approx(0.46059, abs=1e-4)


@pytest.mark.parametrize("measure", [Wang(0.0), Pow(0.0)], ids=["wang", "pow"])
def test_neutral_parameter(measure):
    """Check that a zero parameter gives the risk-neutral measure."""
    assert_allclose(measure.apply(TAU_GRID), TAU_GRID, atol=1e-12)


@pytest.mark.parametrize("measure", POINTWISE_MEASURES, ids=str)
def test_monotonicity(measure):
    """Check that the measure is non-decreasing."""
    values = measure.apply(TAU_GRID)
    assert values.shape == TAU_GRID.shape
    assert (diff(values) >= 0).all()
    assert ((values >= 0) & (values <= 1)).all()


@pytest.mark.parametrize("measure", POINTWISE_MEASURES, ids=str)
def test_boundaries(measure):
    """Check the distortions of 0 and 1."""
    assert measure.apply(0.0) == 0.0
    expected = measure.eta if isinstance(measure, CVaR) else 1.0
    assert measure.apply(1.0) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("measure", POINTWISE_MEASURES, ids=str)
def test_inverse(measure):
    """Check that the inverse is a right inverse on the range of the measure."""
    values = measure.apply(TAU_GRID[1:-1])
    assert_allclose(measure.apply(measure.inverse(values)), values, atol=1e-9)


def test_cvar_inverse_saturation():
    """Check that the inverse of the CVaR saturates at 1."""
    assert_allclose(CVaR(0.25).inverse([0.0, 0.125, 0.25, 0.5, 1.0]), [0, 0.5, 1, 1, 1])


@pytest.mark.parametrize(
    ("eta", "expected_sign"), [(-0.75, 1.0), (-2.0, 1.0), (0.75, -1.0), (1.5, -1.0)]
)
def test_wang_curvature(eta, expected_sign):
    """Check the risk-averse Wang is convex and the risk-seeking one concave."""
    second_differences = diff(Wang(eta).apply(linspace(0, 1, 1001)), 2)
    assert (expected_sign * second_differences >= -1e-9).all()


def test_cpw_curvature_changes_once():
    """Check that the CPW is concave then convex."""
    second_differences = diff(CPW(0.71).apply(linspace(0, 1, 10000)), 2)
    signs = sign(second_differences[abs(second_differences) > 1e-12])
    assert signs[0] == -1
    assert signs[-1] == 1
    assert (diff(signs) != 0).sum() == 1


def test_sample_identity():
    """Check that the risk-neutral quantile levels are uniform."""
    samples = Identity().sample(default_rng(1), 100000)
    assert kstest(samples, "uniform").statistic < 0.01


def test_sample_cvar():
    """Check that the CVaR quantile levels are uniform over [0,eta]."""
    samples = CVaR(0.25).sample(default_rng(2), 100000)
    assert samples.max() <= 0.25
    assert samples.mean() == pytest.approx(0.125, abs=0.005)


def test_sample_norm():
    """Check the first moments of the Norm quantile levels."""
    samples = Norm(3).sample(default_rng(3), 100000)
    assert samples.mean() == pytest.approx(0.5, abs=0.005)
    assert samples.var() == pytest.approx(1 / 36, rel=0.1)


@pytest.mark.parametrize("measure", [*POINTWISE_MEASURES, Norm(3)], ids=str)
def test_sample_determinism(measure):
    """Check that the samples depend only on the state of the generator."""
    assert_allclose(
        measure.sample(default_rng(4), (3, 2)), measure.sample(default_rng(4), (3, 2))
    )
    assert isinstance(measure.sample(default_rng(4)), float)


@pytest.mark.parametrize("method_name", ["apply", "inverse"])
def test_norm_is_not_pointwise(method_name):
    """Check that the Norm cannot be applied pointwise."""
    measure = Norm(3)
    assert not measure.is_pointwise
    with pytest.raises(ValueError, match="is a sampling-only measure"):
        getattr(measure, method_name)(0.5)


@pytest.mark.parametrize("tau", [-0.1, 1.1, [0.5, 2.0]])
def test_apply_out_of_bounds(tau):
    """Check that a quantile level outside [0,1] raises an error."""
    with pytest.raises(
        ValueError, match=re.escape("The quantile levels must be in [0,1].")
    ):
        Wang(-0.75).apply(tau)


@pytest.mark.parametrize(
    ("cls", "eta", "message"),
    [
        (CPW, 0.0, "The parameter of the CPW must be positive; got 0.0."),
        (CVaR, 0.0, "The parameter of the CVaR must be in ]0,1]; got 0.0."),
        (CVaR, 1.5, "The parameter of the CVaR must be in ]0,1]; got 1.5."),
        (Norm, 0, "The parameter of the Norm must be an integer >= 1; got 0."),
        (Norm, 2.5, "The parameter of the Norm must be an integer >= 1; got 2.5."),
    ],
)
def test_invalid_eta(cls, eta, message):
    """Check that an invalid parameter raises an error."""
    with pytest.raises(ValueError, match=re.escape(message)):
        cls(eta)


@pytest.mark.parametrize(
    ("measure", "expected"),
    [
        (Identity(), "neutral"),
        (CPW(), "cpw:0.71"),
        (Wang(), "wang:-0.75"),
        (Wang(1.5), "wang:1.5"),
        (Pow(), "pow:-2"),
        (CVaR(0.1), "cvar:0.1"),
        (Norm(), "norm:3"),
    ],
)
def test_str(measure, expected):
    """Check the string representation of the measures."""
    assert str(measure) == expected


def test_equality():
    """Check the equality of the measures."""
    assert CVaR(0.1) == CVaR(0.1)
    assert CVaR(0.1) != CVaR(0.2)
    assert CVaR(0.1) != Pow(0.1)
    assert len({Wang(-0.75), Wang(-0.75)}) == 1
    assert repr(CVaR(0.1)) == "CVaR(eta=0.1)"
