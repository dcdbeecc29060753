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
"""Tests for the line charts of the metrics."""

from __future__ import annotations

from pathlib import Path

from gemseo_iqn.harness.metrics import MetricsRow
from gemseo_iqn.harness.metrics import emit_metrics
from gemseo_iqn.harness.plot import plot_eval_returns


def test_plot_eval_returns(tmp_wd):
    """Check that a line is drawn per run from the evaluation returns."""
    emit_metrics(
        [
            MetricsRow("a", 0, "bandit", "iqn", "neutral", 8, 8, 1, behavior_return=1),
            MetricsRow("a", 0, "bandit", "iqn", "neutral", 8, 8, 2, eval_return=0.5),
            MetricsRow("a", 0, "bandit", "iqn", "neutral", 8, 8, 4, eval_return=1.0),
            MetricsRow("b", 1, "bandit", "iqn", "neutral", 8, 8, 2, eval_return=0.0),
        ],
        "metrics.csv",
    )
    fig = plot_eval_returns("metrics.csv", output_file_path="returns.svg")
    assert Path("returns.svg").exists()
    lines = fig.axes[0].get_lines()
    assert [line.get_label() for line in lines] == ["a", "b"]
    assert list(lines[0].get_xdata()) == [2, 4]
    assert list(lines[0].get_ydata()) == [0.5, 1.0]
    assert fig.axes[0].get_ylabel() == "Mean evaluation return"


def test_plot_without_evaluation(tmp_wd):
    """Check that a metrics file without evaluation gives an empty chart."""
    emit_metrics([], "metrics.csv")
    fig = plot_eval_returns("metrics.csv")
    assert not fig.axes[0].get_lines()
