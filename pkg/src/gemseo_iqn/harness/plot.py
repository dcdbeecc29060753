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
"""Line charts of the metrics of the training runs."""

from __future__ import annotations

from collections import defaultdict
from typing import TYPE_CHECKING

import matplotlib.pyplot as plt
from gemseo.utils.matplotlib_figure import save_show_figure

from gemseo_iqn.harness.metrics import parse_metrics

if TYPE_CHECKING:
    from pathlib import Path

    from matplotlib.figure import Figure


def plot_eval_returns(
    file_path: str | Path,
    show: bool = False,
    output_file_path: str | Path = "",
) -> Figure:
    """Plot the mean evaluation return against the step, one line per run.

    Args:
        file_path: The path to the metrics file.
        show: Whether to display the figure.
        output_file_path: The path to save the figure,
            whose extension sets the format, e.g. `"returns.svg"`.
            If empty, do not save the figure.

    Returns:
        The figure.
    """
    curves: dict[str, list[tuple[int, float]]] = defaultdict(list)
    for row in parse_metrics(file_path):
        if row.eval_return is not None:
            curves[row.run_id].append((row.step, row.eval_return))

    fig, ax = plt.subplots()
    for run_id, points in curves.items():
        steps, returns = zip(*points)
        ax.plot(steps, returns, label=run_id, marker=".")

    ax.set_xlabel("Step")
    ax.set_ylabel("Mean evaluation return")
    if curves:
        ax.legend(title="Runs")

    ax.grid(which="both")
    save_show_figure(fig, show, output_file_path)
    return fig
