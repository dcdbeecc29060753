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
"""The comparison of the backward gradients against finite differences."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from dataclasses import field
from typing import TYPE_CHECKING

from gemseo.utils.string_tools import MultiLineString
from numpy import array_equal
from numpy import ndindex

if TYPE_CHECKING:
    from collections.abc import Mapping

    from numpy import ndarray
    from numpy.typing import ArrayLike

    from gemseo_iqn.autodiff.graph import ComputeGraph

LOGGER = logging.getLogger(__name__)


@dataclass
class GradCheckReport:
    """The report of a gradient check."""

    step: float
    """The finite difference step."""

    tolerance: float
    """The tolerance on the relative error."""

    max_relative_errors: dict[str, float] = field(default_factory=dict)
    """The maximum relative error per parameter over its compared entries."""

    excluded_counts: dict[str, int] = field(default_factory=dict)
    """The number of entries per parameter excluded from the comparison.

    An entry is excluded when its perturbation crosses a non-differentiable point.
    """

    @property
    def flagged_parameters(self) -> list[str]:
        """The parameters whose maximum relative error exceeds the tolerance."""
        return [
            name
            for name, error in self.max_relative_errors.items()
            if error > self.tolerance
        ]

    @property
    def passed(self) -> bool:
        """Whether all the relative errors are below the tolerance."""
        return not self.flagged_parameters

    @property
    def max_relative_error(self) -> float:
        """The maximum relative error over all the parameters."""
        return max(self.max_relative_errors.values(), default=0.0)

    def __str__(self) -> str:
        text = MultiLineString()
        text.add("Gradient check (step: {}, tolerance: {})", self.step, self.tolerance)
        text.indent()
        for name, error in self.max_relative_errors.items():
            text.add(
                "{}: {:.3e} ({} excluded entries)",
                name,
                error,
                self.excluded_counts[name],
            )

        return str(text)


def compute_relative_error(gradient: float, approximation: float) -> float:
    """Compute the relative error between a gradient and its approximation.

    Args:
        gradient: The gradient.
        approximation: The approximation of the gradient.

    Returns:
        The relative error.
    """
    return abs(gradient - approximation) / max(
        1e-8, abs(gradient) + abs(approximation)
    )


def grad_check(
    graph: ComputeGraph,
    parameters: Mapping[str, ndarray],
    inputs: Mapping[str, ArrayLike] | None = None,
    step: float = 1e-5,
    tolerance: float = 1e-4,
    output_name: str = "",
) -> GradCheckReport:
    """Compare the backward gradients against central finite differences.

    The entries whose perturbations change the kink signature of the graph
    are excluded from the comparison.

    Args:
        graph: The graph with a scalar output.
        parameters: The values of the parameters.
        inputs: The values of the inputs, if any.
        step: The finite difference step.
        tolerance: The tolerance on the relative error.
        output_name: The name of the output.
            If empty, use the first output.

    Returns:
        The report of the gradient check.

    Raises:
        ValueError: When the output is not scalar or the step is not positive.
    """
    if step <= 0:
        msg = f"The finite difference step must be positive; got {step}."
        raise ValueError(msg)

    inputs = inputs or {}
    output_name = output_name or graph.output_names[0]
    output = graph.forward(inputs, parameters)[output_name]
    if output.shape != ():
        msg = f"The gradient check requires a scalar output; got shape {output.shape}."
        raise ValueError(msg)

    signature = graph.compute_kink_signature()
    gradients = graph.backward(1.0, output_name)
    parameters = {name: value.astype(float) for name, value in parameters.items()}
    report = GradCheckReport(step, tolerance)

    def evaluate(perturbed_parameters: dict[str, ndarray]) -> tuple[float, bool]:
        value = float(graph.forward(inputs, perturbed_parameters)[output_name])
        return value, array_equal(graph.compute_kink_signature(), signature)

    for name in graph.parameter_names:
        value = parameters[name]
        max_error = 0.0
        n_excluded = 0
        for index in ndindex(value.shape):
            perturbed_value = value.copy()
            perturbed_value[index] += step
            f_plus, same_plus = evaluate({**parameters, name: perturbed_value})
            perturbed_value[index] -= 2 * step
            f_minus, same_minus = evaluate({**parameters, name: perturbed_value})
            if not (same_plus and same_minus):
                n_excluded += 1
                continue

            approximation = (f_plus - f_minus) / (2 * step)
            max_error = max(
                max_error, compute_relative_error(gradients[name][index], approximation)
            )

        report.max_relative_errors[name] = max_error
        report.excluded_counts[name] = n_excluded

    graph.forward(inputs, parameters)
    if not report.passed:
        LOGGER.warning("%s", report)

    return report
