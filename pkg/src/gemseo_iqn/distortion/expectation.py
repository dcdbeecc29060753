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
r"""The distorted expectations of return distributions.

The distorted expectation of a return $Z$ for a distortion risk measure $\beta$ is
$Q_\beta=E_{\tau\sim\mathcal{U}([0,1])}[F_Z^{-1}(\beta(\tau))]$.
"""

from __future__ import annotations

from typing import TYPE_CHECKING
from typing import Callable

from numpy import arange
from numpy import asarray
from numpy import diff

from gemseo_iqn.distortion.return_quantiles import ReturnQuantiles

if TYPE_CHECKING:
    from numpy.random import Generator
    from numpy.typing import ArrayLike

    from gemseo.typing import RealArray
    from gemseo_iqn.distortion.measures.base_distortion_measure import (
        BaseDistortionMeasure,
    )


def sample_tau(
    measure: BaseDistortionMeasure,
    rng: Generator,
    size: int | tuple[int, ...] | None = None,
) -> float | RealArray:
    """Sample quantile levels distorted by a measure.

    Args:
        measure: The distortion risk measure.
        rng: The random number generator.
        size: The shape of the samples.
            If `None`, return a single sample.

    Returns:
        The distorted quantile level(s).
    """
    return measure.sample(rng, size)


def compute_quantile_weights(size: int, measure: BaseDistortionMeasure) -> RealArray:
    r"""Compute the weights of the quantiles of a uniform mixture of Diracs.

    The weight of the $i$-th quantile is $\bar\beta(i/N)-\bar\beta((i-1)/N)$
    where $\bar\beta$ is the generalized inverse of the measure.

    Args:
        size: The number of quantiles $N$.
        measure: The pointwise distortion risk measure.

    Returns:
        The weights of the quantiles, summing to one.

    Raises:
        ValueError: When the measure is not pointwise.
    """
    if not measure.is_pointwise:
        msg = (
            "The exact distorted expectation requires a pointwise measure; "
            f"got {measure}."
        )
        raise ValueError(msg)

    return diff(measure.inverse(arange(size + 1) / size))


def distorted_expectation_exact(
    quantiles: ReturnQuantiles | ArrayLike, measure: BaseDistortionMeasure
) -> float:
    """Compute the exact distorted expectation of a uniform mixture of Diracs.

    Args:
        quantiles: The quantiles of the mixture, sorted in non-decreasing order.
        measure: The pointwise distortion risk measure.

    Returns:
        The distorted expectation.

    Raises:
        ValueError: When the measure is not pointwise
            or when the quantiles are not sorted.
    """
    if not isinstance(quantiles, ReturnQuantiles):
        quantiles = ReturnQuantiles(asarray(quantiles, dtype=float))

    return float(
        quantiles.values @ compute_quantile_weights(quantiles.size, measure)
    )


def distorted_expectation_mc(
    quantile_function: Callable[[RealArray], ArrayLike],
    measure: BaseDistortionMeasure,
    n_samples: int,
    rng: Generator,
) -> float:
    """Estimate a distorted expectation by Monte Carlo sampling.

    Args:
        quantile_function: The quantile function, vectorized over quantile levels.
        measure: The distortion risk measure.
        n_samples: The number of quantile levels to sample.
        rng: The random number generator.

    Returns:
        The mean of the quantile function at the distorted quantile levels.

    Raises:
        ValueError: When the number of samples is lower than 1.
    """
    if n_samples < 1:
        msg = f"The number of samples must be at least 1; got {n_samples}."
        raise ValueError(msg)

    taus = sample_tau(measure, rng, n_samples)
    return float(asarray(quantile_function(taus), dtype=float).mean())
