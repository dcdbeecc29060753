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
"""The quantile representation of a return distribution."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from numpy import asarray
from numpy import ceil
from numpy import clip
from numpy import diff
from numpy import sort

if TYPE_CHECKING:
    from numpy.typing import ArrayLike

    from gemseo.typing import RealArray


@dataclass(frozen=True)
class ReturnQuantiles:
    r"""The quantiles of a return distribution.

    Without quantile levels,
    the values $\theta_1\leq\ldots\leq\theta_N$ represent the uniform mixture
    of $N$ Diracs
    whose quantile function is the step function $F^{-1}(\tau)=\theta_i$
    for $\tau\in](i-1)/N,i/N]$.
    """

    values: RealArray
    """The non-decreasing quantile values."""

    taus: RealArray | None = None
    """The quantile levels of the values, if any."""

    def __post_init__(self) -> None:
        values = asarray(self.values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            msg = "The quantile values must be a non-empty vector."
            raise ValueError(msg)

        if (diff(values) < 0).any():
            msg = "The quantile values must be sorted in non-decreasing order."
            raise ValueError(msg)

        object.__setattr__(self, "values", values)
        if self.taus is not None:
            taus = asarray(self.taus, dtype=float)
            if taus.shape != values.shape:
                msg = "The quantile levels must be shaped as the quantile values."
                raise ValueError(msg)

            object.__setattr__(self, "taus", taus)

    @property
    def size(self) -> int:
        """The number of quantile values."""
        return len(self.values)

    def quantile_function(self, tau: ArrayLike) -> float | RealArray:
        """Evaluate the step quantile function of the uniform mixture of Diracs.

        Args:
            tau: The quantile level(s) in $[0,1]$.

        Returns:
            The quantile(s).
        """
        tau = asarray(tau, dtype=float)
        indices = clip(ceil(tau * self.size).astype(int) - 1, 0, self.size - 1)
        result = self.values[indices]
        return result if result.ndim else float(result)

    @classmethod
    def from_samples(cls, samples: ArrayLike, taus: ArrayLike) -> ReturnQuantiles:
        r"""Create the empirical quantiles of samples.

        The empirical quantile at level $\tau$ of $n$ sorted samples
        is the $\lceil\tau n\rceil$-th one.

        Args:
            samples: The samples.
            taus: The non-decreasing quantile levels in $[0,1]$.

        Returns:
            The empirical quantiles.
        """
        samples = sort(asarray(samples, dtype=float).ravel())
        taus = asarray(taus, dtype=float)
        indices = clip(ceil(taus * samples.size).astype(int) - 1, 0, samples.size - 1)
        return cls(samples[indices], taus)
