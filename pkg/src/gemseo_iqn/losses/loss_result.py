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
"""The result of a loss evaluation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from numpy import asarray

if TYPE_CHECKING:
    from numpy import ndarray

    from gemseo.typing import RealArray


@dataclass(frozen=True)
class TdErrorMatrix:
    r"""The sampled temporal difference errors of a batch of transitions.

    The error $\delta_{ij}$ of a transition is
    $r+\gamma Z_{\tau'_j}(x',a^*)-Z_{\tau_i}(x,a)$.
    """

    deltas: RealArray
    """The errors shaped as `(batch_size, n_online, n_target)`."""

    online_taus: RealArray
    """The quantile levels of the online network shaped as `(batch_size, n_online)`."""

    target_taus: RealArray
    """The quantile levels of the target network shaped as `(batch_size, n_target)`."""

    def __post_init__(self) -> None:
        deltas = asarray(self.deltas, dtype=float)
        online_taus = asarray(self.online_taus, dtype=float)
        target_taus = asarray(self.target_taus, dtype=float)
        if deltas.ndim != 3 or deltas.shape[:2] != online_taus.shape or (
            deltas.shape[::2] != target_taus.shape
        ):
            msg = (
                f"The errors shaped as {deltas.shape} are inconsistent "
                f"with the quantile levels shaped as {online_taus.shape} "
                f"and {target_taus.shape}."
            )
            raise ValueError(msg)

        object.__setattr__(self, "deltas", deltas)
        object.__setattr__(self, "online_taus", online_taus)
        object.__setattr__(self, "target_taus", target_taus)


@dataclass(frozen=True)
class LossResult:
    """The result of a loss evaluation."""

    value: float
    """The value of the loss."""

    gradients: dict[str, ndarray]
    """The gradients of the loss with respect to the online parameters."""

    td_errors: TdErrorMatrix
    """The temporal difference errors."""

    inputs: dict[str, ndarray]
    """The inputs of the loss graph of the online network."""
