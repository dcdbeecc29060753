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
"""The batch Huber quantile loss as a primitive."""

from __future__ import annotations

from typing import TYPE_CHECKING
from typing import ClassVar

from numpy import abs as np_abs
from numpy import array
from numpy import concatenate
from numpy import sign

from gemseo_iqn.autodiff.primitives.base_primitive import BasePrimitive
from gemseo_iqn.losses.huber_quantile import huber
from gemseo_iqn.losses.huber_quantile import huber_gradient
from gemseo_iqn.losses.huber_quantile import huber_quantile
from gemseo_iqn.losses.huber_quantile import huber_quantile_gradient

if TYPE_CHECKING:
    from numpy import ndarray


class QuantileHuberLoss(BasePrimitive):
    r"""The mean over a batch of the pairwise Huber quantile losses.

    The inputs are

    - the predictions shaped as `(R,)` with `R = B * T`,
      where the `T` predictions of the `b`-th batch element are contiguous,
    - the targets shaped as `(B, M)`,
    - the quantile levels of the predictions shaped as `(R,)`.

    The pairwise errors of the `b`-th batch element are
    $\delta_{tj}=\text{target}_{bj}-\text{prediction}_{bt}$
    and the loss of this element is
    $\sum_t\frac{1}{M}\sum_j\rho^\kappa_{\tau_t}(\delta_{tj})$.

    The loss is only differentiable with respect to the predictions.
    """

    NAME: ClassVar[str] = "quantile_huber_loss"
    N_INPUTS: ClassVar[int] = 3

    kappa: float
    """The Huber threshold."""

    normalize: bool
    """Whether to divide the loss of a batch element by its number of predictions."""

    quantile_weighted: bool
    r"""Whether to weight the Huber function by $|\tau-\mathbb{1}_{\delta<0}|/\kappa$.

    Otherwise, the Huber function is used as is and the quantile levels are ignored.
    """

    def __init__(
        self, kappa: float, normalize: bool = False, quantile_weighted: bool = True
    ) -> None:
        """
        Args:
            kappa: The Huber threshold.
            normalize: Whether to divide the loss of a batch element
                by its number of predictions.
            quantile_weighted: Whether to use the Huber quantile loss
                rather than the plain Huber function.

        Raises:
            ValueError: When the Huber threshold is negative.
        """  # noqa: D205 D212 D415
        if kappa < 0:
            msg = f"The Huber threshold must be non-negative; got {kappa}."
            raise ValueError(msg)

        self.kappa = kappa
        self.normalize = normalize
        self.quantile_weighted = quantile_weighted

    def infer_shape(  # noqa: D102
        self,
        prediction_shape: tuple[int, ...],
        target_shape: tuple[int, ...],
        tau_shape: tuple[int, ...],
    ) -> tuple[int, ...]:
        if len(prediction_shape) != 1 or len(target_shape) != 2:
            msg = "the predictions must be a vector and the targets a matrix"
            raise ValueError(msg)

        if tau_shape != prediction_shape:
            msg = "the quantile levels must be shaped as the predictions"
            raise ValueError(msg)

        batch_size, n_targets = target_shape
        if batch_size == 0 or n_targets == 0 or prediction_shape[0] % batch_size:
            msg = "the number of predictions must be a multiple of the batch size"
            raise ValueError(msg)

        return ()

    def compute_errors(self, predictions: ndarray, targets: ndarray) -> ndarray:
        """Compute the pairwise errors.

        Args:
            predictions: The predictions.
            targets: The targets.

        Returns:
            The pairwise errors shaped as `(B, T, M)`.
        """
        batch_size = len(targets)
        return targets[:, None, :] - predictions.reshape(batch_size, -1)[:, :, None]

    def __reshape_taus(self, taus: ndarray, batch_size: int) -> ndarray:
        return taus.reshape(batch_size, -1)[:, :, None]

    def __get_scale(self, errors: ndarray) -> float:
        """Return the factor applied to the sum of the pairwise losses.

        Args:
            errors: The pairwise errors shaped as `(B, T, M)`.

        Returns:
            The factor.
        """
        batch_size, n_predictions, n_targets = errors.shape
        scale = 1.0 / (batch_size * n_targets)
        if self.normalize:
            scale /= n_predictions

        return scale

    def forward(  # noqa: D102
        self, predictions: ndarray, targets: ndarray, taus: ndarray
    ) -> ndarray:
        errors = self.compute_errors(predictions, targets)
        if self.quantile_weighted:
            losses = huber_quantile(
                errors, self.__reshape_taus(taus, len(targets)), self.kappa
            )
        else:
            losses = huber(errors, self.kappa)

        return array(losses.sum() * self.__get_scale(errors))

    def backward(  # noqa: D102
        self,
        output_gradient: ndarray,
        output: ndarray,
        predictions: ndarray,
        targets: ndarray,
        taus: ndarray,
    ) -> tuple[ndarray, None, None]:
        errors = self.compute_errors(predictions, targets)
        if self.quantile_weighted:
            gradients = huber_quantile_gradient(
                errors, self.__reshape_taus(taus, len(targets)), self.kappa
            )
        else:
            gradients = huber_gradient(errors, self.kappa)

        gradient = -gradients.sum(axis=2).ravel() * self.__get_scale(errors)
        return output_gradient * gradient, None, None

    def compute_kink_signature(  # noqa: D102
        self, predictions: ndarray, targets: ndarray, taus: ndarray
    ) -> ndarray:
        errors = self.compute_errors(predictions, targets).ravel()
        return concatenate((sign(errors), sign(np_abs(errors) - self.kappa)))
