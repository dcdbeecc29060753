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
"""The settings of the architecture of a quantile network."""

from __future__ import annotations

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import PositiveInt
from strenum import StrEnum


class Embedding(StrEnum):
    """The embedding of the quantile levels."""

    COSINE = "cosine"
    r"""The cosine basis $\cos(\pi i\tau)$, $i=0,\ldots,n-1$, then a dense layer."""

    MLP = "mlp"
    """A dense network with one hidden layer of $n$ neurons."""

    LINEAR = "linear"
    """A dense layer applied to the quantile level."""


class Nonlinearity(StrEnum):
    """The activation function of the embedding."""

    RELU = "relu"
    SIGMOID = "sigmoid"


class Merge(StrEnum):
    r"""The merge $m(\psi,\phi)$ of the state features and the embedding."""

    HADAMARD = "hadamard"
    r"""$\psi\odot\phi$."""

    CONCATENATE = "concatenate"
    r"""$[\psi,\phi]$, doubling the input dimension of the head."""

    RESIDUAL = "residual"
    r"""$\psi\odot(1+\phi)$."""


class ArchitectureSpec(BaseModel):
    r"""The architecture of a network $f(m(\psi(x),\phi(\tau)))$.

    The state network $\psi$ is a dense network with ReLU activations
    mapping a state to `feature_dim` features.
    The head $f$ is a dense network with ReLU activations
    and a linear output layer.
    """

    model_config = ConfigDict(extra="forbid")

    state_dim: PositiveInt = Field(
        default=1,
        description="""The dimension of the state.

This field is usually set from the environment.""",
    )

    action_count: PositiveInt = Field(
        default=2,
        description="""The number of actions.

This field is usually set from the environment.""",
    )

    psi_hidden: tuple[PositiveInt, ...] = Field(
        default=(128,),
        description="The widths of the hidden layers of the state network.",
    )

    feature_dim: PositiveInt = Field(
        default=128, description="The number of features of the state network."
    )

    embedding: Embedding = Field(
        default=Embedding.COSINE, description="The embedding of the quantile levels."
    )

    embedding_dim: PositiveInt = Field(
        default=64,
        description="""The dimension of the embedding.

This is the number of cosine functions for the cosine embedding
and the number of hidden neurons for the MLP embedding.
It is ignored by the linear embedding.""",
    )

    nonlinearity: Nonlinearity = Field(
        default=Nonlinearity.RELU,
        description="The activation function of the embedding.",
    )

    merge: Merge = Field(
        default=Merge.HADAMARD,
        description="The merge of the state features and the embedding.",
    )

    head_hidden: tuple[PositiveInt, ...] = Field(
        default=(),
        description="""The widths of the hidden layers of the head.

If empty, the head is a dense layer.""",
    )

    @property
    def head_input_dim(self) -> int:
        """The input dimension of the head."""
        if self.merge == Merge.CONCATENATE:
            return 2 * self.feature_dim

        return self.feature_dim
