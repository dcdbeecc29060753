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
"""The parameter checkpoints.

A checkpoint is a NumPy `.npz` archive of named float64 arrays.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from numpy import asarray
from numpy import load
from numpy import savez

if TYPE_CHECKING:
    from collections.abc import Mapping
    from pathlib import Path

    from numpy import ndarray


def save_parameters(file_path: str | Path, parameters: Mapping[str, ndarray]) -> None:
    """Save parameters in a checkpoint file.

    Args:
        file_path: The path to the checkpoint file.
        parameters: The parameters.
    """
    with open(file_path, "wb") as file_:
        savez(
            file_,
            **{name: asarray(value, dtype=float) for name, value in parameters.items()},
        )


def load_parameters(file_path: str | Path) -> dict[str, ndarray]:
    """Load parameters from a checkpoint file.

    Args:
        file_path: The path to the checkpoint file.

    Returns:
        The parameters.
    """
    with load(file_path) as archive:
        return {name: archive[name] for name in archive.files}
