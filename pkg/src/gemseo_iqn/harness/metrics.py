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
"""The metrics of the training runs as CSV files."""

from __future__ import annotations

import csv
from dataclasses import astuple
from dataclasses import dataclass
from dataclasses import field
from dataclasses import fields
from pathlib import Path
from typing import TYPE_CHECKING
from typing import Any
from typing import TextIO

if TYPE_CHECKING:
    from collections.abc import Iterable
    from collections.abc import Iterator
    from types import TracebackType

    from gemseo_iqn.agent.agent_settings import AgentConfig
    from gemseo_iqn.agent.trainer import TrainingRecord


@dataclass(frozen=True)
class MetricsRow:
    """A row of a metrics file."""

    run_id: str
    """The identifier of the run."""

    seed: int
    """The seed of the run."""

    env: str
    """The description of the environment."""

    algorithm: str
    """The name of the algorithm."""

    measure: str
    """The description of the distortion risk measure of the policy."""

    n_online: int
    """The number of quantile levels sampled for the online network."""

    n_target: int
    """The number of quantile levels sampled for the target network."""

    step: int
    """The number of environment steps."""

    behavior_return: float | None = None
    """The return of the behavior episode ended at this step, if any."""

    eval_return: float | None = None
    """The mean return of the evaluation made at this step, if any."""

    loss: float | None = None
    """The last loss, if any."""

    epsilon: float | None = None
    """The probability of a random action."""

    aux: dict[str, int] = field(default_factory=dict)
    """The counters of the events of the environments."""


METRICS_HEADER = tuple(item.name for item in fields(MetricsRow))
"""The header of a metrics file."""

_FLOAT_FIELDS = ("behavior_return", "eval_return", "loss", "epsilon")
_INTEGER_FIELDS = ("seed", "n_online", "n_target", "step")


def format_float(value: float | None) -> str:
    """Format a float with 9 significant digits.

    Args:
        value: The float, if any.

    Returns:
        The formatted float, empty if missing.
    """
    return "" if value is None else f"{value:.9g}"


def _format_aux(aux: dict[str, int]) -> str:
    """Format the counters as `key=value` pairs joined by `;`.

    Args:
        aux: The counters.

    Returns:
        The formatted counters.
    """
    return ";".join(f"{key}={value}" for key, value in sorted(aux.items()))


def _parse_aux(text: str) -> dict[str, int]:
    """Parse the counters formatted by `_format_aux`.

    Args:
        text: The formatted counters.

    Returns:
        The counters.
    """
    if not text:
        return {}

    return {
        key: int(value)
        for key, value in (item.split("=", 1) for item in text.split(";"))
    }


def format_row(row: MetricsRow) -> list[str]:
    """Format a row of a metrics file.

    Args:
        row: The row.

    Returns:
        The fields of the row as strings.
    """
    values = dict(zip(METRICS_HEADER, astuple(row)))
    for name in _FLOAT_FIELDS:
        values[name] = format_float(values[name])

    values["aux"] = _format_aux(row.aux)
    return [str(values[name]) for name in METRICS_HEADER]


class MetricsWriter:
    """A writer of a metrics file streaming the rows."""

    __file: TextIO
    """The metrics file."""

    __writer: Any
    """The CSV writer."""

    n_rows: int
    """The number of rows written so far."""

    def __init__(self, file_path: str | Path) -> None:
        """
        Args:
            file_path: The path to the metrics file, overwritten if existing.
        """  # noqa: D205 D212 D415
        self.__file = Path(file_path).open("w", newline="")
        self.__writer = csv.writer(self.__file)
        self.__writer.writerow(METRICS_HEADER)
        self.n_rows = 0

    def write(self, row: MetricsRow) -> None:
        """Write a row.

        Args:
            row: The row.
        """
        self.__writer.writerow(format_row(row))
        self.n_rows += 1

    def close(self) -> None:
        """Close the metrics file."""
        self.__file.close()

    def __enter__(self) -> MetricsWriter:
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc_value: BaseException | None,
        traceback: TracebackType | None,
    ) -> None:
        self.close()


def emit_metrics(rows: Iterable[MetricsRow], file_path: str | Path) -> int:
    """Write the rows of a metrics file.

    The rows are written one by one without being gathered in memory.

    Args:
        rows: The rows ordered by step within a run.
        file_path: The path to the metrics file, overwritten if existing.

    Returns:
        The number of rows.
    """
    with MetricsWriter(file_path) as writer:
        for row in rows:
            writer.write(row)

        return writer.n_rows


def parse_metrics(file_path: str | Path) -> Iterator[MetricsRow]:
    """Read the rows of a metrics file one by one.

    Args:
        file_path: The path to the metrics file.

    Yields:
        The rows.

    Raises:
        ValueError: When the header of the file is not the header of a metrics file.
    """
    with Path(file_path).open(newline="") as file:
        reader = csv.reader(file)
        header = tuple(next(reader, ()))
        if header != METRICS_HEADER:
            msg = f"The file {file_path} is not a metrics file; its header is {header}."
            raise ValueError(msg)

        for fields_ in reader:
            values: dict[str, object] = dict(zip(METRICS_HEADER, fields_))
            for name in _INTEGER_FIELDS:
                values[name] = int(values[name])

            for name in _FLOAT_FIELDS:
                values[name] = float(values[name]) if values[name] else None

            values["aux"] = _parse_aux(values["aux"])
            yield MetricsRow(**values)


def create_rows(
    records: Iterable[TrainingRecord],
    run_id: str,
    env: str,
    config: AgentConfig,
) -> Iterator[MetricsRow]:
    """Create the rows of a metrics file from the records of a training run.

    Args:
        records: The records of the training run.
        run_id: The identifier of the run.
        env: The description of the environment.
        config: The settings of the agent.

    Yields:
        The rows.
    """
    loss = config.loss
    for record in records:
        yield MetricsRow(
            run_id,
            config.seed,
            env,
            str(config.algorithm),
            loss.policy_measure,
            loss.n_online,
            loss.n_target,
            record.step,
            record.behavior_return,
            record.eval_return,
            record.loss,
            record.epsilon,
            record.aux,
        )
