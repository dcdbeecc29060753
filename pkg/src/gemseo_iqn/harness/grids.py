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
"""The runs of the experiments and their grids.

A run trains an agent with a seed
and writes its configuration, its provenance, its metrics
and possibly the parameters of its online network in its own directory.
The runs of a grid are independent and executed in parallel processes;
a failed run is recorded in the summary without aborting the grid.
"""

from __future__ import annotations

import csv
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple
from dataclasses import dataclass
from dataclasses import fields
from pathlib import Path
from typing import TYPE_CHECKING
from typing import Any

from gemseo.utils.timer import Timer
from numpy import mean

from gemseo_iqn.agent.trainer import Trainer
from gemseo_iqn.envlab.environments.cliff_grid import CliffGrid
from gemseo_iqn.envlab.environments.known_bandit import KnownBandit
from gemseo_iqn.harness.experiment_config import ExperimentConfig
from gemseo_iqn.harness.experiment_config import write_run_files
from gemseo_iqn.harness.metrics import create_rows
from gemseo_iqn.harness.metrics import emit_metrics
from gemseo_iqn.harness.metrics import format_float

if TYPE_CHECKING:
    from collections.abc import Callable
    from collections.abc import Iterable
    from collections.abc import Sequence

    from gemseo_iqn.agent.trainer import EvaluationResult

LOGGER = logging.getLogger(__name__)

METRICS_FILE_NAME = "metrics.csv"
"""The name of the metrics file of a run."""

CHECKPOINT_FILE_NAME = "checkpoint.npz"
"""The name of the checkpoint file of a run."""


@dataclass(frozen=True)
class RunSpec:
    """The specification of a run."""

    run_id: str
    """The identifier of the run, naming its directory."""

    config: ExperimentConfig
    """The configuration of the run whose agent settings include the seed."""

    directory: Path
    """The directory of the outputs of the run."""

    command_line: str = ""
    """The command line of the experiment."""

    final_eval_episodes: int = 0
    """The minimum number of evaluation episodes after the training, if any."""

    final_eval_steps: int = 0
    """The minimum number of environment steps of the evaluation
    after the training."""


@dataclass(frozen=True)
class RunOutcome:
    """The outcome of a run."""

    run_id: str
    """The identifier of the run."""

    status: str = "ok"
    """The status of the run, either `"ok"` or `"failed"`."""

    eval_returns: tuple[tuple[int, float], ...] = ()
    """The mean evaluation returns during the training with their steps."""

    final_eval_return: float | None = None
    """The mean return of the evaluation after the training, if any."""

    cliff_fall_rate: float | None = None
    """The proportion of the completed evaluation episodes after the training
    ending in the cliff, if any."""

    arm_frequencies: tuple[float, ...] = ()
    """The frequencies of the arms pulled by the evaluation episodes
    after the training, if any."""

    error: str = ""
    """The error message of a failed run."""

    def get_mean_eval_return(self, first_step: int, last_step: int) -> float | None:
        """Return the mean evaluation return between two steps.

        Args:
            first_step: The first step.
            last_step: The last step.

        Returns:
            The mean evaluation return, if any evaluation was made between the steps.
        """
        returns = [
            value
            for step, value in self.eval_returns
            if first_step <= step <= last_step
        ]
        return float(mean(returns)) if returns else None


def _get_risk_diagnostics(
    trainer: Trainer, evaluation: EvaluationResult
) -> dict[str, Any]:
    """Return the risk diagnostics of evaluation episodes.

    Args:
        trainer: The trainer.
        evaluation: The result of the evaluation episodes.

    Returns:
        The cliff fall rate or the arm frequencies, if relevant.
    """
    environment = trainer.evaluation_environment
    n_episodes = len(evaluation.returns)
    diagnostics = evaluation.diagnostics
    if isinstance(environment, CliffGrid):
        return {"cliff_fall_rate": diagnostics.get("cliff_falls", 0) / n_episodes}

    if isinstance(environment, KnownBandit):
        return {
            "arm_frequencies": tuple(
                diagnostics.get(f"pulls_arm_{arm}", 0) / n_episodes
                for arm in range(environment.action_count)
            )
        }

    return {}


def execute_run(run: RunSpec) -> RunOutcome:
    """Execute a run.

    Args:
        run: The specification of the run.

    Returns:
        The outcome of the run.
    """
    config = run.config
    experiment = config.experiment
    agent = config.agent
    LOGGER.info("Start the run %s.", run.run_id)
    with Timer() as timer:
        write_run_files(run.directory, config, experiment.seeds, run.command_line)
        trainer = Trainer(experiment.env, agent)
        records = trainer.run(experiment.steps)
        emit_metrics(
            create_rows(records, run.run_id, experiment.env, agent),
            run.directory / METRICS_FILE_NAME,
        )
        if experiment.save_checkpoint:
            trainer.save_checkpoint(run.directory / CHECKPOINT_FILE_NAME)

        final_settings = {}
        if run.final_eval_episodes:
            evaluation = trainer.evaluate(
                run.final_eval_episodes, min_steps=run.final_eval_steps
            )
            final_settings = {
                "final_eval_return": evaluation.mean,
                **_get_risk_diagnostics(trainer, evaluation),
            }

    LOGGER.info("The run %s lasted %.2f s.", run.run_id, timer.elapsed_time)
    return RunOutcome(
        run.run_id,
        eval_returns=tuple(
            (record.step, record.eval_return)
            for record in records
            if record.eval_return is not None
        ),
        **final_settings,
    )


def _get_outcome(run: RunSpec, get_outcome: Callable[[], RunOutcome]) -> RunOutcome:
    """Return the outcome of a run, recording its failure if any.

    Args:
        run: The specification of the run.
        get_outcome: The function executing the run or waiting for its outcome.

    Returns:
        The outcome of the run.
    """
    try:
        return get_outcome()
    except Exception as error:  # noqa: BLE001
        LOGGER.error("The run %s failed: %s", run.run_id, error)
        return RunOutcome(run.run_id, status="failed", error=str(error))


def execute_runs(runs: Sequence[RunSpec], n_jobs: int = 1) -> list[RunOutcome]:
    """Execute independent runs.

    Args:
        runs: The specifications of the runs.
        n_jobs: The maximum number of runs executed in parallel processes.
            If 1, execute the runs sequentially in the current process.

    Returns:
        The outcomes of the runs in the order of the specifications.

    Raises:
        ValueError: When the number of jobs is lower than 1.
    """
    if n_jobs < 1:
        msg = f"The number of jobs must be at least 1; got {n_jobs}."
        raise ValueError(msg)

    if n_jobs == 1:
        return [_get_outcome(run, lambda run=run: execute_run(run)) for run in runs]

    with ProcessPoolExecutor(max_workers=n_jobs) as executor:
        futures = [executor.submit(execute_run, run) for run in runs]
        return [
            _get_outcome(run, future.result) for run, future in zip(runs, futures)
        ]


def _create_run(
    config: ExperimentConfig,
    run_id: str,
    seed: int,
    command_line: str,
    final_eval_episodes: int = 0,
    final_eval_steps: int = 0,
    **loss_settings: Any,
) -> RunSpec:
    """Create the specification of a run.

    Args:
        config: The configuration of the experiment.
        run_id: The identifier of the run.
        seed: The seed of the run.
        command_line: The command line of the experiment.
        final_eval_episodes: The minimum number of evaluation episodes
            after the training.
        final_eval_steps: The minimum number of environment steps
            of the evaluation after the training.
        **loss_settings: The settings of the loss specific to the run.

    Returns:
        The specification of the run.
    """
    agent = config.agent
    agent = agent.model_copy(
        update={"seed": seed, "loss": agent.loss.model_copy(update=loss_settings)}
    )
    return RunSpec(
        run_id,
        ExperimentConfig(config.experiment, agent, config.sweep, config.text),
        config.experiment.out_dir / run_id,
        command_line,
        final_eval_episodes,
        final_eval_steps,
    )


def run_experiment(
    config: ExperimentConfig, n_jobs: int = 1, command_line: str = ""
) -> list[RunOutcome]:
    """Execute a run per seed of an experiment.

    Args:
        config: The configuration of the experiment.
        n_jobs: The maximum number of runs executed in parallel processes.
        command_line: The command line of the experiment.

    Returns:
        The outcomes of the runs.
    """
    experiment = config.experiment
    return execute_runs(
        [
            _create_run(config, f"{experiment.name}_seed{seed}", seed, command_line)
            for seed in experiment.seeds
        ],
        n_jobs,
    )


@dataclass(frozen=True)
class AblationRow:
    """A row of the summary of the ablation of the numbers of quantile levels."""

    n_online: int
    """The number of quantile levels sampled for the online network."""

    n_target: int
    """The number of quantile levels sampled for the target network."""

    seed: int
    """The seed."""

    status: str
    """The status of the run."""

    early_eval_return: float | None = None
    """The mean evaluation return at the beginning of the training."""

    late_eval_return: float | None = None
    """The mean evaluation return at the end of the training."""


@dataclass(frozen=True)
class RiskSweepRow:
    """A row of the summary of the sweep of the distortion risk measures."""

    measure: str
    """The distortion risk measure of the policy."""

    seed: int
    """The seed."""

    status: str
    """The status of the run."""

    final_eval_return: float | None = None
    """The mean return of the evaluation after the training."""

    cliff_fall_rate: float | None = None
    """The proportion of the completed evaluation episodes ending in the cliff,
    if any."""

    arm_frequencies: tuple[float, ...] = ()
    """The frequencies of the arms pulled by the evaluation episodes, if any."""


def _format_cell(value: Any) -> str:
    """Format a cell of a summary file.

    Args:
        value: The value of the cell.

    Returns:
        The formatted value.
    """
    if isinstance(value, tuple):
        return ";".join(format_float(item) for item in value)

    if isinstance(value, float) or value is None:
        return format_float(value)

    return str(value)


def write_summary(
    rows: Iterable[AblationRow | RiskSweepRow],
    file_path: str | Path,
    row_class: type[AblationRow | RiskSweepRow],
) -> None:
    """Write the summary of a grid of runs.

    Args:
        rows: The rows of the summary.
        file_path: The path to the summary file.
        row_class: The class of the rows.
    """
    with Path(file_path).open("w", newline="") as file:
        writer = csv.writer(file)
        writer.writerow([item.name for item in fields(row_class)])
        for row in rows:
            writer.writerow([_format_cell(value) for value in astuple(row)])


def run_ablation_nn(
    config: ExperimentConfig, n_jobs: int = 1, command_line: str = ""
) -> list[AblationRow]:
    """Train agents with different numbers of quantile levels in the loss.

    A run is executed for each number $N$ of quantile levels
    sampled for the online network,
    each number $N'$ of quantile levels sampled for the target network
    and each seed.
    The summary `ablation_nn.csv` reports the mean evaluation returns
    at the beginning and at the end of the training.

    Args:
        config: The configuration of the experiment.
        n_jobs: The maximum number of runs executed in parallel processes.
        command_line: The command line of the experiment.

    Returns:
        The rows of the summary.
    """
    experiment = config.experiment
    sweep = config.sweep
    cells = [
        (n_online, n_target, seed)
        for n_online in sweep.n_online
        for n_target in sweep.n_target
        for seed in experiment.seeds
    ]
    runs = [
        _create_run(
            config,
            f"{experiment.name}_N{n_online}_Nprime{n_target}_seed{seed}",
            seed,
            command_line,
            n_online=n_online,
            n_target=n_target,
        )
        for n_online, n_target, seed in cells
    ]
    phase_steps = max(int(sweep.phase_fraction * experiment.steps), 1)
    rows = [
        AblationRow(
            *cell,
            outcome.status,
            outcome.get_mean_eval_return(1, phase_steps),
            outcome.get_mean_eval_return(
                experiment.steps - phase_steps + 1, experiment.steps
            ),
        )
        for cell, outcome in zip(cells, execute_runs(runs, n_jobs))
    ]
    write_summary(rows, experiment.out_dir / "ablation_nn.csv", AblationRow)
    return rows


def run_risk_sweep(
    config: ExperimentConfig, n_jobs: int = 1, command_line: str = ""
) -> list[RiskSweepRow]:
    """Train agents with different distortion risk measures.

    A run is executed for each measure and each seed,
    followed by an evaluation of the greedy policy
    whose summary `risk_sweep.csv` reports the mean return
    and the risk diagnostics,
    namely the cliff fall rate in the cliff grid
    and the arm frequencies in the bandits.

    Args:
        config: The configuration of the experiment.
        n_jobs: The maximum number of runs executed in parallel processes.
        command_line: The command line of the experiment.

    Returns:
        The rows of the summary.
    """
    experiment = config.experiment
    cells = [
        (measure, seed)
        for measure in config.sweep.measures
        for seed in experiment.seeds
    ]
    runs = [
        _create_run(
            config,
            f"{experiment.name}_{measure.replace(':', '_')}_seed{seed}",
            seed,
            command_line,
            config.sweep.final_eval_episodes,
            config.sweep.final_eval_steps,
            policy_measure=measure,
        )
        for measure, seed in cells
    ]
    rows = [
        RiskSweepRow(
            *cell,
            outcome.status,
            outcome.final_eval_return,
            outcome.cliff_fall_rate,
            outcome.arm_frequencies,
        )
        for cell, outcome in zip(cells, execute_runs(runs, n_jobs))
    ]
    write_summary(rows, experiment.out_dir / "risk_sweep.csv", RiskSweepRow)
    return rows
