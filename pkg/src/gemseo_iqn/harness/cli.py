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
"""The command line interface.

```
gemseo-iqn train experiment.txt --seed 3 --steps 20000
gemseo-iqn eval experiment.txt --checkpoint runs/experiment_seed3/checkpoint.npz
gemseo-iqn ablate-nn experiment.txt --jobs 4
gemseo-iqn risk-sweep experiment.txt --jobs 4
gemseo-iqn plot runs/experiment_seed3/metrics.csv --out returns.svg
gemseo-iqn score --agent 21.0 --human 14.6 --random -20.7
```

The exit code is 0 on success,
1 when the experiment file is invalid
and 2 when a run fails.
"""

from __future__ import annotations

import logging
import sys
from argparse import ArgumentParser
from argparse import Namespace
from pathlib import Path
from typing import TYPE_CHECKING

from gemseo import configure_logger
from pydantic import ValidationError

from gemseo_iqn.agent.trainer import Trainer
from gemseo_iqn.harness.experiment_config import ConfigError
from gemseo_iqn.harness.experiment_config import ExperimentConfig
from gemseo_iqn.harness.experiment_config import read_experiment_config
from gemseo_iqn.harness.grids import run_ablation_nn
from gemseo_iqn.harness.grids import run_experiment
from gemseo_iqn.harness.grids import run_risk_sweep
from gemseo_iqn.harness.plot import plot_eval_returns
from gemseo_iqn.harness.scores import ScoreTriple
from gemseo_iqn.harness.scores import human_gap
from gemseo_iqn.harness.scores import human_normalized_score

if TYPE_CHECKING:
    from collections.abc import Sequence

LOGGER = logging.getLogger(__name__)


def _read_config(args: Namespace) -> ExperimentConfig:
    """Read the experiment file and apply the command line options.

    Args:
        args: The arguments of the command line.

    Returns:
        The experiment configuration.

    Raises:
        ConfigError: When the experiment file is invalid.
    """
    return read_experiment_config(args.config).update(
        seeds=None if args.seed is None else (args.seed,),
        steps=args.steps,
        out_dir=args.out_dir,
    )


def _train(args: Namespace, command_line: str) -> int:
    """Train an agent per seed."""
    outcomes = run_experiment(_read_config(args), args.jobs, command_line)
    failures = [outcome.run_id for outcome in outcomes if outcome.status == "failed"]
    for outcome in outcomes:
        if outcome.eval_returns:
            print(f"{outcome.run_id}: {outcome.eval_returns[-1][1]:.9g}")

    return 2 if failures else 0


def _evaluate(args: Namespace, command_line: str) -> int:
    """Evaluate the greedy policy of a checkpoint."""
    config = _read_config(args)
    agent = config.agent.model_copy(update={"seed": config.experiment.seeds[0]})
    trainer = Trainer(config.experiment.env, agent)
    trainer.load_checkpoint(args.checkpoint)
    evaluation = trainer.evaluate(args.episodes)
    LOGGER.info("Evaluation of %s in %s.", args.checkpoint, trainer.environment)
    print(f"mean_return = {evaluation.mean:.9g}")
    print(f"returns = {', '.join(f'{value:.9g}' for value in evaluation.returns)}")
    return 0


def _ablate_nn(args: Namespace, command_line: str) -> int:
    """Sweep the numbers of quantile levels of the loss."""
    config = _read_config(args)
    run_ablation_nn(config, args.jobs, command_line)
    print(config.experiment.out_dir / "ablation_nn.csv")
    return 0


def _sweep_risk(args: Namespace, command_line: str) -> int:
    """Sweep the distortion risk measures."""
    config = _read_config(args)
    run_risk_sweep(config, args.jobs, command_line)
    print(config.experiment.out_dir / "risk_sweep.csv")
    return 0


def _plot(args: Namespace, command_line: str) -> int:
    """Plot the evaluation returns of a metrics file."""
    plot_eval_returns(args.csv, output_file_path=args.out)
    return 0


def _score(args: Namespace, command_line: str) -> int:
    """Compute the human-normalized score and the human gap."""
    score = human_normalized_score(ScoreTriple(args.agent, args.human, args.random))
    print(f"score = {score:.9g}")
    print(f"gap = {human_gap(score):.9g}")
    return 0


def create_parser() -> ArgumentParser:
    """Create the parser of the command line.

    Returns:
        The parser.
    """
    parser = ArgumentParser(
        prog="gemseo-iqn",
        description="Distributional reinforcement learning experiments.",
    )
    parser.add_argument(
        "--log-level",
        default="INFO",
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
        help="The level of the log messages.",
    )
    run_parser = ArgumentParser(add_help=False)
    run_parser.add_argument("config", type=Path, help="The experiment file.")
    run_parser.add_argument(
        "--seed", type=int, help="The seed replacing the seeds of the experiment."
    )
    run_parser.add_argument(
        "--steps", type=int, help="The number of environment steps of a run."
    )
    run_parser.add_argument(
        "--out-dir", type=Path, help="The directory of the outputs of the runs."
    )
    run_parser.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="The maximum number of runs executed in parallel processes.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    subparser = subparsers.add_parser(
        "train", parents=[run_parser], help="Train an agent per seed."
    )
    subparser.set_defaults(function=_train)
    subparser = subparsers.add_parser(
        "eval", parents=[run_parser], help="Evaluate the greedy policy of a checkpoint."
    )
    subparser.add_argument(
        "--checkpoint", type=Path, required=True, help="The checkpoint file."
    )
    subparser.add_argument(
        "--episodes", type=int, help="The number of evaluation episodes."
    )
    subparser.set_defaults(function=_evaluate)
    subparser = subparsers.add_parser(
        "ablate-nn",
        parents=[run_parser],
        help="Sweep the numbers of quantile levels of the loss.",
    )
    subparser.set_defaults(function=_ablate_nn)
    subparser = subparsers.add_parser(
        "risk-sweep", parents=[run_parser], help="Sweep the distortion risk measures."
    )
    subparser.set_defaults(function=_sweep_risk)
    subparser = subparsers.add_parser(
        "plot", help="Plot the evaluation returns of a metrics file as a line chart."
    )
    subparser.add_argument("csv", type=Path, help="The metrics file.")
    subparser.add_argument(
        "--out", type=Path, required=True, help="The figure file, e.g. returns.svg."
    )
    subparser.set_defaults(function=_plot)
    subparser = subparsers.add_parser(
        "score", help="Compute the human-normalized score and the human gap."
    )
    for name in ("agent", "human", "random"):
        subparser.add_argument(
            f"--{name}", type=float, required=True, help=f"The {name} score."
        )

    subparser.set_defaults(function=_score)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Execute a command.

    Args:
        argv: The arguments of the command line.
            If `None`, use the arguments of the Python process.

    Returns:
        The exit code.
    """
    argv = sys.argv[1:] if argv is None else list(argv)
    args = create_parser().parse_args(argv)
    configure_logger(logger_name="gemseo_iqn", level=args.log_level)
    command_line = " ".join(["gemseo-iqn", *argv])
    try:
        return args.function(args, command_line)
    except (ConfigError, ValidationError) as error:
        print(f"Invalid configuration: {error}", file=sys.stderr)
        return 1
    except Exception as error:  # noqa: BLE001
        LOGGER.debug("The command failed.", exc_info=True)
        print(f"The command failed: {error}", file=sys.stderr)
        return 2
