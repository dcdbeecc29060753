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
"""The experiment configuration.

An experiment file is a flat text file of `key = value` lines
grouped by `[section]` headers:

```
# A risk-averse agent in the cliff grid.
[experiment]
env = cliff:p=0.1
steps = 20000
seeds = 0, 1, 2

[agent]
algorithm = iqn
learning_rate = 5e-4

[loss]
policy_measure = cvar:0.25

[architecture]
psi_hidden = 64, 64

[sweep]
measures = neutral, cvar:0.25
```

The sections `experiment`, `agent`, `loss`, `architecture` and `sweep`
are bound to
[ExperimentSettings][gemseo_iqn.harness.experiment_config.ExperimentSettings],
[AgentConfig][gemseo_iqn.agent.agent_settings.AgentConfig],
[LossConfig][gemseo_iqn.losses.loss_settings.LossConfig],
[ArchitectureSpec][gemseo_iqn.networks.architecture_settings.ArchitectureSpec]
and [SweepSettings][gemseo_iqn.harness.experiment_config.SweepSettings].
A `#` starting a line or following a space starts a comment
and the list-valued fields take comma-separated values.
A section or a key cannot be repeated.
"""

from __future__ import annotations

import sys
from configparser import ConfigParser
from configparser import DuplicateOptionError
from configparser import DuplicateSectionError
from configparser import MissingSectionHeaderError
from configparser import ParsingError
from dataclasses import dataclass
from dataclasses import field
from enum import Enum
from importlib.metadata import PackageNotFoundError
from importlib.metadata import version
from pathlib import Path
from typing import TYPE_CHECKING
from typing import Any
from typing import get_origin

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import NonNegativeInt
from pydantic import PositiveFloat
from pydantic import PositiveInt
from pydantic import ValidationError
from pydantic import field_validator

from gemseo_iqn.agent.agent_settings import AgentConfig
from gemseo_iqn.distortion.factory import parse_measure
from gemseo_iqn.envlab.factory import EnvironmentFactory
from gemseo_iqn.losses.loss_settings import LossConfig
from gemseo_iqn.networks.architecture_settings import ArchitectureSpec

if TYPE_CHECKING:
    from collections.abc import Iterable
    from collections.abc import Iterator
    from collections.abc import Mapping


class ConfigError(ValueError):
    """An invalid line of an experiment file."""

    line_number: int
    """The number of the offending line, starting at 1, or 0 for the whole file."""

    key: str
    """The offending key, if any."""

    line: str
    """The text of the offending line."""

    def __init__(
        self, reason: str, line_number: int = 0, key: str = "", line: str = ""
    ) -> None:
        """
        Args:
            reason: The reason of the error.
            line_number: The number of the offending line, starting at 1,
                or 0 for the whole file.
            key: The offending key, if any.
            line: The text of the offending line.
        """  # noqa: D205 D212 D415
        self.line_number = line_number
        self.key = key
        self.line = line
        if line_number:
            reason = f"Line {line_number} ({line.strip()!r}): {reason}"

        super().__init__(reason)


class ExperimentSettings(BaseModel):
    """The settings of an experiment."""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(
        default="experiment",
        description="The name of the experiment prefixing the names of the runs.",
    )

    env: str = Field(
        default="bandit:risky",
        description="""The description of the environment, e.g. `"cliff:p=0.1"`.""",
    )

    steps: PositiveInt = Field(
        default=10000, description="The number of environment steps of a run."
    )

    seeds: tuple[NonNegativeInt, ...] = Field(
        default=(0,), min_length=1, description="The seeds of the runs."
    )

    out_dir: Path = Field(
        default=Path("runs"), description="The directory of the outputs of the runs."
    )

    save_checkpoint: bool = Field(
        default=True,
        description="Whether to save the parameters of the online network of a run.",
    )

    @field_validator("env")
    @classmethod
    def __check_env(cls, env: str) -> str:
        """Check that the environment can be created."""
        EnvironmentFactory().parse(env)
        return env


class SweepSettings(BaseModel):
    """The axes of the grids of runs."""

    model_config = ConfigDict(extra="forbid")

    n_online: tuple[PositiveInt, ...] = Field(
        default=(1, 8, 32, 64),
        min_length=1,
        description="""The numbers N of quantile levels sampled for the online network
explored by the ablation.""",
    )

    n_target: tuple[PositiveInt, ...] = Field(
        default=(1, 8, 32, 64),
        min_length=1,
        description="""The numbers N' of quantile levels sampled for the target network
explored by the ablation.""",
    )

    phase_fraction: PositiveFloat = Field(
        default=0.1,
        le=0.5,
        description="""The fraction of the steps defining the early and late phases
of the training whose mean evaluation returns are reported by the ablation.""",
    )

    measures: tuple[str, ...] = Field(
        default=("neutral", "cpw:0.71", "wang:1.5", "cvar:0.1", "cvar:0.25"),
        min_length=1,
        description="The distortion risk measures explored by the risk sweep.",
    )

    final_eval_episodes: PositiveInt = Field(
        default=100,
        description="""The minimum number of evaluation episodes after a run
of the risk sweep to estimate the risk diagnostics.""",
    )

    final_eval_steps: NonNegativeInt = Field(
        default=10_000,
        description="""The minimum number of environment steps of the evaluation
after a run of the risk sweep;
the last episode is completed and the rates are per completed episode.""",
    )

    @field_validator("measures")
    @classmethod
    def __check_measures(cls, measures: tuple[str, ...]) -> tuple[str, ...]:
        """Check that the measures can be parsed."""
        return tuple(str(parse_measure(measure)) for measure in measures)


SECTIONS: dict[str, type[BaseModel]] = {
    "experiment": ExperimentSettings,
    "agent": AgentConfig,
    "loss": LossConfig,
    "architecture": ArchitectureSpec,
    "sweep": SweepSettings,
}
"""The sections of an experiment file bound to their settings."""

_NESTED_SECTIONS = ("loss", "architecture")
"""The sections nested in the agent section."""


@dataclass(frozen=True)
class ExperimentConfig:
    """An experiment configuration."""

    experiment: ExperimentSettings = field(default_factory=ExperimentSettings)
    """The settings of the experiment."""

    agent: AgentConfig = field(default_factory=AgentConfig)
    """The settings of the agent."""

    sweep: SweepSettings = field(default_factory=SweepSettings)
    """The axes of the grids of runs."""

    text: str = ""
    """The text of the experiment file."""

    def update(self, **settings: Any) -> ExperimentConfig:
        """Return a copy with updated experiment settings.

        Args:
            **settings: The experiment settings to update;
                `None` values are ignored.

        Returns:
            The updated configuration.

        Raises:
            ValidationError: When a setting is invalid.
        """
        settings = {key: value for key, value in settings.items() if value is not None}
        experiment = ExperimentSettings(**{**self.experiment.model_dump(), **settings})
        return ExperimentConfig(experiment, self.agent, self.sweep, self.text)


def _is_sequence_field(model: type[BaseModel], key: str) -> bool:
    """Whether a field of a model takes a comma-separated list of values.

    Args:
        model: The model.
        key: The name of the field.

    Returns:
        Whether the field takes a list of values.
    """
    return get_origin(model.model_fields[key].annotation) in {tuple, list}


class _ExperimentFileParser(ConfigParser):
    """A strict parser of experiment files recording the lines of the keys."""

    lines: list[str]
    """The lines of the experiment file."""

    headers: list[tuple[str, int]]
    """The section headers with their line numbers."""

    locations: dict[tuple[str, str], int]
    """The line numbers of the keys per section."""

    __line_number: int
    """The number of the line being read, or 0 outside reading."""

    __section: str
    """The section being read."""

    def __init__(self, text: str) -> None:
        """
        Args:
            text: The text of the experiment file.
        """  # noqa: D205 D212 D415
        super().__init__(
            delimiters=("=",),
            comment_prefixes=("#",),
            inline_comment_prefixes=("#",),
            strict=True,
            empty_lines_in_values=False,
            interpolation=None,
        )
        self.lines = text.splitlines()
        self.headers = []
        self.locations = {}
        self.__line_number = 0
        self.__section = ""

    def read_lines(self) -> None:
        """Read the lines of the experiment file."""
        self.read_file(self.__iter_lines(), source="<experiment file>")

    def __iter_lines(self) -> Iterator[str]:
        """Iterate over the lines while tracking the line number and the section.

        Yields:
            The lines.
        """
        for self.__line_number, line in enumerate(self.lines, start=1):
            header = self.SECTCRE.match(line.split("#", 1)[0].strip())
            if header:
                self.__section = header.group("header")
                self.headers.append((self.__section, self.__line_number))

            yield f"{line}\n"

        self.__line_number = 0

    def optionxform(self, optionstr: str) -> str:  # noqa: D102
        if self.__line_number:
            self.locations.setdefault(
                (self.__section, optionstr), self.__line_number
            )

        return optionstr


def _read_sections(text: str) -> _ExperimentFileParser:
    """Read the sections of an experiment file.

    Args:
        text: The text of the experiment file.

    Returns:
        The parser holding the sections.

    Raises:
        ConfigError: When a line is malformed
            or a section or a key is repeated.
    """
    parser = _ExperimentFileParser(text)
    try:
        parser.read_lines()
    except MissingSectionHeaderError as error:
        line_number = error.lineno
        key = parser.lines[line_number - 1].partition("=")[0].strip()
        msg = f"The key '{key}' must follow a [section] header."
    except DuplicateSectionError as error:
        line_number = error.lineno
        key = ""
        msg = f"The section '{error.section}' is repeated."
    except DuplicateOptionError as error:
        line_number = error.lineno
        key = error.option
        msg = f"The key '{key}' is repeated in the section '{error.section}'."
    except ParsingError as error:
        line_number = error.errors[0][0]
        key = parser.lines[line_number - 1].partition("=")[0].strip()
        msg = "A line must be a [section] header or a key = value pair."
    else:
        return parser

    raise ConfigError(msg, line_number, key, parser.lines[line_number - 1])


def parse_experiment_config(text: str) -> ExperimentConfig:
    """Parse the text of an experiment file.

    Args:
        text: The text of the experiment file.

    Returns:
        The experiment configuration.

    Raises:
        ConfigError: When a line is malformed, a section or a key is unknown,
            a section or a key is repeated or a value is invalid.
    """
    parser = _read_sections(text)
    for section, line_number in parser.headers:
        if section not in SECTIONS:
            msg = (
                f"The section '{section}' is unknown; "
                f"available ones are {', '.join(SECTIONS)}."
            )
            raise ConfigError(msg, line_number, line=parser.lines[line_number - 1])

    values: dict[str, dict[str, Any]] = {name: {} for name in SECTIONS}
    for section in parser.sections():
        model = SECTIONS[section]
        for key in parser.options(section):
            line_number = parser.locations[section, key]
            if key not in model.model_fields or (
                section == "agent" and key in _NESTED_SECTIONS
            ):
                msg = f"The key '{key}' is unknown in the section '{section}'."
                raise ConfigError(msg, line_number, key, parser.lines[line_number - 1])

            value = parser.get(section, key)
            if _is_sequence_field(model, key):
                value = [item.strip() for item in value.split(",") if item.strip()]

            values[section][key] = value

    settings = {}
    for name, model in SECTIONS.items():
        try:
            settings[name] = model(**values[name])
        except ValidationError as error:
            details = error.errors()[0]
            key = str(details["loc"][0]) if details["loc"] else ""
            line_number = parser.locations.get((name, key), 0)
            line = parser.lines[line_number - 1] if line_number else ""
            reason = details["msg"].rstrip(".")
            msg = f"Invalid value of '{key}' in [{name}]: {reason}."
            raise ConfigError(msg, line_number, key, line) from error

    agent = settings["agent"].model_copy(
        update={name: settings[name] for name in _NESTED_SECTIONS}
    )
    return ExperimentConfig(settings["experiment"], agent, settings["sweep"], text)


def read_experiment_config(file_path: str | Path) -> ExperimentConfig:
    """Read an experiment file.

    Args:
        file_path: The path to the experiment file.

    Returns:
        The experiment configuration.

    Raises:
        ConfigError: When the experiment file is invalid.
    """
    return parse_experiment_config(Path(file_path).read_text())


def _format_value(value: Any) -> str:
    """Format a setting as in an experiment file.

    Args:
        value: The setting.

    Returns:
        The formatted setting.
    """
    if isinstance(value, (tuple, list)):
        return ", ".join(_format_value(item) for item in value)

    if isinstance(value, Enum):
        return str(value.value)

    if isinstance(value, bool):
        return str(value).lower()

    return str(value)


def _format_section(name: str, settings: Mapping[str, Any]) -> list[str]:
    """Format a section of an experiment file.

    Args:
        name: The name of the section.
        settings: The settings of the section.

    Returns:
        The lines of the section.
    """
    return [
        f"[{name}]",
        *(f"{key} = {_format_value(value)}" for key, value in settings.items()),
    ]


def format_experiment_config(config: ExperimentConfig) -> str:
    """Format a configuration as an experiment file with all the settings.

    Args:
        config: The experiment configuration.

    Returns:
        The text of the experiment file.
    """
    agent = config.agent
    sections = {
        "experiment": config.experiment.model_dump(),
        "agent": agent.model_dump(exclude=set(_NESTED_SECTIONS)),
        "loss": agent.loss.model_dump(),
        "architecture": agent.architecture.model_dump(),
        "sweep": config.sweep.model_dump(),
    }
    lines = []
    for name, settings in sections.items():
        lines.extend([*_format_section(name, settings), ""])

    return "\n".join(lines)


def get_git_revision() -> str:
    """Return the git revision of the package.

    Returns:
        The hexadecimal SHA of the revision, `"unknown"` out of a git repository.
    """
    try:
        import git
    except ImportError:
        # GitPython requires the git executable.
        return "unknown"

    try:
        repository = git.Repo(Path(__file__).parent, search_parent_directories=True)
        return repository.head.commit.hexsha
    except (git.InvalidGitRepositoryError, git.NoSuchPathError, ValueError):
        return "unknown"


def get_package_version() -> str:
    """Return the version of the package.

    Returns:
        The version, `"unknown"` when the package is not installed.
    """
    try:
        return version("gemseo-iqn")
    except PackageNotFoundError:
        return "unknown"


def write_run_files(
    directory: str | Path,
    config: ExperimentConfig,
    seeds: Iterable[int],
    command_line: str = "",
) -> Path:
    """Write the configuration and the provenance of a run in its directory.

    The directory receives
    the text of the experiment file (`config.txt`),
    the fully resolved configuration of the run (`resolved_config.txt`)
    and the provenance of the run (`provenance.txt`).

    Args:
        directory: The directory of the run, created if missing.
        config: The configuration of the run.
        seeds: The seeds of the experiment.
        command_line: The command line of the experiment.
            If empty, use the arguments of the Python process.

    Returns:
        The directory of the run.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    (directory / "config.txt").write_text(config.text)
    (directory / "resolved_config.txt").write_text(format_experiment_config(config))
    provenance = (
        f"version = {get_package_version()}",
        f"git_revision = {get_git_revision()}",
        f"seeds = {_format_value(tuple(seeds))}",
        f"command_line = {command_line or ' '.join(sys.argv)}",
    )
    (directory / "provenance.txt").write_text("\n".join(provenance) + "\n")
    return directory
