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
"""A factory of environments."""

from __future__ import annotations

from typing import TYPE_CHECKING

from gemseo.core.base_factory import BaseFactory

from gemseo_iqn.envlab.environments.base_environment import BaseEnvironment

if TYPE_CHECKING:
    from numpy.random import Generator


def _convert(value: str) -> int | float | str:
    """Convert a parameter value to an integer or a float when possible.

    Args:
        value: The value.

    Returns:
        The converted value.
    """
    for cast in (int, float):
        try:
            return cast(value)
        except ValueError:
            pass

    return value


class EnvironmentFactory(BaseFactory):
    """A factory of environments.

    An environment can be described by a string `"name:arguments"`,
    e.g. `"bandit:risky"`, `"chain:L=5,p=1.0"` or `"cliff:p=0.1"`,
    where `name` is the short name of the environment
    and `arguments` comma-separated `key=value` pairs;
    a first argument without `=` is the variant of the environment.
    """

    _CLASS = BaseEnvironment
    _PACKAGE_NAMES = ("gemseo_iqn.envlab.environments",)

    __short_names_to_class_names: dict[str, str]
    """The {short name: class_name} mapping."""

    def __init__(self) -> None:  # noqa: D107
        super().__init__()
        self.__short_names_to_class_names = {}
        for class_name in self.class_names:
            short_name = getattr(self.get_class(class_name), "SHORT_NAME", "")
            if short_name:
                self.__short_names_to_class_names[short_name] = class_name

    @property
    def short_names(self) -> list[str]:
        """The short names of the environments."""
        return sorted(self.__short_names_to_class_names)

    def create(
        self, environment_name: str, rng: Generator | None = None, **parameters: str
    ) -> BaseEnvironment:
        """
        Args:
            environment_name: Either the class name or the short name
                of the environment.
            rng: The random number generator of the transitions.
                If `None`, use a generator seeded with the default seed.
            **parameters: The parameters of the environment.

        Raises:
            ValueError: When the environment is unknown.
        """  # noqa: D205 D212 D415
        if environment_name in self.class_names:
            class_name = environment_name
        elif environment_name in self.__short_names_to_class_names:
            class_name = self.__short_names_to_class_names[environment_name]
        else:
            msg = (
                f"The environment {environment_name!r} is unknown; "
                f"available ones are {', '.join(self.short_names)}."
            )
            raise ValueError(msg)

        return super().create(class_name, rng=rng, **parameters)

    def parse(self, description: str, rng: Generator | None = None) -> BaseEnvironment:
        """Create an environment from its description `"name:arguments"`.

        Args:
            description: The description of the environment.
            rng: The random number generator of the transitions.
                If `None`, use a generator seeded with the default seed.

        Returns:
            The environment.

        Raises:
            ValueError: When the description cannot be parsed.
        """
        name, _, arguments = description.strip().partition(":")
        if name in self.__short_names_to_class_names:
            aliases = self.get_class(
                self.__short_names_to_class_names[name]
            ).PARAMETER_ALIASES
        else:
            aliases = {}

        parameters = {}
        for index, argument in enumerate(filter(None, arguments.split(","))):
            key, separator, value = argument.strip().partition("=")
            if separator:
                key = key.strip()
                parameters[aliases.get(key, key)] = _convert(value.strip())
            elif index == 0:
                parameters["variant"] = key
            else:
                msg = (
                    f"The argument {argument!r} of the environment {description!r} "
                    "is not a key=value pair."
                )
                raise ValueError(msg)

        try:
            return self.create(name, rng=rng, **parameters)
        except TypeError as error:
            msg = f"The environment {description!r} has invalid parameters: {error}"
            raise ValueError(msg) from None
