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
"""A factory of distortion risk measures."""

from __future__ import annotations

from functools import cache

from gemseo.core.base_factory import BaseFactory

from gemseo_iqn.distortion.measures.base_distortion_measure import (
    BaseDistortionMeasure,
)


class DistortionMeasureFactory(BaseFactory):
    """A factory of distortion risk measures.

    A measure can be described by a string `"name:eta"`,
    e.g. `"cvar:0.1"`, `"wang:-0.75"` or `"neutral"`,
    where `name` is the short name of the measure
    and `eta` its optional parameter.
    """

    _CLASS = BaseDistortionMeasure
    _PACKAGE_NAMES = ("gemseo_iqn.distortion.measures",)

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
        """The short names of the measures."""
        return sorted(self.__short_names_to_class_names)

    def create(
        self, measure_name: str, eta: float | None = None
    ) -> BaseDistortionMeasure:
        """
        Args:
            measure_name: Either the class name or the short name of the measure.
            eta: The parameter of the measure.
                If `None`, use the default value of the measure.

        Raises:
            ValueError: When the measure is unknown.
        """  # noqa: D205 D212 D415
        if measure_name in self.class_names:
            class_name = measure_name
        elif measure_name in self.__short_names_to_class_names:
            class_name = self.__short_names_to_class_names[measure_name]
        else:
            msg = (
                f"The distortion risk measure {measure_name!r} is unknown; "
                f"available ones are {', '.join(self.short_names)}."
            )
            raise ValueError(msg)

        return super().create(class_name, eta=eta)

    def parse(self, description: str) -> BaseDistortionMeasure:
        """Create a measure from its description `"name:eta"`.

        Args:
            description: The description of the measure.

        Returns:
            The measure.

        Raises:
            ValueError: When the description cannot be parsed.
        """
        name, separator, eta = description.strip().partition(":")
        if not separator:
            return self.create(name)

        try:
            value = float(eta)
        except ValueError:
            msg = (
                f"The parameter of the distortion risk measure {description!r} "
                "is not a number."
            )
            raise ValueError(msg) from None

        return self.create(name, value)


@cache
def parse_measure(description: str) -> BaseDistortionMeasure:
    """Create a measure from its description `"name:eta"`, once per description.

    Args:
        description: The description of the measure.

    Returns:
        The measure, shared by the callers using the same description.

    Raises:
        ValueError: When the description cannot be parsed.
    """
    return DistortionMeasureFactory().parse(description)
