from __future__ import annotations

import sys

if sys.version_info >= (3, 11):
    from enum import StrEnum
else:  # backport of enum.StrEnum (Python 3.11+)
    from enum import Enum

    class StrEnum(str, Enum):
        def __new__(cls, *values):
            value = str(*values)
            member = str.__new__(cls, value)
            member._value_ = value
            return member

        __str__ = str.__str__
        __format__ = str.__format__

        @staticmethod
        def _generate_next_value_(name, start, count, last_values):
            return name.lower()


class SolveMode(StrEnum):
    RATIONAL = "rational"
    FLOAT = "float"


class ConstantsPreset(StrEnum):
    PAPER = "paper"
    OPTIMIZED = "optimized"


class FloatBackend(StrEnum):
    AUTO = "auto"
    TABLEAU = "tableau"
    HIGHS = "highs"


class Distribution(StrEnum):
    UNIFORM = "uniform"
    ROUND_ROBIN = "round-robin"
    BLOCKY = "blocky"


class StepCase(StrEnum):
    CASE_0 = "0"
    CASE_1 = "1"
    CASE_2 = "2"
    CASE_3_SCAN = "3scan"
    CASE_3_FALLBACK = "3fallback"
    CASE_3_WINDOW = "window"
    CASE_4 = "4"
