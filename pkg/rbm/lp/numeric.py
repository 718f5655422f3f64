from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from rbm.shared.enums import SolveMode
from rbm.shared.errors import InstanceParseError

Number = Union[Fraction, float, int]


@dataclass(frozen=True)
class Tolerance:
    """Porównania liczbowe: dokładne w trybie rational (eps=0), z eps w trybie float.

    Nierówności są „pochylone” w stronę spełnienia (a <= b staje się a <= b + eps).
    """

    mode: SolveMode
    eps: float = 0.0

    @property
    def exact(self) -> bool:
        return self.mode == SolveMode.RATIONAL

    def le(self, a: Number, b: Number) -> bool:
        if self.exact:
            return a <= b
        return a <= b + self.eps

    def ge(self, a: Number, b: Number) -> bool:
        if self.exact:
            return a >= b
        return a >= b - self.eps

    def eq(self, a: Number, b: Number, *, terms: int = 1) -> bool:
        if self.exact:
            return a == b
        return abs(a - b) <= self.eps * max(1, terms)

    def positive(self, a: Number) -> bool:
        if self.exact:
            return a > 0
        return a > self.eps


def exact_tolerance() -> Tolerance:
    return Tolerance(mode=SolveMode.RATIONAL, eps=0.0)


def tolerance_for(mode: SolveMode, eps: float) -> Tolerance:
    if mode == SolveMode.RATIONAL:
        return exact_tolerance()
    return Tolerance(mode=SolveMode.FLOAT, eps=float(eps))


def to_number(value: Number | str, mode: SolveMode) -> Number:
    if mode == SolveMode.RATIONAL:
        if isinstance(value, float):
            # float -> ułamek dokładny tylko przez reprezentację dziesiętną
            return Fraction(repr(value))
        return Fraction(value)
    return float(Fraction(value)) if isinstance(value, str) else float(value)


def parse_number(text: str, mode: SolveMode) -> Number:
    raw = text.strip()
    try:
        return to_number(raw, mode)
    except (ValueError, ZeroDivisionError) as e:
        raise InstanceParseError(f"Invalid number {raw!r}", details={"value": raw}) from e


def format_number(value: Number) -> str:
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value)
    return repr(float(value))
