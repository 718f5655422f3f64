from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from rbm.lp.numeric import Number
from rbm.shared.enums import ConstantsPreset, SolveMode
from rbm.shared.errors import ConstantsError

PHI = (1 + math.sqrt(5)) / 2


def _exceeds_phi(a: Fraction) -> bool:
    # φ jest dodatnim pierwiastkiem x² - x - 1, więc a > φ  <=>  a > 1 i a² > a + 1
    return a > 1 and a * a > a + 1


@dataclass(frozen=True)
class Constants:
    delta1: Fraction
    delta2: Fraction
    delta3: Fraction
    name: str = "custom"

    @property
    def gamma(self) -> Fraction:
        d1, d2 = self.delta1, self.delta2
        return ((d2 - 2 * d1) / (d2 * (d2 + d1))) * ((1 - d1 - d2) / (1 - d1))

    @property
    def gamma_threshold(self) -> float:
        """(1 + φ) / (1 - δ3): dolna granica γ potrzebna, by case 4 wystąpił najwyżej raz w fazie."""
        return (1 + PHI) / float(1 - self.delta3)

    @property
    def cost_factor(self) -> Fraction:
        return 3 / self.delta1 + 4 / self.delta3

    @property
    def alpha(self) -> Fraction:
        return self.cost_factor + 4

    @property
    def uncharged_ratio(self) -> Fraction:
        """(1 - δ1 - δ2) / (1 - δ1): ile wolumenu Δ musi pozostać nienaliczone."""
        return (1 - self.delta1 - self.delta2) / (1 - self.delta1)

    def cost_bound(self, z: Number) -> Number:
        if isinstance(z, float):
            return float(self.cost_factor) * z + 4
        return self.cost_factor * z + 4

    def validate(self) -> None:
        for name in ("delta1", "delta2", "delta3"):
            v = getattr(self, name)
            if not 0 < v < 1:
                raise ConstantsError(f"{name}={v} must lie in (0, 1)", details={name: str(v)})
        if not self.delta2 > 2 * self.delta1:
            raise ConstantsError(
                f"delta2={self.delta2} must exceed 2*delta1={2 * self.delta1}",
                details={"delta1": str(self.delta1), "delta2": str(self.delta2)},
            )
        if self.delta1 + self.delta2 >= 1:
            raise ConstantsError("delta1 + delta2 must be < 1")
        if not _exceeds_phi(self.gamma * (1 - self.delta3) - 1):
            raise ConstantsError(
                f"gamma={float(self.gamma):.9f} must exceed (1+phi)/(1-delta3)={self.gamma_threshold:.9f}",
                details={"gamma": str(self.gamma), "delta3": str(self.delta3)},
            )

    def in_mode(self, mode: SolveMode) -> tuple[Number, Number, Number, Number]:
        """(δ1, δ2, δ3, γ) jako Fraction albo float."""
        vals = (self.delta1, self.delta2, self.delta3, self.gamma)
        if mode == SolveMode.RATIONAL:
            return vals
        return tuple(float(v) for v in vals)  # type: ignore[return-value]


PAPER = Constants(Fraction(1, 40), Fraction(1, 10), Fraction(1, 5), name="paper")
OPTIMIZED = Constants(
    Fraction(2763, 100000),
    Fraction(11416, 100000),
    Fraction(18481, 100000),
    name="optimized",
)

_PRESETS = {
    ConstantsPreset.PAPER: PAPER,
    ConstantsPreset.OPTIMIZED: OPTIMIZED,
}


def load_preset(preset: ConstantsPreset | str) -> Constants:
    try:
        consts = _PRESETS[ConstantsPreset(preset)]
    except ValueError as e:
        allowed = "/".join(p.value for p in ConstantsPreset)
        raise ConstantsError(f"Unknown preset {preset!r}. Expected {allowed}.") from e
    consts.validate()
    return consts
