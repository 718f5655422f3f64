from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional, Sequence

from rbm.shared.errors import ValidationError


@dataclass(frozen=True)
class Instance:
    """Instancja RBM: bufor k, sekwencja kolorów c(1..n).

    Kolory są gęstymi id 0..|C|-1 (w kolejności pierwszego wystąpienia),
    `labels` trzyma oryginalne tokeny. Element i (1-based) przychodzi w chwili i.
    Tablice next_of / is_last liczone raz w __post_init__.
    """

    k: int
    colors: tuple[int, ...]
    labels: tuple[str, ...]
    seed: Optional[int] = None
    _next: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValidationError(f"Buffer capacity must be >= 1 (got k={self.k})", details={"k": self.k})
        if not self.colors:
            raise ValidationError("Instance must contain at least one item")
        used = set(self.colors)
        if used != set(range(len(self.labels))):
            raise ValidationError(
                "Color ids must be dense 0..|C|-1 and every label must be used",
                details={"labels": len(self.labels), "used": sorted(used)},
            )

        n = len(self.colors)
        sentinel = self.k + n + 2
        nxt = [0] * (n + 1)
        last_seen: dict[int, int] = {}
        for i in range(n, 0, -1):
            c = self.colors[i - 1]
            nxt[i] = last_seen.get(c, sentinel)
            last_seen[c] = i
        object.__setattr__(self, "_next", tuple(nxt))

    @classmethod
    def from_tokens(cls, k: int, tokens: Sequence[str], seed: Optional[int] = None) -> "Instance":
        ids: dict[str, int] = {}
        colors: list[int] = []
        for t in tokens:
            if t not in ids:
                ids[t] = len(ids)
            colors.append(ids[t])
        return cls(k=k, colors=tuple(colors), labels=tuple(ids), seed=seed)

    @property
    def n(self) -> int:
        return len(self.colors)

    @property
    def num_colors(self) -> int:
        return len(self.labels)

    @property
    def first_slot(self) -> int:
        return self.k + 1

    @property
    def last_slot(self) -> int:
        return self.k + self.n

    @property
    def sentinel(self) -> int:
        return self.k + self.n + 2

    def slots(self) -> range:
        return range(self.first_slot, self.last_slot + 1)

    def items(self) -> range:
        return range(1, self.n + 1)

    def color(self, i: int) -> int:
        return self.colors[i - 1]

    def label(self, i: int) -> str:
        return self.labels[self.colors[i - 1]]

    def next_of(self, i: int) -> int:
        return self._next[i]

    def is_last(self, i: int) -> bool:
        return self._next[i] == self.sentinel

    def first_slot_of(self, i: int) -> int:
        """Najwcześniejszy slot, w którym element i może zostać wydany."""
        return max(i, self.first_slot)

    def tokens(self) -> list[str]:
        return [self.labels[c] for c in self.colors]

    def digest(self) -> str:
        raw = f"{self.k}|{' '.join(self.tokens())}".encode("utf-8")
        return hashlib.sha256(raw).hexdigest()[:16]


@dataclass(frozen=True)
class Schedule:
    """Przypisanie slot -> element; trzymane jako posortowane pary (slot, item).

    Może być niepoprawne (np. z pliku); poprawność sprawdza validate_schedule.
    """

    k: int
    assignment: tuple[tuple[int, int], ...]

    @classmethod
    def from_items(cls, k: int, items: Sequence[int]) -> "Schedule":
        return cls(k=k, assignment=tuple((k + 1 + pos, item) for pos, item in enumerate(items)))

    @classmethod
    def from_mapping(cls, k: int, mapping: Mapping[int, int]) -> "Schedule":
        return cls(k=k, assignment=tuple(sorted(mapping.items())))

    def items_in_order(self) -> list[int]:
        return [item for _slot, item in self.assignment]

    def as_mapping(self) -> dict[int, int]:
        return dict(self.assignment)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.assignment)

    def __len__(self) -> int:
        return len(self.assignment)


@dataclass(frozen=True)
class Violation:
    kind: str
    slot: Optional[int]
    item: Optional[int]
    message: str


@dataclass(frozen=True)
class ScheduleReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first(self) -> Optional[Violation]:
        return self.violations[0] if self.violations else None
