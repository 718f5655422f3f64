from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace
from typing import Iterator, Optional


@dataclass(frozen=True)
class RunContext:
    run_id: Optional[str]
    instance_digest: Optional[str]
    stage: Optional[str]


_run_ctx: ContextVar[RunContext] = ContextVar(
    "run_context",
    default=RunContext(run_id=None, instance_digest=None, stage=None),
)


def set_run_context(*, run_id: str | None, instance_digest: str | None, stage: str | None = None) -> None:
    _run_ctx.set(RunContext(run_id=run_id, instance_digest=instance_digest, stage=stage))


def get_run_context() -> RunContext:
    return _run_ctx.get()


@contextmanager
def run_stage(stage: str) -> Iterator[RunContext]:
    """Oznacza etap potoku (relaxation / rounding / oracle) na czas bloku."""
    token = _run_ctx.set(replace(_run_ctx.get(), stage=stage))
    try:
        yield _run_ctx.get()
    finally:
        _run_ctx.reset(token)
