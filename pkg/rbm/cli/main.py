from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from rbm.app.config import ConfigError, get_settings
from rbm.app.logging import configure_logging
from rbm.cli.commands import EXIT_INPUT, cmd_bench, cmd_gen, cmd_solve, cmd_verify, exit_code_for
from rbm.cli.pipeline import PipelineOptions
from rbm.shared.enums import ConstantsPreset, Distribution, FloatBackend, SolveMode
from rbm.shared.errors import DomainError

logger = logging.getLogger("rbm.cli")


def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=[m.value for m in SolveMode], default=None, help="rational (dokładnie) | float")
    p.add_argument("--preset", choices=[c.value for c in ConstantsPreset], default=None, help="stałe δ1, δ2, δ3")
    p.add_argument("--backend", choices=[b.value for b in FloatBackend], default=None, help="backend LP w trybie float")
    p.add_argument("--oracle", action="store_true", help="policz też dokładne optimum (małe instancje)")
    p.add_argument("--oracle-budget", type=int, default=None)
    claims = p.add_mutually_exclusive_group()
    claims.add_argument("--assert-claims", dest="assert_claims", action="store_true", default=None)
    claims.add_argument("--no-assert-claims", dest="assert_claims", action="store_false")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rbm", description="LP rounding for reordering buffer management")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="wygeneruj instancję")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--colors", type=int, required=True)
    g.add_argument("--distribution", choices=[d.value for d in Distribution], default=Distribution.UNIFORM.value)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", type=Path, default=None)

    s = sub.add_parser("solve", help="relaksacja + zaokrąglenie jednej instancji (raport JSON)")
    s.add_argument("instance", type=Path)
    _add_pipeline_flags(s)
    s.add_argument("--seed", type=int, default=None, help="nadpisz seed w raporcie")
    s.add_argument("--trace", type=Path, default=None)
    s.add_argument("--dump-x", type=Path, default=None)
    s.add_argument("--dump-msm", type=Path, default=None)
    s.add_argument("--dump-schedule", type=Path, default=None)
    s.add_argument("--out", type=Path, default=None)
    s.add_argument("--no-timings", action="store_true", help="zeruj czasy (raport bajtowo powtarzalny)")

    v = sub.add_parser("verify", help="sprawdź zrzut rozwiązania ułamkowego")
    v.add_argument("solution", type=Path)
    v.add_argument("instance", type=Path)
    v.add_argument("--mode", choices=[m.value for m in SolveMode], default=None)

    b = sub.add_parser("bench", help="katalog instancji -> CSV")
    b.add_argument("directory", type=Path)
    _add_pipeline_flags(b)
    b.add_argument("--workers", type=int, default=None)
    b.add_argument("--timings", action="store_true", help="dodaj kolumny z czasami")
    b.add_argument("--pattern", default="*.txt")
    b.add_argument("--out", type=Path, default=None)

    return p


def _options(args: argparse.Namespace, *, timings: bool) -> PipelineOptions:
    settings = get_settings()
    return PipelineOptions(
        mode=SolveMode(args.mode) if args.mode else settings.mode,
        preset=ConstantsPreset(args.preset) if args.preset else settings.preset,
        oracle=args.oracle,
        assert_claims=args.assert_claims,
        timings=timings,
        backend=FloatBackend(args.backend) if args.backend else None,
        oracle_budget=args.oracle_budget,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    try:
        settings = get_settings()
    except ConfigError as e:
        print(f"Config error: {e}", file=sys.stderr)
        return EXIT_INPUT
    configure_logging(settings)

    try:
        if args.command == "gen":
            return cmd_gen(
                n=args.n,
                k=args.k,
                colors=args.colors,
                distribution=Distribution(args.distribution),
                seed=args.seed,
                out=args.out,
            )
        if args.command == "solve":
            return cmd_solve(
                args.instance,
                _options(args, timings=settings.report_timings and not args.no_timings),
                seed=args.seed,
                out=args.out,
                trace=args.trace,
                dump_x=args.dump_x,
                dump_msm=args.dump_msm,
                dump_schedule=args.dump_schedule,
            )
        if args.command == "verify":
            mode = SolveMode(args.mode) if args.mode else settings.mode
            return cmd_verify(args.solution, args.instance, mode)
        if args.command == "bench":
            workers = args.workers or settings.workers
            if workers < 1:
                print("--workers must be >= 1", file=sys.stderr)
                return EXIT_INPUT
            return cmd_bench(
                args.directory,
                _options(args, timings=args.timings),
                workers=workers,
                timings=args.timings,
                out=args.out,
                pattern=args.pattern,
            )
    except (DomainError, ConfigError, OSError) as e:
        code = exit_code_for(e)
        details = getattr(e, "details", None)
        print(f"{args.command} FAILED: {e}", file=sys.stderr)
        if details:
            logger.debug("details: %s", details)
        return code

    return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
