from __future__ import annotations

import csv
import io
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path
from typing import Optional, TextIO

from rbm.app.config import ConfigError, get_settings
from rbm.cli.pipeline import PipelineOptions, run_pipeline
from rbm.cli.schemas import BENCH_COLUMNS, TIMING_COLUMNS, BenchRow, VerifyReport
from rbm.instances.generators import generate_instance
from rbm.instances.io import format_instance, format_schedule, read_instance
from rbm.lp.numeric import format_number, tolerance_for
from rbm.relaxation.feasibility import check_feasibility
from rbm.relaxation.io import format_packing, format_solution, parse_solution, write_text
from rbm.relaxation.msm import decompose_msm, verify_packing
from rbm.shared.enums import Distribution, SolveMode
from rbm.shared.errors import DomainError, InstanceParseError, OracleBudgetExceeded

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CHECK = 2


def exit_code_for(e: BaseException) -> int:
    """Błędy wejścia (I/O, parsowanie, konfiguracja, budżet) -> 1; naruszenia sprawdzeń -> 2."""
    if isinstance(e, (InstanceParseError, OracleBudgetExceeded, ConfigError, OSError)):
        return EXIT_INPUT
    if isinstance(e, DomainError):
        return EXIT_CHECK
    return EXIT_INPUT


def _emit(text: str, out: Optional[Path], stdout: Optional[TextIO]) -> None:
    if out is None:
        (stdout or sys.stdout).write(text)
    else:
        write_text(out, text)


def cmd_gen(
    *,
    n: int,
    k: int,
    colors: int,
    distribution: Distribution,
    seed: int,
    out: Optional[Path],
    stdout: Optional[TextIO] = None,
) -> int:
    inst = generate_instance(n=n, k=k, colors=colors, distribution=distribution, seed=seed)
    text = format_instance(inst, comment=f"seed={seed} distribution={distribution.value}")
    _emit(text, out, stdout)
    return EXIT_OK


def cmd_solve(
    path: Path,
    options: PipelineOptions,
    *,
    seed: Optional[int] = None,
    out: Optional[Path] = None,
    trace: Optional[Path] = None,
    dump_x: Optional[Path] = None,
    dump_msm: Optional[Path] = None,
    dump_schedule: Optional[Path] = None,
    stdout: Optional[TextIO] = None,
) -> int:
    inst = read_instance(path)
    if seed is not None:
        inst = replace(inst, seed=seed)

    res = run_pipeline(inst, options)

    if trace is not None:
        write_text(trace, res.rounding.trace.serialize(inst))
    if dump_x is not None:
        write_text(dump_x, format_solution(res.solution))
    if dump_msm is not None:
        write_text(dump_msm, format_packing(res.packing))
    if dump_schedule is not None:
        write_text(dump_schedule, format_schedule(res.rounding.schedule))

    _emit(res.report.model_dump_json(indent=2) + "\n", out, stdout)

    if res.report.claims:
        for msg in res.report.claims:
            logger.warning("claim violated: %s", msg)
        return EXIT_CHECK
    return EXIT_OK


def cmd_verify(
    solution_path: Path,
    instance_path: Path,
    mode: SolveMode,
    *,
    stdout: Optional[TextIO] = None,
) -> int:
    inst = read_instance(instance_path)
    try:
        text = solution_path.read_text(encoding="utf-8")
    except OSError as e:
        raise InstanceParseError(f"Cannot read solution file {solution_path}: {e}") from e
    sol = parse_solution(inst, text, mode)

    settings = get_settings()
    tol = tolerance_for(mode, settings.eps_feas)
    feas = check_feasibility(sol, tol=tol)
    packing_problems: list[str] = []
    if feas.ok:
        packing = decompose_msm(sol, tol=tol)
        packing_problems = list(verify_packing(sol, packing, tol=tol).problems)
        logger.info("packing: %d entries, total weight %s", len(packing), format_number(packing.total()))

    report = VerifyReport(
        ok=feas.ok and not packing_problems,
        nonzeros=sol.nonzeros(),
        z=format_number(sol.z),
        feasibility=[v.message for v in feas.violations],
        packing=packing_problems,
    )
    (stdout or sys.stdout).write(report.model_dump_json(indent=2) + "\n")
    return EXIT_OK if report.ok else EXIT_CHECK


def _bench_one(path_str: str, options: PipelineOptions) -> tuple[dict, int]:
    # uruchamiane w procesie roboczym; wyjątki nie przechodzą przez granicę procesu
    path = Path(path_str)
    try:
        inst = read_instance(path)
        res = run_pipeline(inst, options)
        row = BenchRow.from_report(path.name, res.report)
        code = EXIT_CHECK if res.report.claims else EXIT_OK
    except Exception as e:  # noqa: BLE001
        row = BenchRow(file=path.name, error=f"{type(e).__name__}: {e}")
        code = exit_code_for(e)
    return row.model_dump(), code


def cmd_bench(
    directory: Path,
    options: PipelineOptions,
    *,
    workers: int,
    timings: bool = False,
    out: Optional[Path] = None,
    pattern: str = "*.txt",
    stdout: Optional[TextIO] = None,
) -> int:
    if not directory.is_dir():
        raise InstanceParseError(f"Not a directory: {directory}", details={"path": str(directory)})
    files = sorted(p for p in directory.glob(pattern) if p.is_file())
    logger.info("bench: %d instances, workers=%d", len(files), workers)

    paths = [str(p) for p in files]
    if workers > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_bench_one, paths, [options] * len(paths)))
    else:
        results = [_bench_one(p, options) for p in paths]

    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS + (TIMING_COLUMNS if timings else []), lineterminator="\n")
    writer.writeheader()
    worst = EXIT_OK
    for data, code in results:
        writer.writerow(BenchRow(**data).csv_dict(timings=timings))
        worst = max(worst, code)
        if code != EXIT_OK:
            logger.warning("bench: %s failed (%s)", data["file"], data["error"] or f"{data['claim_violations']} claims")

    _emit(buf.getvalue(), out, stdout)
    return worst
