# rbm/cli/schemas.py
from __future__ import annotations

from typing import Dict, List, Optional

from pydantic import BaseModel, Field

REPORT_SCHEMA_VERSION = 1


class InstanceDigestOut(BaseModel):
    k: int
    n: int
    colors: int
    seed: Optional[int] = None
    sha256: str


class StageTimingsOut(BaseModel):
    # przy --no-timings wszystkie pola = 0.0 (raporty bajtowo powtarzalne)
    relaxation_s: float = 0.0
    rounding_s: float = 0.0
    oracle_s: float = 0.0
    checks_s: float = 0.0


class RunReport(BaseModel):
    schema_version: int = REPORT_SCHEMA_VERSION
    instance: InstanceDigestOut
    mode: str
    preset: str

    z_lp: float
    z_lp_exact: Optional[str] = None
    distinct_colors: int
    z_lp_at_least_colors: bool

    rounded_cost: int
    greedy_cost: int
    oracle_cost: Optional[int] = None

    ratio: float
    bound: float
    bound_exact: Optional[str] = None

    case_counts: Dict[str, int] = Field(default_factory=dict)
    charge_total: float = 0.0
    phase_count: int = 0
    msm_entries: int = 0

    claims_checked: bool = False
    claims: List[str] = Field(default_factory=list)
    timings: StageTimingsOut = Field(default_factory=StageTimingsOut)


class VerifyReport(BaseModel):
    ok: bool
    nonzeros: int
    z: str
    feasibility: List[str] = Field(default_factory=list)
    packing: List[str] = Field(default_factory=list)


BENCH_COLUMNS = [
    "file",
    "k",
    "n",
    "colors",
    "seed",
    "z_lp",
    "rounded_cost",
    "greedy_cost",
    "oracle_cost",
    "ratio",
    "bound",
    "phase_count",
    "charge_total",
    "msm_entries",
    "case_0",
    "case_1",
    "case_2",
    "case_3scan",
    "case_3fallback",
    "case_window",
    "case_4",
    "claim_violations",
    "error",
]

TIMING_COLUMNS = ["relaxation_s", "rounding_s", "oracle_s", "checks_s"]


class BenchRow(BaseModel):
    file: str
    k: Optional[int] = None
    n: Optional[int] = None
    colors: Optional[int] = None
    seed: Optional[int] = None
    z_lp: Optional[float] = None
    rounded_cost: Optional[int] = None
    greedy_cost: Optional[int] = None
    oracle_cost: Optional[int] = None
    ratio: Optional[float] = None
    bound: Optional[float] = None
    phase_count: Optional[int] = None
    charge_total: Optional[float] = None
    msm_entries: Optional[int] = None
    case_0: int = 0
    case_1: int = 0
    case_2: int = 0
    case_3scan: int = 0
    case_3fallback: int = 0
    case_window: int = 0
    case_4: int = 0
    claim_violations: int = 0
    error: str = ""
    relaxation_s: float = 0.0
    rounding_s: float = 0.0
    oracle_s: float = 0.0
    checks_s: float = 0.0

    @classmethod
    def from_report(cls, file: str, report: RunReport) -> "BenchRow":
        counts = {f"case_{k}": v for k, v in report.case_counts.items()}
        return cls(
            file=file,
            k=report.instance.k,
            n=report.instance.n,
            colors=report.instance.colors,
            seed=report.instance.seed,
            z_lp=report.z_lp,
            rounded_cost=report.rounded_cost,
            greedy_cost=report.greedy_cost,
            oracle_cost=report.oracle_cost,
            ratio=report.ratio,
            bound=report.bound,
            phase_count=report.phase_count,
            charge_total=report.charge_total,
            msm_entries=report.msm_entries,
            claim_violations=len(report.claims),
            relaxation_s=report.timings.relaxation_s,
            rounding_s=report.timings.rounding_s,
            oracle_s=report.timings.oracle_s,
            checks_s=report.timings.checks_s,
            **counts,
        )

    def csv_dict(self, *, timings: bool) -> Dict[str, object]:
        cols = BENCH_COLUMNS + (TIMING_COLUMNS if timings else [])
        data = self.model_dump()
        return {c: ("" if data[c] is None else data[c]) for c in cols}
