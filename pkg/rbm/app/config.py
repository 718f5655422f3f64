from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List

from rbm.shared.enums import ConstantsPreset, FloatBackend, SolveMode


class ConfigError(RuntimeError):
    pass


def _parse_simple_env(text: str) -> Dict[str, str]:
    out: Dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            continue
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _read_env_file(path: Path) -> Dict[str, str]:
    if not path.exists():
        raise ConfigError(f"Env file not found: {path}")
    return _parse_simple_env(path.read_text(encoding="utf-8"))


def load_env_stack(project_root: Path | None = None) -> List[Path]:
    """Wczytuje env/stack.env i pliki z ENV_FILES (kolejność = priorytet rosnący).

    Brak stack.env nie jest błędem: biblioteka działa też poza checkoutem repo.
    """
    if project_root is None:
        project_root = Path(__file__).resolve().parents[2]

    stack_path = project_root / "env" / "stack.env"
    if not stack_path.exists():
        return []
    stack = _read_env_file(stack_path)

    env_files = stack.get("ENV_FILES", "").strip()
    if not env_files:
        raise ConfigError("env/stack.env must define ENV_FILES=...")

    loaded: List[Path] = []
    merged: Dict[str, str] = {}

    for rel in [x.strip() for x in env_files.split(",") if x.strip()]:
        p = (project_root / rel).resolve()
        merged.update(_read_env_file(p))
        loaded.append(p)

    # Set defaults from files, but allow real environment to override
    for k, v in merged.items():
        os.environ.setdefault(k, v)

    return loaded


@dataclass(frozen=True)
class Settings:
    # --- ENV ---
    env_name: str
    log_level: str

    # --- SOLVER ---
    mode: SolveMode
    preset: ConstantsPreset
    float_backend: FloatBackend
    tableau_cell_limit: int
    lp_debug_dump: str

    # --- TOLERANCES (tylko tryb float) ---
    eps_feas: float
    eps_piv: float
    eps_cmp: float

    # --- ORACLE / BENCH ---
    oracle_budget: int
    workers: int

    # --- REPORTS ---
    report_timings: bool


_settings_cache: dict[str, Settings] = {}


def _is_truthy(v: str) -> bool:
    return v.strip().lower() in ("1", "true", "yes", "on")


def _int_env(name: str, default: str) -> int:
    raw = os.getenv(name, "").strip() or default
    try:
        return int(raw)
    except ValueError as e:
        raise ConfigError(f"Invalid {name}={raw!r} (must be int)") from e


def _float_env(name: str, default: str) -> float:
    raw = os.getenv(name, "").strip() or default
    try:
        return float(raw)
    except ValueError as e:
        raise ConfigError(f"Invalid {name}={raw!r} (must be float)") from e


def _enum_env(name: str, enum_cls, default: str):
    raw = os.getenv(name, "").strip().lower() or default
    try:
        return enum_cls(raw)
    except ValueError as e:
        allowed = "/".join(m.value for m in enum_cls)
        raise ConfigError(f"Unknown {name}={raw}. Expected {allowed}.") from e


def get_settings(project_root: Path | None = None) -> Settings:
    cache_key = "default" if project_root is None else str(project_root)
    if cache_key in _settings_cache:
        return _settings_cache[cache_key]

    load_env_stack(project_root=project_root)

    oracle_budget = _int_env("RBM_ORACLE_BUDGET", "10000000")
    if oracle_budget <= 0:
        raise ConfigError(f"Invalid RBM_ORACLE_BUDGET={oracle_budget} (must be > 0)")

    workers = _int_env("RBM_WORKERS", "1")
    if workers <= 0:
        raise ConfigError(f"Invalid RBM_WORKERS={workers} (must be > 0)")

    s = Settings(
        # --- ENV ---
        env_name=os.getenv("ENV_NAME", "dev"),
        log_level=os.getenv("LOG_LEVEL", "INFO").strip().upper() or "INFO",

        # --- SOLVER ---
        mode=_enum_env("RBM_MODE", SolveMode, "rational"),
        preset=_enum_env("RBM_PRESET", ConstantsPreset, "paper"),
        float_backend=_enum_env("RBM_FLOAT_BACKEND", FloatBackend, "auto"),
        tableau_cell_limit=_int_env("RBM_TABLEAU_CELL_LIMIT", "4000000"),
        lp_debug_dump=os.getenv("RBM_LP_DEBUG_DUMP", "").strip(),

        # --- TOLERANCES ---
        eps_feas=_float_env("RBM_EPS_FEAS", "1e-9"),
        eps_piv=_float_env("RBM_EPS_PIV", "1e-12"),
        eps_cmp=_float_env("RBM_EPS_CMP", "1e-9"),

        # --- ORACLE / BENCH ---
        oracle_budget=oracle_budget,
        workers=workers,

        # --- REPORTS ---
        report_timings=_is_truthy(os.getenv("RBM_REPORT_TIMINGS", "1")),
    )

    _settings_cache[cache_key] = s
    return s


def reset_settings_cache() -> None:
    _settings_cache.clear()
