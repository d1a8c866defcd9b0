import os
from dataclasses import dataclass

from dotenv import load_dotenv

load_dotenv()


def _parse_int(value: str | None, default: int) -> int:
    if value is None:
        return default
    raw = value.strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        return default


def _parse_float(value: str | None, default: float) -> float:
    if value is None:
        return default
    raw = value.strip()
    if not raw:
        return default
    try:
        return float(raw)
    except ValueError:
        return default


@dataclass(slots=True)
class Settings:
    app_name: str = "ZX Optimizer"
    log_level: str = os.getenv("ZXOPT_LOG_LEVEL", "INFO").upper()
    max_denominator: int = _parse_int(os.getenv("ZXOPT_MAX_DENOMINATOR"), 1024)
    angle_tolerance: float = _parse_float(os.getenv("ZXOPT_ANGLE_TOLERANCE"), 1e-9)
    oracle_max_wires: int = _parse_int(os.getenv("ZXOPT_ORACLE_MAX_WIRES"), 12)
    oracle_max_intermediate: int = _parse_int(os.getenv("ZXOPT_ORACLE_MAX_INTERMEDIATE"), 20)
    oracle_tolerance: float = _parse_float(os.getenv("ZXOPT_ORACLE_TOLERANCE"), 1e-9)
    verify_max_qubits: int = _parse_int(os.getenv("ZXOPT_VERIFY_MAX_QUBITS"), 6)
    bench_workers: int = _parse_int(os.getenv("ZXOPT_BENCH_WORKERS"), 1)
    gauss_block_size: int = _parse_int(os.getenv("ZXOPT_GAUSS_BLOCK_SIZE"), 0)


settings = Settings()
