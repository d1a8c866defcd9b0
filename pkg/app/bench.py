"""Сравнение методов оптимизации на случайных схемах Clifford+T."""

import csv
import logging
from collections.abc import Iterable
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np
from openpyxl import Workbook

from app.circuit import Circuit, Gate, circuit_to_diagram, gate_stats
from app.config import settings
from app.enums import METHOD_LABELS, BenchMethod
from app.normal_form import extract_gslc_normal_form, reduce_local_cliffords
from app.peephole import peephole_optimize
from app.rules import to_graph_like
from app.schemas import BenchConfig, BenchReport, BenchRow, GateStats
from app.services import full_optimize, verify_equivalent
from app.simplify import clifford_simp

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["p_t", "method", "mean_total", "mean_two_qubit", "mean_t"]
XLSX_COLUMNS = ["p_t", "Метод", "Всего гейтов", "Двухкубитных", "T-гейтов"]


def random_circuit(cfg: BenchConfig, seed: int, p_t: float | None = None) -> Circuit:
    """CNOT с вероятностью p_cnot, T с вероятностью p_t, иначе равновероятно H, S или CZ."""
    p_t = cfg.p_t if p_t is None else p_t
    rng = np.random.default_rng([seed, round(p_t * 1_000_000)])
    n = cfg.qubits
    gates = []
    for _ in range(cfg.gate_count):
        draw = rng.random()
        if draw < cfg.p_cnot:
            control, target = rng.choice(n, size=2, replace=False)
            gates.append(Gate.cnot(int(control), int(target)))
        elif draw < cfg.p_cnot + p_t:
            gates.append(Gate.t(int(rng.integers(n))))
        else:
            kind = int(rng.integers(3 if n > 1 else 2))
            if kind == 0:
                gates.append(Gate.h(int(rng.integers(n))))
            elif kind == 1:
                gates.append(Gate.s(int(rng.integers(n))))
            else:
                a, b = rng.choice(n, size=2, replace=False)
                gates.append(Gate.cz(int(a), int(b)))
    return Circuit(n, tuple(gates))


def _resynthesize_chunk(qubit_count: int, chunk: list[Gate]) -> list[Gate]:
    diagram = to_graph_like(circuit_to_diagram(Circuit(qubit_count, tuple(chunk))))
    reduced = reduce_local_cliffords(clifford_simp(diagram).diagram)
    return list(extract_gslc_normal_form(reduced).gates)


def naive_optimize(c: Circuit) -> Circuit:
    """Каждый клиффордов блок между неклиффордовыми гейтами пересобирается через нормальную форму."""
    gates: list[Gate] = []
    chunk: list[Gate] = []
    for gate in c.gates:
        if gate.is_clifford:
            chunk.append(gate)
            continue
        if chunk:
            gates.extend(_resynthesize_chunk(c.qubit_count, chunk))
            chunk = []
        gates.append(gate)
    if chunk:
        gates.extend(_resynthesize_chunk(c.qubit_count, chunk))
    return peephole_optimize(c.with_gates(gates))


def apply_method(method: BenchMethod, c: Circuit) -> Circuit:
    if method == BenchMethod.ORIGINAL:
        return c
    if method == BenchMethod.ORIGINAL_PLUS:
        return peephole_optimize(c)
    if method == BenchMethod.NAIVE:
        return naive_optimize(c)
    return full_optimize(c)


def _bench_job(cfg: BenchConfig, p_t: float, seed: int) -> dict[BenchMethod, tuple[GateStats, bool | None]]:
    try:
        original = random_circuit(cfg, seed, p_t)
        verify = cfg.qubits <= settings.verify_max_qubits
        results = {}
        for method in cfg.methods:
            optimized = apply_method(method, original)
            ok = verify_equivalent(original, optimized) if verify and method != BenchMethod.ORIGINAL else None
            if ok is False:
                logger.error("Метод %s дал неэквивалентную схему (p_t=%s, seed=%s)", method.value, p_t, seed)
            results[method] = (gate_stats(optimized), ok)
        return results
    except Exception:
        logger.exception("Сбой бенчмарка на p_t=%s, seed=%s", p_t, seed)
        raise


def _mean(values: Iterable[int]) -> float:
    items = list(values)
    return sum(items) / len(items) if items else 0.0


def run_benchmark(cfg: BenchConfig) -> BenchReport:
    p_values = cfg.p_t_values or [cfg.p_t]
    jobs = [(p_t, seed) for p_t in p_values for seed in cfg.seeds]
    if settings.bench_workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=settings.bench_workers) as pool:
            futures = [pool.submit(_bench_job, cfg, p_t, seed) for p_t, seed in jobs]
            outcomes = [future.result() for future in futures]
    else:
        outcomes = [_bench_job(cfg, p_t, seed) for p_t, seed in jobs]

    rows = []
    failures = 0
    for p_t in p_values:
        per_p = [outcome for (job_p, _), outcome in zip(jobs, outcomes) if job_p == p_t]
        for method in cfg.methods:
            stats = [outcome[method][0] for outcome in per_p]
            failures += sum(1 for outcome in per_p if outcome[method][1] is False)
            row = BenchRow(
                p_t=p_t,
                method=method,
                mean_total=_mean(s.total for s in stats),
                mean_two_qubit=_mean(s.two_qubit for s in stats),
                mean_t=_mean(s.t_like for s in stats),
            )
            rows.append(row)
            logger.info(
                "p_t=%s %s: всего %.2f, двухкубитных %.2f, T %.2f",
                p_t,
                method.value,
                row.mean_total,
                row.mean_two_qubit,
                row.mean_t,
            )

    verified = cfg.qubits <= settings.verify_max_qubits
    if not verified:
        message = f"Проверка эквивалентности пропущена: больше {settings.verify_max_qubits} кубитов"
    elif failures:
        message = f"Неэквивалентных результатов: {failures}"
    else:
        message = "Все результаты эквивалентны исходным схемам"
    return BenchReport(rows=rows, verified=verified, verification_failures=failures, message=message)


# ─── Выгрузка ───


def _csv_row(row: BenchRow) -> dict[str, str]:
    return {
        "p_t": f"{row.p_t:.4f}",
        "method": row.method.value,
        "mean_total": f"{row.mean_total:.3f}",
        "mean_two_qubit": f"{row.mean_two_qubit:.3f}",
        "mean_t": f"{row.mean_t:.3f}",
    }


def write_csv(report: BenchReport, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(_csv_row(row) for row in report.rows)


def write_xlsx(report: BenchReport, path: str | Path) -> None:
    workbook = Workbook()
    sheet = workbook.active
    sheet.title = "Бенчмарк"
    sheet.append(XLSX_COLUMNS)
    for row in report.rows:
        sheet.append([row.p_t, METHOD_LABELS[row.method], row.mean_total, row.mean_two_qubit, row.mean_t])

    sheet.freeze_panes = "A2"
    widths = [10, 36, 16, 16, 12]
    for idx, width in enumerate(widths, start=1):
        column_letter = chr(64 + idx)
        sheet.column_dimensions[column_letter].width = width
    workbook.save(path)


def format_table(report: BenchReport) -> str:
    lines = [f"{'p_t':>6}  {'метод':<14}{'всего':>10}{'2-кубит':>10}{'T':>8}"]
    for row in report.rows:
        lines.append(
            f"{row.p_t:>6.3f}  {row.method.value:<14}{row.mean_total:>10.1f}{row.mean_two_qubit:>10.1f}{row.mean_t:>8.1f}"
        )
    lines.append(report.message)
    return "\n".join(lines)
