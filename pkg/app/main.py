import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError

from app.bench import format_table, run_benchmark, write_csv, write_xlsx
from app.circuit import gate_stats
from app.config import settings
from app.enums import BenchMethod
from app.errors import ZxError
from app.normal_form import layer_documents
from app.qasm import emit_qasm
from app.schemas import BenchConfig
from app.services import can_verify, load_circuit, optimize, verify_equivalent

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


def _float_list(text: str) -> list[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"Ожидался список чисел через запятую: {text!r}") from exc


def _method_list(text: str) -> list[BenchMethod]:
    try:
        return [BenchMethod(item.strip()) for item in text.split(",") if item.strip()]
    except ValueError as exc:
        known = ", ".join(method.value for method in BenchMethod)
        raise argparse.ArgumentTypeError(f"Неизвестный метод в {text!r}; доступны: {known}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zxopt", description=settings.app_name)
    commands = parser.add_subparsers(dest="command", required=True)

    optimize_cmd = commands.add_parser("optimize", help="Оптимизировать схему QASM")
    optimize_cmd.add_argument("input")
    optimize_cmd.add_argument("-o", "--output")
    optimize_cmd.add_argument("--clifford-nf", action="store_true", help="Клиффордова нормальная форма")
    optimize_cmd.add_argument("--log", help="Журнал шагов упрощения в формате JSONL")
    optimize_cmd.add_argument("--layers", help="Слои нормальной формы в JSON")

    verify_cmd = commands.add_parser("verify", help="Сравнить две схемы")
    verify_cmd.add_argument("first")
    verify_cmd.add_argument("second")
    verify_cmd.add_argument("--tol", type=float, default=None)

    stats_cmd = commands.add_parser("stats", help="Статистика гейтов")
    stats_cmd.add_argument("input")

    bench_cmd = commands.add_parser("bench", help="Сравнение методов на случайных схемах")
    bench_cmd.add_argument("--qubits", type=int, default=8)
    bench_cmd.add_argument("--gates", type=int, default=800)
    bench_cmd.add_argument("--p-cnot", type=float, default=0.3)
    bench_cmd.add_argument("--p-t", type=_float_list, default=[0.0])
    bench_cmd.add_argument("--seeds", type=int, default=1)
    bench_cmd.add_argument("--methods", type=_method_list, default=list(BenchMethod))
    bench_cmd.add_argument("--csv")
    bench_cmd.add_argument("--xlsx")
    return parser


def _run_optimize(args: argparse.Namespace) -> int:
    if args.layers and not args.clifford_nf:
        raise ZxError("--layers имеет смысл только вместе с --clifford-nf")
    circuit = load_circuit(args.input)
    outcome = optimize(circuit, clifford_nf=args.clifford_nf)
    if args.log:
        with open(args.log, "w", encoding="utf-8") as handle:
            for step in outcome.steps:
                handle.write(step.model_dump_json(exclude_none=True) + "\n")
    if outcome.report.verified is False:
        print(outcome.report.message, file=sys.stderr)
        return EXIT_MISMATCH
    if outcome.report.verified is None:
        logger.warning(outcome.report.message)
    if args.layers and outcome.layers is not None:
        documents = [document.model_dump(mode="json") for document in layer_documents(outcome.layers)]
        Path(args.layers).write_text(json.dumps(documents, ensure_ascii=False, indent=2), encoding="utf-8")
    text = emit_qasm(outcome.circuit)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    print(outcome.report.model_dump_json(), file=sys.stderr)
    return EXIT_OK


def _run_verify(args: argparse.Namespace) -> int:
    first, second = load_circuit(args.first), load_circuit(args.second)
    if first.qubit_count != second.qubit_count:
        print("Схемы имеют разное число кубитов", file=sys.stderr)
        return EXIT_MISMATCH
    if not can_verify(first):
        logger.warning("Проверка на %s кубитах может быть медленной", first.qubit_count)
    if verify_equivalent(first, second, args.tol):
        print("Схемы эквивалентны")
        return EXIT_OK
    print("Схемы не эквивалентны")
    return EXIT_MISMATCH


def _run_stats(args: argparse.Namespace) -> int:
    circuit = load_circuit(args.input)
    print(gate_stats(circuit).model_dump_json())
    return EXIT_OK


def _run_bench(args: argparse.Namespace) -> int:
    cfg = BenchConfig(
        qubits=args.qubits,
        gate_count=args.gates,
        p_cnot=args.p_cnot,
        p_t_values=args.p_t,
        seeds=list(range(args.seeds)),
        methods=args.methods,
    )
    report = run_benchmark(cfg)
    print(format_table(report))
    if args.csv:
        write_csv(report, args.csv)
    if args.xlsx:
        write_xlsx(report, args.xlsx)
    return EXIT_MISMATCH if report.verification_failures else EXIT_OK


HANDLERS = {
    "optimize": _run_optimize,
    "verify": _run_verify,
    "stats": _run_stats,
    "bench": _run_bench,
}


def _log_level(name: str) -> int:
    raw = name.strip().upper()
    if raw.isdigit():
        return int(raw)
    level = logging.getLevelName(raw)
    if not isinstance(level, int):
        raise ValueError(f"Неизвестный уровень логирования: {name!r}")
    return level


def cli_main(argv: Sequence[str] | None = None) -> int:
    try:
        level = _log_level(settings.log_level)
    except ValueError as exc:
        print(f"Ошибка: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=level, stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return HANDLERS[args.command](args)
    except (ZxError, ValidationError, OSError) as exc:
        print(f"Ошибка: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(cli_main())
