#!/usr/bin/env python


from __future__ import annotations

import argparse
import functools
import io
import logging
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, List, Optional, Sequence

from ..blocksim import generate_block_circuit, parse_circuit, serialize_circuit, simulate, validate_circuit
from ..blocksim.circuit import CircuitIR
from ..config import Settings, load_settings
from ..const import EXIT_INFEASIBLE, EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION
from ..error_model import injection_gate_error
from ..exceptions import DegenerateTargetError, InfeasibleError, MfplanError
from ..planner import compare_with_reference, emit_tables, optimize, plan_block_pipeline, records_to_json, write_csv
from ..planner.tables import DEFAULT_TABLE_STRATEGIES, pout_decades
from ..protocols import parse_protocol
from ..types import ISerializable, OutputFormat, ProtocolKind, Strategy

logger = logging.getLogger("mfplan")


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


@dataclass
class Args:
    command: str
    config: Optional[str] = None
    threads: Optional[int] = None
    quiet: bool = False
    verbose: bool = False
    format: Optional[str] = None
    pin: Optional[float] = None
    pout: Optional[float] = None
    strategy: Strategy = Strategy.BEST_OF_ALL
    pg: Optional[float] = None
    eps: Optional[float] = None
    k: List[int] = field(default_factory=list)
    pin_list: List[float] = field(default_factory=list)
    pout_list: List[float] = field(default_factory=list)
    strategies: List[Strategy] = field(default_factory=lambda: list(DEFAULT_TABLE_STRATEGIES))
    out: str = "-"
    compare: bool = False
    p: float = 0.0
    shots: int = 100_000
    seed: int = 0
    shards: int = 1
    circuit: Optional[str] = None
    emit_circuit: Optional[str] = None


def _write(text: str, path: str = "-") -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _write_json(result: ISerializable, path: str = "-") -> None:
    _write(result.to_json() + "\n", path)


def _settings(args: Args) -> Settings:
    settings = load_settings(args.config)
    if args.threads is not None:
        settings = settings.copy(update={"threads": args.threads})
    return settings


def _circuit(args: Args) -> CircuitIR:
    if args.circuit is not None:
        return parse_circuit(Path(args.circuit).read_text())
    if len(args.k) != 1:
        raise UsageError("exactly one of --k or --circuit is required")
    return generate_block_circuit(args.k[0])


def cmd_plan(args: Args, settings: Settings) -> int:
    assert args.pin is not None and args.pout is not None
    if args.eps is not None:
        schedule = plan_block_pipeline(args.pin, args.pout, args.k, args.eps, args.pg, settings.cost, settings.search)
    else:
        schedule = optimize(args.pin, args.pout, args.strategy, args.pg, settings.cost, settings.search)
    if OutputFormat.from_string(args.format or "human") is OutputFormat.JSON:
        _write_json(schedule)
    else:
        _write(schedule.describe())
    return EXIT_OK


def cmd_table(args: Args, settings: Settings, log: Any) -> int:
    pg = args.pg
    pg_rule: Callable[[float], float] = injection_gate_error if pg is None else (lambda _: pg)
    records = emit_tables(
        args.pin_list,
        args.pout_list or None,
        pg_rule,
        strategies=args.strategies,
        m=settings.cost,
        cfg=settings.search,
        threads=settings.threads,
    )
    if OutputFormat.from_string(args.format or "csv") is OutputFormat.JSON:
        text = records_to_json(records) + "\n"
    else:
        buffer = io.StringIO()
        write_csv(records, buffer)
        text = buffer.getvalue()
    if args.out != "-":
        log("Writing", args.out)
    _write(text, args.out)
    if args.compare:
        print(compare_with_reference(records).summary(), file=sys.stderr)
    return EXIT_OK


def cmd_simulate(args: Args, settings: Settings) -> int:
    summary = simulate(_circuit(args), args.p, args.shots, args.seed, shards=args.shards, threads=settings.threads)
    _write_json(summary)
    return EXIT_OK


def cmd_validate(args: Args, settings: Settings, log: Any) -> int:
    circuit = _circuit(args)
    if args.emit_circuit is not None:
        log("Writing", args.emit_circuit)
        _write(serialize_circuit(circuit), args.emit_circuit)
    report = validate_circuit(circuit)
    _write_json(report)
    return EXIT_OK if report.passed else EXIT_VALIDATION


def execute(args: Args) -> int:
    """Runs one command and maps failures onto the documented exit codes"""

    @functools.wraps(print)
    def log(*a: Any, **kw: Any) -> None:
        if not args.quiet:
            print(*a, file=sys.stderr, **kw)

    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True)
    logging.captureWarnings(True)

    try:
        settings = _settings(args)
        if args.command == "plan":
            return cmd_plan(args, settings)
        elif args.command == "table":
            return cmd_table(args, settings, log)
        elif args.command == "simulate":
            return cmd_simulate(args, settings)
        elif args.command == "validate":
            return cmd_validate(args, settings, log)
        raise UsageError(f"unknown command {args.command!r}")
    except (InfeasibleError, DegenerateTargetError) as e:
        print(f"mfplan: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (UsageError, MfplanError, ValueError) as e:
        print(f"mfplan: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"mfplan: {e}", file=sys.stderr)
        return EXIT_IO
    finally:
        logging.captureWarnings(False)


def _float_list(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got {text!r}") from e


def _pout_range(text: str) -> List[float]:
    try:
        first, last = (-math.log10(float(x)) for x in text.split(":", 1))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected <first>:<last> such as 1e-5:1e-20, got {text!r}") from e
    if abs(first - round(first)) > 1e-9 or abs(last - round(last)) > 1e-9:
        raise argparse.ArgumentTypeError(f"range ends must be powers of ten, got {text!r}")
    return pout_decades(round(first), round(last))


def _strategy(text: str) -> Strategy:
    try:
        return Strategy.from_string(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _strategy_list(text: str) -> List[Strategy]:
    return [_strategy(x.strip()) for x in text.split(",") if x.strip()]


def _block_size(text: str) -> int:
    """A bare block size, or a block protocol such as ``block:4`` or ``block(4)``."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        spec = parse_protocol(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e
    if spec.kind is not ProtocolKind.BLOCK:
        raise argparse.ArgumentTypeError(f"{spec.label} is not a block protocol")
    return spec.k


def build_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--config", dest="config")
    common.add_argument("--threads", dest="threads", type=int)
    common.add_argument("-q", "--quiet", dest="quiet", action="store_true", default=False)
    common.add_argument("-v", "--verbose", dest="verbose", action="store_true", default=False)

    parser = ArgumentParser(prog="mfplan", description="Magic-state distillation factory planner")
    commands = parser.add_subparsers(dest="command", required=True)

    plan = commands.add_parser("plan", parents=[common], help="optimise one distillation schedule")
    plan.add_argument("--pin", dest="pin", type=float, required=True)
    plan.add_argument("--pout", dest="pout", type=float, required=True)
    plan.add_argument("--strategy", dest="strategy", type=_strategy, default=Strategy.BEST_OF_ALL)
    plan.add_argument("--pg", dest="pg", type=float)
    plan.add_argument("--eps", dest="eps", type=float)
    plan.add_argument("--k", dest="k", type=_block_size, default=[], action="append")
    plan.add_argument("--format", dest="format", choices=["human", "json"], default="human")

    table = commands.add_parser("table", parents=[common], help="emit the strategy comparison tables")
    table.add_argument("--pin-list", dest="pin_list", type=_float_list, default=[1e-2, 1e-3, 1e-4])
    table.add_argument("--pout-range", dest="pout_list", type=_pout_range, default=pout_decades())
    table.add_argument("--strategies", dest="strategies", type=_strategy_list, default=list(DEFAULT_TABLE_STRATEGIES))
    table.add_argument("--pg", dest="pg", type=float)
    table.add_argument("--out", dest="out", default="-")
    table.add_argument("--format", dest="format", choices=["csv", "json"], default="csv")
    table.add_argument("--compare", dest="compare", action="store_true", default=False)

    sim = commands.add_parser("simulate", parents=[common], help="Monte Carlo the block-code circuit")
    sim.add_argument("--k", dest="k", type=_block_size, default=[], action="append")
    sim.add_argument("--p", dest="p", type=float, required=True)
    sim.add_argument("--shots", dest="shots", type=int, default=100_000)
    sim.add_argument("--seed", dest="seed", type=int, default=0)
    sim.add_argument("--shards", dest="shards", type=int, default=1)
    sim.add_argument("--circuit", dest="circuit")

    validate = commands.add_parser("validate", parents=[common], help="enumerate faults and check the circuit")
    validate.add_argument("--k", dest="k", type=_block_size, default=[], action="append")
    validate.add_argument("--circuit", dest="circuit")
    validate.add_argument("--emit-circuit", dest="emit_circuit")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Entrypoint when running from tools or scripts"""
    try:
        namespace = build_parser().parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        return int(e.code or 0)
    return execute(Args(**vars(namespace)))


def main() -> None:
    """Entrypoint when running from command line"""
    sys.exit(run())
