"""Command-line front door: parse, partition, estimate, export.

Four subcommands: ``inspect`` reports line/record accounting, ``rates``
writes the per-job worksheet (or the full CSV with ``--full``),
``summary`` prints aggregate statistics, and ``gen`` synthesizes a
fixture trace plus its ground-truth sidecar. Data goes to standard
output or ``--out``; diagnostics always go to standard error. Exit
status is 0 on success, 1 on I/O failure, 2 on invalid flags or
generator specs.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

from .bandwidth import MbBase, MemorySource, iter_rates
from .errors import InvalidSpec, IoFailure
from .export import summarize, write_csv, write_worksheet
from .model import ParseReport, RateFlag, RateSample, TraceSummary
from .parsing import TraceFormat, parse_trace, write_lanl_trace
from .synth import generate, load_genspec, write_sidecar

_MB_CHOICES = {"binary": MbBase.BINARY, "decimal": MbBase.DECIMAL}


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs, resolved from the parsed flags."""

    command: str
    input_path: str | None = None
    output_path: str | None = None
    format: TraceFormat = TraceFormat.LANL16
    memory: MemorySource = MemorySource.REQUESTED
    mb: MbBase = MbBase.BINARY
    carry_forward: bool = False
    drop_negative: bool = False
    full_csv: bool = False
    scale_per_proc_memory: bool = True
    gen_spec_path: str | None = None
    truth_path: str | None = None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tracebw",
        description="Per-job bandwidth estimation from batch accounting traces.")
    sub = parser.add_subparsers(dest="command", required=True)

    reader = argparse.ArgumentParser(add_help=False)
    reader.add_argument("trace", help="input trace path, or - for standard input")
    reader.add_argument("--format", choices=[f.value for f in TraceFormat],
                        default="lanl", help="input line format (default: lanl)")
    reader.add_argument("--memory", choices=[m.value for m in MemorySource],
                        default="requested",
                        help="memory field supplying the byte count (default: requested)")
    reader.add_argument("--carry-forward", action="store_true",
                        help="fill a missing start time from the previous record's end")
    reader.add_argument("--per-proc-memory", choices=["scaled", "raw"], default="scaled",
                        help="archive format only: scale per-processor memory by "
                             "allocated processors, or take it raw (default: scaled)")
    reader.add_argument("--out", default=None, metavar="PATH",
                        help="output path (default: standard output)")

    rated = argparse.ArgumentParser(add_help=False)
    rated.add_argument("--mb", choices=sorted(_MB_CHOICES), default="binary",
                       help="Mbyte convention for output rates (default: binary)")
    rated.add_argument("--drop-negative", action="store_true",
                       help="exclude negative-duration samples")

    sub.add_parser("inspect", parents=[reader],
                   help="parse only; report total/parsed/valid/omitted/malformed counts")
    p_rates = sub.add_parser("rates", parents=[reader, rated],
                             help="write the per-job bandwidth worksheet")
    p_rates.add_argument("--full", action="store_true",
                         help="write the full-fidelity CSV instead of the worksheet")
    sub.add_parser("summary", parents=[reader, rated],
                   help="print aggregate statistics over the estimated rates")

    p_gen = sub.add_parser("gen", help="generate a synthetic trace plus ground-truth sidecar")
    p_gen.add_argument("genspec", help="key=value generator spec file")
    p_gen.add_argument("--out", required=True, metavar="PATH", help="trace output path")
    p_gen.add_argument("--truth", default=None, metavar="PATH",
                       help="sidecar output path (default: PATH.truth)")
    return parser


def _config_from_args(parser: argparse.ArgumentParser,
                      args: argparse.Namespace) -> RunConfig:
    if args.command == "gen":
        if args.out == "-":
            parser.error("gen writes two files; --out must be a real path")
        return RunConfig(command="gen", output_path=args.out,
                         gen_spec_path=args.genspec, truth_path=args.truth)
    return RunConfig(
        command=args.command,
        input_path=args.trace,
        output_path=args.out,
        format=TraceFormat(args.format),
        memory=MemorySource(args.memory),
        mb=_MB_CHOICES[getattr(args, "mb", "binary")],
        carry_forward=args.carry_forward,
        drop_negative=getattr(args, "drop_negative", False),
        full_csv=getattr(args, "full", False),
        scale_per_proc_memory=args.per_proc_memory == "scaled",
    )


@contextmanager
def _open_input(path: str) -> Iterator[IO[str]]:
    if path == "-":
        yield sys.stdin
    else:
        with open(path, encoding="utf-8", errors="replace") as handle:
            yield handle


@contextmanager
def _open_output(path: str | None) -> Iterator[IO[str]]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            yield handle


class _Tap:
    """Pass-through iterator that counts what flows through it."""

    def __init__(self, samples: Iterable[RateSample]):
        self._samples = iter(samples)
        self.count = 0

    def __iter__(self) -> "_Tap":
        return self

    def __next__(self) -> RateSample:
        sample = next(self._samples)
        self.count += 1
        return sample


def _write_report(report: ParseReport, valid: int, out: IO[str]) -> None:
    out.write(f"total={report.record_lines}\n")
    out.write(f"parsed={report.parsed}\n")
    out.write(f"valid={valid}\n")
    out.write(f"omitted={report.parsed - valid}\n")
    out.write(f"malformed={report.malformed}\n")


def _write_summary(summary: TraceSummary, out: IO[str]) -> None:
    out.write(f"n_rates={summary.n_rates}\n")
    out.write(f"n_negative={summary.n_negative}\n")
    out.write(f"n_undefined={summary.n_undefined}\n")
    for name in ("min", "max", "mean", "median", "p95"):
        value = getattr(summary, name)
        out.write(f"{name}={'' if value is None else repr(value)}\n")


def _run_trace_command(config: RunConfig) -> int:
    with _open_input(config.input_path) as source:
        stream = parse_trace(source, config.format,
                             scale_per_proc_memory=config.scale_per_proc_memory)
        samples = _Tap(iter_rates(stream, config.memory, config.carry_forward))

        if config.command == "inspect":
            for _ in samples:
                pass
            with _open_output(config.output_path) as out:
                _write_report(stream.report, samples.count, out)
            return 0

        kept: Iterable[RateSample] = samples
        if config.drop_negative:
            kept = (s for s in samples if RateFlag.NEGATIVE_DURATION not in s.flags)

        if config.command == "rates":
            with _open_output(config.output_path) as out:
                if config.full_csv:
                    write_csv(kept, config.mb, out)
                else:
                    write_worksheet(kept, config.mb, out)
        else:
            summary = summarize(kept, config.mb)
            with _open_output(config.output_path) as out:
                _write_summary(summary, out)
        _write_report(stream.report, samples.count, sys.stderr)
    return 0


def _run_gen(config: RunConfig) -> int:
    with open(config.gen_spec_path, encoding="utf-8") as handle:
        spec = load_genspec(handle)
    records, truth = generate(spec)
    truth_path = config.truth_path or config.output_path + ".truth"
    with open(config.output_path, "w", encoding="utf-8", newline="") as out:
        write_lanl_trace(records, out)
    with open(truth_path, "w", encoding="utf-8", newline="") as out:
        write_sidecar(truth, out)
    sys.stderr.write(f"count={spec.count}\n")
    sys.stderr.write(f"expected_valid={truth.expected_valid}\n")
    sys.stderr.write(f"expected_omitted={truth.expected_omitted}\n")
    return 0


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    try:
        if config.command == "gen":
            return _run_gen(config)
        return _run_trace_command(config)
    except InvalidSpec as exc:
        sys.stderr.write(f"tracebw: error: {exc}\n")
        return 2
    except IoFailure as exc:
        sys.stderr.write(f"tracebw: error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"tracebw: error: {exc}\n")
        return 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return run(_config_from_args(parser, args))


if __name__ == "__main__":
    sys.exit(main())
