"""Deterministic rigid-job trace synthesis for fixtures and benchmarks.

A rigid job is fully described by its arrival time, processor count, and
runtime. This generator draws exponential inter-arrival gaps, a small
uniform queue wait, uniform runtimes, and uniform picks from the memory
and processor choice lists, then knocks out start/end/memory fields with
independent per-job coin flips. Alongside the records it emits ground
truth - the exact expected valid/omitted partition and each valid job's
rate as an exact rational - so pipeline tests never re-derive their
expectations from the code under test.

Determinism contract: the output is a pure function of the GenSpec. All
randomness comes from CPython's ``random.Random`` (MT19937) seeded with
``spec.seed``, and only its ``random()`` method is used - the one method
whose stream CPython guarantees stable across versions - so fixtures are
byte-identical across releases. Per job the draw order is fixed: arrival
gap, wait, runtime, memory choice, processor choice, then the three
missing-field flips. This makes no claim of statistical fidelity to any
real machine; it is a test fixture generator.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterable

from .bandwidth import BYTES_PER_KB
from .errors import InvalidSpec
from .model import MS_PER_S, JobRecord, Timestamp

# 1994-05-10 00:00:00 UTC; generated traces start on this day.
BASE_EPOCH_MS = 768_528_000_000

_MAX_WAIT_MS = 60_000


@dataclass(frozen=True)
class GenSpec:
    """Parameters for one deterministic synthesis run."""

    seed: int = 0
    count: int = 1000
    inter_arrival_mean_ms: float = 60_000.0
    runtime_min_ms: int = 1_000
    runtime_max_ms: int = 3_600_000
    mem_kb_choices: tuple[int, ...] = (
        32768, 122880, 204800, 307200, 409600, 512000, 755712, 16777216)
    procs_choices: tuple[int, ...] = (32, 64, 128, 256, 512, 1024)
    missing_start_frac: float = 0.0
    missing_end_frac: float = 0.0
    missing_mem_frac: float = 0.0

    def __post_init__(self):
        if not isinstance(self.seed, int):
            raise InvalidSpec(f"seed must be an integer, got {self.seed!r}")
        if self.count < 0:
            raise InvalidSpec(f"count must be >= 0, got {self.count}")
        if not self.inter_arrival_mean_ms > 0:
            raise InvalidSpec("inter_arrival_mean_ms must be positive")
        if not 0 < self.runtime_min_ms <= self.runtime_max_ms:
            raise InvalidSpec(
                f"need 0 < runtime_min_ms <= runtime_max_ms, "
                f"got {self.runtime_min_ms}..{self.runtime_max_ms}")
        for name in ("mem_kb_choices", "procs_choices"):
            choices = getattr(self, name)
            if not choices or any(c <= 0 for c in choices):
                raise InvalidSpec(f"{name} must be a non-empty list of positive integers")
            object.__setattr__(self, name, tuple(choices))
        for name in ("missing_start_frac", "missing_end_frac", "missing_mem_frac"):
            frac = getattr(self, name)
            if not 0.0 <= frac <= 1.0:
                raise InvalidSpec(f"{name} must be in [0, 1], got {frac}")


@dataclass(frozen=True)
class GroundTruth:
    """Expected pipeline results for a generated trace.

    ``rates`` pairs each valid job's id with its exact rate in bytes per
    second, in trace order.
    """

    expected_valid: int
    expected_omitted: int
    rates: tuple[tuple[str, Fraction], ...]


class _Draws:
    """All randomness, derived from Random.random() alone."""

    def __init__(self, seed: int):
        self._random = random.Random(seed).random

    def exponential(self, mean: float) -> float:
        return -mean * math.log(1.0 - self._random())

    def int_between(self, lo: int, hi: int) -> int:
        return lo + int(self._random() * (hi - lo + 1))

    def pick(self, choices: tuple[int, ...]) -> int:
        return choices[int(self._random() * len(choices))]

    def coin(self, probability: float) -> bool:
        return self._random() < probability


def generate(spec: GenSpec) -> tuple[list[JobRecord], GroundTruth]:
    """Synthesize a record sequence plus its ground truth.

    Records come out ordered by submit time. A job is valid when none of
    its start, end, and memory fields were knocked out; its exact rate is
    ``1000 * mem_kb * 1024 / runtime_ms``.
    """
    draws = _Draws(spec.seed)
    records: list[JobRecord] = []
    rates: list[tuple[str, Fraction]] = []
    submit_ms = BASE_EPOCH_MS
    for i in range(spec.count):
        submit_ms += int(round(draws.exponential(spec.inter_arrival_mean_ms)))
        wait_ms = draws.int_between(0, _MAX_WAIT_MS)
        runtime_ms = draws.int_between(spec.runtime_min_ms, spec.runtime_max_ms)
        mem_kb = draws.pick(spec.mem_kb_choices)
        procs = draws.pick(spec.procs_choices)
        drop_start = draws.coin(spec.missing_start_frac)
        drop_end = draws.coin(spec.missing_end_frac)
        drop_mem = draws.coin(spec.missing_mem_frac)

        job_id = f"j{i + 1:06d}"
        start_ms = submit_ms + wait_ms
        cpu_s = procs * (runtime_ms / MS_PER_S)
        records.append(JobRecord(
            job_id=job_id,
            submit_time=Timestamp(submit_ms),
            start_time=None if drop_start else Timestamp(start_ms),
            end_time=None if drop_end else Timestamp(start_ms + runtime_ms),
            req_procs=procs,
            used_procs=procs,
            req_cpu_s=cpu_s,
            used_cpu_s=cpu_s,
            req_mem_kb=None if drop_mem else mem_kb,
            used_mem_kb=None if drop_mem else mem_kb,
            queue=f"q{procs}",
            dedicated=False,
            user=f"u{i % 23 + 1:03d}",
            project=f"p{i % 7 + 1:02d}",
            executable=f"app{i % 11 + 1}",
            exit_code=0,
        ))
        if not (drop_start or drop_end or drop_mem):
            rates.append((job_id, Fraction(MS_PER_S * mem_kb * BYTES_PER_KB, runtime_ms)))

    truth = GroundTruth(
        expected_valid=len(rates),
        expected_omitted=spec.count - len(rates),
        rates=tuple(rates),
    )
    return records, truth


def write_sidecar(truth: GroundTruth, sink: IO[str]) -> None:
    """Write ground truth as line-oriented text.

    Two key=value lines (expected_valid, expected_omitted) followed by
    one ``job_id numerator/denominator`` line per valid job.
    """
    sink.write(f"expected_valid={truth.expected_valid}\n")
    sink.write(f"expected_omitted={truth.expected_omitted}\n")
    for job_id, value in truth.rates:
        sink.write(f"{job_id} {value.numerator}/{value.denominator}\n")


def read_sidecar(source: Iterable[str]) -> GroundTruth:
    """Parse a ground-truth sidecar written by write_sidecar."""
    lines = [line.rstrip("\n") for line in source]
    if len(lines) < 2 or not lines[0].startswith("expected_valid=") \
            or not lines[1].startswith("expected_omitted="):
        raise ValueError("sidecar must start with expected_valid= and expected_omitted= lines")
    expected_valid = int(lines[0].split("=", 1)[1])
    expected_omitted = int(lines[1].split("=", 1)[1])
    rates = []
    for line in lines[2:]:
        if not line:
            continue
        job_id, _, value = line.partition(" ")
        numerator, _, denominator = value.partition("/")
        rates.append((job_id, Fraction(int(numerator), int(denominator))))
    return GroundTruth(expected_valid, expected_omitted, tuple(rates))


_INT_KEYS = ("seed", "count", "runtime_min_ms", "runtime_max_ms")
_FLOAT_KEYS = ("inter_arrival_mean_ms", "missing_start_frac",
               "missing_end_frac", "missing_mem_frac")
_LIST_KEYS = ("mem_kb_choices", "procs_choices")


def load_genspec(source: Iterable[str]) -> GenSpec:
    """Read a GenSpec from key=value lines.

    Unset keys keep their defaults; ``#`` starts a comment. List values
    are comma-separated integers. Anything unrecognized or unparseable
    raises InvalidSpec.
    """
    overrides: dict = {}
    for line_no, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep:
            raise InvalidSpec(f"line {line_no}: expected key=value, got {raw!r}")
        try:
            if key in _INT_KEYS:
                overrides[key] = int(value)
            elif key in _FLOAT_KEYS:
                overrides[key] = float(value)
            elif key in _LIST_KEYS:
                overrides[key] = tuple(int(item) for item in value.split(","))
            else:
                raise InvalidSpec(f"line {line_no}: unknown key {key!r}")
        except ValueError as exc:
            raise InvalidSpec(f"line {line_no}: bad value for {key}: {value!r}") from exc
    return GenSpec(**overrides)
