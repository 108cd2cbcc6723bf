"""Streaming parsers for line-oriented batch accounting logs.

A log is an ASCII file with one line per job. Two concrete layouts are
supported:

LANL16
    16 positionally-ordered columns: job id, submit/start/end timestamps,
    requested and used processors, requested and used CPU seconds,
    requested and used memory in Kbytes, queue, dedicated flag, user,
    project, executable, exit code. ``#`` starts a comment line. In every
    column but the first, an empty cell or the token ``-1`` means the
    value is missing (the job id is taken verbatim). Timestamps are
    integer epoch seconds or ``Mon DD YY[ HH:MM:SS[.mmm]]``. Columns are
    tab-separated; cells may contain spaces (the civil timestamp form
    does). Lines without any tab fall back to whitespace-run splitting,
    in which case timestamps must use the epoch-seconds form.

ARCHIVE18
    The public archive's 18-field layout: one line of whitespace-separated
    numeric fields per job, ``;`` starts a header comment, ``-1`` means
    missing. Fields are job number, submit time (epoch seconds), wait
    time, runtime, allocated processors, average used CPU seconds, used
    memory (Kbytes per processor), requested processors, requested time,
    requested memory (Kbytes per processor), status, user, group,
    executable, queue, partition, preceding job, think time. Start time
    is derived as submit + wait and end time as start + runtime; a
    missing addend makes the derived value missing too. Per-processor
    memory is multiplied by the allocated processor count to give a
    whole-job figure unless ``scale_per_proc_memory=False``. There is no
    ARCHIVE18 writer.

Malformed lines are counted and skipped, never fatal; only a failure of
the underlying stream aborts a session (:class:`IoFailure`, carrying the
partial report).
"""

from __future__ import annotations

import math
from collections import Counter
from enum import Enum
from typing import IO, Iterable, Iterator

from .errors import IoFailure, MalformedLine
from .model import MS_PER_S, JobRecord, ParseReport, Timestamp
from .timefmt import format_timestamp, parse_timestamp


class TraceFormat(Enum):
    LANL16 = "lanl"
    ARCHIVE18 = "archive"


LANL_FIELD_COUNT = 16
ARCHIVE_FIELD_COUNT = 18

_MISSING_TOKENS = ("", "-1")


def _split_lanl(line: str) -> list[str]:
    # Tabs delimit when present (civil timestamps contain spaces); a line
    # with no tab at all splits on whitespace runs instead.
    if "\t" in line:
        return [cell.strip(" ") for cell in line.split("\t")]
    return line.split()


def parse_lanl_line(line: str, line_no: int = 0) -> JobRecord:
    """Parse one 16-column record line into a JobRecord.

    Raises MalformedLine when the column count is wrong or a cell fails
    to parse; the caller decides whether that ends the session (the
    streaming parser just counts it).
    """
    cells = _split_lanl(line)
    if len(cells) != LANL_FIELD_COUNT:
        raise MalformedLine(line_no, "column-count",
                            f"expected {LANL_FIELD_COUNT} columns, got {len(cells)}")

    def absent(i: int) -> bool:
        return cells[i] in _MISSING_TOKENS

    def ts(i: int, name: str) -> Timestamp | None:
        if absent(i):
            return None
        try:
            return parse_timestamp(cells[i])
        except ValueError as exc:
            raise MalformedLine(line_no, "bad-timestamp", f"{name}={cells[i]!r}") from exc

    def count(i: int, name: str) -> int | None:
        if absent(i):
            return None
        try:
            value = int(cells[i])
        except ValueError as exc:
            raise MalformedLine(line_no, "bad-int", f"{name}={cells[i]!r}") from exc
        if value < 0:
            raise MalformedLine(line_no, "negative-value", f"{name}={value}")
        return value

    def seconds(i: int, name: str) -> float | None:
        if absent(i):
            return None
        try:
            value = float(cells[i])
        except ValueError as exc:
            raise MalformedLine(line_no, "bad-real", f"{name}={cells[i]!r}") from exc
        if not math.isfinite(value):
            raise MalformedLine(line_no, "bad-real", f"{name}={cells[i]!r}")
        if value < 0:
            raise MalformedLine(line_no, "negative-value", f"{name}={value}")
        return value

    def text(i: int) -> str | None:
        return None if absent(i) else cells[i]

    def flag(i: int, name: str) -> bool | None:
        if absent(i):
            return None
        try:
            return int(cells[i]) != 0
        except ValueError as exc:
            raise MalformedLine(line_no, "bad-flag", f"{name}={cells[i]!r}") from exc

    def integer(i: int, name: str) -> int | None:
        if absent(i):
            return None
        try:
            return int(cells[i])
        except ValueError as exc:
            raise MalformedLine(line_no, "bad-int", f"{name}={cells[i]!r}") from exc

    return JobRecord(
        job_id=cells[0],
        submit_time=ts(1, "submit_time"),
        start_time=ts(2, "start_time"),
        end_time=ts(3, "end_time"),
        req_procs=count(4, "req_procs"),
        used_procs=count(5, "used_procs"),
        req_cpu_s=seconds(6, "req_cpu_s"),
        used_cpu_s=seconds(7, "used_cpu_s"),
        req_mem_kb=count(8, "req_mem_kb"),
        used_mem_kb=count(9, "used_mem_kb"),
        queue=text(10),
        dedicated=flag(11, "dedicated"),
        user=text(12),
        project=text(13),
        executable=text(14),
        exit_code=integer(15, "exit_code"),
    )


def parse_archive_line(line: str, line_no: int = 0, *,
                       scale_per_proc_memory: bool = True) -> JobRecord:
    """Parse one 18-field archive record line into a JobRecord."""
    cells = line.split()
    if len(cells) != ARCHIVE_FIELD_COUNT:
        raise MalformedLine(line_no, "column-count",
                            f"expected {ARCHIVE_FIELD_COUNT} fields, got {len(cells)}")

    def integer(i: int, name: str) -> int | None:
        token = cells[i]
        try:
            value = int(token)
        except ValueError:
            try:
                real = float(token)
            except ValueError as exc:
                raise MalformedLine(line_no, "bad-int", f"{name}={token!r}") from exc
            if not real.is_integer():
                raise MalformedLine(line_no, "bad-int", f"{name}={token!r}")
            value = int(real)
        return None if value == -1 else value

    def amount(i: int, name: str) -> int | None:
        value = integer(i, name)
        if value is not None and value < 0:
            raise MalformedLine(line_no, "negative-value", f"{name}={value}")
        return value

    def seconds(i: int, name: str) -> float | None:
        token = cells[i]
        try:
            value = float(token)
        except ValueError as exc:
            raise MalformedLine(line_no, "bad-real", f"{name}={token!r}") from exc
        if not math.isfinite(value):
            raise MalformedLine(line_no, "bad-real", f"{name}={token!r}")
        if value == -1:
            return None
        if value < 0:
            raise MalformedLine(line_no, "negative-value", f"{name}={value}")
        return value

    def label(i: int, name: str) -> str | None:
        return None if integer(i, name) is None else cells[i]

    submit_s = seconds(1, "submit")
    wait_s = seconds(2, "wait")
    runtime_s = seconds(3, "runtime")
    alloc_procs = amount(4, "allocated_procs")
    used_cpu_s = seconds(5, "avg_cpu")
    used_mem_pp = amount(6, "used_mem_kb_per_proc")
    req_procs = amount(7, "requested_procs")
    req_time_s = seconds(8, "requested_time")
    req_mem_pp = amount(9, "requested_mem_kb_per_proc")
    exit_code = integer(10, "status")
    # Trailing category fields are validated even where unused.
    user = label(11, "user")
    group = label(12, "group")
    executable = label(13, "executable")
    queue = label(14, "queue")
    integer(15, "partition")
    integer(16, "preceding_job")
    integer(17, "think_time")

    def ms(value_s: float | None) -> Timestamp | None:
        return None if value_s is None else Timestamp(int(round(value_s * MS_PER_S)))

    start_s = None if submit_s is None or wait_s is None else submit_s + wait_s
    end_s = None if start_s is None or runtime_s is None else start_s + runtime_s

    def whole_job(mem_pp: int | None) -> int | None:
        if mem_pp is None:
            return None
        if not scale_per_proc_memory:
            return mem_pp
        return None if alloc_procs is None else mem_pp * alloc_procs

    return JobRecord(
        job_id=cells[0],
        submit_time=ms(submit_s),
        start_time=ms(start_s),
        end_time=ms(end_s),
        req_procs=req_procs,
        used_procs=alloc_procs,
        req_cpu_s=req_time_s,
        used_cpu_s=used_cpu_s,
        req_mem_kb=whole_job(req_mem_pp),
        used_mem_kb=whole_job(used_mem_pp),
        queue=queue,
        dedicated=None,
        user=user,
        project=group,
        executable=executable,
        exit_code=exit_code,
    )


_COMMENT_PREFIX = {TraceFormat.LANL16: "#", TraceFormat.ARCHIVE18: ";"}


class TraceStream:
    """Single-pass iterator of JobRecords with a live ParseReport.

    Records come out in input order and are not retained, so peak memory
    is independent of file length. ``report`` is a frozen snapshot of the
    counters so far and is final once iteration ends. A session has one
    consumer; distinct sessions are fully independent.

    The parsers never drop a structurally-valid record for missing data,
    so ``skipped_missing_times`` is always zero here; the data-availability
    partition happens downstream in :mod:`tracebw.bandwidth`.
    """

    def __init__(self, source: Iterable[str] | IO[str], format: TraceFormat, *,
                 scale_per_proc_memory: bool = True):
        self.format = format
        self._total = 0
        self._parsed = 0
        self._malformed = 0
        self._reasons: Counter[str] = Counter()
        self._records = self._run(iter(source), scale_per_proc_memory)

    def __iter__(self) -> "TraceStream":
        return self

    def __next__(self) -> JobRecord:
        return next(self._records)

    @property
    def report(self) -> ParseReport:
        return ParseReport(
            total_lines=self._total,
            parsed=self._parsed,
            skipped_missing_times=0,
            malformed=self._malformed,
            reasons=dict(self._reasons),
        )

    def _run(self, lines: Iterator[str], scale: bool) -> Iterator[JobRecord]:
        comment = _COMMENT_PREFIX[self.format]
        lanl = self.format is TraceFormat.LANL16
        while True:
            try:
                raw = next(lines)
            except StopIteration:
                return
            except OSError as exc:
                raise IoFailure(exc, partial_report=self.report) from exc
            self._total += 1
            line = raw.rstrip("\r\n")
            stripped = line.strip()
            if not stripped or stripped.startswith(comment):
                continue
            try:
                if lanl:
                    record = parse_lanl_line(line, self._total)
                else:
                    record = parse_archive_line(line, self._total,
                                                scale_per_proc_memory=scale)
            except MalformedLine as exc:
                self._malformed += 1
                self._reasons[exc.reason] += 1
                continue
            self._parsed += 1
            yield record


def parse_trace(source: Iterable[str] | IO[str], format: TraceFormat, *,
                scale_per_proc_memory: bool = True) -> TraceStream:
    """Stream a log into JobRecords, accumulating a ParseReport."""
    return TraceStream(source, format, scale_per_proc_memory=scale_per_proc_memory)


def format_lanl_line(record: JobRecord) -> str:
    """Render a JobRecord as one canonical tab-separated LANL16 line.

    Absent values render as ``-1``; timestamps render as epoch seconds
    when second-aligned and in the civil form otherwise, so
    ``parse_lanl_line(format_lanl_line(r))`` reconstructs ``r``. The
    format has no escaping: a text field that collides with the reserved
    tokens (``-1``, embedded tabs or newlines, surrounding spaces) or an
    exit code of exactly -1 cannot survive the trip and comes back as a
    different (or absent) value.
    """

    def opt_ts(ts: Timestamp | None) -> str:
        return "-1" if ts is None else format_timestamp(ts)

    def opt_int(value: int | None) -> str:
        return "-1" if value is None else str(value)

    def opt_real(value: float | None) -> str:
        return "-1" if value is None else repr(float(value))

    def opt_text(value: str | None) -> str:
        return "-1" if value is None else value

    def opt_flag(value: bool | None) -> str:
        return "-1" if value is None else ("1" if value else "0")

    cells = (
        record.job_id,
        opt_ts(record.submit_time),
        opt_ts(record.start_time),
        opt_ts(record.end_time),
        opt_int(record.req_procs),
        opt_int(record.used_procs),
        opt_real(record.req_cpu_s),
        opt_real(record.used_cpu_s),
        opt_int(record.req_mem_kb),
        opt_int(record.used_mem_kb),
        opt_text(record.queue),
        opt_flag(record.dedicated),
        opt_text(record.user),
        opt_text(record.project),
        opt_text(record.executable),
        opt_int(record.exit_code),
    )
    return "\t".join(cells)


def write_lanl_trace(records: Iterable[JobRecord], sink: IO[str]) -> int:
    """Write records as LANL16 lines; returns the number written."""
    written = 0
    for record in records:
        try:
            sink.write(format_lanl_line(record) + "\n")
        except OSError as exc:
            raise IoFailure(exc, rows_written=written) from exc
        written += 1
    return written
