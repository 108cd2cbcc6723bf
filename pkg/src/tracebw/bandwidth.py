"""Per-job bandwidth estimation over parsed trace records.

A job's bandwidth is its memory footprint divided by its wall-clock
duration: ``1000 * n_bytes / duration_ms`` bytes per second. The byte
count comes from the requested-memory field by default (used memory is
the documented alternative), converted from Kbytes. Jobs missing a start
time, end time, or the selected memory field are partitioned out rather
than estimated.

Negative durations occur in real logs (end before start) and are kept,
flagged, and produce negative rates; zero durations make the estimate
undefined rather than infinite. An optional carry-forward rule fills a
missing start time from the immediately preceding record's end time
before partitioning; it is off by default, matching the batch policy of
simply omitting incomplete jobs.

All operations are pure functions over immutable inputs. Without
carry-forward the per-record computation is an order-preserving map;
with it the pass is sequential by contract.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Iterator, Sequence

from .model import MS_PER_S, JobRecord, RateFlag, RateSample, Timestamp

BYTES_PER_KB = 1024


class MemorySource(Enum):
    """Which memory field supplies the byte count."""

    REQUESTED = "requested"
    USED = "used"


class MbBase(Enum):
    """Divisor that turns bytes/second into Mbytes/second."""

    BINARY = 1048576
    DECIMAL = 1000000

    @property
    def divisor(self) -> int:
        return self.value


def select_bytes(record: JobRecord, source: MemorySource) -> int | None:
    """Byte count for a record, or None when the selected field is absent."""
    kb = record.req_mem_kb if source is MemorySource.REQUESTED else record.used_mem_kb
    return None if kb is None else kb * BYTES_PER_KB


def duration_ms(start: Timestamp, end: Timestamp) -> int:
    """Elapsed milliseconds from start to end; negative when end precedes start."""
    return end.epoch_ms - start.epoch_ms


def rate(n_bytes: int, duration: int) -> float | None:
    """Bandwidth in bytes/second: 1000 * n_bytes / duration.

    ``duration`` is in milliseconds and may be negative, giving a
    negative rate. A zero duration has no defined rate and returns None.
    """
    if n_bytes < 0:
        raise ValueError(f"n_bytes must be >= 0, got {n_bytes}")
    if duration == 0:
        return None
    if n_bytes == 0:
        return 0.0
    return MS_PER_S * n_bytes / duration


def to_output_unit(rate_bps: float, base: MbBase) -> float:
    """Convert bytes/second to Mbytes/second under the chosen Mbyte."""
    return rate_bps / base.divisor


def resolve_start(records: Sequence[JobRecord], idx: int) -> Timestamp | None:
    """Start time for records[idx], borrowing the predecessor's end if needed.

    Only the immediately preceding record is consulted, and only its end
    time; if that is also absent the start stays unresolved. The caller
    is responsible for flagging the substitution.
    """
    if not 0 <= idx < len(records):
        raise IndexError(f"index {idx} out of range for {len(records)} records")
    start = records[idx].start_time
    if start is not None:
        return start
    if idx >= 1:
        return records[idx - 1].end_time
    return None


def partition_jobs(records: Iterable[JobRecord],
                   source: MemorySource) -> tuple[list[JobRecord], list[JobRecord]]:
    """Split records into bandwidth-ready and omitted, preserving order.

    A record is valid when its start time, end time, and the selected
    memory field are all present.
    """
    valid: list[JobRecord] = []
    omitted: list[JobRecord] = []
    for record in records:
        ready = (record.start_time is not None
                 and record.end_time is not None
                 and select_bytes(record, source) is not None)
        (valid if ready else omitted).append(record)
    return valid, omitted


def iter_rates(records: Iterable[JobRecord], source: MemorySource,
               carry_forward: bool = False) -> Iterator[RateSample]:
    """Streaming form of compute_rates: one sample per bandwidth-ready record.

    With ``carry_forward`` the missing-start substitution happens before
    the validity test, exactly as :func:`resolve_start` does on a
    materialized sequence, so records must arrive in file order.
    """
    prev_end: Timestamp | None = None
    for record in records:
        start = record.start_time
        carried = False
        if start is None and carry_forward and prev_end is not None:
            start = prev_end
            carried = True
        end = record.end_time
        n_bytes = select_bytes(record, source)
        if start is not None and end is not None and n_bytes is not None:
            duration = duration_ms(start, end)
            flags = set()
            if carried:
                flags.add(RateFlag.CARRIED_FORWARD_START)
            if duration < 0:
                flags.add(RateFlag.NEGATIVE_DURATION)
            yield RateSample(
                job_id=record.job_id,
                start=start,
                end=end,
                n_bytes=n_bytes,
                duration_ms=duration,
                rate_bytes_per_s=rate(n_bytes, duration),
                flags=frozenset(flags),
            )
        prev_end = record.end_time


def compute_rates(records: Iterable[JobRecord], source: MemorySource,
                  carry_forward: bool = False) -> list[RateSample]:
    """Run the full per-job pipeline; omitted records produce no sample."""
    return list(iter_rates(records, source, carry_forward))
