"""The per-job bandwidth estimate, step by step.

A job that needed n bytes of memory and ran for diff milliseconds gets
the estimate 1000 * n / diff bytes per second. This walk shows the
pieces: byte selection, durations, the formula's edge cases, unit
conversion, the validity partition, and the optional carry-forward rule
for missing start times.
"""

from tracebw import (
    JobRecord,
    MbBase,
    MemorySource,
    Timestamp,
    compute_rates,
    duration_ms,
    partition_jobs,
    rate,
    select_bytes,
    to_output_unit,
)

############################################################
# The formula. Durations are milliseconds, so the 1000 turns
# byte-per-millisecond into byte-per-second.

print("1000 bytes over 1 s      ->", rate(1000, 1000), "B/s")
print("16 MiB over 2 s          ->", rate(16777216, 2000), "B/s")
print("zero-length interval     ->", rate(32768, 0))          # undefined, not infinite
print("end before start         ->", rate(32768, -4000), "B/s")  # kept, negative

############################################################
# Rates convert to Mbytes/second under either Mbyte.

bps = rate(16777216, 2000)
print()
print("binary Mbytes/s          ->", to_output_unit(bps, MbBase.BINARY))
print("decimal Mbytes/s         ->", to_output_unit(bps, MbBase.DECIMAL))

############################################################
# From records: the byte count comes from the requested-memory
# field (Kbytes * 1024) by default; jobs missing start, end, or
# that field are partitioned out rather than guessed at.

jobs = [
    JobRecord("full", start_time=Timestamp(0), end_time=Timestamp(32000), req_mem_kb=32768),
    JobRecord("no-start", end_time=Timestamp(90000), req_mem_kb=32768),
    JobRecord("no-memory", start_time=Timestamp(0), end_time=Timestamp(5000)),
]
print()
print("bytes for 'full':", select_bytes(jobs[0], MemorySource.REQUESTED))
print("duration for 'full':", duration_ms(jobs[0].start_time, jobs[0].end_time), "ms")

valid, omitted = partition_jobs(jobs, MemorySource.REQUESTED)
print("valid:", [j.job_id for j in valid], " omitted:", [j.job_id for j in omitted])

############################################################
# Carry-forward substitutes the previous record's end time for
# a missing start. It is off by default (incomplete jobs are
# simply omitted); turning it on rescues 'no-start' here and
# flags the sample.

for carry in (False, True):
    samples = compute_rates(jobs, MemorySource.REQUESTED, carry_forward=carry)
    shown = [(s.job_id, round(s.rate_bytes_per_s, 1), sorted(f.name for f in s.flags))
             for s in samples]
    print(f"carry_forward={carry}: {shown}")
