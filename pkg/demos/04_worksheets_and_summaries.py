"""Exports: the four-column worksheet, the full CSV, and summaries.

The worksheet is the eyeball artifact (day-granularity dates, rates in
Mbytes/second, the raw Kbyte figure from the trace); the CSV is the
engineering artifact (every field, bit-exact floats). The same things
are available from the command line as `tracebw rates` / `tracebw
summary`.
"""

import io
import sys

from tracebw import (
    GenSpec,
    MbBase,
    MemorySource,
    compute_rates,
    generate,
    summarize,
    write_csv,
    write_worksheet,
)

records, _ = generate(GenSpec(seed=5, count=400, missing_end_frac=0.05,
                              runtime_min_ms=250, runtime_max_ms=600_000))
samples = compute_rates(records, MemorySource.REQUESTED)

############################################################
# Worksheet: header is fixed, one row per sample, Mbytes cell
# rendered to at most 7 significant digits. An undefined rate
# (zero-length interval) would leave that cell empty.

sink = io.StringIO()
write_worksheet(samples[:5], MbBase.BINARY, sink)
print(sink.getvalue().rstrip())

############################################################
# Full CSV: job ids, millisecond timestamps, byte counts,
# rates in both units, and provenance flags.

print()
write_csv(samples[:3], MbBase.BINARY, sys.stdout)

############################################################
# Summary statistics over the defined rates, in the output
# unit. Median is the lower-of-two-middles; p95 nearest-rank.

print()
for base in (MbBase.BINARY, MbBase.DECIMAL):
    s = summarize(samples, base)
    print(f"{base.name.lower():7s} min={s.min:.4f} median={s.median:.4f} "
          f"mean={s.mean:.4f} p95={s.p95:.4f} max={s.max:.4f} "
          f"(n={s.n_rates}, negative={s.n_negative}, undefined={s.n_undefined})")
