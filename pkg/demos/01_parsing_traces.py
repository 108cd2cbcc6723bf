"""Parsing accounting logs: both line formats and the parse report.

An accounting log is an ASCII file with one line per job. This walk
shows the 16-column layout, the archive's 18-field layout, how missing
values and malformed lines are handled, and what the parse report
counts.
"""

import io

from tracebw import TraceFormat, parse_trace

############################################################
# A tiny 16-column log. Columns: job id, submit/start/end,
# requested/used processors, requested/used CPU seconds,
# requested/used memory (Kbytes), queue, dedicated, user,
# project, executable, exit code. "-1" means "unknown" and
# "#" starts a comment.

lanl_log = """\
# three jobs from a sixteen-column log
j1\t768453000\t768453010\t768453020\t32\t32\t100\t90\t32768\t30000\tbatch\t0\talice\tsim\ta.out\t0
j2\t768453100\t-1\t768453140\t64\t64\t200\t150\t65536\t60000\tbatch\t0\tbob\tsim\tb.out\t0
j3\t768453200\tMay 10 94 00:00:03.456\t768453260\t128\t128\t400\t390\t131072\t-1\tlarge\t1\tcarol\tviz\tc.out\t1
this line is broken
"""

stream = parse_trace(io.StringIO(lanl_log), TraceFormat.LANL16)
for record in stream:
    print(f"{record.job_id}: start={record.start_time} req_mem_kb={record.req_mem_kb}")

############################################################
# The report partitions every physical line: records parsed,
# malformed lines (counted per reason, never fatal), and
# comment/blank lines.

report = stream.report
print()
print(f"total lines      {report.total_lines}")
print(f"parsed           {report.parsed}")
print(f"malformed        {report.malformed}  reasons={dict(report.reasons)}")
print(f"comment/blank    {report.comment_blank_lines}")

############################################################
# The archive's 18-field layout carries wait and runtime
# instead of start/end, and memory per processor. Start and
# end are derived (submit + wait, start + runtime) and the
# per-processor memory is scaled by the allocated processors.

archive_log = """\
; job submit wait run procs cpu mem reqprocs reqtime reqmem status uid gid exe queue part prev think
1 100 10 20 4 18.0 100 4 30 200 1 3 2 5 1 1 -1 -1
2 160 -1 25 8 20.0 100 8 30 200 1 3 2 5 1 1 -1 -1
"""

print()
for record in parse_trace(io.StringIO(archive_log), TraceFormat.ARCHIVE18):
    print(f"job {record.job_id}: start={record.start_time} end={record.end_time} "
          f"req_mem_kb={record.req_mem_kb} (per-proc value scaled by procs)")
