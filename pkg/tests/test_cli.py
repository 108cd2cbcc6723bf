"""Command-line behavior: outputs, exit codes, stream separation."""

import io
import subprocess
import sys

import pytest

from tracebw import read_sidecar
from tracebw.cli import main

from .test_parsing import LANL_LINE, archive_line

NEGATIVE_LINE = LANL_LINE.replace("j1", "jneg").replace(
    "768453010\t768453020", "768453020\t768453010")


@pytest.fixture
def small_trace(tmp_path):
    path = tmp_path / "small.trace"
    lines = [
        "# tiny fixture",
        LANL_LINE,
        NEGATIVE_LINE,
        LANL_LINE.replace("768453010", "-1"),   # start missing -> omitted
        "only\tthree\tcolumns",
    ]
    path.write_text("\n".join(lines) + "\n")
    return path


def out_err(capsys):
    captured = capsys.readouterr()
    return captured.out, captured.err


class TestInspect:
    def test_key_value_report(self, small_trace, capsys):
        assert main(["inspect", str(small_trace)]) == 0
        out, err = out_err(capsys)
        assert out == "total=4\nparsed=3\nvalid=2\nomitted=1\nmalformed=1\n"
        assert err == ""

    def test_carry_forward_changes_valid_count(self, small_trace, capsys):
        assert main(["inspect", "--carry-forward", str(small_trace)]) == 0
        out, _ = out_err(capsys)
        assert "valid=3" in out
        assert "omitted=0" in out

    def test_out_flag_redirects_data(self, small_trace, tmp_path, capsys):
        target = tmp_path / "report.txt"
        assert main(["inspect", str(small_trace), "--out", str(target)]) == 0
        out, _ = out_err(capsys)
        assert out == ""
        assert "total=4" in target.read_text()

    def test_archive_format(self, tmp_path, capsys):
        path = tmp_path / "a.swf"
        path.write_text("; header\n" + archive_line() + "\n"
                        + archive_line(req_mem=-1) + "\n")
        assert main(["inspect", "--format", "archive", str(path)]) == 0
        out, _ = out_err(capsys)
        assert "total=2" in out and "valid=1" in out

    def test_per_proc_memory_raw(self, tmp_path, capsys):
        # Memory present but proc count missing: only raw mode keeps the job.
        path = tmp_path / "a.swf"
        path.write_text(archive_line(procs=-1) + "\n")
        main(["inspect", "--format", "archive", str(path)])
        scaled_out, _ = out_err(capsys)
        main(["inspect", "--format", "archive", "--per-proc-memory", "raw", str(path)])
        raw_out, _ = out_err(capsys)
        assert "valid=0" in scaled_out
        assert "valid=1" in raw_out

    def test_stdin_input(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO(LANL_LINE + "\n"))
        assert main(["inspect", "-"]) == 0
        out, _ = out_err(capsys)
        assert "parsed=1" in out


class TestRates:
    def test_empty_file_gives_header_only(self, tmp_path, capsys):
        path = tmp_path / "empty.trace"
        path.write_text("")
        assert main(["rates", str(path)]) == 0
        out, err = out_err(capsys)
        assert out == "Start date,End date,Mbytes,Bytes\n"
        assert "total=0" in err

    def test_worksheet_with_report_on_stderr(self, small_trace, capsys):
        assert main(["rates", str(small_trace)]) == 0
        out, err = out_err(capsys)
        lines = out.splitlines()
        assert lines[0] == "Start date,End date,Mbytes,Bytes"
        assert len(lines) == 3
        assert "valid=2" in err and "malformed=1" in err

    def test_drop_negative(self, small_trace, capsys):
        assert main(["rates", "--drop-negative", str(small_trace)]) == 0
        out, err = out_err(capsys)
        assert len(out.splitlines()) == 2
        assert "-" not in out.splitlines()[1].split(",")[2]
        # the report still accounts for the sample before the filter
        assert "valid=2" in err

    def test_full_csv(self, small_trace, capsys):
        assert main(["rates", "--full", str(small_trace)]) == 0
        out, _ = out_err(capsys)
        lines = out.splitlines()
        assert lines[0].startswith("job_id,start_ms,")
        assert lines[1].split(",")[0] == "j1"
        assert lines[2].endswith("NEGATIVE_DURATION")

    def test_mb_convention_flag(self, small_trace, capsys):
        main(["rates", str(small_trace)])
        binary_out, _ = out_err(capsys)
        main(["rates", "--mb", "decimal", str(small_trace)])
        decimal_out, _ = out_err(capsys)
        assert binary_out != decimal_out

    def test_memory_source_flag(self, small_trace, capsys):
        main(["rates", "--full", str(small_trace)])
        requested, _ = out_err(capsys)
        main(["rates", "--full", "--memory", "used", str(small_trace)])
        used, _ = out_err(capsys)
        assert "33554432" in requested   # 32768 KB
        assert "30720000" in used        # 30000 KB

    def test_archive_pipeline_end_to_end(self, tmp_path, capsys):
        # submit 100 s + wait 10 s, runtime 20 s, 200 KB/proc on 4 procs:
        # 819200 bytes over 20000 ms -> 40960 B/s.
        path = tmp_path / "a.swf"
        path.write_text("; header\n" + archive_line() + "\n")
        assert main(["rates", "--format", "archive", "--full", str(path)]) == 0
        out, _ = out_err(capsys)
        row = out.splitlines()[1].split(",")
        assert row[1] == "110000" and row[2] == "130000"
        assert row[4] == "819200"
        assert row[5] == "40960.0"

    def test_byte_identical_across_runs(self, small_trace, tmp_path):
        first = tmp_path / "one.csv"
        second = tmp_path / "two.csv"
        assert main(["rates", str(small_trace), "--out", str(first)]) == 0
        assert main(["rates", str(small_trace), "--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()


class TestSummary:
    def test_key_value_output(self, small_trace, capsys):
        assert main(["summary", str(small_trace)]) == 0
        out, err = out_err(capsys)
        keys = [line.split("=")[0] for line in out.splitlines()]
        assert keys == ["n_rates", "n_negative", "n_undefined",
                        "min", "max", "mean", "median", "p95"]
        assert "n_rates=2" in out and "n_negative=1" in out
        assert "valid=2" in err

    def test_empty_statistics_render_empty(self, tmp_path, capsys):
        path = tmp_path / "empty.trace"
        path.write_text("")
        assert main(["summary", str(path)]) == 0
        out, _ = out_err(capsys)
        assert "n_rates=0" in out
        assert "min=\n" in out


class TestGen:
    def write_spec(self, tmp_path, text="seed=42\ncount=1000\nmissing_start_frac=0.3\n"):
        path = tmp_path / "fixture.genspec"
        path.write_text(text)
        return path

    def test_writes_trace_and_sidecar(self, tmp_path, capsys):
        spec = self.write_spec(tmp_path)
        out_path = tmp_path / "fix.trace"
        assert main(["gen", str(spec), "--out", str(out_path)]) == 0
        _, err = out_err(capsys)
        truth = read_sidecar((tmp_path / "fix.trace.truth").read_text().splitlines())
        assert out_path.read_text().count("\n") == 1000
        assert truth.expected_valid + truth.expected_omitted == 1000
        assert f"expected_valid={truth.expected_valid}" in err

    def test_truth_flag_overrides_sidecar_path(self, tmp_path):
        spec = self.write_spec(tmp_path, "count=5\n")
        main(["gen", str(spec), "--out", str(tmp_path / "t.trace"),
              "--truth", str(tmp_path / "gt.txt")])
        assert (tmp_path / "gt.txt").exists()
        assert not (tmp_path / "t.trace.truth").exists()

    def test_gen_is_deterministic(self, tmp_path):
        spec = self.write_spec(tmp_path)
        main(["gen", str(spec), "--out", str(tmp_path / "a.trace")])
        main(["gen", str(spec), "--out", str(tmp_path / "b.trace")])
        assert (tmp_path / "a.trace").read_bytes() == (tmp_path / "b.trace").read_bytes()
        assert (tmp_path / "a.trace.truth").read_bytes() \
            == (tmp_path / "b.trace.truth").read_bytes()

    def test_gen_then_summary_matches_sidecar(self, tmp_path, capsys):
        spec = self.write_spec(tmp_path)
        out_path = tmp_path / "fix.trace"
        main(["gen", str(spec), "--out", str(out_path)])
        capsys.readouterr()
        truth = read_sidecar((tmp_path / "fix.trace.truth").read_text().splitlines())

        assert main(["summary", str(out_path)]) == 0
        out, err = out_err(capsys)
        assert f"n_rates={truth.expected_valid}" in out
        assert "n_undefined=0" in out
        assert f"valid={truth.expected_valid}" in err
        assert f"omitted={truth.expected_omitted}" in err


class TestExitCodes:
    def test_missing_input_is_io_failure(self, tmp_path, capsys):
        assert main(["inspect", str(tmp_path / "nope.trace")]) == 1
        _, err = out_err(capsys)
        assert "error" in err

    def test_unwritable_output_is_io_failure(self, small_trace, tmp_path):
        target = tmp_path / "no" / "such" / "dir" / "x.csv"
        assert main(["rates", str(small_trace), "--out", str(target)]) == 1

    def test_invalid_genspec_is_usage_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.genspec"
        bad.write_text("count=many\n")
        assert main(["gen", str(bad), "--out", str(tmp_path / "t.trace")]) == 2

    def test_unknown_flag_exits_two(self, small_trace):
        with pytest.raises(SystemExit) as info:
            main(["inspect", "--frmt", "lanl", str(small_trace)])
        assert info.value.code == 2

    def test_gen_to_stdout_rejected(self, tmp_path):
        spec = tmp_path / "s.genspec"
        spec.write_text("count=1\n")
        with pytest.raises(SystemExit) as info:
            main(["gen", str(spec), "--out", "-"])
        assert info.value.code == 2

    def test_missing_subcommand_exits_two(self):
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 2


def test_streams_separate_in_subprocess(small_trace):
    result = subprocess.run(
        [sys.executable, "-m", "tracebw", "rates", str(small_trace)],
        capture_output=True, text=True, check=True)
    assert result.stdout.splitlines()[0] == "Start date,End date,Mbytes,Bytes"
    assert "parsed=3" in result.stderr
    assert "Start date" not in result.stderr
