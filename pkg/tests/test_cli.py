from __future__ import annotations

import io
import contextlib
from pathlib import Path

import pytest

from autexcl.cli import main

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

TOY_DATASET = """\
curve_id=toy
expected_genus=2
ell=3
record label=a level=7 al=+1 h=-1,1 mult=1
record label=b level=7 al=-1 h=2,1 mult=1
"""


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        try:
            code = main(argv)
        except SystemExit as exc:  # argparse usage errors
            code = exc.code
    return code, buf.getvalue()


class TestExclude:
    def test_inline_inconclusive(self):
        code, out = run(
            ["exclude", "--coeffs", "4,0,3,0,1", "--q", "2", "--prime-power", "2",
             "--nmax", "40"]
        )
        assert code == 10
        assert out == "inline\t2\t2\t2\tInconclusive\t-\t1\t6\n"

    def test_exact_flag_agrees(self):
        code, out = run(
            ["exclude", "--coeffs", "4,0,3,0,1", "--q", "2", "--prime-power", "2",
             "--nmax", "40", "--exact"]
        )
        assert code == 10

    def test_bound_override(self):
        code, out = run(
            ["exclude", "--coeffs", "4,0,3,0,1", "--q", "2", "--prime-power", "2",
             "--nmax", "40", "--bound-override", "0"]
        )
        assert code == 0
        assert "Excluded\t1\t1\t0" in out

    def test_dataset_input(self, tmp_path):
        path = tmp_path / "toy.dataset"
        path.write_text(TOY_DATASET)
        code, out = run(["exclude", "--dataset", str(path), "--prime-power", "2", "--nmax", "30"])
        assert out.startswith("toy\t2\t3\t2\t")
        assert code in (0, 10)

    def test_missing_file(self, capsys):
        code, out = run(["exclude", "--dataset", "/nonexistent.dataset", "--prime-power", "2"])
        assert code == 2

    def test_invalid_inline_rejected(self):
        code, out = run(["exclude", "--coeffs", "1,0,0,0,1", "--q", "2", "--prime-power", "2"])
        assert code == 2

    def test_genus_one_rejected(self):
        code, out = run(["exclude", "--coeffs", "2,1,1", "--q", "2", "--prime-power", "2"])
        assert code == 2


class TestIngest:
    def test_writes_weil_line(self, tmp_path):
        src = tmp_path / "toy.dataset"
        src.write_text(TOY_DATASET)
        out_file = tmp_path / "toy.weil"
        code, out = run(["ingest", str(src), "--out", str(out_file)])
        assert code == 0
        text = out_file.read_text()
        assert text.startswith("weil q=3 g=2 coeffs=")
        # reusable as exclude input
        code, out = run(["exclude", "--weil", str(out_file), "--prime-power", "2", "--nmax", "20"])
        assert code in (0, 10)

    def test_genus_mismatch_exit_2(self, tmp_path):
        src = tmp_path / "bad.dataset"
        src.write_text(TOY_DATASET.replace("expected_genus=2", "expected_genus=3"))
        code, out = run(["ingest", str(src)])
        assert code == 2

    def test_stdout_default(self, tmp_path):
        src = tmp_path / "toy.dataset"
        src.write_text(TOY_DATASET)
        code, out = run(["ingest", str(src)])
        assert code == 0 and out.startswith("weil q=3 g=2 coeffs=9,")


class TestCount:
    def test_exact_counts(self):
        code, out = run(["count", "--coeffs", "4,0,3,0,1", "--q", "2", "--nmax", "4", "--exact"])
        assert code == 0
        rows = [line.split("\t") for line in out.strip().splitlines()]
        assert [r[1] for r in rows] == ["3", "11", "9", "15"]
        assert [r[2] for r in rows] == ["3", "8", "6", "4"]

    def test_modular_counts(self):
        code, out = run(
            ["count", "--coeffs", "4,0,3,0,1", "--q", "2", "--nmax", "4",
             "--prime-power", "2"]
        )
        assert code == 0
        rows = [line.split("\t") for line in out.strip().splitlines()]
        assert [r[1] for r in rows] == ["1", "1", "1", "1"]
        assert [r[2] for r in rows] == ["1", "0", "0", "0"]


CURVE_F3 = "curve hyperelliptic p=3 k=1 f=1,0,0,0,0,1 h=0\n"
KLEIN = (
    "curve quartic p=2 k=3 F=3,1,0:1;0,3,1:1;1,0,3:1\n"
    "map matrix=2,0,0,0,7,0,0,0,4\n"
)


class TestOracle:
    def test_count(self, tmp_path):
        f = tmp_path / "c.curve"
        f.write_text(CURVE_F3)
        code, out = run(["oracle", "count", "--curve", str(f), "--nmax", "3"])
        assert code == 0
        # values cross-checked against the naive double loop in test_oracle
        assert out == "1\t4\n2\t10\n3\t28\n"

    def test_zeta_roundtrip(self, tmp_path):
        f = tmp_path / "c.curve"
        f.write_text(CURVE_F3)
        code, out = run(["oracle", "zeta", "--curve", str(f)])
        assert code == 0 and out.startswith("weil q=3 g=2 coeffs=")

    def test_soundness_hyperelliptic(self, tmp_path):
        f = tmp_path / "c.curve"
        f.write_text(CURVE_F3)
        code, out = run(["oracle", "soundness", "--curve", str(f), "--prime-power", "2"])
        assert code == 0
        assert out.splitlines()[0] == "map_order\t2"
        assert out.splitlines()[-1] == "PASS"

    def test_soundness_klein(self, tmp_path):
        f = tmp_path / "k.curve"
        f.write_text(KLEIN)
        code, out = run(
            ["oracle", "soundness", "--curve", str(f), "--prime-power", "7", "--nmax", "12"]
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "map_order\t7"
        assert lines[-1] == "PASS"

    def test_wrong_order_fails(self, tmp_path):
        f = tmp_path / "c.curve"
        f.write_text(CURVE_F3)
        code, out = run(["oracle", "soundness", "--curve", str(f), "--prime-power", "3"])
        assert code == 1

    def test_singular_model_exit_2(self, tmp_path):
        f = tmp_path / "c.curve"
        f.write_text("curve hyperelliptic p=5 k=1 f=1,0,0,0,0,1 h=0\n")
        code, out = run(["oracle", "count", "--curve", str(f), "--nmax", "1"])
        assert code == 2


needs_fixtures = pytest.mark.skipif(
    not (FIXTURES / "x0plus_163_l2_k1.dataset").exists(),
    reason="fixtures not generated",
)


class TestReproduce:
    @needs_fixtures
    def test_x0plus_row(self):
        code, out = run(["reproduce", "x0plus", "--fixtures", str(FIXTURES)])
        lines = out.strip().splitlines()
        assert len(lines) == 18
        first = lines[0].split("\t")
        assert first[0] == "x0plus_163"
        assert first[-1] == "OK"
        assert code == 0

    @needs_fixtures
    def test_parallel_rows_identical(self):
        _, seq = run(["reproduce", "x0plus", "--fixtures", str(FIXTURES)])
        _, par = run(["reproduce", "x0plus", "--fixtures", str(FIXTURES), "--jobs", "4"])
        assert seq == par

    def test_missing_fixtures_skip(self, tmp_path):
        code, out = run(["reproduce", "xns_step5_ord8", "--fixtures", str(tmp_path)])
        assert code == 11
        assert all(line.endswith("SKIPPED") for line in out.strip().splitlines())

    @needs_fixtures
    def test_partial_fixtures(self, tmp_path):
        src = FIXTURES / "x0plus_163_l2_k1.dataset"
        (tmp_path / src.name).write_text(src.read_text())
        code, out = run(["reproduce", "x0plus", "--fixtures", str(tmp_path)])
        assert code == 11
        lines = out.strip().splitlines()
        assert lines[0].endswith("OK")
        assert sum(1 for l in lines if l.endswith("SKIPPED")) == 17

    def test_unknown_table(self):
        code, out = run(["reproduce", "nope"])
        assert code == 2


class TestDeterminism:
    def test_exclude_byte_identical(self):
        args = ["exclude", "--coeffs", "4,0,3,0,1", "--q", "2", "--prime-power", "3",
                "--nmax", "60"]
        assert run(args) == run(args)

    @needs_fixtures
    def test_reproduce_byte_identical(self):
        args = ["reproduce", "xns_step5_ord8", "--fixtures", str(FIXTURES)]
        assert run(args) == run(args)
