from __future__ import annotations

import json
import os
import re
import subprocess
import sys

import pytest

from jointseries import __version__
from jointseries.cli import RunConfig, UsageError, cache_path, main, table_pairs
from jointseries.ring import RatFunc, ZPoly
from published_tables import parse_poly


def run(*args, env=None):
    return subprocess.run(
        [sys.executable, "-m", "jointseries", *args],
        capture_output=True,
        text=True,
        env={**os.environ, **(env or {})},
    )


def parse_text_presentation(line: str) -> RatFunc:
    num, den = line.split("/", 1)
    value = RatFunc(parse_poly(num.strip("()")))
    for k, m in re.findall(r"\(1 - z(?:\^(\d+))?\)(?:\^(\d+))?", den):
        factor = ZPoly.const(1) - ZPoly.monomial(int(k or 1))
        value = value / RatFunc(factor ** int(m or 1))
    return value


def test_compute_text_value(capsys):
    assert main(["compute", "--d1", "1", "--d2", "3", "--kind", "invariants", "--terms", "6"]) == 0
    out = capsys.readouterr().out.splitlines()
    printed = RatFunc(parse_poly("z^10 + z^6 + z^4 + 1"), ZPoly([1, 0, 0, 0, -1]) ** 2 * ZPoly([1] + [0] * 7 + [-1]))
    assert parse_text_presentation(out[0]) == printed
    assert out[1] == "1 0 0 0 3 0 1"


def test_compute_json_both(capsys):
    assert main(["compute", "--d1", "2", "--d2", "2", "--kind", "both", "--format", "json"]) == 0
    objs = json.loads(capsys.readouterr().out)
    assert [o["kind"] for o in objs] == ["invariants", "covariants"]
    assert objs[0]["denominator_factors"] == [{"k": 2, "mult": 3}]


def test_compute_rejects_zero_degree():
    proc = run("compute", "--d1", "0", "--d2", "3")
    assert proc.returncode == 1
    assert "degrees must be ≥ 1" in proc.stderr


def test_usage_errors_exit_one():
    assert run("compute", "--d1", "1").returncode == 1
    assert run("frobnicate").returncode == 1
    assert run("compute", "--d1", "1", "--d2", "2", "--format", "pdf").returncode == 1
    with pytest.raises(UsageError):
        RunConfig("compute", 1, 2, jobs=0).validate()
    with pytest.raises(UsageError):
        RunConfig("compute", 1, 2, terms=-1).validate()


def test_unwritable_output_exits_three(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    proc = run("compute", "--d1", "1", "--d2", "1", "--out", str(blocker / "sub" / "out.txt"))
    assert proc.returncode == 3


def test_compute_writes_file(tmp_path):
    out = tmp_path / "pi.txt"
    assert main(["compute", "--d1", "1", "--d2", "1", "--kind", "invariants", "--out", str(out)]) == 0
    assert out.read_text() == "1/(1 - z^2)\n"


def test_verify_pass(capsys):
    assert main(["verify", "--d1", "3", "--d2", "5", "--terms", "25"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and "PASS invariants (3,5)" in out


def test_verify_covariants_55(capsys):
    assert main(["verify", "--d1", "5", "--d2", "5", "--terms", "30", "--kind", "covariants"]) == 0
    assert "covariants z^29:" in capsys.readouterr().out


def test_verify_detects_corrupted_cache(tmp_path, capsys):
    cache = tmp_path / "cache"
    assert main(["compute", "--d1", "2", "--d2", "3", "--kind", "invariants", "--cache-dir", str(cache)]) == 0
    path = cache_path(cache, 2, 3, "invariants")
    obj = json.loads(path.read_text())
    obj["numerator"][0] += 1
    path.write_text(json.dumps(obj))
    capsys.readouterr()
    assert main(["verify", "--d1", "2", "--d2", "3", "--kind", "invariants", "--cache-dir", str(cache)]) == 2
    assert "first mismatch at z^0" in capsys.readouterr().out


def test_cache_dir_from_environment(tmp_path):
    cache = tmp_path / "envcache"
    proc = run("compute", "--d1", "1", "--d2", "2", "--kind", "covariants", env={"POINCARE_CACHE_DIR": str(cache)})
    assert proc.returncode == 0
    assert (cache / f"v{__version__}" / "covariants_1_2.json").exists()


def test_table_pair_count():
    assert len(table_pairs(2, 2)) == 3
    assert len(table_pairs(5, 5)) == 15
    assert len(table_pairs(20, 20)) == 210


def test_table_small_and_warm_cache(tmp_path, caplog):
    out, cache = tmp_path / "out", tmp_path / "cache"
    args = ["table", "--max", "2", "--out", str(out), "--cache-dir", str(cache)]
    assert main(args) == 0
    files = sorted(p.name for p in out.iterdir())
    assert len(files) == 6
    first = {p.name: p.read_bytes() for p in out.iterdir()}
    assert main(args) == 0
    assert {p.name: p.read_bytes() for p in out.iterdir()} == first


def test_table_recomputes_bad_cache(tmp_path, caplog):
    out, cache = tmp_path / "out", tmp_path / "cache"
    args = ["table", "--max", "2", "--kind", "covariants", "--out", str(out), "--cache-dir", str(cache)]
    assert main(args) == 0
    good = (out / "covariants_1_2.json").read_bytes()
    path = cache_path(cache, 1, 2, "covariants")
    obj = json.loads(path.read_text())
    obj["numerator"] = [0] + obj["numerator"]
    path.write_text(json.dumps(obj))
    assert main(args) == 0
    assert "failed oracle check" in caplog.text
    assert (out / "covariants_1_2.json").read_bytes() == good
    assert json.loads(path.read_text())["numerator"][0] == 1


def test_table_parallel_matches_serial(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["table", "--max", "3", "--out", str(a)]) == 0
    assert main(["table", "--max", "3", "--out", str(b), "--jobs", "2"]) == 0
    assert {p.name: p.read_bytes() for p in a.iterdir()} == {p.name: p.read_bytes() for p in b.iterdir()}


def test_table_needs_out():
    assert main(["table", "--max", "2"]) == 1
