import json
import math
import re
import shutil
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from geodesic_gaps import gap_bounds as gb
from geodesic_gaps.cache import ENV_VAR, read_cache
from geodesic_gaps.cli import main, trace_arg
from geodesic_gaps.exact import ExactTrace

SVG = "{http://www.w3.org/2000/svg}"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def table(out):
    """(length, multiplicity, half_trace) rows of a family table."""
    rows = []
    for line in out.splitlines():
        m = re.match(r"\s+(\d+\.\d+)\s+(\d+)\s+(\S+)$", line)
        if m:
            rows.append((float(m.group(1)), int(m.group(2)), m.group(3)))
    return rows


@pytest.fixture
def cache_file(tmp_path, monkeypatch):
    monkeypatch.delenv(ENV_VAR, raising=False)
    return str(tmp_path / "cache.ndjson")


@pytest.fixture(scope="module")
def simple_cache(tmp_path_factory):
    """Cache through 33+23√2 with simplicity flags filled in."""
    path = str(tmp_path_factory.mktemp("cli") / "cache.ndjson")
    assert main(["enumerate", "--max-trace", "33+23√2", "--cache", path]) == 0
    assert main(["simple", "--cache", path, "--threads", "2"]) == 0
    return path


def test_trace_arg():
    assert trace_arg("21+15√2") == ExactTrace(21, 15)
    assert trace_arg("3") == ExactTrace(3, 0)
    assert trace_arg("2.5") == 2.5


def test_enumerate_systole_only(capsys, cache_file):
    code, out, err = run(capsys, "enumerate", "--surface", "bolza", "--max-trace", "1+1√2", "--cache", cache_file)
    assert code == 0
    assert "families 1" in out
    rows = table(out)
    assert len(rows) == 1 and rows[0][1:] == (12, "1+1√2")
    assert math.isclose(rows[0][0], 2 * math.acosh(1 + math.sqrt(2)), abs_tol=1e-9)


def test_enumerate_below_systole(capsys, cache_file):
    code, out, _ = run(capsys, "enumerate", "--max-trace", "2.0", "--cache", cache_file)
    assert code == 0
    assert "classes 0  families 0" in out
    assert table(out) == []


def test_warm_cache_identical_summary(capsys, cache_file):
    code1, out1, err1 = run(capsys, "enumerate", "--max-trace", "3+2√2", "--cache", cache_file, "--timing")
    before = open(cache_file, "rb").read()
    code2, out2, err2 = run(capsys, "enumerate", "--max-trace", "3+2√2", "--cache", cache_file, "--timing")
    assert code1 == code2 == 0
    assert out1 == out2
    assert "computed" in err1 and "cache hit" in err2
    assert open(cache_file, "rb").read() == before


def test_smaller_limit_served_from_cache(capsys, cache_file):
    run(capsys, "enumerate", "--max-trace", "9+7√2", "--cache", cache_file)
    code, out, err = run(capsys, "enumerate", "--max-trace", "1+1√2", "--cache", cache_file)
    assert code == 0 and "cache hit" in err
    assert table(out) == [(pytest.approx(3.057141839, abs=1e-9), 12, "1+1√2")]


def test_env_var_overrides_cache_flag(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(ENV_VAR, str(tmp_path / "env.ndjson"))
    code, _, _ = run(capsys, "enumerate", "--max-trace", "1+1√2", "--cache", str(tmp_path / "flag.ndjson"))
    assert code == 0
    assert (tmp_path / "env.ndjson").exists() and not (tmp_path / "flag.ndjson").exists()


def test_word_cap_exit_and_partial(capsys, cache_file):
    code, _, err = run(capsys, "enumerate", "--max-trace", "21+15√2", "--word-length-cap", "3", "--cache", cache_file)
    assert code == 3
    assert "truncated" in err
    header, classes = read_cache(cache_file)
    assert not header.complete
    assert json.loads(open(cache_file, encoding="utf-8").readline())["truncated"] is True
    assert len(classes) == header.count


def test_stretch_guard(capsys, cache_file):
    code, _, err = run(capsys, "enumerate", "--max-trace", "149+105√2", "--cache", cache_file)
    assert code == 2 and "--stretch" in err


def test_bad_trace_exit(capsys, cache_file):
    code, _, _ = run(capsys, "enumerate", "--max-trace", "0.5", "--cache", cache_file)
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["enumerate", "--max-trace", "oops", "--cache", cache_file])
    assert exc.value.code == 2
    capsys.readouterr()


def test_simple_table(capsys, simple_cache):
    code, out, _ = run(capsys, "simple", "--cache", simple_cache)
    assert code == 0
    rows = table(out)
    lengths = [r[0] for r in rows]
    assert lengths == sorted(lengths)
    pairs = {(m, t) for _, m, t in rows}
    assert (48, "21+15√2") in pairs
    assert (24, "33+23√2") in pairs
    assert rows[0][1:] == (12, "1+1√2")


def test_simple_display_limit(capsys, simple_cache):
    code, out, _ = run(capsys, "simple", "--cache", simple_cache, "--max-trace", "21+15√2")
    assert code == 0
    rows = table(out)
    assert rows[-1][1:] == (48, "21+15√2")


def test_simple_needs_cache(capsys, cache_file):
    code, _, err = run(capsys, "simple", "--cache", cache_file)
    assert code == 2 and "enumerate" in err


def test_bounds_thin(capsys):
    code, out, err = run(capsys, "bounds", "thin", "--g", "2", "--lgamma", "1e-3")
    assert code == 0
    doc = json.loads(out)
    assert doc["gap_exists"] is True
    assert math.isclose(doc["gap_radius"]["log_value"], math.log(gb.a_g(2)), rel_tol=1e-12)
    assert "gap_exists true" in err


def test_bounds_lq1(capsys):
    code, out, _ = run(capsys, "bounds", "lq1", "--g", "2", "--sys", "0.7", "--rho", "0.3")
    assert code == 0
    doc = json.loads(out)
    for key in ("M", "G", "m"):
        assert key in doc["constants"]
    assert all(t["ok"] for t in doc["trail"])
    rep = gb.theorem_lq1(2, 0.7, 0.3)
    assert doc["gap_radius"]["log_value"] == rep.gap_radius.log_value


def test_bounds_lq3(capsys):
    code, out, _ = run(capsys, "bounds", "lq3", "--g", "2", "--n", "1", "--eps", "0.3", "--rho", "0.1")
    assert code == 0
    doc = json.loads(out)
    assert doc["constants"]["kappa"]["log_value"] == pytest.approx(math.log(4))
    assert [k for k in doc["constants"] if k.startswith("R_")] == [f"R_{k}" for k in range(5)]


def test_bounds_lq2_and_out_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "bounds", "lq2", "--g", "2", "--rho", "0.1", "--small", "0.5", "0.1", "--out", str(path))
    assert code == 0
    doc = json.loads(path.read_text(encoding="utf-8"))
    assert doc["kind"] == "lq2" and "gap_radius" in out


def test_bounds_hypothesis_violation(capsys):
    code, _, err = run(capsys, "bounds", "lq1", "--g", "2", "--sys", "0.7", "--rho", "0.5")
    assert code == 2 and "rho" in err
    code, _, err = run(capsys, "bounds", "thin", "--g", "2", "--lgamma", "0.5")
    assert code == 2


def test_render_octagon_only(capsys, tmp_path, cache_file):
    out = tmp_path / "o.svg"
    code, stdout, _ = run(capsys, "render", "--families", "--out", str(out), "--cache", cache_file)
    assert code == 0
    root = ET.parse(out).getroot()
    assert len(root.findall(f"{SVG}g[@id='domain']/{SVG}path")) == 8
    assert json.loads((tmp_path / "o.legend.json").read_text(encoding="utf-8"))["styles"] == {}


def test_render_systole_family(capsys, tmp_path, simple_cache):
    out = tmp_path / "s.svg"
    code, _, _ = run(capsys, "render", "--families", "1+1√2", "--out", str(out), "--cache", simple_cache)
    assert code == 0
    root = ET.parse(out).getroot()
    assert len(root.findall(f".//{SVG}g[@class='geodesic']")) == 12
    legend = json.loads((tmp_path / "s.legend.json").read_text(encoding="utf-8"))
    assert legend["styles"]["0"]["half_trace"] == "1+1√2"
    assert legend["styles"]["0"]["multiplicity"] == 12


def test_render_separate_files(capsys, tmp_path, simple_cache):
    out = tmp_path / "f.svg"
    code, stdout, _ = run(
        capsys, "render", "--families", "1+1√2", "21+15√2", "--separate", "--out", str(out), "--cache", simple_cache
    )
    assert code == 0
    files = sorted(p.name for p in tmp_path.glob("f-family*.svg"))
    assert len(files) == 2
    for name in files:
        assert name in stdout


def test_render_gap_disk(capsys, tmp_path, cache_file):
    out = tmp_path / "d.svg"
    code, _, _ = run(capsys, "render", "--families", "--gap-disk", "0.1", "0.2", "0.3", "--out", str(out), "--cache", cache_file)
    assert code == 0
    assert len(ET.parse(out).getroot().findall(f"{SVG}g[@id='overlays']/{SVG}circle")) == 1
    code, _, _ = run(capsys, "render", "--families", "--gap-disk", "2", "0", "0.3", "--out", str(out), "--cache", cache_file)
    assert code == 2


def test_render_needs_simple_flags(capsys, tmp_path, cache_file):
    assert main(["enumerate", "--max-trace", "3+2√2", "--cache", cache_file]) == 0
    capsys.readouterr()
    code, _, err = run(capsys, "render", "--families", "1+1√2", "--out", str(tmp_path / "x.svg"), "--cache", cache_file)
    assert code == 2 and "simple" in err


def test_render_unknown_family(capsys, tmp_path, simple_cache):
    code, _, err = run(capsys, "render", "--families", "2+1√2", "--out", str(tmp_path / "x.svg"), "--cache", simple_cache)
    assert code == 2 and "no simple family" in err


def test_verify_passes_and_fault_flips(capsys):
    code, out, _ = run(capsys, "verify", "--json")
    assert code == 0
    lines = [json.loads(ln) for ln in out.splitlines()]
    assert lines[-1]["summary"]["failed"] == 0
    assert all(d["ok"] for d in lines[:-1])
    code, out, _ = run(capsys, "verify", "--fault", "trig")
    assert code == 4
    assert "FAIL  trig." in out


def test_net(capsys, tmp_path):
    path = tmp_path / "net.json"
    code, _, err = run(capsys, "net", "--out", str(path))
    assert code == 0
    doc = json.loads(path.read_text(encoding="utf-8"))
    assert 0 < len(doc["points"]) <= 143
    assert doc["covering_radius"] <= doc["eps"]


def test_threads_must_be_positive(capsys, cache_file):
    code, _, _ = run(capsys, "simple", "--threads", "0", "--cache", cache_file)
    assert code == 2


def test_console_script(tmp_path):
    exe = shutil.which("geodesic-gaps")
    cmd = [exe] if exe else [sys.executable, "-m", "geodesic_gaps"]
    res = subprocess.run(
        cmd + ["bounds", "thin", "--g", "3", "--lgamma", "1e-4"], capture_output=True, text=True, check=False
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["gap_exists"] is True
