import re
import subprocess
import sys

import pytest

from pfsc.cli import CSV_HEADER, main, parse_n_list, read_sweep_csv
from pfsc.errors import UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def fields(line):
    return dict(kv.split("=", 1) for kv in line.split())


# {{{ solve

def test_solve_direct(capsys):
    code, out, _ = run(capsys, "solve", "--example", "1", "--N", "8", "--scheme", "fsc", "--solver", "direct")
    assert code == 0
    f = fields(out.strip())
    assert f["N"] == "8" and f["scheme"] == "fsc" and f["status"] == "converged"
    assert 0 < float(f["max_error"]) < 1e-1
    assert float(f["cond"]) > 1


def test_solve_pfsc_bicgstab(capsys):
    code, out, _ = run(capsys, "solve", "--example", "1", "--N", "64", "--scheme", "pfsc",
                       "--solver", "bicgstab", "--tol", "1e-9")
    assert code == 0
    f = fields(out.strip())
    assert f["status"] == "converged"
    assert float(f["iterations"]) <= 15


def test_solve_fsc_nonconvergence(capsys):
    code, out, _ = run(capsys, "solve", "--example", "2", "--N", "16", "--scheme", "fsc",
                       "--solver", "bicgstab", "--tol", "1e-11")
    assert code == 2
    assert fields(out.strip())["status"] == "max-iterations"


def test_solve_both_schemes_custom_problem(capsys):
    code, out, _ = run(capsys, "solve", "--problem", "bvp", "--nu", "1.5", "--N", "12",
                       "--scheme", "both", "--no-cond")
    assert code == 0
    lines = out.strip().splitlines()
    assert [fields(x)["scheme"] for x in lines] == ["fsc", "pfsc"]
    assert all(fields(x)["cond"] == "-" for x in lines)


@pytest.mark.parametrize("argv", [
    ["solve", "--example", "1"],
    ["solve", "--example", "1", "--nu", "0.5", "--N", "8"],
    ["solve", "--problem", "ivp", "--N", "8"],
    ["solve", "--problem", "ivp", "--nu", "1.5", "--N", "8"],
    ["solve", "--example", "3", "--N", "8"],
    ["solve", "--example", "2", "--N", "2"],
    ["solve", "--example", "1", "--N", "8", "--out", "/nonexistent/dir/out.txt"],
    ["sweep", "--example", "1", "--N-list", "16,8"],
    ["frobnicate"],
    [],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert "error" in err

# }}}


# {{{ sweep

def test_parse_n_list():
    assert parse_n_list("8,16") == [8, 16]
    assert parse_n_list("8:1024:x2") == [8, 16, 32, 64, 128, 256, 512, 1024]
    assert parse_n_list("8:64:8") == list(range(8, 65, 8))
    for bad in ("", "8:16", "a,b", "8:64:x1", "0,4"):
        with pytest.raises(UsageError):
            parse_n_list(bad)


def test_sweep_csv(capsys, tmp_path):
    out = tmp_path / "ex2.csv"
    code, _, _ = run(capsys, "sweep", "--example", "2", "--N-list", "8,16", "--out", str(out))
    # FSC does not converge at N = 16
    assert code == 2

    raw = out.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode("utf-8").splitlines()
    assert lines[0] == "N,cond_fsc,cond_pfsc,iters_fsc,iters_pfsc,err_fsc,err_pfsc"
    row16 = dict(zip(CSV_HEADER, lines[2].split(",")))
    assert row16["N"] == "16" and row16["iters_fsc"] == "nc"
    assert re.fullmatch(r"-?\d\.\d{16}e[+-]\d\d", row16["cond_pfsc"])

    again = tmp_path / "again.csv"
    run(capsys, "sweep", "--example", "2", "--N-list", "8,16", "--out", str(again))
    assert again.read_bytes() == raw


def test_sweep_converged_to_stdout(capsys):
    code, out, _ = run(capsys, "sweep", "--example", "1", "--N-list", "8,16")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3 and "nc" not in out

# }}}


# {{{ config

def test_config_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nexample = 1\nN = 8\nscheme = fsc\n--solver=direct\n", encoding="utf-8")

    code, out, _ = run(capsys, "solve", "--config", str(cfg))
    assert code == 0
    f = fields(out.strip())
    assert (f["N"], f["scheme"], f["solver"]) == ("8", "fsc", "direct")

    code, out, _ = run(capsys, "solve", "--config", str(cfg), "--N", "12", "--scheme", "pfsc")
    assert code == 0
    f = fields(out.strip())
    assert (f["N"], f["scheme"]) == ("12", "pfsc")


@pytest.mark.parametrize("text", ["colour = red\n", "scheme = best\n", "N\n", "N = eight\n"])
def test_bad_config(capsys, tmp_path, text):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(text, encoding="utf-8")
    code, _, _ = run(capsys, "solve", "--example", "1", "--config", str(cfg))
    assert code == 1

# }}}


# {{{ plot

def test_plot_round_trip(capsys, tmp_path):
    data = tmp_path / "sweep.csv"
    run(capsys, "sweep", "--example", "1", "--N-list", "8,16", "--out", str(data))
    assert len(read_sweep_csv(str(data))) == 2

    code, script, _ = run(capsys, "plot", str(data))
    assert code == 0
    columns = set(re.findall(r'using "(\w+)":"(\w+)"', script))
    used = {c for pair in columns for c in pair}
    assert used == set(CSV_HEADER)
    assert sum(line.startswith("plot ") for line in script.splitlines()) == 3
    assert str(data) in script


def test_plot_to_file(capsys, tmp_path):
    data = tmp_path / "sweep.csv"
    data.write_text(",".join(CSV_HEADER) + "\n8,1,1,nc,2,1e-3,1e-3\n", encoding="utf-8")
    script = tmp_path / "sweep.gp"
    code, _, _ = run(capsys, "plot", str(data), "--out", str(script), "--title", "demo")
    assert code == 0
    assert 'title "demo"' in script.read_text(encoding="utf-8")


@pytest.mark.parametrize("text", [
    "",
    ",".join(CSV_HEADER) + "\n",
    "N,cond\n8,1\n",
    ",".join(CSV_HEADER) + "\n8,1,1,2,2,oops,1\n",
    ",".join(CSV_HEADER) + "\n8,1,1,2\n",
])
def test_plot_rejects_malformed(capsys, tmp_path, text):
    data = tmp_path / "bad.csv"
    data.write_text(text, encoding="utf-8")
    code, _, err = run(capsys, "plot", str(data))
    assert code == 1 and "error" in err


def test_plot_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "plot", str(tmp_path / "absent.csv"))
    assert code == 1

# }}}


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "pfsc", "solve", "--example", "1", "--N", "4", "--solver", "direct"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("N=4 scheme=pfsc")
