import csv
import io
import json
import math
import shutil
import subprocess

import pytest

from mtzeta import cli
from mtzeta import special_functions as sf


def run(*argv):
    buf = io.StringIO()
    code = cli.main(list(argv), out=buf)
    return code, buf.getvalue()


def value_of(text):
    return complex(json.loads(text)[0]["value"])


def test_eval_f_at_one():
    code, out = run("eval", "F", "--x", "1", "--format", "json")
    ref = -sf.EULER_GAMMA ** 2 / 2 - math.pi ** 2 / 12 - sf.STIELTJES[1]
    assert code == cli.EXIT_OK
    assert abs(value_of(out) - ref) <= 1e-10


def test_eval_theta_both():
    code, out = run("eval", "theta", "--z", "3", "--x", "2", "--method", "both", "--format", "json")
    rows = json.loads(out)
    assert code == cli.EXIT_OK
    assert [r["method"] for r in rows] == ["integral", "direct"]
    assert abs(complex(rows[0]["value"]) - complex(rows[1]["value"])) <= 1e-5


def test_eval_w_special():
    code, out = run("eval", "W", "--r", "4", "--c", "2", "--d", "2", "--z", "1", "--x", "1", "--format", "json")
    assert code == 0
    assert abs(value_of(out) - math.log(2) ** 2) <= 1e-12


def test_eval_character_labels():
    code, out = run("eval", "j_r", "--z", "1", "--x", "1", "--chi1", "[4,2]", "--chi2", "[4,2]", "--format", "json")
    assert code == 0
    _, t = run("eval", "T", "--x", "1", "--format", "json")
    assert abs(value_of(out) - 4 * value_of(t)) <= 1e-12


def test_eval_char_values():
    code, out = run("eval", "j_r", "--z", "1", "--x", "1", "--chi1", "f", "--chi2", "f",
                    "--char-values", f"f=-1,{math.pi!r},{math.e!r},0", "--format", "json")
    e, p = math.e, math.pi
    ref = -((p * 1j * (e + 1) + 2 * (e + 2 * p - 1) * math.log(2)) ** 2) / 32
    assert code == 0
    assert abs(value_of(out) - ref) <= 1e-9


def test_nonconvergence_exit():
    code, _ = run("eval", "scriptF", "--z", "2.5", "--x", "2", "--u", "1", "--v", "1", "--method", "series")
    assert code == cli.EXIT_NONCONV


@pytest.mark.parametrize("argv", [
    ("eval", "nosuch", "--x", "1"),
    ("eval", "F"),
    ("eval", "F", "--x", "abc"),
    ("eval", "theta", "--z", "3", "--y", "2"),
    ("eval", "F", "--x", "1", "--method", "bogus"),
    ("eval", "theta", "--z", "0.5", "--x", "1"),
    ("verify", "no_such_identity"),
    ("table", "table3"),
    ("crandall-sweep", "--r", "4", "--c", "1", "--d", "3", "--z", "1", "--x", "1", "--deltas", "5"),
    ("eval", "F", "--x", "1", "--tol", "-1"),
    ("frobnicate",),
])
def test_usage_errors(argv):
    code, _ = run(*argv)
    assert code == cli.EXIT_USAGE


def test_verify_pass():
    code, out = run("verify", "jt_fe")
    assert code == cli.EXIT_OK
    assert "jt_fe" in out and "true" in out


def test_verify_fail_exit():
    # a tolerance far below double precision roundoff cannot be met
    code, _ = run("verify", "fe2_zagier", "--tol", "1e-30")
    assert code == cli.EXIT_FAIL


def test_verify_json_schema():
    code, out = run("verify", "jt_fe", "vardi_quadrature", "--format", "json")
    rows = json.loads(out)
    assert code == 0
    assert {r["id"] for r in rows} == {"jt_fe", "vardi_quadrature"}
    for r in rows:
        assert set(r) == {"id", "params", "lhs", "rhs", "residual", "pass"}
        assert all(isinstance(r[k], str) for k in ("lhs", "rhs", "residual"))


def test_verify_csv():
    code, out = run("verify", "jt_fe", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["id", "params", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual", "pass"]
    assert all(r[7] == "true" for r in rows[1:])


def test_verify_byte_identical():
    a = run("verify", "jt_fe", "theta_symmetry", "--format", "json", "--seed", "5")
    b = run("verify", "jt_fe", "theta_symmetry", "--format", "json", "--seed", "5", "--workers", "2")
    assert a == b


def test_table1():
    code, out = run("table", "table1", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 10
    assert all(r["ok"] for r in rows)


def test_table2():
    code, out = run("table", "table2", "--format", "json")
    rows = {r["label"]: r for r in json.loads(out)}
    assert code == 0 and len(rows) == 10
    assert abs(complex(rows["[12,3]"]["C(x=1)"]) - math.pi ** 2) <= 1e-8
    s5 = math.sqrt(5)
    assert abs(complex(rows["[5,3]"]["C(x=2)"]) + math.log(2 / (3 - s5)) ** 2) <= 1e-8
    assert abs(complex(rows["[3,2]"]["C(x=1)"]) - math.pi ** 2 / 9) <= 1e-8


@pytest.mark.parametrize("z", ["1", "0.5"])
def test_sweep(z):
    code, out = run("crandall-sweep", "--r", "4", "--c", "1", "--d", "3", "--z", z, "--x", "1")
    assert code == 0
    spread = float(out.strip().splitlines()[-1].split()[-1])
    assert spread < 1e-9


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nformat = csv\nseed = 4\ntol=1e-30\n")
    code, out = run("verify", "jt_fe", "--config", str(cfg))
    assert code == cli.EXIT_FAIL and out.startswith("id,params")
    code, out = run("verify", "jt_fe", "--config", str(cfg), "--tol", "1e-9", "--format", "json")
    assert code == cli.EXIT_OK and json.loads(out)


@pytest.mark.parametrize("text", ["format\n", "colour = blue\n", "seed = many\n"])
def test_bad_config(tmp_path, text):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(text)
    assert run("verify", "jt_fe", "--config", str(cfg))[0] == cli.EXIT_USAGE


def test_missing_config():
    assert run("verify", "jt_fe", "--config", "/nonexistent/x.cfg")[0] == cli.EXIT_USAGE


def test_repeatable_output():
    argv = ("eval", "phi", "--z", "2.5", "--x", "1.5", "--method", "both", "--format", "csv")
    assert run(*argv) == run(*argv)


def test_list():
    code, out = run("list")
    assert code == 0
    assert "theta" in out and "identity fe2_zagier" in out


@pytest.mark.skipif(shutil.which("mtzeta") is None, reason="console script not installed")
def test_console_script():
    p = subprocess.run(["mtzeta", "eval", "F", "--x", "1"], capture_output=True, text=True)
    assert p.returncode == 0
    assert "-0.9162401498" in p.stdout
