import io
import json
import shutil
import subprocess
import sys


from qhdkit import cli, pipelines, resgraph


def _run(*argv):
    buf = io.StringIO()
    code = cli.run(list(argv), buf)
    return code, buf.getvalue()


def _json(*argv):
    code, text = _run(*argv)
    return code, json.loads(text)


def test_hj():
    code, rep = _json("hj", "8", "3")
    assert code == 0
    assert rep["results"]["sequence"] == [3, 3]
    assert rep["command"] == "hj" and rep["argv"] == ["hj", "8", "3"]


def test_hj_value():
    code, rep = _json("hj", "3", "3", "--value")
    assert code == 0
    assert (rep["results"]["n"], rep["results"]["q"]) == (8, 3)


def test_verify_b23_p0():
    code, rep = _json("verify", "b23", "--p", "0")
    assert code == 0
    row = rep["results"]["b23"]["0"]
    assert row["order"] == 24 and row["ab"] == [2, 6] and row["matrix_iso"] is True


def test_verify_c23_p1():
    code, rep = _json("verify", "c23", "--p", "1")
    assert code == 0
    row = rep["results"]["c23"]["1"]
    assert row["h1"] == [12]
    assert all(row["certificates"].values())


def test_verify_all_desk_scale():
    code, rep = _json("verify", "all", "--max-p", "3", "--max-m", "5")
    assert code == 0 and rep["ok"]
    assert set(rep["results"]) == {"b23", "c23", "c33", "matgroup"}


def test_reports_are_byte_identical():
    assert _run("verify", "b23", "--p", "1") == _run("verify", "b23", "--p", "1")
    assert _run("matgroup", "--m", "3")[1] == _run("matgroup", "--m", "3")[1]


def test_timing_is_opt_in():
    _, rep = _json("hj", "8", "3")
    assert "timing" not in rep
    _, rep = _json("--timing", "hj", "8", "3")
    assert rep["timing"] >= 0


def test_pretty_before_or_after_subcommand():
    a = _run("--pretty", "hj", "8", "3")
    b = _run("hj", "8", "3", "--pretty")
    assert a[0] == b[0] == 0
    assert "sequence: [3, 3]" in a[1]
    assert a[1].replace('"--pretty", ', "") == b[1].replace(', "--pretty"', "")


def test_usage_errors_exit_1(capsys):
    assert _run("nonsense")[0] == 1
    assert _run("hj", "8", "4")[0] == 1
    assert _run("matgroup", "--m", "two")[0] == 1
    assert _run("poly", "x +")[0] == 1
    assert _run("verify", "b23", "--bogus")[0] == 1
    assert "valid flags" in capsys.readouterr().err


def test_failed_check_exits_2(tmp_path):
    data = tmp_path / "data"
    shutil.copytree(resgraph.DATA_DIR, data)
    path = data / "c23_certificates.json"
    doc = json.loads(path.read_text())
    doc["reduced"]["certificates"]["q_commutes_cqc"]["factors"][0][2] = "c*q"
    path.write_text(json.dumps(doc))
    code, rep = _json("verify", "c23", "--p", "0", "--data", str(data))
    assert code == 2 and rep["ok"] is False
    assert rep["results"]["c23"]["0"]["certificates"]["reduced/q_commutes_cqc"] is False


def test_missing_data_dir_exits_1(tmp_path):
    assert _run("verify", "c33", "--p", "0", "--data", str(tmp_path / "absent"))[0] == 1


def test_environment_override(tmp_path, monkeypatch):
    data = tmp_path / "data"
    shutil.copytree(resgraph.DATA_DIR, data)
    (data / "blowup_c33.json").unlink()
    monkeypatch.setenv(pipelines.DATA_ENV, str(data))
    assert pipelines.data_dir() == data
    assert _run("verify", "c33", "--p", "0")[0] == 1
    monkeypatch.delenv(pipelines.DATA_ENV)
    assert _run("verify", "c33", "--p", "0")[0] == 0


def test_group_command():
    code, rep = _json("group", "--b23", "2")
    assert code == 0
    assert rep["results"]["order"] == 80


def test_group_unknown_order():
    code, rep = _json("group", "--gens", "x,y", "--rel", "[x,y]", "--max-cosets", "300")
    assert code == 0
    assert rep["results"]["order"] is None
    assert rep["results"]["ab"] == [0, 0]


def test_matgroup_gprime_witness():
    code, rep = _json("matgroup", "--m", "3", "--variant", "G'")
    assert code == 0
    assert rep["results"]["fpf"] is False
    assert rep["results"]["witness_order"] == 2


def test_graph_and_h1():
    _, rep = _json("graph", "b23", "--p", "1", "--discriminant")
    assert rep["results"]["discriminant_order"] == 256
    _, rep = _json("graph", "b23seifert", "--m", "3", "--solve", "256")
    assert rep["results"]["d"] == 2
    _, rep = _json("h1", "--family", "c33", "--p", "2")
    assert rep["results"]["h1"] == [12]


def test_poly_command():
    code, rep = _json("poly", "z^2 - 2*(x^3+3*x^2*y-3*x*y^2-y^3)*z + (x+y)^6",
                      "--weights", "1,1,3", "--at", "3,-1,-8")
    assert code == 0
    assert rep["results"]["weighted_degree"] == 6
    assert rep["results"]["value"] == "0"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qhdkit", "hj", "8", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["sequence"] == [3, 3]
