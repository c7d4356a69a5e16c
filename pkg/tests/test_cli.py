import json
import math
import shutil
import subprocess
import sys

import numpy as np
import pytest

from vclab import cli
from vclab import graphs as gr
from vclab.graphio import write_graph
from vclab.certificate import RunConfig


def run(argv, capsys):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(argv, capsys):
    code, out, err = run(argv, capsys)
    return code, json.loads(out)


# ---- single commands -------------------------------------------------------------


def test_chi_petersen(graph_dir, capsys):
    code, cert = run_json(["chi", graph_dir / "petersen.json"], capsys)
    assert code == 0 and cert["status"] == "OK"
    r = cert["results"]
    assert r["t"] == pytest.approx(2.5, abs=1e-8)
    assert r["rank"] == 4 and r["strictly_complementary"] is True
    assert len(r["skeleton_edges"]) == 15


def test_chi_dimacs(graph_dir, capsys):
    code, cert = run_json(["chi", graph_dir / "k4.col"], capsys)
    assert code == 0
    assert cert["results"]["t"] == pytest.approx(4.0, abs=1e-8)
    assert cert["inputs"][0]["n"] == 4 and cert["inputs"][0]["m"] == 6


def test_chi_edgeless(graph_dir, capsys):
    code, cert = run_json(["chi", graph_dir / "empty3.json"], capsys)
    assert code == 0
    assert cert["results"]["t"] == 1.0 and cert["results"]["rank"] == 0


def test_chi_strict(graph_dir, capsys):
    code, cert = run_json(["chi", graph_dir / "c5.json", "--strict"], capsys)
    assert cert["results"]["t_strict"] == pytest.approx(math.sqrt(5), abs=1e-8)


def test_uvc_k5(graph_dir, capsys):
    code, cert = run_json(["uvc", graph_dir / "k5.json"], capsys)
    assert code == 0 and cert["results"]["verdict"] == "unique"


def test_uvc_pendant_embeds_certificate(graph_dir, capsys):
    code, cert = run_json(["uvc", graph_dir / "k3-pendant.json"], capsys)
    r = cert["results"]
    assert r["verdict"] == "not_unique"
    assert "R" in json.dumps(r["certificate"])


def test_skeleton_pendant(graph_dir, capsys):
    code, cert = run_json(["skeleton", graph_dir / "k3-pendant.json"], capsys)
    assert cert["results"]["edges"] == [[0, 1], [0, 2], [1, 2]]
    assert cert["results"]["isolated"] == [3]


def test_neighborly_pendant(graph_dir, capsys):
    code, cert = run_json(["neighborly", graph_dir / "k3-pendant.json"], capsys)
    assert cert["results"]["non_neighborly"] == [3]
    v3 = [v for v in cert["results"]["vertices"] if v["vertex"] == 3][0]
    assert v3["neighborly"] is False


def test_product_hedetniemi(graph_dir, capsys):
    code, cert = run_json(["product", graph_dir / "k3.json", graph_dir / "c5.json", "--verify-hedetniemi"], capsys)
    h = cert["results"]["hedetniemi"]
    assert h["result"] == "PASS"
    assert cert["results"]["chi"]["product"] == pytest.approx(math.sqrt(5), abs=1e-7)


def test_product_rank_and_corollary(graph_dir, capsys):
    code, cert = run_json(
        ["product", graph_dir / "k3.json", graph_dir / "k4.json", "--rank-accounting", "--corollary"], capsys
    )
    r = cert["results"]
    assert code == 0 and cert["status"] == "OK"
    assert r["verdict"] == "all_induced_by_G"
    assert r["corollary"]["status"] == "certified"
    assert r["rk"]["product"] == 2


def test_product_decompose(graph_dir, capsys):
    code, cert = run_json(
        ["product", graph_dir / "k3.json", graph_dir / "k3.json", "--decompose", graph_dir / "sum.json"], capsys
    )
    assert cert["results"]["decomposition"]["alpha"] == pytest.approx(0.3, abs=1e-6)


def test_product_pendant_reports_hypothesis(graph_dir, capsys):
    code, cert = run_json(
        ["product", graph_dir / "k3-pendant.json", graph_dir / "k4.json", "--rank-accounting", "--corollary"],
        capsys,
    )
    r = cert["results"]
    assert r["corollary"]["status"] == "hypothesis not met"
    assert r["necessary_conditions"]["non_neighborly_g"] == [3]
    assert r["verdict"] != "all_induced_by_G"
    assert code == 0


# ---- errors and output -------------------------------------------------------------


def test_parse_error_exits_nonzero(tmp_path, capsys):
    bad = tmp_path / "bad.col"
    bad.write_text("p edge 2 1\ne 1 5\n")
    code, out, err = run(["chi", bad], capsys)
    assert code == 2
    assert "vc-lab:" in err
    assert json.loads(out)["status"] == "FAILED"


def test_missing_file(tmp_path, capsys):
    code, out, err = run(["chi", tmp_path / "none.json"], capsys)
    assert code == 2


def test_solver_failure_is_failed_certificate(tmp_path, capsys):
    G = gr.random_graph(12, 0.5, np.random.default_rng(3))
    path = tmp_path / "g.json"
    write_graph(G, path)
    code, cert = run_json(["chi", path, "--max-iters", "10"], capsys)
    assert code == 1 and cert["status"] == "FAILED"
    assert cert["errors"]


def test_invalid_config_flag(graph_dir, capsys):
    code, out, err = run(["chi", graph_dir / "k3.json", "--solve-tol", "1e-3"], capsys)
    assert code == 2 and "invalid configuration" in err


def test_config_from_environment(graph_dir, tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"rank_tol": 1e-5}))
    monkeypatch.setenv("VC_LAB_CONFIG", str(cfg))
    code, cert = run_json(["chi", graph_dir / "k3.json"], capsys)
    assert cert["config"]["rank_tol"] == 1e-5


def test_text_output(graph_dir, capsys):
    code, out, err = run(["chi", graph_dir / "petersen.json", "--output", "text"], capsys)
    assert out.startswith("chi: OK")
    assert "t" in out


def test_out_file(graph_dir, tmp_path, capsys):
    dest = tmp_path / "cert.json"
    code, out, err = run(["chi", graph_dir / "k3.json", "--out", dest], capsys)
    assert out == ""
    assert json.loads(dest.read_text())["status"] == "OK"


def test_run_command_unknown():
    cert = cli.run_command("color", ["x"], {}, RunConfig())
    assert cert.failed


def test_read_coloring_errors(tmp_path):
    p = tmp_path / "c.json"
    p.write_text('{"t": 3}')
    with pytest.raises(cli.InputError):
        cli.read_coloring(p)


def test_repeat_runs_are_byte_identical(graph_dir, capsys):
    argv = ["product", graph_dir / "k3.json", graph_dir / "k4.json", "--rank-accounting", "--corollary"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second


# ---- batch --------------------------------------------------------------------------


def test_empty_manifest(tmp_path, capsys):
    m = tmp_path / "m.json"
    m.write_text('{"entries": []}')
    code, cert = run_json(["batch", m], capsys)
    assert code == 0 and cert["status"] == "OK"
    assert cert["results"]["total"] == 0


def test_manifest_with_bad_path(graph_dir, tmp_path, capsys):
    shutil.copy(graph_dir / "k3.json", tmp_path / "k3.json")
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"entries": [
        {"command": "chi", "graphs": ["k3.json"]},
        {"command": "chi", "graphs": ["missing.json"]},
        {"command": "uvc", "graphs": ["k3.json"]},
    ]}))
    code, cert = run_json(["batch", m], capsys)
    assert code != 0 and cert["status"] == "FAILED"
    statuses = [e["status"] for e in cert["results"]["entries"]]
    assert statuses == ["OK", "FAILED", "OK"]
    assert cert["results"]["counts"] == {"OK": 2, "INCONCLUSIVE": 0, "FAILED": 1}


def test_malformed_manifest(tmp_path, capsys):
    m = tmp_path / "m.json"
    m.write_text("[]")
    code, out, err = run(["batch", m], capsys)
    assert code == 2


def test_parallel_batch_matches_sequential(graph_dir, tmp_path):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"entries": [
        {"command": "chi", "graphs": [str(graph_dir / "c5.json")]},
        {"command": "skeleton", "graphs": [str(graph_dir / "k3-pendant.json")]},
        {"command": "product", "graphs": [str(graph_dir / "k2.json"), str(graph_dir / "k3.json")],
         "options": {"rank_accounting": True}},
    ]}))
    seq = cli.run_manifest(m, RunConfig(), parallel=False).to_dict()
    par = cli.run_manifest(m, RunConfig(), parallel=True).to_dict()
    assert seq["results"] == par["results"]


def test_console_script(graph_dir):
    exe = shutil.which("vc-lab")
    cmd = [exe] if exe else [sys.executable, "-m", "vclab.cli"]
    proc = subprocess.run(cmd + ["chi", str(graph_dir / "k3.json")], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["t"] == pytest.approx(3.0, abs=1e-8)
