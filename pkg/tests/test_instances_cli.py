"""Instance I/O, the generator, the catalog, report emission, and the CLI."""

import json

import numpy as np
import pytest

from subregkit import analyze, AnalyzeConfig
from subregkit.catalog import UnknownEntryError, ENTRIES, run_catalog
from subregkit.cli import main
from subregkit.instances import (
    InstanceFormatError,
    emit_report,
    generate,
    load_instance,
    report_to_dict,
    system_from_dict,
    write_json_atomic,
)
from subregkit.polyhedra import contains
from subregkit.system import InvalidInstanceError, solution_set

E1_DICT = {
    "name": "halfline", "nx": 1, "ny": 1,
    "graph_ineq": [[1, -1]], "graph_rhs": [0],
    "xbar": [0], "ybar": [0], "norm": "linf",
}


@pytest.fixture
def e1_path(tmp_path):
    path = tmp_path / "e1.json"
    path.write_text(json.dumps(E1_DICT))
    return str(path)


def test_load_instance(e1_path):
    sysm = load_instance(e1_path)
    S = solution_set(sysm).S
    assert contains(S, [-1]) and not contains(S, [0.1])


def test_load_rejects_bad_reference(tmp_path):
    bad = dict(E1_DICT, xbar=[1])
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    with pytest.raises(InvalidInstanceError, match="row 0"):
        load_instance(str(path))


def test_load_rejects_malformed(tmp_path):
    path = tmp_path / "rows.json"
    path.write_text(json.dumps(dict(E1_DICT, graph_ineq=[[1, -1, 3]])))
    with pytest.raises(InstanceFormatError, match="graph_ineq"):
        load_instance(str(path))
    path2 = tmp_path / "notjson.json"
    path2.write_text("{nope")
    with pytest.raises(InstanceFormatError, match="line"):
        load_instance(str(path2))


def test_generator_soundness_and_determinism():
    a = generate(2, 1, 4, seed=7)
    b = generate(2, 1, 4, seed=7)
    assert a == b
    sysm = system_from_dict(a)
    assert contains(solution_set(sysm).S, sysm.xbar)
    with pytest.raises(ValueError):
        generate(0, 1, 1, seed=0)


def test_catalog_probes_and_estimates():
    for entry in ENTRIES.values():
        assert entry.check_probes()
    rep = run_catalog("parabola", [1e-2, 1e-3], n_samples=2000, seed=0)
    assert rep["subreg_estimates"][0] >= 0.5 / 1e-2
    assert rep["subreg_estimates"][1] >= 0.5 / 1e-3
    rep2 = run_catalog("halfline", [0.5], n_samples=2000, seed=0)
    assert 0.95 <= rep2["subreg_estimates"][0] <= 1.05
    with pytest.raises(UnknownEntryError):
        run_catalog("nope", [0.1])


def test_report_roundtrip(e1_path, tmp_path):
    sysm = load_instance(e1_path)
    report, strong = analyze(sysm, AnalyzeConfig(n_samples=2000))
    d = report_to_dict(sysm.name, report, strong)
    out = tmp_path / "rep.json"
    emit_report([d], fmt="json", path=str(out))
    parsed = json.loads(out.read_text())
    assert parsed == [d]  # bit-for-bit on numeric fields
    text = emit_report([d], fmt="text")
    assert "chain_residual" in text and "eta" in text
    assert emit_report([], fmt="json") == "[]\n"


def test_text_format_renders_inf():
    d = {"name": "x", "seed": 0, "subreg_est": float("inf"), "eta": 1.0,
         "tau": 1.0, "bcq_tau": 1.0, "chain_residual": 0.0,
         "delta_schedule": [0.5], "method_tags": {}, "degenerate": False,
         "strong": {"eta_strong": 0.0, "ssubreg_est": float("inf"),
                    "kernel_trivial": False, "singleton": False}}
    assert "inf" in emit_report([d], fmt="text")


def test_write_json_atomic(tmp_path):
    target = tmp_path / "out.json"
    write_json_atomic({"a": 1}, str(target))
    assert json.loads(target.read_text()) == {"a": 1}
    leftovers = [p for p in tmp_path.iterdir() if p.suffix == ".tmp"]
    assert not leftovers


# --- CLI -----------------------------------------------------------------


def test_cli_analyze_json(e1_path, capsys):
    code = main(["analyze", e1_path, "--samples", "2000"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload[0]["chain_residual"] <= 0.05
    assert payload[0]["seed"] == 0


def test_cli_analyze_out_file(e1_path, tmp_path, capsys):
    out = tmp_path / "rep.json"
    assert main(["analyze", e1_path, "--samples", "2000",
                 "--out", str(out)]) == 0
    assert json.loads(out.read_text())[0]["eta"] == pytest.approx(1.0, abs=1e-6)


def test_cli_verify_chain_exit_codes(e1_path):
    assert main(["verify-chain", e1_path, "--samples", "2000"]) == 0


def test_cli_generate_roundtrip(tmp_path):
    out = tmp_path / "gen.json"
    assert main(["generate", "--nx", "2", "--ny", "1", "--rows", "4",
                 "--seed", "7", "--out", str(out)]) == 0
    assert main(["verify-chain", str(out), "--samples", "2000"]) == 0


def test_cli_invalid_inputs(tmp_path, capsys):
    assert main(["analyze", str(tmp_path / "missing.json")]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(dict(E1_DICT, xbar=[1])))
    assert main(["analyze", str(bad)]) == 1
    assert main(["catalog", "nope"]) == 1


def test_cli_lemma21(tmp_path, capsys):
    path = tmp_path / "lem.json"
    path.write_text(json.dumps({"dim": 2, "omega_ineq": [[1, 1]],
                                "omega_rhs": [0], "x": [1, 0]}))
    assert main(["lemma21", str(path), "--gamma", "0.99"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["margin"] > 1e-9


def test_cli_catalog(capsys):
    assert main(["catalog", "parabola", "--delta", "0.01",
                 "--samples", "2000"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["subreg_estimates"][0] >= 50
