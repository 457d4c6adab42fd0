import json
import subprocess
import sys

import pytest

from superder.cli import run
from superder.io import algebra_to_json
from superder.replay import SCHRODINGER_FACTS, facts_to_json, without_probe
from superder.superalg import catalog


def report(argv):
    code, text = run(argv)
    data = json.loads(text)
    assert data["exit_code"] == code
    return code, data["result"]


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj) if not isinstance(obj, str) else obj, encoding="utf-8")
    return str(path)


def schrodinger_json(changes):
    data = algebra_to_json(catalog("super-schrodinger"))
    for br in data["brackets"]:
        key = (br["left"], br["right"])
        if key in changes:
            br["result"] = changes[key]
    return data


def test_validate_ok():
    code, res = report(["validate", "catalog:super-schrodinger"])
    assert code == 0 and res["valid"] and res["violation_count"] == 0


def test_validate_reports_jacobi_failure(tmp_path):
    path = write(tmp_path, "bad.json", schrodinger_json({("E", "F"): [["-1", "h"]]}))
    code, res = report(["validate", path])
    assert code == 1
    assert res["violation_count"] == 36
    assert res["violations"][0]["kind"] == "jacobi"


def test_inconsistent_skew_file(tmp_path):
    alg = {
        "name": "skewed",
        "basis": [{"name": "h", "parity": 0}, {"name": "e", "parity": 0}],
        "brackets": [
            {"left": "h", "right": "e", "result": [["2", "e"]]},
            {"left": "e", "right": "h", "result": [["2", "e"]]},
        ],
    }
    path = write(tmp_path, "skew.json", alg)
    assert report(["validate", path])[0] == 1
    assert report(["derivations", path])[0] == 1
    assert report(["local-check", path])[0] == 1


def test_input_errors(tmp_path):
    assert report(["validate", "catalog:sl2"])[0] == 3
    assert report(["validate", str(tmp_path / "missing.json")])[0] == 3
    code, res = report(["validate", write(tmp_path, "broken.json", '{"basis": [')])
    assert code == 3 and "line 1" in res["error"]
    floaty = {"basis": [["a", 0]], "brackets": [{"left": "a", "right": "a", "result": [[0.5, "a"]]}]}
    code, res = report(["validate", write(tmp_path, "f.json", floaty)])
    assert code == 3 and "brackets[0].result[0]" in res["error"]
    unknown = {"basis": [["a", 0]], "brackets": [{"left": "a", "right": "b", "result": []}]}
    code, res = report(["validate", write(tmp_path, "u.json", unknown)])
    assert code == 3 and "brackets[0].right" in res["error"]


def test_derivations_report():
    code, res = report(["derivations", "catalog:super-schrodinger"])
    assert code == 0
    assert res["dims"] == {"even": 6, "odd": 3, "total": 9, "inner": 8, "outer_quotient": 1}
    assert all(res["theorem_check"].values())
    assert len(res["bases"]["even"]) == 6 and len(res["bases"]["odd"]) == 3
    code, res = report(["derivations", "catalog:osp12", "--degree", "1"])
    assert code == 0 and list(res["bases"]) == ["odd"] and "theorem_check" not in res


def test_local_check_builtin_certifies():
    code, res = report(["local-check", "catalog:super-schrodinger"])
    assert code == 0
    assert res["verdict"] == "Certified"
    assert (res["dim_der"], res["dim_closure"]) == (9, 9)


def test_local_check_single_probe_is_inconclusive(tmp_path):
    path = write(tmp_path, "p.json", {"probes": [{"z": "1"}]})
    code, res = report(["local-check", "catalog:super-schrodinger", "--probes", path, "--refute-trials", "20"])
    assert code == 2
    assert res["verdict"] == "Inconclusive"
    assert len(res["gap_basis"]) == 64
    assert res["refute"] == {"trials": 20, "seed": 0}


def test_local_check_bad_probe_file(tmp_path):
    path = write(tmp_path, "p.json", {"probes": [{"w": "1"}]})
    assert report(["local-check", "catalog:super-schrodinger", "--probes", path])[0] == 3
    path = write(tmp_path, "z.json", [{"h": "0"}])
    assert report(["local-check", "catalog:super-schrodinger", "--probes", path])[0] == 3


def test_replay():
    code, res = report(["replay", "catalog:super-schrodinger"])
    assert code == 0 and res["passed"]
    assert res["final"] == {"dim": 2, "equals_span_ad_h_ad_G": True}
    assert all(r["ok"] for r in res["reconstruction"]["closure_basis"])
    assert report(["replay", "catalog:osp12"])[0] == 3


def test_replay_with_ablated_facts(tmp_path):
    facts = facts_to_json(without_probe(SCHRODINGER_FACTS, {"e": 1, "f": 1, "E": 1, "F": 1}))
    path = write(tmp_path, "facts.json", facts)
    code, res = report(["replay", "catalog:super-schrodinger", "--facts", path])
    assert code == 1
    step = next(s for s in res["steps"] if s["id"] == "e-f-diagonal")
    bad = [a for a in step["assertions"] if not a["passed"]]
    assert bad[0]["label"] == "b_{q,e} = 0"
    assert "failing_basis_index" in bad[0]


def test_catalog_round_trips_through_files(tmp_path):
    code, res = report(["catalog"])
    assert code == 0
    for entry in res["algebras"]:
        path = write(tmp_path, entry["name"] + ".json", entry["definition"])
        a = report(["derivations", path])[1]["dims"]
        b = report(["derivations", "catalog:" + entry["name"]])[1]["dims"]
        assert a == b


def test_probes_export(tmp_path):
    code, res = report(["probes", "export"])
    assert code == 0 and len(res["probes"]) == 28
    # the exported set certifies without the basis vectors
    path = write(tmp_path, "probes.json", {"probes": res["probes"]})
    assert report(["local-check", "catalog:super-schrodinger", "--probes", path])[0] == 0
    path = write(tmp_path, "proof.json", {"probes": res["probes"][:27]})
    assert report(["local-check", "catalog:super-schrodinger", "--probes", path])[0] == 2
    code, res = report(["probes", "export", "--facts"])
    assert res["facts"] == facts_to_json()


@pytest.mark.parametrize(
    "argv",
    [
        ["validate", "catalog:super-schrodinger"],
        ["derivations", "catalog:super-schrodinger"],
        ["local-check", "catalog:osp12", "--refute-trials", "30", "--seed", "5"],
        ["replay", "catalog:super-schrodinger"],
    ],
)
def test_output_is_byte_identical(argv):
    assert run(argv) == run(argv)
    assert run(argv + ["--format", "text"]) == run(argv + ["--format", "text"])


def test_timing_is_opt_in():
    assert "seconds" not in json.loads(run(["catalog"])[1])
    assert "seconds" in json.loads(run(["catalog", "--timing"])[1])


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "superder", "validate", "catalog:osp12"], capture_output=True, text=True
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["result"]["valid"] is True
