import json
import os

import numpy as np
import pytest

from simal import io as sio
from simal.algebra import Homomorphism, identity_hom
from simal import congruences as cg
from simal.cli import main, run
from simal.corpus import (
    cyclic_group,
    one_object_groupoid,
    pair_groupoid,
    symmetric_group,
)
from simal.errors import InputError
from simal.simplicial import nerve, simplicial_congruence_generated, \
    quotient_simplicial


C4 = cyclic_group(4)


def test_algebra_round_trip():
    data = sio.algebra_to_json(C4)
    back = sio.load_algebra(data)
    assert back.size == 4
    assert sio.content_hash(sio.algebra_to_json(back)) == sio.content_hash(data)


def test_homomorphism_round_trip():
    h = Homomorphism(C4, cyclic_group(2), [0, 1, 0, 1])
    data = sio.hom_to_json(h)
    back = sio.load_homomorphism(data)
    assert np.array_equal(back.map, h.map)


def test_simplicial_round_trip():
    X = nerve(pair_groupoid(C4), 3)
    data = sio.simplicial_to_json(X)
    back = sio.load_simplicial(data)
    assert [lvl.size for lvl in back.levels] == [4, 16, 64, 256]
    assert sio.content_hash(sio.simplicial_to_json(back)) == \
        sio.content_hash(data)


def test_morphism_round_trip():
    X = nerve(pair_groupoid(C4), 2)
    parts = simplicial_congruence_generated(X, {0: [(0, 2)]})
    _, q = quotient_simplicial(X, parts)
    data = sio.morphism_to_json(q)
    back = sio.load_morphism(data)
    assert back.is_levelwise_surjective()
    assert sio.content_hash(sio.morphism_to_json(back)) == \
        sio.content_hash(data)


def test_groupoid_round_trip():
    G = one_object_groupoid(C4)
    data = sio.groupoid_to_json(G)
    back = sio.load_groupoid(data)
    assert back.arrows.size == 4
    assert np.array_equal(back.comp, G.comp)


def test_congruence_round_trip():
    theta = cg.principal_congruence(C4, 0, 2)
    data = sio.congruence_to_json(theta)
    back = sio.load_congruence(data, C4)
    assert back == theta


def test_load_any_sniffs_kinds(tmp_path):
    X = nerve(pair_groupoid(C4), 2)
    specs = [
        ("a.json", sio.algebra_to_json(C4), "algebra"),
        ("x.json", sio.simplicial_to_json(X), "simplicial"),
        ("g.json", sio.groupoid_to_json(pair_groupoid(C4)), "groupoid"),
        ("h.json", sio.hom_to_json(identity_hom(C4)), "homomorphism"),
    ]
    for fname, data, want in specs:
        p = tmp_path / fname
        sio.save_json(data, str(p))
        kind, obj = sio.load_any(str(p))
        assert kind == want, fname


def test_loading_corrupt_table_is_an_input_error(tmp_path):
    data = sio.algebra_to_json(C4)
    data["operations"][0]["table"][0][0] = 99
    p = tmp_path / "bad.json"
    sio.save_json(data, str(p))
    with pytest.raises(InputError):
        sio.load_any(str(p))


def test_canonical_json_is_stable():
    a = sio.canonical_json({"b": 1, "a": [1, 2]})
    b = sio.canonical_json({"a": [1, 2], "b": 1})
    assert a == b
    assert sio.content_hash({"b": 1, "a": [1, 2]}) == \
        sio.content_hash({"a": [1, 2], "b": 1})


# -- command line ----------------------------------------------------------

def _write_artifacts(tmp_path):
    alg_path = str(tmp_path / "c4.json")
    sio.save_json(sio.algebra_to_json(C4), alg_path)
    X = nerve(one_object_groupoid(C4), 3)
    obj_path = str(tmp_path / "bc4.json")
    sio.save_json(sio.simplicial_to_json(X), obj_path)
    parts = simplicial_congruence_generated(X, {1: [(0, 2)]})
    _, q = quotient_simplicial(X, parts)
    ext_path = str(tmp_path / "ext.json")
    sio.save_json(sio.morphism_to_json(q), ext_path)
    return alg_path, obj_path, ext_path


def test_cli_validate_ok_and_missing(tmp_path):
    alg_path, obj_path, _ = _write_artifacts(tmp_path)
    code, report, lines = run(["validate", alg_path, obj_path])
    assert code == 0
    assert report["violations"] == []
    assert len(report["inputs"]) == 2
    assert all("sha256" in e for e in report["inputs"])
    code, report, _ = run(["validate", str(tmp_path / "absent.json")])
    assert code == 1
    assert report["violations"]


def test_cli_gen_writes_a_loadable_artifact(tmp_path):
    out = str(tmp_path / "gen.json")
    code, report, _ = run(["gen", "delooping", "algebra=C4",
                           "truncation=2", "--out", out])
    assert code == 0
    kind, obj = sio.load_any(out)
    assert kind == "simplicial"
    assert [lvl.size for lvl in obj.levels] == [1, 4, 16]


def test_cli_reflect_emits_artifacts(tmp_path):
    _, obj_path, _ = _write_artifacts(tmp_path)
    outdir = str(tmp_path / "refl")
    code, report, _ = run(["reflect", obj_path, "--out", outdir])
    assert code == 0
    assert report["results"]["already_groupoid"] is True
    files = sorted(os.listdir(outdir))
    assert files == ["groupoid.json", "h0.json", "h1.json", "h2.json",
                     "h3.json", "unit.json"]
    kind, G = sio.load_any(os.path.join(outdir, "groupoid.json"))
    assert kind == "groupoid"
    assert G.arrows.size == 4


def test_cli_classify_and_factorize(tmp_path):
    _, _, ext_path = _write_artifacts(tmp_path)
    code, report, lines = run(["classify", ext_path])
    assert code == 0
    assert report["results"]["trivial"] is True
    outdir = str(tmp_path / "fac")
    code, report, _ = run(["factorize", ext_path, "--mode", "ml",
                           "--out", outdir])
    assert code == 0
    assert sorted(os.listdir(outdir)) == ["first.json", "middle.json",
                                          "second.json"]


def test_cli_kan_and_cosk_and_commutators(tmp_path):
    _, obj_path, ext_path = _write_artifacts(tmp_path)
    code, report, _ = run(["kan", obj_path])
    assert code == 0
    assert report["results"]["all_pass"] is True
    code, report, _ = run(["kan", ext_path])
    assert code == 0
    code, report, _ = run(["cosk", obj_path])
    assert code == 0
    assert report["results"]["two_coskeletal_at_top"] is True
    code, report, lines = run(["commutators", obj_path])
    assert code == 0
    assert report["results"]["commutator_equal"] is True


def test_cli_budget_exit_code(tmp_path):
    _, obj_path, _ = _write_artifacts(tmp_path)
    code, report, _ = run(["cosk", obj_path, "--budget", "3"])
    assert code == 3
    assert report["violations"][0]["property"] in (
        "BudgetExceeded", "LevelTooLarge"
    )


def test_cli_wrong_kind_exit_code(tmp_path):
    alg_path, _, _ = _write_artifacts(tmp_path)
    code, report, _ = run(["reflect", alg_path])
    assert code == 1


def test_cli_report_hash_ignores_elapsed(tmp_path):
    _, obj_path, _ = _write_artifacts(tmp_path)
    _, first, _ = run(["cosk", obj_path])
    _, second, _ = run(["cosk", obj_path])
    assert first["report_hash"] == second["report_hash"]
    del first["elapsed"], second["elapsed"]
    assert first == second


def test_cli_report_out_writes_report(tmp_path):
    _, obj_path, _ = _write_artifacts(tmp_path)
    report_path = str(tmp_path / "report.json")
    code, report, _ = run(["commutators", obj_path, "--out", report_path])
    assert code == 0
    stored = sio.load_json(report_path)
    assert stored["report_hash"] == report["report_hash"]


def test_cli_json_mode_prints_report(tmp_path, capsys):
    alg_path, _, _ = _write_artifacts(tmp_path)
    code = main(["validate", alg_path, "--json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["command"] == "validate"
    assert payload["violations"] == []


def test_cli_suite_prints_one_line_per_criterion(capsys):
    code = main(["suite", "--profile", "desk"])
    assert code == 0
    out_lines = capsys.readouterr().out.strip().splitlines()
    marks = [ln for ln in out_lines if ln.startswith("criterion")]
    assert len(marks) == 10
    assert all("PASS" in ln for ln in marks)
