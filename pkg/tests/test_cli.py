import json

import pytest

from quadalg.cli import main
from quadalg.fixtures import FIXTURES


def write_gens(tmp_path, name, doc=None):
    if doc is None:
        fx = FIXTURES[name]
        doc = {"field": {"p": fx.p},
               "generators": [[list(r) for r in rows] for _, rows in fx.matrices],
               "labels": [label for label, _ in fx.matrices]}
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps(doc))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_verify_fixtures_exit_zero(name, capsys):
    code, out, _ = run(capsys, "verify", name)
    assert code == 0
    assert f"verify {name}: PASS" in out
    assert "This algebra satisfies the given condition!" in out


def test_verify_output_mirrors_the_script_report(capsys):
    code, out, _ = run(capsys, "verify", "a")
    assert code == 0
    assert "Size of A: 27" in out
    assert "Dimension of A as a vectorial space: 3" in out
    assert "Dimension of the subspace generated by {x, y, xy}: 3" in out
    assert "nilpotent of index 3" in out


def test_verify_json_document(capsys):
    code, out, _ = run(capsys, "--json", "verify", "g")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True
    assert doc["dimension"] == 7
    assert doc["identity"] == "X^2 = 2X - 1"
    assert doc["mismatches"] == []
    assert doc["exit_code"] == 0


def test_closure_involution_file(tmp_path, capsys):
    path = write_gens(tmp_path, "b")
    code, out, _ = run(capsys, "closure", "--gens", path)
    assert code == 0
    assert "semigroup size: 4 nonzero elements" in out
    assert "algebra dimension: 4" in out
    assert "unit: present" in out
    assert "not nilpotent" in out


def test_closure_nilsquare_file(tmp_path, capsys):
    path = write_gens(tmp_path, "a")
    code, out, _ = run(capsys, "--json", "closure", "--gens", path)
    doc = json.loads(out)
    assert doc["algebra_dim"] == 3
    assert doc["nil_index"] == 3
    assert doc["has_unit"] is False
    assert doc["zero_absorbed"] is True
    assert doc["semigroup_size"] == 4


def test_closure_single_zero_generator(tmp_path, capsys):
    doc = {"field": {"p": 3}, "generators": [[[0, 0], [0, 0]]]}
    path = write_gens(tmp_path, "zero", doc)
    code, out, _ = run(capsys, "--json", "closure", "--gens", path)
    assert code == 0
    report = json.loads(out)
    assert report["algebra_dim"] == 0
    assert report["nil_index"] == 1


def test_check_unipotent_semigroup_holds(tmp_path, capsys):
    path = write_gens(tmp_path, "f")
    code, out, _ = run(capsys, "check", "--gens", path,
                       "--a", "2", "--b", "-1", "--scope", "semigroup")
    assert code == 0
    assert "This algebra satisfies the given condition!" in out


def test_check_unipotent_algebra_scope_fails(tmp_path, capsys):
    path = write_gens(tmp_path, "f")
    code, out, _ = run(capsys, "--json", "check", "--gens", path,
                       "--a", "2", "--b", "-1", "--scope", "algebra")
    assert code == 1
    doc = json.loads(out)
    assert doc["holds"] is False
    # zero element is the lexicographically least witness when b != 0
    assert doc["witness"]["coordinates"] == [0, 0, 0, 0]


def test_check_idempotent_algebra_holds(tmp_path, capsys):
    path = write_gens(tmp_path, "d")
    code, out, _ = run(capsys, "check", "--gens", path,
                       "--a", "1", "--b", "0", "--scope", "algebra")
    assert code == 0


def test_classify_unipotent(capsys):
    code, out, _ = run(capsys, "classify", "--a", "2", "--b", "-1",
                       "--char", "7", "--scope", "semigroup", "--m", "4")
    assert code == 0
    assert "case: unipotent" in out
    assert "dimension: 11" in out


def test_classify_involution_m5(capsys):
    code, out, _ = run(capsys, "classify", "--a", "0", "--b", "1",
                       "--char", "3", "--scope", "semigroup", "--m", "5")
    assert code == 0
    assert "case: involution" in out
    assert "dimension: 32" in out


def test_classify_inconsistent_exits_one(capsys):
    # b = 4 is -1 over GF(5); the violated constraint is a^2 - a - 2 = 0
    code, out, _ = run(capsys, "classify", "--a", "3", "--b", "4",
                       "--char", "5", "--scope", "semigroup")
    assert code == 1
    assert "case: inconsistent" in out
    assert "a^2 - a - 2 = 0 violated" in out

    code, out, _ = run(capsys, "classify", "--a", "3", "--b", "3",
                       "--char", "7", "--scope", "semigroup")
    assert code == 1
    assert "b = -1 violated" in out


def test_classify_gf4(capsys):
    code, out, _ = run(capsys, "--json", "classify", "--a", "1", "--b", "1",
                       "--gf4", "--scope", "semigroup")
    assert code == 0
    doc = json.loads(out)
    assert doc["tag"] == "gf4-collapse"
    assert doc["dimension"] == 2


def test_classify_semigroup_case_with_wrong_m_still_classifies(capsys):
    code, out, _ = run(capsys, "classify", "--a", "1", "--b", "0",
                       "--char", "5", "--scope", "semigroup", "--m", "3")
    assert code == 0
    assert "case: idempotent-s" in out
    assert "no canonical basis for m = 3" in out


def test_quotient_normal_form(capsys):
    code, out, _ = run(capsys, "quotient", "--case", "unipotent", "--m", "2",
                       "--char", "3", "--nf", "yxy")
    assert code == 0
    assert "nf(yxy) = 1 + x + 2y" in out


def test_quotient_nilsquare_nf_is_zero(capsys):
    code, out, _ = run(capsys, "quotient", "--case", "nilsquare", "--m", "2",
                       "--char", "3", "--nf", "xyx")
    assert code == 0
    assert "nf(xyx) = 0" in out


def test_quotient_repr_matches_involution_fixture(capsys):
    code, out, _ = run(capsys, "--json", "quotient", "--case", "involution",
                       "--m", "2", "--char", "5", "--repr")
    assert code == 0
    doc = json.loads(out)
    fx = FIXTURES["b"]
    for label, rows in fx.matrices:
        assert doc["repr"]["matrices"][label] == [list(r) for r in rows]


def test_quotient_table(capsys):
    code, out, _ = run(capsys, "quotient", "--case", "involution", "--m", "2",
                       "--char", "5", "--table")
    assert code == 0
    assert "x * x = 1" in out
    assert "y * x = xy" in out


def test_quotient_table_json_carries_coordinates(capsys):
    code, out, _ = run(capsys, "--json", "quotient", "--case", "unipotent",
                       "--m", "2", "--char", "5", "--table")
    assert code == 0
    doc = json.loads(out)
    entries = {(e["left"], e["right"]): e for e in doc["table"]}
    assert len(entries) == 16
    # y * x = -2 + 2x + 2y - xy over the basis (1, x, y, xy)
    assert entries[("y", "x")]["coordinates"] == [3, 2, 2, 4]


def test_quotient_from_identity_parameters(capsys):
    code, out, _ = run(capsys, "quotient", "--a", "0", "--b", "1",
                       "--scope", "semigroup", "--char", "3", "--m", "2")
    assert code == 0
    assert "case involution" in out


def test_quotient_inconsistent_parameters_exit_one(capsys):
    code, out, _ = run(capsys, "quotient", "--a", "3", "--b", "3",
                       "--scope", "semigroup", "--char", "5", "--m", "2")
    assert code == 1
    assert "inconsistent" in out


def test_quotient_oracle_agreement(capsys):
    code, out, _ = run(capsys, "--json", "quotient", "--case", "involution",
                       "--m", "2", "--char", "5", "--oracle", "6")
    assert code == 0
    doc = json.loads(out)
    assert doc["oracle"]["agrees"] is True
    assert doc["oracle"]["dimension"] == 4
    assert doc["oracle"]["stabilized"] is True


def test_quotient_malformed_word_exits_two(capsys):
    code, _, err = run(capsys, "quotient", "--case", "involution", "--m", "2",
                       "--char", "5", "--nf", "xq")
    assert code == 2
    assert "error:" in err


def test_generator_file_errors_name_the_field(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"field": {"p": 5},
                               "generators": [[[0, 1], [1, 0]],
                                              [[0, 1, 0], [1, 0, 0], [0, 0, 1]]]}))
    code, _, err = run(capsys, "closure", "--gens", str(bad))
    assert code == 2
    assert "generators[1]" in err

    bad.write_text(json.dumps({"field": {"p": 6}, "generators": [[[1]]]}))
    code, _, err = run(capsys, "closure", "--gens", str(bad))
    assert code == 2
    assert "field.p" in err

    bad.write_text(json.dumps({"field": {"p": 5},
                               "generators": [[[0, 1], [1, "x"]]]}))
    code, _, err = run(capsys, "closure", "--gens", str(bad))
    assert code == 2
    assert "row 1 column 1" in err

    bad.write_text("not json")
    code, _, err = run(capsys, "closure", "--gens", str(bad))
    assert code == 2

    code, _, err = run(capsys, "closure", "--gens", str(tmp_path / "missing.json"))
    assert code == 2


def test_json_output_is_deterministic(tmp_path, capsys):
    path = write_gens(tmp_path, "b")
    _, out1, _ = run(capsys, "--json", "closure", "--gens", path)
    _, out2, _ = run(capsys, "--json", "closure", "--gens", path)
    assert out1 == out2
    doc = json.loads(out1)
    assert list(doc) == sorted(doc)


def test_timings_flag_adds_elapsed(capsys, tmp_path):
    code, out, _ = run(capsys, "--timings", "verify", "b")
    assert code == 0
    assert "elapsed:" in out
    code, out, _ = run(capsys, "--json", "--timings", "verify", "b")
    assert "timings" in json.loads(out)


def test_seed_is_echoed(capsys):
    code, out, _ = run(capsys, "--json", "--seed", "42", "classify", "--a", "0",
                       "--b", "0", "--char", "3", "--scope", "algebra")
    assert json.loads(out)["seed"] == 42


def test_verify_accepts_uppercase_names(capsys):
    code, out, _ = run(capsys, "verify", "E")
    assert code == 0
    assert "verify e: PASS" in out


def test_quotient_oracle_rejects_large_m(capsys):
    code, _, err = run(capsys, "quotient", "--case", "involution", "--m", "4",
                       "--char", "5", "--oracle", "6")
    assert code == 2
    assert "m <= 3" in err


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["classify", "--a", "1"])
    assert exc.value.code == 2


def test_budget_exceeded_exits_two(tmp_path, capsys):
    path = write_gens(tmp_path, "f")
    code, _, err = run(capsys, "--cap", "5", "closure", "--gens", path)
    assert code == 2
    assert "budget" in err
