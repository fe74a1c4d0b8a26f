"""Command-line driver: exit codes, canonical JSON payloads and determinism,
exercised through main(argv) with real files."""

import json

import pytest

from charkit.chartab import character_table, group_to_json
from charkit.classfun import ClassFunction, decompose
from charkit.cli import main
from charkit.corpus import corpus_group
from charkit.heilbronn import make_assignment
from charkit.supercharacter import max_theory, theory_from_json, theory_to_json, verify_sct

A3_GENS = "[[2,3,1]]"
C2_GENS = "[[2,1,3]]"


@pytest.fixture()
def run(capsys):
    def _run(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return _run


@pytest.fixture()
def s3_file(tmp_path):
    path = tmp_path / "s3.json"
    path.write_text(json.dumps(group_to_json(corpus_group("S3"))))
    return str(path)


def _canon(obj):
    return json.loads(json.dumps(obj))


def test_grp_info(run, s3_file):
    code, out, err = run("grp", "info", s3_file)
    assert code == 0
    payload = json.loads(out)
    assert payload["order"] == 6
    assert payload["num_classes"] == 3
    assert payload["solvable"] is True
    assert payload["supersolvable"] is True
    assert payload["derived_length"] == 2
    assert "order 6" in err


def test_grp_subgroups(run, s3_file):
    code, out, _ = run("grp", "subgroups", s3_file)
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 6
    orders = sorted(s["order"] for s in payload["subgroups"])
    assert orders == [1, 2, 2, 2, 3, 6]
    normal_orders = sorted(s["order"] for s in payload["subgroups"] if s["normal"])
    assert normal_orders == [1, 3, 6]


def test_chartab_compute_verify_and_tamper(run, s3_file, tmp_path):
    table_path = tmp_path / "table.json"
    code, out, _ = run("chartab", "compute", s3_file, "--out", str(table_path))
    assert code == 0
    assert out == ""
    obj = json.loads(table_path.read_text())

    code, out, _ = run("chartab", "verify", str(table_path))
    assert code == 0
    assert json.loads(out)["ok"] is True
    assert sorted(json.loads(out)["degrees"]) == [1, 1, 2]

    # flip one character value: verification must fail with exit 1
    obj["irreducibles"][2][1] = obj["irreducibles"][2][0]
    bad = tmp_path / "tampered.json"
    bad.write_text(json.dumps(obj))
    code, _, err = run("chartab", "verify", str(bad))
    assert code == 1
    assert "verification failed" in err

    # malformed JSON is an input problem: exit 2
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    code, _, err = run("chartab", "verify", str(broken))
    assert code == 2


def test_cf_induce_restrict_decompose_level(run, s3_file, tmp_path):
    S3 = corpus_group("S3")
    C2 = S3.subgroup([(1, 0, 2)])
    table_c2 = character_table(C2)
    sgn = table_c2.irreducibles[0]
    char_path = tmp_path / "sgn.json"
    char_path.write_text(json.dumps(sgn.to_json()))

    code, out, _ = run(
        "cf", "induce", s3_file, str(char_path), "--subgroup", C2_GENS
    )
    assert code == 0
    from charkit.classfun import induce

    assert json.loads(out) == _canon(induce(sgn, S3).to_json())

    reg_path = tmp_path / "reg.json"
    reg_path.write_text(json.dumps(ClassFunction.regular(S3).to_json()))
    code, out, _ = run("cf", "decompose", s3_file, str(reg_path))
    assert code == 0
    table = character_table(S3)
    assert json.loads(out) == _canon(
        decompose(ClassFunction.regular(S3), table).to_json()
    )

    std_path = tmp_path / "std.json"
    std_path.write_text(json.dumps(table.irreducibles[2].to_json()))
    code, out, _ = run("cf", "level", s3_file, str(std_path))
    assert code == 0
    assert json.loads(out) == {"level": 2}

    code, out, _ = run(
        "cf", "restrict", s3_file, str(std_path), "--subgroup", A3_GENS
    )
    assert code == 0
    from charkit.classfun import restrict

    A3 = S3.derived_term(1)
    assert json.loads(out) == _canon(restrict(table.irreducibles[2], A3).to_json())


def test_cf_induce_requires_subgroup(run, s3_file, tmp_path):
    char_path = tmp_path / "c.json"
    char_path.write_text(json.dumps(ClassFunction.trivial(corpus_group("S3")).to_json()))
    code, _, err = run("cf", "induce", s3_file, str(char_path))
    assert code == 2
    assert "input error" in err


def test_mono_uvdw_and_mgroup(run, s3_file):
    code, out, _ = run("mono", "uvdw", s3_file, "--subgroup", C2_GENS)
    assert code == 0
    payload = json.loads(out)
    assert len(payload["terms"]) == 1
    assert payload["residual_trivial"] == "1"

    code, out, _ = run("mono", "mgroup", s3_file)
    assert code == 0
    payload = json.loads(out)
    assert payload["is_m_group"] is True
    assert payload["failures"] == []
    assert len(payload["witnesses"]) == 3


def test_mono_cone(run, s3_file, tmp_path):
    S3 = corpus_group("S3")
    psi = ClassFunction.regular(S3) - ClassFunction.trivial(S3)
    char_path = tmp_path / "psi.json"
    char_path.write_text(json.dumps(psi.to_json()))
    code, out, _ = run("mono", "cone", s3_file, str(char_path))
    assert code == 0
    payload = json.loads(out)
    assert payload["member"] is True
    assert payload["combination"]
    assert payload["refutation_index"] is None

    # sign minus trivial lies outside the cone
    table = character_table(S3)
    outside = table.irreducibles[0] - table.irreducibles[1]
    out_path = tmp_path / "outside.json"
    out_path.write_text(json.dumps(outside.to_json()))
    code, out, _ = run("mono", "cone", s3_file, str(out_path))
    assert code == 0
    payload = json.loads(out)
    assert payload["member"] is False
    assert payload["refutation_index"] is not None


def test_heilbronn_verify_and_search(run, s3_file, tmp_path):
    S3 = corpus_group("S3")
    table = character_table(S3)
    a = make_assignment(table, {0: 1, 1: 1, 2: 2})
    a_path = tmp_path / "assignment.json"
    a_path.write_text(json.dumps(a.to_json()))
    code, out, _ = run("heilbronn", "verify", s3_file, str(a_path))
    assert code == 0
    payload = json.loads(out)
    assert payload["weak_admissible"] is True
    assert payload["arithmetic_admissible"] is True
    assert payload["n_regular"] == 6
    assert payload["stark_restriction"]["holds"] is True

    code, out, _ = run("heilbronn", "search", s3_file, "--bound", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["candidates"] == 27
    assert payload["violations"] == 0
    assert payload["mode"] == "weak"

    code, out, _ = run("heilbronn", "split", s3_file, str(a_path))
    assert code == 0
    payload = json.loads(out)
    assert payload["reconstruction_ok"] is True


def test_sct_enumerate_verify_product_superinduce(run, tmp_path):
    c4_file = tmp_path / "c4.json"
    c4_file.write_text(json.dumps(group_to_json(corpus_group("C4"))))
    code, out, _ = run("sct", "enumerate", str(c4_file))
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 3
    assert len(payload["theories"]) == 3

    S3 = corpus_group("S3")
    s3_file = tmp_path / "s3.json"
    s3_file.write_text(json.dumps(group_to_json(S3)))
    table = character_table(S3)
    theory_path = tmp_path / "maxtheory.json"
    theory_path.write_text(json.dumps(theory_to_json(max_theory(table))))
    code, out, _ = run("sct", "verify", str(s3_file), str(theory_path))
    assert code == 0
    assert json.loads(out)["holds"] is True

    # Hendrickson product of the coarse theory on A3 with the classical
    # quotient theory, through files
    A3 = S3.derived_term(1)
    tn_path = tmp_path / "tn.json"
    tn_path.write_text(json.dumps(theory_to_json(max_theory(character_table(A3)))))
    q = S3.quotient(A3)
    tq_path = tmp_path / "tq.json"
    tq_path.write_text(
        json.dumps(theory_to_json(max_theory(character_table(q.quotient))))
    )
    code, out, _ = run(
        "sct",
        "product",
        str(s3_file),
        str(tn_path),
        str(tq_path),
        "--subgroup",
        A3_GENS,
    )
    assert code == 0
    prod = theory_from_json(json.loads(out), table)
    assert verify_sct(prod).holds

    # superinduce the constant-one superclass function from A3
    vals_path = tmp_path / "vals.json"
    vals_path.write_text(
        json.dumps({"values": [{"order": 1, "coeffs": {"0": "1"}}] * 2})
    )
    code, out, _ = run(
        "sct",
        "superinduce",
        str(s3_file),
        str(theory_path),
        str(tn_path),
        str(vals_path),
        "--subgroup",
        A3_GENS,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["values"][0] == {"order": 1, "coeffs": {"0": "2"}}
    assert payload["values"][1] == {"order": 1, "coeffs": {"0": "4/5"}}


def test_certify_subcommands(run, s3_file, tmp_path):
    code, out, _ = run("certify", "takagi", s3_file)
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "holomorphic-except-s1"
    assert payload["symbol"] == {"0": 1, "1": 1, "2": 2}

    code, out, _ = run("certify", "uvdw", s3_file, "--subgroup", A3_GENS)
    assert code == 0
    assert json.loads(out)["symbol"] == {"0": 1}

    code, _, err = run("certify", "uvdw", s3_file)
    assert code == 2
    assert "subgroup" in err

    S3 = corpus_group("S3")
    A3 = S3.derived_term(1)
    omega = character_table(A3).irreducibles[0]
    char_path = tmp_path / "omega.json"
    char_path.write_text(json.dumps(omega.to_json()))
    code, out, _ = run(
        "certify", "rr2", s3_file, str(char_path), "--subgroup", A3_GENS
    )
    assert code == 0
    assert json.loads(out)["symbol"] == {"2": 1}

    code, out, _ = run(
        "certify",
        "level",
        s3_file,
        str(char_path),
        "--subgroup",
        A3_GENS,
        "--level",
        "1",
    )
    assert code == 0
    assert json.loads(out)["symbol"] == {"2": 1}


def test_missing_file_is_input_error(run):
    code, _, err = run("grp", "info", "/nonexistent/group.json")
    assert code == 2
    assert "input error" in err


def test_outputs_are_deterministic(run, s3_file, tmp_path):
    outputs = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        code, _, _ = run("chartab", "compute", s3_file, "--out", str(path))
        assert code == 0
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]

    c4_file = tmp_path / "c4.json"
    c4_file.write_text(json.dumps(group_to_json(corpus_group("C4"))))
    runs = []
    for _ in range(2):
        code, out, _ = run("sct", "enumerate", str(c4_file))
        assert code == 0
        runs.append(out)
    assert runs[0] == runs[1]
