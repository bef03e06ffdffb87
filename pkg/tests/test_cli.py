import json
import os

import pytest

from gspin_kit.cli import (
    EXIT_DOMAIN,
    EXIT_INTERNAL_DISAGREEMENT,
    EXIT_OK,
    EXIT_USAGE,
    main,
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out) if out.strip() else None, err


T1 = '{"n":2,"c":"6","a":["2","3"]}'
T2 = '{"n":2,"c":"3","a":["1/2","3"]}'


@pytest.fixture()
def store_file(tmp_path):
    path = tmp_path / "store.jsonl"
    path.write_text(
        '{"n":2,"q":2,"c":"1","a":["1","1"],"label":"triv"}\n'
        '{"n":2,"q":7,"c":"6","a":["2","3"]}\n'
    )
    return str(path)


def test_conj_conjugate_pair(capsys):
    code, payload, _ = run_json(capsys, "conj", "--t1", T1, "--t2", T2)
    assert code == EXIT_OK
    assert payload["gspin_conjugate"] and payload["steinberg_conjugate"]
    assert payload["std_conjugate"]


def test_conj_identical_inputs(capsys):
    code, payload, _ = run_json(capsys, "conj", "--t1", T1, "--t2", T1)
    assert code == EXIT_OK and payload["gspin_conjugate"]


def test_conj_malformed_json(capsys):
    code, _, err = run(capsys, "conj", "--t1", "nope", "--t2", T1)
    assert code == EXIT_USAGE and "JSON" in err


def test_conj_criterion_disagreement_exit_code(capsys):
    # the rank-3 collision pair: spin+norm criterion true, orbits differ
    c1 = '{"n":3,"c":"-1","a":["2","-1","1"]}'
    c2 = '{"n":3,"c":"1","a":["-1","-1","-2"]}'
    code, payload, err = run_json(capsys, "conj", "--t1", c1, "--t2", c2)
    assert code == EXIT_INTERNAL_DISAGREEMENT
    assert payload["steinberg_conjugate"] and not payload["gspin_conjugate"]


def test_conj_json_roundtrip(capsys):
    code, payload, _ = run_json(capsys, "conj", "--t1", T1, "--t2", T2)
    t1 = json.dumps(payload["input"]["t1"])
    t2 = json.dumps(payload["input"]["t2"])
    code2, payload2, _ = run_json(capsys, "conj", "--t1", t1, "--t2", t2)
    assert code2 == code and payload2 == payload


def test_lfactor(capsys, store_file):
    code, payload, _ = run_json(capsys, "lfactor", "--store", store_file, "--rep", "spin")
    assert code == EXIT_OK
    assert payload["factors"][0]["poly"] == ["1", "-4", "6", "-4", "1"]
    assert payload["factors"][1]["poly"] == ["1", "-12", "47", "-72", "36"]


def test_lfactor_roundtrip(capsys, store_file, tmp_path):
    code, payload, _ = run_json(capsys, "lfactor", "--store", store_file)
    # rebuild the store from the echoed input and rerun
    echo = tmp_path / "echo.jsonl"
    echo.write_text("\n".join(json.dumps(r) for r in payload["input"]["store"]) + "\n")
    code2, payload2, _ = run_json(capsys, "lfactor", "--store", str(echo))
    assert payload2 == payload


def test_lsum_value_and_report(capsys, store_file, tmp_path):
    report = tmp_path / "report"
    code, payload, _ = run_json(
        capsys,
        "lsum", "--store", store_file, "--rep", "spin",
        "--s", "2", "--cutoff", "3", "--report-dir", str(report),
    )
    assert code == EXIT_OK
    assert abs(payload["value"] - (4 / 3) ** 4) < 1e-12
    assert [e["q"] for e in payload["ledger"]] == [2]
    assert os.path.exists(payload["report"]["csv"])
    assert os.path.exists(payload["report"]["figure"])
    with open(payload["report"]["csv"]) as fh:
        lines = fh.read().splitlines()
    assert lines[0].startswith("q,rep,factor_value")
    assert len(lines) == 2


def test_lsum_convergence_exit(capsys, store_file):
    code, _, err = run(
        capsys, "lsum", "--store", store_file, "--rep", "spin", "--s", "1.5", "--cutoff", "10"
    )
    assert code == EXIT_DOMAIN and "convergence" in err


def test_weights_check_text(capsys):
    code, out, _ = run(capsys, "weights", "check", "--n", "3", "--mu", "1,2,3")
    assert code == EXIT_OK
    assert "HT2: FAIL (a=" in out
    assert "HT1: PASS" in out


def test_weights_check_json_roundtrip(capsys):
    code, payload, _ = run_json(capsys, "weights", "check", "--n", "2", "--mu", "8,4")
    assert payload["HT1"] == {"pass": False, "witness_x": 2}
    code2, payload2, _ = run_json(
        capsys, "weights", "check", "--n", "2", "--mu", ",".join(payload["input"]["mu"])
    )
    assert payload2 == payload


def test_weights_cshift(capsys):
    code, payload, _ = run_json(capsys, "weights", "cshift", "--n", "2", "--mu", "0,1,2")
    assert payload["shifted"] == ["3/2", "1", "2"]
    code, payload, _ = run_json(
        capsys, "weights", "cshift", "--n", "2", "--mu", "3/2,1,2", "--inverse"
    )
    assert payload["shifted"] == ["0", "1", "2"]


def test_weights_bad_args(capsys):
    code, _, err = run(capsys, "weights", "check", "--n", "3", "--mu", "1,2")
    assert code == EXIT_USAGE


def test_classicality_bound(capsys):
    code, payload, _ = run_json(
        capsys, "classicality", "bound", "--n", "2", "--w", "0,5,2", "--vbeta", "1"
    )
    assert code == EXIT_OK
    assert payload["bound"] == "-12" and payload["small_slope"] is False


def test_classicality_bound_custom_eta_roundtrip(capsys):
    code, payload, _ = run_json(
        capsys,
        "classicality", "bound", "--n", "2", "--w", "0,5,2",
        "--vbeta", "1", "--eta", "0,-1,-2",
    )
    assert code == EXIT_OK
    code2, payload2, _ = run_json(
        capsys,
        "classicality", "bound",
        "--n", "2",
        "--w", ",".join(payload["input"]["w"]),
        "--vbeta", payload["input"]["vbeta"],
        "--eta", ",".join(payload["input"]["eta"]),
    )
    assert payload2 == payload


def test_classicality_admissible(capsys):
    cone = json.dumps({"functionals": [["1", "0"], ["0", "-1"]], "thresholds": ["0", "0"]})
    code, payload, _ = run_json(capsys, "classicality", "admissible", "--cone", cone)
    assert code == EXIT_OK and payload["admissible"] is True
    cone2 = json.dumps({"functionals": [["0", "1"]], "thresholds": ["0"]})
    code, payload, _ = run_json(capsys, "classicality", "admissible", "--cone", cone2)
    assert payload["admissible"] is False
    # round trip through the echoed serialization
    code2, payload2, _ = run_json(
        capsys, "classicality", "admissible", "--cone", json.dumps(payload["input"]["cone"])
    )
    assert payload2 == payload


def test_g2_check(capsys):
    code, out, _ = run(capsys, "g2", "check", "--x", "9", "--y", "4")
    assert code == EXIT_OK
    assert "c=36" in out and "8 = 7 (+) 1 restriction: OK" in out
    code, payload, _ = run_json(capsys, "g2", "check", "--x", "9", "--y", "4")
    assert payload["embedding"] == {"n": 3, "c": "36", "a": ["9", "4", "36"]}
    assert payload["trace_spin"] != payload["trace_std"]
    code2, payload2, _ = run_json(
        capsys, "g2", "check", "--x", payload["input"]["x"], "--y", payload["input"]["y"]
    )
    assert payload2 == payload


def test_g2_rejects_zero(capsys):
    code, _, err = run(capsys, "g2", "check", "--x", "0", "--y", "4")
    assert code == EXIT_USAGE


def test_clifford_mul_anticommutator(capsys):
    a = '{"n":3,"terms":{"1":"1"}}'
    b = '{"n":3,"terms":{"7":"1"}}'
    code, payload, _ = run_json(
        capsys, "clifford", "mul", "--n", "3", "--a", a, "--b", b, "--anticommutator"
    )
    assert code == EXIT_OK
    assert payload["anticommutator"] == {"n": 3, "terms": {"": "1"}}
    # round trip the echoed inputs
    code2, payload2, _ = run_json(
        capsys,
        "clifford", "mul", "--n", "3",
        "--a", json.dumps(payload["input"]["a"]),
        "--b", json.dumps(payload["input"]["b"]),
        "--anticommutator",
    )
    assert payload2 == payload


def test_clifford_norm_and_go(capsys):
    # the torus element with chart (6; 2, 3)
    x = '{"n":2,"terms":{"":"6","2,4":"-4","1,5":"-3","1,2,4,5":"2"}}'
    code, payload, _ = run_json(capsys, "clifford", "norm", "--n", "2", "--x", x)
    assert code == EXIT_OK
    code, payload, _ = run_json(capsys, "clifford", "go", "--n", "2", "--x", x)
    assert code == EXIT_OK
    assert payload["similitude"] == "6"


def test_clifford_norm_rejects_odd(capsys):
    x = '{"n":2,"terms":{"1":"1"}}'
    code, _, err = run(capsys, "clifford", "norm", "--n", "2", "--x", x)
    assert code == EXIT_DOMAIN


def test_store_validate_and_ingest(capsys, store_file, tmp_path):
    code, payload, _ = run_json(capsys, "store", "validate", "--in", store_file)
    assert code == EXIT_OK and payload["count"] == 2
    out = tmp_path / "canon.jsonl"
    code, payload, _ = run_json(
        capsys, "store", "ingest", "--in", store_file, "--out", str(out)
    )
    assert code == EXIT_OK and out.exists()
    # canonicalized store revalidates to the same records
    code2, payload2, _ = run_json(capsys, "store", "validate", "--in", str(out))
    assert payload2["input"]["records"] == payload["input"]["records"]


def test_store_duplicate_rejected(capsys, tmp_path):
    path = tmp_path / "dup.jsonl"
    path.write_text(
        '{"n":2,"q":7,"c":"6","a":["2","3"],"label":"x"}\n'
        '{"n":2,"q":7,"c":"1","a":["1","1"],"label":"x"}\n'
    )
    code, _, err = run(capsys, "store", "validate", "--in", str(path))
    assert code == EXIT_USAGE and "duplicate" in err


def test_usage_error_exit_code(capsys):
    assert main(["unknown-subcommand"]) == EXIT_USAGE
    assert main(["lsum", "--store", "x"]) == EXIT_USAGE  # missing required args
