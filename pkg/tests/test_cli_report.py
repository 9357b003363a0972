import json

import pytest

from sunitlab.cli_report import encode, main, solutions_csv
from sunitlab.smooth_verifier import SmoothPair


def run_cli(argv, capsys):
    status = main(argv)
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def run_json(argv, capsys):
    status, out, err = run_cli(argv, capsys)
    assert status == 0, err
    return json.loads(out)


def error_of(argv, capsys):
    status, out, err = run_cli(argv, capsys)
    assert status != 0
    return status, json.loads(err)["error"]


# ---------------------------------------------------------------- encoding

def test_encode_scalars():
    from fractions import Fraction

    assert encode(5) == "5"
    assert encode(True) is True
    assert encode(2.5) == 2.5
    assert encode(Fraction(24, 143)) == {"num": "24", "den": "143"}
    assert encode(complex(1, -2)) == {"re": 1.0, "im": -2.0}
    assert encode([1, (2, 3)]) == ["1", ["2", "3"]]
    assert encode({11: 2}) == {"11": "2"}
    with pytest.raises(TypeError):
        encode(object())


def test_solutions_csv_format():
    pair = SmoothPair(
        a=390, c=391,
        factorization_a={2: 1, 3: 1, 5: 1, 13: 1},
        factorization_c={17: 1, 23: 1},
    )
    text = solutions_csv([pair])
    assert text.splitlines() == [
        "a,c,factorization_a,factorization_c",
        "390,391,2^1*3^1*5^1*13^1,17^1*23^1",
    ]


# ------------------------------------------------------------------ census

def test_census_three_methods_agree(capsys):
    report = run_json(
        ["census", "--y", "30", "--k", "2", "--ell", "1",
         "--method", "exact,direct,characters"],
        capsys,
    )
    assert set(report) == {"config", "results", "timing", "version"}
    res = report["results"]
    counts = {r["method"]: r["count"] for r in res["census"]}
    assert counts == {"residue-dp": "5", "direct": "5", "characters": "5"}
    assert res["interval"]["recip_sum"] == {"num": "24", "den": "143"}
    assert res["interval"]["prime_count"] == "4"
    assert res["warnings"] == []
    for r in res["census"]:
        assert r["main_term"] == {"num": "384", "den": "143"}
        assert r["error_bound"]["applicable"] is True


def test_census_sampled_record(capsys):
    report = run_json(
        ["census", "--y", "30", "--k", "2", "--ell", "1",
         "--method", "sampled", "--samples", "5000", "--seed", "11"],
        capsys,
    )
    (rec,) = report["results"]["census"]
    assert rec["method"] == "sampled"
    assert isinstance(rec["count"], float)
    assert isinstance(rec["std_error"], float) and rec["std_error"] > 0


def test_census_argument_errors(capsys):
    status, err = error_of(["census", "--y", "30"], capsys)
    assert status == 2 and err["code"] == "validation"
    status, err = error_of(
        ["census", "--y", "30", "--k", "1", "--ell", "2"], capsys
    )
    assert status == 2
    status, err = error_of(
        ["census", "--y", "30", "--k", "2", "--ell", "1", "--method", "sampled"],
        capsys,
    )
    assert status == 2 and "samples" in err["message"]
    status, err = error_of(
        ["census", "--y", "30", "--k", "2", "--ell", "1", "--method", "psychic"],
        capsys,
    )
    assert status == 2


def test_census_empty_interval_warns(capsys):
    report = run_json(
        ["census", "--y", "3", "--k", "1", "--ell", "1", "--method", "exact"],
        capsys,
    )
    res = report["results"]
    assert res["warnings"] != []
    assert res["census"][0]["count"] == "0"
    assert res["census"][0]["empty_interval"] is True


def test_census_capacity_exit(capsys, monkeypatch):
    monkeypatch.setenv("SUNIT_MAX_SIEVE", "1000")
    status, err = error_of(
        ["census", "--y", "5000", "--k", "1", "--ell", "1", "--method", "exact"],
        capsys,
    )
    assert status == 3 and err["code"] == "capacity"


# --------------------------------------------------------------- construct

def test_construct_end_to_end(tmp_path, capsys):
    out = tmp_path / "run.json"
    report = run_json(
        ["construct", "--y", "30", "--k", "2", "--ell", "1",
         "--limit", "1000", "--out", str(out)],
        capsys,
    )
    res = report["results"]
    assert res["plan"] == {"k": "2", "ell": "1", "method": "explicit"}
    assert res["pair_count"] == "3"
    assert res["conversion"]["census"] == "5"
    assert res["conversion"]["ordered_per_pair"] == "2"
    assert res["conversion"]["lower_bound"] == {"num": "5", "den": "2"}
    assert res["conversion"]["holds"] is True
    assert res["histogram"]["popular"] == "30"
    assert res["histogram"]["pigeonhole_holds"] is True
    assert res["construction"]["u0"] == "30"
    assert res["construction"]["size"] == "9"
    sols = res["construction"]["solutions"]
    assert [s["a"] for s in sols] == ["390"]
    assert res["oracle_cross_check"]["all_found"] is True

    # artifacts: primary report, prime set, solution list
    assert json.loads(out.read_text()) == report
    s_payload = json.loads((tmp_path / "run.json.S.json").read_text())
    assert s_payload["u0"] == "30"
    assert s_payload["primes"] == ["2", "3", "5", "11", "13", "17", "19", "23", "29"]
    csv_text = (tmp_path / "run.json.solutions.csv").read_text()
    assert "390,391" in csv_text


def test_construct_planned_parameters_warn(capsys):
    report = run_json(["construct", "--y", "30"], capsys)
    res = report["results"]
    assert res["plan"]["method"] == "exponent-plan"
    assert res["plan"]["k"] == "2" and res["plan"]["ell"] == "1"
    assert any("clamped" in w for w in res["warnings"])


def test_construct_no_pairs_is_clean_exit(capsys):
    report = run_json(["construct", "--y", "22", "--k", "1", "--ell", "1"], capsys)
    res = report["results"]
    assert res["pairs"] == []
    assert res["histogram"] is None
    assert res["construction"] is None
    assert any("nothing to construct" in w for w in res["warnings"])


def test_construct_csv_artifact(tmp_path, capsys):
    out = tmp_path / "sols.csv"
    run_json(
        ["construct", "--y", "30", "--k", "2", "--ell", "1",
         "--format", "csv", "--out", str(out)],
        capsys,
    )
    lines = out.read_text().splitlines()
    assert lines[0] == "a,c,factorization_a,factorization_c"
    assert lines[1].startswith("390,391,")


def test_format_rules(capsys):
    status, err = error_of(
        ["construct", "--y", "30", "--k", "2", "--ell", "1", "--format", "csv"],
        capsys,
    )
    assert status == 2 and "--out" in err["message"]
    status, err = error_of(
        ["census", "--y", "30", "--k", "2", "--ell", "1", "--format", "csv",
         "--out", "x.csv"],
        capsys,
    )
    assert status == 2


# ------------------------------------------------------------------ verify

def test_verify_inline_primes(capsys):
    report = run_json(
        ["verify", "--s-primes", "2,3", "--limit", "100", "--check-a", "8"],
        capsys,
    )
    res = report["results"]
    assert res["pair_count"] == "4"
    assert [p["a"] for p in res["pairs"]] == ["1", "2", "3", "8"]
    assert res["certificate"]["ok"] is True
    assert res["certificate"]["factorization_a"] == {"2": "3"}


def test_verify_round_trip_from_construct_artifact(tmp_path, capsys):
    out = tmp_path / "run.json"
    run_json(
        ["construct", "--y", "30", "--k", "2", "--ell", "1", "--out", str(out)],
        capsys,
    )
    report = run_json(
        ["verify", "--s-file", str(tmp_path / "run.json.S.json"),
         "--limit", "500"],
        capsys,
    )
    res = report["results"]
    assert res["pair_count"] == "70"
    assert res["s_primes"] == ["2", "3", "5", "11", "13", "17", "19", "23", "29"]
    # the constructed solution is inside the oracle list
    assert ["390", "391"] in [[p["a"], p["c"]] for p in res["pairs"]]


def test_verify_validation(capsys):
    status, err = error_of(["verify", "--s-primes", "2,3"], capsys)
    assert status == 2 and "limit" in err["message"]
    status, err = error_of(["verify", "--limit", "50"], capsys)
    assert status == 2
    status, err = error_of(
        ["verify", "--s-primes", "2,4", "--limit", "50"], capsys
    )
    assert status == 2 and "prime" in err["message"]


# ---------------------------------------------------------------- diagnose

def test_diagnose_moments_goldens(capsys):
    report = run_json(["diagnose", "moments", "--y", "20", "--t", "1"], capsys)
    res = report["results"]["moments"]
    assert res["2t"]["lhs_exact"] == "8"
    assert res["4t"]["lhs_exact"] == "20"
    assert res["2t"]["class_size"] == "1"


def test_diagnose_large_sieve_all_pass(capsys):
    report = run_json(
        ["diagnose", "large-sieve", "--seed", "5", "--trials", "40"], capsys
    )
    res = report["results"]["large_sieve"]
    for mode in ("single-modulus", "primitive-family"):
        assert res[mode]["trials"] == "40"
        assert res[mode]["passed"] == "40"
        assert res[mode]["failures"] == []
        assert res[mode]["max_lhs_over_rhs"] <= 1.0


def test_diagnose_qt_and_decomposition(capsys):
    report = run_json(["diagnose", "qt", "--y", "30", "--t", "2"], capsys)
    qt = report["results"]["qt"]
    assert qt["size"] == "3"
    assert qt["moduli"] == ["121", "143", "169"]
    assert qt["min_modulus"] == "121"
    assert qt["within_reference"] is True

    report = run_json(
        ["diagnose", "decomposition", "--y", "30", "--k", "2", "--ell", "1"],
        capsys,
    )
    dec = report["results"]["decomposition"]
    assert dec["principal"] == {"num": "44", "den": "15"}
    assert dec["phi_slack"]["within_hard"] is True
    assert dec["nonprincipal"]["census"] == "5"


def test_diagnose_all_skips_gracefully(capsys):
    report = run_json(["diagnose", "all"], capsys)
    res = report["results"]
    assert any("seed" in w for w in res["warnings"])
    assert any("--y" in w or "y" in w for w in res["warnings"])


def test_diagnose_tails_defaults_plan(capsys):
    report = run_json(["diagnose", "tails", "--y", "30"], capsys)
    res = report["results"]["tails"]
    assert set(res) == {"low", "high"}
    assert any("defaulted" in w for w in report["results"]["warnings"])


def test_diagnose_empty_interval(capsys):
    report = run_json(["diagnose", "moments", "--y", "3"], capsys)
    assert report["results"]["moments"] == {}
    assert report["results"]["warnings"] != []


# ------------------------------------------------------------- determinism

def test_reports_are_deterministic_modulo_timing(capsys):
    argv = ["census", "--y", "30", "--k", "2", "--ell", "1",
            "--method", "exact,characters,sampled",
            "--samples", "4000", "--seed", "9"]
    a = run_json(argv, capsys)
    b = run_json(argv, capsys)
    assert json.dumps(a["results"], sort_keys=True) == json.dumps(
        b["results"], sort_keys=True
    )
    assert a["config"] == b["config"]
