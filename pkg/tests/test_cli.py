import csv
import io
import json
import math

import pytest

from rmtenergy import cli
from rmtenergy import closedform as cf


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


@pytest.mark.parametrize("text, expected", [
    ("1..4", [1, 2, 3, 4]), ("1,2,4,8", [1, 2, 4, 8]), ("1..3,8", [1, 2, 3, 8]), ([2, 5], [2, 5]),
])
def test_parse_n_list(text, expected):
    assert cli.parse_n_list(text) == expected


@pytest.mark.parametrize("text", ["", "3,2", "1,1", "a", "0..2"])
def test_parse_n_list_rejects(text):
    with pytest.raises(cli.UsageError):
        cli.parse_n_list(text)


def test_closed_form_gue(capsys):
    code, out, _ = run(capsys, "closed-form", "--ensemble", "gue", "--n", "1..10")
    assert code == 0
    table = rows(out)
    assert len(table) == 10
    pen = [float(r["penalized"]) for r in table]
    assert all(b < a for a, b in zip(pen, pen[1:]))
    assert list(table[0]) == ["n", "raw", "moment", "penalized", "delta", "delta2"]


def test_closed_form_lue_twice_gue(capsys):
    _, out, _ = run(capsys, "closed-form", "--ensemble", "lue", "--n", "5")
    assert float(rows(out)[0]["penalized"]) == 2 * cf.gue_energy(5).penalized


def test_closed_form_ginibre_n1(capsys):
    _, out, _ = run(capsys, "closed-form", "--ensemble", "ginibre", "--n", "1")
    diff = float(rows(out)[0]["penalized"]) - cf.gue_energy(1).penalized
    assert diff == pytest.approx((1 - math.log(2)) / 2, abs=1e-12)


def test_closed_form_json_roundtrip(capsys):
    _, out, _ = run(capsys, "closed-form", "--ensemble", "gue", "--n", "2,3", "--format", "json")
    doc = json.loads(out)
    assert doc["command"] == "closed-form"
    assert [r["n"] for r in doc["rows"]] == [2, 3]
    assert set(doc["rows"][0]) == set(doc["columns"])
    assert doc["rows"][0]["penalized"] == cf.gue_energy(2).penalized


def test_bad_ensemble_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["closed-form", "--ensemble", "goe", "--n", "3"])
    assert info.value.code == 2
    assert run(capsys, "closed-form", "--ensemble", "gue", "--n", "3,2")[0] == 2
    assert run(capsys, "closed-form", "--ensemble", "gue")[0] == 2


@pytest.mark.parametrize("ensemble", ["gue", "ginibre", "lue"])
def test_quadrature_check(capsys, ensemble):
    code, out, _ = run(capsys, "quadrature-check", "--ensemble", ensemble, "--n", "1..5")
    assert code == 0
    table = rows(out)
    assert len(table) == 5
    assert all(r["pass"] == "True" and float(r["abs_diff"]) < 1e-6 for r in table)


def test_quadrature_check_limits_n(capsys):
    assert run(capsys, "quadrature-check", "--ensemble", "gue", "--n", "13")[0] == 2


def test_identities_calcul_gue(capsys):
    code, out, _ = run(capsys, "identities", "--only", "calcul-gue", "--n-max", "30")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 30
    assert all(json.loads(x)["verdict"] == "pass" for x in lines)


def test_identities_lue_integrals(capsys):
    code, out, _ = run(capsys, "identities", "--only", "lue-integrals")
    assert code == 0
    first = json.loads(out.splitlines()[0])
    assert first["rhs"][0] == pytest.approx(2 * math.log(2))


def test_identities_default_run(capsys):
    code, out, err = run(capsys, "identities")
    assert code == 0 and err == ""
    assert all(json.loads(x)["verdict"] == "pass" for x in out.splitlines())


def test_identities_csv_and_unknown(capsys):
    code, out, _ = run(capsys, "identities", "--only", "pk", "--n-max", "3", "--format", "csv")
    assert code == 0 and len(rows(out)) == 3
    assert run(capsys, "identities", "--only", "nope")[0] == 2


def test_identity_failure_exit_code(capsys, monkeypatch):
    from rmtenergy import identities
    bad = identities.IdentityReport("demo", (1,), 1.0, 2.0, 1.0, 0.0, identities.QUADRATURE)
    monkeypatch.setattr(identities, "run_suite", lambda only=None, n_max=None: [bad])
    code, out, err = run(capsys, "identities")
    assert code == 1 and "FAIL" in err and "demo" in err


def test_mc_schema_and_determinism(tmp_path, capsys):
    args = ["mc", "--model", "wigner", "--dist", "rademacher", "--n", "1,2,4,8", "--replicas", "400", "--seed", "7"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(args + ["--output", str(a)]) == 0
    assert cli.main(args + ["--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    raw = a.read_bytes()
    assert b"\r" not in raw
    assert raw.decode("utf-8").splitlines()[0] == ",".join(cli.MC_COLUMNS)
    assert [r["n"] for r in rows(raw.decode())] == ["1", "2", "4", "8"]


def test_mc_workers_do_not_change_output(tmp_path, monkeypatch):
    args = ["mc", "--model", "iid", "--dist", "gaussian-complex", "--n", "2,3", "--replicas", "40", "--seed", "1"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    cli.main(args + ["--output", str(a), "--workers", "1"])
    monkeypatch.setenv("LOGENERGY_THREADS", "2")
    cli.main(args + ["--output", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_mc_beta_hermite_reference(capsys):
    code, out, _ = run(capsys, "mc", "--model", "beta-hermite", "--beta", "2", "--n", "4", "--replicas", "5000",
                       "--format", "json")
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert row["reference"] == cf.gue_energy(4).penalized
    assert abs(row["penalized"] - row["reference"]) < 3 * row["penalized_stderr"]


def test_mc_real_ginibre_note(capsys):
    code, _, err = run(capsys, "mc", "--model", "iid", "--dist", "sgg", "--d", "1", "--p", "2", "--n", "2",
                       "--replicas", "200")
    assert code == 0 and "real Ginibre" in err


@pytest.mark.parametrize("argv", [
    ["mc", "--model", "wigner", "--n", "2", "--replicas", "3", "--dist", "rademacher"],
    ["mc", "--model", "wigner", "--n", "2", "--replicas", "4"],
    ["mc", "--model", "goe", "--n", "2"],
    ["mc", "--model", "wigner", "--dist", "heavy", "--alpha", "2", "--n", "2"],
])
def test_mc_usage_errors(argv, capsys):
    assert run(capsys, *argv)[0] == 2


def test_mc_estimation_failure_exit_code(capsys, monkeypatch):
    from rmtenergy.errors import EstimationError

    def boom(*a, **k):
        raise EstimationError("all pairs collided")
    monkeypatch.setattr(cli, "estimate_mean_energy", boom)
    assert run(capsys, "mc", "--model", "gue", "--n", "2", "--replicas", "4")[0] == 3


def test_config_merging(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"ensemble": "lue", "n": "1..3", "format": "json"}))
    _, out, _ = run(capsys, "closed-form", "--config", str(cfg))
    assert [r["n"] for r in json.loads(out)["rows"]] == [1, 2, 3]
    _, out, _ = run(capsys, "closed-form", "--config", str(cfg), "--n", "4", "--format", "csv")
    assert [r["n"] for r in rows(out)] == ["4"]
    cfg.write_text(json.dumps({"bogus": 1}))
    assert run(capsys, "closed-form", "--config", str(cfg), "--ensemble", "gue", "--n", "1")[0] == 2
