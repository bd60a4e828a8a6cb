"""CLI: subcommands, exit codes, formats, and the remote thin-client path."""

import json
from importlib import resources

import pytest

from soscert.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main

DATA = resources.files("soscert") / "data"


@pytest.fixture()
def ic_file(tmp_path):
    path = tmp_path / "IC.ideal"
    path.write_text((DATA / "objects" / "IC.ideal").read_text(encoding="utf-8"))
    return str(path)


@pytest.fixture()
def igamma_file(tmp_path):
    path = tmp_path / "IGamma.ideal"
    path.write_text((DATA / "objects" / "IGamma.ideal").read_text(encoding="utf-8"))
    return str(path)


def test_gb_prints_basis(ic_file, capsys):
    assert main(["gb", "--ideal", ic_file]) == EXIT_OK
    out = capsys.readouterr().out.strip().splitlines()
    assert out == ["v^2 - u*w", "u^2*v - w^2", "u^3 - v*w"]


def test_member_exit_codes(ic_file, capsys):
    assert main(["member", "--ideal", ic_file, "--poly", "u^5+u*v^3+w^3-3*u^2*v*w"]) == EXIT_OK
    assert "member" in capsys.readouterr().out
    assert main(["member", "--ideal", ic_file, "--poly", "u+1"]) == EXIT_FAIL


def test_member_local_complex_point(igamma_file, capsys):
    code = main(
        [
            "member-local",
            "--ideal",
            igamma_file,
            "--square",
            "--poly",
            "x^10+x^2*y^6+(z^2+1)^3-3*x^4*y^2*(z^2+1)",
            "--point",
            "0,0,i",
        ]
    )
    assert code == EXIT_FAIL
    assert "not_member" in capsys.readouterr().out


def test_quotient_and_dim(ic_file, capsys):
    assert main(["quotient", "--ideal", ic_file, "--square", "--poly", "u^5+u*v^3+w^3-3*u^2*v*w"]) == EXIT_OK
    assert capsys.readouterr().out.split() == ["w", "v", "u"]
    assert main(["dim", "--ideal", ic_file]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "1"


def test_non_sos_with_bare_variable_args(capsys):
    code = main(["non-sos", "--poly", "1+4*y^2*z^4+4*y^4*z^2-y^2*z^2", "--vars", "y", "z"])
    assert code == EXIT_OK
    assert "y^2*z^2" in capsys.readouterr().out
    assert main(["non-sos", "--poly", "x^2+y^2", "--vars", "x", "y"]) == EXIT_FAIL


def test_hessian(capsys):
    assert main(["hessian", "--vars", "x", "y", "--poly", "x^2*y"]) == EXIT_OK
    assert "[2*y, 2*x]" in capsys.readouterr().out


def test_cert_verification_commands(capsys, tmp_path):
    certs = DATA / "certs"
    assert main(["sos-verify", "--cert", str(certs / "g_identity.json")]) == EXIT_OK
    assert main(["sos-verify", "--cert", str(certs / "motzkin_attempt.json")]) == EXIT_FAIL
    assert main(["amgm-verify", "--cert", str(certs / "cxbad_amgm.json")]) == EXIT_OK
    assert main(["bad-point", "--cert", str(certs / "symb_bad_point.json")]) == EXIT_OK
    # kind mismatch is a usage error
    assert main(["sos-verify", "--cert", str(certs / "cxbad_amgm.json")]) == EXIT_USAGE


def test_cone_verify_from_file(tmp_path, capsys):
    cert = {
        "kind": "cone",
        "vars": ["x", "y"],
        "trunc": 8,
        "generators": ["x^2", "y^2"],
        "series": "x*y",
        "target": [1, 1],
    }
    path = tmp_path / "cone.json"
    path.write_text(json.dumps(cert))
    assert main(["cone-verify", "--cert", str(path)]) == EXIT_OK


def test_series_commands(capsys):
    assert main(["adic", "--vars", "x", "--series", "x^3", "--trunc", "6", "-r", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "1/2*x^2" in out and "residual: 0" in out
    assert main(["series-root", "--vars", "t", "--series", "1+t", "--trunc", "3", "-n", "2"]) == EXIT_OK
    assert main(["revert", "--var", "t", "--series", "t+t^2", "--trunc", "5"]) == EXIT_OK
    assert "5*t^4" in capsys.readouterr().out


def test_sample_counterexample_exit(capsys):
    code = main(["sample", "--vars", "x", "--poly=-x^2", "--box=-1:1", "--step", "1/2"])
    assert code == EXIT_FAIL
    assert "counterexample" in capsys.readouterr().out


def test_avoid_map(capsys):
    code = main(["avoid-map", "--avoid", "i,0,1", "--keep", "1,1,1"])
    assert code == EXIT_OK
    assert "min poly" in capsys.readouterr().out


def test_reproduce_subset_and_machine_format(capsys):
    assert main(["reproduce", "--claims", "symboleq,symb-membership"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "symboleq" in out and "PASS" in out
    assert main(["--format", "machine", "reproduce", "--claims", "symboleq"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["all_passed"] is True


def test_usage_errors(tmp_path, capsys):
    assert main(["gb"]) == EXIT_USAGE  # missing --ideal
    assert main(["member", "--ideal", "/nonexistent.ideal", "--poly", "x"]) == EXIT_USAGE
    bad = tmp_path / "bad.ideal"
    bad.write_text("vars: x\nx^\n")
    assert main(["gb", "--ideal", str(bad)]) == EXIT_USAGE
    err = capsys.readouterr().err
    assert "error:" in err
    assert main(["reproduce", "--claims", "nope"]) == EXIT_USAGE


def test_budget_exit_code(ic_file, monkeypatch):
    monkeypatch.setenv("SOSCERT_GB_BUDGET", "1")
    assert main(["gb", "--ideal", ic_file]) == EXIT_BUDGET


def test_server_mode_routes_through_http(ic_file, monkeypatch, capsys):
    """--server posts the same request models to a live app."""
    from fastapi.testclient import TestClient

    from soscert.service import app

    client = TestClient(app)

    def fake_post(url, json=None, timeout=None):
        return client.post(url.replace("http://fake", ""), json=json)

    monkeypatch.setattr("httpx.post", fake_post)
    code = main(["--server", "http://fake", "gb", "--ideal", ic_file])
    assert code == EXIT_OK
    out = capsys.readouterr().out.strip().splitlines()
    assert out == ["v^2 - u*w", "u^2*v - w^2", "u^3 - v*w"]


def test_cli_is_a_thin_adapter(ic_file, igamma_file, monkeypatch, capsys):
    """Remote and in-process invocations produce byte-identical output."""
    from fastapi.testclient import TestClient

    from soscert.service import app

    client = TestClient(app)

    def fake_post(url, json=None, timeout=None):
        return client.post(url.replace("http://fake", ""), json=json)

    monkeypatch.setattr("httpx.post", fake_post)
    commands = [
        ["gb", "--ideal", ic_file],
        ["dim", "--ideal", ic_file],
        [
            "member-local",
            "--ideal",
            igamma_file,
            "--square",
            "--poly",
            "x^10+x^2*y^6+(z^2+1)^3-3*x^4*y^2*(z^2+1)",
            "--point",
            "0,0,i",
        ],
        ["non-sos", "--poly", "1+4*y^2*z^4+4*y^4*z^2-y^2*z^2", "--vars", "y", "z"],
    ]
    for argv in commands:
        local_code = main(argv)
        local_out = capsys.readouterr().out
        remote_code = main(["--server", "http://fake"] + argv)
        remote_out = capsys.readouterr().out
        assert local_code == remote_code
        assert local_out == remote_out
