"""End-to-end command line checks through click's test runner."""

import json
import os

import pytest
from click.testing import CliRunner

from hypertrees.cli import main

SAMPLE = os.path.join(os.path.dirname(__file__), "data", "sample5.txt")


@pytest.fixture()
def runner():
    return CliRunner()


def test_version(runner):
    result = runner.invoke(main, ["--version"])
    assert result.exit_code == 0


# -- count ------------------------------------------------------------------------


def test_count_profile_text(runner):
    result = runner.invoke(main, ["count", "--n", "6", "--profile", "u2=3,u3=1"])
    assert result.exit_code == 0
    assert "rooted=12960" in result.output
    assert "unrooted=2160" in result.output


def test_count_profile_json(runner):
    result = runner.invoke(
        main, ["count", "--n", "6", "--profile", "u2=3,u3=1", "--json"]
    )
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload == {
        "n": 6,
        "profile": {"u2": 3, "u3": 1},
        "rooted": 12960,
        "unrooted": 2160,
    }


def test_count_edges(runner):
    result = runner.invoke(main, ["count", "--n", "3", "--edges", "2", "--json"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload == {"n": 3, "edges": 2, "rooted": 9, "unrooted": 3}


def test_count_usage_errors(runner):
    assert runner.invoke(main, ["count", "--n", "3"]).exit_code == 2
    assert (
        runner.invoke(
            main, ["count", "--n", "3", "--profile", "u2=1", "--edges", "1"]
        ).exit_code
        == 2
    )
    assert runner.invoke(main, ["count", "--n", "0", "--edges", "1"]).exit_code == 2
    assert (
        runner.invoke(main, ["count", "--n", "3", "--profile", "v2=1"]).exit_code == 2
    )
    assert (
        runner.invoke(main, ["count", "--n", "3", "--edges", "-1"]).exit_code == 2
    )


# -- table ------------------------------------------------------------------------


def test_table_text(runner):
    result = runner.invoke(main, ["table", "--max-n", "4"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "[t/1!]T = 1"
    assert lines[3].endswith("= u₄ + 12u₂u₃ + 16u₂³")
    assert len(lines) == 4


def test_table_json(runner):
    result = runner.invoke(main, ["table", "--max-n", "4", "--json"])
    assert result.exit_code == 0
    rows = json.loads(result.output)["rows"]
    assert len(rows) == 4
    assert rows[0] == {"n": 1, "terms": [{"profile": {}, "coefficient": 1}]}
    assert {"profile": {"u2": 1, "u3": 1}, "coefficient": 12} in rows[3]["terms"]


def test_table_rejects_bad_bound(runner):
    assert runner.invoke(main, ["table", "--max-n", "0"]).exit_code == 2


# -- oracle -----------------------------------------------------------------------


def test_oracle_check_file(runner):
    result = runner.invoke(main, ["oracle", "--check", SAMPLE])
    assert result.exit_code == 0
    assert "connected=True" in result.output
    assert "hypertree=False" in result.output
    assert "magnitude=10" in result.output


def test_oracle_check_file_json(runner):
    result = runner.invoke(main, ["oracle", "--check", SAMPLE, "--json"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload == {
        "n": 5,
        "profile": {"u2": 4, "u3": 3},
        "magnitude": 10,
        "connected": True,
        "hypertree": False,
    }


def test_oracle_single_profile(runner):
    result = runner.invoke(main, ["oracle", "--n", "3", "--profile", "u2=2", "--json"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["kernel"] in ("cython", "python")
    assert payload["rows"] == [
        {
            "n": 3,
            "profile": {"u2": 2},
            "all": 9,
            "connected": 6,
            "hypertree": 6,
        }
    ]


def test_oracle_sweep(runner):
    result = runner.invoke(main, ["oracle", "--n", "3", "--max-magnitude", "2"])
    assert result.exit_code == 0
    # profiles: empty, u2, u2^2, u3
    assert len(result.output.splitlines()) == 4


def test_oracle_budget_exit(runner):
    result = runner.invoke(
        main, ["oracle", "--n", "6", "--profile", "u2=8", "--budget", "1000"]
    )
    assert result.exit_code == 3
    assert "budget" in result.output.lower() or "budget" in (result.stderr or "").lower()


def test_oracle_usage_errors(runner):
    assert runner.invoke(main, ["oracle"]).exit_code == 2
    assert runner.invoke(main, ["oracle", "--n", "3"]).exit_code == 2
    assert (
        runner.invoke(
            main,
            ["oracle", "--n", "3", "--profile", "u2=1", "--max-magnitude", "2"],
        ).exit_code
        == 2
    )
    assert (
        runner.invoke(main, ["oracle", "--n", "5", "--n-max", "4", "--profile", "u2=1"]).exit_code
        == 2
    )


# -- verify -----------------------------------------------------------------------

VERIFY_SMALL = [
    "verify",
    "--t-max", "3",
    "--z-max", "3",
    "--max-edge-size", "4",
    "--trials", "3",
    "--sub-trials", "2",
]


def test_verify_small_green(runner):
    result = runner.invoke(main, VERIFY_SMALL)
    assert result.exit_code == 0, result.output
    assert "all checks passed" in result.output
    assert "FAIL" not in result.output


def test_verify_json_payload(runner):
    result = runner.invoke(main, VERIFY_SMALL + ["--json"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["ok"] is True
    assert payload["identities"]["ok"] is True
    # edge recursions clamp to the u2..u4 alphabet here, so 15 of the 18
    assert len(payload["identities"]["checks"]) == 15
    assert payload["vanishing"]["ok"] is True
    assert payload["diagonal"]["ok"] is True
    assert payload["substitution"]["ok"] is True
    assert len(payload["vanishing"]["rows"]) == 3
    assert len(payload["substitution"]["rows"]) == 2


def test_verify_inject_fault_fails(runner):
    result = runner.invoke(main, VERIFY_SMALL + ["--inject-fault"])
    assert result.exit_code == 1
    assert "FAIL" in result.output


def test_verify_bound_validation(runner):
    r = runner.invoke(main, ["verify", "--t-max", "4", "--magnitude-max", "2"])
    assert r.exit_code == 2
    r = runner.invoke(main, ["verify", "--t-max", "3", "--max-edge-size", "3"])
    assert r.exit_code == 2
    r = runner.invoke(main, ["verify", "--t-max", "0"])
    assert r.exit_code == 2


# -- psi --------------------------------------------------------------------------


def _write_phi(tmp_path, entries):
    path = tmp_path / "phi.json"
    path.write_text(json.dumps({"entries": entries}), encoding="utf-8")
    return str(path)


def test_psi_single_variable(runner, tmp_path):
    path = _write_phi(tmp_path, [{"m": 1, "n": 0, "num": 1, "den": 1}])
    result = runner.invoke(main, ["psi", path, "--t-max", "5", "--z-max", "5", "--json"])
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert payload["log_t_scale"] == {"num": 0, "den": 1}
    assert payload["psi"] == [
        {"power": 0, "num": 1, "den": 1},
        {"power": 1, "num": 1, "den": 1},
        {"power": 2, "num": 2, "den": 1},
        {"power": 3, "num": 16, "den": 3},
        {"power": 4, "num": 50, "den": 3},
    ]
    assert payload["vanishing"]["ok"] is True
    assert payload["diagonal_ok"] is True
    assert {"u": 0, "v": 0, "num": 1, "den": 1} in payload["psi_uv"]


def test_psi_reports_log_scale(runner, tmp_path):
    path = _write_phi(
        tmp_path,
        [{"m": 0, "n": 0, "num": 2, "den": 1}, {"m": 1, "n": 0, "num": 1, "den": 1}],
    )
    result = runner.invoke(main, ["psi", path, "--t-max", "4", "--z-max", "4"])
    assert result.exit_code == 0, result.output
    assert "log t-scale: 2" in result.output
    json_result = runner.invoke(
        main, ["psi", path, "--t-max", "4", "--z-max", "4", "--json"]
    )
    assert json.loads(json_result.output)["log_t_scale"] == {"num": 2, "den": 1}


def test_psi_bad_inputs(runner, tmp_path):
    bad = tmp_path / "phi.json"
    bad.write_text("{\"entries\": [{\"m\": -1}]}", encoding="utf-8")
    assert runner.invoke(main, ["psi", str(bad)]).exit_code == 2
    assert runner.invoke(main, ["psi", str(tmp_path / "missing.json")]).exit_code == 2
    good = _write_phi(tmp_path, [{"m": 1, "n": 0, "num": 1, "den": 1}])
    assert (
        runner.invoke(main, ["psi", good, "--t-max", "3", "--order", "5"]).exit_code
        == 2
    )
