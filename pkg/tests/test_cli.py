import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from threepage.cli import main

from reference import TREFOIL

SCHEMA = json.loads(resources.files("threepage").joinpath("schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(out):
    objs = [json.loads(line) for line in out.splitlines() if line.strip()]
    for o in objs:
        jsonschema.validate(o, SCHEMA)
    return objs


@pytest.mark.parametrize("argv", [
    ["parse", "a0 b1 c2"],
    ["balance", "a0 c0", "a0 b1"],
    ["beta", TREFOIL],
    ["abelian", "a0 c0 x4_1"],
    ["mirror", "--mode", "nonrigid", "a0 b0"],
    ["shift", "-s", "2", "a0 d1"],
    ["prove", "b0 d0", ""],
    ["phi", "sig1 inv1"],
    ["pi1", "--simplify", TREFOIL],
    ["fingerprint", "a0 c0"],
    ["spq", "3", "1"],
    ["theta", "3"],
    ["construct", "--op", "vertex", "a0 c0", "a0 c0"],
    ["tl-bound", TREFOIL],
])
def test_json_output_matches_schema(capsys, argv):
    code, out, err = run(capsys, "--json", *argv)
    assert code == 0, err
    assert records(out)


def test_options_after_the_subcommand(capsys):
    code, out, _ = run(capsys, "parse", "--json", "a0 c0")
    assert code == 0
    (o,) = records(out)
    assert o["balanced"] and o["length"] == 2


def test_text_parse_round_trips(capsys):
    code, out, _ = run(capsys, "parse", TREFOIL)
    assert code == 0 and out.strip() == TREFOIL


def test_stdin_input(capsys, monkeypatch):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO("a0 c0\nb0 d0\n"))
    code, out, _ = run(capsys, "--json", "balance", "-")
    assert code == 0
    assert [o["balanced"] for o in records(out)] == [True, False]


def test_unbalanced_reports_first_failure(capsys):
    code, out, _ = run(capsys, "--json", "balance", "b0 d0")
    (o,) = records(out)
    assert code == 0 and o["balanced"] is False and o["page"] is not None


def test_prove_exit_codes(capsys):
    assert run(capsys, "prove", "b0 d0", "")[0] == 0
    code, out, _ = run(capsys, "--json", "prove", "a0", "c0")
    (o,) = records(out)
    assert code == 1 and o["verdict"] == "Refuted"
    code, out, _ = run(capsys, "--json", "--max-states", "3", "prove", "a0 b1 c2 d0", "d0 c2 b1 a0")
    assert code == 1 and json.loads(out)["verdict"] in ("Unknown", "Refuted")


def test_domain_errors_exit_1(capsys):
    code, _, err = run(capsys, "parse", "q7")
    assert code == 1 and err.startswith("error:")
    code, _, err = run(capsys, "pi1", "a0 b1")
    assert code == 1
    code, _, err = run(capsys, "census", "--max-ar", "20")
    assert code == 1 and "cap" in err


def test_usage_errors_exit_2(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "spq", "x", "1")[0] == 2
    assert run(capsys, "--max-states", "0", "parse", "a0")[0] == 2


def test_census_json_lines(capsys):
    code, out, _ = run(capsys, "--json", "census", "--max-ar", "4")
    assert code == 0
    objs = records(out)
    assert {o["category"] for o in objs} == {"knots", "links"}
    assert min(o["ar"] for o in objs) == 2


def test_census_is_deterministic(capsys):
    a = run(capsys, "--json", "--jobs", "1", "census", "--max-ar", "4")[1]
    b = run(capsys, "--json", "--jobs", "1", "census", "--max-ar", "4")[1]
    assert a == b


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "threepage", "--json", "spq", "2", "1"],
                       capture_output=True, text=True, timeout=60)
    assert r.returncode == 0
    jsonschema.validate(json.loads(r.stdout), SCHEMA)
