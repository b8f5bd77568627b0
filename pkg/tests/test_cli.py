import json
import subprocess
import sys

import pytest

from steinitz import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_classgroup(capsys):
    code, data = run_json(capsys, "classgroup", "-d", "-5")
    assert code == 0
    assert data["invariant_factors"] == [2] and data["order"] == 2
    assert [f["form"] for f in data["forms"]] == [[1, 0, 5], [2, 2, 3]]


def test_realizable_c2xc2(capsys):
    code, data = run_json(capsys, "realizable", "-d", "-5", "-g", "2,2")
    assert code == 0 and data["exact"] is True and data["value"] == [[1]]


def test_realizable_a4(capsys):
    code, data = run_json(capsys, "realizable", "-d", "-23", "--special", "a4")
    assert code == 0 and data["exact"] and data["class_group"] == [3] and data["value"] == [[1]]


def test_realizable_specials(capsys):
    for special in ("d2n:9", "c2vec:2,3", "c2vec:3,3,3"):
        code, data = run_json(capsys, "realizable", "-d", "-14", "--special", special)
        assert code == 0 and data["exact"]


def test_group_is_normalized(capsys):
    _, a = run_json(capsys, "realizable", "-d", "-14", "-g", "2,4")
    _, b = run_json(capsys, "realizable", "-d", "-14", "-g", "4,2")
    assert a == b and a["group"] == "C(4) x C(2)"


def test_printed_variant(capsys):
    code, data = run_json(capsys, "realizable", "-d", "-17", "-g", "4,2", "--printed-variant")
    assert code == 0 and data["variants_differ"] is True
    assert data["printed_variant"]["lower_order"] == 1


def test_wgroup(capsys):
    code, data = run_json(capsys, "wgroup", "-d", "-5", "-m", "3")
    assert code == 0 and data["stabilized"] and data["order"] == 2
    assert data["witnesses"][0]["p"] == 7
    _, pm = run_json(capsys, "wgroup", "-d", "-5", "-m", "4", "--pm")
    assert pm["residues"] == [1, 3]


def test_require_stable(capsys):
    code, data = run_json(capsys, "wgroup", "-d", "-65", "-m", "16", "--window", "1000", "--max-norm", "500",
                          "--require-stable")
    assert code == 3 and data["stabilized"] is False
    code, _ = run_json(capsys, "wgroup", "-d", "-65", "-m", "16", "--window", "1000", "--max-norm", "500")
    assert code == 0


def test_verify(capsys):
    code, data = run_json(capsys, "verify", "-d", "-5", "-g", "2", "--bound", "100")
    assert code == 0 and data["certified"] and data["realized"] == [[1]]


def test_enumerate(capsys):
    code, data = run_json(capsys, "enumerate", "-d", "-163", "-g", "2", "--bound", "30")
    assert code == 0 and data["realized"] == [] and data["count"] == len(data["samples"])


def test_verify_failure_exit_code(capsys, monkeypatch):
    from steinitz.engine import RealizableInterval

    def shrunk(k, G, two_oracle=None, policy=None):
        cg = k.class_group()
        return RealizableInterval(cg.trivial(), cg.trivial())

    monkeypatch.setattr(cli, "realizable", shrunk)
    code, data = run_json(capsys, "verify", "-d", "-5", "-g", "2", "--bound", "60")
    assert code == 2 and data["failure"] == "THEOREM_CONTRADICTION"


@pytest.mark.parametrize("argv", [
    ["realizable", "-d", "-5", "-g", "x"],
    ["realizable", "-g", "2"],
    ["realizable", "-d", "5", "-g", "2"],
    ["realizable", "-d", "-20", "-g", "2"],
    ["realizable", "-d", "-5", "--special", "s4"],
    ["realizable", "-d", "-5", "--special", "c2vec:1,3"],
    ["enumerate", "-d", "-5", "-g", "4"],
    ["wgroup", "-d", "-5"],
    ["bogus"],
    ["wgroup", "-d", "-5", "-m", "3", "--window", "0"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as e:
        sys.exit(cli.main(argv))
    assert e.value.code == 1


def test_json_is_deterministic(capsys):
    _, a, _ = run(capsys, "realizable", "-d", "-65", "-g", "12,2")
    _, b, _ = run(capsys, "realizable", "-d", "-65", "-g", "12,2")
    assert a == b


def test_text_matches_json(capsys):
    _, data = run_json(capsys, "realizable", "-d", "-21", "-g", "4")
    _, text, _ = run(capsys, "realizable", "-d", "-21", "-g", "4", "--format", "text")
    lines = dict(line.split(": ", 1) for line in text.strip().splitlines())
    assert set(lines) == set(data)
    assert all(json.loads(lines[key]) == data[key] for key in data)


def test_selftest(capsys):
    code, data = run_json(capsys, "selftest", "--limit", "300")
    assert code == 0 and data["ok"]
    assert data["gcd_divisibility"]["failures"] == 0


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "steinitz", "classgroup", "-d", "-23"], capture_output=True,
                         text=True, check=True)
    assert json.loads(out.stdout)["invariant_factors"] == [3]


def test_help_embeds_schemas(capsys):
    with pytest.raises(SystemExit):
        cli.main(["--help"])
    assert "samples: [{alpha: [a,b], disc_norm, class: [..]}]" in capsys.readouterr().out
