import json

import pytest
from click.testing import CliRunner

from ccs import parse
from ccs.cli import CliConfig, Repl, main
from ccs.lts import build_lts

VM_TEXT = "rec VM. coin.(ask-esp.(rec VM1. 'esp-coffee.VM) + ask-am.(rec VM2. 'am-coffee.VM))"


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args, input=None, env=None):
        return runner.invoke(main, list(args), input=input, env=env)

    return invoke


def test_trans_lists_all_transitions(run):
    r = run("trans", "a.0 | 'a.0")
    assert r.exit_code == 0
    assert r.output.splitlines() == [
        "a -> 0 | 'a.0",
        "'a -> a.0 | 0",
        "tau -> 0 | 0",
        "and no other transitions",
    ]


def test_trans_nil_and_restriction(run):
    assert run("trans", "0").output.strip() == "no transitions"
    r = run("--format", "json", "trans", "(a.0 | 'a.0) \\ {a}")
    assert json.loads(r.output) == [["tau", "(0 | 0) \\ {a}"]]


def test_trans_json_matches_lts_root_edges(run):
    text = "a.(b.0 | 'b.0) + tau.0 + 'c.0"
    pairs = json.loads(run("--format", "json", "trans", text).output)
    lts = build_lts(parse(text))
    assert pairs == [[str(u), lts.states[t].term] for u, t in lts.out_edges[0]]


def test_trans_errors_exit_2(run):
    for bad in ("a.(", "rec X. (X + a.0)", "a.X"):
        r = run("trans", bad)
        assert r.exit_code == 2
        assert "error:" in r.output
    assert run("--format", "dot", "trans", "0").exit_code == 2


def test_lts_formats(run):
    r = run("lts", VM_TEXT)
    assert r.exit_code == 0 and r.output.startswith("4 states, 5 edges")
    data = json.loads(run("--format", "json", "lts", VM_TEXT).output)
    assert len(data["states"]) == 4 and len(data["edges"]) == 5
    assert json.loads(run("--format", "json", "lts", "0").output) == {
        "root": 0,
        "states": [{"id": 0, "term": "0"}],
        "edges": [],
    }
    dot = run("--format", "dot", "lts", "0").output
    assert dot.count("shape=") == 1
    assert run("--format", "dot", "lts", VM_TEXT).output == run("--format", "dot", "lts", VM_TEXT).output


def test_state_limit_from_flag_and_env(run):
    assert run("--max-states", "100", "lts", "rec X. a.(X | X)").exit_code == 2
    r = run("lts", "rec X. a.(X | X)", env={"CCS_MAX_STATES": "50"})
    assert r.exit_code == 2 and "StateSpaceExceeded" in r.output
    assert run("--max-states", "0", "lts", "0").exit_code == 2


def test_eq_exit_codes(run):
    assert run("eq", "--strong", "a.0 + 0", "a.0").exit_code == 0
    assert run("eq", "--weak", "tau.a.0", "a.0").exit_code == 0
    assert run("eq", "--rooted", "tau.a.0", "a.0").exit_code == 1
    r = run("eq", "--strong", "a.b.0", "b.a.0")
    assert r.exit_code == 1 and "unmatched a move" in r.output
    assert run("eq", "a.(", "0").exit_code == 2


def test_eq_json(run):
    r = run("--format", "json", "eq", "a.b.0", "b.a.0")
    assert json.loads(r.output) == {
        "kind": "strong",
        "related": False,
        "blocks": [],
        "distinguishing": {"state": 0, "action": "a"},
    }
    r = run("--format", "json", "eq", "--weak", "tau.a.0", "a.0")
    assert json.loads(r.output)["related"] is True


def test_expand(run):
    r = run("expand", "a.0 | 'a.0")
    assert r.output.strip() == "a.(0 | 'a.0) + 'a.(a.0 | 0) + tau.(0 | 0)"
    assert run("expand", "a.0 | b.0").output.strip() == "a.(0 | b.0) + b.(a.0 | 0) + 0"
    assert run("expand", "--simplify-nil", "a.0 | b.0").output.strip() == "a.(0 | b.0) + b.(a.0 | 0)"
    r = run("expand", "--check", "(a.0 + b.0) | ('a.0 + tau.0)")
    assert r.exit_code == 0 and "check: strongly bisimilar" in r.output
    r = run("expand", "(a.0 + 0) | b.0")
    assert r.exit_code == 2 and "NotPrefixedSum" in r.output
    assert run("expand", "a.0").exit_code == 2
    data = json.loads(run("--format", "json", "expand", "--check", "a.0 | b.0").output)
    assert data == {"expansion": "a.(0 | b.0) + b.(a.0 | 0) + 0", "checked": True}


def test_laws(run):
    r = run("laws", "--law", "STRONG_PAR_PREF_SYNCR", "--samples", "20")
    assert r.exit_code == 0 and "PASS" in r.output
    assert run("laws", "--law", "NO_SUCH_LAW").exit_code == 2
    assert run("laws").exit_code == 2
    listing = run("laws", "--list").output.splitlines()
    assert len(listing) == 28


def test_laws_all_json_is_stable(run):
    args = ("--format", "json", "laws", "--all", "--samples", "5", "--seed", "7")
    first = run(*args)
    assert first.exit_code == 0
    rows = json.loads(first.output)
    assert len(rows) == 28 and all(row["ok"] for row in rows)
    assert run(*args).output == first.output


def test_traces(run):
    r = run("traces", "a.(tau.b.0 + c.0)", "--len", "2")
    assert r.output.splitlines() == ["(empty)", "a", "a b", "a c"]
    data = json.loads(run("--format", "json", "traces", "tau.'a.0", "--len", "1").output)
    assert data == [[], ["'a"]]


def test_term_from_file(run, tmp_path):
    f = tmp_path / "vm.ccs"
    f.write_text("# the coffee machine\nVM = coin.(ask-esp.'esp-coffee.VM + ask-am.'am-coffee.VM);\nVM\n")
    r = run("lts", f"@{f}")
    assert r.exit_code == 0 and r.output.startswith("4 states, 5 edges")
    assert run("trans", f"@{tmp_path / 'missing.ccs'}").exit_code == 2


def test_repl_session(run):
    r = run("repl", "a.0 | 'a.0", input="3\n9\nu\nu\nq\n")
    lines = r.output.splitlines()
    assert r.exit_code == 0
    assert "  [3] tau -> 0 | 0" in lines
    assert any("current: 0 | 0" in l for l in lines)
    assert any("no transition 9" in l for l in lines)
    assert any("nothing to undo" in l for l in lines)
    assert run("repl", "rec X. (X + a.0)", input="q\n").exit_code == 2


def test_repl_object():
    repl = Repl(parse("a.0 | 'a.0"))
    assert len(repl.options()) == 3
    assert repl.choose(3)
    assert repl.current == parse("0 | 0")
    assert repl.options() == ()
    assert not repl.choose(1)
    assert repl.current == parse("0 | 0")
    assert repl.undo() and repl.current == parse("a.0 | 'a.0")
    assert not repl.undo()
    assert not repl.choose(0) and not repl.choose(4)


def test_cli_config_validation():
    with pytest.raises(ValueError):
        CliConfig(max_states=0)
    with pytest.raises(ValueError):
        CliConfig(output_format="xml")
    assert CliConfig().limits.max_states == 10000
