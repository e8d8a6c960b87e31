import json

from braidbench.braidlike_tm import Configuration, parse_btm, successors
from braidbench.cli import main

ADDER = "counters 1\n0: add 0\n1: halt\n"
TRIVIAL_REACH = "states 2\nsymbols 2\nstart 0\naccept\ntarget 0\ndeterministic false\n"
GAME = "timed t0 t1\nimmune m0\nstart m0 t0\nspeed 2\nmove m0 t0 m0 t1\ngoal m0 t1\n"


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_bisim_pass(tmp_path, capsys):
    code = main(["bisim", write(tmp_path, "adder.cm", ADDER)])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("pass:")


def test_btm_reach_trivial(tmp_path, capsys):
    code = main(["btm-reach", write(tmp_path, "t.btm", TRIVIAL_REACH)])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("reached")


def test_bounds_two_states(capsys):
    assert main(["bounds", "--states", "2"]) == 0
    assert capsys.readouterr().out.strip() == "det=72 nondet=24576"


def test_unknown_subcommand_exits_one(capsys):
    assert main(["frobnicate"]) == 1
    assert "error" in capsys.readouterr().err


def test_missing_file_exits_one(capsys):
    assert main(["cm-run", "/no/such/file.cm"]) == 1


def test_parse_error_reports_line(tmp_path, capsys):
    path = write(tmp_path, "bad.cm", "counters 1\n0: frob 0\n")
    assert main(["cm-run", path]) == 1
    assert "line 2" in capsys.readouterr().err


def test_cm_run_text_and_json(tmp_path, capsys):
    path = write(tmp_path, "adder.cm", ADDER)
    assert main(["cm-run", path]) == 0
    assert "halted" in capsys.readouterr().out
    assert main(["--format", "json", "cm-run", path]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["verdict"] == "halted"
    assert obj["counters"] == [1]


def test_btm_decide(tmp_path, capsys):
    drifter = "states 1\nsymbols 1\nstart 0\naccept\ndeterministic true\ntrans 0 0 right 0\n"
    assert main(["btm-decide", write(tmp_path, "d.btm", drifter)]) == 0
    assert capsys.readouterr().out.strip() == "loop"


def test_btm_decide_with_input(tmp_path, capsys):
    scanner = (
        "states 3\nsymbols 3\nstart 0\naccept 2\ndeterministic true\n"
        "trans 0 1 right 0\ntrans 0 2 right 1\n"
        "trans 1 1 right 0\ntrans 1 2 right 1\ntrans 1 0 right 2\n"
    )
    path = write(tmp_path, "scan.btm", scanner)
    assert main(["btm-decide", path, "--input", "12"]) == 0
    assert capsys.readouterr().out.strip() == "accept"
    assert main(["btm-decide", path, "--input", "21"]) == 0
    assert capsys.readouterr().out.strip() == "reject"


def test_btm_oracle(tmp_path, capsys):
    assert main(["btm-oracle", write(tmp_path, "t.btm", TRIVIAL_REACH)]) == 0
    assert "reached" in capsys.readouterr().out


def test_trace_file_replays(tmp_path, capsys):
    reach = (
        "states 3\nsymbols 2\nstart 0\naccept\ntarget 2\n"
        "trans 0 0 write 1 1\ntrans 1 1 right 2\n"
    )
    btm = write(tmp_path, "r.btm", reach)
    trace_path = tmp_path / "trace.json"
    assert main(["--trace", str(trace_path), "btm-reach", btm]) == 0
    capsys.readouterr()
    obj = json.loads(trace_path.read_text())
    assert obj["verdict"] == "reached"
    spec = parse_btm(reach)
    confs = [Configuration(w["state"], w["head"], tuple(w["tape"]))
             for w in obj["witness"]]
    for cur, nxt in zip(confs, confs[1:]):
        assert any(x == nxt for x in successors(spec, cur))
    assert confs[-1].state == spec.target_state


def test_compile_sim_dot_pipeline(tmp_path, capsys):
    cm_path = write(tmp_path, "adder.cm", ADDER)
    level_path = str(tmp_path / "adder.json")
    assert main(["cm-compile", cm_path, "-o", level_path]) == 0
    capsys.readouterr()
    assert main(["level-sim", level_path]) == 0
    assert "solved" in capsys.readouterr().out
    assert main(["level-dot", level_path]) == 0
    assert capsys.readouterr().out.startswith("digraph level {")


def test_game_to_btm_round_trip(tmp_path, capsys):
    path = write(tmp_path, "g.game", GAME)
    assert main(["game-to-btm", path]) == 0
    out = capsys.readouterr().out
    spec = parse_btm(out)
    assert spec.target_state is not None
    assert not spec.deterministic


def test_bad_input_symbols_exit_one(tmp_path, capsys):
    drifter = "states 1\nsymbols 1\nstart 0\naccept\ndeterministic true\n"
    assert main(["btm-decide", write(tmp_path, "d.btm", drifter), "--input", "xy"]) == 1


def test_bounds_rejects_nonpositive(capsys):
    assert main(["bounds", "--states", "0"]) == 1
