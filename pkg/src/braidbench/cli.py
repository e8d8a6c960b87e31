"""Command-line front end.

Exit codes: 0 a verdict was produced, 1 usage or parse error, 2 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import counter_machine as cm
from . import gadget_compiler as gc
from . import rewind_timeline as rt
from .braidlike_tm import BTMParseError, format_btm, parse_btm
from .oracle_sim import det_behavior_oracle, reach_bfs, read_only_oracle
from .tour_guide import (
    GuideInvariantError,
    decide_det_braidlike,
    decide_read_only,
    decide_reachability,
    det_guide_bound,
    nondet_guide_bound,
)

DEFAULT_MAX_STEPS = 100_000


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser():
    p = _Parser(prog="braidbench", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    p.add_argument("--max-cells", type=int, default=None,
                   help="cell cap; defaults to the applicable guide bound + 1")
    p.add_argument("--trace", metavar="PATH", help="write the witness trace as JSON")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("cm-run", help="run a counter program")
    s.add_argument("file")
    s = sub.add_parser("cm-compile", help="compile a counter program to level JSON")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s = sub.add_parser("level-sim", help="run a level JSON file")
    s.add_argument("file")
    s = sub.add_parser("level-dot", help="export a level JSON file as DOT")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s = sub.add_parser("btm-decide", help="decide a deterministic braidlike machine")
    s.add_argument("file")
    s.add_argument("--input", default=None,
                   help="input symbols (e.g. 0110) for the read-only decider")
    s = sub.add_parser("btm-reach", help="decide target-state reachability")
    s.add_argument("file")
    s.add_argument("--prune", action="store_true",
                   help="experimental guide-chain pruning accelerator")
    s = sub.add_parser("btm-oracle", help="brute-force behavior oracle")
    s.add_argument("file")
    s.add_argument("--input", default=None,
                   help="input symbols for the read-only oracle")
    s = sub.add_parser("bounds", help="print the exact guide-count bounds")
    s.add_argument("--states", type=int, required=True)
    s = sub.add_parser("game-to-btm", help="encode a game spec as a .btm machine")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s = sub.add_parser("bisim", help="bisimulate a counter program against its compiled level")
    s.add_argument("file")
    return p


def _read(path):
    try:
        with open(path) as f:
            return f.read()
    except OSError as e:
        raise _UsageError(str(e))


def _emit(args, payload, text):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)
    if args.trace and payload.get("witness") is not None:
        with open(args.trace, "w") as f:
            json.dump({"verdict": payload["verdict"], "witness": payload["witness"]}, f, indent=2)


def _witness_obj(trace):
    if trace is None:
        return None
    return [{"state": c.state, "head": c.head, "tape": list(c.tape)} for c in trace]


def _parse_input(text):
    try:
        return tuple(int(ch) for ch in text)
    except ValueError:
        raise _UsageError(f"input must be digit symbols, got {text!r}")


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _dispatch(args)
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (cm.CMParseError, BTMParseError, rt.GameParseError, gc.LevelFormatError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except GuideInvariantError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    if args.command == "cm-run":
        program = cm.parse_counter_program(_read(args.file))
        res = cm.cm_run(program, cm.initial_config(program), args.max_steps)
        payload = {
            "command": args.command,
            "verdict": res.kind,
            "steps": res.config.steps,
            "counters": list(res.config.counters),
            "pc": res.config.pc,
        }
        _emit(args, payload, f"{res.kind}: counters={list(res.config.counters)} steps={res.config.steps}")
        return 0

    if args.command == "cm-compile":
        program = cm.parse_counter_program(_read(args.file))
        out = gc.level_to_json(gc.compile(program))
        if args.output:
            with open(args.output, "w") as f:
                f.write(out + "\n")
        else:
            print(out)
        return 0

    if args.command == "level-sim":
        level = gc.level_from_json(_read(args.file))
        res = gc.level_run(level, args.max_steps)
        payload = {"command": args.command, "verdict": res.kind, "ticks": res.ticks}
        _emit(args, payload, f"{res.kind}: ticks={res.ticks}")
        return 0

    if args.command == "level-dot":
        level = gc.level_from_json(_read(args.file))
        out = gc.level_to_dot(level)
        if args.output:
            with open(args.output, "w") as f:
                f.write(out)
        else:
            print(out, end="")
        return 0

    if args.command == "btm-decide":
        spec = parse_btm(_read(args.file))
        if args.input is not None:
            verdict = decide_read_only(spec, _parse_input(args.input))
        else:
            verdict = decide_det_braidlike(spec)
        payload = {"command": args.command, "verdict": verdict}
        _emit(args, payload, verdict)
        return 0

    if args.command == "btm-reach":
        spec = parse_btm(_read(args.file))
        default_cap = nondet_guide_bound(spec.num_states) + 1
        cap = args.max_cells if args.max_cells is not None else default_cap
        if cap < default_cap:
            print(f"warning: cell cap {cap} is below the exact bound {default_cap}; "
                  "a not-reached verdict is only bounded", file=sys.stderr)
        res = decide_reachability(spec, prune=args.prune, cell_cap=cap)
        payload = {
            "command": args.command,
            "verdict": res.kind,
            "explored": res.explored,
            "witness": _witness_obj(res.witness),
        }
        _emit(args, payload, f"{res.kind} (explored {res.explored} configurations)")
        return 0

    if args.command == "btm-oracle":
        spec = parse_btm(_read(args.file))
        if args.input is not None:
            res = read_only_oracle(spec, _parse_input(args.input))
        elif spec.target_state is not None:
            cap = args.max_cells if args.max_cells is not None else nondet_guide_bound(spec.num_states) + 1
            res = reach_bfs(spec, cap)
        else:
            cap = args.max_cells if args.max_cells is not None else det_guide_bound(spec.num_states) + 1
            res = det_behavior_oracle(spec, args.max_steps, cap)
        payload = {
            "command": args.command,
            "verdict": res.kind,
            "explored": res.explored,
            "witness": _witness_obj(res.witness),
        }
        _emit(args, payload, f"{res.kind} (explored {res.explored})")
        return 0

    if args.command == "bounds":
        if args.states < 1:
            raise _UsageError("--states must be >= 1")
        det, nondet = det_guide_bound(args.states), nondet_guide_bound(args.states)
        payload = {"command": args.command, "det": det, "nondet": nondet}
        _emit(args, payload, f"det={det} nondet={nondet}")
        return 0

    if args.command == "game-to-btm":
        game = rt.parse_game(_read(args.file))
        out = format_btm(rt.build_braidlike_from_game(game))
        if args.output:
            with open(args.output, "w") as f:
                f.write(out)
        else:
            print(out, end="")
        return 0

    if args.command == "bisim":
        program = cm.parse_counter_program(_read(args.file))
        report = gc.bisimulate(program, args.max_steps)
        payload = {
            "command": args.command,
            "verdict": "pass" if report.passed else "fail",
            "cm_halted": report.cm_halted,
            "level_solved": report.level_solved,
            "steps": report.steps,
            "ticks": report.ticks,
            "boundaries": [
                {
                    "index": b.index,
                    "pc": b.cm_pc,
                    "counters": list(b.cm_counters),
                    "tim_at": b.tim_at,
                    "occupancies": list(b.occupancies),
                    "ok": b.ok,
                }
                for b in report.boundaries
            ],
        }
        lines = [f"{'pass' if report.passed else 'fail'}: "
                 f"{len(report.boundaries)} boundaries, halted={report.cm_halted} solved={report.level_solved}"]
        for b in report.boundaries:
            mark = "ok" if b.ok else "MISMATCH"
            lines.append(f"  [{b.index}] pc={b.cm_pc} counters={list(b.cm_counters)} "
                         f"tim={b.tim_at} occ={list(b.occupancies)} {mark}")
        _emit(args, payload, "\n".join(lines))
        return 0

    raise _UsageError(f"unknown command {args.command!r}")


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
