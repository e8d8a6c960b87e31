"""Compile counter programs to gadget-graph levels and run their token
semantics.

The model is discrete: monstars are tokens, counters are station
occupancies, and the player is forced through a unique path, so stepping is
deterministic. Timing is synchronous — an in-flight monstar settles before
the player's next gadget entry — which is the abstraction of making the
player's path long enough that he cannot beat the monstar to a gadget.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

from .counter_machine import Add, CounterProgram, Halt, SubBranch, cm_step, initial_config


class LevelFormatError(ValueError):
    pass


# Gadget kinds
@dataclass(frozen=True)
class LeverPull:
    signal: str


@dataclass(frozen=True)
class Branch:
    pass


@dataclass(frozen=True)
class CounterStation:
    counter: int


@dataclass(frozen=True)
class TrapRouter:
    # door signal id -> destination branch gadget id
    doors: tuple


@dataclass(frozen=True)
class Goal:
    pass


@dataclass(frozen=True)
class Junction:
    pass


# Signal effects
@dataclass(frozen=True)
class Add1:
    counter: int


@dataclass(frozen=True)
class Remove1:
    counter: int


@dataclass(frozen=True)
class OpenDoor:
    router: str
    branch: str


@dataclass(frozen=True)
class Level:
    gadgets: dict  # id -> Gadget
    tim_edges: dict  # (gadget id, exit label) -> gadget id
    monstar_edges: tuple  # (from id, to id) pairs, for export only
    signals: dict  # signal id -> effect
    entry: str
    num_counters: int
    # entry gadget per instruction index; index len(program) is the
    # fall-through goal
    instruction_entries: tuple = ()
    crossover_count: int = 0

    def __post_init__(self):
        if self.entry not in self.gadgets:
            raise LevelFormatError(f"entry gadget {self.entry!r} missing")
        for g in self.gadgets.values():
            if isinstance(g, LeverPull) and g.signal not in self.signals:
                raise LevelFormatError(f"lever signal {g.signal!r} undeclared")
            if isinstance(g, TrapRouter):
                for sig, _ in g.doors:
                    if sig not in self.signals:
                        raise LevelFormatError(f"router door signal {sig!r} undeclared")
        for (gid, _), target in self.tim_edges.items():
            if gid not in self.gadgets or target not in self.gadgets:
                raise LevelFormatError(f"tim edge {gid!r} -> {target!r} references a missing gadget")
        for sig, eff in self.signals.items():
            if isinstance(eff, OpenDoor) and (eff.router not in self.gadgets or eff.branch not in self.gadgets):
                raise LevelFormatError(f"signal {sig!r} routes through a missing gadget")


SOLVED = "solved"


@dataclass(frozen=True)
class LevelConfig:
    tim_at: str
    counters: tuple  # occupancy per counter index
    in_flight: tuple  # sorted location ids (routers and branch slots) holding a monstar
    ticks: int = 0


def initial_level_config(level: Level, counters=None) -> LevelConfig:
    if counters is None:
        counters = (0,) * level.num_counters
    return LevelConfig(tim_at=level.entry, counters=tuple(counters), in_flight=(), ticks=0)


def compile(program: CounterProgram) -> Level:
    """Translate a counter program into a level.

    Add(c) becomes one lever wired to the counter's add signal. SubBranch
    (c, t) becomes a remove lever, a trap-door lever that routes the freed
    monstar to this instruction's branch gadget, and the branch gadget
    itself: monstar present continues to pc+1, absent jumps to t. Halt and
    the implicit end become goals. Crossings a planar embedding would need
    are counted for the record; the graph model does not need them.
    """
    gadgets = {}
    tim_edges = {}
    monstar_edges = []
    signals = {}
    n_ins = len(program.instructions)
    entry_of = {}

    # Stations exist for every counter so occupancies line up with the
    # machine's counter vector; routers only where something is removed.
    for c in range(program.num_counters):
        gadgets[f"C{c}"] = CounterStation(c)
    router_doors = {}  # counter -> list of (signal, branch id)

    for i, ins in enumerate(program.instructions):
        if isinstance(ins, Add):
            gid = f"L{i}"
            sig = f"add{i}"
            gadgets[gid] = LeverPull(sig)
            signals[sig] = Add1(ins.counter)
            entry_of[i] = gid
        elif isinstance(ins, SubBranch):
            sub, door, br = f"L{i}", f"D{i}", f"B{i}"
            sub_sig, door_sig = f"sub{i}", f"door{i}"
            gadgets[sub] = LeverPull(sub_sig)
            gadgets[door] = LeverPull(door_sig)
            gadgets[br] = Branch()
            signals[sub_sig] = Remove1(ins.counter)
            signals[door_sig] = OpenDoor(f"R{ins.counter}", br)
            router_doors.setdefault(ins.counter, []).append((door_sig, br))
            tim_edges[(sub, "out")] = door
            tim_edges[(door, "out")] = br
            entry_of[i] = sub
        else:  # Halt
            gid = f"G{i}"
            gadgets[gid] = Goal()
            entry_of[i] = gid
    gadgets["Gend"] = Goal()
    entry_of[n_ins] = "Gend"

    for c, doors in router_doors.items():
        gadgets[f"R{c}"] = TrapRouter(tuple(doors))
        monstar_edges.append((f"C{c}", f"R{c}"))
        for _, br in doors:
            monstar_edges.append((f"R{c}", br))

    # Control-flow edges between instructions.
    for i, ins in enumerate(program.instructions):
        if isinstance(ins, Add):
            tim_edges[(entry_of[i], "out")] = entry_of[i + 1]
        elif isinstance(ins, SubBranch):
            tim_edges[(f"B{i}", "monstar")] = entry_of[i + 1]
            tim_edges[(f"B{i}", "empty")] = entry_of[ins.target]

    level = Level(
        gadgets=gadgets,
        tim_edges=tim_edges,
        monstar_edges=tuple(monstar_edges),
        signals=signals,
        entry=entry_of[0],
        num_counters=program.num_counters,
        instruction_entries=tuple(entry_of[i] for i in range(n_ins + 1)),
        crossover_count=0,
    )
    return replace(level, crossover_count=_count_crossings(level))


def _count_crossings(level: Level) -> int:
    """Crossings of a one-page book embedding with gadgets laid out in id
    order — a stand-in for the crossover gadgets a planar build would need."""
    order = {gid: i for i, gid in enumerate(level.gadgets)}
    spans = []
    for (src, _), dst in level.tim_edges.items():
        spans.append(tuple(sorted((order[src], order[dst]))))
    for src, dst in level.monstar_edges:
        spans.append(tuple(sorted((order[src], order[dst]))))
    crossings = 0
    for i in range(len(spans)):
        a1, b1 = spans[i]
        for j in range(i + 1, len(spans)):
            a2, b2 = spans[j]
            if a1 < a2 < b1 < b2 or a2 < a1 < b2 < b1:
                crossings += 1
    return crossings


def level_step(level: Level, c: LevelConfig):
    """One deterministic step of the token semantics. Returns the next
    LevelConfig, or SOLVED when the player stands at a goal."""
    g = level.gadgets[c.tim_at]
    counters = list(c.counters)
    in_flight = list(c.in_flight)
    if isinstance(g, Goal):
        return SOLVED
    if isinstance(g, LeverPull):
        eff = level.signals[g.signal]
        if isinstance(eff, Add1):
            counters[eff.counter] += 1
        elif isinstance(eff, Remove1):
            if counters[eff.counter] > 0:
                counters[eff.counter] -= 1
                in_flight.append(f"R{eff.counter}")
            # at zero the freed bunny dies on the spikes: no token moves
        else:  # OpenDoor
            if eff.router in in_flight:
                in_flight.remove(eff.router)
                in_flight.append(eff.branch)
        nxt = level.tim_edges[(c.tim_at, "out")]
    elif isinstance(g, Branch):
        if c.tim_at in in_flight:
            in_flight.remove(c.tim_at)  # jump on the monstar, killing it
            nxt = level.tim_edges[(c.tim_at, "monstar")]
        else:
            nxt = level.tim_edges[(c.tim_at, "empty")]
    elif isinstance(g, Junction):
        nxt = level.tim_edges[(c.tim_at, "out")]
    else:
        raise LevelFormatError(f"player cannot stand at {c.tim_at!r} ({type(g).__name__})")
    return LevelConfig(nxt, tuple(counters), tuple(sorted(in_flight)), c.ticks + 1)


@dataclass(frozen=True)
class LevelRunResult:
    kind: str  # "solved" | "budget"
    ticks: int
    config: LevelConfig = None


def level_run(level: Level, max_ticks: int, init: LevelConfig = None) -> LevelRunResult:
    if max_ticks < 0:
        raise ValueError("max_ticks must be >= 0")
    c = initial_level_config(level) if init is None else init
    while c.ticks < max_ticks:
        nxt = level_step(level, c)
        if nxt is SOLVED:
            return LevelRunResult("solved", c.ticks + 1)
        c = nxt
    return LevelRunResult("budget", c.ticks, c)


@dataclass(frozen=True)
class BoundaryRecord:
    index: int
    cm_pc: object  # instruction index or None once halted
    cm_counters: tuple
    tim_at: str  # gadget id, or "solved"
    occupancies: tuple
    ok: bool


@dataclass(frozen=True)
class BisimReport:
    passed: bool
    boundaries: tuple
    cm_halted: bool
    level_solved: bool
    ticks: int
    steps: int


def bisimulate(program: CounterProgram, max_steps: int) -> BisimReport:
    """Run the counter machine and its compiled level in lockstep.

    At every instruction boundary the machine's (pc, counters) must match
    the player's position and the station occupancies; at the end, halting
    must coincide with solving.
    """
    level = compile(program)
    cm = initial_config(program)
    lv = initial_level_config(level, program.init_counters)
    entries = set(level.instruction_entries)
    boundaries = []
    solved = False
    ok_all = True

    def record(idx, ok):
        nonlocal ok_all
        ok_all = ok_all and ok
        boundaries.append(
            BoundaryRecord(idx, cm.pc, cm.counters, SOLVED if solved else lv.tim_at, lv.counters, ok)
        )

    record(0, lv.tim_at == level.instruction_entries[cm.pc] and lv.counters == cm.counters)
    for k in range(1, max_steps + 1):
        if cm.halted:
            break
        cm = cm_step(program, cm)
        # advance the level to the next instruction entry, or all the way to
        # solved when the machine just halted (the goal needs its own tick)
        ticks_before = lv.ticks
        while lv.ticks - ticks_before <= 4:  # 3 gadgets per instruction, plus the goal
            nxt = level_step(level, lv)
            if nxt is SOLVED:
                solved = True
                break
            lv = nxt
            if not cm.halted and lv.tim_at in entries:
                break
        if cm.halted:
            ok = solved and lv.counters == cm.counters
        else:
            ok = (
                not solved
                and lv.tim_at == level.instruction_entries[cm.pc]
                and lv.counters == cm.counters
            )
        record(k, ok)
        if solved:
            break
    ok_all = ok_all and (cm.halted == solved)
    return BisimReport(ok_all, tuple(boundaries), cm.halted, solved, lv.ticks + (1 if solved else 0), cm.steps)


# ---------------------------------------------------------------------------
# Serialization

def level_to_json(level: Level) -> str:
    def gadget_obj(g):
        if isinstance(g, LeverPull):
            return {"kind": "lever", "signal": g.signal}
        if isinstance(g, Branch):
            return {"kind": "branch"}
        if isinstance(g, CounterStation):
            return {"kind": "counter", "counter": g.counter}
        if isinstance(g, TrapRouter):
            return {"kind": "router", "doors": [list(d) for d in g.doors]}
        if isinstance(g, Goal):
            return {"kind": "goal"}
        return {"kind": "junction"}

    def effect_obj(e):
        if isinstance(e, Add1):
            return {"effect": "add1", "counter": e.counter}
        if isinstance(e, Remove1):
            return {"effect": "remove1", "counter": e.counter}
        return {"effect": "open-door", "router": e.router, "branch": e.branch}

    obj = {
        "entry": level.entry,
        "num_counters": level.num_counters,
        "gadgets": {gid: gadget_obj(g) for gid, g in sorted(level.gadgets.items())},
        "tim_edges": [{"from": gid, "exit": label, "to": dst} for (gid, label), dst in sorted(level.tim_edges.items())],
        "monstar_edges": [list(e) for e in level.monstar_edges],
        "signals": {sig: effect_obj(e) for sig, e in sorted(level.signals.items())},
        "instruction_entries": list(level.instruction_entries),
        "crossover_count": level.crossover_count,
    }
    return json.dumps(obj, indent=2, sort_keys=True)


def level_from_json(text: str) -> Level:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise LevelFormatError(str(e))

    def gadget(o):
        kind = o.get("kind")
        if kind == "lever":
            return LeverPull(o["signal"])
        if kind == "branch":
            return Branch()
        if kind == "counter":
            return CounterStation(o["counter"])
        if kind == "router":
            return TrapRouter(tuple(tuple(d) for d in o["doors"]))
        if kind == "goal":
            return Goal()
        if kind == "junction":
            return Junction()
        raise LevelFormatError(f"unknown gadget kind {kind!r}")

    def effect(o):
        e = o.get("effect")
        if e == "add1":
            return Add1(o["counter"])
        if e == "remove1":
            return Remove1(o["counter"])
        if e == "open-door":
            return OpenDoor(o["router"], o["branch"])
        raise LevelFormatError(f"unknown signal effect {e!r}")

    try:
        return Level(
            gadgets={gid: gadget(g) for gid, g in obj["gadgets"].items()},
            tim_edges={(e["from"], e["exit"]): e["to"] for e in obj["tim_edges"]},
            monstar_edges=tuple(tuple(e) for e in obj["monstar_edges"]),
            signals={sig: effect(e) for sig, e in obj["signals"].items()},
            entry=obj["entry"],
            num_counters=obj["num_counters"],
            instruction_entries=tuple(obj.get("instruction_entries", ())),
            crossover_count=obj.get("crossover_count", 0),
        )
    except KeyError as e:
        raise LevelFormatError(f"missing field {e}")


def level_to_dot(level: Level) -> str:
    """GraphViz export: player edges solid, monstar edges dashed. Gadget ids
    are stable so exports diff cleanly."""
    lines = ["digraph level {", "  rankdir=LR;"]
    shapes = {
        LeverPull: "box",
        Branch: "diamond",
        CounterStation: "cylinder",
        TrapRouter: "trapezium",
        Goal: "doublecircle",
        Junction: "point",
    }
    for gid, g in sorted(level.gadgets.items()):
        label = gid
        if isinstance(g, LeverPull):
            label = f"{gid}\\n{g.signal}"
        elif isinstance(g, CounterStation):
            label = f"{gid}\\ncounter {g.counter}"
        lines.append(f'  "{gid}" [shape={shapes[type(g)]}, label="{label}"];')
    for (src, exit_label), dst in sorted(level.tim_edges.items()):
        lines.append(f'  "{src}" -> "{dst}" [label="{exit_label}"];')
    for src, dst in level.monstar_edges:
        lines.append(f'  "{src}" -> "{dst}" [style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"
