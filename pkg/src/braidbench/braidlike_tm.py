"""Braidlike Turing machines: half-infinite tape, erase-right writes.

A machine performs exactly one of Write / MoveLeft / MoveRight per
transition. Writing at cell h replaces the tape with cells 0..h-1 plus the
written symbol: everything right of the head is erased. Symbol 0 is blank.
Tapes are kept canonical (no trailing blanks) so structural equality works
as set membership in the search modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field

BLANK = 0


class BTMParseError(ValueError):
    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Write:
    symbol: int


@dataclass(frozen=True)
class MoveLeft:
    pass


@dataclass(frozen=True)
class MoveRight:
    pass


MOVE_LEFT = MoveLeft()
MOVE_RIGHT = MoveRight()


@dataclass(frozen=True)
class MachineSpec:
    num_states: int
    num_symbols: int
    start_state: int
    accept_states: frozenset
    transitions: dict  # (state, symbol) -> tuple of (Action, next_state)
    target_state: int = None
    deterministic: bool = False

    def __post_init__(self):
        if self.num_states < 1 or self.num_symbols < 1:
            raise ValueError("need at least one state and one symbol")
        if not (0 <= self.start_state < self.num_states):
            raise ValueError("start state out of range")
        for q in self.accept_states:
            if not (0 <= q < self.num_states):
                raise ValueError(f"accept state {q} out of range")
        if self.target_state is not None and not (0 <= self.target_state < self.num_states):
            raise ValueError("target state out of range")
        for (q, a), succs in self.transitions.items():
            if not (0 <= q < self.num_states) or not (0 <= a < self.num_symbols):
                raise ValueError(f"transition key ({q}, {a}) out of range")
            if self.deterministic and len(succs) > 1:
                raise ValueError(f"deterministic machine has {len(succs)} transitions from ({q}, {a})")
            for action, nxt in succs:
                if not (0 <= nxt < self.num_states):
                    raise ValueError(f"transition from ({q}, {a}) to state {nxt} out of range")
                if isinstance(action, Write) and not (0 <= action.symbol < self.num_symbols):
                    raise ValueError(f"written symbol {action.symbol} out of range")

    @property
    def read_only(self):
        return not any(
            isinstance(action, Write) for succs in self.transitions.values() for action, _ in succs
        )


@dataclass(frozen=True)
class Configuration:
    state: int
    head: int  # may point past the end of the tape (blank region)
    tape: tuple  # canonical: no trailing blanks
    steps: int = field(default=0, compare=False)


def canonical_tape(cells) -> tuple:
    cells = tuple(cells)
    end = len(cells)
    while end > 0 and cells[end - 1] == BLANK:
        end -= 1
    return cells[:end]


def start_configuration(spec: MachineSpec) -> Configuration:
    return Configuration(state=spec.start_state, head=0, tape=())


def symbol_at(tape: tuple, cell: int) -> int:
    return tape[cell] if cell < len(tape) else BLANK


def apply_action(c: Configuration, action, next_state: int):
    """Apply one action. Returns the successor Configuration, or None if the
    move is stuck (MoveLeft at the left endpoint)."""
    if isinstance(action, MoveLeft):
        if c.head == 0:
            return None
        return Configuration(next_state, c.head - 1, c.tape, c.steps + 1)
    if isinstance(action, MoveRight):
        return Configuration(next_state, c.head + 1, c.tape, c.steps + 1)
    # Write: keep cells 0..head-1 (blanks materialize if the head is past the
    # end), place the symbol, erase everything to the right.
    prefix = c.tape[: c.head]
    if len(prefix) < c.head:
        prefix = prefix + (BLANK,) * (c.head - len(prefix))
    tape = canonical_tape(prefix + (action.symbol,))
    return Configuration(next_state, c.head, tape, c.steps + 1)


def successors(spec: MachineSpec, c: Configuration) -> list:
    """All distinct non-stuck successor configurations."""
    out = []
    seen = set()
    for action, nxt in spec.transitions.get((c.state, symbol_at(c.tape, c.head)), ()):
        succ = apply_action(c, action, nxt)
        if succ is None:
            continue
        key = (succ.state, succ.head, succ.tape)
        if key not in seen:
            seen.add(key)
            out.append(succ)
    return out


@dataclass(frozen=True)
class DetOutcome:
    kind: str  # "accept" | "reject" | "budget"
    config: Configuration


def run_det(spec: MachineSpec, max_steps: int, max_cells: int) -> DetOutcome:
    """Drive a deterministic machine from the blank tape.

    Accept on entering an accept state; Reject on a dead configuration or a
    stuck left move; Budget once steps exceed max_steps or the head exceeds
    max_cells.
    """
    if not spec.deterministic:
        raise ValueError("run_det requires a deterministic machine")
    c = start_configuration(spec)
    while True:
        if c.state in spec.accept_states:
            return DetOutcome("accept", c)
        if c.steps > max_steps or c.head > max_cells:
            return DetOutcome("budget", c)
        succs = successors(spec, c)
        if not succs:
            return DetOutcome("reject", c)
        c = succs[0]


def parse_btm(text: str) -> MachineSpec:
    """Parse the `.btm` format.

    `#` comments; `states N`, `symbols S`, `start q`, `accept q1 q2 ...`,
    optional `target q`, optional `deterministic true|false`; transition
    lines `trans <q> <a> write <b> <q'>`, `trans <q> <a> left <q'>`,
    `trans <q> <a> right <q'>`. All integers 0-based.
    """
    header = {}
    accept = []
    transitions = {}
    deterministic = False
    saw_det = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.lower().split()
        key = words[0]
        if key in ("states", "symbols", "start", "target"):
            if len(words) != 2 or not words[1].isdigit():
                raise BTMParseError(lineno, f"expected `{key} <n>`")
            header[key] = int(words[1])
        elif key == "accept":
            if not all(w.isdigit() for w in words[1:]):
                raise BTMParseError(lineno, "accept states must be integers")
            accept.extend(int(w) for w in words[1:])
        elif key == "deterministic":
            if len(words) != 2 or words[1] not in ("true", "false"):
                raise BTMParseError(lineno, "expected `deterministic true|false`")
            deterministic = words[1] == "true"
            saw_det = True
        elif key == "trans":
            if len(words) < 4:
                raise BTMParseError(lineno, "truncated transition")
            try:
                q, a = int(words[1]), int(words[2])
            except ValueError:
                raise BTMParseError(lineno, "transition state/symbol must be integers")
            kind = words[3]
            if kind == "write":
                if len(words) != 6:
                    raise BTMParseError(lineno, "expected `trans <q> <a> write <b> <q'>`")
                action, nxt = Write(int(words[4])), int(words[5])
            elif kind in ("left", "right"):
                if len(words) != 5:
                    raise BTMParseError(lineno, f"expected `trans <q> <a> {kind} <q'>`")
                action = MOVE_LEFT if kind == "left" else MOVE_RIGHT
                nxt = int(words[4])
            else:
                raise BTMParseError(lineno, f"unknown action {kind!r}")
            transitions.setdefault((q, a), []).append((action, nxt))
        else:
            raise BTMParseError(lineno, f"unknown directive {key!r}")
    for field_name in ("states", "symbols", "start"):
        if field_name not in header:
            raise BTMParseError(0, f"missing `{field_name}` line")
    if saw_det and deterministic:
        for (q, a), succs in transitions.items():
            if len(succs) > 1:
                raise BTMParseError(0, f"declared deterministic but ({q}, {a}) has {len(succs)} transitions")
    try:
        return MachineSpec(
            num_states=header["states"],
            num_symbols=header["symbols"],
            start_state=header["start"],
            accept_states=frozenset(accept),
            transitions={k: tuple(v) for k, v in transitions.items()},
            target_state=header.get("target"),
            deterministic=deterministic,
        )
    except ValueError as e:
        raise BTMParseError(0, str(e))


def format_btm(spec: MachineSpec) -> str:
    """Serialize a MachineSpec back to `.btm` text."""
    lines = [
        f"states {spec.num_states}",
        f"symbols {spec.num_symbols}",
        f"start {spec.start_state}",
        "accept " + " ".join(str(q) for q in sorted(spec.accept_states)),
    ]
    if spec.target_state is not None:
        lines.append(f"target {spec.target_state}")
    lines.append(f"deterministic {'true' if spec.deterministic else 'false'}")
    for (q, a) in sorted(spec.transitions):
        for action, nxt in spec.transitions[(q, a)]:
            if isinstance(action, Write):
                lines.append(f"trans {q} {a} write {action.symbol} {nxt}")
            elif isinstance(action, MoveLeft):
                lines.append(f"trans {q} {a} left {nxt}")
            else:
                lines.append(f"trans {q} {a} right {nxt}")
    return "\n".join(lines) + "\n"
