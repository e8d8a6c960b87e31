"""Crossing-summary ("tour guide") deciders for braidlike machines.

A tour guide sits at the boundary between cells i and i+1 and answers, for
a head arriving at cell i in state q, what the leftward excursion will do:
come back to cell i+1 in some state, accept, reject, loop forever, or (for
writing machines) "destroy me" — a write at some cell <= i will happen
before the head crosses the boundary rightward again. A guide is a function
of its left neighbor and the one symbol it stands over, which is what makes
the deciders below work.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .braidlike_tm import (
    BLANK,
    Configuration,
    MachineSpec,
    MoveLeft,
    MoveRight,
    Write,
    start_configuration,
    symbol_at,
)
from .oracle_sim import SearchBudgetExceeded


class GuideInvariantError(RuntimeError):
    """A runtime check on the guide machinery failed (internal error)."""


# Responses. ACCEPT/REJECT/LOOP_FOREVER/DESTROY_ME are singletons;
# ReturnInState carries the state of the next rightward crossing.
@dataclass(frozen=True)
class ReturnInState:
    state: int


@dataclass(frozen=True)
class _Accept:
    pass


@dataclass(frozen=True)
class _Reject:
    pass


@dataclass(frozen=True)
class _LoopForever:
    pass


@dataclass(frozen=True)
class _DestroyMe:
    pass


ACCEPT = _Accept()
REJECT = _Reject()
LOOP_FOREVER = _LoopForever()
DESTROY_ME = _DestroyMe()


@dataclass(frozen=True)
class TourGuide:
    answers: tuple  # indexed by state
    creation_state: int = None


@dataclass(frozen=True)
class NTourGuide:
    answers: tuple  # indexed by state; each entry a frozenset of responses
    creation_state: int = None
    destiny: object = None  # unused by the shipped pruner; kept for the record


@dataclass(frozen=True)
class ReachResult:
    kind: str  # "reached" | "not-reached"
    explored: int = 0
    witness: tuple = None
    cap_hit: bool = False


def det_guide_bound(n_states: int) -> int:
    """Number of distinct deterministic tour guides: (N+4)^N * N."""
    if n_states < 1:
        raise ValueError("need at least one state")
    return (n_states + 4) ** n_states * n_states


def nondet_guide_bound(n_states: int) -> int:
    """Number of distinct nondeterministic tour guides:
    (2^(N+4))^N response-set maps, times N creation states, times N+1
    destinies (survive forever, or destroyed with one of N last-right states).
    """
    if n_states < 1:
        raise ValueError("need at least one state")
    return (2 ** (n_states + 4)) ** n_states * n_states * (n_states + 1)


def compute_guide(left, cell_symbol: int, spec: MachineSpec, creation_state: int = None) -> TourGuide:
    """Summarize the boundary whose left cell holds cell_symbol.

    left is the guide one boundary further left, or None at the wall. For
    each state the local walk sits at the left cell: a right move returns;
    an enabled write destroys this guide (the write lands at or left of her
    cell); a left move defers to the left guide, whose DestroyMe propagates
    (the destroying write is strictly left of here, so it takes this guide
    out too). A repeated local state is a proven loop; the walk is bounded
    by N steps per state because any write ends it immediately, so the cell
    symbol is constant throughout.
    """
    if not spec.deterministic:
        raise ValueError("compute_guide requires a deterministic machine")
    answers = []
    for q in range(spec.num_states):
        cur = q
        seen = set()
        while True:
            if cur in spec.accept_states:
                answers.append(ACCEPT)
                break
            if cur in seen:
                answers.append(LOOP_FOREVER)
                break
            seen.add(cur)
            succs = spec.transitions.get((cur, cell_symbol), ())
            if not succs:
                answers.append(REJECT)
                break
            action, nxt = succs[0]
            if isinstance(action, MoveRight):
                answers.append(ReturnInState(nxt))
                break
            if isinstance(action, Write):
                answers.append(DESTROY_ME)
                break
            # MoveLeft
            if left is None:
                answers.append(REJECT)  # stuck at the left endpoint
                break
            r = left.answers[nxt]
            if isinstance(r, ReturnInState):
                cur = r.state
                continue
            answers.append(r)  # ACCEPT / REJECT / LOOP_FOREVER / DESTROY_ME
            break
    return TourGuide(tuple(answers), creation_state)


def decide_read_only(spec: MachineSpec, input_symbols) -> str:
    """Decide a deterministic read-only machine on an input.

    Guides are built left to right over the input, then over the blank
    suffix. Once at cell i in state q, the guide over cell i answers for the
    whole excursion at cells <= i, so the summarized head only ever moves
    right. Over blanks the guides are an iterated map on a finite set, so a
    repeated (guide, state) pair closes the computation as a loop.
    Returns "accept" | "reject" | "loop".
    """
    if not spec.deterministic:
        raise ValueError("decide_read_only requires a deterministic machine")
    if not spec.read_only:
        raise ValueError("decide_read_only requires a read-only machine")
    input_symbols = tuple(input_symbols)
    n = len(input_symbols)
    state = spec.start_state
    left = None
    cell = 0
    seen_blank = set()
    while True:
        if state in spec.accept_states:
            return "accept"
        sym = input_symbols[cell] if cell < n else BLANK
        guide = compute_guide(left, sym, spec)
        if cell >= n:
            key = (guide.answers, state)
            if key in seen_blank:
                return "loop"
            seen_blank.add(key)
        r = guide.answers[state]
        if isinstance(r, ReturnInState):
            state = r.state
            left = guide
            cell += 1
            continue
        if r is ACCEPT:
            return "accept"
        if r is REJECT:
            return "reject"
        if r is LOOP_FOREVER:
            return "loop"
        raise GuideInvariantError("DestroyMe answer from a read-only machine")


def decide_det_braidlike(spec: MachineSpec) -> str:
    """Decide the blank-tape behavior of a deterministic braidlike machine.

    Simulates with a chain of alive guides, one per boundary the head has
    crossed. Rightward moves mint a guide; leftward moves consult the guide
    at the crossed boundary, dropping to concrete simulation only on a
    DestroyMe answer. A write at cell j truncates tape and chain at j.
    LoopForever is concluded on a freshly minted guide equal to an alive
    one, on an exact repeat of (configuration, chain), or at the pigeonhole
    head cap. Always terminates. Returns "accept" | "reject" | "loop".
    """
    if not spec.deterministic:
        raise ValueError("decide_det_braidlike requires a deterministic machine")
    cap = det_guide_bound(spec.num_states) + 1
    state, head, tape = spec.start_state, 0, ()
    chain = []  # chain[k] guards boundary (k, k+1)
    alive = set()
    visited = set()
    while True:
        if state in spec.accept_states:
            return "accept"
        if head > cap:
            return "loop"  # pigeonhole: duplicate guides are forced by now
        key = (state, head, tape, tuple(chain))
        if key in visited:
            return "loop"
        visited.add(key)
        sym = symbol_at(tape, head)
        succs = spec.transitions.get((state, sym), ())
        if not succs:
            return "reject"
        action, nxt = succs[0]
        if isinstance(action, MoveLeft):
            if head == 0:
                return "reject"  # stuck at the left endpoint
            if head - 1 >= len(chain):
                raise GuideInvariantError("leftward crossing with no guide at the boundary")
            r = chain[head - 1].answers[nxt]
            if isinstance(r, ReturnInState):
                state = r.state  # summarized round trip; head stays put
            elif r is ACCEPT:
                return "accept"
            elif r is REJECT:
                return "reject"
            elif r is LOOP_FOREVER:
                return "loop"
            else:  # DESTROY_ME: proceed as if the guide didn't exist
                state, head = nxt, head - 1
        elif isinstance(action, MoveRight):
            if head < len(chain):
                # A guide promised destruction before this crossing.
                raise GuideInvariantError("destroy-me prophecy violated by a rightward crossing")
            guide = compute_guide(chain[-1] if chain else None, sym, spec, creation_state=nxt)
            if guide in alive:
                return "loop"  # two identical guides: the stretch between them repeats forever
            chain.append(guide)
            alive.add(guide)
            state, head = nxt, head + 1
        else:  # Write
            prefix = tape[: head]
            if len(prefix) < head:
                prefix = prefix + (BLANK,) * (head - len(prefix))
            tape = prefix + (action.symbol,)
            while tape and tape[-1] == BLANK:
                tape = tape[:-1]
            if len(chain) > head:
                for g in chain[head:]:
                    alive.discard(g)
                del chain[head:]
            state = nxt


def compute_nguide(left, cell_symbol: int, spec: MachineSpec, creation_state: int = None) -> NTourGuide:
    """Set-valued guide for nondeterministic machines.

    answers[q] is the least fixpoint of the local-walk relation: every
    terminal outcome reachable from q through left-guide round trips, plus
    LoopForever whenever a cycle of round trips is reachable.
    """
    n = spec.num_states
    term = [set() for _ in range(n)]
    edges = [set() for _ in range(n)]
    for q in range(n):
        if q in spec.accept_states:
            term[q].add(ACCEPT)  # absorbing: arriving here halts
            continue
        succs = spec.transitions.get((q, cell_symbol), ())
        if not succs:
            term[q].add(REJECT)
        for action, nxt in succs:
            if isinstance(action, MoveRight):
                term[q].add(ReturnInState(nxt))
            elif isinstance(action, Write):
                term[q].add(DESTROY_ME)
            else:  # MoveLeft
                if left is None:
                    term[q].add(REJECT)  # this branch is stuck at the wall
                    continue
                for r in left.answers[nxt]:
                    if isinstance(r, ReturnInState):
                        edges[q].add(r.state)
                    else:
                        term[q].add(r)
    # Reachability closure over round-trip edges.
    reach = []
    for q in range(n):
        seen = {q}
        stack = [q]
        while stack:
            v = stack.pop()
            for w in edges[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        reach.append(seen)
    answers = []
    for q in range(n):
        acc = set()
        for v in reach[q]:
            acc |= term[v]
        # a reachable round-trip cycle means the walk can go on forever
        if any(w in reach[q] for v in reach[q] for w in edges[v]):
            acc.add(LOOP_FOREVER)
        answers.append(frozenset(acc))
    return NTourGuide(tuple(answers), creation_state)


def decide_reachability(
    spec: MachineSpec,
    prune: bool = False,
    cell_cap: int = None,
    max_explored: int = None,
) -> ReachResult:
    """Decide whether the machine can reach its target state.

    Explicit-state BFS over canonical configurations, capped by default at
    the nondeterministic guide bound plus one cell, which makes the verdict
    exact: a run reaching the target exists iff one exists whose head stays
    under the guide-count cap. With prune enabled, successors whose guide
    chain would contain two guides equal in (answers, creation_state) are
    discarded; this is an experimental accelerator, off by default, and is
    validated only empirically against the plain search.
    """
    if spec.target_state is None:
        raise ValueError("decide_reachability needs a declared target state")
    if cell_cap is None:
        cell_cap = nondet_guide_bound(spec.num_states) + 1
    if cell_cap < 1:
        raise ValueError("cell_cap must be >= 1")
    start = start_configuration(spec)
    empty_chain = ()
    start_key = (start.state, start.head, start.tape, empty_chain if prune else None)
    parents = {start_key: None}
    queue = deque([(start, empty_chain)])
    explored = 0
    cap_hit = False

    def trace(key):
        out = []
        while key is not None:
            state, head, tape, _ = key
            out.append(Configuration(state, head, tape))
            key = parents[key]
        return tuple(reversed(out))

    while queue:
        c, chain = queue.popleft()
        explored += 1
        if max_explored is not None and explored > max_explored:
            raise SearchBudgetExceeded(f"decide_reachability exceeded {max_explored} configurations")
        ckey = (c.state, c.head, c.tape, chain if prune else None)
        if c.state == spec.target_state:
            return ReachResult("reached", explored, trace(ckey), cap_hit)
        sym = symbol_at(c.tape, c.head)
        for action, nxt in spec.transitions.get((c.state, sym), ()):
            if isinstance(action, MoveLeft):
                if c.head == 0:
                    continue
                succ = Configuration(nxt, c.head - 1, c.tape)
                new_chain = chain
            elif isinstance(action, MoveRight):
                succ = Configuration(nxt, c.head + 1, c.tape)
                new_chain = chain
                if prune and c.head == len(chain):
                    guide = compute_nguide(chain[-1] if chain else None, sym, spec, creation_state=nxt)
                    if any(g.answers == guide.answers and g.creation_state == guide.creation_state for g in chain):
                        continue  # prune: duplicate alive guide
                    new_chain = chain + (guide,)
            else:  # Write
                prefix = c.tape[: c.head]
                if len(prefix) < c.head:
                    prefix = prefix + (BLANK,) * (c.head - len(prefix))
                tape = prefix + (action.symbol,)
                while tape and tape[-1] == BLANK:
                    tape = tape[:-1]
                succ = Configuration(nxt, c.head, tape)
                new_chain = chain[: c.head] if prune else chain
            if succ.head > cell_cap or len(succ.tape) > cell_cap:
                cap_hit = True
                continue
            key = (succ.state, succ.head, succ.tape, new_chain if prune else None)
            if key not in parents:
                parents[key] = ckey
                queue.append((succ, new_chain))
    return ReachResult("not-reached", explored, None, cap_hit)
