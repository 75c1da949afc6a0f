"""Canonicalization pipeline: structure a DPA, streamline it, extract the chain."""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    AutomatonError,
    ChainRepresentation,
    CoBuchiAutomaton,
    ParityAutomaton,
    Partition,
    PreconditionError,
    Transition,
)
from .graphs import _tarjan, reachable_states, scc_decompose, state_equivalence


def is_structured(a: ParityAutomaton) -> tuple[bool, list[str]]:
    """Check the two structuredness conditions: full reachability, and every
    language-equivalence class contained in a single maximal SCC."""
    violations = []
    reach = reachable_states(a, a.initial)
    unreachable = sorted(set(range(a.state_count)) - reach)
    if unreachable:
        violations.append(f"unreachable states {unreachable}")
    partition = state_equivalence(a)
    scc = scc_decompose(a)
    for cid, members in enumerate(partition.classes):
        scc_ids = sorted({scc.scc_of[q] for q in members if q in scc.scc_of})
        if len(scc_ids) > 1:
            violations.append(
                f"equivalence class {cid} {members} spans SCCs {tuple(scc_ids)}"
            )
    return not violations, violations


def _restrict_to(a: ParityAutomaton, keep: list[int]) -> tuple[ParityAutomaton, dict[int, int]]:
    """Sub-automaton on ``keep`` (order preserved), with the old->new id map."""
    remap = {old: new for new, old in enumerate(keep)}
    kept = set(keep)
    ts = tuple(
        Transition(remap[t.src], t.sym, remap[t.dst], t.color)
        for t in a.transitions
        if t.src in kept and t.dst in kept
    )
    out = ParityAutomaton(
        alphabet=a.alphabet,
        state_count=len(keep),
        initial=remap[a.initial],
        transitions=ts,
    )
    return out, remap


def structure_dpa_with_map(a: ParityAutomaton) -> tuple[ParityAutomaton, dict[int, int]]:
    """Like ``structure_dpa`` but also returns the id map original -> final
    for surviving states.  Ids are compacted order-preservingly whenever
    states are dropped, so an already-structured input maps identically.
    """
    cur = a
    id_map = {q: q for q in range(a.state_count)}

    def drop_unreachable():
        nonlocal cur, id_map
        reach = reachable_states(cur, cur.initial)
        if len(reach) == cur.state_count:
            return False
        cur, remap = _restrict_to(cur, sorted(reach))
        id_map = {orig: remap[q] for orig, q in id_map.items() if q in remap}
        return True

    for _ in range((a.state_count + 2) ** 2):
        changed = drop_unreachable()
        partition = state_equivalence(cur)
        scc = scc_decompose(cur)

        def redirect(q: int) -> int:
            members = partition.mates(q)
            best_rank = max(scc.scc_of[m] for m in members)
            if scc.scc_of[q] == best_rank:
                return q
            return min(m for m in members if scc.scc_of[m] == best_rank)

        new_initial = redirect(cur.initial)
        new_ts = tuple(
            Transition(t.src, t.sym, redirect(t.dst), t.color) for t in cur.transitions
        )
        if new_initial != cur.initial or new_ts != cur.transitions:
            cur = ParityAutomaton(cur.alphabet, cur.state_count, new_initial, new_ts)
            changed = True
        if not changed:
            ok, violations = is_structured(cur)
            if not ok:  # pragma: no cover - fixpoint implies structured
                raise AutomatonError(f"structuring stalled: {violations}")
            return cur, id_map
    raise AutomatonError("structuring did not converge")  # pragma: no cover


def structure_dpa(a: ParityAutomaton) -> ParityAutomaton:
    """Equivalent structured automaton: every state reachable, every
    language-equivalence class inside one maximal SCC.

    Transitions into a class that has members in a later SCC are bent to a
    fixed representative there (the lowest-indexed member), the initial
    state is re-seated the same way, unreachable states are dropped, and
    this repeats until a fixpoint.  Redirected transitions keep their
    colors; every redirect targets a language-equivalent state and only
    finitely many redirects can occur on any run, so the language is
    unchanged.
    """
    return structure_dpa_with_map(a)[0]


def streamline(a: ParityAutomaton) -> ParityAutomaton:
    """Push transition colors down as far as the language allows.

    Works on a coloring graph holding the not-yet-recolored transitions.
    With a counter i starting at 0: transitions of the graph that lie on
    no cycle get color i and are removed; then every SCC whose least
    remaining color has the parity of i has those least-color transitions
    recolored to i and removed, which restarts the scan without
    incrementing; otherwise i increments.  Colors only ever decrease, the
    edge structure is untouched, and the automaton's language (in fact the
    dominating color's parity on every run) is preserved.
    """
    ok, violations = is_structured(a)
    if not ok:
        raise PreconditionError("automaton is not structured: " + "; ".join(violations))

    new_color: dict[tuple[int, int], int] = {}
    live: set[Transition] = set(a.transitions)
    i = 0
    while live:
        succ: dict[int, set[int]] = {}
        for t in live:
            succ.setdefault(t.src, set()).add(t.dst)
        nodes = sorted({t.src for t in live} | {t.dst for t in live})
        comps = _tarjan(nodes, lambda q: sorted(succ.get(q, ())))
        comp_of = {q: c for c, comp in enumerate(comps) for q in comp}

        transient = {t for t in live if comp_of[t.src] != comp_of[t.dst]}
        for t in transient:
            new_color[(t.src, t.sym)] = i
        live -= transient

        lowered = False
        for comp_id in range(len(comps)):
            internal = [t for t in live if comp_of[t.src] == comp_id == comp_of[t.dst]]
            if not internal:
                continue
            least = min(t.color for t in internal)
            if least % 2 == i % 2:
                for t in internal:
                    if t.color == least:
                        new_color[(t.src, t.sym)] = i
                        live.remove(t)
                lowered = True
        if not lowered:
            i += 1

    ts = tuple(
        Transition(t.src, t.sym, t.dst, new_color[(t.src, t.sym)])
        for t in a.transitions
    )
    return ParityAutomaton(a.alphabet, a.state_count, a.initial, ts)


def is_streamlined(a: ParityAutomaton) -> bool:
    """Whether streamlining is a no-op, i.e. the colors are already minimal."""
    return streamline(a).transitions == a.transitions


def extract_chain(a: ParityAutomaton, equiv: Partition) -> ChainRepresentation:
    """Build the chain A_0..A_{cmax+1} of co-Buchi automata from a
    streamlined DPA.

    Level i keeps every transition, accepting (color 2) when its color in
    the source automaton is >= i and rejecting otherwise, and adds a
    rejecting jump transition to every other state language-equivalent to
    the deterministic target.  Levels are defined for every integer up to
    cmax+1, so absent colors simply repeat the next occurring level.
    """
    if equiv.state_count != a.state_count:
        raise AutomatonError("partition does not match the automaton's state count")
    if not is_streamlined(a):
        raise PreconditionError("chain extraction requires a streamlined automaton")
    jumps = tuple(
        Transition(t.src, t.sym, mate, 1)
        for t in a.transitions
        for mate in equiv.mates(t.dst)
        if mate != t.dst
    )
    levels = []
    for i in range(a.max_color + 2):
        ts = tuple(
            Transition(t.src, t.sym, t.dst, 2 if t.color >= i else 1)
            for t in a.transitions
        )
        levels.append(
            CoBuchiAutomaton(
                alphabet=a.alphabet,
                state_count=a.state_count,
                initial=a.initial,
                transitions=ts + jumps,
                gfg_claimed=True,
            )
        )
    return ChainRepresentation(levels=tuple(levels), source_color_max=a.max_color)


@dataclass(frozen=True)
class ChainLevelStats:
    level: int
    states: int
    accepting_transitions: int
    jump_transitions: int


def chain_stats(c: ChainRepresentation) -> tuple[ChainLevelStats, ...]:
    """Per-level counts.  The jump set is level-independent by construction:
    at level 0 the original transitions are all accepting, so the level-0
    rejecting transitions are exactly the jumps."""
    jump_count = sum(1 for t in c.levels[0].transitions if t.color == 1)
    return tuple(
        ChainLevelStats(
            level=i,
            states=lvl.state_count,
            accepting_transitions=sum(1 for t in lvl.transitions if t.color == 2),
            jump_transitions=jump_count,
        )
        for i, lvl in enumerate(c.levels)
    )
