"""Graph and language primitives: SCCs, transients, lasso runs, equivalence."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .core import (
    AutomatonError,
    CoBuchiAutomaton,
    LassoWord,
    ParityAutomaton,
    Partition,
    Transition,
    normalize_lasso,
)


def _adjacency(a) -> list[list[int]]:
    """Deduplicated successor lists, colors ignored, deterministic order."""
    succ = [set() for _ in range(a.state_count)]
    for t in a.transitions:
        succ[t.src].add(t.dst)
    return [sorted(s) for s in succ]


def _tarjan(nodes, succ):
    """Iterative Tarjan SCC; components are returned in pop (reverse
    topological) order, deterministically for a fixed node/successor order."""
    index: dict = {}
    low: dict = {}
    on_stack = set()
    stack: list = []
    comps: list[list] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(succ(root)))]
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(succ(nxt))))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    q = stack.pop()
                    on_stack.remove(q)
                    comp.append(q)
                    if q == node:
                        break
                comps.append(comp)
    return comps


@dataclass(frozen=True)
class SccDecomposition:
    """Maximal SCCs of the reachable part, listed in topological order.

    The component id doubles as its rank (ids are assigned along a
    topological numbering of the condensation), so ``rank`` is the
    identity map; it is kept as an explicit field because callers consume
    ranks, not ids.
    """

    sccs: tuple[tuple[int, ...], ...]

    @cached_property
    def scc_of(self) -> dict[int, int]:
        return {q: i for i, comp in enumerate(self.sccs) for q in comp}

    @property
    def rank(self) -> dict[int, int]:
        return {i: i for i in range(len(self.sccs))}


@dataclass(frozen=True)
class RunAnalysis:
    """Shape of the unique run of a DPA on a lasso word."""

    stem_states: tuple[int, ...]
    cycle_states: tuple[int, ...]
    dominating_color: int
    accepted: bool


def reachable_states(a, origin: int) -> frozenset[int]:
    """Forward-reachable state set from ``origin``, inclusive."""
    if not 0 <= origin < a.state_count:
        raise AutomatonError(f"state {origin} out of range")
    adj = _adjacency(a)
    seen = {origin}
    todo = deque([origin])
    while todo:
        q = todo.popleft()
        for nxt in adj[q]:
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return frozenset(seen)


def scc_decompose(a) -> SccDecomposition:
    """Maximal SCCs of the part reachable from the initial state."""
    adj = _adjacency(a)
    nodes = sorted(reachable_states(a, a.initial))
    comps = _tarjan(nodes, lambda q: adj[q])
    comps.reverse()
    return SccDecomposition(sccs=tuple(tuple(sorted(c)) for c in comps))


def transient_elements(a) -> tuple[frozenset[Transition], frozenset[int]]:
    """Transitions and states that lie on no cycle of the full graph."""
    adj = _adjacency(a)
    comps = _tarjan(range(a.state_count), lambda q: adj[q])
    comp_of = {q: i for i, comp in enumerate(comps) for q in comp}
    transient_ts = frozenset(
        t for t in a.transitions if comp_of[t.src] != comp_of[t.dst]
    )
    has_self_loop = {t.src for t in a.transitions if t.src == t.dst}
    transient_states = frozenset(
        comp[0]
        for comp in comps
        if len(comp) == 1 and comp[0] not in has_self_loop
    )
    return transient_ts, transient_states


def dpa_lasso_run(a: ParityAutomaton, w: LassoWord, start: int | None = None) -> RunAnalysis:
    """Simulate the unique run of a complete DPA on an ultimately periodic word.

    The run enters its cycle within |prefix| + |Q|*|period| steps; the cycle
    is detected as the first repetition of a (state, period position) pair.
    """
    if start is not None and not 0 <= start < a.state_count:
        raise AutomatonError(f"state {start} out of range")
    q = a.initial if start is None else start
    u, v = w.prefix, w.period
    states = [q]
    colors: list[int] = []
    for sym in u:
        t = a.step(q, sym)
        colors.append(t.color)
        q = t.dst
        states.append(q)
    seen: dict[tuple[int, int], int] = {}
    k = len(u)
    while True:
        phase = (k - len(u)) % len(v)
        if (q, phase) in seen:
            first = seen[(q, phase)]
            break
        seen[(q, phase)] = k
        t = a.step(q, v[phase])
        colors.append(t.color)
        q = t.dst
        states.append(q)
        k += 1
    dominating = min(colors[first:k])
    return RunAnalysis(
        stem_states=tuple(states[:first]),
        cycle_states=tuple(states[first:k]),
        dominating_color=dominating,
        accepted=dominating % 2 == 0,
    )


def gca_lasso_member(a: CoBuchiAutomaton, w: LassoWord) -> bool:
    """Whether some run of the co-Buchi automaton accepts the lasso word.

    Works on the finite product of automaton states with word positions
    0..|prefix|+|period|-1 (period positions wrap): the word is accepted
    iff a cycle of accepting transitions is reachable there, since an
    accepting run is eventually trapped on such a cycle.
    """
    u, v = w.prefix, w.period
    length = len(u) + len(v)

    def letter(p):
        return u[p] if p < len(u) else v[p - len(u)]

    def advance(p):
        return p + 1 if p + 1 < length else len(u)

    start = (a.initial, 0)
    seen = {start}
    todo = deque([start])
    acc_adj: dict[tuple[int, int], list[tuple[int, int]]] = {}
    while todo:
        q, p = todo.popleft()
        nxt_p = advance(p)
        for t in a.successors(q, letter(p)):
            node = (t.dst, nxt_p)
            if t.color == 2:
                acc_adj.setdefault((q, p), []).append(node)
            if node not in seen:
                seen.add(node)
                todo.append(node)
    comps = _tarjan(sorted(seen), lambda n: acc_adj.get(n, ()))
    comp_of = {n: i for i, comp in enumerate(comps) for n in comp}
    for src, dsts in acc_adj.items():
        for dst in dsts:
            if comp_of[src] == comp_of[dst]:
                return True
    return False


class _Product:
    """Synchronous pair product of two complete DPAs, states flattened."""

    def __init__(self, a: ParityAutomaton, b: ParityAutomaton):
        if a.alphabet != b.alphabet:
            raise AutomatonError("automata must share one alphabet")
        self.a, self.b = a, b
        self.size = a.state_count * b.state_count
        n = b.state_count
        self.edges: list[list[tuple[int, int, int, int]]] = [[] for _ in range(self.size)]
        for qa in range(a.state_count):
            for qb in range(b.state_count):
                node = qa * n + qb
                for sym in range(len(a.alphabet)):
                    ta = a.step(qa, sym)
                    tb = b.step(qb, sym)
                    dst = ta.dst * n + tb.dst
                    self.edges[node].append((sym, dst, ta.color, tb.color))

    def full_successors(self, node):
        return [dst for _, dst, _, _ in self.edges[node]]

    def flagged_reachable_nodes(self, ca: int, cb: int) -> set[int]:
        """Nodes from which a cycle with exact color minima (ca, cb) is
        reachable; ca and cb are assumed to be of different parity."""
        restricted: list[list[int]] = [[] for _ in range(self.size)]
        for node in range(self.size):
            for _, dst, c1, c2 in self.edges[node]:
                if c1 >= ca and c2 >= cb:
                    restricted[node].append(dst)
        comps = _tarjan(range(self.size), lambda q: restricted[q])
        comp_of = {q: i for i, comp in enumerate(comps) for q in comp}
        hits_a = set()
        hits_b = set()
        for node in range(self.size):
            for _, dst, c1, c2 in self.edges[node]:
                if c1 >= ca and c2 >= cb and comp_of[node] == comp_of[dst]:
                    if c1 == ca:
                        hits_a.add(comp_of[node])
                    if c2 == cb:
                        hits_b.add(comp_of[node])
        flagged = hits_a & hits_b
        if not flagged:
            return set()
        targets = {q for q in range(self.size) if comp_of[q] in flagged}
        reverse: list[list[int]] = [[] for _ in range(self.size)]
        for node in range(self.size):
            for _, dst, _, _ in self.edges[node]:
                reverse[dst].append(node)
        todo = deque(targets)
        while todo:
            node = todo.popleft()
            for prev in reverse[node]:
                if prev not in targets:
                    targets.add(prev)
                    todo.append(prev)
        return targets


def _parity_pairs(colors_a, colors_b):
    return [
        (ca, cb)
        for ca in colors_a
        for cb in colors_b
        if (ca - cb) % 2 == 1
    ]


@lru_cache(maxsize=64)
def state_equivalence(a: ParityAutomaton) -> Partition:
    """Partition the states of a complete DPA by language equivalence.

    Two states disagree iff the pair product reaches, from their pair, a
    cycle whose two color minima have different parity.  For every ordered
    color pair (x, y) of different parity this is decided by restricting
    the product to edges with colors >= (x, y) and flagging SCCs that
    realize both minima exactly.  Results are cached per automaton, as the
    partition is reused by structuring, chain extraction, and co-runs.
    """
    product = _Product(a, a)
    n = a.state_count
    inequivalent = set()
    for ca, cb in _parity_pairs(a.colors, a.colors):
        for node in product.flagged_reachable_nodes(ca, cb):
            inequivalent.add((node // n, node % n))
    reps: list[int] = []
    members: list[list[int]] = []
    for q in range(n):
        for idx, rep in enumerate(reps):
            if (rep, q) not in inequivalent:
                members[idx].append(q)
                break
        else:
            reps.append(q)
            members.append([q])
    return Partition(classes=tuple(tuple(c) for c in members))


def _bfs_path(succ, sources, goal_test):
    """Shortest path via BFS; returns node list or None.  Deterministic for
    deterministic successor order."""
    prev: dict[int, int | None] = {s: None for s in sources}
    todo = deque(sources)
    while todo:
        node = todo.popleft()
        if goal_test(node):
            path = [node]
            while prev[node] is not None:
                node = prev[node]
                path.append(node)
            return list(reversed(path))
        for nxt in succ(node):
            if nxt not in prev:
                prev[nxt] = node
                todo.append(nxt)
    return None


def dpa_language_equiv(
    a: ParityAutomaton, b: ParityAutomaton
) -> tuple[bool, LassoWord | None]:
    """Decide L(a) = L(b); on inequality also return a witness lasso.

    The witness stem is a shortest product path from the initial pair into
    the first flagged SCC (color pairs in ascending order, then smallest
    SCC entry node), and its period is a product cycle through one edge
    realizing each of the two extremal colors, so the two runs' dominating
    colors have different parity by construction.
    """
    product = _Product(a, b)
    init = a.initial * b.state_count + b.initial
    for ca, cb in sorted(_parity_pairs(a.colors, b.colors)):
        nodes = product.flagged_reachable_nodes(ca, cb)
        if init not in nodes:
            continue
        witness = _extract_witness(product, init, ca, cb)
        return False, witness
    return True, None


def _extract_witness(product: _Product, init: int, ca: int, cb: int) -> LassoWord:
    restricted: list[list[tuple[int, int]]] = [[] for _ in range(product.size)]
    realize_a: list[tuple[int, int, int]] = []
    realize_b: list[tuple[int, int, int]] = []
    for node in range(product.size):
        for sym, dst, c1, c2 in product.edges[node]:
            if c1 >= ca and c2 >= cb:
                restricted[node].append((sym, dst))
                if c1 == ca:
                    realize_a.append((node, sym, dst))
                if c2 == cb:
                    realize_b.append((node, sym, dst))
    comps = _tarjan(range(product.size), lambda q: [d for _, d in restricted[q]])
    comp_of = {q: i for i, comp in enumerate(comps) for q in comp}

    def internal(edges, comp_id):
        return sorted(
            e for e in edges if comp_of[e[0]] == comp_id and comp_of[e[2]] == comp_id
        )

    flagged = sorted(
        {comp_of[e[0]] for e in realize_a if comp_of[e[0]] == comp_of[e[2]]}
        & {comp_of[e[0]] for e in realize_b if comp_of[e[0]] == comp_of[e[2]]}
    )
    best = None
    for comp_id in flagged:  # smallest flagged reachable SCC id wins
        stem_path = _bfs_path(
            product.full_successors, [init], lambda q, c=comp_id: comp_of[q] == c
        )
        if stem_path is not None:
            best = (comp_id, stem_path)
            break
    assert best is not None, "no reachable flagged SCC despite inequivalence"
    comp_id, stem_path = best
    edge_a = internal(realize_a, comp_id)[0]
    edge_b = internal(realize_b, comp_id)[0]

    def inner_succ(q):
        return [d for _, d in restricted[q] if comp_of[d] == comp_id]

    def inner_path(src, dst):
        path = _bfs_path(inner_succ, [src], lambda q: q == dst)
        assert path is not None, "SCC is strongly connected"
        return path

    def letters_along(path):
        out = []
        for here, nxt in zip(path, path[1:]):
            sym = min(s for s, d in restricted[here] if d == nxt)
            out.append(sym)
        return out

    anchor = stem_path[-1]
    period: list[int] = []
    period += letters_along(inner_path(anchor, edge_a[0]))
    period.append(edge_a[1])
    period += letters_along(inner_path(edge_a[2], edge_b[0]))
    period.append(edge_b[1])
    period += letters_along(inner_path(edge_b[2], anchor))

    stem = []
    for here, nxt in zip(stem_path, stem_path[1:]):
        sym = min(s for s, d, _, _ in product.edges[here] if d == nxt)
        stem.append(sym)
    return normalize_lasso(LassoWord(tuple(stem), tuple(period)))
