"""Reference solver on the overlap graph.

Vertex q stands for the interval between the points q+ and (q+1)- in the
point embedding of the permutation; two vertices are adjacent when their
intervals overlap without containment, and a vertex is good when its pair
(q, q+1) has opposite signs.  A good reversal corresponds to complementing
the closed neighborhood of a good vertex, toggling all its colors.

Everything here favors clarity over speed: adjacency is a dense bitset per
vertex, components are recomputed from scratch, and the sorter replays
prefixes from snapshots while backtracking.  It exists to cross-check the
tree solver, which mirrors the same control flow.
"""

from __future__ import annotations

from dataclasses import dataclass

from .permutation import SignedPermutation


@dataclass(frozen=True)
class SplitAnalysis:
    """How complementing a vertex splits its component.

    bad: vertices of the non-singleton components of the result that keep
    no good vertex (isolated vertices are finished and dropped, as is the
    complemented vertex itself); good_side: vertices of the components
    that keep a good vertex; cut: the good-side neighbors of the vertex,
    plus the vertex.
    """

    vertex: int
    bad: frozenset
    good_side: frozenset
    cut: frozenset


class OverlapGraph:
    """Bi-colored overlap graph with local complementation."""

    def __init__(self, n: int, adj: list[int], good: list[bool]):
        self.n = n
        self.adj = adj
        self.good = good

    @classmethod
    def build(cls, p: SignedPermutation) -> "OverlapGraph":
        n = p.n
        left = [0] * (n + 2)
        right = [0] * (n + 2)
        idx = 0
        for x in p.elems:
            a = abs(x)
            if x >= 0:
                left[a], right[a] = idx, idx + 1
            else:
                left[a], right[a] = idx + 1, idx
            idx += 2
        # frame elements contribute one point each
        lo = [0] * (n + 1)
        hi = [0] * (n + 1)
        for q in range(n + 1):
            a, b = right[q], left[q + 1]
            lo[q], hi[q] = min(a, b), max(a, b)
        adj = [0] * (n + 1)
        for u in range(n + 1):
            for v in range(u + 1, n + 1):
                if lo[u] < lo[v] <= hi[u] < hi[v] or lo[v] < lo[u] <= hi[v] < hi[u]:
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
        by_abs = {abs(x): x for x in p.elems}
        good = [(by_abs[q] < 0) != (by_abs[q + 1] < 0) for q in range(n + 1)]
        return cls(n, adj, good)

    def copy(self) -> "OverlapGraph":
        return OverlapGraph(self.n, list(self.adj), list(self.good))

    def vertices(self) -> range:
        return range(self.n + 1)

    def neighbors(self, v: int) -> set[int]:
        return _bits(self.adj[v])

    def is_isolated(self, v: int) -> bool:
        return self.adj[v] == 0

    def _complement_in_place(self, v: int) -> None:
        if not self.good[v]:
            raise ValueError(f"vertex {v} is bad; only good vertices complement")
        w = self.adj[v] | (1 << v)
        for u in _bits(w):
            self.adj[u] ^= w & ~(1 << u)
            self.good[u] = not self.good[u]

    def complement(self, v: int) -> "OverlapGraph":
        """H/v: complement edges inside N(v) + v and toggle those colors."""
        h = self.copy()
        h._complement_in_place(v)
        return h

    def components(self) -> list[frozenset]:
        seen = [False] * (self.n + 1)
        out = []
        for s in self.vertices():
            if seen[s]:
                continue
            comp = []
            stack = [s]
            seen[s] = True
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in _bits(self.adj[u]):
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            out.append(frozenset(comp))
        return out

    def component_of(self, v: int) -> frozenset:
        for comp in self.components():
            if v in comp:
                return comp
        raise AssertionError

    def has_all_bad_component(self, within: set | None = None) -> bool:
        for comp in self.components():
            if within is not None:
                comp = comp & within
            if len(comp) > 1 and not any(self.good[u] for u in comp):
                return True
        return False

    def to_dot(self) -> str:
        """Colored dot export for documentation; format not stable."""
        lines = ["graph overlap {"]
        for v in self.vertices():
            color = "black" if self.good[v] else "white"
            lines.append(f'  v{v} [label="{v}", style=filled, fillcolor={color}];')
        for v in self.vertices():
            for u in _bits(self.adj[v]):
                if u > v:
                    lines.append(f"  v{v} -- v{u};")
        lines.append("}")
        return "\n".join(lines)


def _bits(mask: int):
    out = set()
    while mask:
        b = mask & -mask
        out.add(b.bit_length() - 1)
        mask ^= b
    return out


def analyze_split(h: OverlapGraph, v: int) -> SplitAnalysis:
    """Partition the complemented graph's components into bad and good sides
    and assert the structural facts the recovery scheme rests on."""
    if not h.good[v]:
        raise ValueError(f"vertex {v} is bad; nothing to analyze")
    affected = h.component_of(v)
    after = h.complement(v)
    bad: set[int] = set()
    good_side: set[int] = set()
    for comp in after.components():
        comp = comp & affected
        if len(comp) < 2:
            continue
        if any(after.good[u] for u in comp):
            good_side |= comp
        else:
            bad |= comp
    bad.discard(v)
    good_side.discard(v)
    nv = h.neighbors(v)
    cut = (good_side & nv) | {v}

    # splitting happens exactly when neighbor parts are fully joined and
    # non-neighbor parts are fully separated
    parts = [frozenset(c & affected) for c in after.components() if c & affected and (c & affected) != {v}]
    for a in range(len(parts)):
        for b in range(a + 1, len(parts)):
            ca, cb = parts[a], parts[b]
            for x in ca & nv:
                for y in cb & nv:
                    assert y in h.neighbors(x), "neighbor parts must be fully joined before the split"
            for x in ca - nv:
                for y in cb - nv:
                    assert y not in h.neighbors(x), "non-neighbor parts must be separated before the split"
    # colors in the bad side: neighbors of v were good, the rest bad
    for u in bad:
        assert h.good[u] == (u in nv), "bad-side colors must follow adjacency to the vertex"
    return SplitAnalysis(vertex=v, bad=frozenset(bad), good_side=frozenset(good_side), cut=frozenset(cut))


def _get_good(h: OverlapGraph, q: set[int]) -> int | None:
    for v in sorted(q):
        if h.good[v]:
            return v
    return None


def sort_graph(h: OverlapGraph, q: set[int] | None = None, debug: bool = False):
    """Complementation order sorting every good component of h[q].

    Returns (sequence, final_q).  Good vertices are complemented until none
    remains in q; the driver then backtracks to the longest prefix whose
    state still shows a good vertex in q, recursively sorts from there, and
    keeps or drops the first backed-out complementation by the parity of
    the inserted sequence.  Graph states are replayed from the entry graph;
    h itself is never modified.
    """
    if q is None:
        q = {v for v in h.vertices() if not h.is_isolated(v)}
    if h.has_all_bad_component(within=set(q)):
        raise ValueError("entry graph restricted to q has an all-bad component")
    seq, final_q = _sort_graph(h, set(q), debug)
    final = _replay(h, seq)
    for v in final_q:
        if final.adj[v]:
            raise AssertionError("sorted graph keeps a non-isolated vertex in q")
    return seq, final_q


def _sort_graph(entry: OverlapGraph, q: set[int], debug: bool):
    g = entry.copy()
    s_f, q = _do_good(g, q)
    s_b: list[int] = []
    while s_f:
        s_1, s_2 = _recover(entry, s_f, q)
        if debug and s_2:
            state = _replay(entry, s_1)
            if state.good[s_2[0]]:
                analyze_split(state, s_2[0])
        sub, q = _sort_graph(_replay(entry, s_1), q, debug)
        if len(sub) % 2 == 0:
            s_b = sub + s_2 + s_b
        else:
            s_b = sub + s_2[1:] + s_b
        s_f = s_1
    return s_b, q


def _do_good(h: OverlapGraph, q: set[int]):
    """Complement good vertices of h[q] until none remains, dropping the
    vertices each step isolates; h is modified in place.

    Isolation is judged in the full graph: a vertex that merely lost its
    last neighbor inside q may still carry work, and a fully isolated one
    never gains an edge again, so the removal is sound and permanent.
    """
    seq = []
    while True:
        v = _get_good(h, q)
        if v is None:
            return seq, q
        h._complement_in_place(v)
        seq.append(v)
        q = {u for u in q if h.adj[u]}


def _mask(q: set[int]) -> int:
    m = 0
    for u in q:
        m |= 1 << u
    return m


def _replay(entry: OverlapGraph, seq: list[int]) -> OverlapGraph:
    g = entry.copy()
    for v in seq:
        g._complement_in_place(v)
    return g


def _recover(entry: OverlapGraph, s: list[int], q: set[int]):
    """Longest prefix s_1 of s whose replayed state has a good vertex in q."""
    s_1 = list(s)
    s_2: list[int] = []
    while s_1:
        g = _replay(entry, s_1)
        if _get_good(g, q) is not None:
            break
        s_2.insert(0, s_1.pop())
    return s_1, s_2
