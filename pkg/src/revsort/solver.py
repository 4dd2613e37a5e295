"""Optimal sorting by good reversals with unsafe-reversal recovery.

The driver applies good reversals greedily (max-negative candidate first,
then min-negative) until none remains, then backtracks: trailing reversals
are undone, eligibility left stale, until the root extremes expose a good
pair again.  That point sits just before the most recent reversal that
created a bad component.  The pairs recorded up to there stay in front, the
undone ones move to the back, and a recursive pass sorts the bad components
in between; when the recursive sequence has odd length, the unsafe pair
itself is dropped because its effect is subsumed by the last inserted pair.

The recursion runs on an explicit frame stack (worst-case depth is linear)
and the tree always returns to the state a frame received, so the recorded
pair order is the deliverable and the concrete reversals are recomputed by
a replay pass.

Trace events (``trace=list`` keyword) are tuples, with a permutation
snapshot appended while n <= 24:

    ("apply", (a, b), (i, j)[, perm])   good pair applied as rho(i, j)
    ("undo", (i, j)[, perm])            reversal undone during recovery
    ("recurse", depth)                  recovery spawned a nested sort
    ("return", length)                  nested sort finished
    ("insert", "even"|"odd")            parity rule used for the insertion
"""

from __future__ import annotations

from collections import deque

import numpy as np

from . import _engine as eng
from .components import clear_bad_components
from .permutation import IdentityPair, ReplayError, Reversal, SignedPermutation
from .revtree import RevTree

_SNAPSHOT_MAX_N = 24


class SortingScenario:
    """Prefix reversals, ordered good pairs, and their replayed reversals."""

    def __init__(self, prefix_reversals, pairs_array, replay_array, final_permutation):
        self.prefix_reversals: list[Reversal] = list(prefix_reversals)
        self._pairs = pairs_array
        self._replays = replay_array
        self.final_permutation = final_permutation

    @property
    def distance(self) -> int:
        return len(self.prefix_reversals) + len(self._pairs)

    @property
    def good_pairs(self) -> list[IdentityPair]:
        out = []
        for a, b in self._pairs:
            lo, hi = (int(a), int(b)) if abs(int(a)) < abs(int(b)) else (int(b), int(a))
            out.append(IdentityPair(lo, hi))
        return out

    @property
    def replayed_reversals(self) -> list[Reversal]:
        return [Reversal(int(i), int(j)) for i, j in self._replays]

    def all_reversals(self) -> list[Reversal]:
        return self.prefix_reversals + self.replayed_reversals

    def __repr__(self):
        return f"SortingScenario(distance={self.distance}, prefix={len(self.prefix_reversals)})"


class _Frame:
    __slots__ = ("base", "top", "back", "s2")

    def __init__(self, base, top):
        self.base = base
        self.top = top
        self.back = deque()
        self.s2 = None


def _snapshot(t, n):
    if n > _SNAPSHOT_MAX_N:
        return ()
    out = np.empty(n + 2, np.int64)
    eng._extract(t, out)
    return (tuple(int(x) for x in out),)


def _do_good_raw(t, recs, cur, trace, n):
    if trace is None:
        return eng._do_good(t, recs, cur)
    while True:
        ok, a, b, i, j = eng._find_good(t)
        if ok == 0:
            return cur
        eng._apply_ij(t, i, j, True)
        recs[cur, 0] = a
        recs[cur, 1] = b
        recs[cur, 2] = i
        recs[cur, 3] = j
        cur += 1
        trace.append(("apply", (int(a), int(b)), (int(i), int(j))) + _snapshot(t, n))


def _recover_raw(t, recs, cur, lo, trace, n):
    if trace is None:
        return eng._recover(t, recs, cur, lo)
    while cur > lo:
        ok = eng._find_good(t)[0]
        if ok == 1:
            break
        cur -= 1
        i, j = int(recs[cur, 2]), int(recs[cur, 3])
        eng._reverse_plain(t, i, j)
        trace.append(("undo", (i, j)) + _snapshot(t, n))
    return cur


def _assert_recovery_stop(t):
    # the backtrack stops exactly on a state with an eligible good candidate
    # (which may sit below the extremes), and an eligible negative exists
    ok = eng._find_good(t)[0]
    assert ok == 1, "recovery stopped without a good pair"
    assert eng._has_negative(t), "recovery stop state has no eligible negative"


_EMPTY_ROWS = np.zeros((0, 4), np.int32)


def _flatten(chunks):
    chunks = [c for c in chunks if len(c)]
    if not chunks:
        return _EMPTY_ROWS
    if len(chunks) == 1:
        return chunks[0]
    return np.concatenate(chunks)


def _solve_records(t, recs, trace=None, debug=False):
    """Ordered (a, b, i, j) rows whose pair order sorts the tree's entry
    permutation, as an (m, 4) array.  Frames other than the outermost leave
    the tree back in their entry state; the outermost frame skips that
    unwinding once no eligibility entry is left, since its callers rebuild
    from the permutation anyway."""
    n = int(t.meta[1])
    cur = _do_good_raw(t, recs, 0, trace, n)
    if eng._is_identity(t):
        # sorted without getting stuck: the recorded order is the answer
        return recs[:cur].copy()
    frames = [_Frame(0, cur)]
    ret = None
    while frames:
        f = frames[-1]
        if ret is not None:
            if trace is not None:
                trace.append(("return", len(ret)))
            if not len(ret):
                raise AssertionError("nested sort returned no pairs at a recovery point")
            if len(ret) % 2 == 0:
                f.back.appendleft(f.s2)
                if trace is not None:
                    trace.append(("insert", "even"))
            else:
                f.back.appendleft(f.s2[1:])
                if trace is not None:
                    trace.append(("insert", "odd"))
            f.back.appendleft(ret)
            ret = None
            f.s2 = None
        if f.top == f.base:
            ret = _flatten(f.back)
            frames.pop()
            continue
        if len(frames) == 1 and int(t.meta[3]) == 0:
            # no eligibility left: every remaining backtrack check fails, so
            # the front rows would move to the back wholesale; emitting them
            # directly avoids undoing the whole stack just to discard it
            ret = _flatten([recs[f.base : f.top].copy()] + list(f.back))
            frames.pop()
            continue
        new_top = _recover_raw(t, recs, f.top, f.base, trace, n)
        s2 = recs[new_top : f.top].copy()
        f.top = new_top
        if new_top == f.base and eng._find_good(t)[0] == 0:
            # fully unwound and still stuck: nothing left to sort here
            ret = _flatten([s2] + list(f.back))
            frames.pop()
            continue
        if debug:
            _assert_recovery_stop(t)
        f.s2 = s2
        if trace is not None:
            trace.append(("recurse", len(frames)))
        child_top = _do_good_raw(t, recs, new_top, trace, n)
        frames.append(_Frame(new_top, child_top))
    return ret


def _tree_replay(p: SignedPermutation, pairs: np.ndarray):
    size = p.n + 2
    zeros = np.zeros(size, np.uint8)
    t = eng.new_tree(np.array(p.elems, np.int64), zeros, zeros)
    out = np.empty((len(pairs), 2), np.int32)
    if len(pairs):
        qlos = np.minimum(np.abs(pairs[:, 0]), np.abs(pairs[:, 1]))
        qhis = np.maximum(np.abs(pairs[:, 0]), np.abs(pairs[:, 1]))
        bad = int(eng._replay_all(t, qlos, qhis, out))
        if bad >= 0:
            raise ReplayError(f"pair #{bad} not good at replay (solver bug)")
    res = np.empty(size, np.int64)
    eng._extract(t, res)
    return out, SignedPermutation(int(x) for x in res)


def sort_signed_permutation(p: SignedPermutation, trace: list | None = None, debug: bool = False) -> SortingScenario:
    """Minimum-length sorting scenario: bad components cleared by a prefix,
    then a good-pair sequence found on the tree and replayed."""
    prefix, cleared = clear_bad_components(p)
    tree = RevTree.build(cleared)
    recs = np.zeros((2 * p.n + 8, 4), np.int32)
    rows = _solve_records(tree._t, recs, trace=trace, debug=debug)
    pairs = rows[:, :2].copy()
    replays, final = _tree_replay(cleared, pairs)
    if not final.is_identity():
        raise AssertionError("solver output does not sort to the identity")
    return SortingScenario(prefix, pairs, replays, final)


def reversal_distance(p: SignedPermutation) -> int:
    return sort_signed_permutation(p).distance


# -- tree-level operations (the solver uses these same kernels) ---------------


def do_good(tree: RevTree) -> list[IdentityPair]:
    """Apply good reversals until none remains; pairs in application order."""
    recs = np.zeros((2 * tree.n + 8, 4), np.int32)
    cur = int(eng._do_good(tree._t, recs, 0))
    return _pairs_of(recs, cur)


def sort_good_tree(tree: RevTree, trace: list | None = None, debug: bool = False) -> list[IdentityPair]:
    """Good-pair order sorting the tree's permutation (no bad components at
    entry)."""
    recs = np.zeros((2 * tree.n + 8, 4), np.int32)
    rows = _solve_records(tree._t, recs, trace=trace, debug=debug)
    return _pairs_of(rows, len(rows))


def recover(tree: RevTree, seq: list[tuple[IdentityPair, Reversal]]):
    """Undo applied (pair, reversal) records from the end, eligibility kept
    stale, until a good pair appears; returns the (front, back) split."""
    recs = np.zeros((max(len(seq), 1), 4), np.int32)
    for k, (pair, r) in enumerate(seq):
        recs[k] = (pair.lo_element, pair.hi_element, r.i, r.j)
    new_top = int(eng._recover(tree._t, recs, len(seq), 0))
    return seq[:new_top], seq[new_top:]


def _pairs_of(recs, cur) -> list[IdentityPair]:
    out = []
    for k in range(cur):
        a, b = int(recs[k, 0]), int(recs[k, 1])
        lo, hi = (a, b) if abs(a) < abs(b) else (b, a)
        out.append(IdentityPair(lo, hi))
    return out
