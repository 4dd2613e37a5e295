"""Framed common intervals, components, eligibility sets, hurdle clearing.

A framed common interval (FCI) is a block (a x ... y b) or (-b x ... y -a)
whose interior holds exactly the values between the frames a < b, and which
is not a chain of shorter such blocks sharing frame positions.  A component
is the frame pair of an FCI plus the interior elements that are not interior
to a nested FCI.  Components with at least four elements and uniform sign
are bad: no good reversal can sort them, so they must be cleared by paying
extra reversals up front.

Detection runs as a single left-to-right scan per frame orientation.  For
the direct form, a left frame at position p with value a and a right frame
at position e with value b satisfy p - a == e - b, so candidates live in
per-key buckets; a candidate survives until an element smaller than its
frame value appears, and a bucket entry is consumed by the nearest valid
right frame.  The shortest interval per left frame is exactly the FCI (any
longer one is a chain).  The reversed form is the direct form of the
flipped permutation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .permutation import Reversal, SignedPermutation, adjacencies, apply_reversal


@dataclass(frozen=True)
class FramedInterval:
    start_pos: int
    end_pos: int
    frame_lo: int
    frame_hi: int
    reversed_frame: bool


@dataclass(frozen=True)
class Component:
    elements: tuple[int, ...]  # signed values in position order
    positions: tuple[int, ...]
    start_pos: int
    end_pos: int
    kind: str  # "trivial" | "good" | "bad"
    parent: int | None

    @property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)


@dataclass
class ComponentForest:
    fcis: list[FramedInterval]
    components: list[Component]

    def bad(self) -> list[Component]:
        return [c for c in self.components if c.kind == "bad"]

    def to_json(self):
        return [{"elements": list(c.elements), "kind": c.kind} for c in self.components]


@dataclass(frozen=True)
class EligiblePair:
    """Elements whose lower (qm) or upper (qmini) adjacency is still absent."""

    qm: frozenset
    qmini: frozenset


@njit(cache=True)
def _scan_direct(absv, sgnv):
    """Direct-form FCIs (+a ... +b); returns (starts, ends, count)."""
    N = len(absv)
    OFF = N
    head = np.full(2 * N, -1, np.int64)
    tail = np.full(2 * N, -1, np.int64)
    nxt = np.full(N, -1, np.int64)
    prv = np.full(N, -1, np.int64)
    dead = np.zeros(N, np.uint8)
    smin = np.empty(N, np.int64)
    smax = np.empty(N, np.int64)
    out_s = np.empty(N, np.int64)
    out_e = np.empty(N, np.int64)
    smin_top = 0
    smax_top = 0
    cnt = 0
    for e in range(N):
        x = absv[e]
        while smax_top > 0 and absv[smax[smax_top - 1]] < x:
            smax_top -= 1
        L = smax[smax_top - 1] if smax_top > 0 else -1
        while smin_top > 0 and absv[smin[smin_top - 1]] > x:
            dead[smin[smin_top - 1]] = 1
            smin_top -= 1
        if sgnv[e] > 0:
            k = e - x + OFF
            p = tail[k]
            while p >= 0 and p > L:
                pp = prv[p]
                if dead[p] == 0:
                    out_s[cnt] = p
                    out_e[cnt] = e
                    cnt += 1
                # unlink p (it is the current tail segment end)
                if pp >= 0:
                    nxt[pp] = -1
                else:
                    head[k] = -1
                tail[k] = pp
                prv[p] = -1
                p = pp
        smin[smin_top] = e
        smin_top += 1
        smax[smax_top] = e
        smax_top += 1
        if sgnv[e] > 0:
            k = e - x + OFF
            t = tail[k]
            if t < 0:
                head[k] = e
            else:
                nxt[t] = e
                prv[e] = t
            tail[k] = e
    return out_s, out_e, cnt


@njit(cache=True)
def _all_fcis(absv, sgnv):
    """All FCIs as (starts, ends, reversed_flag), sorted by start position."""
    N = len(absv)
    s1, e1, c1 = _scan_direct(absv, sgnv)
    fa = np.empty(N, np.int64)
    fs = np.empty(N, np.int8)
    for k in range(N):
        fa[k] = absv[N - 1 - k]
        fs[k] = -sgnv[N - 1 - k]
    s2, e2, c2 = _scan_direct(fa, fs)
    starts = np.empty(c1 + c2, np.int64)
    ends = np.empty(c1 + c2, np.int64)
    revf = np.zeros(c1 + c2, np.uint8)
    for k in range(c1):
        starts[k] = s1[k]
        ends[k] = e1[k]
    for k in range(c2):
        starts[c1 + k] = N - 1 - e2[k]
        ends[c1 + k] = N - 1 - s2[k]
        revf[c1 + k] = 1
    order = np.argsort(starts)
    return starts[order], ends[order], revf[order]


@njit(cache=True)
def _component_stats(absv, sgnv, starts, ends):
    """Per-FCI component element count, negative count, and nesting parent."""
    m = len(starts)
    N = len(absv)
    total = np.zeros(m, np.int64)
    neg = np.zeros(m, np.int64)
    parent = np.full(m, -1, np.int64)
    start_at = np.full(N, -1, np.int64)
    end_at = np.full(N, -1, np.int64)
    for k in range(m):
        start_at[starts[k]] = k
        end_at[ends[k]] = k
    stack = np.empty(m + 1, np.int64)
    top = 0
    for p in range(N):
        f_new = start_at[p]
        if f_new >= 0:
            for t in range(top - 1, -1, -1):
                f = stack[t]
                if starts[f] < p and ends[f] > ends[f_new]:
                    parent[f_new] = f
                    break
            stack[top] = f_new
            top += 1
        isneg = 1 if sgnv[p] < 0 else 0
        if f_new >= 0:
            total[f_new] += 1
            neg[f_new] += isneg
        f_end = end_at[p]
        if f_end >= 0 and f_end != f_new:
            total[f_end] += 1
            neg[f_end] += isneg
        for t in range(top - 1, -1, -1):
            f = stack[t]
            if starts[f] < p and ends[f] > p:
                total[f] += 1
                neg[f] += isneg
                break
        while top > 0 and ends[stack[top - 1]] == p:
            top -= 1
    return total, neg, parent


@njit(cache=True)
def _component_positions(absv, sgnv, starts, ends, total):
    """Element positions per component, concatenated with offsets."""
    m = len(starts)
    N = len(absv)
    off = np.zeros(m + 1, np.int64)
    for k in range(m):
        off[k + 1] = off[k] + total[k]
    fill = off[:m].copy()
    flat = np.empty(off[m], np.int64)
    start_at = np.full(N, -1, np.int64)
    end_at = np.full(N, -1, np.int64)
    for k in range(m):
        start_at[starts[k]] = k
        end_at[ends[k]] = k
    stack = np.empty(m + 1, np.int64)
    top = 0
    for p in range(N):
        f_new = start_at[p]
        if f_new >= 0:
            stack[top] = f_new
            top += 1
            flat[fill[f_new]] = p
            fill[f_new] += 1
        f_end = end_at[p]
        if f_end >= 0 and f_end != f_new:
            flat[fill[f_end]] = p
            fill[f_end] += 1
        for t in range(top - 1, -1, -1):
            f = stack[t]
            if starts[f] < p and ends[f] > p:
                flat[fill[f]] = p
                fill[f] += 1
                break
        while top > 0 and ends[stack[top - 1]] == p:
            top -= 1
    return off, flat


def _arrays(p: SignedPermutation):
    e = np.array(p.elems, dtype=np.int64)
    return np.abs(e), np.where(e < 0, -1, 1).astype(np.int8)


def find_components(p: SignedPermutation) -> ComponentForest:
    """All FCIs with nesting, component element sets, and classification."""
    absv, sgnv = _arrays(p)
    starts, ends, revf = _all_fcis(absv, sgnv)
    total, neg, parent = _component_stats(absv, sgnv, starts, ends)
    off, flat = _component_positions(absv, sgnv, starts, ends, total)
    fcis = []
    comps = []
    for k in range(len(starts)):
        s, e = int(starts[k]), int(ends[k])
        a, b = int(absv[s]), int(absv[e])
        if revf[k]:
            a, b = b, a
        fcis.append(
            FramedInterval(start_pos=s, end_pos=e, frame_lo=min(a, b), frame_hi=max(a, b), reversed_frame=bool(revf[k]))
        )
        positions = tuple(int(q) for q in flat[off[k] : off[k + 1]])
        elements = tuple(int(p.elems[q]) for q in positions)
        uniform = neg[k] == 0 or neg[k] == total[k]
        if uniform:
            # uniform components below four elements are adjacency suites
            kind = "bad" if total[k] >= 4 else "trivial"
        else:
            kind = "good"
        comps.append(
            Component(
                elements=elements,
                positions=positions,
                start_pos=s,
                end_pos=e,
                kind=kind,
                parent=int(parent[k]) if parent[k] >= 0 else None,
            )
        )
    return ComponentForest(fcis=fcis, components=comps)


def has_bad_component(p: SignedPermutation) -> bool:
    absv, sgnv = _arrays(p)
    starts, ends, _ = _all_fcis(absv, sgnv)
    total, neg, _ = _component_stats(absv, sgnv, starts, ends)
    return bool(np.any((total >= 4) & ((neg == 0) | (neg == total))))


def eligibility_flags(p: SignedPermutation):
    """Per-element eligibility as flag arrays indexed by absolute value."""
    e = np.asarray(p.elems, dtype=np.int64)
    adj = e[1:] - e[:-1] == 1
    lower = np.where(adj, np.minimum(np.abs(e[1:]), np.abs(e[:-1])), -1)
    size = p.n + 2
    qm = np.ones(size, np.int32)
    qn = np.ones(size, np.int32)
    qm[0] = 0
    qn[size - 1] = 0
    formed = lower[lower >= 0]
    qm[formed + 1] = 0
    qn[formed] = 0
    return qm, qn


def eligible_sets(p: SignedPermutation) -> EligiblePair:
    """qm: upper elements of absent adjacencies; qmini: lower elements."""
    qm, qn = eligibility_flags(p)
    return EligiblePair(
        qm=frozenset(int(x) for x in np.nonzero(qm)[0]),
        qmini=frozenset(int(x) for x in np.nonzero(qn)[0]),
    )


def _strictly_inside(inner: Component, outer: Component) -> bool:
    return outer.start_pos < inner.start_pos and inner.end_pos < outer.end_pos


def _cut_reversal(p: SignedPermutation, comp: Component) -> Reversal:
    """One reversal inside a uniform-sign component that leaves it mixed.

    Acts on the two breakpoints flanking a not-yet-adjacent value pair
    (q, q+1) of the component.  Those breakpoints always belong to one
    breakpoint-graph cycle (they meet along the pair's desire edge), so the
    reversal cannot merge cycles, and both are genuine breakpoints, so no
    adjacency is destroyed: the move costs exactly one step of distance.
    """
    by_abs = {abs(v): pos for v, pos in zip(comp.elements, comp.positions)}
    sigma = 1 if comp.elements[0] >= 0 else -1
    vals = sorted(by_abs)
    e = p.elems
    for q, q1 in zip(vals, vals[1:]):
        if q1 != q + 1:
            continue
        u, w = by_abs[q], by_abs[q1]
        lo, hi = (u, w) if u < w else (w, u)
        if hi - lo == 1 and e[hi] - e[lo] == 1:
            continue  # already an adjacency
        if sigma > 0:
            return Reversal(u + 1, w - 1) if u < w else Reversal(w, u)
        return Reversal(u, w) if u < w else Reversal(w + 1, u - 1)
    raise AssertionError(f"component {comp.elements} has no breakpoint value pair")


def _merge_reversal(first: Component, second: Component) -> Reversal:
    """Join two disjoint (or frame-chained) bad components.

    The span runs from one inner frame to the other, flipping both frame
    elements; both boundaries are frame-inward breakpoints.
    """
    i = first.end_pos
    j = second.start_pos
    if i > j:
        i, j = second.end_pos, first.start_pos
    return Reversal(i, j)


def _merge_nested(inner: Component, outer: Component) -> Reversal:
    """Join a bad component with a strictly enclosing bad ancestor.

    Spans from the inner right frame to just inside the outer right frame:
    the inner frame (an element of every enclosing component) flips, so the
    whole ancestor chain between them turns mixed-sign in one reversal.
    """
    return Reversal(inner.end_pos, outer.end_pos - 1)


def clear_bad_components(p: SignedPermutation) -> tuple[list[Reversal], SignedPermutation]:
    """Prefix reversals R with p*R free of bad components, |R| + d(p*R) = d(p).

    Strategy per round: merge the outermost pair of hurdles (minimal bad
    components) when there are several; merge a lone hurdle with its
    outermost bad ancestor when one exists; otherwise cut the lone hurdle.
    Two hurdles under a common bad ancestor are merged ancestor-first so the
    ancestor cannot survive as a fresh hurdle.
    """
    if not has_bad_component(p):
        return [], p
    out: list[Reversal] = []
    cur = p
    rounds = 0
    while True:
        forest = find_components(cur)
        bads = forest.bad()
        if not bads:
            return out, cur
        rounds += 1
        if rounds > 2 * len(bads) + 2 * len(out) + 8:
            raise AssertionError("bad-component clearing failed to converge")
        hurdles = [b for b in bads if not any(o is not b and _strictly_inside(o, b) for o in bads)]
        hurdles.sort(key=lambda c: c.start_pos)
        if len(hurdles) == 1:
            h = hurdles[0]
            ancestors = [b for b in bads if _strictly_inside(h, b)]
            if ancestors:
                outer = max(ancestors, key=lambda c: c.end_pos - c.start_pos)
                r = _merge_nested(h, outer)
            else:
                r = _cut_reversal(cur, h)
        elif len(hurdles) == 2:
            common = [
                b
                for b in bads
                if b is not hurdles[0]
                and b is not hurdles[1]
                and b.start_pos <= hurdles[0].start_pos
                and hurdles[1].end_pos <= b.end_pos
            ]
            if common:
                outer = max(common, key=lambda c: c.end_pos - c.start_pos)
                r = _merge_nested(hurdles[0], outer)
            else:
                r = _merge_reversal(hurdles[0], hurdles[1])
        else:
            r = _merge_reversal(hurdles[0], hurdles[-1])
        out.append(r)
        cur = apply_reversal(cur, r)
