"""Compiled splay-tree kernels for reversal sorting.

The tree is stored as one int32 matrix with a row per node, indexed by
absolute element value, so the element-to-node map is the row index and a
node's fields share a cache line.  Columns:

    PAR/LCH/RCH   structural links (-1 for none)
    SZ            subtree size
    MNEG          max displayed negative with |value| eligible in qm
    MPOS          min displayed positive with value eligible in qm
    MINEG         min displayed negative with |value| eligible in qn
    MIPOS         max displayed positive with value eligible in qn
    SGN           element sign in the node's resolved frame
    REV           lazy flag: subtree (node included) reversed and sign-flipped
    QM/QN         eligibility flags (upper/lower adjacency still absent)

Aggregates always describe the subtree as displayed, rev flag included, so
combining children needs no flag adjustment, and a rev toggle pairs with
one aggregate flip: MPOS mirrors MNEG under a sign flip, MIPOS mirrors
MINEG, and the tuple maps to (-MPOS, -MNEG, -MIPOS, -MINEG).  Absent values
use +-ABSENT, which negation maps onto each other, so the flip is
branch-free.

meta[0] holds the root, meta[1] n, meta[2] a rotation counter, meta[3] the
number of set eligibility flags (once it hits zero no candidate can ever
reappear, which lets the driver skip a pointless final unwind).  rev flags
only ever start at the root of a detached interior block, so the frame
elements 0 and n+1 never sit under a set flag and their signs are fixed.
"""

import numpy as np
from collections import namedtuple
from numba import njit

ABSENT = 1 << 29  # +-ABSENT mark empty min/max aggregates; int32-safe

PAR, LCH, RCH, SZ, MNEG, MPOS, MINEG, MIPOS, SGN, REV, QM, QN = range(12)
_COLS = 16  # padded so a row spans a single cache line

Tree = namedtuple("Tree", ["nd", "meta", "path", "tmp"])


def new_tree(elems, qm_flags, qn_flags):
    """Allocate and build a balanced tree for the extended permutation."""
    vals = np.asarray(elems, dtype=np.int64)
    size = len(vals)
    nd = np.zeros((size, _COLS), np.int32)
    nd[:, PAR] = -1
    nd[:, LCH] = -1
    nd[:, RCH] = -1
    nd[:, SGN] = 1
    nd[:, QM] = np.asarray(qm_flags, dtype=np.int32)
    nd[:, QN] = np.asarray(qn_flags, dtype=np.int32)
    t = Tree(
        nd=nd,
        meta=np.zeros(4, np.int64),
        path=np.empty(size + 2, np.int32),
        tmp=np.empty(size + 2, np.int32),
    )
    t.meta[1] = size - 2
    t.meta[3] = int(np.sum(nd[:, QM])) + int(np.sum(nd[:, QN]))
    root = _build_range(t, vals, 0, size, -1)
    t.meta[0] = root
    return t


@njit(cache=True)
def _flip_aggs(nd, v):
    a, b = nd[v, MNEG], nd[v, MPOS]
    c, d = nd[v, MINEG], nd[v, MIPOS]
    nd[v, MNEG] = -b
    nd[v, MPOS] = -a
    nd[v, MINEG] = -d
    nd[v, MIPOS] = -c


@njit(cache=True)
def _push(nd, v):
    if nd[v, REV]:
        nd[v, REV] = 0
        nd[v, SGN] = -nd[v, SGN]
        l = nd[v, LCH]
        r = nd[v, RCH]
        nd[v, LCH] = r
        nd[v, RCH] = l
        if l >= 0:
            nd[l, REV] ^= 1
            _flip_aggs(nd, l)
        if r >= 0:
            nd[r, REV] ^= 1
            _flip_aggs(nd, r)


@njit(cache=True)
def _upd(nd, v):
    # requires REV[v] == 0; children may carry flags (their aggregates are
    # already in display form)
    e = v * nd[v, SGN]
    mneg = -ABSENT
    mpos = ABSENT
    mineg = ABSENT
    mipos = -ABSENT
    if e < 0:
        if nd[v, QM]:
            mneg = e
        if nd[v, QN]:
            mineg = e
    else:
        if nd[v, QM]:
            mpos = e
        if nd[v, QN]:
            mipos = e
    sz = 1
    c = nd[v, LCH]
    if c >= 0:
        sz += nd[c, SZ]
        if nd[c, MNEG] > mneg:
            mneg = nd[c, MNEG]
        if nd[c, MPOS] < mpos:
            mpos = nd[c, MPOS]
        if nd[c, MINEG] < mineg:
            mineg = nd[c, MINEG]
        if nd[c, MIPOS] > mipos:
            mipos = nd[c, MIPOS]
    c = nd[v, RCH]
    if c >= 0:
        sz += nd[c, SZ]
        if nd[c, MNEG] > mneg:
            mneg = nd[c, MNEG]
        if nd[c, MPOS] < mpos:
            mpos = nd[c, MPOS]
        if nd[c, MINEG] < mineg:
            mineg = nd[c, MINEG]
        if nd[c, MIPOS] > mipos:
            mipos = nd[c, MIPOS]
    nd[v, SZ] = sz
    nd[v, MNEG] = mneg
    nd[v, MPOS] = mpos
    nd[v, MINEG] = mineg
    nd[v, MIPOS] = mipos


@njit(cache=True)
def _build_range(t, vals, lo, hi, parent):
    if lo >= hi:
        return -1
    nd = t.nd
    mid = (lo + hi) // 2
    e = vals[mid]
    v = e if e >= 0 else -e
    nd[v, SGN] = 1 if e >= 0 else -1
    nd[v, PAR] = parent
    nd[v, LCH] = _build_range(t, vals, lo, mid, v)
    nd[v, RCH] = _build_range(t, vals, mid + 1, hi, v)
    _upd(nd, v)
    return v


@njit(cache=True)
def _rot_raw(nd, x, y, z):
    # relink only; aggregates updated by the caller
    if nd[y, LCH] == x:
        b = nd[x, RCH]
        nd[x, RCH] = y
        nd[y, LCH] = b
    else:
        b = nd[x, LCH]
        nd[x, LCH] = y
        nd[y, RCH] = b
    if b >= 0:
        nd[b, PAR] = y
    nd[y, PAR] = x
    nd[x, PAR] = z
    if z >= 0:
        if nd[z, LCH] == y:
            nd[z, LCH] = x
        else:
            nd[z, RCH] = x


@njit(cache=True)
def _rot(t, x):
    # promote x above its parent; both must be rev-free
    nd = t.nd
    y = nd[x, PAR]
    z = nd[y, PAR]
    _rot_raw(nd, x, y, z)
    _upd(nd, y)
    _upd(nd, x)
    t.meta[2] += 1


@njit(cache=True)
def _resolve_path(t, x):
    nd = t.nd
    depth = 0
    v = x
    while v >= 0:
        t.path[depth] = v
        depth += 1
        v = nd[v, PAR]
    for k in range(depth - 1, -1, -1):
        _push(nd, t.path[k])


@njit(cache=True)
def _splay_nopush(t, x):
    # x and its ancestors must be rev-free (fresh descent or resolved path)
    nd = t.nd
    while True:
        y = nd[x, PAR]
        if y < 0:
            return
        z = nd[y, PAR]
        if z < 0:
            _rot_raw(nd, x, y, -1)
            _upd(nd, y)
            _upd(nd, x)
            t.meta[2] += 1
            return
        g = nd[z, PAR]
        if (nd[z, LCH] == y) == (nd[y, LCH] == x):
            # zig-zig: two rotations, three aggregate updates
            _rot_raw(nd, y, z, g)
            _rot_raw(nd, x, y, g)
            _upd(nd, z)
            _upd(nd, y)
            _upd(nd, x)
        else:
            # zig-zag
            _rot_raw(nd, x, y, z)
            _rot_raw(nd, x, z, g)
            _upd(nd, y)
            _upd(nd, z)
            _upd(nd, x)
        t.meta[2] += 2


@njit(cache=True)
def _splay(t, x):
    _resolve_path(t, x)
    _splay_nopush(t, x)


@njit(cache=True)
def _splay_main(t, x):
    _splay(t, x)
    t.meta[0] = x


@njit(cache=True)
def _select(t, root, k):
    # k-th displayed node under root, splayed to the top of that tree
    nd = t.nd
    v = root
    while True:
        _push(nd, v)
        c = nd[v, LCH]
        lsz = nd[c, SZ] if c >= 0 else 0
        if k < lsz:
            v = c
        elif k == lsz:
            break
        else:
            k -= lsz + 1
            v = nd[v, RCH]
    _splay_nopush(t, v)
    return v


@njit(cache=True)
def _node_at(t, pos):
    v = _select(t, t.meta[0], pos)
    t.meta[0] = v
    return v


@njit(cache=True)
def _pos_of(t, x):
    _splay_main(t, x)
    c = t.nd[x, LCH]
    return t.nd[c, SZ] if c >= 0 else 0


@njit(cache=True)
def _sign_of(t, x):
    _splay_main(t, x)
    return t.nd[x, SGN]


@njit(cache=True)
def _locate(t, x):
    # one splay gives both the sign and the position of an element
    _splay_main(t, x)
    c = t.nd[x, LCH]
    pos = t.nd[c, SZ] if c >= 0 else 0
    return t.nd[x, SGN], pos


@njit(cache=True)
def _value_at(t, pos):
    v = _node_at(t, pos)
    return v * t.nd[v, SGN]


@njit(cache=True)
def _reverse(t, i, j):
    """Invert order and signs of positions i..j, 1 <= i <= j <= n.

    Returns (left_outside, left_inside, right_inside, right_outside): the
    displayed values at positions i-1, i, j, j+1 after the reversal, read
    off nodes the restructuring touches anyway.
    """
    nd = t.nd
    a = _node_at(t, i - 1)
    r = nd[a, RCH]
    nd[a, RCH] = -1
    nd[r, PAR] = -1
    _upd(nd, a)
    b = _select(t, r, j - i)
    c = nd[b, RCH]
    nd[b, RCH] = -1
    if c >= 0:
        nd[c, PAR] = -1
    _upd(nd, b)
    # b held the block's last element; flipped it becomes the first
    left_inside = -(b * nd[b, SGN])
    nd[b, REV] ^= 1
    _flip_aggs(nd, b)
    m = b
    while True:
        _push(nd, m)
        nx = nd[m, RCH]
        if nx < 0:
            break
        m = nx
    _splay_nopush(t, m)
    right_inside = m * nd[m, SGN]
    right_outside = ABSENT
    if c >= 0:
        # splaying the block's successor keeps later accesses cheap and
        # hands us the value at position j+1
        f = _select(t, c, 0)
        right_outside = f * nd[f, SGN]
        nd[m, RCH] = f
        nd[f, PAR] = m
        _upd(nd, m)
    nd[a, RCH] = m
    nd[m, PAR] = a
    _upd(nd, a)
    t.meta[0] = a
    left_outside = a * nd[a, SGN]
    return left_outside, left_inside, right_inside, right_outside


@njit(cache=True)
def _reverse_plain(t, i, j):
    """As _reverse but without boundary readout; used by undo and replay."""
    nd = t.nd
    a = _node_at(t, i - 1)
    r = nd[a, RCH]
    nd[a, RCH] = -1
    nd[r, PAR] = -1
    _upd(nd, a)
    b = _select(t, r, j - i)
    c = nd[b, RCH]
    nd[b, RCH] = -1
    if c >= 0:
        nd[c, PAR] = -1
    _upd(nd, b)
    nd[b, REV] ^= 1
    _flip_aggs(nd, b)
    m = b
    while True:
        _push(nd, m)
        nx = nd[m, RCH]
        if nx < 0:
            break
        m = nx
    _splay_nopush(t, m)
    if c >= 0:
        nd[m, RCH] = c
        nd[c, PAR] = m
        _upd(nd, m)
    nd[a, RCH] = m
    nd[m, PAR] = a
    _upd(nd, a)
    t.meta[0] = a


@njit(cache=True)
def _clear_qm(t, x):
    if t.nd[x, QM]:
        _splay_main(t, x)
        t.nd[x, QM] = 0
        t.meta[3] -= 1
        _upd(t.nd, x)


@njit(cache=True)
def _clear_qn(t, x):
    if t.nd[x, QN]:
        _splay_main(t, x)
        t.nd[x, QN] = 0
        t.meta[3] -= 1
        _upd(t.nd, x)


@njit(cache=True)
def _set_qm(t, x):
    if not t.nd[x, QM]:
        _splay_main(t, x)
        t.nd[x, QM] = 1
        t.meta[3] += 1
        _upd(t.nd, x)


@njit(cache=True)
def _set_qn(t, x):
    if not t.nd[x, QN]:
        _splay_main(t, x)
        t.nd[x, QN] = 1
        t.meta[3] += 1
        _upd(t.nd, x)


@njit(cache=True)
def _apply_ij(t, i, j, update_q):
    # eligibility mirrors unformed adjacencies: every adjacency the reversal
    # creates (the acting pair's, plus a second one when a twin pair induces
    # the same reversal) retires its entries
    lo, li, ri, ro = _reverse(t, i, j)
    if update_q:
        if li - lo == 1:
            q = lo if lo >= 0 else -li
            _clear_qm(t, q + 1)
            _clear_qn(t, q)
        if ro != ABSENT and ro - ri == 1:
            q = ri if ri >= 0 else -ro
            _clear_qm(t, q + 1)
            _clear_qn(t, q)


@njit(cache=True)
def _find_good(t):
    """Eligible good pair, if any: a negative element still in qm whose
    lower partner is positive, else a negative still in qn whose upper
    partner is positive.  Candidates are probed from the extremes inward
    (failed ones are hidden and restored), so with eligibility synced to
    the adjacencies the first probe succeeds; stale sets during recovery
    may need deeper probes.  Returns (found, a, b, i, j) with (a, b) the
    pair in position order and rho(i, j) its induced reversal."""
    nd = t.nd
    found = 0
    q = 0
    pp = 0
    mside = 0
    cnt = 0
    while True:
        mn = nd[t.meta[0], MNEG]
        if mn == -ABSENT:
            break
        cand = -mn
        sg, pos = _locate(t, cand - 1)
        if sg > 0:
            found = 1
            q = cand
            pp = pos
            mside = 1
            break
        t.tmp[cnt] = cand
        cnt += 1
        _clear_qm(t, cand)
    for k in range(cnt):
        _set_qm(t, t.tmp[k])
    if found == 0:
        cnt = 0
        while True:
            mn = nd[t.meta[0], MINEG]
            if mn == ABSENT:
                break
            cand = -mn
            sg, pos = _locate(t, cand + 1)
            if sg > 0:
                found = 1
                q = cand
                pp = pos
                break
            t.tmp[cnt] = cand
            cnt += 1
            _clear_qn(t, cand)
        for k in range(cnt):
            _set_qn(t, t.tmp[k])
    if found == 0:
        return 0, 0, 0, 0, 0
    # the partner was splayed by the successful probe; only the candidate
    # still needs locating
    part = q - 1 if mside else q + 1
    _, pq = _locate(t, q)
    if mside:
        if pp < pq:
            return 1, part, -q, pp + 1, pq
        return 1, -q, part, pq + 1, pp
    if pq < pp:
        return 1, -q, part, pq, pp - 1
    return 1, part, -q, pp, pq - 1


@njit(cache=True)
def _has_negative(t):
    root = t.meta[0]
    return t.nd[root, MNEG] != -ABSENT or t.nd[root, MINEG] != ABSENT


@njit(cache=True)
def _do_good(t, recs, cur):
    """Apply good reversals until none remains; records (a, b, i, j) rows."""
    while True:
        ok, a, b, i, j = _find_good(t)
        if ok == 0:
            return cur
        _apply_ij(t, i, j, True)
        recs[cur, 0] = a
        recs[cur, 1] = b
        recs[cur, 2] = i
        recs[cur, 3] = j
        cur += 1


@njit(cache=True)
def _recover(t, recs, cur, lo):
    """Undo recorded reversals (eligibility untouched) down to index lo or
    until a good pair appears; returns the new stack height."""
    while cur > lo:
        ok, a, b, i, j = _find_good(t)
        if ok == 1:
            break
        cur -= 1
        _reverse_plain(t, recs[cur, 2], recs[cur, 3])
    return cur


@njit(cache=True)
def _rotate_once(t, x):
    _resolve_path(t, x)
    if t.nd[x, PAR] < 0:
        return 0
    if t.nd[t.nd[x, PAR], PAR] < 0:
        t.meta[0] = x
    _rot(t, x)
    return 1


@njit(cache=True)
def _is_identity(t):
    nd = t.nd
    idx = 0
    top = 0
    v = t.meta[0]
    stack = t.path
    while top > 0 or v >= 0:
        if v >= 0:
            _push(nd, v)
            stack[top] = v
            top += 1
            v = nd[v, LCH]
        else:
            top -= 1
            v = stack[top]
            if v * nd[v, SGN] != idx:
                return False
            idx += 1
            v = nd[v, RCH]
    return True


@njit(cache=True)
def _extract(t, out):
    nd = t.nd
    idx = 0
    top = 0
    v = t.meta[0]
    stack = t.path
    while top > 0 or v >= 0:
        if v >= 0:
            _push(nd, v)
            stack[top] = v
            top += 1
            v = nd[v, LCH]
        else:
            top -= 1
            v = stack[top]
            out[idx] = v * nd[v, SGN]
            idx += 1
            v = nd[v, RCH]


# -- lean kernels for replay -------------------------------------------------
#
# Replay only needs element order, signs, and subtree sizes, so these mirror
# the main kernels with the aggregate maintenance stripped out.


@njit(cache=True)
def _upd_sz(nd, v):
    sz = 1
    c = nd[v, LCH]
    if c >= 0:
        sz += nd[c, SZ]
    c = nd[v, RCH]
    if c >= 0:
        sz += nd[c, SZ]
    nd[v, SZ] = sz


@njit(cache=True)
def _push_sz(nd, v):
    if nd[v, REV]:
        nd[v, REV] = 0
        nd[v, SGN] = -nd[v, SGN]
        l = nd[v, LCH]
        r = nd[v, RCH]
        nd[v, LCH] = r
        nd[v, RCH] = l
        if l >= 0:
            nd[l, REV] ^= 1
        if r >= 0:
            nd[r, REV] ^= 1


@njit(cache=True)
def _splay_sz(t, x):
    nd = t.nd
    while True:
        y = nd[x, PAR]
        if y < 0:
            return
        z = nd[y, PAR]
        if z < 0:
            _rot_raw(nd, x, y, -1)
            _upd_sz(nd, y)
            _upd_sz(nd, x)
            return
        g = nd[z, PAR]
        if (nd[z, LCH] == y) == (nd[y, LCH] == x):
            _rot_raw(nd, y, z, g)
            _rot_raw(nd, x, y, g)
        else:
            _rot_raw(nd, x, y, z)
            _rot_raw(nd, x, z, g)
        _upd_sz(nd, z)
        _upd_sz(nd, y)
        _upd_sz(nd, x)


@njit(cache=True)
def _locate_sz(t, x):
    nd = t.nd
    depth = 0
    v = x
    while v >= 0:
        t.path[depth] = v
        depth += 1
        v = nd[v, PAR]
    for k in range(depth - 1, -1, -1):
        _push_sz(nd, t.path[k])
    _splay_sz(t, x)
    t.meta[0] = x
    c = nd[x, LCH]
    pos = nd[c, SZ] if c >= 0 else 0
    return nd[x, SGN], pos


@njit(cache=True)
def _select_sz(t, root, k):
    nd = t.nd
    v = root
    while True:
        _push_sz(nd, v)
        c = nd[v, LCH]
        lsz = nd[c, SZ] if c >= 0 else 0
        if k < lsz:
            v = c
        elif k == lsz:
            break
        else:
            k -= lsz + 1
            v = nd[v, RCH]
    _splay_sz(t, v)
    return v


@njit(cache=True)
def _reverse_sz(t, i, j):
    nd = t.nd
    a = _select_sz(t, t.meta[0], i - 1)
    r = nd[a, RCH]
    nd[a, RCH] = -1
    nd[r, PAR] = -1
    _upd_sz(nd, a)
    b = _select_sz(t, r, j - i)
    c = nd[b, RCH]
    nd[b, RCH] = -1
    if c >= 0:
        nd[c, PAR] = -1
    _upd_sz(nd, b)
    nd[b, REV] ^= 1
    m = b
    while True:
        _push_sz(nd, m)
        nx = nd[m, RCH]
        if nx < 0:
            break
        m = nx
    _splay_sz(t, m)
    if c >= 0:
        nd[m, RCH] = c
        nd[c, PAR] = m
        _upd_sz(nd, m)
    nd[a, RCH] = m
    nd[m, PAR] = a
    _upd_sz(nd, a)
    t.meta[0] = a


@njit(cache=True)
def _replay_pair(t, qlo, qhi):
    # locate the identity pair {qlo, qhi} by value, check it is good, apply
    # its induced reversal; no eligibility bookkeeping
    slo, plo = _locate_sz(t, qlo)
    shi, phi = _locate_sz(t, qhi)
    if slo == shi:
        return 0, 0, 0
    if plo < phi:
        i, j = plo, phi
        va = qlo * slo
        vb = qhi * shi
    else:
        i, j = phi, plo
        va = qhi * shi
        vb = qlo * slo
    if va + vb == 1:
        i2, j2 = i, j - 1
    else:
        i2, j2 = i + 1, j
    _reverse_sz(t, i2, j2)
    return 1, i2, j2


@njit(cache=True)
def _replay_all(t, qlos, qhis, out):
    """Replay pairs by value; returns -1 or the index of a non-good pair."""
    for k in range(len(qlos)):
        ok, i, j = _replay_pair(t, qlos[k], qhis[k])
        if ok == 0:
            return k
        out[k, 0] = i
        out[k, 1] = j
    return -1
