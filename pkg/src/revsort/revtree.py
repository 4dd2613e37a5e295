"""Order-maintaining splay tree over a signed permutation.

RevTree supports reversals in amortized O(log n): a reversal is two splits,
one lazy rev-flag toggle, and two joins.  Each node carries eligibility
flags and subtree extremes over the eligible elements, so the best good
pair candidates (max negative / min negative eligible element) are read off
the root in O(1).

Applying a good pair clears the eligibility entries of every adjacency the
reversal creates (one, or two when a second pair induces the same
reversal).  Undoing a reversal restores element order but leaves
eligibility untouched; recovery relies on those stale sets.
"""

from __future__ import annotations

import numpy as np

from . import _engine as eng
from .components import EligiblePair, eligibility_flags, eligible_sets
from .permutation import InvalidPairError, Reversal, SignedPermutation


class RevTree:
    """Tree representation of a signed permutation with eligibility flags."""

    def __init__(self, state):
        self._t = state

    @classmethod
    def build(cls, p: SignedPermutation, q: EligiblePair | None = None) -> "RevTree":
        """Balanced tree for p; eligibility from q (default: synced with p)."""
        size = p.n + 2
        if q is None:
            qm, qn = eligibility_flags(p)
        else:
            qm = np.zeros(size, np.int32)
            qn = np.zeros(size, np.int32)
            qm[list(q.qm)] = 1
            qn[list(q.qmini)] = 1
            qm[0] = 0
            qn[size - 1] = 0
        return cls(eng.new_tree(p.elems, qm, qn))

    # -- inspection ------------------------------------------------------------

    @property
    def n(self) -> int:
        return int(self._t.meta[1])

    def to_permutation(self) -> SignedPermutation:
        out = np.empty(self.n + 2, np.int64)
        eng._extract(self._t, out)
        return SignedPermutation(int(x) for x in out)

    def root_extremes(self) -> tuple[int | None, int | None, int | None, int | None]:
        """(mneg, mpos, mineg, mipos) at the root; None where absent."""
        nd = self._t.nd
        r = int(self._t.meta[0])

        def dec(v, absent):
            return None if v == absent else int(v)

        return (
            dec(nd[r, eng.MNEG], -eng.ABSENT),
            dec(nd[r, eng.MPOS], eng.ABSENT),
            dec(nd[r, eng.MINEG], eng.ABSENT),
            dec(nd[r, eng.MIPOS], -eng.ABSENT),
        )

    def eligibility(self) -> EligiblePair:
        nd = self._t.nd
        return EligiblePair(
            qm=frozenset(int(x) for x in np.nonzero(nd[:, eng.QM])[0]),
            qmini=frozenset(int(x) for x in np.nonzero(nd[:, eng.QN])[0]),
        )

    def sign_of(self, element: int) -> int:
        """Sign of the element with this absolute value, rev flags resolved."""
        if not (0 <= element <= self.n + 1):
            raise ValueError(f"unknown element {element}")
        return int(eng._sign_of(self._t, element))

    def position_of(self, element: int) -> int:
        if not (0 <= element <= self.n + 1):
            raise ValueError(f"unknown element {element}")
        return int(eng._pos_of(self._t, element))

    def rotations(self) -> int:
        return int(self._t.meta[2])

    def debug_dump(self) -> list[dict]:
        """Per-node table (raw stored fields, not display-resolved)."""
        nd = self._t.nd
        rows = []
        for v in range(self.n + 2):
            rows.append(
                {
                    "element": v * int(nd[v, eng.SGN]),
                    "rev": bool(nd[v, eng.REV]),
                    "in_qm": bool(nd[v, eng.QM]),
                    "in_qmini": bool(nd[v, eng.QN]),
                    "size": int(nd[v, eng.SZ]),
                    "mneg": None if nd[v, eng.MNEG] == -eng.ABSENT else int(nd[v, eng.MNEG]),
                    "mpos": None if nd[v, eng.MPOS] == eng.ABSENT else int(nd[v, eng.MPOS]),
                    "mineg": None if nd[v, eng.MINEG] == eng.ABSENT else int(nd[v, eng.MINEG]),
                    "mipos": None if nd[v, eng.MIPOS] == -eng.ABSENT else int(nd[v, eng.MIPOS]),
                    "parent": int(nd[v, eng.PAR]),
                    "first": int(nd[v, eng.LCH]),
                    "second": int(nd[v, eng.RCH]),
                }
            )
        return rows

    # -- restructuring ----------------------------------------------------------

    def splay(self, element: int) -> None:
        if not (0 <= element <= self.n + 1):
            raise ValueError(f"unknown element {element}")
        eng._splay_main(self._t, element)

    def rotate(self, element: int) -> bool:
        """Promote the node one level; returns False when it is the root."""
        if not (0 <= element <= self.n + 1):
            raise ValueError(f"unknown element {element}")
        return bool(eng._rotate_once(self._t, element))

    # -- reversals ---------------------------------------------------------------

    def apply_pair_reversal(self, a: int, b: int) -> Reversal:
        """Apply the reversal induced by the good pair (a, b in position
        order); eligibility entries retire for each adjacency created."""
        if abs(abs(a) - abs(b)) != 1:
            raise InvalidPairError(f"({a}, {b}) is not an identity pair")
        if (a < 0) == (b < 0):
            raise InvalidPairError(f"({a}, {b}) is a bad pair")
        t = self._t
        if eng._sign_of(t, abs(a)) != (1 if a >= 0 else -1) or eng._sign_of(t, abs(b)) != (1 if b >= 0 else -1):
            raise InvalidPairError(f"({a}, {b}) does not appear with these signs")
        i = eng._pos_of(t, abs(a))
        j = eng._pos_of(t, abs(b))
        if i >= j:
            raise InvalidPairError(f"({a}, {b}) not listed in position order")
        if a + b == 1:
            r = Reversal(i, j - 1)
        else:
            r = Reversal(i + 1, j)
        eng._apply_ij(t, r.i, r.j, True)
        return r

    def undo_reversal(self, r: Reversal) -> None:
        """Invert a recorded reversal; eligibility flags stay as they are."""
        if not (1 <= r.i <= r.j <= self.n):
            raise ValueError(f"reversal rho({r.i}, {r.j}) out of bounds for n={self.n}")
        eng._reverse_plain(self._t, r.i, r.j)

    # -- good-pair queries --------------------------------------------------------

    def find_good(self) -> tuple[int, int] | None:
        """Good pair from the root extremes (position order), or None."""
        ok, a, b, _, _ = eng._find_good(self._t)
        return (int(a), int(b)) if ok else None

    def all_bad(self) -> bool:
        return self.find_good() is None

    def has_negative(self) -> bool:
        return bool(eng._has_negative(self._t))
