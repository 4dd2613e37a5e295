"""Signed permutations and reversals.

A signed permutation of size n is stored in extended form: a fixed element 0
at position 0 and a fixed element n+1 at position n+1 frame the n signed
interior elements.  Both frame elements are always positive and no reversal
may touch them.  All operations here are pure: they return new values and
never mutate their inputs.

Position indices are 0-based over the extended sequence, so element 0 sits
at position 0 and the reversal rho(i, j) with 1 <= i <= j <= n inverts the
order and the signs of positions i..j.  Single-element reversals (i == j)
are allowed; they flip one sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class InvalidPairError(ValueError):
    """Raised when a pair of elements is not a good identity pair."""


class ReplayError(RuntimeError):
    """Raised when replaying a pair sequence meets a pair that is not good.

    Solver output never triggers this; seeing it means the caller produced
    an inconsistent pair sequence.
    """


@dataclass(frozen=True)
class Reversal:
    """A position interval to invert, 1 <= i <= j."""

    i: int
    j: int

    def __post_init__(self):
        if not (1 <= self.i <= self.j):
            raise ValueError(f"invalid reversal bounds rho({self.i}, {self.j})")

    def __str__(self):
        return f"{self.i} {self.j}"


@dataclass(frozen=True)
class IdentityPair:
    """Two elements whose absolute values differ by one.

    ``lo_element`` and ``hi_element`` are stored signed, as they appear in
    the permutation the pair was taken from, with ``abs(lo) < abs(hi)``.
    The pair is good exactly when the two signs differ.
    """

    lo_element: int
    hi_element: int

    def __post_init__(self):
        if abs(self.hi_element) - abs(self.lo_element) != 1:
            raise InvalidPairError(
                f"({self.lo_element}, {self.hi_element}) is not an identity pair"
            )

    @property
    def good(self) -> bool:
        return (self.lo_element < 0) != (self.hi_element < 0)

    def values(self) -> tuple[int, int]:
        return self.lo_element, self.hi_element


# An ordered list of identity pairs, each good at its application time.
PairSequence = list[IdentityPair]


class SignedPermutation:
    """Extended signed permutation (0 p1 ... pn n+1); immutable."""

    __slots__ = ("elems",)

    def __init__(self, elems: Iterable[int]):
        elems = tuple(int(x) for x in elems)
        n = len(elems) - 2
        if n < 0:
            raise ValueError("extended permutation needs at least (0, n+1)")
        if elems[0] != 0 or elems[-1] != n + 1:
            raise ValueError(f"frame elements must be 0 and {n + 1}: got {elems[:1]} .. {elems[-1:]}")
        if sorted(abs(x) for x in elems) != list(range(n + 2)):
            raise ValueError("absolute values must be exactly 0..n+1")
        self.elems = elems

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_interior(cls, interior: Sequence[int]) -> "SignedPermutation":
        """Build from the n interior elements alone; frames are implied."""
        n = len(interior)
        return cls((0, *interior, n + 1))

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(range(n + 2))

    @classmethod
    def parse(cls, text: str) -> "SignedPermutation":
        """Parse whitespace-separated signed interior elements ("-2 3 1 4")."""
        tokens = text.split()
        interior = []
        for tok in tokens:
            try:
                interior.append(int(tok))
            except ValueError:
                raise ValueError(f"invalid token {tok!r} in permutation") from None
        return cls.from_interior(interior)

    # -- basic protocol --------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.elems) - 2

    def interior(self) -> tuple[int, ...]:
        return self.elems[1:-1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.elems)

    def __len__(self) -> int:
        return len(self.elems)

    def __getitem__(self, pos: int) -> int:
        return self.elems[pos]

    def __eq__(self, other) -> bool:
        return isinstance(other, SignedPermutation) and self.elems == other.elems

    def __hash__(self) -> int:
        return hash(self.elems)

    def __repr__(self) -> str:
        return f"SignedPermutation({list(self.elems)})"

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.interior())

    def is_identity(self) -> bool:
        return all(x == k for k, x in enumerate(self.elems))

    def position_of(self, value: int) -> int:
        """Position of the element with this absolute value."""
        a = abs(value)
        for pos, x in enumerate(self.elems):
            if abs(x) == a:
                return pos
        raise ValueError(f"element {value} not in permutation")


def apply_reversal(p: SignedPermutation, r: Reversal) -> SignedPermutation:
    """Invert order and signs of positions r.i .. r.j."""
    if not (1 <= r.i <= r.j <= p.n):
        raise ValueError(f"reversal rho({r.i}, {r.j}) out of bounds for n={p.n}")
    e = p.elems
    mid = tuple(-x for x in reversed(e[r.i : r.j + 1]))
    return SignedPermutation(e[: r.i] + mid + e[r.j + 1 :])


def mu(p: SignedPermutation, a: int, b: int) -> Reversal:
    """The reversal induced by the good pair (a, b), a before b in p.

    Returns rho(i, j-1) when a + b == 1 and rho(i+1, j) when a + b == -1,
    where i and j are the positions of a and b.
    """
    if abs(abs(a) - abs(b)) != 1:
        raise InvalidPairError(f"({a}, {b}) is not an identity pair")
    if (a < 0) == (b < 0):
        raise InvalidPairError(f"({a}, {b}) is a bad pair (equal signs)")
    i = p.position_of(a)
    j = p.position_of(b)
    if p.elems[i] != a or p.elems[j] != b:
        raise InvalidPairError(f"({a}, {b}) does not appear with these signs")
    if i >= j:
        raise InvalidPairError(f"({a}, {b}) not listed in position order")
    if a + b == 1:
        return Reversal(i, j - 1)
    return Reversal(i + 1, j)


def good_pairs(p: SignedPermutation) -> set[IdentityPair]:
    """All identity pairs whose two elements carry opposite signs."""
    by_abs = {abs(x): x for x in p.elems}
    out = set()
    for q in range(p.n + 1):
        lo, hi = by_abs[q], by_abs[q + 1]
        if (lo < 0) != (hi < 0):
            out.add(IdentityPair(lo, hi))
    return out


def adjacencies(p: SignedPermutation) -> set[int]:
    """All q such that consecutive positions hold (q, q+1) or (-(q+1), -q)."""
    e = p.elems
    return {min(abs(e[k]), abs(e[k + 1])) for k in range(len(e) - 1) if e[k + 1] - e[k] == 1}


def restrict(p: SignedPermutation, q_set: Iterable[int]) -> tuple[int, ...]:
    """Subsequence of p whose absolute values lie in q_set; order and signs kept."""
    keep = set(q_set)
    return tuple(x for x in p.elems if abs(x) in keep)


def replay_pairs(
    p: SignedPermutation, pairs: Sequence[IdentityPair | tuple[int, int]]
) -> tuple[list[Reversal], SignedPermutation]:
    """Apply a pair sequence, locating each pair by absolute value.

    Returns the concrete position reversals produced by mu at each step and
    the final permutation.  Raises ReplayError if a pair is not good when
    it is reached.
    """
    cur = p
    out: list[Reversal] = []
    for pair in pairs:
        lo, hi = pair.values() if isinstance(pair, IdentityPair) else pair
        i = cur.position_of(lo)
        j = cur.position_of(hi)
        a, b = (cur.elems[i], cur.elems[j]) if i < j else (cur.elems[j], cur.elems[i])
        try:
            r = mu(cur, a, b)
        except InvalidPairError as exc:
            raise ReplayError(f"pair ({lo}, {hi}) not good at replay: {exc}") from None
        out.append(r)
        cur = apply_reversal(cur, r)
    return out, cur
