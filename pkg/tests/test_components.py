import random

import pytest

from revsort import (
    Reversal,
    SignedPermutation,
    apply_reversal,
    clear_bad_components,
    eligible_sets,
    find_components,
    has_bad_component,
    sort_signed_permutation,
)
from revsort.overlap_graph import OverlapGraph

from conftest import all_signed, random_signed

PI = SignedPermutation.from_interior([-5, -2, -4, -7, -9, -10, -6, 1, 3, 8])
PI_PRIME = apply_reversal(PI, Reversal(4, 9))


def brute_fcis(p: SignedPermutation):
    """All framed intervals from the definition, then chain-filtered."""
    e = p.elems
    n1 = len(e)
    framed = set()
    for s in range(n1):
        for t in range(s + 1, n1):
            vals = [abs(x) for x in e[s : t + 1]]
            a, b = min(vals), max(vals)
            if b - a != t - s or len(set(vals)) != len(vals):
                continue
            direct = e[s] == a and e[t] == b
            flipped = e[s] == -b and e[t] == -a
            if direct or flipped:
                framed.add((s, t))
    # an interval is an FCI unless it splits at an interior point into two
    # framed-or-chain pieces
    import functools

    @functools.lru_cache(maxsize=None)
    def chainable(s, t):
        # s..t is a concatenation of one or more framed intervals
        if (s, t) in framed:
            return True
        return any((s, m) in framed and chainable(m, t) for m in range(s + 1, t))

    return {
        (s, t)
        for (s, t) in framed
        if not any((s, m) in framed and chainable(m, t) for m in range(s + 1, t))
    }


class TestFindComponents:
    def test_big_example_single_fci(self):
        forest = find_components(PI)
        assert len(forest.fcis) == 1
        fci = forest.fcis[0]
        assert (fci.start_pos, fci.end_pos, fci.frame_lo, fci.frame_hi) == (0, 11, 0, 11)

    def test_prime_component_list(self):
        forest = find_components(PI_PRIME)
        got = {c.elements: c.kind for c in forest.components}
        assert got == {
            (-4, -3): "trivial",
            (-5, -2, -4, -3, -1): "bad",
            (0, -5, -1, 6): "good",
            (7, 8): "trivial",
            (6, 10, 9, 7, 8, 11): "bad",
        }
        kinds = sorted(c.kind for c in forest.components)
        assert kinds == ["bad", "bad", "good", "trivial", "trivial"]

    def test_prime_nesting(self):
        forest = find_components(PI_PRIME)
        by_elems = {c.elements: c for c in forest.components}
        nested = by_elems[(-4, -3)]
        parent = forest.components[nested.parent]
        assert parent.elements == (-5, -2, -4, -3, -1)
        grand = forest.components[parent.parent]
        assert grand.elements == (0, -5, -1, 6)

    def test_identity_components(self):
        for n in (1, 4, 7):
            forest = find_components(SignedPermutation.identity(n))
            assert len(forest.components) == n + 1
            assert all(c.kind == "trivial" for c in forest.components)

    def test_against_brute_force(self):
        rng = random.Random(101)
        for _ in range(400):
            n = rng.randint(1, 10)
            p = random_signed(rng, n)
            expect = brute_fcis(p)
            got = {(f.start_pos, f.end_pos) for f in find_components(p).fcis}
            assert got == expect, f"{p}: {sorted(got)} != {sorted(expect)}"

    def test_fcis_exhaustive_small(self):
        for p in all_signed(5):
            expect = brute_fcis(p)
            got = {(f.start_pos, f.end_pos) for f in find_components(p).fcis}
            assert got == expect

    def test_overlap_graph_bijection(self):
        # each non-singleton graph component's pairs fall inside exactly one
        # non-trivial permutation component, one component each; elements
        # whose both pairs are already adjacencies have no live vertex, so
        # containment rather than equality is the right element relation
        rng = random.Random(77)
        for _ in range(200):
            p = random_signed(rng, rng.randint(1, 12))
            nontrivial = [
                frozenset(abs(x) for x in c.elements)
                for c in find_components(p).components
                if c.kind != "trivial"
            ]
            graph_comps = [c for c in OverlapGraph.build(p).components() if len(c) > 1]
            translated = [frozenset(q for v in c for q in (v, v + 1)) for c in graph_comps]
            assert len(nontrivial) == len(translated)
            taken = set()
            for elems in translated:
                owners = [k for k, comp in enumerate(nontrivial) if elems <= comp]
                assert len(owners) == 1, f"{p}: {sorted(elems)} has owners {owners}"
                assert owners[0] not in taken
                taken.add(owners[0])

    def test_json_dump(self):
        doc = find_components(SignedPermutation.from_interior([2, 1])).to_json()
        assert doc == [{"elements": [0, 2, 1, 3], "kind": "bad"}]


class TestEligibleSets:
    def test_no_adjacency_means_full_sets(self):
        got = eligible_sets(PI)
        assert got.qm == frozenset(range(1, 12))
        assert got.qmini == frozenset(range(0, 11))

    def test_prime_lacks_created_adjacencies(self):
        got = eligible_sets(PI_PRIME)
        assert frozenset(range(1, 12)) - got.qm == {4, 8}
        assert frozenset(range(0, 11)) - got.qmini == {3, 7}

    def test_identity_empty(self):
        got = eligible_sets(SignedPermutation.identity(5))
        assert got.qm == frozenset() and got.qmini == frozenset()

    def test_worked_stuck_state_matches_bad_component(self):
        # all values below 7 sorted; one uniform-sign component remains
        p = SignedPermutation.from_interior([1, 2, 3, 4, 5, 6, 10, 9, 7, 8])
        got = eligible_sets(p)
        forest = find_components(p)
        bads = forest.bad()
        assert len(bads) == 1 and set(bads[0].elements) == {6, 10, 9, 7, 8, 11}
        internals = {10, 9, 7, 8}
        assert got.qm <= internals | {11}
        assert got.qmini <= internals | {6}


class TestHasBad:
    def test_examples(self):
        assert has_bad_component(PI_PRIME)
        assert not has_bad_component(SignedPermutation.identity(6))
        assert has_bad_component(SignedPermutation.from_interior([2, 1]))
        assert not has_bad_component(PI)


class TestClearBadComponents:
    def test_identity_untouched(self):
        revs, out = clear_bad_components(SignedPermutation.identity(4))
        assert revs == [] and out.is_identity()

    def test_good_input_untouched(self):
        revs, out = clear_bad_components(PI)
        assert revs == [] and out == PI

    def test_single_hurdle(self):
        p = SignedPermutation.from_interior([2, 1])
        revs, out = clear_bad_components(p)
        assert len(revs) == 1
        assert not has_bad_component(out)
        assert sort_signed_permutation(p).distance == 3

    def test_exhaustive_optimality_small(self, table5):
        import itertools

        for p in all_signed(5):
            if not has_bad_component(p):
                continue
            revs, out = clear_bad_components(p)
            assert not has_bad_component(out)
            d_in = table5.lookup(p)
            cur = p
            for r in revs:
                cur = apply_reversal(cur, r)
            assert cur == out
            assert len(revs) + table5.lookup(out) == d_in, f"suboptimal clearing for {p}"
