import random

import pytest

from revsort import (
    SignedPermutation,
    do_good,
    eligible_sets,
    good_pairs,
    has_bad_component,
    recover,
    replay_pairs,
    reversal_distance,
    sort_good_tree,
    sort_signed_permutation,
)
from revsort.overlap_graph import OverlapGraph, sort_graph
from revsort.revtree import RevTree

from conftest import all_signed, random_signed

PI = SignedPermutation.from_interior([-5, -2, -4, -7, -9, -10, -6, 1, 3, 8])


class TestSortSignedPermutation:
    def test_small_example(self):
        s = sort_signed_permutation(SignedPermutation.from_interior([-2, 3, 1]))
        assert s.distance == 3
        assert s.prefix_reversals == []
        assert len(s.good_pairs) == 3
        assert s.final_permutation.is_identity()

    def test_identity(self):
        s = sort_signed_permutation(SignedPermutation.identity(6))
        assert s.distance == 0
        assert s.good_pairs == [] and s.prefix_reversals == []

    def test_hurdle_input(self):
        s = sort_signed_permutation(SignedPermutation.from_interior([2, 1]))
        assert len(s.prefix_reversals) == 1
        assert len(s.good_pairs) == 2
        assert s.distance == 3

    def test_replay_is_good_only(self):
        rng = random.Random(21)
        for _ in range(150):
            p = random_signed(rng, rng.randint(1, 20))
            s = sort_signed_permutation(p)
            cur = p
            from revsort import apply_reversal

            for r in s.prefix_reversals:
                cur = apply_reversal(cur, r)
            revs, final = replay_pairs(cur, s.good_pairs)
            assert final.is_identity()
            assert [(r.i, r.j) for r in revs] == [(r.i, r.j) for r in s.replayed_reversals]

    def test_exhaustive_small_with_debug(self, table5):
        for p in all_signed(5):
            s = sort_signed_permutation(p, debug=True)
            assert s.distance == table5.lookup(p)
            assert s.final_permutation.is_identity()


class TestDoGood:
    def test_identity_empty(self):
        assert do_good(RevTree.build(SignedPermutation.identity(4))) == []

    def test_single_pair(self):
        tr = RevTree.build(SignedPermutation.from_interior([-1]))
        pairs = do_good(tr)
        assert [(g.lo_element, g.hi_element) for g in pairs] == [(0, -1)]
        assert tr.to_permutation().is_identity()

    def test_ends_identity_or_stuck(self):
        rng = random.Random(22)
        for _ in range(120):
            p = random_signed(rng, rng.randint(1, 14))
            if has_bad_component(p):
                continue
            tr = RevTree.build(p)
            do_good(tr)
            out = tr.to_permutation()
            assert out.is_identity() or tr.all_bad()


class TestSortGoodTree:
    def test_identity_tree(self):
        assert sort_good_tree(RevTree.build(SignedPermutation.identity(5))) == []

    def test_no_recovery_needed(self):
        trace = []
        tr = RevTree.build(SignedPermutation.from_interior([-2, 3, 1]))
        pairs = sort_good_tree(tr, trace=trace)
        assert len(pairs) == 3
        assert not any(ev[0] == "undo" for ev in trace)

    def test_output_sorts_entry_permutation(self):
        rng = random.Random(23)
        for _ in range(100):
            p = random_signed(rng, rng.randint(1, 12))
            if has_bad_component(p):
                continue
            pairs = sort_good_tree(RevTree.build(p))
            _, final = replay_pairs(p, pairs)
            assert final.is_identity()


class TestRecover:
    def test_zero_undos_when_good_pair_present(self):
        tr = RevTree.build(PI)
        pair = tr.find_good()
        assert pair is not None
        s1, s2 = recover(tr, [])
        assert s1 == [] and s2 == []
        assert tr.to_permutation() == PI

    def test_forced_unsafe_reversal_backtracks(self):
        # drive the Fig. 2 unsafe reversal by hand, push on until stuck,
        # then let recovery unwind with stale eligibility
        from revsort import IdentityPair

        tr = RevTree.build(PI)
        r0 = tr.apply_pair_reversal(-7, 8)
        assert (r0.i, r0.j) == (4, 9)
        seq = [(IdentityPair(7, 8), r0)]
        while True:
            found = tr.find_good()
            if found is None:
                break
            a, b = found
            r = tr.apply_pair_reversal(a, b)
            lo, hi = sorted((a, b), key=abs)
            seq.append((IdentityPair(lo, hi), r))
        assert tr.all_bad()
        stuck = tr.to_permutation()
        assert not stuck.is_identity()
        s1, s2 = recover(tr, seq)
        assert s2, "recovery must back out at least the unsafe reversal"
        assert tr.find_good() is not None
        assert tr.has_negative()
        # the backed-out reversals replay from the recovered state
        state = tr.to_permutation()
        _, again = replay_pairs(state, [pair for pair, _ in s2])
        assert again == stuck

    def test_full_unwind_when_nothing_is_good(self):
        from revsort import IdentityPair

        tr = RevTree.build(SignedPermutation.from_interior([-1]))
        r = tr.apply_pair_reversal(0, -1)
        s1, s2 = recover(tr, [(IdentityPair(0, -1), r)])
        assert s1 == [] and len(s2) == 1
        assert tr.to_permutation() == SignedPermutation.from_interior([-1])


class TestRecoveryBehaviour:
    def test_natural_recovery_trace(self):
        # greedy reaches an all-positive stuck state here and must recover
        p = SignedPermutation.from_interior([4, 1, -6, -3, -5, -2])
        trace = []
        s = sort_signed_permutation(p, trace=trace, debug=True)
        assert s.final_permutation.is_identity()
        kinds = [ev[0] for ev in trace]
        assert "undo" in kinds and "recurse" in kinds and "insert" in kinds
        for ev in trace:
            if ev[0] == "insert":
                assert ev[1] in ("even", "odd")

    def test_each_pair_applied_once_undone_once(self):
        rng = random.Random(24)
        for _ in range(60):
            p = random_signed(rng, rng.randint(2, 12))
            trace = []
            sort_signed_permutation(p, trace=trace)
            applied = [tuple(sorted(map(abs, ev[1]))) for ev in trace if ev[0] == "apply"]
            assert len(applied) == len(set(applied)), "a pair was applied twice"
            undos = sum(1 for ev in trace if ev[0] == "undo")
            assert undos <= len(applied)

    def test_nested_returns_are_nonempty(self):
        rng = random.Random(25)
        for _ in range(200):
            p = random_signed(rng, rng.randint(2, 10))
            trace = []
            sort_signed_permutation(p, trace=trace, debug=True)
            for ev in trace:
                if ev[0] == "return":
                    assert ev[1] >= 1


class TestCrossSolverAgreement:
    def test_lengths_match_graph_solver(self):
        rng = random.Random(26)
        done = 0
        while done < 150:
            p = random_signed(rng, rng.randint(1, 10))
            if has_bad_component(p):
                continue
            done += 1
            seq, _ = sort_graph(OverlapGraph.build(p))
            s = sort_signed_permutation(p)
            assert len(seq) == s.distance, f"{p}: graph {len(seq)} vs tree {s.distance}"

    def test_graph_solver_matches_oracle(self, table5):
        checked = 0
        for p in all_signed(5):
            if has_bad_component(p):
                continue
            seq, _ = sort_graph(OverlapGraph.build(p), debug=checked % 50 == 0)
            assert len(seq) == table5.lookup(p)
            checked += 1
        assert checked > 3000


class TestDistance:
    def test_reversal_distance_helper(self, table3):
        for p in all_signed(3):
            assert reversal_distance(p) == table3.lookup(p)
