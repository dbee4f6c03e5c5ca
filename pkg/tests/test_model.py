import pytest
from hypothesis import given, settings

from critrank.model import (
    AltSubset,
    CriterionTable,
    OpinionState,
    PreferenceProfile,
    QuotientOrder,
    Ranking,
    SupportClass,
    ValidationError,
    class_union_intersection,
    e_score,
    e_scores,
    quotient_order,
    ranking_from_scores,
    support_of,
    support_vector,
)

from conftest import opinion_states


def subset(universe, *indices):
    return AltSubset.from_indices(universe, indices)


class TestAltSubset:
    def test_roundtrips_indices(self):
        s = subset(5, 0, 3)
        assert s.indices == (0, 3)
        assert 3 in s and 1 not in s
        assert len(s) == 2

    def test_rejects_empty(self):
        with pytest.raises(ValidationError):
            AltSubset(0, 4)

    def test_rejects_out_of_range_bits(self):
        with pytest.raises(ValidationError):
            AltSubset(0b1000, 3)

    def test_rejects_oversized_universe(self):
        with pytest.raises(ValidationError):
            AltSubset(1, 65)


class TestCriterionTable:
    def make(self, tr_sets, n=4):
        names = tuple("wxyz"[:n])
        crits = tuple(f"c{i}" for i in range(len(tr_sets)))
        tr = {c: subset(n, *m) for c, m in zip(crits, tr_sets)}
        return CriterionTable(names, crits, tr)

    def test_accepts_valid(self):
        t = self.make([(0, 1), (2,), (0, 2, 3)])
        assert t.universe == 4
        assert t.alt_index("y") == 2
        assert t.alt_names(subset(4, 1, 3)) == ("x", "z")

    def test_rejects_equivalent_criteria_naming_both(self):
        with pytest.raises(ValidationError, match="c0.*c2|c2.*c0"):
            self.make([(0, 1), (2,), (0, 1)])

    def test_rejects_too_few_alternatives(self):
        with pytest.raises(ValidationError):
            CriterionTable(("a", "b"), ("c0",), {"c0": subset(2, 0)})

    def test_rejects_duplicate_names(self):
        with pytest.raises(ValidationError):
            CriterionTable(("a", "a", "b"), ("c0",), {"c0": subset(3, 0)})

    def test_symmetry_detection(self):
        sym = self.make([(0, 1), (2, 3), (0, 2), (1, 3)])
        assert sym.is_symmetric()
        assert sym.satisfied_counts() == (2, 2, 2, 2)
        assert not self.make([(0, 1), (2,)]).is_symmetric()


class TestPreferenceProfile:
    def test_rejects_incomplete_order(self):
        with pytest.raises(ValidationError):
            PreferenceProfile(("v1", "v2"), (("a", "b"), ("a",)))

    def test_rejects_duplicate_in_order(self):
        with pytest.raises(ValidationError):
            PreferenceProfile(("v1",), (("a", "a"),))

    def test_positions(self):
        p = PreferenceProfile(("v1", "v2"), (("a", "b"), ("b", "a")))
        assert p.positions[0] == {"a": 0, "b": 1}
        assert p.positions[1] == {"b": 0, "a": 1}


class TestOpinionState:
    def test_normalizes_zero_counts_away(self):
        s, t = subset(3, 0), subset(3, 1)
        state = OpinionState(3, {(s, t): 0, (t, s): 2})
        assert (s, t) not in state.entries
        assert state.entries[(t, s)] == 2

    def test_rejects_negative_counts(self):
        s = subset(3, 0)
        with pytest.raises(ValidationError):
            OpinionState(3, {(s, s): -1})

    def test_rejects_foreign_universe(self):
        with pytest.raises(ValidationError):
            OpinionState(3, {(subset(4, 0), subset(4, 1)): 1})

    def test_from_support_realizes_any_support(self):
        target = {subset(3, 0, 1): 4, subset(3, 2): 1}
        state = OpinionState.from_support(3, target)
        assert state.support_map == target


class TestSupport:
    def test_single_entry_row_sum(self):
        s, t = subset(3, 0, 1), subset(3, 2)
        state = OpinionState(3, {(s, t): 5})
        assert support_of(state, s) == 5
        assert support_of(state, t) == 0

    def test_empty_state_supports_nothing(self):
        state = OpinionState(3, {})
        assert support_of(state, subset(3, 0)) == 0
        assert support_vector(state).support == {}

    def test_rows_sum_over_all_partners(self):
        s, t, u = subset(3, 0), subset(3, 1), subset(3, 2)
        state = OpinionState(3, {(s, t): 2, (s, u): 3, (t, s): 7})
        assert support_of(state, s) == 5
        assert support_of(state, t) == 7


class TestQuotientOrder:
    def test_empty_state_is_one_residual_class(self):
        q = quotient_order(OpinionState(3, {}))
        assert q.classes == ()
        assert q.residual_present
        assert q.residual_size == 7
        assert q.depth == 1

    def test_dense_distinct_supports_have_no_residual(self):
        universe = 3
        support = {AltSubset(m, universe): 8 - m for m in range(1, 8)}
        q = quotient_order(OpinionState.from_support(universe, support))
        assert not q.residual_present
        assert len(q.classes) == 7
        assert all(len(c.members) == 1 for c in q.classes)

    def test_values_strictly_decreasing(self):
        state = OpinionState.from_support(3, {subset(3, 0): 2, subset(3, 1): 2, subset(3, 2): 1})
        q = quotient_order(state)
        assert [c.value for c in q.classes] == [2, 1]
        assert q.classes[0].members == {subset(3, 0), subset(3, 1)}

    def test_rejects_nondecreasing_class_values(self):
        cls = (SupportClass(1, frozenset({subset(3, 0)})),
               SupportClass(2, frozenset({subset(3, 1)})))
        with pytest.raises(ValidationError):
            QuotientOrder(3, cls)

    @settings(max_examples=150, deadline=None)
    @given(opinion_states())
    def test_flattening_reproduces_supports(self, state):
        q = quotient_order(state)
        rebuilt = {s: c.value for c in q.classes for s in c.members}
        assert rebuilt == state.support_map
        total = sum(len(c.members) for c in q.classes) + q.residual_size
        assert total == 2 ** state.universe - 1


class TestClassUnionIntersection:
    def test_single_subset_top_class_is_itself(self):
        state = OpinionState.from_support(3, {subset(3, 0, 2): 3})
        q = quotient_order(state)
        assert class_union_intersection(q, 1) == frozenset({0, 2})

    def test_k_out_of_range(self):
        q = quotient_order(OpinionState(3, {}))
        with pytest.raises(ValidationError):
            class_union_intersection(q, 0)
        with pytest.raises(ValidationError):
            class_union_intersection(q, 2)

    @settings(max_examples=120, deadline=None)
    @given(opinion_states(max_universe=4))
    def test_prefix_intersections_match_enumeration(self, state):
        q = quotient_order(state)
        support = state.support_map
        full = (1 << state.universe) - 1
        by_value: dict[int, list[int]] = {}
        for m in range(1, full + 1):
            v = support.get(AltSubset(m, state.universe), 0)
            by_value.setdefault(v, []).append(m)
        masks_so_far: list[int] = []
        expected = []
        for v in sorted(by_value, reverse=True):
            masks_so_far += by_value[v]
            inter = full
            for m in masks_so_far:
                inter &= m
            expected.append(frozenset(
                x for x in range(state.universe) if inter >> x & 1))
        assert len(expected) == q.depth
        for k in range(1, q.depth + 1):
            assert class_union_intersection(q, k) == expected[k - 1]

    @settings(max_examples=150, deadline=None)
    @given(opinion_states(max_universe=4))
    def test_prefix_intersections_shrink(self, state):
        q = quotient_order(state)
        previous = None
        for k in range(1, q.depth + 1):
            current = class_union_intersection(q, k)
            if previous is not None:
                assert current <= previous
            previous = current


class TestEScore:
    def test_singleton_top_class_shuts_others_out(self):
        state = OpinionState.from_support(3, {subset(3, 0): 5, subset(3, 0, 1): 1})
        assert e_score(state, 1) == 0
        assert e_score(state, 2) == 0
        assert e_score(state, 0) == 2

    def test_unknown_alternative(self):
        state = OpinionState(3, {})
        with pytest.raises(ValidationError):
            e_score(state, 3)

    @settings(max_examples=200, deadline=None)
    @given(opinion_states())
    def test_depth_bound(self, state):
        q = quotient_order(state)
        assert all(e < q.depth for e in e_scores(state))


class TestRanking:
    def test_rejects_duplicate_labels(self):
        with pytest.raises(ValidationError):
            Ranking(((0, 1), (1,)))

    def test_rejects_empty_class(self):
        with pytest.raises(ValidationError):
            Ranking(((0,), ()))

    def test_comparisons(self):
        r = Ranking(((2,), (0, 1)))
        assert r.strictly_above(2, 0)
        assert r.tied(0, 1)
        assert r.weakly_above(1, 0)
        assert not r.weakly_above(0, 2)
        assert r.top == (2,)

    def test_from_scores_groups_descending(self):
        r = ranking_from_scores({"a": 1, "b": 3, "c": 1, "d": 2})
        assert r.classes == (("b",), ("d",), ("a", "c"))
