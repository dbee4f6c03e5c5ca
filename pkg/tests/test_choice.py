from random import Random

import pytest

from critrank.axioms import random_profile, random_table
from critrank.choice import (
    borda_criterion_scores,
    borda_ranking,
    cascade_sets,
    nurmi_first,
    nurmi_second,
)
from critrank.model import (
    AltSubset,
    CriterionTable,
    PreferenceProfile,
    ValidationError,
)


def table_of(universe, *tr_sets):
    names = tuple(f"x{i}" for i in range(universe))
    crits = tuple(f"c{i}" for i in range(len(tr_sets)))
    tr = {c: AltSubset.from_indices(universe, m) for c, m in zip(crits, tr_sets)}
    return CriterionTable(names, crits, tr)


class TestCriterionScores:
    def test_worked_example_scores(self, demo_table, demo_profile):
        tally = borda_criterion_scores(demo_table, demo_profile)
        assert tally.criterion_scores == {"a": 10, "b": 11, "c": 12, "d": 13, "e": 8, "f": 9}
        assert tally.alternative_scores == (54, 30, 43, 54, 42, 41, 22)

    def test_single_voter_positional_scores(self):
        table = table_of(3, (0,), (1,), (2,))
        profile = PreferenceProfile(("v",), (("c2", "c0", "c1"),))
        tally = borda_criterion_scores(table, profile)
        assert tally.criterion_scores == {"c0": 2, "c1": 1, "c2": 3}

    def test_rejects_profile_over_other_criteria(self):
        table = table_of(3, (0,), (1,))
        profile = PreferenceProfile(("v",), (("c0", "zzz"),))
        with pytest.raises(ValidationError):
            borda_criterion_scores(table, profile)

    def test_matches_position_sum_recomputation(self):
        rng = Random("choice/positional")
        for _ in range(60):
            table = random_table(rng, rng.randint(3, 6), 5)
            profile = random_profile(rng, table, 3)
            tally = borda_criterion_scores(table, profile)
            m = len(table.criteria)
            for c in table.criteria:
                direct = sum(
                    sum(1 for d in table.criteria if order.index(c) <= order.index(d))
                    for order in profile.orders
                )
                n = len(profile.voters)
                assert tally.criterion_scores[c] == direct
                assert n <= tally.criterion_scores[c] <= n * m

    def test_alternative_scores_sum_over_satisfied(self):
        rng = Random("choice/altsum")
        for _ in range(40):
            table = random_table(rng, 4, 4)
            profile = random_profile(rng, table, 2)
            tally = borda_criterion_scores(table, profile)
            for x in range(4):
                direct = sum(tally.criterion_scores[c]
                             for c in table.criteria if x in table.tr[c])
                assert tally.alternative_scores[x] == direct


class TestCriteriaRanking:
    def test_worked_example_order(self, demo_table, demo_profile):
        r = borda_ranking(borda_criterion_scores(demo_table, demo_profile))
        assert r.classes == (("d",), ("c",), ("b",), ("a",), ("f",), ("e",))

    def test_unanimous_profile_reproduces_the_order(self):
        table = table_of(3, (0,), (1,), (2,), (0, 1))
        order = ("c2", "c0", "c3", "c1")
        profile = PreferenceProfile(("v1", "v2"), (order, order))
        r = borda_ranking(borda_criterion_scores(table, profile))
        assert r.classes == (("c2",), ("c0",), ("c3",), ("c1",))

    def test_opposed_pair_ties_their_criteria(self):
        # two voters who swap only the top two criteria leave them tied
        table = table_of(3, (0,), (1,), (2,))
        profile = PreferenceProfile(
            ("v1", "v2"), (("c0", "c1", "c2"), ("c1", "c0", "c2")))
        r = borda_ranking(borda_criterion_scores(table, profile))
        assert r.classes == (("c0", "c1"), ("c2",))


class TestCascadeChoice:
    def test_worked_example_stages_and_choice(self, demo_table, demo_profile):
        stages = cascade_sets(demo_table, demo_profile)
        assert stages == (
            frozenset({0, 2, 3, 4, 5, 6}),
            frozenset({0, 2, 3, 4}),
            frozenset({0, 3}),
            frozenset({0, 3}),
            frozenset(),
            frozenset(),
        )
        assert nurmi_first(demo_table, demo_profile).indices == (0, 3)

    def test_single_criterion_returns_its_satisfiers(self):
        table = table_of(4, (1, 2))
        profile = PreferenceProfile(("v",), (("c0",),))
        assert nurmi_first(table, profile).indices == (1, 2)

    def test_empty_first_stage_falls_back_to_everything(self):
        # two top-tied criteria with disjoint satisfier sets kill stage one
        table = table_of(4, (0, 1), (2, 3))
        profile = PreferenceProfile(
            ("v1", "v2"), (("c0", "c1"), ("c1", "c0")))
        assert nurmi_first(table, profile).indices == (0, 1, 2, 3)

    def test_never_empty_cascade_keeps_the_last_stage(self):
        table = table_of(3, (0, 1, 2), (0, 1), (0,))
        profile = PreferenceProfile(("v",), (("c0", "c1", "c2"),))
        assert nurmi_first(table, profile).indices == (0,)


class TestScoreChoice:
    def test_worked_example(self, demo_table, demo_profile):
        assert nurmi_second(demo_table, demo_profile).indices == (0, 3)

    def test_unsatisfying_alternative_never_chosen(self):
        table = table_of(4, (0, 1), (1, 2))
        profile = PreferenceProfile(("v",), (("c0", "c1"),))
        assert 3 not in nurmi_second(table, profile).indices

    def test_tied_maximum_returned_whole(self):
        table = table_of(3, (0, 1), (0, 1, 2))
        profile = PreferenceProfile(("v",), (("c0", "c1"),))
        assert nurmi_second(table, profile).indices == (0, 1)


class TestPermutationEquivariance:
    def test_relabeling_table_relabels_both_choices(self):
        rng = Random("choice/perm")
        for _ in range(50):
            universe = rng.randint(3, 5)
            table = random_table(rng, universe, rng.randint(2, 4))
            profile = random_profile(rng, table, rng.randint(1, 3))
            pi = list(range(universe))
            rng.shuffle(pi)
            relabeled = CriterionTable(
                table.alternatives,
                table.criteria,
                {c: AltSubset.from_indices(universe, (pi[i] for i in s.indices))
                 for c, s in table.tr.items()},
            )
            for method in (nurmi_first, nurmi_second):
                base = method(table, profile).indices
                moved = method(relabeled, profile).indices
                assert sorted(pi[i] for i in base) == sorted(moved)
