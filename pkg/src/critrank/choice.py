"""Choosing alternatives from voter preferences over criteria.

Voters rank criteria, not alternatives.  A positional tally turns the
profile into a score per criterion, and two choice methods then read the
winners off the table of which alternatives satisfy which criteria: one
walks down the criterion score classes intersecting satisfier sets until the
intersection would die, the other scores each alternative by the total score
of the criteria it satisfies.
"""

from dataclasses import dataclass

from .model import (
    AltSubset,
    CriterionTable,
    PreferenceProfile,
    Ranking,
    ValidationError,
    iter_bits,
    ranking_from_scores,
)


@dataclass(frozen=True)
class BordaTally:
    """Positional scores: per criterion, and summed per alternative."""

    criterion_scores: dict[str, int]
    alternative_scores: tuple[int, ...]


def borda_criterion_scores(table: CriterionTable, profile: PreferenceProfile) -> BordaTally:
    """Score each criterion positionally, then total scores per alternative.

    A voter ranking m criteria contributes m points to their top criterion,
    m-1 to the next, and so on down to 1.  An alternative's score is the sum
    over the criteria it satisfies.  Criterion keys follow the table's
    criterion order.
    """
    if profile.criteria_set != set(table.criteria):
        raise ValidationError("profile ranks a different criterion set than the table lists")
    m = len(table.criteria)
    scores = {c: 0 for c in table.criteria}
    for pos in profile.positions:
        for c, p in pos.items():
            scores[c] += m - p
    alt = [0] * table.universe
    for c, score in scores.items():
        for i in iter_bits(table.tr[c].mask):
            alt[i] += score
    return BordaTally(scores, tuple(alt))


def borda_ranking(tally: BordaTally) -> Ranking[str]:
    """Criteria grouped by positional score, strongest first."""
    return ranking_from_scores(tally.criterion_scores)


def cascade_sets(table: CriterionTable, profile: PreferenceProfile) -> tuple[frozenset[int], ...]:
    """Cumulative satisfier intersections down the criterion score classes.

    Entry k holds the alternatives satisfying every criterion in the top
    k+1 score classes.  Sets may be empty and stay empty once they are.
    Returned as index sets because empty stages are representable that way.
    """
    ranking = borda_ranking(borda_criterion_scores(table, profile))
    current = (1 << table.universe) - 1
    stages = []
    for cls_ in ranking.classes:
        for c in cls_:
            current &= table.tr[c].mask
        stages.append(frozenset(iter_bits(current)))
    return tuple(stages)


def nurmi_first(table: CriterionTable, profile: PreferenceProfile) -> AltSubset:
    """Intersect satisfier sets class by class, keeping the last alive stage.

    Criterion score classes are visited strongest first.  The choice is the
    cumulative intersection just before it would become empty, or the final
    stage if it never does.  When even the strongest class forces emptiness
    the choice falls back to every alternative.
    """
    chosen: frozenset[int] = frozenset(range(table.universe))
    for members in cascade_sets(table, profile):
        if not members:
            break
        chosen = members
    return AltSubset.from_indices(table.universe, chosen)


def nurmi_second(table: CriterionTable, profile: PreferenceProfile) -> AltSubset:
    """Alternatives maximizing the summed score of the criteria they satisfy."""
    scores = borda_criterion_scores(table, profile).alternative_scores
    best = max(scores)
    return AltSubset.from_indices(
        table.universe, (i for i, s in enumerate(scores) if s == best)
    )
