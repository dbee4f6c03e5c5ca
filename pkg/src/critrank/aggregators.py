"""Rules that turn a state of opinion into a ranking of alternatives.

All rules here consume an :class:`~critrank.model.OpinionState` and emit a
:class:`~critrank.model.Ranking` over alternative indices.  The flagship
rule ranks by excellence score alone; the others are rivals and refinements
used to map out which axioms each rule does and does not satisfy: plain
support sums, lexicographic comparison of per-class membership counts, two
tie-breaking refinements of the excellence rule, two deliberately coarse
rules, and total indifference.

``induce_opinion`` is the bridge from voting: a criterion table plus a
preference profile yields the state whose subsets are the satisfier sets and
whose counts are pairwise voter majorities.
"""

from collections.abc import Sequence

from .model import (
    AltSubset,
    CriterionTable,
    OpinionState,
    PreferenceProfile,
    Ranking,
    ValidationError,
    iter_bits,
    ranking_from_scores,
)


def induce_opinion(table: CriterionTable, profile: PreferenceProfile) -> OpinionState:
    """State of opinion carried by a profile of preferences over criteria.

    For criteria c and d, the subset pair (satisfiers of c, satisfiers of d)
    is held by every voter who weakly prefers c to d; linear orders make the
    diagonal unanimous.
    """
    if profile.criteria_set != set(table.criteria):
        raise ValidationError("profile ranks a different criterion set than the table lists")
    n_voters = len(profile.voters)
    entries: dict[tuple[AltSubset, AltSubset], int] = {}
    for c in table.criteria:
        s = table.tr[c]
        for d in table.criteria:
            t = table.tr[d]
            if c == d:
                entries[(s, t)] = n_voters
            else:
                entries[(s, t)] = sum(1 for pos in profile.positions if pos[c] < pos[d])
    return OpinionState(table.universe, entries)


def _class_count_rows(state: OpinionState) -> list[tuple[int, ...]]:
    """Per alternative, how many subsets of each support class contain it.

    Column order follows the quotient, strongest class first; the final
    column is the implicit residual class when present, computed by
    complement counting rather than enumeration.
    """
    q = state.quotient
    n = state.universe
    rows = [[0] * q.depth for _ in range(n)]
    explicit_containing = [0] * n
    for col, cls_ in enumerate(q.classes):
        for s in cls_.members:
            for i in iter_bits(s.mask):
                rows[i][col] += 1
                explicit_containing[i] += 1
    if q.residual_present:
        # Each alternative lies in 2**(n-1) subsets of the universe overall.
        half = 1 << (n - 1)
        for i in range(n):
            rows[i][-1] = half - explicit_containing[i]
    return [tuple(r) for r in rows]


def class_count_vector(state: OpinionState, x: int) -> tuple[int, ...]:
    """Membership counts of x down the support classes, residual last."""
    if not 0 <= x < state.universe:
        raise ValidationError(f"alternative index {x!r} out of range")
    return _class_count_rows(state)[x]


def tau_vector(state: OpinionState, x: int) -> tuple[int, ...]:
    """Running totals of the membership counts of x, class by class."""
    total = 0
    out = []
    for v in class_count_vector(state, x):
        total += v
        out.append(total)
    return tuple(out)


def iis_rank(state: OpinionState) -> Ranking[int]:
    """Rank by excellence score alone; equal scores tie."""
    e = state.e_vector
    return ranking_from_scores({x: e[x] for x in range(state.universe)})


def support_rank(state: OpinionState) -> Ranking[int]:
    """Rank by the summed support of every subset containing the alternative."""
    totals = [0] * state.universe
    for s, v in state.support_map.items():
        for i in iter_bits(s.mask):
            totals[i] += v
    return ranking_from_scores({x: totals[x] for x in range(state.universe)})


def lexcel_rank(state: OpinionState) -> Ranking[int]:
    """Compare per-class membership counts lexicographically, strongest first."""
    rows = _class_count_rows(state)
    return ranking_from_scores({x: rows[x] for x in range(state.universe)})


def _grouped_by_e(state: OpinionState) -> list[tuple[int, list[int]]]:
    """(e value, members in index order) pairs, highest e first."""
    e = state.e_vector
    groups: dict[int, list[int]] = {}
    for x in range(state.universe):
        groups.setdefault(e[x], []).append(x)
    return [(v, groups[v]) for v in sorted(groups, reverse=True)]


def iis_tiebreak_order(state: OpinionState, order: Sequence[int]) -> Ranking[int]:
    """Excellence first, then an exogenous strict order on middling ties.

    Ties at the floor score 0 and at the ceiling score (one below the class
    count) are kept; any tie strictly between is broken by ``order``, given
    best first as a permutation of the alternatives.
    """
    n = state.universe
    if sorted(order) != list(range(n)):
        raise ValidationError("tie-break order must be a permutation of the alternatives")
    rank_in_order = {x: i for i, x in enumerate(order)}
    ceiling = state.quotient.depth - 1
    classes: list[tuple[int, ...]] = []
    for value, members in _grouped_by_e(state):
        if 0 < value < ceiling and len(members) > 1:
            for x in sorted(members, key=rank_in_order.__getitem__):
                classes.append((x,))
        else:
            classes.append(tuple(members))
    return Ranking(tuple(classes))


def iis_tiebreak_tau(state: OpinionState) -> Ranking[int]:
    """Excellence first, positive-score ties broken by running totals.

    Alternatives tied at score 0 stay tied; alternatives tied at a positive
    score are compared lexicographically by their cumulative membership
    counts, strongest class first.
    """
    rows = _class_count_rows(state)
    taus: list[tuple[int, ...]] = []
    for row in rows:
        total = 0
        acc = []
        for v in row:
            total += v
            acc.append(total)
        taus.append(tuple(acc))
    classes: list[tuple[int, ...]] = []
    for value, members in _grouped_by_e(state):
        if value == 0 or len(members) == 1:
            classes.append(tuple(members))
            continue
        sub: dict[tuple[int, ...], list[int]] = {}
        for x in members:
            sub.setdefault(taus[x], []).append(x)
        for key in sorted(sub, reverse=True):
            classes.append(tuple(sub[key]))
    return Ranking(tuple(classes))


def coarse_f1(state: OpinionState) -> Ranking[int]:
    """Three bands only: score two or more, score exactly one, score zero."""
    e = state.e_vector
    bands = (
        tuple(x for x in range(state.universe) if e[x] >= 2),
        tuple(x for x in range(state.universe) if e[x] == 1),
        tuple(x for x in range(state.universe) if e[x] == 0),
    )
    return Ranking(tuple(b for b in bands if b))


def coarse_f2(state: OpinionState) -> Ranking[int]:
    """Two bands only: ceiling score against everyone else."""
    e = state.e_vector
    ceiling = state.quotient.depth - 1
    top = tuple(x for x in range(state.universe) if e[x] == ceiling)
    rest = tuple(x for x in range(state.universe) if e[x] != ceiling)
    return Ranking(tuple(b for b in (top, rest) if b))


def indifference_rule(state: OpinionState) -> Ranking[int]:
    """Every alternative tied, regardless of the state."""
    return Ranking((tuple(range(state.universe)),))


def max_of(ranking: Ranking[int]) -> AltSubset:
    """Top class of an index ranking, as a subset of the universe."""
    n = sum(len(c) for c in ranking.classes)
    if {x for cls_ in ranking.classes for x in cls_} != set(range(n)):
        raise ValidationError("ranking labels must be exactly the alternative indices")
    return AltSubset.from_indices(n, ranking.top)
