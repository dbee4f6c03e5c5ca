"""Brute-force oracle over the fully enumerated subset space.

Everything here recomputes what the library's sparse fast paths compute,
but deliberately naively: every nonempty subset is materialized as a frozen
set of indices, every support class is listed, and every intersection walks
the full class unions.  The size cap keeps that instant.  The sweep then
compares the two routes field by field on random states; the oracle is the
authority, the sparse path is the accused.
"""

from dataclasses import dataclass
from random import Random

from .aggregators import (
    coarse_f1,
    coarse_f2,
    iis_rank,
    iis_tiebreak_order,
    iis_tiebreak_tau,
    lexcel_rank,
    support_rank,
    class_count_vector,
)
from .axioms import random_state, random_support_state
from .model import (
    OpinionState,
    Ranking,
    ValidationError,
    class_union_intersection,
)

ORACLE_MAX_UNIVERSE = 5


def _indices(mask: int, universe: int) -> frozenset[int]:
    return frozenset(i for i in range(universe) if mask >> i & 1)


@dataclass(frozen=True)
class DenseState:
    """Support of every nonempty subset, in mask order (mask 1 first)."""

    universe: int
    support: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.universe <= ORACLE_MAX_UNIVERSE:
            raise ValidationError(
                f"oracle handles at most {ORACLE_MAX_UNIVERSE} alternatives")
        if len(self.support) != (1 << self.universe) - 1:
            raise ValidationError("support array must cover every nonempty subset")
        if any(not isinstance(v, int) or v < 0 for v in self.support):
            raise ValidationError("support values must be nonnegative integers")

    @classmethod
    def from_sparse(cls, state: OpinionState) -> "DenseState":
        support = [0] * ((1 << state.universe) - 1)
        for (s, _t), count in state.entries.items():
            support[s.mask - 1] += count
        return cls(state.universe, tuple(support))


def dense_classes(d: DenseState) -> list[tuple[int, list[frozenset[int]]]]:
    """Every equal-support class, strongest first, zero-support class included."""
    by_value: dict[int, list[frozenset[int]]] = {}
    for mask in range(1, 1 << d.universe):
        by_value.setdefault(d.support[mask - 1], []).append(_indices(mask, d.universe))
    return [(v, by_value[v]) for v in sorted(by_value, reverse=True)]


def dense_top_intersections(d: DenseState) -> list[frozenset[int]]:
    """Intersection of the union of the top k classes, for every depth k."""
    out = []
    union: list[frozenset[int]] = []
    for _value, members in dense_classes(d):
        union = union + members
        inter = frozenset(range(d.universe))
        for subset in union:
            inter = inter & subset
        out.append(inter)
    return out


def dense_e_score(d: DenseState, x: int) -> int:
    """Deepest class depth whose running intersection still contains x."""
    if not 0 <= x < d.universe:
        raise ValidationError(f"alternative index {x!r} out of range")
    best = 0
    for k, inter in enumerate(dense_top_intersections(d), start=1):
        if x in inter:
            best = k
    return best


def dense_e_vector(d: DenseState) -> tuple[int, ...]:
    return tuple(dense_e_score(d, x) for x in range(d.universe))


def dense_support_totals(d: DenseState) -> tuple[int, ...]:
    totals = []
    for x in range(d.universe):
        totals.append(sum(d.support[mask - 1]
                          for mask in range(1, 1 << d.universe)
                          if x in _indices(mask, d.universe)))
    return tuple(totals)


def dense_class_counts(d: DenseState, x: int) -> tuple[int, ...]:
    return tuple(sum(1 for subset in members if x in subset)
                 for _value, members in dense_classes(d))


def _partition_desc(scores: dict[int, object]) -> tuple[tuple[int, ...], ...]:
    values = sorted(set(scores.values()), reverse=True)
    return tuple(tuple(x for x in sorted(scores) if scores[x] == v) for v in values)


def dense_iis(d: DenseState) -> tuple[tuple[int, ...], ...]:
    return _partition_desc({x: dense_e_score(d, x) for x in range(d.universe)})


def dense_support_ranking(d: DenseState) -> tuple[tuple[int, ...], ...]:
    totals = dense_support_totals(d)
    return _partition_desc({x: totals[x] for x in range(d.universe)})


def dense_lexcel(d: DenseState) -> tuple[tuple[int, ...], ...]:
    return _partition_desc({x: dense_class_counts(d, x) for x in range(d.universe)})


def dense_tiebreak_tau(d: DenseState) -> tuple[tuple[int, ...], ...]:
    e = dense_e_vector(d)
    taus = {}
    for x in range(d.universe):
        row = dense_class_counts(d, x)
        taus[x] = tuple(sum(row[: i + 1]) for i in range(len(row)))
    classes: list[tuple[int, ...]] = []
    for value in sorted(set(e), reverse=True):
        members = [x for x in range(d.universe) if e[x] == value]
        if value == 0:
            classes.append(tuple(members))
            continue
        for tau in sorted({taus[x] for x in members}, reverse=True):
            classes.append(tuple(x for x in members if taus[x] == tau))
    return tuple(classes)


def dense_tiebreak_order(d: DenseState, order: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    e = dense_e_vector(d)
    ceiling = len(dense_classes(d)) - 1
    position = {x: i for i, x in enumerate(order)}
    classes: list[tuple[int, ...]] = []
    for value in sorted(set(e), reverse=True):
        members = [x for x in range(d.universe) if e[x] == value]
        if 0 < value < ceiling:
            for x in sorted(members, key=position.__getitem__):
                classes.append((x,))
        else:
            classes.append(tuple(members))
    return tuple(classes)


def dense_f1(d: DenseState) -> tuple[tuple[int, ...], ...]:
    e = dense_e_vector(d)
    bands = (tuple(x for x in range(d.universe) if e[x] >= 2),
             tuple(x for x in range(d.universe) if e[x] == 1),
             tuple(x for x in range(d.universe) if e[x] == 0))
    return tuple(b for b in bands if b)


def dense_f2(d: DenseState) -> tuple[tuple[int, ...], ...]:
    e = dense_e_vector(d)
    ceiling = len(dense_classes(d)) - 1
    bands = (tuple(x for x in range(d.universe) if e[x] == ceiling),
             tuple(x for x in range(d.universe) if e[x] != ceiling))
    return tuple(b for b in bands if b)


@dataclass(frozen=True)
class DenseRankings:
    iis: tuple[tuple[int, ...], ...]
    support: tuple[tuple[int, ...], ...]
    lexcel: tuple[tuple[int, ...], ...]
    iis_tau: tuple[tuple[int, ...], ...]
    f1: tuple[tuple[int, ...], ...]
    f2: tuple[tuple[int, ...], ...]


def dense_rankings(d: DenseState) -> DenseRankings:
    return DenseRankings(
        iis=dense_iis(d),
        support=dense_support_ranking(d),
        lexcel=dense_lexcel(d),
        iis_tau=dense_tiebreak_tau(d),
        f1=dense_f1(d),
        f2=dense_f2(d),
    )


@dataclass(frozen=True)
class SweepReport:
    universe: int
    trials: int
    seed: int
    mismatches: int
    details: tuple[str, ...]

    @property
    def clean(self) -> bool:
        return self.mismatches == 0


def _compare_state(state: OpinionState, order: tuple[int, ...]) -> list[str]:
    """All field-by-field disagreements between sparse and dense routes."""
    problems = []
    d = DenseState.from_sparse(state)
    u = state.universe

    sparse_support = {s.mask: v for s, v in state.support_map.items()}
    dense_support = {m: d.support[m - 1] for m in range(1, 1 << u) if d.support[m - 1]}
    if sparse_support != dense_support:
        problems.append("support")

    q = state.quotient
    dcls = dense_classes(d)
    dense_positive = [(v, sorted(members, key=sorted)) for v, members in dcls if v > 0]
    sparse_positive = [
        (c.value, sorted((_indices(s.mask, u) for s in c.members), key=sorted))
        for c in q.classes]
    if sparse_positive != dense_positive:
        problems.append("quotient-classes")
    dense_zero = sum(len(members) for v, members in dcls if v == 0)
    if (q.residual_present, q.residual_size) != (dense_zero > 0, dense_zero):
        problems.append("residual")
    if q.depth != len(dcls):
        problems.append("depth")

    tops = dense_top_intersections(d)
    for k in range(1, q.depth + 1):
        if class_union_intersection(q, k) != tops[k - 1]:
            problems.append(f"class-union-intersection@{k}")

    if state.e_vector != dense_e_vector(d):
        problems.append("e-vector")
    if any(e >= len(dcls) for e in state.e_vector):
        problems.append("e-bound")

    for x in range(u):
        if class_count_vector(state, x) != dense_class_counts(d, x):
            problems.append(f"class-counts@{x}")

    expected = dense_rankings(d)
    pairs = (
        ("iis", iis_rank(state), expected.iis),
        ("support", support_rank(state), expected.support),
        ("lexcel", lexcel_rank(state), expected.lexcel),
        ("iis-tb-tau", iis_tiebreak_tau(state), expected.iis_tau),
        ("f1", coarse_f1(state), expected.f1),
        ("f2", coarse_f2(state), expected.f2),
        ("iis-tb-order", iis_tiebreak_order(state, order),
         dense_tiebreak_order(d, order)),
    )
    for name, sparse_ranking, dense_partition in pairs:
        if sparse_ranking.classes != dense_partition:
            problems.append(f"ranking-{name}")
    return problems


def differential_sweep(universe: int, trials: int, seed: int) -> SweepReport:
    """Compare sparse and dense routes on random states; report disagreements."""
    if not 1 <= universe <= ORACLE_MAX_UNIVERSE:
        raise ValidationError(
            f"oracle handles at most {ORACLE_MAX_UNIVERSE} alternatives")
    rng = Random(f"oracle/{universe}/{seed}")
    mismatches = 0
    details: list[str] = []
    for trial in range(trials):
        if trial % 2:
            state = random_support_state(rng, universe)
        else:
            state = random_state(rng, universe)
        order = list(range(universe))
        rng.shuffle(order)
        problems = _compare_state(state, tuple(order))
        if problems:
            mismatches += 1
            if len(details) < 5:
                details.append(f"trial {trial}: " + ", ".join(problems))
    return SweepReport(universe, trials, seed, mismatches, tuple(details))
