"""Core domain model for ranking alternatives from supported subsets.

Alternatives are dense indices ``0 .. universe-1``; a subset of alternatives
is a single machine word (:class:`AltSubset`), which caps the universe at 64
and keeps every aggregation step a handful of integer operations even when
thousands of subsets carry support.

Opinion states are sparse: only pairs of subsets with a positive count are
stored.  The exponentially large family of subsets with zero support is never
materialized; :class:`QuotientOrder` represents it as an implicit residual
class, and the few places that need facts about the residual (membership in
its intersection, its size) use closed-form counting instead of enumeration.

Everything here is immutable after construction and all operations are pure
functions, so values can be shared freely across threads.
"""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property
from typing import Generic, Hashable, TypeVar

MAX_UNIVERSE = 64

L = TypeVar("L", bound=Hashable)


class ValidationError(ValueError):
    """A domain invariant was violated."""


def _check_universe(universe: int) -> None:
    if not isinstance(universe, int) or not 1 <= universe <= MAX_UNIVERSE:
        raise ValidationError(
            f"universe size must be an integer in [1, {MAX_UNIVERSE}], got {universe!r}"
        )


def iter_bits(mask: int):
    """Yield the indices of the set bits of ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class AltSubset:
    """A nonempty subset of the alternatives, stored as a bit vector."""

    mask: int
    universe: int

    def __post_init__(self) -> None:
        _check_universe(self.universe)
        if self.mask == 0:
            raise ValidationError("subset of alternatives must be nonempty")
        if not 0 < self.mask < (1 << self.universe):
            raise ValidationError(
                f"mask {self.mask:#x} out of range for universe of {self.universe}"
            )

    @classmethod
    def from_indices(cls, universe: int, indices: Iterable[int]) -> "AltSubset":
        _check_universe(universe)
        mask = 0
        for i in indices:
            if not isinstance(i, int) or not 0 <= i < universe:
                raise ValidationError(f"alternative index {i!r} out of range")
            mask |= 1 << i
        return cls(mask, universe)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.mask))

    def __contains__(self, index: int) -> bool:
        return 0 <= index < self.universe and bool(self.mask >> index & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()


@dataclass(frozen=True)
class CriterionTable:
    """Which alternatives satisfy which criteria.

    ``tr[c]`` is the set of alternatives satisfying criterion ``c``.  Every
    criterion must be satisfiable (nonempty set) and no two criteria may be
    satisfied by exactly the same alternatives, so the map from criteria to
    subsets is injective.
    """

    alternatives: tuple[str, ...]
    criteria: tuple[str, ...]
    tr: Mapping[str, AltSubset]

    def __post_init__(self) -> None:
        if len(self.alternatives) < 3:
            raise ValidationError("need at least 3 alternatives")
        _check_universe(len(self.alternatives))
        if len(set(self.alternatives)) != len(self.alternatives):
            raise ValidationError("alternative names must be distinct")
        if not self.criteria:
            raise ValidationError("need at least one criterion")
        if len(set(self.criteria)) != len(self.criteria):
            raise ValidationError("criterion names must be distinct")
        if set(self.tr) != set(self.criteria):
            raise ValidationError("tr must map exactly the listed criteria")
        n = len(self.alternatives)
        seen: dict[int, str] = {}
        for c in self.criteria:
            s = self.tr[c]
            if s.universe != n:
                raise ValidationError(f"criterion {c!r} has subset over a different universe")
            if s.mask in seen:
                raise ValidationError(
                    f"criteria {seen[s.mask]!r} and {c!r} are equivalent: "
                    "both are satisfied by exactly the same alternatives"
                )
            seen[s.mask] = c

    @property
    def universe(self) -> int:
        return len(self.alternatives)

    @cached_property
    def _alt_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.alternatives)}

    @cached_property
    def _by_mask(self) -> dict[int, str]:
        return {self.tr[c].mask: c for c in self.criteria}

    def alt_index(self, name: str) -> int:
        try:
            return self._alt_index[name]
        except KeyError:
            raise ValidationError(f"unknown alternative {name!r}") from None

    def alt_names(self, subset: AltSubset) -> tuple[str, ...]:
        return tuple(self.alternatives[i] for i in subset.indices)

    def subset_of(self, names: Iterable[str]) -> AltSubset:
        return AltSubset.from_indices(self.universe, (self.alt_index(n) for n in names))

    def criterion_for(self, subset: AltSubset) -> str | None:
        """Inverse of ``tr`` where defined: the criterion with this exact set."""
        return self._by_mask.get(subset.mask)

    def satisfied_counts(self) -> tuple[int, ...]:
        """How many criteria each alternative satisfies."""
        counts = [0] * self.universe
        for c in self.criteria:
            for i in iter_bits(self.tr[c].mask):
                counts[i] += 1
        return tuple(counts)

    def is_symmetric(self) -> bool:
        """True when every alternative satisfies the same number of criteria."""
        counts = self.satisfied_counts()
        return len(set(counts)) == 1


@dataclass(frozen=True)
class PreferenceProfile:
    """One linear order over the criteria per voter, best first."""

    voters: tuple[str, ...]
    orders: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        if not self.voters:
            raise ValidationError("need at least one voter")
        if len(set(self.voters)) != len(self.voters):
            raise ValidationError("voter ids must be distinct")
        if len(self.orders) != len(self.voters):
            raise ValidationError("need exactly one order per voter")
        base = set(self.orders[0])
        for voter, order in zip(self.voters, self.orders):
            if not order:
                raise ValidationError(f"voter {voter!r} has an empty order")
            if len(set(order)) != len(order):
                raise ValidationError(f"voter {voter!r} ranks a criterion twice")
            if set(order) != base:
                raise ValidationError(
                    f"voter {voter!r} ranks a different criterion set than the others"
                )

    @property
    def criteria_set(self) -> frozenset[str]:
        return frozenset(self.orders[0])

    @cached_property
    def positions(self) -> tuple[dict[str, int], ...]:
        """Per voter, criterion -> rank position (0 is best)."""
        return tuple({c: i for i, c in enumerate(order)} for order in self.orders)


@dataclass(frozen=True)
class OpinionState:
    """A sparse state of opinion.

    ``entries[(s, t)]`` counts how many expressed opinions hold the subset
    ``s`` to be at least as good as the subset ``t``.  Zero counts are
    dropped on construction, so equality between states is equality of the
    positive entries.
    """

    universe: int
    entries: Mapping[tuple[AltSubset, AltSubset], int]

    def __post_init__(self) -> None:
        _check_universe(self.universe)
        clean: dict[tuple[AltSubset, AltSubset], int] = {}
        for (s, t), count in self.entries.items():
            if s.universe != self.universe or t.universe != self.universe:
                raise ValidationError("entry subset universe does not match the state")
            if not isinstance(count, int) or count < 0:
                raise ValidationError(f"opinion counts must be nonnegative integers, got {count!r}")
            if count:
                clean[(s, t)] = count
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_support(cls, universe: int, support: Mapping[AltSubset, int]) -> "OpinionState":
        """Realize an arbitrary support assignment as a state.

        Any nonnegative support vector is achievable: give each subset its
        whole support in a single reflexive opinion.
        """
        return cls(universe, {(s, s): v for s, v in support.items()})

    @cached_property
    def support_map(self) -> dict[AltSubset, int]:
        """Total support per subset (row sums), positive entries only."""
        sums: dict[AltSubset, int] = {}
        for (s, _t), count in self.entries.items():
            sums[s] = sums.get(s, 0) + count
        return sums

    @cached_property
    def quotient(self) -> "QuotientOrder":
        return _quotient_from_support(self.universe, self.support_map)

    @cached_property
    def e_vector(self) -> tuple[int, ...]:
        return _e_scores_from_quotient(self.quotient)


@dataclass(frozen=True)
class SupportVector:
    """Total support per subset, positive entries only."""

    universe: int
    support: Mapping[AltSubset, int]

    def __post_init__(self) -> None:
        _check_universe(self.universe)
        for s, v in self.support.items():
            if s.universe != self.universe:
                raise ValidationError("support subset universe does not match")
            if not isinstance(v, int) or v <= 0:
                raise ValidationError("stored support values must be positive integers")


@dataclass(frozen=True)
class SupportClass:
    """One equivalence class of equally supported subsets."""

    value: int
    members: frozenset[AltSubset]


@dataclass(frozen=True)
class QuotientOrder:
    """Support classes in strictly decreasing order, plus an implicit residual.

    The residual class collects every subset not listed in ``classes``; it is
    last (its value is below every explicit value) and is only represented by
    the ``residual_present`` flag, never materialized.
    """

    universe: int
    classes: tuple[SupportClass, ...]
    residual_value: int = 0
    residual_present: bool = True

    def __post_init__(self) -> None:
        _check_universe(self.universe)
        capacity = (1 << self.universe) - 1
        total = 0
        seen: set[int] = set()
        prev = None
        for cls_ in self.classes:
            if not cls_.members:
                raise ValidationError("support classes must be nonempty")
            for s in cls_.members:
                if s.universe != self.universe:
                    raise ValidationError("class member universe does not match")
                if s.mask in seen:
                    raise ValidationError("support classes must be disjoint")
                seen.add(s.mask)
            total += len(cls_.members)
            if prev is not None and cls_.value >= prev:
                raise ValidationError("class values must strictly decrease")
            prev = cls_.value
        if self.residual_present:
            if total >= capacity:
                raise ValidationError("residual class marked present but empty")
            if prev is not None and self.residual_value >= prev:
                raise ValidationError("residual value must fall below the last explicit class")
        elif total != capacity:
            raise ValidationError("without a residual the classes must cover every subset")

    @property
    def depth(self) -> int:
        """Number of classes, counting the residual when present."""
        return len(self.classes) + (1 if self.residual_present else 0)

    @property
    def residual_size(self) -> int:
        if not self.residual_present:
            return 0
        return (1 << self.universe) - 1 - sum(len(c.members) for c in self.classes)


def _quotient_from_support(universe: int, support: Mapping[AltSubset, int]) -> QuotientOrder:
    by_value: dict[int, list[AltSubset]] = {}
    for s, v in support.items():
        if v > 0:
            by_value.setdefault(v, []).append(s)
    classes = tuple(
        SupportClass(v, frozenset(by_value[v])) for v in sorted(by_value, reverse=True)
    )
    explicit = sum(len(c.members) for c in classes)
    residual_present = explicit < (1 << universe) - 1
    return QuotientOrder(universe, classes, 0, residual_present)


def support_of(state: OpinionState, subset: AltSubset) -> int:
    """Total support of ``subset``: opinions ranking it above anything."""
    if subset.universe != state.universe:
        raise ValidationError("subset universe does not match the state")
    return state.support_map.get(subset, 0)


def support_vector(state: OpinionState) -> SupportVector:
    return SupportVector(state.universe, dict(state.support_map))


def quotient_order(state: OpinionState) -> QuotientOrder:
    """Group subsets into equal-support classes, strongest first."""
    return state.quotient


def _residual_intersection_mask(q: QuotientOrder) -> int:
    # x lies in every residual subset exactly when every subset missing x is
    # explicit.  There are 2**(universe-1) - 1 nonempty subsets missing x, so
    # compare that to the count of explicit subsets missing x.
    if not q.residual_present:
        raise ValidationError("no residual class to intersect")
    needed = (1 << (q.universe - 1)) - 1
    explicit = 0
    containing = [0] * q.universe
    for cls_ in q.classes:
        explicit += len(cls_.members)
        for s in cls_.members:
            for i in iter_bits(s.mask):
                containing[i] += 1
    mask = 0
    for x in range(q.universe):
        if explicit - containing[x] == needed:
            mask |= 1 << x
    return mask


def class_union_intersection(q: QuotientOrder, k: int) -> frozenset[int]:
    """Alternatives lying in every subset of the top ``k`` classes."""
    if not isinstance(k, int) or not 1 <= k <= q.depth:
        raise ValidationError(f"class depth {k!r} out of range [1, {q.depth}]")
    inter = (1 << q.universe) - 1
    for cls_ in q.classes[:k]:
        for s in cls_.members:
            inter &= s.mask
        if not inter:
            return frozenset()
    if k == q.depth and q.residual_present:
        inter &= _residual_intersection_mask(q)
    return frozenset(iter_bits(inter))


def _e_scores_from_quotient(q: QuotientOrder) -> tuple[int, ...]:
    e = [0] * q.universe
    inter = (1 << q.universe) - 1
    depth = 0
    for cls_ in q.classes:
        for s in cls_.members:
            inter &= s.mask
        if not inter:
            return tuple(e)
        depth += 1
        for x in iter_bits(inter):
            e[x] = depth
    if q.residual_present:
        inter &= _residual_intersection_mask(q)
        depth += 1
        for x in iter_bits(inter):
            e[x] = depth
    return tuple(e)


def e_scores(state: OpinionState) -> tuple[int, ...]:
    """Excellence score of every alternative.

    ``e_scores(o)[x]`` is the deepest ``k`` such that x lies in every subset
    of the top ``k`` support classes, or 0 when x already misses some subset
    of the strongest class.
    """
    return state.e_vector


def e_score(state: OpinionState, x: int) -> int:
    if not isinstance(x, int) or not 0 <= x < state.universe:
        raise ValidationError(f"alternative index {x!r} out of range")
    return state.e_vector[x]


@dataclass(frozen=True)
class Ranking(Generic[L]):
    """A weak order presented as its ordered partition, best class first."""

    classes: tuple[tuple[L, ...], ...]

    def __post_init__(self) -> None:
        seen: set[L] = set()
        for cls_ in self.classes:
            if not cls_:
                raise ValidationError("ranking classes must be nonempty")
            for label in cls_:
                if label in seen:
                    raise ValidationError(f"label {label!r} appears in two classes")
                seen.add(label)

    @cached_property
    def _position(self) -> dict[L, int]:
        return {label: i for i, cls_ in enumerate(self.classes) for label in cls_}

    def class_of(self, label: L) -> int:
        try:
            return self._position[label]
        except KeyError:
            raise ValidationError(f"label {label!r} not ranked") from None

    def strictly_above(self, a: L, b: L) -> bool:
        return self.class_of(a) < self.class_of(b)

    def weakly_above(self, a: L, b: L) -> bool:
        return self.class_of(a) <= self.class_of(b)

    def tied(self, a: L, b: L) -> bool:
        return self.class_of(a) == self.class_of(b)

    @property
    def top(self) -> tuple[L, ...]:
        return self.classes[0]

    def relabel(self, mapping) -> "Ranking":
        """Apply a callable or mapping to every label, keeping the shape."""
        get = mapping.__getitem__ if hasattr(mapping, "__getitem__") else mapping
        return Ranking(tuple(tuple(get(label) for label in cls_) for cls_ in self.classes))


def ranking_from_scores(scores: Mapping[L, object]) -> Ranking[L]:
    """Group labels with equal scores, highest score first.

    Scores only need to be mutually comparable; tuples compare
    lexicographically, which several aggregation rules rely on.  Insertion
    order of ``scores`` decides the order inside each class.
    """
    groups: dict[object, list[L]] = {}
    for label, score in scores.items():
        groups.setdefault(score, []).append(label)
    return Ranking(tuple(tuple(groups[v]) for v in sorted(groups, reverse=True)))
