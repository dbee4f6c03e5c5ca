"""Executable axioms for aggregation rules, with seeded instance generators.

Each axiom quantifies over an infinite family of states (or pairs of states)
with a prescribed quotient shape.  The executable form replaces the
universal quantifier with generators that build structurally valid witness
instances, plus a validator that rejects malformed instances before any
checking happens.  A passing sweep therefore only claims "no violation
found on these instances", while a reported violation is a concrete,
replayable counterexample.

Instance surgery works at the support level: the quotient shape is all that
the axioms constrain, and any support assignment is realizable, so
generators build the second state of a pair directly from a target class
list instead of perturbing opinion entries.

The module also houses the named witness instances for the five rival
rules, the independence report that exercises them, the choice-method
equivalence check, and the trailing-class merge sequence used to probe
excellence-score clamping.
"""

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from random import Random

from .aggregators import (
    coarse_f1,
    coarse_f2,
    iis_rank,
    iis_tiebreak_order,
    iis_tiebreak_tau,
    indifference_rule,
    induce_opinion,
    max_of,
    support_rank,
)
from .choice import nurmi_first, nurmi_second
from .model import (
    AltSubset,
    CriterionTable,
    OpinionState,
    PreferenceProfile,
    Ranking,
    ValidationError,
    class_union_intersection,
    iter_bits,
)

AXIOM_KINDS = ("nt", "iws", "ibs", "wivip", "inui")

Aggregator = Callable[[OpinionState], Ranking[int]]


class InvalidInstanceError(ValidationError):
    """An axiom instance fails its structural side-conditions."""


@dataclass(frozen=True)
class AxiomInstance:
    """One concrete test case for an axiom.

    ``kind`` selects the axiom; ``o2`` carries the restructured state for
    the two-state axioms, ``permutation`` the relabeling for neutrality,
    and ``promoted`` the subfamily whose support was raised for the
    non-unanimous-improvement axiom.
    """

    kind: str
    o1: OpinionState
    o2: OpinionState | None = None
    permutation: tuple[int, ...] | None = None
    promoted: frozenset[AltSubset] | None = None


def _check_permutation(pi: Sequence[int], universe: int) -> None:
    if sorted(pi) != list(range(universe)):
        raise ValidationError(f"{pi!r} is not a permutation of {universe} alternatives")


def permute_subset(subset: AltSubset, pi: Sequence[int]) -> AltSubset:
    """Image of a subset under a relabeling of the alternatives."""
    _check_permutation(pi, subset.universe)
    mask = 0
    for i in iter_bits(subset.mask):
        mask |= 1 << pi[i]
    return AltSubset(mask, subset.universe)


def permute_state(state: OpinionState, pi: Sequence[int]) -> OpinionState:
    """Relabel the alternatives of a state.

    The relabeled state holds count v at (image of S, image of T) exactly
    when the original holds v at (S, T), so supports and scores follow the
    relabeling: the image of x scores in the new state what x scored before.
    """
    _check_permutation(pi, state.universe)
    entries = {
        (permute_subset(s, pi), permute_subset(t, pi)): v
        for (s, t), v in state.entries.items()
    }
    return OpinionState(state.universe, entries)


# A quotient as a comparable list of classes: a frozenset of masks per
# explicit class, None for the trailing residual class.
_ClassItem = "frozenset[int] | None"


def _full_classes(state: OpinionState) -> list:
    q = state.quotient
    items: list = [frozenset(s.mask for s in c.members) for c in q.classes]
    if q.residual_present:
        items.append(None)
    return items


def _explicit_union(state: OpinionState) -> frozenset[int]:
    return frozenset(s.mask for c in state.quotient.classes for s in c.members)


def _residual_equals_masks(residual_state: OpinionState, masks: frozenset[int]) -> bool:
    # The residual is the complement of the explicit subsets, so it equals a
    # given family iff the family is disjoint from the explicit subsets and
    # the sizes add up to the whole subset space.
    union = _explicit_union(residual_state)
    if masks & union:
        return False
    return len(masks) + len(union) == (1 << residual_state.universe) - 1


def _classes_equal(state_a: OpinionState, item_a, state_b: OpinionState, item_b) -> bool:
    if item_a is None and item_b is None:
        return _explicit_union(state_a) == _explicit_union(state_b)
    if item_a is None:
        return _residual_equals_masks(state_a, item_b)
    if item_b is None:
        return _residual_equals_masks(state_b, item_a)
    return item_a == item_b


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InvalidInstanceError(message)


def validate_instance(inst: AxiomInstance) -> None:
    """Check the structural side-conditions of an instance; raise if broken."""
    _require(inst.kind in AXIOM_KINDS, f"unknown axiom kind {inst.kind!r}")
    u = inst.o1.universe
    needs_second = inst.kind != "wivip"
    _require((inst.o2 is not None) == needs_second,
             f"{inst.kind} instance carries the wrong number of states")
    if inst.o2 is not None:
        _require(inst.o2.universe == u, "paired states must share the universe")
    _require((inst.permutation is not None) == (inst.kind == "nt"),
             "only neutrality instances carry a permutation")
    _require((inst.promoted is not None) == (inst.kind == "inui"),
             "only non-unanimous-improvement instances carry a promoted family")

    if inst.kind == "nt":
        _check_permutation(inst.permutation, u)
        _require(permute_state(inst.o1, inst.permutation) == inst.o2,
                 "second state is not the relabeling of the first")
    elif inst.kind == "iws":
        f1 = _full_classes(inst.o1)
        f2 = _full_classes(inst.o2)
        _require(len(f2) >= len(f1) - 1, "second state has too few classes to keep the prefix")
        for i in range(len(f1) - 1):
            _require(_classes_equal(inst.o1, f1[i], inst.o2, f2[i]),
                     f"class {i + 1} changed; only the worst class may be restructured")
    elif inst.kind == "ibs":
        f1 = _full_classes(inst.o1)
        f2 = _full_classes(inst.o2)
        tail = len(f1) - 1
        if tail == 0:
            return  # the best class is the whole family; any state partitions it
        _require(len(f2) >= tail + 1, "second state has too few classes to keep the tail")
        for j in range(tail):
            _require(_classes_equal(inst.o1, f1[1 + j], inst.o2, f2[len(f2) - tail + j]),
                     f"class {j + 2} changed; only the best class may be restructured")
        head = f2[: len(f2) - tail]
        _require(all(item is not None for item in head),
                 "the residual class cannot take part in a best-class split")
        union = frozenset().union(*head)
        _require(union == f1[0], "head classes must partition exactly the best class")
    elif inst.kind == "wivip":
        _require(inst.o1.quotient.depth == 2, "state must have exactly two support classes")
    elif inst.kind == "inui":
        _require(bool(inst.promoted), "promoted family must be nonempty")
        for s in inst.promoted:
            _require(s.universe == u, "promoted subsets must live in the state's universe")
        masks = frozenset(s.mask for s in inst.promoted)
        f1 = _full_classes(inst.o1)
        f2 = _full_classes(inst.o2)
        at = next((i for i, item in enumerate(f1) if item is not None and masks <= item), None)
        _require(at is not None, "promoted family must sit inside a single positive-support class")
        _require(at < len(f1) - 1, "the split class must be followed by at least one class")
        _require(masks != f1[at], "promoted family must be a proper subfamily of its class")
        expected = f1[:at] + [masks, f1[at] - masks] + f1[at + 1:]
        _require(len(f2) == len(expected), "second state has the wrong number of classes")
        for j, item in enumerate(expected):
            _require(_classes_equal(inst.o1, item, inst.o2, f2[j]),
                     "second state must promote exactly the given family one level")


@dataclass(frozen=True)
class AxiomVerdict:
    kind: str
    passed: bool
    witness: tuple[int, int] | None = None
    note: str = ""


def check_axiom(agg: Aggregator, inst: AxiomInstance) -> AxiomVerdict:
    """Evaluate one aggregation rule on one validated instance."""
    validate_instance(inst)
    u = inst.o1.universe
    kind = inst.kind
    if kind == "nt":
        r1 = agg(inst.o1)
        r2 = agg(inst.o2)
        pi = inst.permutation
        for x in range(u):
            for y in range(u):
                if x != y and r1.weakly_above(x, y) != r2.weakly_above(pi[x], pi[y]):
                    return AxiomVerdict(kind, False, (x, y),
                                        "relabeling changed the pair's standing")
        return AxiomVerdict(kind, True)
    if kind in ("iws", "ibs"):
        end = "worst" if kind == "iws" else "best"
        r1 = agg(inst.o1)
        r2 = agg(inst.o2)
        for x in range(u):
            for y in range(u):
                if x != y and r1.strictly_above(x, y) and not r2.strictly_above(x, y):
                    return AxiomVerdict(kind, False, (x, y),
                                        f"strict preference lost after the {end}-class split")
        return AxiomVerdict(kind, True)
    if kind == "wivip":
        r = agg(inst.o1)
        veto = class_union_intersection(inst.o1.quotient, 1)
        for x in veto:
            for y in range(u):
                if y not in veto and not r.strictly_above(x, y):
                    return AxiomVerdict(kind, False, (x, y),
                                        "veto element not ranked strictly above a non-veto one")
        return AxiomVerdict(kind, True)
    # inui: pairs outside the promoted family's intersection must stand as before
    inter = (1 << u) - 1
    for s in inst.promoted:
        inter &= s.mask
    qualifying = [z for z in range(u) if not inter >> z & 1]
    r1 = agg(inst.o1)
    r2 = agg(inst.o2)
    for x in qualifying:
        for y in qualifying:
            if x != y and r1.weakly_above(x, y) != r2.weakly_above(x, y):
                return AxiomVerdict(kind, False, (x, y),
                                    "promotion moved a pair it should not reach")
    return AxiomVerdict(kind, True)


# ---------------------------------------------------------------------------
# Random generation


def random_state(rng: Random, universe: int, max_entries: int = 10,
                 max_count: int = 4) -> OpinionState:
    """Random state with entry-level structure (off-diagonal opinions too)."""
    top = (1 << universe) - 1
    entries: dict[tuple[AltSubset, AltSubset], int] = {}
    for _ in range(rng.randint(0, max_entries)):
        pair = (AltSubset(rng.randint(1, top), universe),
                AltSubset(rng.randint(1, top), universe))
        entries[pair] = entries.get(pair, 0) + rng.randint(1, max_count)
    return OpinionState(universe, entries)


def random_support_state(rng: Random, universe: int, max_subsets: int = 8,
                         max_value: int = 5) -> OpinionState:
    """Random state built from a support assignment; small values force ties."""
    top = (1 << universe) - 1
    n = rng.randint(0, min(max_subsets, top))
    masks = rng.sample(range(1, top + 1), n)
    support = {AltSubset(m, universe): rng.randint(1, max_value) for m in masks}
    return OpinionState.from_support(universe, support)


def _state_from_class_masks(universe: int, class_masks: Sequence[Iterable[int]]) -> OpinionState:
    """Realize an explicit class list (strongest first) as a state."""
    blocks = [list(masks) for masks in class_masks]
    support: dict[AltSubset, int] = {}
    for idx, masks in enumerate(blocks):
        for m in masks:
            support[AltSubset(m, universe)] = len(blocks) - idx
    return OpinionState.from_support(universe, support)


def _class_mask_lists(state: OpinionState) -> list[frozenset[int]]:
    return [frozenset(s.mask for s in c.members) for c in state.quotient.classes]


def _sample_residual_masks(rng: Random, universe: int, taken: frozenset[int],
                           want: int) -> list[int]:
    """Draw distinct zero-support subsets; enumerate only small universes."""
    top = (1 << universe) - 1
    if universe <= 5:
        pool = [m for m in range(1, top + 1) if m not in taken]
        return rng.sample(pool, min(want, len(pool)))
    out: set[int] = set()
    while len(out) < want:
        m = rng.randint(1, top)
        if m not in taken:
            out.add(m)
    return list(out)


def _chunk(rng: Random, items: list, parts: int) -> list[list]:
    """Shuffle and cut into the given number of nonempty runs."""
    items = items[:]
    rng.shuffle(items)
    parts = max(1, min(parts, len(items)))
    if parts == 1:
        return [items]
    cuts = sorted(rng.sample(range(1, len(items)), parts - 1))
    return [items[a:b] for a, b in zip([0, *cuts], [*cuts, len(items)])]


def _gen_nt(rng: Random, universe: int) -> AxiomInstance:
    o1 = random_state(rng, universe)
    pi = list(range(universe))
    rng.shuffle(pi)
    pi = tuple(pi)
    return AxiomInstance("nt", o1, permute_state(o1, pi), permutation=pi)


def _gen_iws(rng: Random, universe: int) -> AxiomInstance:
    o1 = random_support_state(rng, universe)
    if o1.quotient.depth == 1 or rng.random() < 0.05:
        if o1.quotient.depth > 1:
            o1 = OpinionState(universe, {})
        # single class: the worst class is the whole family, so any state
        # realizes a restructuring of it
        return AxiomInstance("iws", o1, random_support_state(rng, universe))
    classes = _class_mask_lists(o1)
    if o1.quotient.residual_present:
        taken = frozenset().union(*classes) if classes else frozenset()
        extra = _sample_residual_masks(rng, universe, taken, rng.randint(0, 4))
        blocks = _chunk(rng, extra, rng.randint(1, 3)) if extra else []
        new_classes = classes + [b for b in blocks if b]
    else:
        last = list(classes[-1])
        blocks = _chunk(rng, last, rng.randint(1, min(3, len(last))))
        if len(blocks) > 1 and rng.random() < 0.3:
            blocks = blocks[:-1]  # tail block drops to support zero
        new_classes = classes[:-1] + blocks
    return AxiomInstance("iws", o1, _state_from_class_masks(universe, new_classes))


def _gen_ibs(rng: Random, universe: int) -> AxiomInstance:
    o1 = random_support_state(rng, universe)
    if o1.quotient.depth == 1 or rng.random() < 0.05:
        if o1.quotient.depth > 1:
            o1 = OpinionState(universe, {})
        return AxiomInstance("ibs", o1, random_support_state(rng, universe))
    classes = _class_mask_lists(o1)
    first = list(classes[0])
    blocks = _chunk(rng, first, rng.randint(1, min(3, len(first))))
    return AxiomInstance("ibs", o1,
                         _state_from_class_masks(universe, blocks + classes[1:]))


def _gen_wivip(rng: Random, universe: int) -> AxiomInstance:
    top = (1 << universe) - 1
    if universe <= 5 and rng.random() < 0.2:
        # dense flavor: every subset supported, two levels
        masks = list(range(1, top + 1))
        rng.shuffle(masks)
        cut = rng.randint(1, top - 1)
        support = {AltSubset(m, universe): 2 for m in masks[:cut]}
        support.update({AltSubset(m, universe): 1 for m in masks[cut:]})
        return AxiomInstance("wivip", OpinionState.from_support(universe, support))
    if rng.random() < 0.6:
        # bias toward a nonempty intersection so the axiom has bite
        x = rng.randrange(universe)
        picked = {(rng.randint(1, top) | 1 << x) for _ in range(rng.randint(1, 6))}
    else:
        picked = {rng.randint(1, top) for _ in range(rng.randint(1, 6))}
    value = rng.randint(1, 5)
    if len(picked) == top:
        picked.pop()  # keep the residual class nonempty
    support = {AltSubset(m, universe): value for m in picked}
    return AxiomInstance("wivip", OpinionState.from_support(universe, support))


def _gen_inui(rng: Random, universe: int) -> AxiomInstance | None:
    for _ in range(40):
        o1 = random_support_state(rng, universe)
        classes = _class_mask_lists(o1)
        last_ok = len(classes) if o1.quotient.residual_present else len(classes) - 1
        eligible = [i for i in range(last_ok) if len(classes[i]) >= 2]
        if not eligible:
            continue
        at = rng.choice(eligible)
        members = sorted(classes[at])
        delta = None
        for _ in range(20):
            picked = rng.sample(members, rng.randint(1, len(members) - 1))
            inter = (1 << universe) - 1
            for m in picked:
                inter &= m
            if universe - inter.bit_count() >= 2:
                delta = frozenset(picked)
                break
        if delta is None:
            continue
        new_classes = classes[:at] + [delta, classes[at] - delta] + classes[at + 1:]
        return AxiomInstance(
            "inui", o1, _state_from_class_masks(universe, new_classes),
            promoted=frozenset(AltSubset(m, universe) for m in delta))
    return None


_GENERATORS = {
    "nt": _gen_nt,
    "iws": _gen_iws,
    "ibs": _gen_ibs,
    "wivip": _gen_wivip,
    "inui": _gen_inui,
}


def generate_instances(kind: str, universe_size: int, seed: int,
                       count: int) -> list[AxiomInstance]:
    """Deterministic batch of validated instances; infeasible draws are skipped,
    so the result may be shorter than requested."""
    if kind not in AXIOM_KINDS:
        raise ValidationError(f"unknown axiom kind {kind!r}")
    if not 3 <= universe_size:
        raise ValidationError("instance generation needs at least 3 alternatives")
    rng = Random(f"{kind}/{universe_size}/{seed}")
    out = []
    for _ in range(count):
        inst = _GENERATORS[kind](rng, universe_size)
        if inst is None:
            continue
        validate_instance(inst)
        out.append(inst)
    return out


@dataclass(frozen=True)
class SweepResult:
    kind: str
    universe: int
    requested: int
    checked: int
    violations: int
    examples: tuple[AxiomVerdict, ...]


def sweep_axiom(agg: Aggregator, kind: str, universe_size: int, seed: int,
                count: int) -> SweepResult:
    """Run one rule over a generated instance batch and tally violations."""
    violations = 0
    examples: list[AxiomVerdict] = []
    instances = generate_instances(kind, universe_size, seed, count)
    for inst in instances:
        verdict = check_axiom(agg, inst)
        if not verdict.passed:
            violations += 1
            if len(examples) < 3:
                examples.append(verdict)
    return SweepResult(kind, universe_size, count, len(instances), violations,
                       tuple(examples))


# ---------------------------------------------------------------------------
# Named witnesses for the rival rules


def order_tiebreak_nt_witness() -> AxiomInstance:
    """Relabeling instance aimed at the exogenous-order refinement.

    The tied pair sits at the ceiling excellence score, which the refinement
    keeps tied, so the rule as defined reports no violation here; the
    interior-tie variant below is the one the rule actually fails.
    """
    o1 = OpinionState.from_support(3, {AltSubset(0b011, 3): 2, AltSubset(0b111, 3): 1})
    pi = (1, 0, 2)
    return AxiomInstance("nt", o1, permute_state(o1, pi), permutation=pi)


def order_tiebreak_nt_witness_interior() -> AxiomInstance:
    """Relabeling instance whose tied pair sits at an interior score.

    Both supported subsets are fixed by the swap, so both states rank by the
    same exogenous order while the relabeling demands the opposite pair.
    """
    o1 = OpinionState.from_support(3, {AltSubset(0b011, 3): 2, AltSubset(0b100, 3): 1})
    pi = (1, 0, 2)
    return AxiomInstance("nt", o1, permute_state(o1, pi), permutation=pi)


def tau_tiebreak_inui_witness() -> AxiomInstance:
    """Promotion instance aimed at the running-total refinement.

    Every excellence score is zero on both sides, a band the refinement
    leaves untouched, so the rule as defined reports no violation here; the
    positively scored variant below is the one the rule actually fails.
    """
    u = 3
    o1 = OpinionState.from_support(
        u, {AltSubset(m, u): 1 for m in (0b001, 0b101, 0b010, 0b110)})
    delta = frozenset(AltSubset(m, u) for m in (0b101, 0b010, 0b110))
    o2 = OpinionState.from_support(
        u, {AltSubset(0b101, u): 2, AltSubset(0b010, u): 2, AltSubset(0b110, u): 2,
            AltSubset(0b001, u): 1})
    return AxiomInstance("inui", o1, o2, promoted=delta)


def tau_tiebreak_inui_witness_scored() -> AxiomInstance:
    """Promotion instance whose qualifying pair is tied at a positive score.

    The promotion regroups the class membership counts of the pair so their
    running totals compare the other way around, flipping a strict outcome
    the promotion was not allowed to touch.
    """
    u = 4
    o1 = OpinionState.from_support(
        u, {AltSubset(0b0011, u): 3, AltSubset(0b0001, u): 2, AltSubset(0b0101, u): 2,
            AltSubset(0b1001, u): 2, AltSubset(0b0010, u): 2, AltSubset(0b0110, u): 2})
    delta = frozenset(AltSubset(m, u) for m in (0b0010, 0b0110, 0b0001))
    o2 = OpinionState.from_support(
        u, {AltSubset(0b0011, u): 3, AltSubset(0b0010, u): 2, AltSubset(0b0110, u): 2,
            AltSubset(0b0001, u): 2, AltSubset(0b0101, u): 1, AltSubset(0b1001, u): 1})
    return AxiomInstance("inui", o1, o2, promoted=delta)


def band_rule_ibs_witness() -> AxiomInstance:
    """Best-class split that collapses a strict pair under the three-band rule."""
    u = 3
    o1 = OpinionState.from_support(u, {AltSubset(m, u): 1 for m in (0b011, 0b111, 0b001)})
    o2 = OpinionState.from_support(
        u, {AltSubset(0b011, u): 3, AltSubset(0b111, u): 2, AltSubset(0b001, u): 1})
    return AxiomInstance("ibs", o1, o2)


def ceiling_rule_iws_witness() -> AxiomInstance:
    """Worst-class split that empties the ceiling band of the two-band rule."""
    u = 3
    o1 = OpinionState.from_support(u, {AltSubset(0b001, u): 1})
    o2 = OpinionState.from_support(u, {AltSubset(0b001, u): 2, AltSubset(0b010, u): 1})
    return AxiomInstance("iws", o1, o2)


def indifference_wivip_witness() -> AxiomInstance:
    """Two-class state with veto elements, which total indifference ignores."""
    return AxiomInstance("wivip", OpinionState.from_support(3, {AltSubset(0b011, 3): 1}))


def _order_tiebreak(state: OpinionState) -> Ranking[int]:
    return iis_tiebreak_order(state, tuple(range(state.universe)))


VARIANT_RULES: dict[str, Aggregator] = {
    "iis-tb-order": _order_tiebreak,
    "iis-tb-tau": iis_tiebreak_tau,
    "f1": coarse_f1,
    "f2": coarse_f2,
    "indifferent": indifference_rule,
}

VARIANT_TARGETS = {
    "iis-tb-order": "nt",
    "iis-tb-tau": "inui",
    "f1": "ibs",
    "f2": "iws",
    "indifferent": "wivip",
}

VARIANT_WITNESSES = {
    "iis-tb-order": (order_tiebreak_nt_witness, order_tiebreak_nt_witness_interior),
    "iis-tb-tau": (tau_tiebreak_inui_witness, tau_tiebreak_inui_witness_scored),
    "f1": (band_rule_ibs_witness, None),
    "f2": (ceiling_rule_iws_witness, None),
    "indifferent": (indifference_wivip_witness, None),
}


@dataclass(frozen=True)
class VariantReport:
    variant: str
    target_axiom: str
    witness_violated: bool
    adjusted_witness_violated: bool | None
    sweeps: tuple[SweepResult, ...]

    @property
    def other_axioms_clean(self) -> bool:
        return all(s.violations == 0 for s in self.sweeps)


@dataclass(frozen=True)
class IndependenceReport:
    trials: int
    seed: int
    universe_sizes: tuple[int, ...]
    variants: tuple[VariantReport, ...]


def axiom_independence_report(universe_sizes: Sequence[int] = (3, 4, 5),
                              trials: int = 200, seed: int = 0) -> IndependenceReport:
    """Exercise every rival rule: its named witness, plus clean sweeps of the
    four axioms it is supposed to satisfy."""
    variants = []
    for name, rule in VARIANT_RULES.items():
        target = VARIANT_TARGETS[name]
        primary, adjusted = VARIANT_WITNESSES[name]
        witness_violated = not check_axiom(rule, primary()).passed
        adjusted_violated = None
        if adjusted is not None:
            adjusted_violated = not check_axiom(rule, adjusted()).passed
        sweeps = tuple(
            sweep_axiom(rule, kind, u, seed, trials)
            for kind in AXIOM_KINDS if kind != target
            for u in universe_sizes)
        variants.append(VariantReport(name, target, witness_violated,
                                      adjusted_violated, sweeps))
    return IndependenceReport(trials, seed, tuple(universe_sizes), tuple(variants))


# ---------------------------------------------------------------------------
# Choice-method equivalence


@dataclass(frozen=True)
class ChoiceEquivalence:
    """Side-by-side outcomes of the choice methods and their aggregator routes.

    ``score_matches`` is None when the table is not symmetric: the identity
    for the score-based method is only claimed under a constant number of
    satisfied criteria per alternative, so nothing is tested then.
    """

    cascade_choice: AltSubset
    excellence_choice: AltSubset
    cascade_matches: bool
    symmetric: bool
    score_choice: AltSubset
    support_choice: AltSubset
    score_matches: bool | None


def check_choice_equivalence(table: CriterionTable,
                             profile: PreferenceProfile) -> ChoiceEquivalence:
    state = induce_opinion(table, profile)
    cascade = nurmi_first(table, profile)
    excellence = max_of(iis_rank(state))
    score = nurmi_second(table, profile)
    support_top = max_of(support_rank(state))
    symmetric = table.is_symmetric()
    return ChoiceEquivalence(
        cascade_choice=cascade,
        excellence_choice=excellence,
        cascade_matches=cascade == excellence,
        symmetric=symmetric,
        score_choice=score,
        support_choice=support_top,
        score_matches=(score == support_top) if symmetric else None,
    )


def random_table(rng: Random, universe: int, n_criteria: int) -> CriterionTable:
    top = (1 << universe) - 1
    if n_criteria > top:
        raise ValidationError("more criteria requested than distinct nonempty subsets")
    masks = rng.sample(range(1, top + 1), n_criteria)
    alternatives = tuple(f"x{i}" for i in range(universe))
    criteria = tuple(f"c{j + 1}" for j in range(n_criteria))
    tr = {c: AltSubset(m, universe) for c, m in zip(criteria, masks)}
    return CriterionTable(alternatives, criteria, tr)


def _columns_constant(masks: Iterable[int], universe: int) -> bool:
    counts = [0] * universe
    for m in masks:
        for i in iter_bits(m):
            counts[i] += 1
    return len(set(counts)) == 1


def random_symmetric_table(rng: Random, universe: int, n_criteria: int) -> CriterionTable:
    """Random table where every alternative satisfies equally many criteria."""
    top = (1 << universe) - 1
    for _ in range(200):
        masks = rng.sample(range(1, top + 1), n_criteria)
        if _columns_constant(masks, universe):
            break
    else:
        # fallback: complement pairs cover every alternative exactly once per
        # pair, and the full set once more when the count is odd
        while True:
            masks_set: set[int] = {top} if n_criteria % 2 else set()
            while len(masks_set) < n_criteria:
                b = rng.randint(1, top - 1)
                if b in masks_set or (top ^ b) in masks_set:
                    continue
                if len(masks_set) + 2 > n_criteria:
                    continue
                masks_set.add(b)
                masks_set.add(top ^ b)
            masks = sorted(masks_set)
            break
    alternatives = tuple(f"x{i}" for i in range(universe))
    criteria = tuple(f"c{j + 1}" for j in range(n_criteria))
    tr = {c: AltSubset(m, universe) for c, m in zip(criteria, masks)}
    return CriterionTable(alternatives, criteria, tr)


def random_profile(rng: Random, table: CriterionTable, n_voters: int) -> PreferenceProfile:
    voters = tuple(f"v{i + 1}" for i in range(n_voters))
    orders = []
    for _ in range(n_voters):
        order = list(table.criteria)
        rng.shuffle(order)
        orders.append(tuple(order))
    return PreferenceProfile(voters, tuple(orders))


def trailing_merge_sequence(state: OpinionState) -> list[OpinionState]:
    """States keeping a shrinking prefix of the support classes intact.

    Entry j keeps the strongest len(classes) - j explicit classes and drops
    every later subset to support zero, merging the tail into the residual.
    Excellence scores clamp to the kept depth: each merged state scores
    min(original score, kept classes) for every alternative, so rankings of
    alternatives scoring within the kept prefix are untouched.
    """
    classes = _class_mask_lists(state)
    out = []
    for keep in range(len(classes), -1, -1):
        support: dict[AltSubset, int] = {}
        for idx in range(keep):
            for m in classes[idx]:
                support[AltSubset(m, state.universe)] = keep - idx
        out.append(OpinionState.from_support(state.universe, support))
    return out
