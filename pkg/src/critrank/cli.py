"""Command line front end for the criteria-ranking toolkit.

File formats (UTF-8, line oriented, full-line ``#`` comments, blank lines
ignored):

criterion table::

    alternatives: <name> <name> ...
    criterion <name>: <alt> <alt> ...     # the alternatives satisfying it

preference profile (one line per voter, best criterion first)::

    voter <id>: <crit> > <crit> > ... > <crit>

opinion state (raw counts, not tied to any table)::

    alternatives: <name> <name> ...
    opinion {a,b} >= {c} : 3

Exit codes: 0 success, 1 usage or parse error, 2 validation error,
3 failed assertion, axiom violation, or self-test mismatch.
"""

import argparse
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from .aggregators import (
    coarse_f1,
    coarse_f2,
    indifference_rule,
    induce_opinion,
    iis_rank,
    iis_tiebreak_order,
    iis_tiebreak_tau,
    lexcel_rank,
    support_rank,
    class_count_vector,
)
from .axioms import AXIOM_KINDS, VARIANT_RULES, sweep_axiom
from .choice import (
    borda_criterion_scores,
    borda_ranking,
    cascade_sets,
    nurmi_first,
    nurmi_second,
)
from .model import (
    AltSubset,
    CriterionTable,
    OpinionState,
    PreferenceProfile,
    Ranking,
    ValidationError,
    e_scores,
    support_of,
)
from .oracle import differential_sweep

RULE_NAMES = (
    "iis", "support", "lexcel", "iis-tb-order", "iis-tb-tau",
    "f1", "f2", "indifferent",
)

_PLAIN_RULES = {
    "iis": iis_rank,
    "support": support_rank,
    "lexcel": lexcel_rank,
    "iis-tb-tau": iis_tiebreak_tau,
    "f1": coarse_f1,
    "f2": coarse_f2,
    "indifferent": indifference_rule,
}


class ParseError(Exception):
    """Malformed input text; the message carries the line number."""


# ---------------------------------------------------------------------------
# Parsing

def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def _split_directive(lineno: int, line: str) -> tuple[list[str], str]:
    head, sep, body = line.partition(":")
    if not sep:
        raise ParseError(f"line {lineno}: expected '<directive>: ...', got {line!r}")
    return head.split(), body.strip()


def parse_criterion_table(text: str) -> CriterionTable:
    """Read an alternatives header plus one satisfier line per criterion."""
    alternatives: tuple[str, ...] | None = None
    index: dict[str, int] = {}
    criteria: list[str] = []
    tr: dict[str, AltSubset] = {}
    for lineno, line in _content_lines(text):
        head, body = _split_directive(lineno, line)
        if head == ["alternatives"]:
            if alternatives is not None:
                raise ParseError(f"line {lineno}: second 'alternatives:' header")
            alternatives = tuple(body.split())
            index = {name: i for i, name in enumerate(alternatives)}
        elif len(head) == 2 and head[0] == "criterion":
            if alternatives is None:
                raise ParseError(
                    f"line {lineno}: 'alternatives:' header must come first")
            name = head[1]
            if name in tr:
                raise ParseError(f"line {lineno}: criterion '{name}' listed twice")
            members = []
            for alt in body.split():
                if alt not in index:
                    raise ValidationError(
                        f"criterion '{name}' references unknown alternative '{alt}'")
                members.append(index[alt])
            if not members:
                raise ValidationError(f"criterion '{name}' is satisfied by nothing")
            criteria.append(name)
            tr[name] = AltSubset.from_indices(len(alternatives), members)
        else:
            raise ParseError(f"line {lineno}: unrecognized directive {line!r}")
    if alternatives is None:
        raise ParseError("missing 'alternatives:' header")
    return CriterionTable(alternatives, tuple(criteria), tr)


def parse_profile(text: str, table: CriterionTable) -> PreferenceProfile:
    """Read voter lines, each a strict order over the table's criteria."""
    known = set(table.criteria)
    voters: list[str] = []
    orders: list[tuple[str, ...]] = []
    for lineno, line in _content_lines(text):
        head, body = _split_directive(lineno, line)
        if len(head) != 2 or head[0] != "voter":
            raise ParseError(f"line {lineno}: expected 'voter <id>: ...', got {line!r}")
        voter = head[1]
        if voter in voters:
            raise ParseError(f"line {lineno}: voter '{voter}' listed twice")
        order = tuple(part.strip() for part in body.split(">"))
        if any(not part or " " in part for part in order):
            raise ParseError(f"line {lineno}: malformed order {body!r}")
        seen = set()
        for c in order:
            if c not in known:
                raise ValidationError(f"voter '{voter}' ranks unknown criterion '{c}'")
            if c in seen:
                raise ValidationError(f"voter '{voter}' ranks criterion '{c}' twice")
            seen.add(c)
        if seen != known:
            missing = sorted(known - seen)
            raise ValidationError(
                f"voter '{voter}' omits criteria: {', '.join(missing)}")
        voters.append(voter)
        orders.append(order)
    if not voters:
        raise ParseError("profile lists no voters")
    return PreferenceProfile(tuple(voters), tuple(orders))


_OPINION_RE = re.compile(
    r"opinion\s*\{([^{}]*)\}\s*>=\s*\{([^{}]*)\}\s*:\s*(\d+)$")


def parse_opinion_state(text: str) -> tuple[tuple[str, ...], OpinionState]:
    """Read raw opinion counts; returns the alternative names and the state."""
    names: tuple[str, ...] | None = None
    index: dict[str, int] = {}
    entries: dict[tuple[AltSubset, AltSubset], int] = {}

    def subset(lineno: int, inner: str) -> AltSubset:
        assert names is not None
        members = [part.strip() for part in inner.split(",") if part.strip()]
        if not members:
            raise ValidationError(f"line {lineno}: empty subset in opinion")
        for m in members:
            if m not in index:
                raise ValidationError(f"line {lineno}: unknown alternative '{m}'")
        return AltSubset.from_indices(len(names), (index[m] for m in members))

    for lineno, line in _content_lines(text):
        if line.startswith("alternatives"):
            head, body = _split_directive(lineno, line)
            if head != ["alternatives"]:
                raise ParseError(f"line {lineno}: unrecognized directive {line!r}")
            if names is not None:
                raise ParseError(f"line {lineno}: second 'alternatives:' header")
            names = tuple(body.split())
            index = {name: i for i, name in enumerate(names)}
        elif line.startswith("opinion"):
            if names is None:
                raise ParseError(
                    f"line {lineno}: 'alternatives:' header must come first")
            match = _OPINION_RE.fullmatch(line)
            if match is None:
                raise ParseError(
                    f"line {lineno}: expected 'opinion {{a,b}} >= {{c}} : N'")
            key = (subset(lineno, match.group(1)), subset(lineno, match.group(2)))
            entries[key] = entries.get(key, 0) + int(match.group(3))
        else:
            raise ParseError(f"line {lineno}: unrecognized directive {line!r}")
    if names is None:
        raise ParseError("missing 'alternatives:' header")
    return names, OpinionState(len(names), entries)


# ---------------------------------------------------------------------------
# Serialization

def format_subset(subset: AltSubset, names: tuple[str, ...]) -> str:
    return "{" + ",".join(names[i] for i in subset.indices) + "}"


def _format_members(indices, names: tuple[str, ...]) -> str:
    return "{" + ",".join(names[i] for i in sorted(indices)) + "}"


def format_ranking(ranking: Ranking, names: tuple[str, ...] | None = None) -> str:
    """Classes joined by ' > ', members comma separated in input order."""
    parts = []
    for cls_ in ranking.classes:
        if names is None:
            parts.append("{" + ",".join(str(label) for label in cls_) + "}")
        else:
            parts.append(_format_members(cls_, names))
    return " > ".join(parts)


def format_criterion_table(table: CriterionTable) -> str:
    lines = ["alternatives: " + " ".join(table.alternatives)]
    for c in table.criteria:
        lines.append(f"criterion {c}: " + " ".join(table.alt_names(table.tr[c])))
    return "\n".join(lines) + "\n"


def format_profile(profile: PreferenceProfile) -> str:
    lines = [
        f"voter {v}: " + " > ".join(order)
        for v, order in zip(profile.voters, profile.orders)
    ]
    return "\n".join(lines) + "\n"


def format_opinion_state(names: tuple[str, ...], state: OpinionState,
                         include_supports: bool = False) -> str:
    """Serialize a state so that parse_opinion_state reads it back."""
    lines = ["alternatives: " + " ".join(names)]
    if include_supports:
        for s, value in sorted(state.support_map.items(), key=lambda kv: kv[0].mask):
            lines.append(f"# support {format_subset(s, names)} = {value}")
    order = sorted(state.entries.items(), key=lambda kv: (kv[0][0].mask, kv[0][1].mask))
    for (s, t), count in order:
        lines.append(
            f"opinion {format_subset(s, names)} >= {format_subset(t, names)} : {count}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# The worked running example: seven voting rules judged on six criteria

DEMO_TABLE_TEXT = """\
alternatives: Copeland Dodgson Maximin Kemeny Plurality Borda Approval
criterion a: Copeland Dodgson Maximin Kemeny
criterion b: Copeland Kemeny Borda
criterion c: Copeland Dodgson Maximin Kemeny Plurality
criterion d: Copeland Maximin Kemeny Plurality Borda Approval
criterion e: Copeland Dodgson Maximin Kemeny Plurality Borda
criterion f: Plurality Borda Approval
"""

DEMO_PROFILE_TEXT = """\
voter 1: a > b > c > d > e > f
voter 2: d > c > b > a > f > e
voter 3: f > e > d > c > b > a
"""

_DEMO_CRITERION_SCORES = {"a": 10, "b": 11, "c": 12, "d": 13, "e": 8, "f": 9}
_DEMO_CRITERIA_RANKING = (("d",), ("c",), ("b",), ("a",), ("f",), ("e",))
_DEMO_STAGES = (
    frozenset({0, 2, 3, 4, 5, 6}),
    frozenset({0, 2, 3, 4}),
    frozenset({0, 3}),
    frozenset({0, 3}),
    frozenset(),
    frozenset(),
)
_DEMO_CHOICE = frozenset({0, 3})
_DEMO_ALT_SCORES = (54, 30, 43, 54, 42, 41, 22)
_DEMO_E_SCORES = (4, 0, 2, 4, 2, 1, 1)
_DEMO_IIS = ({0, 3}, {2, 4}, {5, 6}, {1})
_DEMO_SUPPORT = ({0, 3}, {2}, {4}, {5}, {1}, {6})
_DEMO_LEXCEL = ({0, 3}, {2}, {4}, {5}, {6}, {1})
_DEMO_CLASS_COUNTS_APPROVAL = (1, 0, 0, 0, 1, 0, 62)
_DEMO_CLASS_COUNTS_BORDA = (1, 0, 1, 0, 1, 1, 60)


# ---------------------------------------------------------------------------
# Command dispatch

@dataclass(frozen=True)
class RunConfig:
    command: str
    table: str | None = None
    profile: str | None = None
    opinions: str | None = None
    method: str | None = None
    rule: str | None = None
    axiom: str | None = None
    order: str | None = None
    trials: int = 1000
    seed: int = 0
    alternatives: int = 4
    fmt: str = "text"


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def _load_pair(config: RunConfig) -> tuple[CriterionTable, PreferenceProfile]:
    table = parse_criterion_table(_read(config.table))
    profile = parse_profile(_read(config.profile), table)
    return table, profile


def _emit(config: RunConfig, text_lines: list[str], kv_lines: list[str]) -> None:
    # Machine output always restates the seed so runs can be replayed.
    if config.fmt == "lines":
        print("\n".join([f"seed={config.seed}"] + kv_lines))
    else:
        print("\n".join(text_lines))


def _cmd_choose(config: RunConfig) -> int:
    table, profile = _load_pair(config)
    method = nurmi_first if config.method == "n1" else nurmi_second
    chosen = format_subset(method(table, profile), table.alternatives)
    _emit(config, [f"choice: {chosen}"],
          [f"method={config.method}", f"choice={chosen}"])
    return 0


def _parse_order(text: str, names: tuple[str, ...]) -> tuple[int, ...]:
    parts = [part.strip() for part in text.split(",")]
    if sorted(parts) != sorted(names):
        raise ValidationError(
            "--order must list every alternative exactly once, comma separated")
    index = {name: i for i, name in enumerate(names)}
    return tuple(index[p] for p in parts)


def _cmd_rank(config: RunConfig) -> int:
    if config.opinions is not None:
        if config.table is not None or config.profile is not None:
            raise ParseError("rank takes --opinions or --table/--profile, not both")
        names, state = parse_opinion_state(_read(config.opinions))
    else:
        if config.table is None or config.profile is None:
            raise ParseError("rank needs --opinions, or both --table and --profile")
        table, profile = _load_pair(config)
        names, state = table.alternatives, induce_opinion(table, profile)
    if config.rule == "iis-tb-order":
        order = (tuple(range(len(names))) if config.order is None
                 else _parse_order(config.order, names))
        ranking = iis_tiebreak_order(state, order)
    else:
        ranking = _PLAIN_RULES[config.rule](state)
    rendered = format_ranking(ranking, names)
    _emit(config, [f"ranking: {rendered}"],
          [f"rule={config.rule}", f"ranking={rendered}"])
    return 0


def _cmd_induce(config: RunConfig) -> int:
    table, profile = _load_pair(config)
    state = induce_opinion(table, profile)
    names = table.alternatives
    if config.fmt == "lines":
        kv = ["alternatives=" + ",".join(names)]
        for s, value in sorted(state.support_map.items(), key=lambda kv_: kv_[0].mask):
            kv.append(f"support{format_subset(s, names)}={value}")
        order = sorted(state.entries.items(),
                       key=lambda kv_: (kv_[0][0].mask, kv_[0][1].mask))
        for (s, t), count in order:
            kv.append(f"opinion{format_subset(s, names)}>={format_subset(t, names)}"
                      f"={count}")
        _emit(config, [], kv)
    else:
        # The text form is itself a parseable opinion file.
        print(format_opinion_state(names, state, include_supports=True), end="")
    return 0


def _cmd_check(config: RunConfig) -> int:
    rules = dict(_PLAIN_RULES)
    rules.update(VARIANT_RULES)
    result = sweep_axiom(rules[config.rule], config.axiom,
                         config.alternatives, config.seed, config.trials)
    status = "pass" if result.violations == 0 else "fail"
    text = [
        f"axiom: {config.axiom}",
        f"rule: {config.rule}",
        f"alternatives: {config.alternatives}",
        f"requested: {result.requested}",
        f"checked: {result.checked}",
        f"violations: {result.violations}",
    ]
    kv = [
        f"axiom={config.axiom}",
        f"rule={config.rule}",
        f"alternatives={config.alternatives}",
        f"requested={result.requested}",
        f"checked={result.checked}",
        f"violations={result.violations}",
    ]
    for i, verdict in enumerate(result.examples, 1):
        x, y = verdict.witness
        text.append(f"witness: x={x} y={y}: {verdict.note}")
        kv.append(f"witness-{i}=x={x} y={y}: {verdict.note}")
    text.append(f"result: {status}")
    kv.append(f"result={status}")
    _emit(config, text, kv)
    return 0 if result.violations == 0 else 3


def _cmd_selftest(config: RunConfig) -> int:
    text: list[str] = []
    kv: list[str] = [f"trials={config.trials}"]
    failed = False
    for universe in (3, 4, 5):
        report = differential_sweep(universe, config.trials, config.seed)
        text.append(f"alternatives {universe}: trials={report.trials} "
                    f"mismatches={report.mismatches}")
        kv.append(f"universe-{universe}-mismatches={report.mismatches}")
        for detail in report.details:
            text.append(f"  {detail}")
            kv.append(f"universe-{universe}-detail={detail}")
        failed = failed or not report.clean
    status = "fail" if failed else "pass"
    text.append(f"result: {status}")
    kv.append(f"result={status}")
    _emit(config, text, kv)
    return 3 if failed else 0


def _cmd_demo(config: RunConfig) -> int:
    table = parse_criterion_table(DEMO_TABLE_TEXT)
    profile = parse_profile(DEMO_PROFILE_TEXT, table)
    names = table.alternatives

    tally = borda_criterion_scores(table, profile)
    criteria_ranking = borda_ranking(tally)
    stages = cascade_sets(table, profile)
    first = nurmi_first(table, profile)
    second = nurmi_second(table, profile)
    state = induce_opinion(table, profile)
    supports = tuple(support_of(state, table.tr[c]) for c in table.criteria)
    escores = e_scores(state)
    iis = iis_rank(state)
    supp = support_rank(state)
    lex = lexcel_rank(state)
    counts_app = class_count_vector(state, names.index("Approval"))
    counts_bor = class_count_vector(state, names.index("Borda"))

    checks = [
        ("criterion scores", tally.criterion_scores, _DEMO_CRITERION_SCORES),
        ("criteria ranking", criteria_ranking.classes, _DEMO_CRITERIA_RANKING),
        ("stage sets", stages, _DEMO_STAGES),
        ("cascade choice", frozenset(first.indices), _DEMO_CHOICE),
        ("score choice", frozenset(second.indices), _DEMO_CHOICE),
        ("alternative scores", tally.alternative_scores, _DEMO_ALT_SCORES),
        ("induced supports", supports, (10, 11, 12, 13, 8, 9)),
        ("e-scores", escores, _DEMO_E_SCORES),
        ("iis ranking", tuple(set(c) for c in iis.classes), _DEMO_IIS),
        ("support ranking", tuple(set(c) for c in supp.classes), _DEMO_SUPPORT),
        ("lexcel ranking", tuple(set(c) for c in lex.classes), _DEMO_LEXCEL),
        ("class counts Approval", counts_app, _DEMO_CLASS_COUNTS_APPROVAL),
        ("class counts Borda", counts_bor, _DEMO_CLASS_COUNTS_BORDA),
    ]
    mismatches = [
        f"demo mismatch: {label}: got {got!r}, want {want!r}"
        for label, got, want in checks if got != want
    ]
    status = "ok" if not mismatches else "fail"

    def csv(values) -> str:
        return ",".join(str(v) for v in values)

    score_text = " ".join(f"{c}={tally.criterion_scores[c]}" for c in table.criteria)
    alt_text = " ".join(f"{names[i]}={s}" for i, s in enumerate(tally.alternative_scores))
    supports_text = " ".join(f"{c}={s}" for c, s in zip(table.criteria, supports))
    e_text = " ".join(f"{names[i]}={e}" for i, e in enumerate(escores))
    text = [
        f"criterion scores: {score_text}",
        f"criteria ranking: {format_ranking(criteria_ranking)}",
    ]
    for k, stage in enumerate(stages, 1):
        text.append(f"stage {k} intersection: {_format_members(stage, names)}")
    text += [
        f"choice (cascade): {format_subset(first, names)}",
        f"choice (score sum): {format_subset(second, names)}",
        f"alternative scores: {alt_text}",
        f"induced supports: {supports_text}",
        f"e-scores: {e_text}",
        f"ranking (iis): {format_ranking(iis, names)}",
        f"ranking (support): {format_ranking(supp, names)}",
        f"ranking (lexcel): {format_ranking(lex, names)}",
        f"class counts (Approval): {csv(counts_app)}",
        f"class counts (Borda): {csv(counts_bor)}",
        f"demo: {status}",
    ]
    kv = [
        f"criterion-scores={csv(tally.criterion_scores.values())}",
        f"criteria-ranking={format_ranking(criteria_ranking)}",
    ]
    for k, stage in enumerate(stages, 1):
        kv.append(f"stage-{k}={_format_members(stage, names)}")
    kv += [
        f"choice-cascade={format_subset(first, names)}",
        f"choice-score={format_subset(second, names)}",
        f"alternative-scores={csv(tally.alternative_scores)}",
        f"supports={csv(supports)}",
        f"e-scores={csv(escores)}",
        f"ranking-iis={format_ranking(iis, names)}",
        f"ranking-support={format_ranking(supp, names)}",
        f"ranking-lexcel={format_ranking(lex, names)}",
        f"class-counts-Approval={csv(counts_app)}",
        f"class-counts-Borda={csv(counts_bor)}",
        f"status={status}",
    ]
    _emit(config, text, kv)
    for line in mismatches:
        print(line, file=sys.stderr)
    return 3 if mismatches else 0


_DISPATCH = {
    "choose": _cmd_choose,
    "rank": _cmd_rank,
    "induce": _cmd_induce,
    "check": _cmd_check,
    "demo": _cmd_demo,
    "selftest": _cmd_selftest,
}


def run(config: RunConfig) -> int:
    """Execute one subcommand; returns the process exit code."""
    try:
        return _DISPATCH[config.command](config)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValidationError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="critrank",
                     description="Rank alternatives from opinions on criteria.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, help_: str):
        p = sub.add_parser(name, help=help_, description=help_)
        p.add_argument("--format", dest="fmt", choices=("text", "lines"),
                       default="text",
                       help="text report or machine readable key=value lines")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for randomized commands; echoed in lines output")
        return p

    p = add("choose", "pick the best alternatives from a table and a profile")
    p.add_argument("--table", required=True, help="criterion table file")
    p.add_argument("--profile", required=True, help="preference profile file")
    p.add_argument("--method", choices=("n1", "n2"), required=True,
                   help="n1: intersection cascade, n2: criterion score sums")

    p = add("rank", "rank alternatives with an aggregation rule")
    p.add_argument("--rule", choices=RULE_NAMES, required=True)
    p.add_argument("--table", help="criterion table file (with --profile)")
    p.add_argument("--profile", help="preference profile file (with --table)")
    p.add_argument("--opinions", help="raw opinion state file")
    p.add_argument("--order",
                   help="comma separated alternative names used by iis-tb-order "
                        "(default: input order)")

    p = add("induce", "turn a table and a profile into an opinion state file")
    p.add_argument("--table", required=True)
    p.add_argument("--profile", required=True)

    p = add("check", "sweep one axiom against a rule on generated states")
    p.add_argument("--axiom", choices=AXIOM_KINDS, required=True)
    p.add_argument("--rule", choices=RULE_NAMES, default="iis")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--alternatives", type=int, default=4,
                   help="number of alternatives in generated states")

    add("demo", "run the worked example and assert its published numbers")

    p = add("selftest", "compare fast implementations against brute force")
    p.add_argument("--trials", type=int, default=200,
                   help="random states per universe size")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    config = RunConfig(
        command=ns.command,
        table=getattr(ns, "table", None),
        profile=getattr(ns, "profile", None),
        opinions=getattr(ns, "opinions", None),
        method=getattr(ns, "method", None),
        rule=getattr(ns, "rule", None),
        axiom=getattr(ns, "axiom", None),
        order=getattr(ns, "order", None),
        trials=getattr(ns, "trials", 1000),
        seed=ns.seed,
        alternatives=getattr(ns, "alternatives", 4),
        fmt=ns.fmt,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
