"""Print the rule-by-axiom violation matrix over random instance sweeps.

Each cell counts violations across all universe sizes.  The baseline rule
should show a zero row; every rival rule should be zero everywhere except
its designated axiom column.  The witness column reports the two named
instances per rival rule where applicable: the published story and the
repaired one.
"""

import argparse
import sys

sys.path.insert(0, "src")

from critrank.aggregators import iis_rank
from critrank.axioms import (
    AXIOM_KINDS,
    VARIANT_RULES,
    VARIANT_TARGETS,
    VARIANT_WITNESSES,
    check_axiom,
    sweep_axiom,
)


def violation_row(rule, sizes, seed, trials):
    return [
        sum(sweep_axiom(rule, kind, u, seed, trials).violations for u in sizes)
        for kind in AXIOM_KINDS
    ]


def witness_summary(variant):
    primary, adjusted = VARIANT_WITNESSES[variant]
    rule = VARIANT_RULES[variant]
    parts = ["hit" if not check_axiom(rule, primary()).passed else "defused"]
    if adjusted is not None:
        parts.append("hit" if not check_axiom(rule, adjusted()).passed else "defused")
    return "/".join(parts)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=300,
                        help="instances per axiom per universe size")
    parser.add_argument("--sizes", type=int, nargs="+", default=[3, 4, 5])
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    rules = {"iis": iis_rank, **VARIANT_RULES}
    width = max(len(name) for name in rules) + 2
    header = "".join(f"{kind:>8}" for kind in AXIOM_KINDS)
    print(f"{'rule':<{width}}{header}  target   witnesses")
    for name, rule in rules.items():
        row = violation_row(rule, args.sizes, args.seed, args.trials)
        cells = "".join(f"{v:>8}" for v in row)
        target = VARIANT_TARGETS.get(name, "-")
        witnesses = witness_summary(name) if name in VARIANT_WITNESSES else "-"
        print(f"{name:<{width}}{cells}  {target:<8} {witnesses}")
    print(f"\n{args.trials} instances per cell per universe size, "
          f"sizes {args.sizes}, seed {args.seed}")


if __name__ == "__main__":
    main()
