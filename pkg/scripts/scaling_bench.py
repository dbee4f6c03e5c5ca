"""Time the sparse ranking rules on a large random opinion state.

The interesting regime is many alternatives with far fewer expressed
subsets than the doubly exponential space of possible entries: the sparse
representation only ever touches what was expressed.
"""

import argparse
import sys
import time
from random import Random

sys.path.insert(0, "src")

from critrank.aggregators import iis_rank, lexcel_rank, support_rank
from critrank.model import AltSubset, OpinionState


def random_big_state(universe, n_subsets, seed):
    rng = Random(seed)
    masks = set()
    while len(masks) < n_subsets:
        masks.add(rng.getrandbits(universe) or 1)
    masks = sorted(masks)
    entries = {}
    for m in masks:
        s = AltSubset(m, universe)
        t = AltSubset(rng.choice(masks), universe)
        entries[(s, t)] = rng.randint(1, 50)
    return OpinionState(universe, entries)


def best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--alternatives", type=int, default=60)
    parser.add_argument("--subsets", type=int, default=5000)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    if args.alternatives > 64:
        parser.error("alternative count is capped at 64 by the bitmask layout")

    t0 = time.perf_counter()
    state = random_big_state(args.alternatives, args.subsets, args.seed)
    built = time.perf_counter() - t0
    print(f"{args.alternatives} alternatives, {args.subsets} subsets, "
          f"built in {built:.3f}s")

    for label, rule in (("deepest-intersection", iis_rank),
                        ("support", support_rank),
                        ("lexicographic", lexcel_rank)):
        # fresh copy per rule so cached quotients don't hide the real cost
        fresh = [OpinionState(state.universe, state.entries)
                 for _ in range(args.repeats)]
        it = iter(fresh)
        elapsed = best_of(lambda: rule(next(it)), args.repeats)
        print(f"  {label:<22} {elapsed * 1000:8.1f} ms")


if __name__ == "__main__":
    main()
