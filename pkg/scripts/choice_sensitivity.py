"""Do k1, k2 and the support of E' depend on which (-1)-curve is picked at a tie?

Enumerates every legal tie-break sequence on small generated instances and
counts instances where the outcomes differ.  Nothing is asserted; this only
collects evidence.

    python3 scripts/choice_sensitivity.py --seeds 300 --blowups 4
"""

from __future__ import annotations

import argparse
import collections

from ruledmmp.generator import GeneratorParams, random_instance
from ruledmmp.goodmodel import explore_choices


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=200)
    ap.add_argument("--blowups", type=int, default=4)
    ap.add_argument("--limit", type=int, default=500, help="max tie-break sequences per instance")
    args = ap.parse_args()

    varies = collections.Counter()
    multi = 0
    examples = []
    for seed in range(args.seeds):
        sp = random_instance(seed, GeneratorParams(seed % 3, seed % 4, args.blowups, (0.0, 0.5, 1.0)[seed % 3]))
        outs = explore_choices(sp, limit=args.limit)
        if len(outs) < 2:
            continue
        multi += 1
        for field in ("k1", "k2", "gamma", "e_prime_support"):
            values = {getattr(o, field) for o in outs}
            if len(values) > 1:
                varies[field] += 1
                if len(examples) < 5:
                    examples.append((seed, field, sorted(map(str, values))))

    print(f"{args.seeds} instances, {multi} with more than one legal sequence")
    for field in ("k1", "k2", "gamma", "e_prime_support"):
        print(f"  {field:<16} varies on {varies[field]}")
    for seed, field, values in examples:
        print(f"  e.g. seed {seed}: {field} takes {values}")


if __name__ == "__main__":
    main()
