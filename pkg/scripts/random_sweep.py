"""Run every check over a seeded grid of generated instances and tabulate statuses.

    python3 scripts/random_sweep.py --seeds 200 --max-blowups 8 --jobs 4
"""

from __future__ import annotations

import argparse
import collections
import itertools
from concurrent.futures import ProcessPoolExecutor

from ruledmmp.generator import GeneratorParams, random_instance
from ruledmmp.goodmodel import run
from ruledmmp.verify import CHECKS, verify


def one(args):
    seed, g, e, b, d = args
    sp = random_instance(seed, GeneratorParams(g, e, b, d, seed % 3))
    plan = run(sp)
    report = verify(sp, plan)
    return (g, e), [(c.name, c.status) for c in report.checks], plan.gamma


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=100, help="seeds per (g, e) cell")
    ap.add_argument("--max-blowups", type=int, default=6)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    tasks = [
        (s, g, e, s % (args.max_blowups + 1), (0.0, 0.5, 1.0)[s % 3])
        for g, e in itertools.product(range(3), range(4))
        for s in range(args.seeds)
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(one, tasks, chunksize=32))
    else:
        results = [one(t) for t in tasks]

    status = collections.Counter()
    gammas = collections.defaultdict(collections.Counter)
    for cell, rows, gamma in results:
        status.update(rows)
        gammas[cell][gamma] += 1

    print(f"{len(results)} instances")
    print(f"{'check':<20} " + " ".join(f"{s:>8}" for s in ("PASS", "VACUOUS", "FLAG", "FAIL")))
    for name in CHECKS:
        print(f"{name:<20} " + " ".join(f"{status[(name, s)]:>8}" for s in ("PASS", "VACUOUS", "FLAG", "FAIL")))
    print("\ngamma histogram per (g, e):")
    for cell in sorted(gammas):
        hist = ", ".join(f"{k}:{v}" for k, v in sorted(gammas[cell].items()))
        print(f"  g={cell[0]} e={cell[1]}  {hist}")
    if any(status[(n, "FAIL")] for n in CHECKS):
        raise SystemExit(1)


if __name__ == "__main__":
    main()
