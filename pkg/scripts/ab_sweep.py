"""Weight extremes and Ashikhmin-Barg ratios over admissible t = 3 triples.

Enumerates every code in batches and compares wt_min and wt_max with the
closed forms min(eps q, 2^(n-1) - mu) and max(2^(n-1) + 2^t - eps, mu q), q = 2^t - 1.

    python scripts/ab_sweep.py                 # AB-violating triples only
    python scripts/ab_sweep.py --all
"""
from __future__ import annotations

import argparse
import json
import time
from collections import Counter
from fractions import Fraction

from minimalcodes.code import WeightDistribution, batch_spread_weights, wt_max_candidate
from minimalcodes.minimal import ab_ratio
from minimalcodes.spread import build_desarguesian_spread, search_admissible


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--all", action="store_true", help="every admissible triple, not only eps <= 2")
    args = p.parse_args(argv)

    t, q, half = 3, 7, 32
    spread = build_desarguesian_spread(t)
    t0 = time.perf_counter()
    systems = search_admissible(t, require_ab_violation=not args.all)
    tally: Counter[str] = Counter()
    worst = Fraction(0)
    for start in range(0, len(systems), 2048):
        chunk = systems[start:start + 2048]
        for s, row in zip(chunk, batch_spread_weights(spread, chunk)):
            dist = WeightDistribution.from_weights(row)
            r, violating = ab_ratio(dist)
            worst = max(worst, r)
            tally[f"epsilon={s.epsilon} ab_violating={violating}"] += 1
            tally[f"wt_min==eps*q: {dist.wt_min == s.epsilon * q}"] += 1
            tally[f"wt_max==2^(n-1)+2^t-eps: {dist.wt_max == wt_max_candidate(s)}"] += 1
            tally["closed_forms_hold"] += (dist.wt_min == min(s.epsilon * q, half - s.mu)
                                           and dist.wt_max == max(wt_max_candidate(s), s.mu * q))
    print(json.dumps({"triples": len(systems), "largest_ratio": str(worst),
                      "tally": dict(sorted(tally.items())),
                      "seconds": round(time.perf_counter() - t0, 1)}, indent=2))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
