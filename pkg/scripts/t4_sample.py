"""Construct and check sampled admissible t = 4 codes ([255, 11]).

    python scripts/t4_sample.py --limit 32 --seed 0 [--ab-violating]
"""
from __future__ import annotations

import argparse
import itertools
import json
import time

from minimalcodes.code import construct_code, enumerate_weights, predict_weights
from minimalcodes.minimal import (is_minimal_bruteforce, walsh_inequality_suite,
                                  walsh_minimality_criterion)
from minimalcodes.spread import build_desarguesian_spread, build_family, search_admissible


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--limit", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ab-violating", action="store_true")
    args = p.parse_args(argv)

    spread = build_desarguesian_spread(4)
    for s in search_admissible(4, args.ab_violating, seed=args.seed, limit=args.limit):
        t0 = time.perf_counter()
        fam = build_family(spread, s)
        code = construct_code(fam)
        dist = enumerate_weights(code)
        brute = is_minimal_bruteforce(code)
        sets = list(s.member_sets().values())
        print(json.dumps({
            **json.loads(s.to_json()),
            "params": list(code.params()),
            "epsilon": s.epsilon,
            "prediction_match": dist == predict_weights(s),
            "minimal": brute.is_minimal,
            "criterion_agrees": walsh_minimality_criterion(fam).is_minimal == brute.is_minimal,
            "pairwise_meet": all(a & b for a, b in itertools.combinations(sets, 2)),
            "inequalities_hold": walsh_inequality_suite(s, fam).passed,
            "ab_ratio": str(brute.ab_ratio),
            "seconds": round(time.perf_counter() - t0, 3),
        }))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
