"""Minimality census over admissible t = 3 triples.

For each triple: brute-force verdict, Walsh-criterion verdict, whether all
seven member index sets pairwise intersect, and the extreme weights.  Prints a
JSON summary; ``--stride k`` visits every k-th triple of the sorted search.

    python scripts/t3_census.py --stride 100
    python scripts/t3_census.py --out results/t3_census.json      # all 378000, about an hour
"""
from __future__ import annotations

import argparse
import itertools
import json
import time
from collections import Counter
from pathlib import Path

from minimalcodes.code import construct_code, enumerate_weights, predict_weights
from minimalcodes.minimal import is_minimal_bruteforce, walsh_minimality_criterion
from minimalcodes.spread import build_desarguesian_spread, build_family, search_admissible


def pairwise_meet(sys) -> bool:
    sets = list(sys.member_sets().values())
    return all(a & b for a, b in itertools.combinations(sets, 2))


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--stride", type=int, default=1)
    p.add_argument("--out")
    args = p.parse_args(argv)

    spread = build_desarguesian_spread(3)
    systems = search_admissible(3)[::args.stride]
    t0 = time.perf_counter()
    tally: Counter[str] = Counter()
    disagreements = []
    for s in systems:
        fam = build_family(spread, s)
        code = construct_code(fam)
        brute = is_minimal_bruteforce(code).is_minimal
        crit = walsh_minimality_criterion(fam).is_minimal
        meet = pairwise_meet(s)
        if brute != crit:
            disagreements.append(json.loads(s.to_json()))
        tally[f"minimal={brute} pairwise_meet={meet}"] += 1
        tally[f"epsilon={s.epsilon} minimal={brute}"] += 1
        tally["prediction_match"] += enumerate_weights(code) == predict_weights(s)
    summary = {
        "triples": len(systems),
        "stride": args.stride,
        "criterion_disagreements": len(disagreements),
        "disagreement_examples": disagreements[:5],
        "tally": dict(sorted(tally.items())),
        "seconds": round(time.perf_counter() - t0, 1),
    }
    text = json.dumps(summary, indent=2)
    print(text)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text + "\n")
    return 0 if not disagreements else 1


if __name__ == "__main__":
    raise SystemExit(main())
