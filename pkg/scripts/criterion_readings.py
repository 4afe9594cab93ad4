"""Compare the two scopes of the Walsh minimality criterion against brute force.

"proof" applies the x != y condition only to a member paired with itself;
"literal" applies it to every ordered pair of members.  Random families with
uniform truth tables and non-linear members.

    python scripts/criterion_readings.py --families 500 --n 4 5 6
"""
from __future__ import annotations

import argparse
import json

import numpy as np

from minimalcodes.code import construct_code
from minimalcodes.minimal import (is_minimal_bruteforce, random_family,
                                  walsh_minimality_criterion)


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--families", type=int, default=200)
    p.add_argument("--n", type=int, nargs="+", default=[4, 5])
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    rows = []
    for n in args.n:
        rng = np.random.default_rng(args.seed + n)
        row = {"n": n, "families": args.families, "minimal": 0,
               "proof_disagreements": 0, "literal_disagreements": 0, "literal_example": None}
        for _ in range(args.families):
            fam = random_family(n, rng)
            truth = is_minimal_bruteforce(construct_code(fam)).is_minimal
            row["minimal"] += truth
            row["proof_disagreements"] += walsh_minimality_criterion(fam).is_minimal != truth
            lit = walsh_minimality_criterion(fam, reading="literal")
            if lit.is_minimal != truth:
                row["literal_disagreements"] += 1
                if row["literal_example"] is None:
                    row["literal_example"] = {"f": fam.f.to_string(), "g": fam.g.to_string(),
                                              "h": fam.h.to_string(),
                                              "witness": lit.witness.as_dict()}
        rows.append(row)
        print(json.dumps(row))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
