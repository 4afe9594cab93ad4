"""Command line: construct | search | verify | walsh | weights.

Exit codes: 0 success, 1 verification failure, 2 invalid or inadmissible input.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .boolfn import (BooleanFunction, read_spectrum_csv,
                     read_truth_table, spectrum_to_csv, walsh_hat, walsh_relation_holds,
                     walsh_tilde)
from .code import (LinearCode, construct_code, construct_generic_code, enumerate_weights,
                   predict_walsh, predict_weights, weight_rows, wt_max_candidate)
from .gf2core import DEFAULT_MODULI
from .minimal import (BRUTE_FORCE_CAP, cover_weight_identity_holds, is_minimal_bruteforce,
                      random_family, walsh_inequality_suite, walsh_minimality_criterion)
from .spread import (LABELS, FamilyError, PreconditionError, SetSystem,
                     build_desarguesian_spread, build_family, check_conditions,
                     search_admissible)

log = logging.getLogger("minimalcodes")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
TEXT_MATRIX_MAX_N = 8


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    t: int | None = None
    modulus: int | None = None
    A1: frozenset[int] | None = None
    A2: frozenset[int] | None = None
    A3: frozenset[int] | None = None
    output_dir: Path | None = None
    format: str = "text"
    seed: int = 0

    def __post_init__(self):
        if self.t is not None and not 2 <= self.t <= 8:
            raise InputError(f"t={self.t} outside 2..8")
        nu = (1 << self.t) + 1 if self.t else None
        for name in ("A1", "A2", "A3"):
            s = getattr(self, name)
            if s is not None and nu is not None and any(not 1 <= i <= nu for i in s):
                raise InputError(f"{name} has indices outside 1..{nu}")

    def has_triple(self) -> bool:
        return None not in (self.t, self.A1, self.A2, self.A3)

    def set_system(self) -> SetSystem:
        if not self.has_triple():
            raise InputError("--t, --a1, --a2 and --a3 are required")
        return SetSystem(self.t, self.A1, self.A2, self.A3)


def _index_list(text: str) -> frozenset[int]:
    try:
        return frozenset(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad index list {text!r}") from exc


def _hex(text: str) -> int:
    return int(text, 16)


def _config(args) -> RunConfig:
    return RunConfig(t=args.t, modulus=getattr(args, "modulus", None),
                     A1=getattr(args, "a1", None), A2=getattr(args, "a2", None),
                     A3=getattr(args, "a3", None),
                     output_dir=Path(args.out) if getattr(args, "out", None) else None,
                     format=args.format, seed=args.seed)


def _emit(text: str, cfg: RunConfig, name: str) -> None:
    if cfg.output_dir is not None:
        cfg.output_dir.mkdir(parents=True, exist_ok=True)
        (cfg.output_dir / name).write_text(text)
    else:
        sys.stdout.write(text)


def _write(cfg: RunConfig, name: str, text: str) -> None:
    if cfg.output_dir is not None:
        cfg.output_dir.mkdir(parents=True, exist_ok=True)
        (cfg.output_dir / name).write_text(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _generator_text(code: LinearCode) -> str:
    lines = []
    for r in code.generator.rows:
        lines.append("".join(str((r >> j) & 1) for j in range(code.length)))
    return "\n".join(lines) + "\n"


def _build(cfg: RunConfig, force: bool):
    sys_ = cfg.set_system()
    report = check_conditions(sys_)
    if not report.passed:
        if not force:
            raise InputError(_dumps({"error": "inadmissible set system",
                                     "failed": report.failed(),
                                     "conditions": report.as_dict()}))
        log.warning("building despite failed %s", ", ".join(report.failed()))
    if 2 * cfg.t < 6:
        log.warning("n=%d is below the n >= 6 the minimality conditions need; "
                    "checking by brute force", 2 * cfg.t)
    spread = build_desarguesian_spread(cfg.t, cfg.modulus)
    try:
        fam = build_family(spread, sys_)
    except (FamilyError, PreconditionError) as exc:
        raise InputError(str(exc)) from exc
    return sys_, report, spread, fam


def _hypotheses(sys_: SetSystem) -> dict[str, bool]:
    hi = 1 << (sys_.t - 1)
    sizes_ok = all(2 <= s <= hi for s in (sys_.s1, sys_.s2, sys_.s3))
    return {
        "n_at_least_6": 2 * sys_.t >= 6,
        "sizes_in_range": sizes_ok,
        "epsilon_at_most_half_minus_one": sys_.epsilon <= hi - 1,
        "epsilon_at_most_quarter": sys_.epsilon <= (1 << max(sys_.t - 2, 0)),
    }


def cmd_construct(args) -> int:
    cfg = _config(args)
    sys_, cond, spread, fam = _build(cfg, args.force)
    n, t = spread.n, spread.t
    code = construct_code(fam)
    dist = enumerate_weights(code)
    predicted = predict_weights(sys_)
    hyp = _hypotheses(sys_)

    walsh_ok = all(np.array_equal(predict_walsh(sys_, k, spread), walsh_hat(fam.members[k]))
                   for k in LABELS)
    if code.dimension <= BRUTE_FORCE_CAP:
        brute = is_minimal_bruteforce(code)
    else:
        brute = None
        log.warning("dimension %d above brute-force cap; skipping pair scan", code.dimension)
    crit = walsh_minimality_criterion(fam)

    checks = {
        "length": code.length == (1 << n) - 1,
        "dimension": code.dimension == n + 3,
        "weights_match_table": dist == predicted,
        "walsh_match_table": walsh_ok,
        "criterion_agrees_with_bruteforce": brute is None or brute.is_minimal == crit.is_minimal,
        "minimal": crit.is_minimal if brute is None else brute.is_minimal,
    }
    if hyp["epsilon_at_most_half_minus_one"]:
        checks["wt_min_is_epsilon_times_q"] = dist.wt_min == sys_.epsilon * ((1 << t) - 1)
    if hyp["epsilon_at_most_quarter"]:
        checks["ab_violating"] = (brute or crit).ab_violating

    params = {
        "n": n, "t": t, "length": code.length, "dimension": code.dimension,
        "wt_min": dist.wt_min, "wt_max": dist.wt_max,
        "wt_max_candidate": wt_max_candidate(sys_),
        **sys_.stats(),
        "distribution": {str(w): m for w, m in dist.entries.items()},
        "weight_rows": [{"weight": r.weight, "multiplicity": r.multiplicity, "source": r.source}
                        for r in weight_rows(sys_)],
    }
    diff = {str(w): {"enumerated": a, "predicted": b} for w, (a, b) in dist.diff(predicted).items()}
    minimality = {"bruteforce": brute.as_dict() if brute else None,
                  "walsh_criterion": crit.as_dict()}
    report = {"set_system": json.loads(sys_.to_json()), "conditions": cond.as_dict(),
              "hypotheses": hyp, "parameters": params, "prediction_diff": diff,
              "minimality": minimality, "checks": checks, "verified": all(checks.values())}

    _write(cfg, "parameters.json", _dumps(params))
    _write(cfg, "generator.txt", _generator_text(code))
    _write(cfg, "weights.csv", dist.to_csv())
    _write(cfg, "prediction_diff.json", _dumps(diff))
    _write(cfg, "minimality.json", _dumps(minimality))
    _write(cfg, "report.json", _dumps(report))

    if cfg.format == "json":
        sys.stdout.write(_dumps(report))
    elif cfg.format == "csv":
        sys.stdout.write(dist.to_csv())
    else:
        print(f"[{code.length}, {code.dimension}, {dist.wt_min}] code, n={n}, t={t}")
        print("  " + ", ".join(f"{k}={v}" for k, v in sys_.stats().items()))
        print(f"  wt_min={dist.wt_min} wt_max={dist.wt_max} "
              f"(candidate 2^(n-1)+2^t-eps = {wt_max_candidate(sys_)})")
        verdict = brute or crit
        print(f"  minimal={verdict.is_minimal} ab_ratio={verdict.ab_ratio} "
              f"ab_violating={verdict.ab_violating}")
        if not verdict.is_minimal:
            print(f"  witness: {verdict.witness.as_dict()}")
        if n <= TEXT_MATRIX_MAX_N:
            print("generator:")
            sys.stdout.write(_generator_text(code))
        for k, v in checks.items():
            print(f"  {'PASS' if v else 'FAIL'} {k}")
    return EXIT_OK if report["verified"] else EXIT_FAIL


def cmd_search(args) -> int:
    cfg = _config(args)
    if cfg.t not in (3, 4, 5):
        raise InputError("search needs --t in {3, 4, 5}")
    found = search_admissible(cfg.t, args.ab_violating, seed=cfg.seed, limit=args.limit)
    lines = "".join(s.to_json() + "\n" for s in found)
    _emit(lines, cfg, "search.jsonl")
    log.info("%d set systems", len(found))
    return EXIT_OK


def _verify_table(args, cfg: RunConfig) -> dict:
    try:
        f = read_truth_table(args.table)
        hat = read_spectrum_csv(args.spectrum) if args.spectrum else walsh_hat(f)
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    hat = np.asarray(hat, dtype=np.int64)
    parseval = hat.shape == (1 << f.n,) and int((hat ** 2).sum()) == 1 << (2 * f.n)
    return {
        "walsh_relation": {"pass": walsh_relation_holds(f, hat)},
        "parseval": {"pass": parseval},
    }


def _verify_instance(args, cfg: RunConfig) -> dict:
    sys_, cond, spread, fam = _build(cfg, force=False)
    rng = np.random.default_rng(cfg.seed)
    trials = 200 if args.quick else 10_000
    families = 20 if args.quick else 200
    n = spread.n
    suites: dict[str, dict] = {}

    ok = all(walsh_relation_holds(m) for m in fam.members.values())
    ok &= all(walsh_relation_holds(BooleanFunction.random(n, rng, False)) for _ in range(trials))
    suites["walsh_relation"] = {"pass": bool(ok), "trials": trials + 7}

    length = (1 << n) - 1
    nbytes = -(-length // 8)
    mask = (1 << length) - 1

    def word() -> int:
        return int.from_bytes(rng.bytes(nbytes), "little") & mask

    bad = 0
    for _ in range(trials):
        x = word()
        # half the trials draw y under x so the covering branch is exercised
        y = x & word() if rng.random() < 0.5 else word()
        bad += not cover_weight_identity_holds(x, y)
    suites["cover_weight_identity"] = {"pass": bad == 0, "trials": trials}

    code = construct_code(fam)
    dist = enumerate_weights(code)
    suites["weight_table"] = {"pass": dist == predict_weights(sys_),
                              "dimension": code.dimension, "length": code.length}
    suites["walsh_table"] = {"pass": all(
        np.array_equal(predict_walsh(sys_, k, spread), walsh_hat(fam.members[k])) for k in LABELS)}

    brute = is_minimal_bruteforce(code)
    crit = walsh_minimality_criterion(fam)
    agree = brute.is_minimal == crit.is_minimal
    disagreements = 0
    for rn in (4, 5):
        for rf in (random_family(rn, rng) for _ in range(families)):
            b = is_minimal_bruteforce(construct_code(rf)).is_minimal
            disagreements += b != walsh_minimality_criterion(rf).is_minimal
    suites["criterion_equivalence"] = {"pass": agree and disagreements == 0,
                                       "instance_agrees": agree,
                                       "random_families": 2 * families,
                                       "disagreements": disagreements}
    suites["minimality"] = {"pass": brute.is_minimal, **brute.as_dict()}
    try:
        ineq = walsh_inequality_suite(sys_, fam)
        suites["inequality_suite"] = {"pass": ineq.passed, **ineq.as_dict()}
    except PreconditionError as exc:
        suites["inequality_suite"] = {"pass": False, "error": str(exc)}
    return suites


def cmd_verify(args) -> int:
    cfg = _config(args)
    suites = _verify_table(args, cfg) if args.table else _verify_instance(args, cfg)
    failed = [k for k, v in suites.items() if not v["pass"]]
    summary = {"suites": suites, "failed": failed, "pass": not failed}
    text = _dumps(summary)
    _write(cfg, "verify.json", text)
    if cfg.format == "json":
        sys.stdout.write(text)
    else:
        for k, v in suites.items():
            print(f"{'PASS' if v['pass'] else 'FAIL'} {k}")
    if failed:
        log.error("failing suites: %s", ", ".join(failed))
        return EXIT_FAIL
    return EXIT_OK


def _function_from_args(args, cfg: RunConfig) -> BooleanFunction:
    if args.table:
        try:
            return read_truth_table(args.table)
        except (OSError, ValueError) as exc:
            raise InputError(str(exc)) from exc
    _, _, _, fam = _build(cfg, force=args.force)
    return fam.members[args.member]


def cmd_walsh(args) -> int:
    cfg = _config(args)
    f = _function_from_args(args, cfg)
    values = walsh_tilde(f) if args.kind == "tilde" else walsh_hat(f)
    _emit(spectrum_to_csv(values), cfg, "spectrum.csv")
    return EXIT_OK


def cmd_weights(args) -> int:
    cfg = _config(args)
    if args.table:
        try:
            f = read_truth_table(args.table)
            dist = enumerate_weights(construct_generic_code(f))
        except (OSError, ValueError) as exc:
            raise InputError(str(exc)) from exc
    elif args.predicted:
        dist = predict_weights(cfg.set_system())
    else:
        _, _, _, fam = _build(cfg, force=args.force)
        dist = enumerate_weights(construct_code(fam))
    if cfg.format == "json":
        _emit(_dumps({"distribution": {str(w): m for w, m in dist.entries.items()},
                      "total": dist.total, "wt_min": dist.wt_min, "wt_max": dist.wt_max}),
              cfg, "weights.json")
    else:
        _emit(dist.to_csv(), cfg, "weights.csv")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="minimalcodes", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, triple=True):
        sp.add_argument("--t", type=int)
        sp.add_argument("--modulus", type=_hex, help="field polynomial in hex, e.g. b for x^3+x+1")
        if triple:
            sp.add_argument("--a1", type=_index_list)
            sp.add_argument("--a2", type=_index_list)
            sp.add_argument("--a3", type=_index_list)
            sp.add_argument("--force", action="store_true",
                            help="build even if the admissibility conditions fail")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--format", choices=("json", "csv", "text"), default="text")
        sp.add_argument("--out", help="output directory")

    sp = sub.add_parser("construct", help="build and check one code")
    common(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("search", help="list admissible set systems as JSON lines")
    common(sp, triple=False)
    sp.add_argument("--ab-violating", action="store_true")
    sp.add_argument("--limit", type=int, default=64, help="result cap for t >= 4")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("verify", help="run the property suites")
    common(sp)
    sp.add_argument("--quick", action="store_true", help="fewer random trials")
    sp.add_argument("--table", help="truth-table file to audit instead of an instance")
    sp.add_argument("--spectrum", help="stored spectrum CSV (w,value) for --table")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("walsh", help="export a Walsh spectrum as CSV")
    common(sp)
    sp.add_argument("--table")
    sp.add_argument("--member", choices=LABELS, default="f")
    sp.add_argument("--kind", choices=("hat", "tilde"), default="hat")
    sp.set_defaults(func=cmd_walsh)

    sp = sub.add_parser("weights", help="export a weight distribution")
    common(sp)
    sp.add_argument("--table", help="truth table: weights of the single-function code")
    sp.add_argument("--predicted", action="store_true", help="closed form instead of enumeration")
    sp.set_defaults(func=cmd_weights)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    if getattr(args, "modulus", None) is None and args.t in DEFAULT_MODULI:
        args.modulus = DEFAULT_MODULI[args.t]
    try:
        return args.func(args)
    except (InputError, PreconditionError) as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_INPUT
    except ValueError as exc:  # e.g. reducible modulus
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except BrokenPipeError:  # output piped into head and friends
        sys.stderr.close()
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
