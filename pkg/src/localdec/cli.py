"""Experiment runner: every capability as a seeded, reproducible command.

All commands emit a JSON envelope {command, parameters, result} on stdout
(or --output).  Exit codes: 0 success, 1 verdict failure, 2 usage error.
A JSON config file overrides parsed flags, and LOCALDEC_SEED provides the
default seed.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

from . import constructions, deciders, derand, engine, secure
from .core import MARKER, Instance, Subpath

SEED_ENV = "LOCALDEC_SEED"


def _default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


def _symbol(token: str) -> str:
    token = token.strip()
    return MARKER if token in ("*", MARKER) else token


def _parse_region(text: str) -> Subpath:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise ValueError("region must look like lo:hi")
    return Subpath(int(lo), int(hi))


def _class_to_json(cls: deciders.ThresholdClass) -> object:
    if cls.smallest_k is None:
        return None
    if cls.smallest_k == math.inf:
        return "inf"
    return int(cls.smallest_k)


def _secure_report_json(rep: secure.SecureReport) -> dict:
    return {
        "window": [rep.window.lo, rep.window.hi],
        "probability": rep.probability.to_json_dict(),
        "secure": rep.is_secure,
        "internal": rep.internal,
    }


def cmd_amos_verify(args: argparse.Namespace) -> tuple[dict, int]:
    decider = deciders.amos_k_decider(args.k, args.p)
    language = deciders.amos_k_language(args.k)
    family = deciders.binary_paths(args.max_n)
    report = deciders.verify_pq(decider, language, family, trials=args.trials, master=args.seed)
    cls = deciders.classify_threshold(report.p_hat, report.q_hat)
    result = {
        "p_hat": report.p_hat,
        "q_hat": report.q_hat,
        "declared_p": decider.declared_p,
        "declared_q": decider.declared_q,
        "exact": report.exact,
        "members": report.members,
        "non_members": report.non_members,
        "skipped_promise": report.skipped_promise,
        "class": _class_to_json(cls),
        "ok": report.ok,
    }
    return result, 0 if report.ok else 1


def cmd_separation(args: argparse.Namespace) -> tuple[dict, int]:
    if args.k is not None:
        pair = constructions.amos_separation_pair(args.k, args.p, args.eps, t=args.t, delta=args.delta)
        decider = deciders.amos_k_decider(args.k, args.p)
    else:
        lo, _, hi = args.rational.partition(",")
        pair = constructions.promise_separation_pair(
            float(lo), float(hi), args.p, args.eps, t=args.t, delta=args.delta
        )
        decider = deciders.amos_promise_decider(pair.a, args.p, pair.b)
    check = constructions.separation_ratio_check(pair, decider)
    result = {
        "a": pair.a,
        "b": pair.b,
        "delta": pair.delta,
        "epsilon": pair.epsilon,
        "ell": pair.ell,
        "t": pair.t,
        "n": pair.legal.n,
        "leaders": list(pair.leaders),
        "dropped": list(pair.dropped),
        "segments": [[s.lo, s.hi] for s in pair.segments],
        "legal": pair.legal.to_json_dict(),
        "illegal": pair.illegal.to_json_dict(),
        "ratio_check": {
            "rho": check.rho,
            "pr_yes_legal": check.pr_yes_legal,
            "pr_yes_illegal": check.pr_yes_illegal,
            "block_probs": list(check.block_probs),
            "max_blocks": list(check.max_blocks),
            "lower_bound": check.lower_bound,
            "upper_bound": check.upper_bound,
            "lower_holds": check.lower_holds,
            "upper_holds": check.upper_holds,
            "consistent_interval": check.consistent_interval,
            "vacuous": check.vacuous,
            "contradiction": check.contradiction,
        },
    }
    return result, 0 if check.contradiction else 1


def _load_instance(source: str) -> Instance:
    if source == "-":
        return Instance.from_json(sys.stdin.read())
    with open(source, "r", encoding="utf-8") as fh:
        return Instance.from_json(fh.read())


def cmd_secure_scan(args: argparse.Namespace) -> tuple[dict, int]:
    inst = _load_instance(args.instance)
    decider = deciders.parse_decider(args.decider)
    params = secure.SecureParams(delta=args.delta, t=args.t, p=decider.declared_p, lam=args.lam)
    region = _parse_region(args.region) if args.region else Subpath(1, inst.n)
    reports = secure.scan_secure(
        decider, inst, params, region, trials=args.trials, master=args.seed
    )
    ell = None
    if decider.declared_p < 1.0:
        ell = secure.security_length(params)
    result = {
        "delta": params.delta,
        "lambda": params.lam_effective,
        "t": params.t,
        "region": [region.lo, region.hi],
        "reports": [_secure_report_json(rep) for rep in reports],
        "secure_windows": sum(1 for rep in reports if rep.is_secure),
    }
    if ell is not None:
        result["ell"] = ell
    if args.csv:
        _write_csv(args.csv, reports)
    return result, 0


def _write_csv(path: str, reports: list) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["window_lo", "window_hi", "kind", "value", "ci_low", "ci_high", "secure", "internal"])
        for rep in reports:
            pr = rep.probability
            writer.writerow(
                [rep.window.lo, rep.window.hi, pr.kind, pr.value, pr.ci_low, pr.ci_high, rep.is_secure, rep.internal]
            )


def cmd_tree_cycle(args: argparse.Namespace) -> tuple[dict, int]:
    setup = constructions.tree_cycle_setup(args.p, args.q, args.t)
    s_equal, sprime_equal = constructions.tree_cycle_views_equal(setup)
    result = {
        "n": setup.n,
        "t": setup.t,
        "x_cut": setup.x_cut,
        "delta": setup.delta,
        "s": [setup.s.lo, setup.s.hi],
        "s_prime_labels": list(setup.s_prime_labels),
        "views_equal": {"s": s_equal, "s_prime": sprime_equal},
        "check": None,
    }
    if args.decider:
        decider = deciders.parse_decider(args.decider)
        diag = constructions.tree_cycle_check(setup, decider, trials=args.trials, master=args.seed)
        result["check"] = {
            "s_path": diag.s_path.to_json_dict(),
            "s_cycle": diag.s_cycle.to_json_dict(),
            "s_prime_path2": diag.s_prime_path2.to_json_dict(),
            "s_prime_cycle": diag.s_prime_cycle.to_json_dict(),
            "transfer_s_exact": diag.transfer_s_exact,
            "transfer_s_prime_exact": diag.transfer_s_prime_exact,
            "cycle_full": diag.cycle_full.to_json_dict(),
            "union_bound": diag.union_bound,
            "union_bound_hi": diag.union_bound_hi,
            "measured_no": diag.measured_no,
            "declared_p": diag.declared_p,
            "declared_q": diag.declared_q,
            "q_consistent": diag.q_consistent,
            "pq_sum": diag.pq_sum,
            "s_secure": diag.s_secure,
        }
    return result, 0 if s_equal and sprime_equal else 1


def cmd_derandomize(args: argparse.Namespace) -> tuple[dict, int]:
    language = deciders.parse_language(args.language)
    aug = derand.augment(language)
    x = tuple(_symbol(tok) for tok in args.input.split(","))
    decider = derand.extendability_decider(aug, args.radius, oracle=args.oracle)
    inst = _make_input_path(x)
    outcome = engine.run(decider, inst, engine.TrialSeed(args.seed))
    result = {
        "input": list(x),
        "radius": args.radius,
        "oracle": args.oracle,
        "verdicts": list(outcome.outputs),
        "accepted": outcome.accepted,
        "member": aug.member_x(x),
    }
    return result, 0 if outcome.accepted else 1


def _make_input_path(x: tuple[str, ...]) -> Instance:
    from .core import make_path

    return make_path(len(x), x)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="localdec",
        description="Randomized distributed decision on paths and cycles, reproducibly.",
    )
    parser.add_argument("--config", help="JSON file whose entries override parsed flags")
    parser.add_argument("--output", help="write the JSON report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("amos-verify", help="measure (p,q) of the at-most-k decider and classify it")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--max-n", type=int, default=8, dest="max_n")
    p.add_argument("--trials", type=int, default=None, help="Monte Carlo trials; default exact")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.set_defaults(func=cmd_amos_verify)

    p = sub.add_parser("separation", help="emit a legal/illegal pair and its ratio bounds")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--k", type=int, default=None)
    group.add_argument("--rational", default=None, metavar="R,R'", help="real interval [r, r')")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.set_defaults(func=cmd_separation)

    p = sub.add_parser("secure-scan", help="scan candidate windows of an instance for secureness")
    p.add_argument("--instance", required=True, help="instance JSON file, or - for stdin")
    p.add_argument("--decider", required=True, help='decider spec, e.g. "amos:k=2,p=0.64"')
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--lambda", type=int, default=None, dest="lam")
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--trials", type=int, default=None, help="Monte Carlo trials; default exact")
    p.add_argument("--region", default=None, metavar="LO:HI")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--csv", default=None, help="also write the reports as CSV rows")
    p.set_defaults(func=cmd_secure_scan)

    p = sub.add_parser("tree-cycle", help="build the path/cycle setup and check view transfer")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--decider", default=None, help="optionally run the union-bound check")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.set_defaults(func=cmd_tree_cycle)

    p = sub.add_parser("derandomize", help="run the extendability decider on one input")
    p.add_argument("--language", required=True, help='base language spec, e.g. "amos:k=1"')
    p.add_argument("--input", required=True, help="comma-separated symbols; * is the marker")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--oracle", choices=("analytic", "brute"), default="analytic")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.set_defaults(func=cmd_derandomize)

    return parser


def _apply_config(args: argparse.Namespace) -> None:
    if not args.config:
        return
    with open(args.config, "r", encoding="utf-8") as fh:
        overrides = json.load(fh)
    for key, value in overrides.items():
        setattr(args, key.replace("-", "_"), value)


def _parameters(args: argparse.Namespace) -> dict:
    skip = {"func", "command", "config", "output"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        result, code = args.func(args)
    except (ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    envelope = {"command": args.command, "parameters": _parameters(args), "result": result}
    text = json.dumps(envelope, indent=2, ensure_ascii=False)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
