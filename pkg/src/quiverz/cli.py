"""Command-line surface: partition arithmetic, dimension-vector reports, and
the verification drivers.

Structured output is a single JSON document on stdout; human-readable notes
go to stderr (suppressed by --json).  Exit codes: 0 success, 1 a verification
found a counterexample, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import sys

from quiverz import verify
from quiverz.exactmat import DEFAULT_PRIME, FieldSpec
from quiverz.partitions import (
    Partition,
    add,
    cartan_slack,
    classify,
    dominates,
    dual,
    mu_of,
    n_vector,
    parse_dim_vector,
    render_young,
    theta_image,
    zss_density_obstruction,
)
from quiverz.quiverrep import witness_reducible


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, separators=(",", ":")))


def _note(args, message: str) -> None:
    if not args.json:
        print(message, file=sys.stderr)


def _cmd_part(args) -> int:
    eta = Partition.parse(args.partition)
    if args.op == "dual":
        _emit(dual(eta).to_list())
    elif args.op == "add":
        _emit(add(eta, args.boxes).to_list())
    elif args.op == "dom":
        _emit(dominates(eta, Partition.parse(args.other)))
    elif args.op == "nvec":
        _emit(list(n_vector(eta)))
    elif args.op == "young":
        text = render_young(eta)
        if args.json:
            _emit(text)
        elif text:
            print(text)
    return 0


def _cmd_dimvec(args) -> int:
    d = parse_dim_vector(args.dims)
    if args.op == "classify":
        result = classify(d)
        payload = {"tag": result.tag}
        if result.eta is not None:
            payload["eta"] = result.eta.to_list()
        _emit(payload)
    elif args.op == "mu":
        _emit(mu_of(d).to_list())
    elif args.op == "lambda":
        _emit(theta_image(d).to_list())
    elif args.op == "slack":
        _emit(list(cartan_slack(d)))
    elif args.op == "obstruction":
        _emit(zss_density_obstruction(d))
    elif args.op == "verdict":
        field = FieldSpec(args.p)
        rng = verify.derive_rng(args.seed, "verdict", d)
        report = witness_reducible(d, field, rng)
        _emit(report.to_json_dict())
        _note(args, f"verdict for {list(d)}: {report.verdict}")
    return 0


def _cmd_verify(args) -> int:
    if args.statement == "ab-step":
        report = verify.ab_step_report(args.n, args.a, p=args.p, budget=args.budget)
    elif args.statement == "theta-image":
        report = verify.theta_image_report(
            max_last=args.max_last,
            p=args.p,
            seed=args.seed,
            trials=args.trials,
            jobs=args.jobs,
        )
    elif args.statement == "stability":
        report = verify.stability_report(budget=args.budget)
    elif args.statement == "reducible":
        report = verify.reducible_report(p=args.p, seed=args.seed)
    else:  # all
        suite = verify.suite_report(
            seed=args.seed, jobs=args.jobs, budget=args.budget, p=args.p
        )
        _emit(suite)
        for rep in suite["reports"]:
            _note(args, f"{rep['statement']}: {'PASS' if rep['pass'] else 'FAIL'}")
        return 0 if suite["pass"] else 1
    _emit(report.to_json_dict())
    _note(args, f"{report.statement}: {'PASS' if report.passed else 'FAIL'} (size {report.size})")
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quiverz",
        description="Exact partition and quiver-variety calculations with verification drivers.",
    )
    parser.add_argument("--json", action="store_true", help="machine output only")
    sub = parser.add_subparsers(dest="command", required=True)

    part = sub.add_parser("part", help="partition operations")
    part_sub = part.add_subparsers(dest="op", required=True)
    for name, extra in (
        ("dual", ()),
        ("add", ("boxes",)),
        ("dom", ("other",)),
        ("nvec", ()),
        ("young", ()),
    ):
        sp = part_sub.add_parser(name)
        sp.add_argument("partition", help='comma-separated parts, e.g. "5,3,3,1"')
        for field_name in extra:
            if field_name == "boxes":
                sp.add_argument("boxes", type=int, help="number of boxes to add")
            else:
                sp.add_argument("other", help="second partition")
        sp.set_defaults(func=_cmd_part)

    dimvec = sub.add_parser("dimvec", help="dimension-vector operations")
    dim_sub = dimvec.add_subparsers(dest="op", required=True)
    for name in ("classify", "mu", "lambda", "slack", "obstruction", "verdict"):
        sp = dim_sub.add_parser(name)
        sp.add_argument("dims", help='comma-separated dimensions, e.g. "1,4,5"')
        if name == "verdict":
            sp.add_argument("--p", type=int, default=DEFAULT_PRIME, help="field modulus")
            sp.add_argument("--seed", type=int, default=0, help="master seed")
        sp.set_defaults(func=_cmd_dimvec)

    ver = sub.add_parser("verify", help="verification drivers")
    ver.add_argument(
        "statement",
        choices=["ab-step", "theta-image", "stability", "reducible", "all"],
    )
    ver.add_argument("--n", type=int, default=2, help="source dimension for ab-step")
    ver.add_argument("--a", type=int, default=1, help="dimension increase for ab-step")
    ver.add_argument("--p", type=int, default=None, help="field modulus")
    ver.add_argument("--seed", type=int, default=0, help="master seed")
    ver.add_argument("--trials", type=int, default=3, help="randomized trials per instance")
    ver.add_argument("--budget", type=int, default=verify.DEFAULT_BUDGET, help="enumeration budget")
    ver.add_argument("--jobs", type=int, default=1, help="worker threads")
    ver.add_argument("--max-last", type=int, default=8, help="largest last dimension for theta-image")
    ver.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "p", None) is None and hasattr(args, "p"):
        # Exhaustive statements default to the tiny field, randomized ones to
        # the large one.
        args.p = 2 if getattr(args, "statement", "") in ("ab-step", "stability") else DEFAULT_PRIME
    try:
        return args.func(args)
    except verify.BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
