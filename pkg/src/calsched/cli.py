"""Command line entry point: ``calsched <subcommand> ...``.

Exit codes: 0 success, 1 invalid input or failed validation / bound check,
2 controller contract violation, 3 oracle node budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from .adversary import EAdversary, LambdaAdversary, RandomParams, random_instance
from .algo_integrated import CONTROLLERS, make_controller
from .core import ConfigurationError, ContractViolation, validate_instance, validate_schedule
from .io import FormatError, read_instance, read_schedule, write_instance, write_schedule, write_trace
from .oracle import EXHAUSTIVE, REDUCED, BudgetExceeded, OracleConfig, min_calibrations
from .report import ratio_report, seed_of, write_csv
from .simulator import run, run_reactive
from .validation import parse_alpha

EXIT_OK, EXIT_INVALID, EXIT_CONTRACT, EXIT_BUDGET = 0, 1, 2, 3

BUDGET_HELP = "oracle node budget (default: $CALSCHED_NODE_BUDGET or 10^7)"

log = logging.getLogger("calsched")


def _oracle_config(budget, mode=EXHAUSTIVE, witness=True) -> OracleConfig:
    if budget is None:
        return OracleConfig(mode, produce_witness=witness)
    return OracleConfig(mode, budget, witness)


def _alpha(text):
    try:
        return parse_alpha(text)
    except ConfigurationError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def cmd_gen(args) -> int:
    params = RandomParams(n=args.n, T=args.T, lam=args.lam, horizon=args.horizon,
                          short_fraction=float(Fraction(args.short_fraction)), alpha=args.alpha)
    if args.count == 1 and args.output:
        write_instance(random_instance(args.seed, params), args.output)
        return EXIT_OK
    out = Path(args.out_dir or ".")
    out.mkdir(parents=True, exist_ok=True)
    for seed in range(args.seed, args.seed + args.count):
        write_instance(random_instance(seed, params), out / f"seed_{seed:05d}.json")
    return EXIT_OK


def cmd_validate(args) -> int:
    inst = read_instance(args.instance)
    report = validate_instance(inst)
    if report.ok and args.schedule:
        report = validate_schedule(inst, read_schedule(args.schedule))
    print(report)
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_run(args) -> int:
    inst = read_instance(args.instance)
    trace = run(inst, make_controller(args.alg, args.alpha, inst.lam, inst.T))
    report = validate_schedule(inst, trace.schedule)
    if args.schedule_out:
        write_schedule(trace.schedule, args.schedule_out)
    if args.trace_out:
        write_trace(trace, args.trace_out)
    print(trace.calibration_count)
    if not report.ok:
        print(report, file=sys.stderr)
        return EXIT_CONTRACT
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = read_instance(args.instance)
    report = validate_instance(inst)
    if not report.ok:
        print(report, file=sys.stderr)
        return EXIT_INVALID
    cfg = _oracle_config(args.budget, REDUCED if args.reduced else EXHAUSTIVE)
    res = min_calibrations(inst, cfg)
    print(res.count)
    print("starts: " + " ".join(map(str, res.starts)))
    if args.schedule_out:
        write_schedule(res.schedule, args.schedule_out)
    return EXIT_OK


def cmd_adversary(args) -> int:
    alpha = args.alpha if args.alpha is not None else (
        Fraction(1, args.T) if args.alg == "long" else Fraction(1, 3))
    ctrl = make_controller(args.alg, alpha, args.lam, args.T)
    if args.kind == "lambda":
        adv = LambdaAdversary(args.lam, args.T)
    else:
        adv = EAdversary(args.T, args.lam, args.eps)
    trace, inst = run_reactive(adv, ctrl, adv.horizon)
    doc = {"kind": args.kind, "algorithm": args.alg, "alpha": str(alpha), "lambda": args.lam, "T": args.T,
           "jobs": len(inst.jobs), "alg_cost": trace.calibration_count}
    if args.kind == "lambda":
        opt = min_calibrations(inst, _oracle_config(args.budget, witness=False)).count
        doc["phase"] = adv.phase
    else:
        opt = adv.offline(inst.jobs)
        doc["eps"] = str(adv.eps)
        doc["trajectory"] = [{"t": t, "online": on, "offline": off, "ratio": str(r), "ratio_float": float(r)}
                             for t, on, off, r in adv.trajectory]
    doc["opt"] = opt
    doc["ratio"] = str(Fraction(trace.calibration_count, opt)) if opt else None
    if args.trace_out:
        write_trace(trace, args.trace_out)
    text = json.dumps(doc, indent=2) + "\n"
    if args.report_out:
        Path(args.report_out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_ratio(args) -> int:
    files = sorted(Path(args.corpus).glob("*.json"))
    if not files:
        raise ConfigurationError(f"no instance files in {args.corpus}")
    instances = [(seed_of(f), read_instance(f)) for f in files]
    rows = ratio_report(instances, args.algorithms, args.alpha, args.budget, args.workers)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    failed = [r for r in rows if r.passed is False]
    for r in failed:
        print(f"bound violated: seed={r.seed} algorithm={r.algorithm} alg={r.alg_cost} opt={r.opt} "
              f"bound={r.bound}", file=sys.stderr)
    return EXIT_INVALID if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="calsched", description="Online calibration scheduling toolkit")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write seeded random instances")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--n", type=int, default=10)
    g.add_argument("--T", type=int, default=6)
    g.add_argument("--lam", type=int, default=1)
    g.add_argument("--horizon", type=int, default=12)
    g.add_argument("--short-fraction", default="1/2", help="probability of a short job, e.g. 1/2 or 0.5")
    g.add_argument("--alpha", type=_alpha, default=Fraction(1, 3))
    g.add_argument("-o", "--output")
    g.add_argument("--out-dir")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("validate", help="check an instance and optionally a schedule for it")
    v.add_argument("instance")
    v.add_argument("--schedule")
    v.set_defaults(func=cmd_validate)

    r = sub.add_parser("run", help="run an online controller on an instance")
    r.add_argument("instance")
    r.add_argument("--alg", choices=sorted(CONTROLLERS), default="integrated")
    r.add_argument("--alpha", type=_alpha, default=Fraction(1, 3))
    r.add_argument("--schedule-out")
    r.add_argument("--trace-out")
    r.set_defaults(func=cmd_run)

    o = sub.add_parser("oracle", help="exact offline optimum")
    o.add_argument("instance")
    o.add_argument("--budget", type=int, default=None, help=BUDGET_HELP)
    o.add_argument("--reduced", action="store_true", help="search the reduced candidate start set")
    o.add_argument("--schedule-out")
    o.set_defaults(func=cmd_oracle)

    a = sub.add_parser("adversary", help="play an adversary against a controller")
    a.add_argument("--kind", choices=["lambda", "e"], required=True)
    a.add_argument("--alg", choices=sorted(CONTROLLERS), default="integrated")
    a.add_argument("--alpha", type=_alpha, default=None, help="default 1/T for long, 1/3 otherwise")
    a.add_argument("--lam", type=int, default=2)
    a.add_argument("--T", type=int, default=6)
    a.add_argument("--eps", type=Fraction, default=Fraction(1, 10))
    a.add_argument("--budget", type=int, default=None, help=BUDGET_HELP)
    a.add_argument("--trace-out")
    a.add_argument("--report-out")
    a.set_defaults(func=cmd_adversary)

    c = sub.add_parser("ratio", help="competitive-ratio CSV over a corpus directory")
    c.add_argument("corpus")
    c.add_argument("--algorithms", nargs="+", choices=sorted(CONTROLLERS), default=["integrated"])
    c.add_argument("--alpha", type=_alpha, default=Fraction(1, 3))
    c.add_argument("--budget", type=int, default=None, help=BUDGET_HELP)
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_ratio)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (FormatError, ConfigurationError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ContractViolation as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
