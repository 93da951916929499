"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 computation undefined for the
inputs (e.g. total conflict under Dempster's rule). Data goes to stdout or
``--output``; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .combine import CONJUNCTIVE_FAMILY, DELTA_POLICIES, RULES, RuleConfig, combine
from .conflict import METHODS, MEASURES, auto_conflict, conflict_report, global_conflict, jousselme_distance
from .decide import FUNCTIONALS, SCHEMES, DecisionConfig, decide
from .frame import Frame
from .mass import MASS_TOL
from .reliability import DEFAULT_LAMBDA, discount_by_conflict
from .serialize import dumps, load_mass, read_json, write_json
from .simulate import GENERATORS, SimulationSpec, simulate

EXIT_OK, EXIT_INPUT, EXIT_COMPUTE = 0, 2, 3


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--frame", default=default(None), help="comma-separated labels inputs must use")
    parser.add_argument("--seed", type=int, default=default(0), help="random seed (simulate)")
    parser.add_argument("--output", "-o", default=default(None), help="output file (directory for discount)")
    parser.add_argument(
        "--tolerance", type=float, default=default(MASS_TOL), help="mass normalization tolerance on input"
    )


def _parse_frame(text: Optional[str]) -> Optional[Frame]:
    if text is None:
        return None
    return Frame(lab.strip() for lab in text.split(","))


def _load_inputs(args, paths: Sequence[str]):
    ms = [load_mass(p, args.tolerance) for p in paths]
    # inputs accepted only under a looser --tolerance are rescaled so rule outputs stay normalized
    ms = [m if abs(math.fsum(m.focals.values()) - 1.0) <= MASS_TOL else m.normalized() for m in ms]
    frame = _parse_frame(args.frame)
    if frame is not None:
        for p, m in zip(paths, ms):
            if m.frame != frame:
                raise ValueError(f"{p}: frame {list(m.frame.labels)} differs from --frame {list(frame.labels)}")
    return ms


def _parse_sets(text: str) -> list[tuple]:
    """``"w1;w1,w2"`` -> [("w1",), ("w1", "w2")]."""
    return [tuple(s.strip() for s in part.split(",")) for part in text.split(";") if part.strip()]


# -- commands -------------------------------------------------------------------


def cmd_combine(args) -> int:
    ms = _load_inputs(args, args.inputs)
    cfg = RuleConfig(args.rule, args.delta_policy, args.delta2)
    if cfg.rule in CONJUNCTIVE_FAMILY and len(ms) >= 2:
        print(f"kappa = {global_conflict(ms)!r}", file=sys.stderr)
    result = combine(ms, cfg)
    write_json(result.to_json(), args.output)
    return EXIT_OK


def cmd_conflict(args) -> int:
    ms = _load_inputs(args, args.inputs)
    report = conflict_report(ms, args.measure, args.method, args.combiner)
    write_json(report.to_json(), args.output)
    return EXIT_OK


def cmd_discount(args) -> int:
    ms = _load_inputs(args, args.inputs)
    out, profile = discount_by_conflict(ms, args.lam, args.measure, args.method, args.combiner)
    if args.output is None:
        write_json({"profile": profile.to_json(), "masses": [m.to_json() for m in out]})
        return EXIT_OK
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)
    for path, m in zip(args.inputs, out):
        write_json(m.to_json(), outdir / f"{Path(path).stem}.discounted.json")
    write_json(profile.to_json(), outdir / "profile.json")
    return EXIT_OK


def _decision_config(args) -> DecisionConfig:
    obj = read_json(args.config) if args.config else {}
    if args.scheme is not None:
        obj["scheme"] = args.scheme
    if args.fd is not None:
        obj["fd"] = args.fd
    if args.rho is not None:
        obj["rho"] = args.rho
    if args.candidates is not None:
        obj["candidates"] = [list(c) for c in _parse_sets(args.candidates)]
    return DecisionConfig.from_json(obj)


def cmd_decide(args) -> int:
    (m,) = _load_inputs(args, [args.input])
    decision = decide(m, _decision_config(args))
    write_json(decision.to_json(), args.output)
    return EXIT_OK


def cmd_simulate(args) -> int:
    frame = _parse_frame(args.frame)
    n = frame.n if frame is not None else args.n
    spec = SimulationSpec(
        n=n,
        sources=args.sources,
        focal=args.focal,
        trials=args.trials,
        rules=tuple(r.strip() for r in args.rules.split(",")) if args.rules else RULES,
        decision=_decision_config(args),
        seed=args.seed,
        generator=args.generator,
        identical_sources=args.identical_sources,
        autoconflict_order=args.order,
        timing=args.timing,
        labels=frame.labels if frame is not None else None,
    )
    result = simulate(spec, jobs=args.jobs)
    print(f"mean kappa = {result.mean_kappa!r}, mean auto-conflict = {result.mean_autoconflict!r}", file=sys.stderr)
    text = result.to_csv()
    if args.output is None:
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
    if args.summary:
        Path(args.summary).write_text(dumps(result.summary()), encoding="utf-8")
    return EXIT_OK


def cmd_autoconflict(args) -> int:
    (m,) = _load_inputs(args, [args.input])
    orders = list(range(2, args.order + 1))
    write_json({"orders": orders, "values": [auto_conflict(m, s) for s in orders]}, args.output)
    return EXIT_OK


def cmd_distance(args) -> int:
    m1, m2 = _load_inputs(args, [args.first, args.second])
    write_json({"distance": jousselme_distance(m1, m2)}, args.output)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="belfuse", description="Belief-function fusion and conflict analysis")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        _global_options(p, suppress=True)
        p.set_defaults(func=func)
        return p

    def conflict_opts(p):
        p.add_argument("--measure", choices=MEASURES, default="inclusion-distance")
        p.add_argument("--method", choices=METHODS, default="avg")
        p.add_argument("--combiner", choices=RULES, default="mean", help="rule building the artificial source")

    def decision_opts(p):
        p.add_argument("--config", help="DecisionConfig JSON file")
        p.add_argument("--scheme", choices=SCHEMES)
        p.add_argument("--fd", choices=sorted(FUNCTIONALS))
        p.add_argument("--rho", type=float)
        p.add_argument("--candidates", help='candidate sets, e.g. "w1;w2;w1,w2"')

    p = add("combine", cmd_combine, "combine mass functions with one rule")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--rule", choices=RULES, default="conjunctive")
    p.add_argument("--delta-policy", choices=sorted(DELTA_POLICIES), default="constant")
    p.add_argument("--delta2", type=float, default=1.0)

    p = add("conflict", cmd_conflict, "pairwise and per-source conflict report")
    p.add_argument("inputs", nargs="+")
    conflict_opts(p)

    p = add("discount", cmd_discount, "discount sources by conflict-derived reliability")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--lambda", dest="lam", type=float, default=DEFAULT_LAMBDA)
    conflict_opts(p)

    p = add("decide", cmd_decide, "decide on one mass function")
    p.add_argument("input")
    decision_opts(p)

    p = add("simulate", cmd_simulate, "Monte Carlo comparison of rules by decision")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--sources", type=int, default=2)
    p.add_argument("--focal", type=int, default=3)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--rules", help="comma-separated rule ids (default: all)")
    p.add_argument("--generator", choices=GENERATORS, default="dirichlet")
    p.add_argument("--identical-sources", action="store_true")
    p.add_argument("--order", type=int, help="auto-conflict order (default: number of sources)")
    p.add_argument("--timing", action="store_true", help="fill the runtime_us column (not reproducible)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--summary", help="write agreement matrix and means as JSON")
    decision_opts(p)

    p = add("autoconflict", cmd_autoconflict, "auto-conflict a_2 .. a_s of one source")
    p.add_argument("input")
    p.add_argument("--order", type=int, default=5)

    p = add("distance", cmd_distance, "Jousselme distance between two mass functions")
    p.add_argument("first")
    p.add_argument("second")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ArithmeticError as exc:
        print(f"belfuse: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except (ValueError, KeyError, IndexError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"belfuse: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
