"""Command-line front end.

Every subcommand writes JSON (or CSV where tabular) to stdout or ``--out``.
Exit status is 0 on success, 1 on a domain error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from pathlib import Path

from . import dichotomy, fluct_bound, hv_models, quantum

_PHASE_TOKEN = re.compile(r"^([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\*?pi(?:/(\d+(?:\.\d*)?))?$")


def parse_phase(token: str) -> float:
    """Parse ``0``, ``1.57``, ``pi``, ``pi/2``, ``3pi/2``, ``-pi/4``, ``2*pi/3``."""
    token = token.strip().lower().replace(" ", "")
    m = _PHASE_TOKEN.match(token)
    if m:
        mult, div = m.groups()
        k = float(mult) if mult not in ("", "+", "-", None) else (-1.0 if mult == "-" else 1.0)
        return k * math.pi / (float(div) if div else 1.0)
    try:
        value = float(token)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse phase {token!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"phase {token!r} is not finite")
    return value


def parse_phases(text: str) -> tuple[float, ...]:
    parts = [p for p in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated phases, got {text!r}")
    return tuple(parse_phase(p) for p in parts)


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path} is not valid JSON: {exc}") from None


def _load_constraints(args) -> list[hv_models.Constraint]:
    if getattr(args, "spec", None):
        constraints = hv_models.constraints_from_dict(_load_json(args.spec))
    else:
        constraints = hv_models.ghz_constraints()
    if getattr(args, "flip_fourth", False):
        if len(constraints) < 4:
            raise ValueError("--flip-fourth needs at least four constraints")
        constraints[3] = constraints[3].flipped()
    if not constraints:
        raise ValueError("empty constraint family")
    return constraints


def _load_model(args) -> hv_models.ContextualModel:
    if args.spec:
        return hv_models.ContextualModel.from_dict(_load_json(args.spec))
    return hv_models.build_singular_contextual_model(hv_models.ghz_constraints())


def _emit(args, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def cmd_predict(args) -> int:
    dist = quantum.outcome_distribution(quantum.ghz_state(), args.phases)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["outcome", "probability"])
        for o in quantum.OUTCOMES:
            w.writerow([quantum.sign_string(o), repr(dist[o])])
        _emit(args, buf.getvalue())
    else:
        payload = dist.to_dict()
        payload["product_expectation"] = dist.product_expectation()
        _emit(args, _dump(payload))
    return 0


def cmd_classify(args) -> int:
    g = dichotomy.GaussianPerturbation.from_dict(_load_json(args.spec))
    if args.method == "kakutani":
        result = dichotomy.kakutani_classify(g)
    else:
        result = dichotomy.classify(g)
    _emit(args, _dump(result.to_dict()))
    return 0


def cmd_nogo(args) -> int:
    report = hv_models.exhaustive_no_go(_load_constraints(args))
    _emit(args, _dump(report.to_dict()))
    return 0


def cmd_bound(args) -> int:
    result = hv_models.lp_min_fluctuation(_load_constraints(args))
    payload = result.to_dict()
    payload["bound"] = 1.0 / 3.0
    payload["bound_check"] = "pass" if result.epsilon_star >= 1.0 / 3.0 - 1e-9 else "fail"
    _emit(args, _dump(payload))
    return 0


def cmd_model_build(args) -> int:
    if not args.singular:
        args.parser.error("only the singular construction is available; pass --singular")
    model = hv_models.build_singular_contextual_model(_load_constraints(args))
    _emit(args, _dump(model.to_dict()))
    return 0


def cmd_model_sample(args) -> int:
    model = _load_model(args)
    try:
        result = hv_models.sample(model, args.setting, args.n, args.seed, workers=args.workers)
    except KeyError as exc:
        raise ValueError(exc.args[0]) from None
    _emit(args, result.to_csv() if args.format == "csv" else _dump(result.to_dict()))
    return 0


def cmd_epsilon_chain(args) -> int:
    model = _load_model(args)
    constraints = hv_models.constraints_from_dict(_load_json(args.constraints)) if args.constraints else hv_models.ghz_constraints()
    audit = fluct_bound.ghz_epsilon_chain(model, constraints)
    _emit(args, _dump(audit.to_dict()))
    return 0


def cmd_discrete_example(args) -> int:
    result = fluct_bound.discrete_perturbation_verdict(args.points, args.delta)
    _emit(args, _dump(result.to_dict()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ghzprob", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, formats=("json",), parent=sub):
        p = parent.add_parser(name, help=help_)
        p.set_defaults(func=func, parser=p)
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out", help="write output here instead of stdout")
        return p

    p = add("predict", cmd_predict, "quantum outcome law at three phases", ("json", "csv"))
    p.add_argument("--phases", type=parse_phases, required=True, help="e.g. pi/2,0,0 or 1.5707963,0,0")

    p = add("classify", cmd_classify, "singular/equivalent verdict for a Gaussian perturbation")
    p.add_argument("--spec", required=True, help='JSON {"b": {"c":..,"p":..}, "da": {...}, "db": {...}}')
    p.add_argument("--method", choices=("gaussian", "kakutani"), default="gaussian")

    p = add("nogo", cmd_nogo, "exhaustive search over deterministic assignments")
    p.add_argument("--spec", help='constraint family JSON {"constraints": [{"settings": [..], "sign": 1}, ..]}')
    p.add_argument("--flip-fourth", action="store_true", help="flip the sign of the fourth constraint")

    p = add("bound", cmd_bound, "LP minimum of the worst pairwise TV distance")
    p.add_argument("--spec", help="constraint family JSON (default: GHZ)")

    model = sub.add_parser("model", help="build or sample contextual models")
    msub = model.add_subparsers(dest="model_command", required=True)
    p = add("build", cmd_model_build, "write a contextual model as JSON", parent=msub)
    p.add_argument("--singular", action="store_true", help="mutually singular construction")
    p.add_argument("--spec", help="constraint family JSON (default: GHZ)")

    p = add("sample", cmd_model_sample, "Monte Carlo counts at one setting", ("csv", "json"), parent=msub)
    p.add_argument("--spec", help="model JSON (default: singular GHZ model)")
    p.add_argument("--setting", type=parse_phases, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)

    p = add("epsilon-chain", cmd_epsilon_chain, "audit the fluctuation inequality chain on a model")
    p.add_argument("--spec", help="model JSON (default: singular GHZ model)")
    p.add_argument("--constraints", help="constraint family JSON (default: GHZ)")

    p = add("discrete-example", cmd_discrete_example, "rho = N delta for two atomwise-perturbed laws")
    p.add_argument("--points", "-N", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
