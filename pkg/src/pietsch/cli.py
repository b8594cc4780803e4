"""Command-line front end.

Every subcommand reads one JSON document (a file path or ``-`` for stdin)
and writes one JSON document to stdout.  Exit codes: 0 success, 1 domain or
input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from ._rational import fmt_any, q
from .exceptions import PietschError
from . import deltanorm, dyadic, functionals, majorization, opmodel, seqcore, stepfn, verify
from .seqcore import DyadicSequence
from .stepfn import StepFunction
from .transfer import phi_av, phi_sample, pietsch_D

EXIT_OK, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2


class InputError(Exception):
    def __init__(self, message: str, **info):
        super().__init__(message)
        self.info = info


def _load(source: str):
    try:
        text = sys.stdin.read() if source == "-" else open(source, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc.msg}", line=exc.lineno, column=exc.colno,
                         position=exc.pos)


def _sequence(data) -> DyadicSequence:
    if isinstance(data, list):
        return seqcore.from_list(0, data)
    return DyadicSequence.from_json(data)


def _function(data) -> StepFunction:
    return StepFunction.from_json(data)


def _object(data):
    """Sequence, step function or operator, told apart by their keys."""
    if isinstance(data, list) or "lo" in data:
        return _sequence(data)
    if "kind" in data:
        return opmodel.operator_from_json(data)
    if "breakpoints" in data:
        return _function(data)
    raise InputError("input is not a sequence, step function or operator")


def _norm(name: str) -> deltanorm.DeltaNorm:
    parts = name.split("+")
    if len(parts) > 1:
        return deltanorm.SumNorm(*(_norm(p) for p in parts))
    key = name.strip().lower()
    if key in ("linf", "l-inf", "inf"):
        return deltanorm.Linf
    if key.startswith("l"):
        return deltanorm.Lp(q(key[1:]))
    raise InputError(f"unknown norm {name!r}; use L<p>, Linf or a sum like L1+Linf")


# -- subcommands -----------------------------------------------------------


def cmd_rearrange(args):
    return stepfn.decreasing_rearrangement(_function(_load(args.input))).to_json()


def cmd_dmap(args):
    return pietsch_D(_sequence(_load(args.input))).to_json()


def cmd_phi(args):
    data = _load(args.input)
    obj = _object(data)
    if isinstance(obj, StepFunction):
        return phi_sample(obj).to_json()
    return opmodel.phi_op(obj).to_json()


def cmd_phiav(args):
    obj = _object(_load(args.input))
    f = obj if isinstance(obj, StepFunction) else opmodel.singular_value_function(obj)
    return phi_av(f).to_json()


def cmd_omap(args):
    return seqcore.ordering_numbers(_sequence(_load(args.input))).to_json()


def cmd_shift(args):
    return seqcore.shift(_sequence(_load(args.input)), args.k).to_json()


def cmd_mu(args):
    obj = _object(_load(args.input))
    if isinstance(obj, StepFunction):
        return stepfn.decreasing_rearrangement(obj).to_json()
    return opmodel.singular_value_function(obj).to_json()


def cmd_trace(args):
    X = opmodel.operator_from_json(_load(args.input))
    return {"trace": fmt_any(opmodel.trace(X)) if not isinstance(opmodel.trace(X), complex)
            else {"re": fmt_any(opmodel.trace(X).real), "im": fmt_any(opmodel.trace(X).imag)}}


def cmd_majorize(args):
    data = _load(args.input)
    Y, X = _object(data["Y"]), _object(data["X"])
    lam = int(data.get("lambda", args.lam))
    return majorization.uniformly_majorized(Y, X, lam, args.tolerance or 0).to_json()


def cmd_dyadic_decompose(args):
    X = opmodel.operator_from_json(_load(args.input))
    return dyadic.decompose(X, args.offset).to_json()


def cmd_dyadic_validate(args):
    data = _load(args.input)
    if "operator" in data:
        rep = dyadic.rep_from_json(data)
    else:
        rep = dyadic.decompose(opmodel.operator_from_json(data))
    probe = None
    if "probe" in data:
        p = data["probe"]
        probe = (_sequence(p["g"]), q(p.get("C", 1)), int(p.get("k", 0)))
    report = dyadic.validate(rep, probe)
    return report, EXIT_OK if report["valid"] else EXIT_VERIFY


def cmd_trace_eval(args):
    theta = functionals.by_name(args.theta)
    obj = _object(_load(args.input))
    if isinstance(obj, DyadicSequence):
        return functionals.theta_eval(theta, obj).to_json()
    if isinstance(obj, StepFunction):
        obj = opmodel.CommutativeOp(obj)
    return functionals.trace_eval(theta, obj).to_json()


def cmd_classify(args):
    return functionals.classify(functionals.by_name(args.theta), args.seed, args.trials or 20)


def cmd_norm(args):
    N = _norm(args.norm)
    obj = _object(_load(args.input))
    out = {"norm": N.name, "value": fmt_any(deltanorm.norm_eval(N, obj))}
    if not isinstance(obj, DyadicSequence):
        out["stable"] = fmt_any(deltanorm.stable_norm(N, obj))
    return out


def cmd_norm_audit(args):
    report = deltanorm.constants_report(_norm(args.norm), args.trials or 100, args.seed)
    return report, EXIT_OK if report["holds"] else EXIT_VERIFY


def cmd_verify(args):
    try:
        report = verify.run(args.suite, args.trials, args.seed, args.tolerance, args.depth)
    except KeyError:
        raise InputError(f"unknown suite {args.suite!r}",
                         suites=sorted(verify.SUITES) + ["all"])
    return report, EXIT_OK if report["status"] == "pass" else EXIT_VERIFY


COMMANDS = {
    "rearrange": (cmd_rearrange, "decreasing rearrangement of a step function"),
    "dmap": (cmd_dmap, "spread a sequence over dyadic cells"),
    "phi": (cmd_phi, "sample mu at the points 2^n"),
    "phiav": (cmd_phiav, "average mu over the dyadic cells"),
    "omap": (cmd_omap, "ordering numbers sup_{k>=n} |x_k|"),
    "shift": (cmd_shift, "right shift S_+^k"),
    "mu": (cmd_mu, "singular value function"),
    "trace": (cmd_trace, "tau(X)"),
    "majorize": (cmd_majorize, "uniform majorization of {'Y', 'X', 'lambda'}"),
    "dyadic-decompose": (cmd_dyadic_decompose, "canonical dyadic representation"),
    "dyadic-validate": (cmd_dyadic_validate, "recheck a dyadic representation"),
    "trace-eval": (cmd_trace_eval, "evaluate a functional or its trace"),
    "classify": (cmd_classify, "positivity, normalisation and support of a functional"),
    "norm": (cmd_norm, "quasi-norm of a sequence, function or operator"),
    "norm-audit": (cmd_norm_audit, "randomized audit of quasi-norm constants"),
    "verify": (cmd_verify, "run a verification suite"),
}

NO_INPUT = {"classify", "norm-audit", "verify"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=None)
    common.add_argument("--tolerance", type=float, default=None)
    common.add_argument("--depth", type=int, default=8,
                        help="window padding for sampled checks")
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(prog="pietsch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, parents=[common])
        if name == "verify":
            p.add_argument("suite", help="suite name or 'all'")
        elif name not in NO_INPUT:
            p.add_argument("input", nargs="?", default="-", help="JSON file or - for stdin")
        if name == "shift":
            p.add_argument("--k", type=int, default=1)
        if name == "majorize":
            p.add_argument("--lambda", dest="lam", type=int, default=1)
        if name == "dyadic-decompose":
            p.add_argument("--offset", type=int, default=0)
        if name in ("trace-eval", "classify"):
            p.add_argument("--theta", default="summation")
        if name in ("norm", "norm-audit"):
            p.add_argument("--norm", default="L1")
    return parser


def _text(obj, indent: int = 0) -> list:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
        return lines
    if isinstance(obj, list):
        lines = []
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(v)}")
        return lines
    return [f"{pad}{json.dumps(obj)}"]


def emit(obj, fmt: str = "json") -> str:
    if fmt == "text":
        return "\n".join(_text(obj))
    return json.dumps(obj, sort_keys=True, indent=2)


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    fn, _ = COMMANDS[args.command]
    try:
        result = fn(args)
        code = EXIT_OK
        if isinstance(result, tuple):
            result, code = result
    except InputError as exc:
        result = {"error": "input", "message": str(exc), **exc.info}
        code = EXIT_DOMAIN
    except (PietschError, KeyError, TypeError, ValueError) as exc:
        result = {"error": type(exc).__name__, "message": str(exc)}
        code = EXIT_DOMAIN
    print(emit(result, args.format), file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
