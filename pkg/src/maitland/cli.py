"""Command-line front end: eval, verify, sweep, report.

Exit codes: 0 success, 1 validation error, 2 at least one Fail verdict,
3 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from ._summation import Status
from .errors import DomainError
from .quad import QuadResult, edward_integral, shifted_edward
from .series import DEFAULT_TOL, REDUCTION_ARGS, MasterParams, Reduction, master_series, named_reduction
from .verify import (
    IdentityId,
    SweepConfig,
    Variant,
    Verdict,
    load_json,
    sweep,
    to_csv,
    verify_identity,
)

EXIT_OK, EXIT_INVALID, EXIT_FAIL, EXIT_NUMERIC = 0, 1, 2, 3

FUNCTIONS: dict[str, Reduction | str] = {
    "ml1p": Reduction.ML_1P,
    "ml2p": Reduction.ML_2P,
    "prabhakar": Reduction.PRABHAKAR,
    "shukla_prajapati": Reduction.SHUKLA_PRAJAPATI,
    "salim": Reduction.SALIM,
    "salim_faraj": Reduction.SALIM_FARAJ,
    "bm_basic": Reduction.BM_BASIC,
    "bm_q": Reduction.BM_Q,
    "bm_ext": Reduction.BM_EXT,
    "master": "master",
    "edward": "edward",
    "shifted_edward": "shifted_edward",
}

FN_HELP = """\
ml1p             E_alpha(z), Eq. (1.4)                       --alpha
ml2p             E_{alpha,beta}(z), Eq. (1.5)                --alpha --beta
prabhakar        E^gamma_{alpha,beta}(z), Eq. (1.6)          --alpha --beta --gamma
shukla_prajapati E^{gamma,q}_{alpha,beta}(z), Eq. (1.7)      --alpha --beta --gamma --q
salim            E^{gamma,delta}_{alpha,beta}(z), Eq. (1.8)  --alpha --beta --gamma --delta
salim_faraj      E^{gamma,delta,q}_{alpha,beta,p}, Eq. (1.9) --alpha --beta --gamma --delta --p --q
bm_basic         J^mu_nu(z), Eq. (1.1)                       --mu --nu
bm_q             J^{mu,gamma}_{nu,q}(z), Eq. (1.2)           --mu --nu --gamma --q
bm_ext           J^{mu,q,p}_{nu,gamma,delta}(z), Eq. (1.3)   --mu --nu --gamma --delta --p --q
master           sum (gamma)_{qn} z^n / (Gamma(eta n + beta) (delta)_{pn})
                 --eta --beta [--gamma --delta --p --q]
edward           double integral of Eq. (1.15)               --lambda --mu
shifted_edward   n-th term kernel integral                   --lambda --mu --n
"""

PARAM_FLAGS = ("alpha", "beta", "gamma", "delta", "p", "q", "mu", "nu", "eta", "lambda", "a")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _emit(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="maitland", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval", help="evaluate one function", epilog=FN_HELP,
                        formatter_class=argparse.RawDescriptionHelpFormatter)
    ev.add_argument("--fn", required=True, choices=sorted(FUNCTIONS))
    for name in PARAM_FLAGS:
        ev.add_argument(f"--{name}", type=float)
    ev.add_argument("--n", type=int)
    ev.add_argument("--z", type=float)
    ev.add_argument("--tol", type=float)

    ve = sub.add_parser("verify", help="check one identity at one parameter point")
    ve.add_argument("--id", required=True, type=str.upper, choices=[i.value for i in IdentityId])
    for name in PARAM_FLAGS:
        if name not in ("alpha", "beta"):
            ve.add_argument(f"--{name}", type=float)
    ve.add_argument("--n", type=int)
    ve.add_argument("--tol", type=float)
    ve.add_argument("--variant", default="canonical", choices=["canonical", "asprinted"])

    sw = sub.add_parser("sweep", help="run a parameter sweep from a JSON config")
    sw.add_argument("--config", required=True, type=Path)
    sw.add_argument("--out", type=Path)

    rp = sub.add_parser("report", help="re-emit a sweep report as CSV or JSON")
    rp.add_argument("--in", dest="infile", required=True, type=Path)
    rp.add_argument("--format", choices=["csv", "json"], default="csv")
    return parser


def _given(args: argparse.Namespace, names: tuple[str, ...]) -> dict[str, float]:
    return {k: getattr(args, k) for k in names if getattr(args, k, None) is not None}


def _cmd_eval(args: argparse.Namespace) -> int:
    target = FUNCTIONS[args.fn]
    if target in ("edward", "shifted_edward"):
        if args.__dict__["lambda"] is None or args.mu is None:
            raise DomainError(f"{args.fn} needs --lambda and --mu")
        tol = 1e-10 if args.tol is None else args.tol
        if target == "edward":
            result: QuadResult = edward_integral(args.__dict__["lambda"], args.mu, tol)
        else:
            if args.n is None:
                raise DomainError("shifted_edward needs --n")
            result = shifted_edward(args.__dict__["lambda"], args.mu, args.n, tol)
        _emit(result.to_dict())
        return EXIT_OK if result.converged else EXIT_NUMERIC

    if args.z is None:
        raise DomainError(f"{args.fn} needs --z")
    tol = DEFAULT_TOL if args.tol is None else args.tol
    if target == "master":
        if args.eta is None or args.beta is None:
            raise DomainError("master needs --eta and --beta")
        mp = MasterParams(**_given(args, ("eta", "beta", "gamma", "delta", "p", "q")))
        value = master_series(mp, args.z, tol)
    else:
        expected = REDUCTION_ARGS[target][0]
        stray = [k for k in PARAM_FLAGS if k not in expected and getattr(args, k) is not None]
        if stray:
            raise DomainError(f"{args.fn} does not take --{', --'.join(stray)}")
        value = named_reduction(target, args.z, tol, **_given(args, expected))
    _emit(value.to_dict())
    if value.status is Status.OUTSIDE_DOMAIN:
        print(f"z = {args.z} lies outside the convergence domain", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK if value.status is Status.CONVERGED else EXIT_NUMERIC


def _exit_for(verdicts: list, skip_kinds: list) -> int:
    if Verdict.FAIL in verdicts:
        return EXIT_FAIL
    if "nonconvergence" in skip_kinds:
        return EXIT_NUMERIC
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    params = _given(args, ("a", "eta", "nu", "gamma", "delta", "p", "q", "mu"))
    if args.__dict__["lambda"] is not None:
        params["lam"] = args.__dict__["lambda"]
    if args.n is not None:
        params["n"] = args.n
    report = verify_identity(args.id, params, args.tol, Variant.parse(args.variant))
    _emit(report.to_dict())
    if report.skip_kind == "precondition":
        print(f"skipped: {report.reason}", file=sys.stderr)
        return EXIT_INVALID
    return _exit_for([report.verdict], [report.skip_kind])


def _cmd_sweep(args: argparse.Namespace) -> int:
    if not args.config.is_file():
        raise DomainError(f"config file not found: {args.config}")
    try:
        raw = json.loads(args.config.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DomainError(f"config file {args.config} is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise DomainError("config must be a JSON object")
    if args.out is not None:
        raw["out"] = str(args.out)
    config = SweepConfig.from_dict(raw)
    result = sweep(config)
    _emit(result.summary)
    return _exit_for([r.verdict for r in result.reports], [r.skip_kind for r in result.reports])


def _cmd_report(args: argparse.Namespace) -> int:
    if not args.infile.is_file():
        raise DomainError(f"report file not found: {args.infile}")
    result = load_json(args.infile)
    if args.format == "csv":
        sys.stdout.write(to_csv(result.reports))
    else:
        print(json.dumps(result.to_dict(), indent=1))
    return EXIT_OK


COMMANDS = {"eval": _cmd_eval, "verify": _cmd_verify, "sweep": _cmd_sweep, "report": _cmd_report}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        for name in ("tol", "z", *PARAM_FLAGS):
            value = getattr(args, name, None)
            if value is not None and not math.isfinite(value):
                raise DomainError(f"--{name} must be finite")
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID
    except (DomainError, json.JSONDecodeError, KeyError) as exc:
        print(f"maitland: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ArithmeticError as exc:
        print(f"maitland: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main() -> None:
    sys.exit(run())
