"""Command-line entry point ``ucfourier``.

Exit codes: 0 success, 1 domain or parse error (including bad arguments and
unwritable output), 2 internal tolerance violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from typing import Optional, Sequence

from .errors import DomainError, ToleranceViolation, UCFourierError
from .experiments import EXPERIMENTS, RunConfig, run_experiment
from .funcspec import parse_float_list, parse_function, parse_n_list
from .multiplier import default_witnesses, estimate_multiplier
from .norms import NORM_FIELDS, WeightSequence, norm_report

DEFAULT_N_LISTS = {
    "salem-lemma2": "2,4,...,4096",
    "gn-bounds": "2,4,...,512",
    "mu-en": "4,8,...,1024",
    "asym": "2,4,...,256",
    "weight-threshold": "4,8,...,1024",
    "sobolev": "2,4,...,4096",
    "convergence": "1",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise DomainError(message)


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--out", default=None, help="output path (default stdout)")

    p = _Parser(prog="ucfourier", description="Norms, multipliers and experiments "
                "for uniformly convergent Fourier series of trigonometric polynomials.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    n = sub.add_parser("norms", parents=[common], help="norm report of one function")
    n.add_argument("function")
    n.add_argument("--gamma", default=None, help="weight: const:c, logpow:alpha, table:v0,v1,...")
    n.add_argument("--fields", default=None, help="comma-separated subset of norm fields")

    m = sub.add_parser("multiplier", parents=[common], help="multiplier norm bounds")
    m.add_argument("function")
    m.add_argument("--n-list", default="2,4,...,64", help="salem witnesses g_n")
    m.add_argument("--seed", type=int, default=0)

    e = sub.add_parser("experiment", parents=[common], help="run a named experiment")
    e.add_argument("id", choices=sorted(EXPERIMENTS))
    e.add_argument("--n-list", default=None)
    e.add_argument("--alpha-list", default="0,1,2")
    e.add_argument("--grid-factor", type=int, default=8)
    e.add_argument("--tol", type=float, default=1e-6)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--threads", type=int, default=1)
    e.add_argument("--u-cap", type=int, default=1024)
    e.add_argument("--m", dest="m_spec", default="g:32", help="multiplier for convergence")
    e.add_argument("--f", dest="f_spec", default=None, help="test function for convergence")

    sub.add_parser("selftest", help="run the invariant suite")
    return p


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise DomainError(f"cannot write {out}: {exc}") from exc


def _pairs_csv(pairs) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["field", "value"])
    for k, v in pairs:
        w.writerow([k, "" if v is None else (format(v, ".17g") if isinstance(v, float) else v)])
    return buf.getvalue()


def _cmd_norms(args) -> int:
    p = parse_function(args.function)
    gamma = WeightSequence.parse(args.gamma) if args.gamma else None
    fields = [f.strip() for f in args.fields.split(",")] if args.fields else None
    rep = norm_report(p, args.function, gamma, fields)
    if (args.format or "json") == "json":
        text = rep.to_json() + "\n"
    else:
        text = _pairs_csv([("function", rep.function), ("gamma", rep.gamma)]
                          + [(f, getattr(rep, f)) for f in NORM_FIELDS])
    _emit(text, args.out)
    bad = rep.violations()
    if bad:
        raise ToleranceViolation("; ".join(bad))
    return 0


def _cmd_multiplier(args) -> int:
    m = parse_function(args.function)
    witnesses = default_witnesses(parse_n_list(args.n_list), seed=args.seed)
    est = estimate_multiplier(m, args.function, witnesses)
    if (args.format or "json") == "json":
        text = est.to_json() + "\n"
    else:
        text = _pairs_csv(est.to_dict().items())
    _emit(text, args.out)
    bad = est.violations()
    if bad:
        raise ToleranceViolation("; ".join(bad))
    return 0


def _cmd_experiment(args) -> int:
    cfg = RunConfig(
        n_list=parse_n_list(args.n_list or DEFAULT_N_LISTS[args.id]),
        grid_factor=args.grid_factor,
        tol=args.tol,
        fmt=args.format or "csv",
        out=args.out,
        seed=args.seed,
        threads=args.threads,
        alpha_list=parse_float_list(args.alpha_list),
        u_cap=args.u_cap,
        m_spec=args.m_spec,
        f_spec=args.f_spec,
    )
    table = run_experiment(args.id, cfg)
    _emit(table.render(cfg.fmt), cfg.out)
    for c in table.checks:
        if not c.passed:
            print(f"{c.kind} check failed: {c.name} {c.detail}", file=sys.stderr)
    bad = table.hard_failures()
    if bad:
        raise ToleranceViolation(", ".join(c.name for c in bad))
    return 0


def _cmd_selftest(args) -> int:
    from .selftest import run_selftest

    if not run_selftest():
        raise ToleranceViolation("selftest failed")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        handler = {
            "norms": _cmd_norms,
            "multiplier": _cmd_multiplier,
            "experiment": _cmd_experiment,
            "selftest": _cmd_selftest,
        }[args.command]
        return handler(args)
    except ToleranceViolation as exc:
        print(f"tolerance violation: {exc}", file=sys.stderr)
        return 2
    except (DomainError, UCFourierError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
