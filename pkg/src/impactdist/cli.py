"""Command-line front end: simulate, describe, fit, gof, compare, qq.

Each command prints a plain table to stdout and, with ``--json PATH``, writes
a structured report. Exit codes: 0 success, 1 usage error, 2 data error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .corpus import DataError, Dataset, describe, load_csv
from .distributions import FAMILIES, DomainError, make_spec, quantile, sample
from .estimation import FitConfig, FitError, FitResult, fit
from .gof import DEFAULT_ALPHA, DEFAULT_B, BootstrapError, bootstrap_gof, rejects
from .selection import DegenerateTestError, vuong_test, wald_test

SCHEMA_VERSION = 1
EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERICAL = 0, 1, 2, 3
FAMILY_CHOICES = (*FAMILIES, "all")
DEFAULT_QQ_SPLIT = 0.9


class UsageError(Exception):
    pass


class NumericalFailure(Exception):
    pass


class ReportSchemaError(ValueError):
    pass


@dataclass
class Report:
    command: dict
    results: dict
    seed: int | None = None
    input: dict | None = None
    tool_version: str = __version__
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "tool_version": self.tool_version,
            "command": self.command,
            "input": self.input,
            "seed": self.seed,
            "results": self.results,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> Report:
        data = json.loads(text)
        expected = {"schema_version", "tool_version", "command", "input", "seed", "results"}
        if not isinstance(data, dict) or set(data) != expected:
            raise ReportSchemaError(f"report keys must be {sorted(expected)}")
        if data["schema_version"] != SCHEMA_VERSION:
            raise ReportSchemaError(f"unsupported report schema version {data['schema_version']!r}")
        return cls(
            command=data["command"],
            results=data["results"],
            seed=data["seed"],
            input=data["input"],
            tool_version=data["tool_version"],
            schema_version=data["schema_version"],
        )

    def write(self, path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")


@dataclass
class _Table:
    headers: list[str]
    rows: list[list] = field(default_factory=list)

    def render(self) -> str:
        cells = [[_fmt(c) for c in row] for row in self.rows]
        widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h) for i, h in enumerate(self.headers)]
        lines = ["  ".join(h.ljust(w) for h, w in zip(self.headers, widths))]
        lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in cells]
        return "\n".join(lines)


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.4f}" if math.isfinite(value) else str(value)
    return "-" if value is None else str(value)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_params(text: str) -> dict[str, float]:
    """Parse 'a=1.5,b=2,q=1' into a mapping."""
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"malformed parameter {item!r}; expected name=value")
        try:
            out[name.strip()] = float(value)
        except ValueError:
            raise UsageError(f"parameter {name!r} is not a number: {value!r}") from None
    if not out:
        raise UsageError("no parameters given; expected name=value pairs")
    return out


def _families(choice: str) -> list[str]:
    return list(FAMILIES) if choice == "all" else [choice]


def _config(args) -> FitConfig:
    return FitConfig(
        max_iterations=args.max_iterations,
        tolerance=args.tolerance,
        restarts=args.restarts,
        hessian_step=args.hessian_step,
        seed=args.seed,
    )


def _echo(args) -> dict:
    skip = {"json", "handler"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _input_digest(data: Dataset, path: str) -> dict:
    return {"path": path, "n": data.n, "n_original": data.n_original, "n_zero_removed": data.n_zero_removed}


def _fit_entry(res: FitResult) -> dict:
    entry = res.to_dict()
    try:
        entry["wald"] = wald_test(res).to_dict()
    except (ValueError, DegenerateTestError):
        entry["wald"] = None
    return entry


def _checked_fit(family: str, data: Dataset, config: FitConfig) -> FitResult:
    res = fit(family, data, config)
    if not res.converged:
        raise NumericalFailure(f"{family} fit did not converge: {res.diagnostic}")
    return res


def cmd_describe(args) -> Report:
    data = load_csv(args.input, args.column)
    desc = describe(data)
    table = _Table(["field", "n", "mean", "median", "std_dev", "gini"])
    table.rows.append([data.field_name, desc.n, desc.mean, desc.median, desc.std_dev, desc.gini])
    print(table.render())
    print(f"removed {data.n_zero_removed} non-positive of {data.n_original} values")
    return Report(command=_echo(args), input=_input_digest(data, args.input), results={"describe": desc.to_dict()})


def cmd_fit(args) -> Report:
    data = load_csv(args.input, args.column)
    config = _config(args)
    results, failed = {}, []
    table = _Table(["family", "parameters (se)", "log-lik", "converged"])
    for family in _families(args.family):
        res = fit(family, data, config)
        results[family] = _fit_entry(res)
        if not res.converged:
            failed.append(family)
        se = res.std_errors or (None,) * len(res.names)
        params = ", ".join(
            f"{n}={v:.4f} ({'-' if s is None else f'{s:.4f}'})" for n, v, s in zip(res.names, res.spec.as_array(), se)
        )
        table.rows.append([family, params, res.log_likelihood, res.converged])
    print(table.render())
    report = Report(command=_echo(args), input=_input_digest(data, args.input), seed=args.seed, results=results)
    if failed:
        _write(report, args)
        raise NumericalFailure(f"fit did not converge for: {', '.join(failed)}")
    return report


def cmd_gof(args) -> Report:
    data = load_csv(args.input, args.column)
    config = _config(args)
    results = {}
    table = _Table(["family", "KS", "p-value", "B", "failures", f"reject@{args.alpha}"])
    for family in _families(args.family):
        res = bootstrap_gof(family, data, B=args.bootstrap, seed=args.seed, config=config, workers=args.workers)
        entry = res.to_dict()
        entry["reject"] = rejects(res, args.alpha)
        entry["alpha"] = args.alpha
        entry["fit"] = res.fit.to_dict()
        results[family] = entry
        table.rows.append([family, res.ks_org, res.p_value, res.B, res.refit_failures, entry["reject"]])
    print(table.render())
    return Report(command=_echo(args), input=_input_digest(data, args.input), seed=args.seed, results=results)


def cmd_compare(args) -> Report:
    data = load_csv(args.input, args.column)
    config = _config(args)
    others = args.family2 or ["dagum", "sm"]
    fits = {}
    for family in [args.family1, *others]:
        if family not in fits:
            fits[family] = _checked_fit(family, data, config)
    comparisons = []
    table = _Table(["first", "second", "LR", "NLR", "p-value", "verdict"])
    for other in others:
        res = vuong_test(data, fits[args.family1].spec, fits[other].spec, args.alpha)
        comparisons.append({"first": args.family1, "second": other, **res.to_dict()})
        table.rows.append([args.family1, other, res.lr, res.nlr, res.p_value, res.verdict])
    print(table.render())
    results = {"fits": {f: r.to_dict() for f, r in fits.items()}, "comparisons": comparisons}
    return Report(command=_echo(args), input=_input_digest(data, args.input), seed=args.seed, results=results)


def qq_points(data, spec, points: int | None = None, split: float = DEFAULT_QQ_SPLIT) -> list[dict]:
    """Empirical vs model quantiles at plotting positions (i - 0.5) / n."""
    x = np.sort(np.asarray(getattr(data, "values", data), dtype=float))
    n = x.size
    idx = np.arange(n)
    if points and points < n:
        idx = np.unique(np.round(np.linspace(0, n - 1, points)).astype(int))
    u = (idx + 0.5) / n
    theo = np.atleast_1d(quantile(spec, u))
    return [
        {"panel": "lower" if ui <= split else "upper", "u": float(ui), "empirical_q": float(e), "theoretical_q": float(t)}
        for ui, e, t in zip(u, x[idx], theo)
    ]


def cmd_qq(args) -> Report:
    data = load_csv(args.input, args.column)
    if args.family == "all":
        raise UsageError("qq needs a single family")
    if args.params:
        spec = make_spec(args.family, parse_params(args.params))
        fitted = None
    else:
        fitted = _checked_fit(args.family, data, _config(args))
        spec = fitted.spec
    pts = qq_points(data, spec, args.points, args.split)
    with open(args.output, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=["panel", "u", "empirical_q", "theoretical_q"])
        writer.writeheader()
        for p in pts:
            writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in p.items()})
    lo = min(min(p["empirical_q"], p["theoretical_q"]) for p in pts)
    hi = max(max(p["empirical_q"], p["theoretical_q"]) for p in pts)
    panels = {}
    for name in ("lower", "upper"):
        sel = [p for p in pts if p["panel"] == name]
        panels[name] = {
            "points": len(sel),
            "max_abs_deviation": max((abs(p["empirical_q"] - p["theoretical_q"]) for p in sel), default=None),
        }
    print(_Table(["panel", "points", "max |emp - theo|"], [[k, v["points"], v["max_abs_deviation"]] for k, v in panels.items()]).render())
    results = {
        "family": args.family,
        "params": spec.as_dict(),
        "fit": None if fitted is None else fitted.to_dict(),
        "split": args.split,
        "reference_line": [lo, hi],
        "panels": panels,
        "output": args.output,
    }
    return Report(command=_echo(args), input=_input_digest(data, args.input), seed=args.seed, results=results)


def cmd_simulate(args) -> Report:
    if args.family == "all":
        raise UsageError("simulate needs a single family")
    spec = make_spec(args.family, parse_params(args.params))
    values = sample(spec, args.n, args.seed)
    with open(args.output, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["value"])
        writer.writerows([repr(float(v))] for v in values)
    print(f"wrote {args.n} {args.family} draws to {args.output}")
    return Report(
        command=_echo(args),
        seed=args.seed,
        results={"family": args.family, "params": spec.as_dict(), "n": args.n, "output": args.output},
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="impactdist", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"impactdist {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, data=True, fitting=True):
        if data:
            p.add_argument("--input", required=True, metavar="PATH")
            p.add_argument("--column", metavar="NAME")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--json", metavar="PATH")
        if fitting:
            p.add_argument("--restarts", type=int, default=FitConfig.restarts)
            p.add_argument("--max-iterations", type=int, default=FitConfig.max_iterations)
            p.add_argument("--tolerance", type=float, default=FitConfig.tolerance)
            p.add_argument("--hessian-step", type=float, default=FitConfig.hessian_step)

    p = sub.add_parser("describe", help="descriptive statistics")
    p.add_argument("--input", required=True, metavar="PATH")
    p.add_argument("--column", metavar="NAME")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(handler=cmd_describe)

    p = sub.add_parser("fit", help="maximum-likelihood fit")
    common(p)
    p.add_argument("--family", choices=FAMILY_CHOICES, default="all")
    p.set_defaults(handler=cmd_fit)

    p = sub.add_parser("gof", help="bootstrap KS goodness of fit")
    common(p)
    p.add_argument("--family", choices=FAMILY_CHOICES, default="all")
    p.add_argument("--bootstrap", type=int, default=DEFAULT_B, metavar="B")
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(handler=cmd_gof)

    p = sub.add_parser("compare", help="Vuong non-nested model selection")
    common(p)
    p.add_argument("--family1", choices=tuple(FAMILIES), default="davies")
    p.add_argument("--family2", choices=tuple(FAMILIES), action="append")
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    p.set_defaults(handler=cmd_compare)

    p = sub.add_parser("qq", help="q-q plot data")
    common(p)
    p.add_argument("--family", choices=FAMILY_CHOICES, required=True)
    p.add_argument("--params", help="evaluate this model instead of fitting, e.g. a=2,b=1")
    p.add_argument("--points", type=int, default=0, metavar="N")
    p.add_argument("--split", type=float, default=DEFAULT_QQ_SPLIT)
    p.add_argument("--output", required=True, metavar="PATH")
    p.set_defaults(handler=cmd_qq)

    p = sub.add_parser("simulate", help="draw a synthetic sample")
    common(p, data=False, fitting=False)
    p.add_argument("--family", choices=FAMILY_CHOICES, required=True)
    p.add_argument("--params", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--output", required=True, metavar="PATH")
    p.set_defaults(handler=cmd_simulate)
    return parser


def _write(report: Report, args) -> None:
    if getattr(args, "json", None):
        report.write(args.json)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.handler(args)
    except UsageError as exc:
        print(f"impactdist: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, DomainError, FileNotFoundError) as exc:
        print(f"impactdist: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (FitError, NumericalFailure, BootstrapError, DegenerateTestError) as exc:
        print(f"impactdist: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    _write(report, args)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
