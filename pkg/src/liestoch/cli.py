"""Command-line interface: ``liestoch <subcommand> ...``.

``--dim`` is always the matrix side; the symplectic-type families (S, AII,
CII and the Sp Weingarten function) need it even.  Exit codes: 0 success,
1 failed check, 2 bad configuration, 3 refused for budget.
"""
from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction
from importlib import metadata
from pathlib import Path

from . import acceptance, enumeration, moments, sampler, spectra, weingarten
from .enumeration import BudgetExceeded
from .ratfunc import PoleError, RationalFunction, ReconstructionError, laurent_coefficients

EXIT_OK, EXIT_CHECK, EXIT_CONFIG, EXIT_BUDGET = 0, 1, 2, 3

HALF_SIDE = ("S", "AII", "CII", "Sp")


class ConfigError(ValueError):
    pass


def code_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "unknown"


def rational_json(x) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def ratfunc_json(f: RationalFunction) -> dict:
    return {
        "numerator": [str(c) for c in f.num],
        "denominator": [str(c) for c in f.den],
        "factored": f.factored(),
    }


def _config(args) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("func",) and v is not None}
    return {k: (str(v) if isinstance(v, Path) else v) for k, v in cfg.items()}


def _run_record(args) -> dict:
    return {
        "command": args.command,
        "config": _config(args),
        "version": code_version(),
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def _emit(args, payload) -> None:
    text = json.dumps(payload, indent=2)
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def _dimension(family: str, dim: int | None) -> int:
    """Matrix side to the module-level ``N``."""
    if dim is None:
        raise ConfigError("--dim is required")
    if dim < 1:
        raise ConfigError("--dim must be positive")
    if family in HALF_SIDE:
        if dim % 2:
            raise ConfigError(f"{family} needs an even --dim")
        return dim // 2
    return dim


def _signature(family: str, dim: int | None, a: int | None, b: int | None):
    """Complete ``(a, b)``; for CII they split the half side."""
    if a is None and b is None:
        raise ConfigError(f"{family} needs --a or --b")
    total = None if dim is None else _dimension(family, dim)
    if total is None:
        if a is None or b is None:
            raise ConfigError(f"{family} needs --dim with only one of --a/--b")
        total = a + b
    a = total - b if a is None else a
    b = total - a if b is None else b
    if a < 0 or b < 0 or a + b != total:
        raise ConfigError(f"invalid signature a={a}, b={b} for size {total}")
    return a, b


# ---------------------------------------------------------------------------
# sample

def cmd_sample(args) -> int:
    fam = args.ensemble
    if fam not in sampler.FAMILIES:
        raise ConfigError(f"--ensemble must be one of {sampler.FAMILIES}")
    N = _dimension(fam, args.dim)
    a = b = None
    if fam in sampler.CHIRAL:
        a, b = _signature(fam, args.dim, args.a, args.b)
    if args.count < 1:
        raise ConfigError("--count must be positive")
    spec = sampler.EnsembleSpec(fam, N, a=a, b=b, seed=args.seed, stream=args.stream)
    samples = spectra.sample_spectra(spec, args.count)
    lines = [json.dumps({"type": "run", **_run_record(args), "ensemble": spec.to_json()})]
    lines += [json.dumps({"type": "spectrum", **s.to_json()}) for s in samples]
    text = "\n".join(lines) + "\n"
    if args.out:
        out = Path(args.out)
        out.write_text(text)
    else:
        sys.stdout.write(text)
    if args.out and args.count >= 2 and spec.side > 1:
        summary = spectra.summarize(samples, fam, bins=_bins(args.bins))
        report = {**_run_record(args), **summary.to_json(), "fits": _fits(summary, spec)}
        Path(str(out) + ".summary.json").write_text(json.dumps(report, indent=2) + "\n")
        if args.format == "csv":
            density, edges = summary.histogram
            spectra.write_histogram_csv(str(out) + ".hist.csv", density, edges)
    flagged = sum(s.flagged for s in samples)
    if flagged:
        print(f"warning: {flagged} sample(s) with PF residual above {spectra.PF_FLAG}", file=sys.stderr)
    return EXIT_OK


def _bins(value):
    if value is None:
        return "fd"
    try:
        return int(value)
    except ValueError:
        return value


def _fits(summary, spec) -> dict:
    fits = {}
    laws = ["semicircle"] if spec.symmetric else ["ginibre_disc", "quarter_circle"]
    for law in laws:
        try:
            fits[law] = spectra.law_fit(summary, law)
        except ValueError as exc:
            fits[law] = {"error": str(exc)}
    return fits


# ---------------------------------------------------------------------------
# exact-moment

def cmd_exact(args) -> int:
    ens = args.ensemble
    if ens not in moments.ENSEMBLES:
        raise ConfigError(f"--ensemble must be one of {moments.ENSEMBLES}")
    variant = "shifted" if args.shifted else args.variant
    kw = {}
    if ens in moments.CHIRAL:
        if args.symbolic:
            alpha = _alpha(args)
        else:
            kw["a"], kw["b"] = _signature(ens, args.dim, args.a, args.b)
    elif not args.symbolic:
        kw["N"] = _dimension(ens, args.dim)
    if args.symbolic:
        f = moments.closed_form(ens, args.n, quantity=args.quantity, variant=variant,
                                alpha=alpha if ens in moments.CHIRAL else None, budget=args.budget)
        result = {"closed_form": ratfunc_json(f)}
        text = f.factored()
    else:
        spec = moments.MomentSpec(ens, args.n, args.quantity, variant, **kw)
        v = moments.exact_moment(spec, budget=args.budget)
        result = {"value": rational_json(v), "float": float(v)}
        text = str(v)
    if args.format == "text":
        print(text)
    else:
        _emit(args, {**_run_record(args), "ensemble": ens, "n": args.n, "quantity": args.quantity,
                     "variant": variant, **kw, **result})
    return EXIT_OK


def _alpha(args) -> Fraction:
    if args.alpha is not None:
        return Fraction(args.alpha)
    if args.a is not None and args.b is not None and args.a + args.b > 0:
        return Fraction(args.a - args.b, args.a + args.b)
    raise ConfigError("symbolic chiral moments need --alpha or both --a and --b")


# ---------------------------------------------------------------------------
# tables / weingarten / asymptotics

def cmd_tables(args) -> int:
    if args.family not in enumeration.FAMILIES:
        raise ConfigError(f"--family must be one of {enumeration.FAMILIES}")
    if args.n is None or args.n < 1:
        raise ConfigError("--n must be positive")
    t = enumeration.enumerate_table(args.family, args.n, workers=args.workers, budget=args.budget)
    check = enumeration.table_checksums(t)
    golden = enumeration.golden_table(args.family, args.n)
    status = "absent" if golden is None else ("match" if golden == t.as_lists() else "mismatch")
    _emit(args, {**_run_record(args), **t.to_json(), "checksums": check, "reference": status})
    if status == "mismatch":
        print(f"{args.family}_{args.n} differs from the stored reference table", file=sys.stderr)
    return EXIT_OK if check["ok"] and status != "mismatch" else EXIT_CHECK


def cmd_weingarten(args) -> int:
    fam = args.family
    if fam not in weingarten.FAMILIES:
        raise ConfigError(f"--family must be one of {weingarten.FAMILIES}")
    kw = {}
    if fam in ("AIII", "BDI"):
        kw["a"], kw["b"] = _signature(fam, args.dim, args.a, args.b)
    elif args.symbolic:
        kw["N"] = weingarten.symbolic_N()
    else:
        kw["N"] = _dimension(fam, args.dim)
    table = weingarten.weingarten_table(fam, args.n, **kw)
    entries = []
    for lam, v in table.entries():
        row = {"partition": list(lam)}
        if isinstance(v, RationalFunction):
            row.update(ratfunc_json(v))
        else:
            v = Fraction(v)
            row.update(value_num=str(v.numerator), value_den=str(v.denominator))
        if lam in table.signs:
            row["representative_sign"] = table.signs[lam]
        entries.append(row)
    dimension = {k: (str(v) if isinstance(v, RationalFunction) else v) for k, v in table.dimension.items()}
    _emit(args, {**_run_record(args), "family": fam, "order": args.n, "dimension": dimension, "entries": entries})
    return EXIT_OK


def cmd_asymptotics(args) -> int:
    ens = args.ensemble
    if ens not in moments.ENSEMBLES or ens in moments.CHIRAL:
        raise ConfigError("--ensemble must be one of U, O, S, AI, AII")
    count = args.count if args.count is not None else 2 * args.n
    index = args.index
    if index is None:
        index = args.n // 2 if args.quantity == "trace" and ens in moments.SYMMETRIC else args.n
    f = moments.closed_form(ens, args.n, quantity=args.quantity, variant=args.variant, budget=args.budget)
    T = laurent_coefficients(f, index, count)
    _emit(args, {
        **_run_record(args),
        "ensemble": ens,
        "quantity": args.quantity,
        "n": args.n,
        "index": index,
        "closed_form": ratfunc_json(f),
        "coefficients": [{"j": j, **rational_json(t)} for j, t in enumerate(T, 1)],
    })
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify

def cmd_verify(args) -> int:
    selected = [int(c) for c in args.criteria.split(",")] if args.criteria else None
    if selected and any(c not in acceptance.CRITERIA for c in selected):
        raise ConfigError(f"criteria must be among {sorted(acceptance.CRITERIA)}")

    def report(crit):
        print(crit.summary_line(), flush=True)
        for c in crit.checks:
            if args.verbose or not c.passed:
                print(c.line(), flush=True)

    results = acceptance.run_criteria(selected, quick=args.quick, report=report)
    if args.out:
        Path(args.out).write_text(json.dumps(
            {**_run_record(args), "criteria": [c.to_json() for c in results]}, indent=2) + "\n")
    return EXIT_OK if all(c.passed for c in results) else EXIT_CHECK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liestoch", description="Random stochastic matrices from compact groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, ensemble=True):
        if ensemble:
            sp.add_argument("--ensemble", required=True)
        sp.add_argument("--dim", type=int, help="matrix side")
        sp.add_argument("--a", type=int)
        sp.add_argument("--b", type=int)
        sp.add_argument("--out")

    s = sub.add_parser("sample", help="draw matrices and write reduced spectra as JSON lines")
    common(s)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--stream", type=int, default=0)
    s.add_argument("--format", choices=("json", "csv"), default="json", help="csv also writes a histogram")
    s.add_argument("--bins", help="histogram bins: a count or a numpy rule (default fd)")
    s.set_defaults(func=cmd_sample)

    e = sub.add_parser("exact-moment", help="exact reduced moment or its closed form in N")
    common(e)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--quantity", choices=moments.QUANTITIES, default="trace")
    g = e.add_mutually_exclusive_group()
    g.add_argument("--reduced", dest="variant", action="store_const", const="reduced")
    g.add_argument("--full", dest="variant", action="store_const", const="full")
    g.add_argument("--shifted", action="store_true")
    e.add_argument("--symbolic", action="store_true")
    e.add_argument("--alpha", help="asymmetry for symbolic chiral moments, e.g. 1/2")
    e.add_argument("--budget", type=int)
    e.add_argument("--format", choices=("json", "text"), default="json")
    e.set_defaults(func=cmd_exact, variant="reduced")

    t = sub.add_parser("tables", help="enumerate a count table and compare it with the stored reference")
    t.add_argument("--family", required=True)
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--workers", type=int, default=1)
    t.add_argument("--budget", type=int)
    t.add_argument("--out")
    t.set_defaults(func=cmd_tables)

    w = sub.add_parser("weingarten", help="Weingarten values for every partition of the order")
    common(w, ensemble=False)
    w.add_argument("--family", required=True)
    w.add_argument("--n", type=int, required=True, help="order")
    w.add_argument("--symbolic", action="store_true")
    w.set_defaults(func=cmd_weingarten)

    a = sub.add_parser("asymptotics", help="large-N expansion coefficients of a closed form")
    a.add_argument("--ensemble", required=True)
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--quantity", choices=moments.QUANTITIES, default="singular")
    a.add_argument("--count", type=int)
    a.add_argument("--index", type=int, help="scaling index (default n, or n/2 for symmetric traces)")
    a.add_argument("--budget", type=int)
    a.add_argument("--out")
    a.set_defaults(func=cmd_asymptotics, variant="reduced")

    v = sub.add_parser("verify", help="run the acceptance criteria")
    v.add_argument("--quick", action="store_true", help="smaller Monte Carlo runs")
    v.add_argument("--criteria", help="comma-separated subset, e.g. 1,4,7")
    v.add_argument("--verbose", "-v", action="store_true")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ConfigError, ValueError, KeyError, PoleError, ReconstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
