"""Command-line interface: ``cfcert <command> [options]``.

Exit codes: 0 success, 1 a checked inequality is false, 2 usage or input error,
3 precision ceiling (or an undecidable comparison) reached.  Errors are written
to stderr as a single JSON line ``{"error": kind, "reason": text}``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import cf as cfm
from . import equidist as eq
from . import product as pa
from . import zeta as zl
from .constants import MAX_DIGITS_ENV, approximate, parse_constant
from .exact import (
    IndeterminateError,
    PrecisionCeilingError,
    RationalInterval,
    certified_decimal,
    fmt_sci_bound,
    frac_str,
)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_CEILING = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class Result:
    data: object
    rows: Optional[list[dict]] = None  # CSV view
    plain: Optional[str] = None
    failed: bool = False


@dataclass
class RunConfig:
    digits: int
    output_format: str
    max_terms: int
    max_digits: Optional[int] = None
    deterministic: bool = field(default=True, init=False)


# argument parsing -------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _scale_high(text: str) -> Optional[Fraction]:
    return None if text.strip().lower() in ("inf", "infinity", "none") else _fraction(text)


def parse_t(text: str):
    """``pi``, ``3/4*pi``, ``pi/2``, ``2pi`` give exact multiples of pi; anything else is a rational."""
    t = text.strip().lower().replace(" ", "")
    if "pi" in t:
        head, _, tail = t.partition("pi")
        head = head.rstrip("*")
        coeff = Fraction(1) if head in ("", "+") else Fraction(-1) if head == "-" else _fraction(head)
        if tail:
            if not tail.startswith("/"):
                raise argparse.ArgumentTypeError(f"cannot parse t={text!r}")
            coeff /= _fraction(tail[1:])
        return eq.PiMultiple(coeff)
    return _fraction(t)


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from exc


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--digits", type=int, default=30, help="working precision in decimal digits")
    p.add_argument("--format", dest="output_format", choices=("json", "csv", "plain"), default="json")
    p.add_argument("--max-terms", type=int, default=5000, help="ceiling on certified quotients")
    p.add_argument("--max-digits", type=int, default=None,
                   help=f"precision ceiling (default from ${MAX_DIGITS_ENV} or 10000)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="cfcert", description="Certified continued fractions and related computations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def leaf(group, name, func, help_text):
        p = group.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    def src(p, default="e"):
        p.add_argument("--constant", default=default, help="e, pi, sqrt2, cbrt2, ln2, zeta3, e*pi, 1/pi ...")

    p = leaf(sub, "constant", cmd_constant, "certified enclosure of a constant")
    src(p)

    cf = sub.add_parser("cf", help="continued fractions").add_subparsers(dest="action", required=True,
                                                                          parser_class=_Parser)
    for name, func in (("expand", cmd_cf_expand), ("convergents", cmd_cf_convergents),
                       ("invert", cmd_cf_invert), ("growth", cmd_cf_growth)):
        p = leaf(cf, name, func, f"cf {name}")
        src(p)
        p.add_argument("--rational", type=_fraction, default=None, help="expand a literal p/q instead")
        p.add_argument("--terms", type=int, default=20)
        if name == "growth":
            p.add_argument("--max-t", type=int, default=2)

    check = sub.add_parser("check", help="inequality checks").add_subparsers(dest="action", required=True,
                                                                              parser_class=_Parser)
    p = leaf(check, "lemma3", cmd_check_lemma3, "0 < |alpha - p/q| < 1/(a_{n+1} q^2) for each convergent")
    src(p)
    p.add_argument("--terms", type=int, default=200, help="number of convergents")
    p = leaf(check, "lemma4", cmd_check_lemma4, "product bound for one (n, m) or a sweep")
    _product_args(p)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n-max", type=int, default=100)
    p.add_argument("--m-max", type=int, default=60)

    p = leaf(sub, "search", cmd_search, "correlated-convergent search")
    _product_args(p)
    p.add_argument("--epsilon", type=_fraction, default=Fraction(1, 20))
    p.add_argument("--window-low", type=_fraction, default=Fraction(1))
    p.add_argument("--window-high", type=_scale_high, default=Fraction(2), help="a rational or 'inf'")
    p.add_argument("--n-start", type=int, default=1)
    p.add_argument("--n-limit", type=int, default=100)
    p.add_argument("--m-limit", type=int, default=60)
    p.add_argument("--any-residue", action="store_true", help="scan every n, not only n = 1 mod 3")
    p.add_argument("--best", action="store_true", help="keep the minimum-error hit per n")

    p = leaf(sub, "table", cmd_table, "reproduce a printed table row")
    p.add_argument("name", choices=sorted(pa.TABLES))

    es = sub.add_parser("expsum", help="exponential sums").add_subparsers(dest="action", required=True,
                                                                           parser_class=_Parser)
    for name, func in (("direct", cmd_expsum), ("closed", cmd_expsum)):
        p = leaf(es, name, func, f"{name} evaluation of sum exp(2itn), |n| <= x")
        p.add_argument("--t", type=parse_t, required=True, help="pi, p/q*pi, pi/q or a rational")
        p.add_argument("--x", type=int, required=True)
    p = leaf(es, "diagnostic", cmd_expsum_diagnostic, "averages A_x for S_n = 2 pi r n or 2 (a alpha - c) n")
    p.add_argument("--form", choices=[f.value for f in eq.Form], default="linear_real")
    p.add_argument("--r", type=_fraction, default=Fraction(1))
    src(p)
    p.add_argument("--a", type=_fraction, default=Fraction(1))
    p.add_argument("--c", type=_fraction, default=Fraction(0))
    p.add_argument("--x", type=_int_list, default=[100, 1000, 10000], help="comma-separated increasing values")
    p.add_argument("--method", choices=("closed", "direct"), default="closed")

    zt = sub.add_parser("zeta", help="zeta constants").add_subparsers(dest="action", required=True,
                                                                       parser_class=_Parser)
    p = leaf(zt, "even", cmd_zeta_even, "r with zeta(2n) = r pi^(2n)")
    p.add_argument("--n", type=int, default=1)
    p = leaf(zt, "odd", cmd_zeta_odd, "zeta(s) for s in 3, 5, 7 from the e^(2 pi n) series")
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--terms", type=int, default=None)
    p = leaf(zt, "pi-rep", cmd_zeta_pirep, "zeta(s) = r pi^s - u")
    p.add_argument("--s", type=int, default=3)

    p = leaf(sub, "bernoulli", cmd_bernoulli, "Bernoulli numbers B_0..B_n")
    p.add_argument("--n", type=int, default=10, help="largest (even) index")
    return parser


def _product_args(p):
    p.add_argument("--alpha", default="e")
    p.add_argument("--beta", default="pi")
    p.add_argument("--convention", choices=[c.value for c in pa.Convention], default="eq6029")


# helpers ----------------------------------------------------------------------------------


def _config(args) -> RunConfig:
    if args.digits < 1:
        raise UsageError("--digits must be >= 1")
    return RunConfig(args.digits, args.output_format, args.max_terms, args.max_digits)


def _interval(iv: RationalInterval, sig: int) -> dict:
    return {"decimal": certified_decimal(iv, sig), "lo": fmt_sci_bound(iv.lo, sig, upper=False),
            "hi": fmt_sci_bound(iv.hi, sig, upper=True)}


def _value_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else frac_str(x)


def _source(args):
    return args.rational if getattr(args, "rational", None) is not None else parse_constant(args.constant)


def _expand(args, terms: int) -> cfm.ContinuedFraction:
    if terms > args.max_terms:
        raise UsageError(f"--terms {terms} exceeds --max-terms {args.max_terms}")
    return cfm.cf_expand(_source(args), terms)


def _cf_dict(c: cfm.ContinuedFraction) -> dict:
    const = c.constant
    name = frac_str(const) if isinstance(const, Fraction) else (const.name if const is not None else None)
    return {"constant": name, "terms": len(c.quotients), "quotients": list(c.quotients),
            "certified": c.certified, "exact": c.exact, "digits_used": c.digits_used}


def _bracket(values) -> str:
    return "[" + ", ".join(str(v) for v in values) + "]"


# commands ---------------------------------------------------------------------------------


def cmd_constant(args, cfg: RunConfig) -> Result:
    const = parse_constant(args.constant)
    iv = approximate(const, cfg.digits)
    d = {"constant": const.name, "digits": cfg.digits, **_interval(iv, cfg.digits),
         "lo_exact": frac_str(iv.lo), "hi_exact": frac_str(iv.hi)}
    return Result(d, [{k: d[k] for k in ("constant", "digits", "decimal", "lo", "hi")}], d["decimal"])


def cmd_cf_expand(args, cfg: RunConfig) -> Result:
    c = _expand(args, args.terms)
    rows = [{"index": i, "quotient": a} for i, a in enumerate(c.quotients)]
    return Result(_cf_dict(c), rows, _bracket(c.quotients))


def cmd_cf_convergents(args, cfg: RunConfig) -> Result:
    c = _expand(args, args.terms)
    rows = [{"n": v.index, "p": str(v.p), "q": str(v.q)} for v in cfm.convergents(c)]
    d = {**_cf_dict(c), "convergents": rows}
    return Result(d, rows, "\n".join(f"{r['n']} {r['p']}/{r['q']}" for r in rows))


def cmd_cf_invert(args, cfg: RunConfig) -> Result:
    c = _expand(args, args.terms)
    inv = cfm.invert_cf(c)
    d = {"input": _cf_dict(c), "inverse": _cf_dict(inv)}
    rows = [{"index": i, "quotient": a} for i, a in enumerate(inv.quotients)]
    return Result(d, rows, _bracket(inv.quotients))


def cmd_cf_growth(args, cfg: RunConfig) -> Result:
    c = _expand(args, args.terms)
    rep = cfm.continuant_growth_report(cfm.convergents(c), args.max_t)
    rows = [{"k": r.k, "t": r.t, "ratio": certified_decimal(RationalInterval.point(r.ratio), 12),
             "reference": str(r.reference), "relative": certified_decimal(RationalInterval.point(r.relative), 12)}
            for r in rep.rows]
    d = {**_cf_dict(c), "fibonacci_ok": rep.fibonacci_ok, "fibonacci_failures": list(rep.failures),
         "ratios": rows}
    if len(c.quotients) >= 11:
        g = pa.classify_growth(c.quotients)
        d["growth"] = {"classification": g.classification.value, "exponent": f"{g.exponent:.6f}",
                       "delta": None if g.delta is None else frac_str(g.delta), "terms": g.terms}
    plain = f"fibonacci_ok={str(rep.fibonacci_ok).lower()}"
    if "growth" in d:
        plain += f" growth={d['growth']['classification']} exponent={d['growth']['exponent']}"
    return Result(d, rows, plain, failed=not rep.fibonacci_ok)


def cmd_check_lemma3(args, cfg: RunConfig) -> Result:
    const = parse_constant(args.constant)
    if args.terms + 1 > args.max_terms:
        raise UsageError("--terms exceeds --max-terms")
    reports = cfm.lemma3_suite(const, args.terms)
    rows = [{"n": r.index, "p": str(r.p), "q": str(r.q), "next_quotient": r.next_quotient,
             "error": certified_decimal(r.error, 6), "bound": certified_decimal(RationalInterval.point(r.bound), 6),
             "status": r.status.value} for r in reports]
    failures = [r["n"] for r in rows if r["status"] != "holds"]
    d = {"constant": const.name, "checked": len(rows), "failures": failures, "reports": rows}
    return Result(d, rows, f"{const.name}: {len(rows)} checked, {len(failures)} failures", failed=bool(failures))


def cmd_check_lemma4(args, cfg: RunConfig) -> Result:
    alpha, beta = parse_constant(args.alpha), parse_constant(args.beta)
    conv = pa.Convention(args.convention)
    sig = min(cfg.digits, 30)
    if args.n is not None or args.m is not None:
        if args.n is None or args.m is None:
            raise UsageError("--n and --m go together")
        qa, qb = pa.QuotientSupply(alpha, args.max_terms), pa.QuotientSupply(beta, args.max_terms)
        r = pa.make_report(args.n, args.m, qa, qb, conv, sig=sig)
        d = r.to_dict(sig)
        return Result(d, [_report_row(r, sig)], f"holds={str(r.holds).lower()}", failed=not r.holds)
    reports = pa.inequality_sweep(args.n_max, args.m_max, conv, alpha, beta)
    failures = [[r.n, r.m] for r in reports if not r.holds]
    d = {"alpha": alpha.name, "beta": beta.name, "convention": conv.value, "n_max": args.n_max,
         "m_max": args.m_max, "checked": len(reports), "failures": failures}
    return Result(d, [_report_row(r, sig) for r in reports],
                  f"{len(reports)} checked, {len(failures)} failures", failed=bool(failures))


def _report_row(r: pa.ProductApproxReport, sig: int) -> dict:
    return {"n": r.n, "m": r.m, "p": str(r.conv_a.p), "q": str(r.conv_a.q), "u": str(r.conv_b.p),
            "v": str(r.conv_b.q), "error": certified_decimal(r.error_interval, sig),
            "bound": certified_decimal(RationalInterval.point(r.bound_convention), sig),
            "holds": str(r.holds).lower()}


def cmd_search(args, cfg: RunConfig) -> Result:
    config = pa.SearchConfig(
        epsilon=args.epsilon, window_scale_low=args.window_low, window_scale_high=args.window_high,
        n_start=args.n_start, n_limit=args.n_limit, m_limit=args.m_limit,
        alpha=parse_constant(args.alpha), beta=parse_constant(args.beta),
        convention=pa.Convention(args.convention), max_terms=args.max_terms, require_residue=not args.any_residue)
    reports = pa.search_correlated(config)
    if args.best:
        reports = pa.best_per_n(reports)
    sig = min(cfg.digits, 30)
    hits = [r.to_dict(sig) for r in reports]
    d = {"epsilon": frac_str(config.epsilon), "window_low": frac_str(config.window_scale_low),
         "window_high": None if config.window_scale_high is None else frac_str(config.window_scale_high),
         "convention": config.convention.value, "best": args.best, "count": len(hits), "hits": hits}
    failed = any(not r.holds for r in reports)
    plain = "\n".join(f"n={r.n} m={r.m} error={certified_decimal(r.error_interval, 12)} holds={str(r.holds).lower()}"
                      for r in reports)
    return Result(d, [_report_row(r, sig) for r in reports], plain, failed=failed)


def cmd_table(args, cfg: RunConfig) -> Result:
    rep = pa.reproduce_table(args.name)
    d = rep.to_dict()
    failed = not all(rep.bound_exceeds_error.values())
    plain = f"{args.name}: error={d['error']['decimal']} printed={d['printed_error']} match={str(rep.error_matches).lower()}"
    return Result(d, None, plain, failed=failed)


def _enclosure(c: eq.ComplexEnclosure, sig: int) -> dict:
    d = {"re": certified_decimal(c.re, sig), "im": certified_decimal(c.im, sig),
         "error_bound": fmt_sci_bound(c.error_bound, 3, upper=True), "exact": c.is_exact}
    if c.is_exact:
        d["re_exact"] = _value_str(c.re.lo)
        d["im_exact"] = _value_str(c.im.lo)
    return d


def cmd_expsum(args, cfg: RunConfig) -> Result:
    if args.x < 1:
        raise UsageError("--x must be >= 1")
    q = eq.ExpSumQuery(args.t, args.x)
    func = eq.exp_sum_direct if args.action == "direct" else eq.exp_sum_closed
    c = func(q, cfg.digits)
    t = str(q.t) if isinstance(q.t, eq.PiMultiple) else frac_str(q.t.lo)
    d = {"method": args.action, "t": t, "x": args.x, "digits": cfg.digits, **_enclosure(c, cfg.digits)}
    plain = d["re_exact"] if c.is_exact and c.im.lo == 0 else d["re"]
    return Result(d, [{k: d[k] for k in ("t", "x", "re", "im")}], plain)


def cmd_expsum_diagnostic(args, cfg: RunConfig) -> Result:
    form = eq.Form(args.form)
    if form is eq.Form.LINEAR_PI:
        spec = eq.SequenceSpec(form, r=args.r)
    else:
        spec = eq.SequenceSpec(form, alpha=parse_constant(args.constant), a=args.a, c=args.c)
    table = eq.equivalence_diagnostic(spec, args.x, cfg.digits, args.method)
    sig = min(cfg.digits, 20)
    d = table.to_dict(sig)
    d["method"] = args.method
    if form is eq.Form.LINEAR_PI:
        d["r"] = frac_str(spec.r)
    else:
        d.update(alpha=spec.alpha.name, a=frac_str(spec.a), c=frac_str(spec.c))
    failed = any(r.envelope is not None and r.average.abs_upper() > r.envelope for r in table.rows)
    rows = [{"x": r["x"], "re(A)": r["re"], "im(A)": r["im"], "envelope": r["envelope"] or "inf"} for r in d["rows"]]
    return Result(d, rows, table.to_csv(sig).rstrip("\n"), failed=failed)


def cmd_zeta_even(args, cfg: RunConfig) -> Result:
    r = zl.euler_even_zeta_coeff(args.n)
    d = {"n": args.n, "s": 2 * args.n, "r_exact": frac_str(r)}
    return Result(d, [d], f"zeta({2 * args.n}) = {frac_str(r)} * pi^{2 * args.n}")


def cmd_zeta_odd(args, cfg: RunConfig) -> Result:
    ev = zl.odd_zeta_evaluation(args.s, cfg.digits, args.terms)
    f = zl.ODD_FORMULAS[args.s]
    d = {"s": args.s, "r_exact": frac_str(f.r), "digits": cfg.digits, "terms_used": ev.terms_used,
         **_interval(ev.value, cfg.digits), "residual": _interval(ev.residual, cfg.digits)}
    return Result(d, [{k: d[k] for k in ("s", "digits", "decimal", "lo", "hi", "terms_used")}], d["decimal"])


def cmd_zeta_pirep(args, cfg: RunConfig) -> Result:
    rep = zl.pi_representation(args.s, cfg.digits)
    d = rep.to_dict()
    return Result(d, [d], f"r={d['r_exact']} u=[{d['u_lo']}, {d['u_hi']}]")


def cmd_bernoulli(args, cfg: RunConfig) -> Result:
    table = zl.bernoulli(args.n)
    rows = [{"k": k, "value": frac_str(b)} for k, b in enumerate(table.values)]
    d = {"convention": "B_1 = -1/2", "upto": args.n, "values": [r["value"] for r in rows]}
    return Result(d, rows, "\n".join(f"B_{k} = {_value_str(b)}" for k, b in enumerate(table.values)))


# rendering and entry point ------------------------------------------------------------------


def render(result: Result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result.data, indent=2) + "\n"
    if fmt == "plain":
        return (result.plain if result.plain is not None else json.dumps(result.data)) + "\n"
    if result.rows is None:
        raise UsageError("csv output is not available for this command")
    buf = io.StringIO()
    if result.rows:
        w = csv.DictWriter(buf, fieldnames=list(result.rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(result.rows)
    return buf.getvalue()


def _fail(kind: str, reason: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "reason": " ".join(str(reason).split())}) + "\n")
    return code


def main(argv: Optional[list[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        cfg = _config(args)
    except UsageError as exc:
        return _fail("usage", str(exc), EXIT_USAGE)
    saved = os.environ.get(MAX_DIGITS_ENV)
    if cfg.max_digits is not None:
        os.environ[MAX_DIGITS_ENV] = str(cfg.max_digits)
    try:
        result = args.func(args, cfg)
        text = render(result, cfg.output_format)
    except UsageError as exc:
        return _fail("usage", str(exc), EXIT_USAGE)
    except PrecisionCeilingError as exc:
        return _fail("precision_ceiling", str(exc), EXIT_CEILING)
    except pa.QuotientSupplyError as exc:
        return _fail("quotient_supply", str(exc), EXIT_CEILING)
    except (IndeterminateError, eq.NonDegeneracyError) as exc:
        return _fail("indeterminate", str(exc), EXIT_CEILING)
    except OverflowError as exc:
        return _fail("overflow", str(exc), EXIT_CEILING)
    except (ValueError, LookupError, ZeroDivisionError) as exc:
        return _fail("invalid_input", str(exc), EXIT_USAGE)
    finally:
        if cfg.max_digits is not None:
            if saved is None:
                os.environ.pop(MAX_DIGITS_ENV, None)
            else:
                os.environ[MAX_DIGITS_ENV] = saved
    out.write(text)
    return EXIT_CHECK_FAILED if result.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
