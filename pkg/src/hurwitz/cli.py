"""``hurwitz`` command line: tables, verification suites, fitting, oracle.

Exit codes: 0 success, 1 a check or cross-check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

from . import closedform, cutjoin, factorize, genfun, proofreplay, univariate
from .foundation import fmt_rational, parse_partition, partition_key, partitions_up_to

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SERIES_MAX_GENUS = 3


class UsageError(Exception):
    pass


# -- cache ----------------------------------------------------------------------

def cache_path(override: str | None = None) -> Path:
    if override:
        return Path(override)
    env = os.environ.get("HURWITZ_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "hurwitz" / "table.json"


def _write_atomic(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".table-", suffix=".json")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def cached_table(max_r: int, max_n: int, path: Path | None) -> cutjoin.HurwitzTable:
    """A complete cut-and-join table covering the bounds, reusing ``path``."""
    old = None
    if path is not None and path.exists():
        try:
            old = cutjoin.HurwitzTable.from_json(path.read_text(encoding="utf-8"))
        except (ValueError, KeyError):
            old = None      # unreadable cache: rebuild
        if old is not None and old.max_r >= max_r and old.max_n >= max_n:
            return old
    if old is not None:
        max_r, max_n = max(max_r, old.max_r), max(max_n, old.max_n)
    table = cutjoin.hurwitz_table(max_r, max_n)
    if path is not None:
        _write_atomic(path, table.to_json())
    return table


# -- table ----------------------------------------------------------------------

def _rows_alphas(args) -> list[tuple]:
    if args.alpha is not None:
        try:
            return [parse_partition(args.alpha)]
        except ValueError as e:
            raise UsageError(str(e)) from None
    if args.max_n < 1:
        raise UsageError("--max-n must be >= 1")
    return partitions_up_to(args.max_n)


def _route_values(route: str, g: int, alphas: list, path: Path | None, cap: int) -> dict:
    if route == "series":
        if g > SERIES_MAX_GENUS:
            raise UsageError(f"no closed-form series for genus {g}; use --route recursion")
        N = max(sum(a) for a in alphas)
        return {a: genfun.mu(g, a, N) for a in alphas}
    if route == "recursion":
        max_r = max(cutjoin.transpositions_for(g, a) for a in alphas)
        max_n = max(sum(a) for a in alphas)
        table = cached_table(max_r, max_n, path)
        return {a: table.mu(g, a) for a in alphas}
    if route == "oracle":
        try:
            return {a: factorize.mu_via_factorizations(g, a, cap) for a in alphas}
        except factorize.CapExceeded as e:
            raise UsageError(str(e)) from None
    raise UsageError(f"unknown route {route!r}")


def _second_route(route: str, g: int, alphas: list, cap: int) -> str:
    if route != "recursion":
        return "recursion"
    if g <= SERIES_MAX_GENUS:
        return "series"
    if max(sum(a) for a in alphas) <= cap:
        return "oracle"
    raise UsageError("no second route available for cross-checking")


def emit_rows(rows: list[dict], fmt: str, extra: dict | None = None) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["genus", "alpha", "r", "mu"])
        for r in rows:
            w.writerow([r["genus"], ";".join(map(str, r["alpha"])), r["r"], r["mu"]])
        return buf.getvalue()
    return json.dumps({**(extra or {}), "rows": rows}, indent=2) + "\n"


def cmd_table(args) -> int:
    g = args.genus
    if g < 0:
        raise UsageError("--genus must be >= 0")
    alphas = sorted(_rows_alphas(args), key=partition_key)
    path = None if args.no_cache else cache_path(args.cache)
    values = _route_values(args.route, g, alphas, path, args.cap)
    status = EXIT_OK
    extra = {"genus": g, "route": args.route}
    if args.cross_check:
        other = _second_route(args.route, g, alphas, args.cap)
        # cached values are advisory, so the second route never reads the cache
        check = _route_values(other, g, alphas, None, args.cap)
        bad = [a for a in alphas if check[a] != values[a]]
        extra["cross_check"] = {"route": other, "agree": not bad,
                                "mismatches": [list(a) for a in bad]}
        if bad:
            status = EXIT_FAIL
    rows = [{"genus": g, "alpha": list(a), "r": cutjoin.transpositions_for(g, a),
             "mu": fmt_rational(values[a])} for a in alphas]
    sys.stdout.write(emit_rows(rows, args.format, extra))
    if status != EXIT_OK:
        print(f"cross-check against {extra['cross_check']['route']} failed for "
              f"{extra['cross_check']['mismatches']}", file=sys.stderr)
    return status


# -- verify ---------------------------------------------------------------------

def _check(name, ok, **detail):
    return {"name": name, "passed": bool(ok), **detail}


def suite_pde(N: int) -> list[dict]:
    Fs = [genfun.build_F(g, N) for g in range(SERIES_MAX_GENUS + 1)]
    out = [_check(f"genus-{g} slice of the cut-and-join equation (N={N})",
                  cutjoin.slice_residual(g, Fs).is_zero())
           for g in range(SERIES_MAX_GENUS + 1)]
    out.append(_check(f"T0 F2 - T1 vanishes (N={N})", cutjoin.genus2_residual(N).is_zero()))
    from .series import psi_at_s
    perturbed = Fs[2] + psi_at_s(2, N) * genfun.inverse_power(3, N)
    out.append(_check("perturbed F2 leaves a nonzero residual",
                      not cutjoin.genus2_residual(N, perturbed).is_zero()))
    return out


def suite_identities(N: int) -> list[dict]:
    out = [_check(f"{name} (N={N})", ok)
           for name, ok in cutjoin.verify_derivative_identities(N).items()]
    out.append(_check("printed (1-k) numerator of dF1/dp_k fails for k = 2..4",
                      all(not cutjoin.printed_dF1_residual(N, k).is_zero() for k in range(2, 5))))
    return out


def suite_recurrences(max_n: int) -> list[dict]:
    out = []
    dim, rel = univariate.ansatz_nullspace()
    out.append(_check("b-ansatz nullspace has dimension 4", dim == 4,
                      relations={f"b{k}": {f"b{j}": fmt_rational(c) for j, c in v.items()}
                                 for k, v in rel.items()}))
    try:
        unique = univariate.genus1_form_fit()["dimension"] == 1
    except ValueError:
        unique = False
    out.append(_check("fourth-order ansatz has a unique solution", unique))
    out.append(_check("no linear recurrence of the tested shape",
                      not univariate.no_linear_recurrence_nullspace()))
    for which in ("mu2_recurrence", "second_order", "first_order", "genus1_form"):
        rep = univariate.recurrence_check(which, max_n)
        out.append(_check(f"{which} for n <= {max_n}", rep["passed"], w_identity=rep["w_identity"]))
    unram = all(closedform.mu2_unramified(n) == univariate.mu2(n, max_n) for n in range(1, max_n + 1))
    out.append(_check(f"closed form for mu2(1^n) matches (2n+2)! [x^n] f_2 for n <= {max_n}", unram))
    return out


def parse_levels(text: str) -> list[int]:
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = (int(t) for t in text.split(".."))
            levels = list(range(lo, hi + 1))
        else:
            levels = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"bad --levels {text!r}") from None
    if not levels or any(not 1 <= lv <= 6 for lv in levels):
        raise UsageError("--levels must lie in 1..6")
    return sorted(set(levels))


def cmd_verify(args) -> int:
    suites = ["pde", "identities", "recurrences", "proof"] if args.suite == "all" else [args.suite]
    if args.order < 1:
        raise UsageError("--order must be >= 1")
    levels = parse_levels(args.levels)
    report = {"suite": args.suite, "checks": []}
    for s in suites:
        if s == "pde":
            checks = suite_pde(args.order)
        elif s == "identities":
            checks = suite_identities(args.order)
        elif s == "recurrences":
            checks = suite_recurrences(args.max_n)
        else:
            checks = proofreplay.proof_report(levels, args.route, args.controls)["checks"]
        report["checks"].extend({"suite": s, **c} for c in checks)
    report["passed"] = all(c["passed"] for c in report["checks"])
    sys.stdout.write(json.dumps(report, indent=2, default=_json_default) + "\n")
    return EXIT_OK if report["passed"] else EXIT_FAIL


def _json_default(o):
    if isinstance(o, Fraction):
        return fmt_rational(o)
    raise TypeError(type(o).__name__)


# -- fit ------------------------------------------------------------------------

DEFAULT_FIT_ORDER = {2: 8, 3: 12}


def cmd_fit(args) -> int:
    g = args.genus
    if g < 2:
        raise UsageError("the ansatz starts at genus 2")
    if g > 3 and not args.allow_experimental:
        raise UsageError("genus > 3 needs --allow-experimental")
    N = args.order if args.order is not None else DEFAULT_FIT_ORDER.get(g, 3 * g)
    if N < 1:
        raise UsageError("--order must be >= 1")
    if args.table:
        data = cutjoin.HurwitzTable.from_json(Path(args.table).read_text(encoding="utf-8"))
    else:
        max_r = N + N + 2 * g - 2
        data = cutjoin.hurwitz_table(max_r, N, max_genus=g)
    try:
        kt = genfun.fit_K(g, data, N)
    except cutjoin.TableTooSmall as e:
        raise UsageError(str(e)) from None
    except genfun.Underdetermined as e:
        print(f"fit at order {N}: {e}", file=sys.stderr)
        return EXIT_FAIL
    except genfun.InconsistentAnsatz as e:
        print(f"fit at order {N}: {e}", file=sys.stderr)
        return EXIT_FAIL
    sys.stdout.write(kt.to_json() + "\n")
    if g <= SERIES_MAX_GENUS:
        known = genfun.psi_expression(g).terms
        same = {k: v for k, v in kt.terms.items() if v} == known
        print("matches the built-in closed form" if same else "differs from the built-in closed form",
              file=sys.stderr)
        if not same:
            return EXIT_FAIL
    return EXIT_OK


# -- oracle ---------------------------------------------------------------------

def cmd_oracle(args) -> int:
    try:
        alpha = parse_partition(args.alpha)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if not alpha:
        raise UsageError("--alpha must be a nonempty partition")
    if args.r < 0:
        raise UsageError("--r must be >= 0")
    try:
        every = factorize.count_all_factorizations(alpha, args.r, args.cap)
        trans = factorize.count_transitive_factorizations(alpha, args.r, args.cap)
    except factorize.CapExceeded as e:
        raise UsageError(str(e)) from None
    th = int(factorize.theta(alpha))
    mu = Fraction(trans, th)
    g = cutjoin.genus_of(args.r, alpha)
    out = {"alpha": list(alpha), "r": args.r, "genus": g, "all_tuples": every,
           "transitive": trans, "theta": th, "mu": fmt_rational(mu)}
    status = EXIT_OK
    if args.compare:
        n = sum(alpha)
        table = cutjoin.hurwitz_table(args.r, n)
        rec = table.get(args.r, alpha)
        out["recursion_mu"] = fmt_rational(rec)
        out["agree"] = rec == mu
        status = EXIT_OK if rec == mu else EXIT_FAIL
    sys.stdout.write(json.dumps(out, indent=2) + "\n")
    return status


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hurwitz", description="Exact Hurwitz numbers and checks.")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="emit mu for a genus")
    t.add_argument("--genus", type=int, required=True)
    grp = t.add_mutually_exclusive_group()
    grp.add_argument("--max-n", type=int, default=8)
    grp.add_argument("--alpha")
    t.add_argument("--route", choices=["series", "recursion", "oracle"], default="recursion")
    t.add_argument("--cross-check", action="store_true")
    t.add_argument("--format", choices=["json", "csv"], default="json")
    t.add_argument("--cache", help="cache file (default $HURWITZ_CACHE)")
    t.add_argument("--no-cache", action="store_true")
    t.add_argument("--cap", type=int, default=factorize.DEFAULT_CAP)
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=["pde", "identities", "recurrences", "proof", "all"])
    v.add_argument("--order", type=int, default=8)
    v.add_argument("--levels", default="1..6")
    v.add_argument("--route", choices=["a", "b", "both"], default="both")
    v.add_argument("--max-n", type=int, default=12)
    v.add_argument("--controls", type=int, default=20)
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("fit", help="fit the ansatz coefficients")
    f.add_argument("--genus", type=int, required=True)
    f.add_argument("--order", type=int)
    f.add_argument("--table", help="HurwitzTable JSON to fit against")
    f.add_argument("--allow-experimental", action="store_true")
    f.set_defaults(func=cmd_fit)

    o = sub.add_parser("oracle", help="brute-force factorization count")
    o.add_argument("--alpha", required=True)
    o.add_argument("--r", type=int, required=True)
    o.add_argument("--compare", action="store_true", help="compare with the recursion")
    o.add_argument("--cap", type=int, default=factorize.DEFAULT_CAP)
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"hurwitz: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
