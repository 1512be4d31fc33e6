"""Command-line front end: ``cubebilliard <subcommand> ...``.

Every run echoes its configuration and a git-style blob hash of it, so a
result file says how it was produced.  Output goes to stdout unless
``--output`` is given or ``CUBEBILLIARD_OUTPUT_DIR`` names a directory.

Exit codes: 0 ok, 1 a requested check failed, 2 geometric degeneracy
(tie at a lower-dimensional face), 3 bad usage or input, 4 unstable
enumeration.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
import warnings
from fractions import Fraction
from pathlib import Path

from . import arrangements as arr
from . import diagonals as dg
from . import language as lang
from . import numtheory as nt
from .errors import (DegenerateDiagonal, DuplicateLine, EmptyProjection, InsufficientDepth,
                     NonPositiveValue, TieAtEdge, UnstableEnumeration, ZeroComponent)
from .geometry import as_direction, as_point, crossings, trace_string

EXIT_OK, EXIT_CHECK, EXIT_TIE, EXIT_USAGE, EXIT_UNSTABLE = 0, 1, 2, 3, 4
OUTPUT_ENV = "CUBEBILLIARD_OUTPUT_DIR"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ------------------------------------------------------------------ parsing

def rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")


def rational_vector(text: str) -> tuple:
    return tuple(rational(t) for t in text.split(","))


def int_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def schedule(text: str) -> tuple:
    return tuple(int_range(s) for s in text.split(",")) if text else ()


def int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",")]


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    return x


def blob_hash(data: bytes) -> str:
    """Same digest as ``git hash-object`` for ``data``."""
    return hashlib.sha1(b"blob %d\0" % len(data) + data).hexdigest()


# ------------------------------------------------------------------- output

class Run:
    """Collects results and checks of one invocation and renders them."""

    def __init__(self, args, config: dict, extra_input: bytes = b""):
        self.args = args
        self.config = config
        canon = json.dumps(_jsonable(config), sort_keys=True, separators=(",", ":")).encode()
        self.input_hash = blob_hash(canon + extra_input)
        self.results: dict = {}
        self.table: list[dict] = []       # rows for csv output
        self.columns: list[str] = []
        self.checks: dict = {}
        self.text: list[str] = []
        self.status = EXIT_OK
        self.started = time.perf_counter()

    def check(self, name: str, ok: bool):
        self.checks[name] = bool(ok)
        if not ok and self.status == EXIT_OK:
            self.status = EXIT_CHECK

    def render(self) -> str:
        fmt = self.args.format
        timing = None
        if self.args.timing:
            timing = {"wall_seconds": round(time.perf_counter() - self.started, 6)}
        if fmt == "json":
            doc = {"config": self.config, "input_hash": self.input_hash,
                   "results": self.results, "checks": self.checks}
            if timing:
                doc["timing"] = timing
            return json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            buf.write("# config: " + json.dumps(_jsonable(self.config), sort_keys=True) + "\n")
            buf.write(f"# input_hash: {self.input_hash}\n")
            buf.write("# checks: " + json.dumps(self.checks, sort_keys=True) + "\n")
            if timing:
                buf.write(f"# wall_seconds: {timing['wall_seconds']}\n")
            w = csv.DictWriter(buf, fieldnames=self.columns, lineterminator="\n", extrasaction="ignore")
            w.writeheader()
            w.writerows({k: _jsonable(v) for k, v in row.items()} for row in self.table)
            return buf.getvalue()
        lines = list(self.text)
        lines += [f"{name}: {'PASS' if ok else 'FAIL'}" for name, ok in self.checks.items()]
        if timing:
            lines.append(f"wall_seconds: {timing['wall_seconds']}")
        return "\n".join(lines) + "\n"

    def emit(self):
        out = self.render()
        target = self.args.output
        outdir = os.environ.get(OUTPUT_ENV)
        if target is None and outdir:
            ext = {"json": "json", "csv": "csv"}.get(self.args.format, "txt")
            target = f"{self.config['command']}-{self.input_hash[:12]}.{ext}"
        if target is None:
            sys.stdout.write(out)
            return
        path = Path(target)
        if not path.is_absolute() and outdir:
            path = Path(outdir) / path
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(out)
        print(str(path), file=sys.stderr)


# ------------------------------------------------------------------ commands

def cmd_trace(args) -> Run:
    m, omega = args.m, args.omega
    if len(m) != args.d or len(omega) != args.d:
        raise UsageError(f"--m and --omega need {args.d} coordinates")
    if any(not 0 <= x <= 1 for x in m):
        raise UsageError("--m must lie in the closed unit cube")
    omega = as_direction(omega)
    run = Run(args, {"command": "trace", "d": args.d, "m": list(m), "omega": list(omega), "n": args.n})
    events = crossings(m, omega, args.n)
    word = "".join(str(e.axis) for e in events)
    run.results = {"word": word, "crossings": [
        {"time": e.time, "axis": e.axis, "level": e.level} for e in events]}
    run.columns = ["i", "time", "axis", "level"]
    run.table = [{"i": i + 1, "time": e.time, "axis": e.axis, "level": e.level}
                 for i, e in enumerate(events)]
    run.text = [word]
    return run


def _enum_config(args) -> lang.EnumerationConfig:
    return lang.EnumerationConfig(method=args.method, Q=args.Q, D=args.D, schedule=args.schedule,
                                  rounds=args.rounds, lp_refine=args.lp_refine, seed=args.seed,
                                  workers=args.workers)


def cmd_language(args) -> Run:
    cfg = _enum_config(args)
    conf = {"command": "language", "d": args.d, "n": args.n, **cfg.to_dict()}
    conf.pop("workers")
    run = Run(args, conf)
    ls, table, report = lang.enumerate_language(args.d, args.n, cfg)
    for k in range(0, args.n - 1):
        if table.stable.get(k, True) and table.stable.get(k + 2, True):
            run.check(f"cassaigne_n{k}", lang.cassaigne_check(ls, k).equal)
    run.check("factorial", not ls.factorial_violations())
    run.check("extendable", not ls.extendability_violations())
    if args.d == 2:
        closed = [nt.square_complexity(k) for k in range(args.n + 1)]
        run.check("square_closed_form", [table.p[k] for k in range(args.n + 1)] == closed)
    run.results = {"table": table.to_json(), "stable": report.all_stable,
                   "certified": report.certified, "history": report.history}
    run.columns = list(lang.LanguageTable.COLUMNS)
    run.table = list(table.rows())
    run.text = [" ".join(f"p({r['n']})={r['p']}" for r in run.table)]
    if not report.all_stable:
        run.status = EXIT_UNSTABLE
        run.text.append("unstable: " + ",".join(str(k) for k, v in report.stable.items() if not v))
    return run


def cmd_directional(args) -> Run:
    omega = as_direction(args.omega)
    samples = [as_point(rational_vector(s)) for s in args.m.split(";")] if args.m else None
    if samples and any(len(m) != len(omega) for m in samples):
        raise UsageError("start points and direction differ in dimension")
    run = Run(args, {"command": "directional", "omega": list(omega), "n": args.n,
                     "m": [list(m) for m in samples] if samples else None, "horizon": args.horizon})
    res = lang.directional_complexity(omega, samples, args.n, args.horizon)
    run.results = {"p_dir": res.p_dir, "horizon": res.horizon, "generic": res.generic,
                   "per_sample": res.per_sample,
                   "skipped": [{"m": list(m), "time": t, "axes": list(a)} for m, t, a in res.skipped]}
    run.check("point_independent", res.point_independent)
    run.columns = ["n", "p_dir"]
    run.table = [{"n": n, "p_dir": v} for n, v in res.p_dir.items()]
    run.text = [" ".join(f"p({n})={v}" for n, v in res.p_dir.items()), f"generic: {res.generic}"]
    if not res.generic:
        run.status = EXIT_TIE
    return run


def cmd_diagonals(args) -> Run:
    d = args.d
    if args.action == "count":
        lo, hi = args.range
        run = Run(args, {"command": "diagonals-count", "d": d, "range": [lo, hi]})
        rows = []
        for n in range(lo, hi + 1):
            c = dg.count_diagonals(n, d)
            rows.append({"n": n, "count": c.count, "type1": c.type1, "type2": c.type2,
                         "ratio": c.ratio, "decimal": float(c.ratio)})
        run.columns = ["n", "count", "type1", "type2", "ratio", "decimal"]
        run.table = rows
        mx = max(r["ratio"] for r in rows)
        run.results = {"rows": rows, "max_ratio": mx}
        if args.cap is not None:
            run.check("ratio_below_cap", mx < args.cap)
        run.text = [f"max ratio {float(mx):.6f}"]
        return run
    n = args.n
    if args.action == "list":
        run = Run(args, {"command": "diagonals-list", "d": d, "n": n})
        rows = []
        for g in dg.enumerate_diagonals(n, d):
            row = g.to_dict()
            if len(g.A.fixed) == 2 and len(g.B.fixed) == 2:
                eq = dg.diagonal_equation(g.A, g.B)
                row.update(variant=eq.variant, i=eq.i, j=eq.j, eq_n=eq.n, eq_p=eq.p)
            if n >= 2:
                try:
                    row["words"] = sorted(dg.words_in_diagonal(g).words)
                except DegenerateDiagonal:
                    row["words"] = None
            rows.append(row)
        run.results = {"diagonals": rows, "count": len(rows)}
        run.columns = ["n", "kind", "B_fixed", "B_levels", "variant", "words"]
        run.table = [{**r, "B_fixed": " ".join(map(str, r["B_fixed"])),
                      "B_levels": " ".join(map(str, r["B_levels"])),
                      "words": " ".join(r.get("words") or [])} for r in rows]
        run.text = [f"{len(rows)} diagonals"]
        return run
    if args.action == "budget":
        run = Run(args, {"command": "diagonals-budget", "d": d, "n": n})
        ls, _, report = lang.enumerate_language(d, max(n, 1))
        rep = dg.bispecial_diagonal_budget(n, d, ls)
        run.results = {k: v for k, v in rep.__dict__.items()}
        run.check("chain", rep.chain_holds)
        run.check("distinct_chain", rep.distinct_chain_holds)
        run.check("codes_bispecial", not rep.not_bispecial)
        run.check("i_in_range", not rep.i_out_of_range)
        run.check("mb_product", not rep.mb_not_product)
        run.columns = ["n", "X", "distinct_words", "sum_i_plus", "sum_i_all"]
        run.table = [run.results]
        run.text = [f"X={rep.X} distinct={rep.distinct_words} sum_i(BL+)={rep.sum_i_plus} "
                    f"sum_i(BL)={rep.sum_i_all}"]
        return run
    run = Run(args, {"command": "diagonals-project", "d": d, "n": n})
    lower, _, _ = lang.enumerate_language(d - 1, max(n - 1, 1))
    rep = dg.projection_surjectivity_check(n, d, lower)
    run.results = {"projected": rep.projected, "not_in_lower": rep.not_in_lower, "missing": rep.missing}
    run.check("projections_valid", rep.projections_valid)
    run.check("lift_complete", rep.lift_complete)
    run.columns = ["length", "projected", "missing"]
    run.table = [{"length": k, "projected": len(v), "missing": " ".join(rep.missing.get(k, []))}
                 for k, v in sorted(rep.projected.items())]
    run.text = [f"length {r['length']}: {r['projected']} projected, missing [{r['missing']}]"
                for r in run.table]
    return run


def cmd_numtheory(args) -> Run:
    if args.action == "sieve":
        run = Run(args, {"command": "numtheory-sieve", "N": args.N})
        t = nt.build_sieve(args.N)
        run.columns = ["n", "phi", "mu"]
        run.table = [{"n": k, "phi": t.phi[k], "mu": t.mu[k]} for k in range(1, args.N + 1)]
        run.results = {"rows": run.table}
        run.text = [f"{r['n']} {r['phi']} {r['mu']}" for r in run.table]
        return run
    if args.action == "mobius":
        run = Run(args, {"command": "numtheory-mobius", "N": args.N})
        t = nt.build_sieve(args.N)
        bad_mu, bad_phi = [], []
        for k in range(1, args.N + 1):
            a, b = nt.mobius_identity_check(t, k)
            if not a:
                bad_mu.append(k)
            if not b:
                bad_phi.append(k)
        run.results = {"mu_failures": bad_mu, "phi_failures": bad_phi}
        run.check("mu_divisor_sum", not bad_mu)
        run.check("phi_over_n", not bad_phi)
        run.columns = ["identity", "failures"]
        run.table = [{"identity": "mu_divisor_sum", "failures": len(bad_mu)},
                     {"identity": "phi_over_n", "failures": len(bad_phi)}]
        return run
    if args.action == "powersum":
        run = Run(args, {"command": "numtheory-powersum", "l": args.l, "p": args.p})
        scan = nt.coprime_power_sum(args.l, args.p, "scan")
        mob = nt.coprime_power_sum(args.l, args.p, "mobius")
        run.results = {"scan": scan, "mobius": mob}
        run.check("methods_agree", scan == mob)
        run.columns = ["l", "p", "scan", "mobius"]
        run.table = [{"l": args.l, "p": args.p, "scan": scan, "mobius": mob}]
        run.text = [str(mob)]
        return run
    run = Run(args, {"command": "numtheory-ratio", "n": args.n, "p": args.p})
    rows = list(nt.ratio_rows(args.n, args.p))
    run.results = {"rows": rows}
    run.columns = ["n", "p", "ratio", "decimal"]
    run.table = rows
    run.text = [f"{r['decimal']:.12g}" for r in rows]
    return run


def _parse_lines(text: str):
    try:
        return [arr.Line2D.make(*rational_vector(s)) for s in text.split(";") if s.strip()]
    except (TypeError, ValueError, argparse.ArgumentTypeError) as exc:
        raise UsageError(f"bad line list: {exc}")


def cmd_arrangements(args) -> Run:
    if args.action == "euler":
        run = Run(args, {"command": "arrangements-euler", "d": args.d})
        res = arr.euler_check_hypercube(args.d)
        run.results = res
        run.check("euler", res["equal"])
        run.columns = ["d", "lhs", "rhs", "equal"]
        run.table = [res]
        run.text = [f"{res['lhs']} == {res['rhs']} PASS" if res["equal"]
                    else f"{res['lhs']} != {res['rhs']} FAIL"]
        return run
    if args.action == "regions":
        lines = _parse_lines(args.lines)
        run = Run(args, {"command": "arrangements-regions",
                         "lines": [[l.a, l.b, l.c] for l in lines]})
        r = arr.count_regions_2d(lines)
        run.results = {"regions": r, "n": len(lines)}
        run.check("sandwich", len(lines) + 1 <= r <= arr.max_regions(len(lines)) or not lines)
        run.columns = ["n", "regions"]
        run.table = [run.results]
        run.text = [str(r)]
        return run
    run = Run(args, {"command": "arrangements-growth", "n_max": args.n_max, "trials": args.trials,
                     "seed": args.seed, "mode": args.mode})
    res = arr.region_growth_check(2, args.n_max, args.trials, args.seed, args.mode)
    run.results = {"max_ratio": res["max_ratio"], "max_ratio_at_n_max": res["max_ratio_at_n_max"],
                   "rows": res["rows"]}
    run.check("sandwich", res["sandwich"])
    if args.mode == "general":
        run.check("general_position_formula",
                  all(r["regions"] == arr.max_regions(r["n"]) for r in res["rows"]))
    run.columns = ["trial", "n", "regions", "ratio"]
    run.table = res["rows"]
    run.text = [f"max ratio {res['max_ratio']} ({float(res['max_ratio']):.6f})"]
    return run


def cmd_fit(args) -> Run:
    text = Path(args.input).read_text()
    lo, hi = args.range
    run = Run(args, {"command": "fit", "input": os.path.basename(args.input), "target": args.target,
                     "range": [lo, hi], "allow_unstable": args.allow_unstable},
              extra_input=text.encode())
    table = lang.LanguageTable.from_csv(text)
    fit = lang.exponent_fit(table, lo, hi, args.target, allow_unstable=args.allow_unstable)
    run.results = fit.__dict__.copy()
    if args.expect is not None:
        c, tol = args.expect
        run.check("slope_in_window", abs(fit.slope - c) <= tol)
    run.columns = ["slope", "intercept", "residual"]
    run.table = [run.results]
    run.text = [f"slope {fit.slope:.4f}"]
    return run


# ------------------------------------------------------------------- parser

def _common(p):
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--output", help="output file (relative paths go under $%s)" % OUTPUT_ENV)
    p.add_argument("--timing", action="store_true", help="append wall-clock duration")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cubebilliard", description="Billiard words in the hypercube.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("trace", help="code of one trajectory")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=rational_vector, required=True)
    p.add_argument("--omega", type=rational_vector, required=True)
    p.add_argument("--n", type=int, required=True)
    _common(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("language", help="complexity table of L(n, d)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("exact", "sample"), default="exact")
    p.add_argument("--Q", type=int, default=8)
    p.add_argument("--D", type=int, default=8)
    p.add_argument("--schedule", type=schedule, default=(), help="Q:D,Q:D,... for sampling")
    p.add_argument("--rounds", type=int, default=2)
    p.add_argument("--lp-refine", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    _common(p)
    p.set_defaults(func=cmd_language)

    p = sub.add_parser("directional", help="factor complexity in one direction")
    p.add_argument("--omega", type=rational_vector, required=True)
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--m", help="start points, ';'-separated, e.g. 0,1/3;0,2/7")
    p.add_argument("--horizon", type=int)
    _common(p)
    p.set_defaults(func=cmd_directional)

    p = sub.add_parser("diagonals", help="generalized diagonals")
    p.add_argument("action", choices=("count", "list", "budget", "project"))
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--range", type=int_range, default=(1, 20))
    p.add_argument("--cap", type=float)
    _common(p)
    p.set_defaults(func=cmd_diagonals)

    p = sub.add_parser("numtheory", help="totient, Moebius and coprime power sums")
    p.add_argument("action", choices=("sieve", "mobius", "powersum", "ratio"))
    p.add_argument("--N", type=int, default=100)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--p", type=int_list, default=[1])
    p.add_argument("--n", type=int_list, default=[1000])
    _common(p)
    p.set_defaults(func=cmd_numtheory)

    p = sub.add_parser("arrangements", help="line arrangements and Euler identity")
    p.add_argument("action", choices=("euler", "regions", "growth"))
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--lines", default="", help="a,b,c;a,b,c;... for a*x+b*y=c")
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("general", "parallel", "mixed"), default="general")
    _common(p)
    p.set_defaults(func=cmd_arrangements)

    p = sub.add_parser("fit", help="log-log slope of a complexity table")
    p.add_argument("--input", required=True)
    p.add_argument("--target", choices=("p", "s", "s2"), default="p")
    p.add_argument("--range", type=int_range, required=True)
    p.add_argument("--allow-unstable", action="store_true")
    p.add_argument("--expect", type=float, nargs=2, metavar=("SLOPE", "TOL"))
    _common(p)
    p.set_defaults(func=cmd_fit)
    return ap


def _validate(args):
    if getattr(args, "d", None) is not None and not 1 <= args.d <= 10:
        raise UsageError("--d must be in 1..10")
    if args.command == "language" and args.d < 2:
        raise UsageError("language needs d >= 2")
    if args.command == "diagonals" and args.d < 2:
        raise UsageError("diagonals need d >= 2")
    if args.command == "numtheory" and args.action == "powersum" and len(args.p) == 1:
        args.p = args.p[0]
    for name in ("n", "N", "n_max", "trials", "workers"):
        v = getattr(args, name, None)
        if isinstance(v, int) and v < 0:
            raise UsageError(f"--{name} must be non-negative")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:         # --help, or a usage error
        return exc.code
    warnings.simplefilter("ignore", EmptyProjection)
    try:
        _validate(args)
        run = args.func(args)
    except TieAtEdge as exc:
        print(f"degenerate: {exc}", file=sys.stderr)
        return EXIT_TIE
    except UnstableEnumeration as exc:
        print(f"unstable: {exc}", file=sys.stderr)
        return EXIT_UNSTABLE
    except (UsageError, ZeroComponent, DuplicateLine, InsufficientDepth, NonPositiveValue,
            FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    run.emit()
    return run.status


if __name__ == "__main__":
    sys.exit(main())
