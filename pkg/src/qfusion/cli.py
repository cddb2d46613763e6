"""Command-line front end: characters by any route, verification sweeps, golden files.

Standard output carries a deterministic JSON (or TSV) report; the elapsed
wall time goes to standard error as ``elapsed_s=...``.

Exit codes: 0 pass, 1 a checked identity failed, 2 bad usage, 3 internal error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from itertools import combinations_with_replacement
from math import prod
from pathlib import Path
from typing import Sequence

from . import dualmodel, funcmodel, fusion, ideals, qchar
from .poly import monomial_basis
from .qchar import CharTable, qadd, qbinomial, qshift
from .qkernel import rat

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

ROUTES = ("recurrence", "closed", "gordon", "quotient", "dual", "fusion", "funcmodel")
FAMILIES = ("JA", "I0", "IZ", "JA_T", "Jk", "at")
SUITES = ("all", "thm21", "thm31", "thm41", "prop23", "prop24", "gordon", "dual",
          "rho", "qbinomial")


class UsageError(ValueError):
    pass


# --- argument parsing ------------------------------------------------------------------

def parse_multiset(text: str | None) -> tuple[int, ...]:
    if not text:
        raise UsageError("--A is required, e.g. --A 2,2")
    try:
        A = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--A must be a comma list of integers, got {text!r}") from None
    if any(a < 1 for a in A):
        raise UsageError("entries of --A must be positive")
    return A


def parse_points(text: str | None, n: int, flag: str = "--Z"):
    """Comma list of rationals (``p/q`` allowed) or ``preset:NAME``."""
    if not text:
        raise UsageError(f"{flag} is required")
    if text.startswith("preset:"):
        try:
            return fusion.z_preset(text[len("preset:"):], n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    try:
        pts = tuple(rat(x) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{flag} must be a comma list of rationals, got {text!r}") from None
    if len(pts) != n:
        raise UsageError(f"{flag} needs {n} entries, got {len(pts)}")
    return pts


def _need(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required for this route")
    if value < 0:
        raise UsageError(f"{flag} must be nonnegative")
    return value


def _points_json(pts) -> list[str]:
    return [str(x) for x in pts]


# --- reports -----------------------------------------------------------------------------

def char_report(route: str, params: dict, table: CharTable) -> dict:
    out = {"route": route, "params": params, **table.to_json(), "zdims": table.zdims()}
    return out


def emit(report: dict, fmt: str = "json", table: CharTable | None = None) -> str:
    if fmt == "tsv":
        if table is None:
            raise UsageError("TSV output is only available for character tables")
        return table.to_tsv()
    return json.dumps(report, sort_keys=True) + "\n"


def compute_char(args) -> tuple[dict, CharTable]:
    route = args.route
    if route == "gordon":
        k = _need(args.k, "--k")
        smax = _need(args.smax, "--smax")
        zmax = args.zmax if args.zmax is not None else qchar.gordon_zmax(k, smax)
        if k < 2:
            raise UsageError("--k must be at least 2")
        table = qchar.gordon_truncated(k, zmax, smax)
        return char_report(route, {"k": k, "smax": smax, "zmax": zmax}, table), table
    if route == "quotient" and args.family == "Jk":
        k = _need(args.k, "--k")
        smax = _need(args.smax, "--smax")
        spec = ideals.gens_Jk_window(k, smax + 1, smax)
        table = ideals.quotient_char(spec, kmax=k + smax)
        return char_report(route, {"family": "Jk", "k": k, "smax": smax}, table), table
    A = parse_multiset(args.A)
    n = len(A)
    params: dict = {"A": list(A)}
    if route == "recurrence":
        table = qchar.char_recurrence(A)
    elif route == "closed":
        table = qchar.char_closed_form(qchar.profile(A))
    elif route == "quotient":
        fam = args.family
        params["family"] = fam
        if fam == "JA":
            spec = ideals.gens_JA_limit(A)
        elif fam == "I0":
            spec = ideals.build_I0(A)
        elif fam == "IZ":
            Z = parse_points(args.Z, n)
            params["Z"] = _points_json(Z)
            spec = ideals.gens_IZ(A, Z)
        elif fam == "JA_T":
            T = parse_points(args.T, n, "--T")
            if len(set(T)) != n:
                raise UsageError("--T must have pairwise distinct entries")
            params["T"] = _points_json(T)
            spec = ideals.gens_JA_T(A, T)
        else:  # "at"
            Z = parse_points(args.Z, n)
            params["Z"] = _points_json(Z)
            spec = ideals.ideal_at_point(A, Z)
        table = ideals.quotient_char(spec)
    elif route == "dual":
        if args.T:
            T = parse_points(args.T, n, "--T")
            if len(set(T)) != n:
                raise UsageError("--T must have pairwise distinct entries")
            params["T"] = _points_json(T)
            table = CharTable.from_zdims(dualmodel.dual_zdims_at_T(A, T))
        else:
            table = dualmodel.dual_table_limit(A)
    elif route == "fusion":
        Z = parse_points(args.Z or "preset:integers", n)
        if len(set(Z)) != n:
            raise UsageError("--Z must have pairwise distinct entries")
        params["Z"] = _points_json(Z)
        table = fusion.fusion_character(A, Z)
    elif route == "funcmodel":
        T = parse_points(args.T or ",".join("0" * n), n, "--T")
        if n > funcmodel.MAX_FACTORS:
            raise UsageError(f"the functional model takes at most {funcmodel.MAX_FACTORS} factors")
        res = funcmodel.mt_character(A, T, args.cap)
        params.update({"T": _points_json(T), "cap": res.D})
        table = res.table if res.table is not None else CharTable.from_zdims(res.zdims())
    else:
        raise UsageError(f"unknown route {route!r}")
    return char_report(route, params, table), table


# --- verification suites -----------------------------------------------------------------------

def multisets(max_sum: int, min_len: int = 1, max_len: int | None = None):
    """All multisets of positive integers with sum <= max_sum, in a fixed order."""
    top = max_sum if max_len is None else min(max_len, max_sum)
    for n in range(min_len, top + 1):
        for A in combinations_with_replacement(range(1, max_sum + 1), n):
            if sum(A) <= max_sum:
                yield A


class Sweep:
    """Collects checked instances in order."""

    def __init__(self, suite: str, params: dict):
        self.suite = suite
        self.params = params
        self.instances: list[dict] = []

    def check(self, name: str, ok: bool, size: int = 0, **detail):
        self.instances.append({"check": name, "ok": bool(ok), "size": size, **detail})

    @property
    def ok(self) -> bool:
        return all(i["ok"] for i in self.instances)

    def report(self) -> dict:
        return {"suite": self.suite, "params": self.params, "ok": self.ok,
                "instances_checked": len(self.instances),
                "failures": sum(not i["ok"] for i in self.instances),
                "max_component": max((i["size"] for i in self.instances), default=0),
                "instances": self.instances}


def _largest_basis(n: int, kmax: int) -> int:
    return max((len(monomial_basis(n, (k, s))) for k in range(kmax + 1)
                for s in range(k * (n - 1) + 1)), default=1)


def _window_basis(m: int, kmax: int, smax: int) -> int:
    return max(len(monomial_basis(m, (k, s))) for k in range(kmax + 1) for s in range(smax + 1))


def suite_thm21(max_sum: int) -> Sweep:
    sw = Sweep("thm21", {"max_sum": max_sum})
    for A in multisets(max_sum):
        n = len(A)
        size = _largest_basis(n, sum(a - 1 for a in A) + 1)
        total = ideals.quotient_char(ideals.gens_JA_limit(A)).total()
        sw.check("dimension", total == prod(A), size, A=list(A), total=total)
        for name in ("integers", "symmetric"):
            T = fusion.z_preset(name, n)
            bad = ideals.limit_mismatches(A, T)
            sw.check("limit", not bad, size, A=list(A), T=_points_json(T),
                     mismatches=[list(b) for b in bad])
    return sw


def suite_thm31(max_sum: int) -> Sweep:
    sw = Sweep("thm31", {"max_sum": max_sum})
    for A in multisets(max_sum):
        tables = set()
        for name in fusion.PRESETS:
            Z = fusion.z_preset(name, len(A))
            ok, rep = fusion.verify_thm31(A, Z)
            tables.add(rep.character)
            sw.check("fusion", ok, prod(A), A=list(A), Z=_points_json(Z),
                     mismatches=[list(b) for b in rep.mismatched_bidegrees])
        sw.check("z_independence", len(tables) == 1, prod(A), A=list(A))
    return sw


def suite_thm41(max_sum: int) -> Sweep:
    sw = Sweep("thm41", {"max_sum": max_sum})
    for A in multisets(max_sum, 2, funcmodel.MAX_FACTORS):
        n = len(A)
        target = prod(A)
        zero = funcmodel.mt_character(A, (0,) * n)
        sw.check("total_zero", zero.total == target, target, A=list(A), total=zero.total)
        sw.check("graded_zero", zero.table == ideals.quotient_char(ideals.build_I0(A)),
                 target, A=list(A))
        generic = fusion.z_preset("integers", n)
        coincident = (1,) * 2 + tuple(range(2, n))
        for T in (generic, coincident):
            res = funcmodel.mt_character(A, T)
            expect = ideals.quotient_char(ideals.ideal_at_point(A, T)).zdims()
            sw.check("total_point", res.total == target and res.zdims() == expect, target,
                     A=list(A), T=_points_json(rat(t) for t in T), zdims=res.zdims())
        if n == 2:
            fc = funcmodel.fc_truncated(A, 4)
            free = all(fc.dim(d) == funcmodel.free_hilbert_n2(A, d) for d in range(5))
            sw.check("freeness", free, target, A=list(A))
            for T in ((1, -1), (0, 0)):
                try:
                    r = funcmodel.gram_rank_n2(A, T)
                except ArithmeticError:
                    r = -1
                sw.check("pairing", r == target, target, A=list(A),
                         T=_points_json(rat(t) for t in T), gram_rank=r)
    return sw


def suite_prop23(kmax: int, smax: int) -> Sweep:
    sw = Sweep("prop23", {"k": kmax, "smax": smax, "width_max": 4})
    for k in range(1, kmax + 1):
        for n in range(1, 5):
            bad = ideals.coefficient_ideal_mismatches(k, n, smax)
            sw.check("coefficient_ideal", not bad, _window_basis(smax + 1, k + smax, smax),
                     k=k, width=n, mismatches=[list(b) for b in bad])
    return sw


def suite_prop24(max_sum: int) -> Sweep:
    sw = Sweep("prop24", {"max_sum": max_sum})
    for A in multisets(max_sum):
        n = len(A)
        size = _largest_basis(n, sum(a - 1 for a in A) + 1)
        mirror = ideals.quotient_char(ideals.build_I0(A)) == \
            ideals.quotient_char(ideals.gens_JA_limit(A)).mirrored(n)
        sw.check("mirror", mirror, size, A=list(A))
        for name in ("integers", "symmetric"):
            Z = fusion.z_preset(name, n)
            bad = ideals.degeneration_mismatches(A, Z)
            sw.check("degeneration", not bad, size, A=list(A), Z=_points_json(Z),
                     mismatches=[list(b) for b in bad])
            for t in ("2", "1/3"):
                badz = ideals.flow_mismatches(A, Z, t)
                sw.check("flow", not badz, size, A=list(A), Z=_points_json(Z), t=t,
                         mismatches=badz)
    return sw


def suite_gordon(levels: Sequence[int], smax: int, width: int) -> Sweep:
    sw = Sweep("gordon", {"k": list(levels), "smax": smax, "width": width})
    if width <= smax:
        raise UsageError("--width must exceed --smax")
    for k in levels:
        A = (k,) * width
        zmax = width * (k - 1)
        g = qchar.gordon_truncated(k, zmax, smax)
        rec = qchar.char_recurrence(A).window(smax=smax)
        quo = ideals.quotient_char(ideals.gens_JA_limit(A, qcap=smax), kmax=zmax)
        sw.check("window", g == rec == quo, len(g), k=k, entries=g.entries())
    return sw


def suite_dual(max_sum: int) -> Sweep:
    sw = Sweep("dual", {"max_sum": max_sum})
    for A in multisets(max_sum):
        rec = qchar.char_recurrence(A)
        routes = {
            "closed": qchar.char_closed_form(qchar.profile(A)),
            "quotient": ideals.quotient_char(ideals.gens_JA_limit(A)),
            "dual": dualmodel.dual_table_limit(A),
        }
        bad = [name for name, t in routes.items() if t != rec]
        sw.check("routes", not bad, rec.total(), A=list(A), disagree=bad)
        T = fusion.z_preset("integers", len(A))
        at_T = dualmodel.dual_zdims_at_T(A, T)
        sw.check("dual_at_point", at_T == rec.zdims(), rec.total(), A=list(A), zdims=at_T)
    return sw


def suite_rho(nmax: int) -> Sweep:
    sw = Sweep("rho", {"n_max": nmax})
    for n in range(1, nmax + 1):
        for name in fusion.PRESETS:
            Z = fusion.z_preset(name, n)
            vals = [ideals.rho_check(Z, l) for l in range(n)]
            ok = all(v == 0 for v in vals[:-1]) and vals[-1] == 1
            sw.check("rho", ok, n, Z=_points_json(Z), values=_points_json(vals))
    return sw


def suite_qbinomial(mmax: int) -> Sweep:
    sw = Sweep("qbinomial", {"m_max": mmax})
    for m in range(1, mmax + 1):
        for k in range(0, m + 1):
            sym = qbinomial(m, k) == qbinomial(m, m - k)
            p1 = qbinomial(m, k) == qadd(qshift(qbinomial(m - 1, k), k), qbinomial(m - 1, k - 1))
            p2 = qbinomial(m, k) == qadd(qbinomial(m - 1, k), qshift(qbinomial(m - 1, k - 1), m - k))
            sw.check("laws", sym and p1 and p2, m, m=m, k=k)
    return sw


def run_suite(args) -> list[Sweep]:
    chosen = SUITES[1:] if args.suite == "all" else (args.suite,)
    out = []
    for suite in chosen:
        if suite == "thm21":
            out.append(suite_thm21(args.max_sum if args.max_sum is not None else 8))
        elif suite == "thm31":
            out.append(suite_thm31(args.max_sum if args.max_sum is not None else 8))
        elif suite == "thm41":
            out.append(suite_thm41(args.max_sum if args.max_sum is not None else 6))
        elif suite == "prop23":
            out.append(suite_prop23(args.k or 3, args.smax if args.smax is not None else 6))
        elif suite == "prop24":
            out.append(suite_prop24(args.max_sum if args.max_sum is not None else 6))
        elif suite == "gordon":
            levels = (args.k,) if args.k else (2, 3)
            if any(k < 2 for k in levels):
                raise UsageError("--k must be at least 2")
            out.append(suite_gordon(levels, args.smax if args.smax is not None else 4,
                                    args.width))
        elif suite == "dual":
            out.append(suite_dual(args.max_sum if args.max_sum is not None else 7))
        elif suite == "rho":
            out.append(suite_rho(6))
        elif suite == "qbinomial":
            out.append(suite_qbinomial(12))
    return out


# --- golden files -------------------------------------------------------------------------

GOLDEN_CASES: tuple[tuple[str, ...], ...] = (
    ("char", "--route", "recurrence", "--A", "2,2"),
    ("char", "--route", "closed", "--A", "1,2,3"),
    ("char", "--route", "gordon", "--k", "2", "--zmax", "3", "--smax", "9"),
    ("char", "--route", "quotient", "--family", "I0", "--A", "1,2"),
    ("char", "--route", "quotient", "--family", "JA", "--A", "2,3"),
    ("char", "--route", "quotient", "--family", "IZ", "--A", "2,2", "--Z", "1,-1"),
    ("char", "--route", "dual", "--A", "2,2,2"),
    ("char", "--route", "fusion", "--A", "3,2,2", "--Z", "preset:symmetric"),
    ("char", "--route", "funcmodel", "--A", "2,2", "--T", "0,0"),
    ("char", "--route", "recurrence", "--A", "2,2", "--format", "tsv"),
    ("fusion", "--A", "2,2", "--Z", "1,-1"),
    ("funcmodel", "--A", "2,3", "--T", "1,-1"),
    ("ideal", "--family", "JA", "--A", "2,2"),
)


def golden_name(argv: Sequence[str]) -> str:
    """Canonical file name for a CLI invocation."""
    parts = []
    for tok in argv:
        tok = tok.lstrip("-").replace("/", "_").replace(":", "_").replace(",", "_")
        parts.append(tok)
    ext = "tsv" if "tsv" in argv else "json"
    return "__".join(parts) + "." + ext


def write_golden(directory: Path) -> list[str]:
    directory.mkdir(parents=True, exist_ok=True)
    names = []
    for case in GOLDEN_CASES:
        text, code = render(list(case))
        if code != EXIT_PASS:
            raise RuntimeError(f"golden case {case} exited with {code}")
        name = golden_name(case)
        (directory / name).write_text(text, encoding="utf-8")
        names.append(name)
    return names


# --- entry point --------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qfusion", description="Characters of fusion-product quotients, "
                "computed and cross-checked by several independent routes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("char", help="compute a bigraded character")
    c.add_argument("--route", choices=ROUTES, required=True)
    c.add_argument("--A", help="multiset as a comma list, e.g. 2,2")
    c.add_argument("--family", choices=FAMILIES, default="JA")
    c.add_argument("--T", help="points as p/q literals or preset:NAME")
    c.add_argument("--Z", help="points as p/q literals or preset:NAME")
    c.add_argument("--k", type=int)
    c.add_argument("--zmax", type=int)
    c.add_argument("--smax", type=int)
    c.add_argument("--cap", type=int, help="polynomial degree cap for the functional model")
    c.add_argument("--format", choices=("json", "tsv"), default="json")

    v = sub.add_parser("verify", help="run a cross-validation sweep")
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("--max-sum", type=int, dest="max_sum")
    v.add_argument("--k", type=int)
    v.add_argument("--smax", type=int)
    v.add_argument("--width", type=int, default=10, help="number of factors for the gordon suite")
    v.add_argument("--summary", action="store_true", help="omit the per-instance list")

    f = sub.add_parser("fusion", help="fusion character and the I(0) comparison")
    f.add_argument("--A", required=True)
    f.add_argument("--Z", default="preset:integers")

    m = sub.add_parser("funcmodel", help="graded dimensions of M(T)")
    m.add_argument("--A", required=True)
    m.add_argument("--T", default=None)
    m.add_argument("--cap", type=int)

    i = sub.add_parser("ideal", help="print generators of an ideal family")
    i.add_argument("--family", choices=("JA", "I0", "IZ", "JA_T", "at"), required=True)
    i.add_argument("--A", required=True)
    i.add_argument("--Z")
    i.add_argument("--T")

    g = sub.add_parser("golden", help="regenerate the golden report files")
    g.add_argument("--dir", default="tests/golden")
    return p


def _cmd_fusion(args) -> tuple[dict, int]:
    A = parse_multiset(args.A)
    Z = parse_points(args.Z, len(A))
    if len(set(Z)) != len(Z):
        raise UsageError("--Z must have pairwise distinct entries")
    ok, rep = fusion.verify_thm31(A, Z)
    report = {"route": "fusion", "params": {"A": list(A), "Z": _points_json(Z)},
              **rep.character.to_json(), "verdict": rep.to_json()}
    return report, EXIT_PASS if ok else EXIT_FAIL


def _cmd_funcmodel(args) -> tuple[dict, int]:
    A = parse_multiset(args.A)
    n = len(A)
    if n > funcmodel.MAX_FACTORS:
        raise UsageError(f"the functional model takes at most {funcmodel.MAX_FACTORS} factors")
    T = parse_points(args.T or ",".join("0" * n), n, "--T")
    res = funcmodel.mt_character(A, T, args.cap)
    target = prod(A)
    expect = ideals.quotient_char(ideals.ideal_at_point(A, T)).zdims()
    verdicts = {"total_is_product": res.total == target, "zdims_match_ideal": res.zdims() == expect}
    if res.table is not None:
        verdicts["graded_matches_I0"] = res.table == ideals.quotient_char(ideals.build_I0(A))
    if n == 2:
        verdicts["gram_full_rank"] = funcmodel.gram_rank_n2(A, T) == target
    report = {"route": "funcmodel", "params": {"A": list(A), "T": _points_json(T), "cap": res.D},
              **{k: v for k, v in res.to_json().items() if k not in ("T", "cap")},
              "verdicts": verdicts}
    return report, EXIT_PASS if all(verdicts.values()) else EXIT_FAIL


def _cmd_ideal(args) -> tuple[str, int]:
    A = parse_multiset(args.A)
    n = len(A)
    if args.family == "JA":
        spec = ideals.gens_JA_limit(A)
    elif args.family == "I0":
        spec = ideals.build_I0(A)
    elif args.family == "IZ":
        spec = ideals.gens_IZ(A, parse_points(args.Z, n))
    elif args.family == "JA_T":
        spec = ideals.gens_JA_T(A, parse_points(args.T, n, "--T"))
    else:
        spec = ideals.ideal_at_point(A, parse_points(args.Z, n))
    report = {"family": spec.family, "params": spec.describe(),
              "generators": [str(g) for g in spec.generators]}
    return json.dumps(report, sort_keys=True) + "\n", EXIT_PASS


def render(argv: Sequence[str]) -> tuple[str, int]:
    """Run a command and return (stdout text, exit code) without printing."""
    args = build_parser().parse_args(list(argv))
    if args.command == "char":
        report, table = compute_char(args)
        return emit(report, args.format, table), EXIT_PASS
    if args.command == "verify":
        sweeps = run_suite(args)
        reports = [s.report() for s in sweeps]
        if args.summary:
            for r in reports:
                del r["instances"]
        ok = all(s.ok for s in sweeps)
        body = {"ok": ok, "suites": reports}
        return json.dumps(body, sort_keys=True) + "\n", EXIT_PASS if ok else EXIT_FAIL
    if args.command == "fusion":
        report, code = _cmd_fusion(args)
        return json.dumps(report, sort_keys=True) + "\n", code
    if args.command == "funcmodel":
        report, code = _cmd_funcmodel(args)
        return json.dumps(report, sort_keys=True) + "\n", code
    if args.command == "ideal":
        return _cmd_ideal(args)
    if args.command == "golden":
        names = write_golden(Path(args.dir))
        return json.dumps({"written": names}, sort_keys=True) + "\n", EXIT_PASS
    raise UsageError(f"unknown command {args.command!r}")


def main(argv: Sequence[str] | None = None) -> int:
    start = time.perf_counter()
    try:
        text, code = render(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"qfusion: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # argparse
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - reported as an internal failure
        print(f"qfusion: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.write(text)
    print(f"elapsed_s={time.perf_counter() - start:.3f}", file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
