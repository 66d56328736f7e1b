"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 budget
refusal.  Artifacts go to stdout, or into ``--out-dir`` (default taken
from $CORONAORBITS_OUT) under deterministic names.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import exactla as la
from . import orbitoracle as oo
from . import quiverrep as qr
from . import seqlab
from .matchgraph import (
    GraphSpec,
    MatchingError,
    count_matchings,
    dual_matching,
    enumerate_matchings,
    matching_from_json,
    minus_matching,
    to_positions,
)
from .rootcalc import RootError, enumerate_decompositions, matching_to_rootset, rootset_to_matching

OUT_ENV = "CORONAORBITS_OUT"
EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_BUDGET = 0, 1, 2, 3
VARIANT_NAMES = {
    "plain": "plain", "plain-corona": "plain",
    "double": "double", "double-corona": "double",
    "signed": "signed", "signed-corona": "signed",
    "signed0": "signed0", "signed0-corona": "signed0",
}


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, report: dict):
        super().__init__(report.get("error", "verification failed"))
        self.report = report


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def nat(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def pos(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def field(s: str) -> int:
    v = int(s)
    if v not in la.SUPPORTED_PRIMES:
        raise argparse.ArgumentTypeError(f"q must be one of {la.SUPPORTED_PRIMES}")
    return v


def _read_json_arg(s: str):
    """Inline JSON, or @path to read it from a file."""
    try:
        text = Path(s[1:]).read_text() if s.startswith("@") else s
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON input: {exc}") from exc


def _matching_arg(s: str):
    obj = _read_json_arg(s)
    try:
        return matching_from_json(json.dumps(obj))
    except (MatchingError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad matching: {exc}") from exc


# ---------------------------------------------------------------------------
# commands; each returns its artifacts as a list of
# (file name, text)


def cmd_count(a):
    spec = GraphSpec(a.variant, a.p)
    body = {"graph": {"variant": spec.variant, "p": spec.p}, "k": a.k, "count": str(count_matchings(spec, a.k))}
    return [(f"count_{spec.variant}_{a.p}_{a.k}.json", dumps(body))]


def cmd_enumerate(a):
    spec = GraphSpec(a.variant, a.p)
    items = list(enumerate_matchings(spec, a.k))
    if a.format == "csv":
        text = "index,matching_json\n" + "".join(
            f"{i},\"{S.to_json().replace(chr(34), chr(34) * 2)}\"\n" for i, S in enumerate(items))
        return [(f"enumerate_{spec.variant}_{a.p}_{a.k}.csv", text)]
    body = {"graph": {"variant": spec.variant, "p": spec.p}, "k": a.k, "count": str(len(items)),
            "matchings": [S.to_dict() for S in items]}
    return [(f"enumerate_{spec.variant}_{a.p}_{a.k}.json", dumps(body))]


def cmd_roots(a):
    if a.matching:
        S = _matching_arg(a.matching)
        m = len(S)
        n = S.spec.p - m
        R = matching_to_rootset(S, m, n)
        body = {"m": m, "n": n, "matching": S.to_dict(), "roots": [{"root": r.to_dict()} for r in sorted(R)]}
        return [(f"roots_{m}_{n}_single.json", dumps(body))]
    decs = sorted(enumerate_decompositions(a.m, a.n), key=lambda R: rootset_to_matching(R, a.m, a.n).edges)
    body = {
        "m": a.m,
        "n": a.n,
        "count": str(len(decs)),
        "decompositions": [
            {"roots": [{"root": r.to_dict()} for r in sorted(R)],
             "matching": rootset_to_matching(R, a.m, a.n).to_dict()}
            for R in decs
        ],
    }
    return [(f"roots_{a.m}_{a.n}.json", dumps(body))]


def cmd_rep(a):
    S = _matching_arg(a.matching)
    if a.kind == "binary":
        if S.spec.variant != "plain":
            raise UsageError("binary representatives take a plain matching")
        m, n = len(S), S.spec.p - len(S)
        g = qr.binary_representative(S, m, n)
        got = qr.classify_point(qr.point_from_matrix(g, m, a.q))
        body = json.loads(qr.matrix_to_json(g, a.q, "binary"))
        name = f"rep_binary_{S.spec.p}_{m}_F{a.q}.json"
    else:
        if S.spec.variant != "signed":
            raise UsageError("symplectic representatives take a signed matching")
        if a.q == 2:
            raise UsageError("symplectic representatives need odd q")
        try:
            g_rat = qr.symplectic_representative(S)
        except MatchingError as exc:
            raise UsageError(str(exc)) from exc
        g, pt = qr.symplectic_point(S, a.q)
        got = qr.classify_point(pt)
        S = to_positions(S)
        form = oo.FormSpec.standard("symplectic", g.shape[0], a.q)
        body = json.loads(qr.matrix_to_json(g_rat, None, "symplectic"))
        body["rows_mod_q"] = g.tolist()
        body["q"] = a.q
        body["symplectic"] = bool(np.array_equal(qr.apply_phi(g, a.q), g))
        body["isotropy"] = oo.isotropy_predicate(pt, form)
        name = f"rep_symplectic_{S.spec.p}_{len(S)}_F{a.q}.json"
    body["matching"] = S.to_dict()
    body["classified"] = got.to_dict()
    body["verified"] = got == S and body.get("symplectic", True) and body.get("isotropy", True)
    if not body["verified"]:
        raise VerificationFailed({"error": "representative does not classify back", **body})
    return [(name, dumps(body))]


def cmd_classify(a):
    obj = _read_json_arg(a.point)
    try:
        A = np.asarray(obj["A"], dtype=np.int64).reshape(-1, len(obj["A"][0]) if obj["A"] else 0)
        B = np.asarray(obj["B"], dtype=np.int64).reshape(-1, len(obj["B"][0]) if obj["B"] else 0)
        d = int(obj.get("d", max(A.shape[1], B.shape[1])))
        pt = qr.VarietyPoint(la.Subspace.span(A, a.q, d), la.Subspace.span(B, a.q, d))
    except (KeyError, TypeError, ValueError, IndexError, la.DimensionError, qr.RepError) as exc:
        raise UsageError(f"bad point: {exc}") from exc
    S = qr.classify_point(pt)
    body = {"q": a.q, "m": pt.m, "n": pt.n, "matching": S.to_dict(),
            "roots": [{"root": r.to_dict()} for r in sorted(matching_to_rootset(S, pt.m, pt.n))]}
    return [(f"classify_F{a.q}.json", dumps(body))]


def cmd_dual(a):
    S = _matching_arg(a.matching)
    try:
        D = dual_matching(S)
    except MatchingError as exc:
        raise UsageError(str(exc)) from exc
    return [("dual.json", dumps({"input": S.to_dict(), "dual": D.to_dict()}))]


def cmd_minus(a):
    S = _matching_arg(a.matching)
    try:
        M = minus_matching(S)
    except MatchingError as exc:
        raise UsageError(str(exc)) from exc
    body = {"input": S.to_dict(), "minus": M.to_dict(), "invariant": M == S}
    return [("minus.json", dumps(body))]


def cmd_oracle(a):
    budget = None if a.no_budget else a.budget
    if a.kind == "gl":
        table = oo.build_orbit_table(a.m, a.n, a.q, budget, a.seed)
        rep = oo.census(a.m, a.n, a.q, table=table)
        stem = f"oracle_gl_{a.m}_{a.n}_F{a.q}"
        summary = oo.summary_json(rep) + "\n"
        arts = [(stem + ".json", summary), (stem + ".csv", oo.report_csv(table))]
        ok = rep["match"]
    else:
        kind = "symplectic" if a.kind == "sp" else "symmetric"
        if a.q == 2:
            raise UsageError("form censuses need odd q")
        if a.m % 2 or (a.n % 2 if kind == "symplectic" else a.n % 2 == 0):
            shape = "(even, even)" if kind == "symplectic" else "(even, odd)"
            raise UsageError(f"{a.kind} census needs dims {shape}")
        np_ = a.n // 2
        table = oo.build_orbit_table(a.m, a.n, a.q, budget, a.seed)
        rep = oo.fixed_point_census(a.m // 2, np_, a.q, kind, table=table)
        stem = f"oracle_{a.kind}_{a.m}_{a.n}_F{a.q}"
        body = {k: rep[k] for k in ("kind", "m", "n", "q", "orbit_count", "orbits_with_point",
                                    "expected_with_point", "mismatches", "match")}
        body["total_points"] = table.total_points
        arts = [(stem + ".json", dumps(body)), (stem + ".csv", oo.report_csv(table))]
        ok = rep["match"]
    if a.format == "csv":
        arts = arts[1:] + arts[:1]
    if not ok:
        raise VerificationFailed({"error": "census mismatch", "artifacts": arts})
    return arts


def cmd_bpoly(a):
    I = seqlab.interpolate_b(a.n, a.extra)
    return [(f"bpoly_{a.n}_{a.extra}.json", I.to_json() + "\n")]


def cmd_seq(a):
    t = seqlab.build_table(a.family, a.limit, enumerate_too=not a.no_enumerate)
    bad = t.disagreements()
    if bad:
        raise VerificationFailed({"error": "provenances disagree", "indices": bad})
    return [(f"seq_{a.family}_{a.limit}.csv", t.to_csv())]


def cmd_verify(a):
    from .verify import SUITES, run_suites

    names = None if a.suite == "all" else [a.suite]
    if names and names[0] not in SUITES:
        raise UsageError(f"unknown suite {a.suite!r}; choose from all, {', '.join(SUITES)}")
    results = run_suites(names)
    for r in results:
        sys.stderr.write(r.line() + "\n")
    body = {"passed": all(r.passed for r in results),
            "suites": [{"suite": r.name, "title": r.title, "passed": r.passed} for r in results]}
    arts = [(f"verify_{a.suite}.json", dumps(body))]
    if not body["passed"]:
        raise VerificationFailed({"error": "suite failure", "artifacts": arts})
    return arts


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="coronaorbits", description="Corona-graph matchings and Borel orbit censuses.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--out-dir", default=os.environ.get(OUT_ENV),
                   help=f"write artifacts here (default ${OUT_ENV}, else stdout)")
    p.add_argument("--threads", type=pos, default=1, help="worker cap (computation is single-process)")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_args(sp):
        sp.add_argument("--variant", required=True, choices=sorted(VARIANT_NAMES))
        sp.add_argument("--p", type=nat, required=True)
        sp.add_argument("--k", type=nat, required=True)

    sp = sub.add_parser("count", help="number of k-matchings")
    graph_args(sp)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("enumerate", help="list k-matchings in canonical order")
    graph_args(sp)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("roots", help="root decompositions of d_{m,n}, or the root set of one matching")
    sp.add_argument("--m", type=nat)
    sp.add_argument("--n", type=nat)
    sp.add_argument("--matching", help="matching JSON (or @file)")
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("rep", help="explicit orbit representative")
    sp.add_argument("kind", choices=("binary", "symplectic"))
    sp.add_argument("--matching", required=True, help="matching JSON (or @file)")
    sp.add_argument("--q", type=field, default=3)
    sp.set_defaults(func=cmd_rep)

    sp = sub.add_parser("classify", help="matching of a point (A, B)")
    sp.add_argument("--point", required=True, help='JSON {"A": rows, "B": rows} (or @file)')
    sp.add_argument("--q", type=field, required=True)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("dual", help="dual matching on the plain corona")
    sp.add_argument("--matching", required=True)
    sp.set_defaults(func=cmd_dual)

    sp = sub.add_parser("minus", help="image under index negation")
    sp.add_argument("--matching", required=True)
    sp.set_defaults(func=cmd_minus)

    sp = sub.add_parser("oracle", help="brute-force orbit census over F_q")
    sp.add_argument("kind", choices=("gl", "sp", "so"))
    sp.add_argument("--m", type=nat, required=True)
    sp.add_argument("--n", type=nat, required=True)
    sp.add_argument("--q", type=field, required=True)
    sp.add_argument("--budget", type=pos, default=oo.DEFAULT_BUDGET)
    sp.add_argument("--no-budget", action="store_true", help="lift the point budget")
    sp.add_argument("--format", choices=("json", "csv"), default="json", help="artifact printed first")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("bpoly", help="interpolate m -> b(m, n)")
    sp.add_argument("--n", type=nat, required=True)
    sp.add_argument("--extra", type=nat, default=2)
    sp.set_defaults(func=cmd_bpoly)

    sp = sub.add_parser("seq", help="a/b/c tables with provenance (CSV)")
    sp.add_argument("--family", choices=("a", "b", "c"), required=True)
    sp.add_argument("--limit", type=nat, required=True)
    sp.add_argument("--no-enumerate", action="store_true")
    sp.set_defaults(func=cmd_seq)

    sp = sub.add_parser("verify", help="acceptance suites")
    sp.add_argument("suite", help="suite name or 'all'")
    sp.set_defaults(func=cmd_verify)
    return p


def _check(a):
    if a.command == "roots" and not a.matching and (a.m is None or a.n is None):
        raise UsageError("roots needs --m and --n, or --matching")
    if a.command in ("count", "enumerate"):
        a.variant = VARIANT_NAMES[a.variant]
        try:
            GraphSpec(a.variant, a.p)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc


def _emit(arts, out_dir, stream):
    if out_dir:
        d = Path(out_dir)
        d.mkdir(parents=True, exist_ok=True)
        for name, text in arts:
            (d / name).write_text(text)
        stream.write(dumps({"written": [str(d / name) for name, _ in arts]}))
    else:
        stream.write(arts[0][1])


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _check(a)
        arts = a.func(a)
    except (UsageError, MatchingError) as exc:
        sys.stderr.write(f"coronaorbits: error: {exc}\n")
        return EXIT_USAGE
    except oo.BudgetExceeded as exc:
        stdout.write(dumps({"error": "budget exceeded", "required": str(exc.required), "budget": str(exc.budget)}))
        return EXIT_BUDGET
    except VerificationFailed as exc:
        rep = dict(exc.report)
        arts = rep.pop("artifacts", None)
        if arts and a.out_dir:
            _emit(arts, a.out_dir, sys.stderr)
        stdout.write(dumps(rep))
        return EXIT_VERIFY
    except (oo.TagMismatch, seqlab.IdentityMismatch, seqlab.InterpolationError,
            qr.ClassificationError, RootError) as exc:
        stdout.write(dumps({"error": type(exc).__name__, "detail": str(exc)}))
        return EXIT_VERIFY
    _emit(arts, a.out_dir, stdout)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
