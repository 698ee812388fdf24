"""Command line front end: ``shadowlab <command> ...``.

Exit status is 0 on success, 1 on a domain or parse error and 2 on a usage
error.  Every rational is printed as ``p/q``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bounds, construct, hgio, kknum, search
from .core import Hypergraph, ShadowLabError, format_ratio, max_degree, parse_ratio, shadow, shadow_ratio


def _emit(out, text: str) -> None:
    out.write(text if text.endswith("\n") else text + "\n")


def _read_hypergraph(path: str) -> Hypergraph:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ShadowLabError(f"cannot read {path}: {exc.strerror}") from None
    return hgio.parse_any(text)


def _write_hypergraph(out, h: Hypergraph, as_json: bool, comments=()) -> None:
    if as_json:
        _emit(out, hgio.format_json(h))
    else:
        out.write(hgio.format_text(h, comments))


# -- subcommands -----------------------------------------------------------


def cmd_shadow(args, out) -> int:
    h = _read_hypergraph(args.file)
    s = shadow(h)
    ratio = format_ratio(shadow_ratio(h)) if len(h) else None
    if args.json:
        _emit(out, json.dumps({"input": {"k": h.k, "n": h.n, "m": len(h)}, "shadow": hgio.to_json_obj(s), "ratio": ratio}))
    else:
        comments = [f"shadow of a {h.k}-uniform family with {len(h)} edges", f"|shadow| = {len(s)}"]
        if ratio:
            comments.append(f"ratio = {ratio}")
        out.write(hgio.format_text(s, comments))
    return 0


def cmd_fk(args, out) -> int:
    value = kknum.shadow_function(args.m, args.k)
    rep = kknum.k_binomial_representation(args.m, args.k) if args.m else None
    if args.json:
        _emit(out, json.dumps({"k": args.k, "m": args.m, "F": value, "terms": [list(t) for t in rep.terms] if rep else []}))
    elif rep:
        _emit(out, f"F_{args.k}({args.m}) = {value}; {args.m} = {rep}")
    else:
        _emit(out, f"F_{args.k}(0) = 0")
    return 0


def cmd_repr(args, out) -> int:
    rep = kknum.k_binomial_representation(args.m, args.k)
    if args.json:
        _emit(out, json.dumps({"k": args.k, "m": args.m, "terms": [list(t) for t in rep.terms]}))
    else:
        _emit(out, f"{args.m} = {rep}")
    return 0


def cmd_bound(args, out) -> int:
    report = bounds.best_bound(args.k, parse_ratio(args.d), parse_ratio(args.eps))
    if args.json:
        _emit(out, json.dumps(report.to_json()))
        return 0
    _emit(out, f"k = {report.k}, d = {format_ratio(report.d)}")
    for entry in report.bounds:
        where = f" (t={entry.t})" if entry.t is not None else ""
        _emit(out, f"  {entry.regime}{where}: {format_ratio(entry.value)}  [{entry.theorem}]")
    where = f" (t={report.best.t})" if report.best.t is not None else ""
    _emit(out, f"best {format_ratio(report.best.value)} via {report.best.regime}{where}")
    for note in report.notes:
        _emit(out, f"note: {note}")
    return 0


def cmd_construct(args, out) -> int:
    family = args.family
    if family == "shifted":
        h = construct.shifted(args.k, args.m)
    elif family == "clique":
        h = construct.clique(args.k, args.n)
    elif family == "low-degree":
        h = construct.low_degree_extremal(args.k, args.d, args.m)
    elif family == "clique-minus-matchings":
        h = construct.clique_minus_matchings(args.k, args.n, args.s)
    else:
        h = construct.prop16_family(args.k, args.t)
    _write_hypergraph(out, h, args.json, [f"{family} family, {len(h)} edges"])
    return 0


_OBJECTIVE = {"ratio": "min_ratio", "shadow": "min_shadow"}


def _result_json(res: search.SearchResult) -> dict:
    value = res.value
    if isinstance(value, Fraction):
        value = format_ratio(value)
    return {
        "k": res.spec.k,
        "n_max": res.spec.n_max,
        "d": res.spec.d,
        "m": res.spec.m,
        "objective": res.spec.objective,
        "symmetry": res.spec.symmetry,
        "value": value,
        "feasible": res.feasible,
        "exhaustive": res.exhaustive,
        "nodes_explored": res.nodes_explored,
        "pruned": res.pruned,
        "audited": res.audited,
        "optimal_degree_sequences": [list(s) for s in res.optimal_degree_sequences],
        "witness": hgio.to_json_obj(res.witness) if res.witness else None,
    }


def cmd_search(args, out) -> int:
    spec = search.SearchSpec(
        args.k, args.n_max, args.d, args.size, _OBJECTIVE[args.objective], args.symmetry
    )
    res = search.run_search(spec, budget=args.budget, threads=args.threads)
    summary = _result_json(res)
    if args.json:
        _emit(out, json.dumps(summary))
        return 0
    comments = [
        f"{k} = {json.dumps(v)}" for k, v in summary.items() if k not in ("witness", "optimal_degree_sequences")
    ]
    if res.witness is None:
        _emit(out, "\n".join(f"# {c}" for c in comments))
        _emit(out, "# no family satisfies the constraints")
        return 0
    out.write(hgio.format_text(res.witness, comments))
    return 0


# -- verify ----------------------------------------------------------------


def _line(out, ok: bool, text: str) -> bool:
    _emit(out, f"{'PASS' if ok else 'FAIL'} {text}")
    return ok


def verify_low_degree(args, out) -> bool:
    k, d = args.k, args.d
    m_max = args.m_max or 6
    ok = True
    for m in range(1, m_max + 1):
        expected = bounds.bound_low_degree(k, d, m)
        built = construct.low_degree_extremal(k, d, m)
        n_max = args.n_max or built.n
        res = search.enumerate_min_shadow(
            search.SearchSpec(k, n_max, d, m, "min_shadow", _symmetry(n_max, args.symmetry)),
            budget=args.budget,
            threads=args.threads,
        )
        built_ok = len(shadow(built)) == expected and max_degree(built) <= d
        if res.witness is None:
            _emit(out, f"INFEASIBLE m={m}: no family with max degree <= {d} fits on {n_max} vertices")
            ok &= built_ok and res.exhaustive
            continue
        ok &= _line(
            out,
            res.exhaustive and res.value == expected and built_ok,
            f"m={m}: min shadow {res.value}, formula {expected}, construction {len(shadow(built))}",
        )
    return ok


def _symmetry(n_max: int, requested: str | None) -> str:
    if requested:
        return requested
    return "full_canonical" if n_max <= search.FULL_CANONICAL_MAX_N else "first_edge_canonical"


def _certify(args, out, d: int, reference: Hypergraph | None) -> bool:
    cert = search.certify_bound(
        args.k, d, args.t, args.n_max, symmetry=args.symmetry, budget=args.budget, threads=args.threads
    )
    if cert.minimum is None:
        return _line(out, False, f"no family with max degree <= {d} on {args.n_max} vertices")
    extra = ""
    if reference is not None and cert.witness is not None:
        extra = f", witness isomorphic to reference: {search.isomorphic(cert.witness, reference)}"
    ok = cert.sound and cert.attained and cert.exhaustive
    _line(
        out,
        ok,
        f"k={args.k} t={args.t} d={d}: witness ratio {format_ratio(cert.minimum)}, "
        f"bound {format_ratio(cert.claimed)} ({cert.regime}), attained={cert.attained}{extra}",
    )
    if cert.witness is not None:
        out.write(hgio.format_text(cert.witness, ["witness"]))
    return ok


def verify_long_interval(args, out) -> bool:
    d = args.d if args.d is not None else bounds.long_interval_degree(args.k, args.t)
    args.n_max = args.n_max or args.t + 1
    return _certify(args, out, d, construct.clique(args.k, args.t + 1))


def verify_short_interval(args, out) -> bool:
    lo, hi = bounds.short_interval_window(args.k, args.t)
    d = args.d if args.d is not None else hi - 1
    if d < lo:
        raise ShadowLabError(f"no integer degree bound in the window [{format_ratio(lo)}, {hi})")
    args.n_max = args.n_max or args.t + 2
    reference = None
    if (args.t + 2) % args.k == 0:
        try:
            reference = construct.clique_minus_matchings(args.k, args.t + 2, hi - d)
        except ShadowLabError:
            reference = None
    return _certify(args, out, d, reference)


def verify_counterexample(args, out) -> bool:
    k, t = args.k, args.t
    h = construct.prop16_family(k, t)
    p = construct.prop16_parameters(k, t)
    ratio = shadow_ratio(h)
    degs = {v: 0 for v in range(1, h.n + 1)}
    for e in h.edges:
        for v in e:
            degs[v] += 1
    classes = sorted(set(degs.values()))
    expected_classes = sorted({p["degree_top"], p["degree_middle"], p["degree_low"]})
    clique_ratio = Fraction(k, t - k + 2)
    ok = (
        len(h) == p["size"]
        and len(shadow(h)) == p["shadow"]
        and max_degree(h) == p["max_degree"]
        and ratio < clique_ratio
        and classes == expected_classes
    )
    return _line(
        out,
        ok,
        f"k={k} t={t}: {len(h)} edges, shadow {len(shadow(h))}, max degree {max_degree(h)}, "
        f"ratio {format_ratio(ratio)} < {format_ratio(clique_ratio)}, degree classes {classes}",
    )


def verify_kk(args, out) -> bool:
    k = args.k
    m_max = args.m_max or 20
    ok = True
    for m in range(1, m_max + 1):
        fk = kknum.shadow_function(m, k)
        built = len(shadow(construct.shifted(k, m)))
        text = f"m={m}: F_{k}(m) = {fk}, shifted {built}"
        good = built == fk
        if args.n_max and m <= kknum.binom(args.n_max, k):
            res = search.enumerate_min_shadow(
                search.SearchSpec(k, args.n_max, m, m, "min_shadow", _symmetry(args.n_max, args.symmetry)),
                budget=args.budget,
                threads=args.threads,
            )
            text += f", search {res.value}"
            good &= res.exhaustive and res.value == fk
        ok &= _line(out, good, text)
    return ok


VERIFIERS = {
    "thm1.2": (verify_low_degree, ("k", "d")),
    "thm1.5": (verify_long_interval, ("k", "t")),
    "thm1.7": (verify_short_interval, ("k", "t")),
    "prop1.6": (verify_counterexample, ("k", "t")),
    "kk-tightness": (verify_kk, ("k",)),
}


def cmd_verify(args, out) -> int:
    fn, required = VERIFIERS[args.name]
    missing = [f"--{r}" for r in required if getattr(args, r) is None]
    if missing:
        raise _UsageError(f"verify {args.name} needs {', '.join(missing)}")
    ok = fn(args, out)
    _emit(out, f"{'PASS' if ok else 'FAIL'} {args.name}")
    return 0 if ok else 1


class _UsageError(Exception):
    pass


# -- parser ----------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {value}")
    return value


def _rational_arg(text: str) -> str:
    try:
        Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    return text


def _search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threads", type=_positive, default=1, help="worker processes (env SHADOWLAB_THREADS wins)")
    p.add_argument("--budget", type=_positive, default=search.DEFAULT_BUDGET, help="node budget")
    p.add_argument("--symmetry", choices=search.SYMMETRIES, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shadowlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("shadow", help="shadow of a hypergraph file ('-' for stdin)")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_shadow)

    p = sub.add_parser("fk", help="Kruskal-Katona shadow function F_k(m)")
    p.add_argument("k", type=_positive)
    p.add_argument("m", type=_nonnegative)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fk)

    p = sub.add_parser("repr", help="k-binomial representation of m")
    p.add_argument("k", type=_positive)
    p.add_argument("m", type=_positive)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_repr)

    p = sub.add_parser("bound", help="best shadow-ratio lower bound for (k, d)")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--d", type=_rational_arg, required=True)
    p.add_argument("--eps", type=_rational_arg, default="1/1048576")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("construct", help="emit one of the named families")
    fam = p.add_subparsers(dest="family", required=True)
    for name, flags in (
        ("shifted", ("k", "m")),
        ("clique", ("k", "n")),
        ("low-degree", ("k", "d", "m")),
        ("clique-minus-matchings", ("k", "n", "s")),
        ("prop16", ("k", "t")),
    ):
        q = fam.add_parser(name)
        for flag in flags:
            kind = _nonnegative if (name, flag) in {("shifted", "m"), ("clique-minus-matchings", "s")} else _positive
            q.add_argument(f"--{flag}", type=kind, required=True)
        q.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("search", help="exhaustive extremal search")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--n-max", type=_positive, required=True)
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--size", type=_positive, default=None)
    p.add_argument("--objective", choices=tuple(_OBJECTIVE), default="ratio")
    p.add_argument("--json", action="store_true")
    _search_flags(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="certify a named result at given parameters")
    p.add_argument("name", choices=tuple(VERIFIERS))
    p.add_argument("--k", type=_positive)
    p.add_argument("--t", type=_positive)
    p.add_argument("--d", type=_positive)
    p.add_argument("--m-max", type=_positive)
    p.add_argument("--n-max", type=_positive)
    _search_flags(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "command", None) == "search" and args.symmetry is None:
        args.symmetry = "first_edge_canonical"
    try:
        return args.func(args, out)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"shadowlab: error: {exc}", file=sys.stderr)
        return 2
    except ShadowLabError as exc:
        print(f"shadowlab: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
