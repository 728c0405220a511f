"""Command-line front end: ``graphcx <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

from . import __version__
from . import characters as ch
from . import complexes as cxm
from . import homology as ho
from . import morse as mo
from . import posets as po
from . import series as se
from . import tables as tb
from . import verify as vf

EXIT_OK, EXIT_FAIL, EXIT_INFEASIBLE = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclass
class Report:
    """What every subcommand produces; rendered once at the end."""

    title: str
    columns: list[str]
    rows: list[list]
    payload: object = None          # JSON body; defaults to the rows as records
    ok: bool = True
    notes: list[str] = field(default_factory=list)


def parse_range(text: str | None) -> list[int] | None:
    """``'7'``, ``'3-9'`` or ``'3,5,7'``."""
    if text is None:
        return None
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part[1:]:
            a, b = part.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


def _single(text: str | None, flag: str) -> int:
    vals = parse_range(text)
    if vals is None or len(vals) != 1:
        raise UsageError(f"{flag} needs a single integer")
    return vals[0]


# ---------------------------------------------------------------------------
# rendering

def _cell(v) -> str:
    return "" if v is None else str(v)


def render(rep: Report, fmt: str) -> str:
    if fmt == "json":
        body = rep.payload if rep.payload is not None else [
            dict(zip(rep.columns, row)) for row in rep.rows]
        doc = {"title": rep.title, "ok": rep.ok, "result": body}
        if rep.notes:
            doc["notes"] = rep.notes
        return json.dumps(doc, indent=2, sort_keys=False, ensure_ascii=False) + "\n"
    cells = [[_cell(v) for v in row] for row in rep.rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(rep.columns)
        w.writerows(cells)
        return buf.getvalue()
    if fmt == "markdown":
        lines = [f"**{rep.title}**", "", "| " + " | ".join(rep.columns) + " |",
                 "|" + "|".join("---" for _ in rep.columns) + "|"]
        lines += ["| " + " | ".join(r) + " |" for r in cells]
        lines += [""] + [f"- {n}" for n in rep.notes] if rep.notes else []
        return "\n".join(lines) + "\n"
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(rep.columns)]
    lines = [rep.title, "  ".join(c.ljust(w) for c, w in zip(rep.columns, widths)).rstrip()]
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines += rep.notes
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# complexes

FAMILIES = ("not-connected", "matching", "chessboard", "paths-cycles", "paths-cycles-no-c4",
            "delta-k", "delta-k1k")


def build_complex(args) -> cxm.SimplicialComplex:
    n = _single(args.n, "--n")
    fam = args.family
    if fam == "not-connected":
        i = 2 if args.i is None else args.i
        k = 2 if args.k is None else _single(args.k, "--k")
        return cxm.not_i_connected_complex(n, k, i)
    if fam == "matching":
        return cxm.matching_complex(n)
    if fam == "chessboard":
        return cxm.chessboard_complex(n, n if args.k is None else _single(args.k, "--k"))
    if fam in ("paths-cycles", "paths-cycles-no-c4"):
        return cxm.paths_cycles_complex(n, fam.endswith("no-c4"))
    k = _single(args.k, "--k")
    return mo.build_delta_k(n, k) if fam == "delta-k" else mo.build_delta_k1k(n, k)


def _limit(args, limit):
    return None if args.force else limit


def cmd_complex(args) -> Report:
    cx = build_complex(args)
    cx.enumerate(max_faces=_limit(args, tb.FULL_FACE_LIMIT))
    fv = cxm.f_vector(cx)
    rows = [[d, c] for d, c in sorted(fv.as_dict().items())]
    payload = {"name": cx.name, "vertices": cx.size, "dimension": cx.dimension,
               "f_vector": {str(d): c for d, c in sorted(fv.as_dict().items())},
               "reduced_euler": fv.reduced_euler}
    return Report(f"{cx.name}: {cx.size} vertices, dimension {cx.dimension}", ["dim", "faces"], rows,
                  payload, notes=[f"reduced Euler characteristic {fv.reduced_euler}"])


def cmd_homology(args) -> Report:
    cx = build_complex(args)
    primes = parse_range(args.mod_p) or []
    if args.dim is not None:
        cx.window(args.dim, _limit(args, tb.WINDOW_FACE_LIMIT))
        groups = {args.dim: ho.homology_window(cx, args.dim)}
        dims = [args.dim]
    else:
        cx.enumerate(max_faces=_limit(args, tb.FULL_FACE_LIMIT))
        groups = ho.reduced_homology(cx)
        dims = sorted(groups)
    columns = ["dim", "group"] + [f"betti mod {p}" for p in primes]
    rows = []
    payload = []
    for d in dims:
        g = groups[d]
        mods = [ho.betti_mod_p(cx, d, p) for p in primes]
        rows.append([d, str(g), *mods])
        entry = g.to_json(d)
        if primes:
            entry["betti_mod_p"] = {str(p): b for p, b in zip(primes, mods)}
        payload.append(entry)
    return Report(f"reduced homology of {cx.name}", columns, rows, payload)


# ---------------------------------------------------------------------------
# morse

def cmd_morse(args) -> Report:
    n = _single(args.n, "--n")
    k = _single(args.k, "--k")
    cx = mo.build_delta_k1k(n, k).enumerate(max_faces=_limit(args, tb.FULL_FACE_LIMIT))
    M = mo.apm_matching(n, k, cx)
    if args.action == "verify":
        rep = mo.is_acyclic_perfect_matching(cx, M)
        steps = {s: sum(1 for v in M.steps.values() if v == s) for s in (1, 2, 3)}
        rows = [["faces", cx.num_faces()], ["pairs", len(M)]] + [
            [f"step {s} pairs", c] for s, c in steps.items()] + [[k2, v] for k2, v in rep.as_dict().items()]
        payload = {"n": n, "k": k, "faces": cx.num_faces(), "pairs": len(M),
                   "steps": {str(s): c for s, c in steps.items()}, **rep.as_dict()}
        return Report(f"matching on Delta({k - 1},{k}), n={n}", ["property", "value"], rows, payload, rep.ok)
    trace = mo.collapse_by_matching(cx, M)
    rows = [[i + 1, str(cxm._bits(a)), str(cxm._bits(b))] for i, (a, b) in enumerate(trace.steps)]
    payload = [{"step": i + 1, "face": cxm._bits(a), "coface": cxm._bits(b)}
               for i, (a, b) in enumerate(trace.steps)]
    return Report(f"collapse of Delta({k - 1},{k}), n={n}: {len(trace)} steps",
                  ["step", "face", "coface"], rows, payload)


# ---------------------------------------------------------------------------
# posets

def cmd_poset(args) -> Report:
    k = 2 if args.k is None else _single(args.k, "--k")
    ns = parse_range(args.n) or []
    if args.action == "mobius":
        rows = []
        for n in ns:
            S = po.sigma_lattice(n, k)
            rows.append([n, len(S), po.moebius(S)])
        return Report(f"Moebius function of Sigma_(n,{k})", ["n", "elements", "mu"], rows)
    if args.action == "ranks":
        rows = []
        payload = []
        for n in ns:
            rep = po.rank_and_chain_spectrum(po.sigma_lattice(n, k))
            ok = "" if not rep.rank_checked else rep.rank_ok
            rows.append([n, rep.length, " ".join(map(str, sorted(rep.chain_lengths))), ok])
            payload.append({"n": n, **rep.as_dict()})
        good = all(p["rank_ok"] is not False for p in payload)
        return Report(f"ranks and maximal chains of Sigma_(n,{k})",
                      ["n", "length", "chain lengths", "rank function ok"], rows, payload, good)
    rows = []
    for n in ns:
        counts: dict[str, int] = {}
        for t in po.classify_covers(po.sigma_lattice(n, k)).values():
            counts[t] = counts.get(t, 0) + 1
        rows.append([n] + [counts.get(t, 0) for t in ("i", "ii", "iii")])
    return Report(f"cover types of Sigma_(n,{k})", ["n", "type i", "type ii", "type iii"], rows)


# ---------------------------------------------------------------------------
# series

def cmd_series(args) -> Report:
    order = args.order
    fam = args.family
    if fam == "table6":
        res = tb.compute_table("6", parse_range(args.n) or range(1, order))
        return _table_report(res)
    if fam in ("nminus3", "cyclepath"):
        fn = se.dual_euler_series_nminus3 if fam == "nminus3" else se.cycles_paths_series
        s, egf = fn(order)
        title = f"{fam} series to order {order}"
    else:
        k = _single(args.k, "--k")
        s = {"tau": lambda: se.p_poly(k, order).log(),
             "mobius": lambda: se.mobius_generating_series(k, order),
             "alpha": lambda: (se.p_poly(k - 1, order) / se.p_poly(k, order)).log()
             .truncate(order - 1).integrate()}[fam]()
        egf = se.EgfSequence.of(s)
        title = f"{fam}_{k} to order {order}"
    ns = [n for n in (parse_range(args.n) or range(len(egf))) if 0 <= n < len(egf)]
    rows = [[n, str(s.coeffs[n]), egf[n]] for n in ns]
    payload = [{"n": n, "coefficient": str(s.coeffs[n]), "n!*coefficient": egf[n]} for n in ns]
    return Report(title, ["n", "coefficient", "n!*coefficient"], rows, payload)


# ---------------------------------------------------------------------------
# characters

def cmd_character(args) -> Report:
    if args.action == "wn":
        ns = parse_range(args.n) or list(range(3, 12))
        rows = [[n, ch.trivial_multiplicity(n)] for n in ns]
        return Report("multiplicity of the trivial character on C_n", ["n", "w_n"], rows)
    n = _single(args.n, "--n")
    om = ch.omega_n2(n).integer_values()
    rows = [[" ".join(map(str, lam)), ch.class_size(lam), v] for lam, v in om.items()]
    payload = {" ".join(map(str, lam)): v for lam, v in om.items()}
    return Report(f"omega_{n}^2 by cycle type", ["cycle type", "class size", "value"], rows, payload)


# ---------------------------------------------------------------------------
# tables and verification

def _table_report(res: tb.TableResult) -> Report:
    rows = []
    for r in res.rows:
        cells = "; ".join(f"{d}: {v}" for d, v in sorted(r.computed.items(), key=lambda kv: str(kv[0])))
        diff = "; ".join(f"{d}: expected {r.expected.get(d)}" for d in sorted(r.expected, key=str)
                         if r.expected.get(d) != r.computed.get(d))
        rows.append([r.key, cells, r.status, r.method, diff])
    notes = [f"{r.key}: {note}" for r in res.rows for note in r.notes]
    return Report(res.caption, ["row", "computed", "status", "method", "difference"], rows,
                  res.as_dict(), res.ok, notes)


def cmd_table(args) -> Report:
    res = tb.compute_table(args.name, parse_range(args.n), force=args.force, jobs=args.jobs)
    rep = _table_report(res)
    viol = tb.vanishing_violations(res)
    if viol:
        rep.ok = False
        rep.notes.append(f"connectivity bound violated at {viol}")
    return rep


def cmd_verify(args) -> Report:
    results = vf.run(args.suite)
    rows = [[suite, c.name, "pass" if c.passed else "FAIL", c.detail]
            for suite, checks in results.items() for c in checks]
    payload = {suite: [c.as_dict() for c in checks] for suite, checks in results.items()}
    ok = all(c.passed for checks in results.values() for c in checks)
    return Report(f"verify {args.suite}", ["suite", "check", "result", "detail"], rows, payload, ok)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("plain", "markdown", "csv", "json"), default="plain")
    common.add_argument("--force", action="store_true", help="lift the feasibility guards")
    common.add_argument("--jobs", type=int, default=1)

    p = argparse.ArgumentParser(prog="graphcx", description="Homology and combinatorics of graph complexes.")
    p.add_argument("--version", action="version", version=f"graphcx {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def cx_args(sp):
        sp.add_argument("--family", choices=FAMILIES, default="not-connected")
        sp.add_argument("--n", required=True)
        sp.add_argument("--k")
        sp.add_argument("--i", type=int)

    sp = sub.add_parser("complex", parents=[common], help="f-vector of a graph complex")
    cx_args(sp)
    sp.set_defaults(func=cmd_complex)

    sp = sub.add_parser("homology", parents=[common], help="reduced integral homology")
    cx_args(sp)
    sp.add_argument("--dim", type=int, help="compute only this dimension from a window")
    sp.add_argument("--mod-p", help="primes for mod-p Betti numbers, e.g. 2,3,5")
    sp.set_defaults(func=cmd_homology)

    sp = sub.add_parser("morse", parents=[common], help="the acyclic matching on Delta(k-1,k)")
    sp.add_argument("action", choices=("verify", "collapse"))
    sp.add_argument("--n", required=True)
    sp.add_argument("--k", required=True)
    sp.set_defaults(func=cmd_morse)

    sp = sub.add_parser("poset", parents=[common], help="lattices of block-closed graphs")
    sp.add_argument("action", choices=("mobius", "ranks", "covers"))
    sp.add_argument("--n", required=True)
    sp.add_argument("--k")
    sp.set_defaults(func=cmd_poset)

    sp = sub.add_parser("series", parents=[common], help="exponential generating functions")
    sp.add_argument("--family", choices=("tau", "mobius", "alpha", "nminus3", "cyclepath", "table6"),
                    required=True)
    sp.add_argument("--k", default="2")
    sp.add_argument("--n")
    sp.add_argument("--order", type=int, default=se.DEFAULT_ORDER)
    sp.set_defaults(func=cmd_series)

    sp = sub.add_parser("character", parents=[common], help="characters of the symmetric group")
    sp.add_argument("action", choices=("omega", "wn"))
    sp.add_argument("--n")
    sp.set_defaults(func=cmd_character)

    sp = sub.add_parser("table", parents=[common], help="recompute a table and diff it against stored values")
    sp.add_argument("name", choices=("1", "2", "3", "4", "5", "6"))
    sp.add_argument("--n", help="rows, e.g. 4-6")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("verify", parents=[common], help="run invariant suites")
    sp.add_argument("suite", choices=(*vf.SUITES, "all"))
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        rep = args.func(args)
    except (tb.Infeasible, cxm.TooLarge) as exc:
        print(f"graphcx: refused: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (UsageError, cxm.ComplexError, mo.MorseError, po.PosetError, se.SeriesError,
            ch.CharacterError, ho.HomologyError) as exc:
        print(f"graphcx: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    sys.stdout.write(render(rep, args.format))
    return EXIT_OK if rep.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
