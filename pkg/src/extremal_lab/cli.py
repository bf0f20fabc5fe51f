"""Command-line front end: ``extremal-lab <subcommand> [flags]``.

Exit status: 0 success, 2 invalid request, 3 internal error, 4 a lemma check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence, TextIO

from . import graph6
from .cache import ResultCache, default_cache_path
from .constructions import Family, build_construction, construction_id, derive_params, theorem_evaluation
from .errors import CacheIntegrityError, ExtremalLabError
from .invariants import block_count, circumference, count_cliques, matching_number
from .lemmas import LEMMAS, check_graph, run_lemma_checks
from .search import (
    HARD_MAX_ORDER,
    SearchOptions,
    SearchRecord,
    comparison_row,
    extremal_search,
    search_params,
    sweep,
)

EXIT_OK, EXIT_INVALID, EXIT_INTERNAL, EXIT_LEMMA = 0, 2, 3, 4

CONSTRUCT_COLUMNS = ("id", "family", "n", "k", "s", "r", "order", "edges", "cliques", "graph6")
THEOREM_COLUMNS = ("n", "k", "s", "r", "branch", "families", "values", "excluded", "value")
SEARCH_COLUMNS = ("n", "k", "s", "r", "value", "theorem_value", "theorem_gap", "matching_value",
                  "nodes_explored", "maximal_graphs_seen", "wall_time", "cached", "witness")
LEMMA_COLUMNS = ("lemma", "seed", "graph6", "status", "witness")


class UsageError(Exception):
    """Raised instead of exiting so that ``main`` controls the exit status."""


class _Parser(argparse.ArgumentParser):
    out: TextIO | None = None

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")

    def _print_message(self, message, file=None):
        if message:
            (_Parser.out or file or sys.stdout).write(message)


def _at_least(lo: int):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if value < lo:
            raise argparse.ArgumentTypeError(f"must be at least {lo}, got {value}")
        return value
    return parse


def _int_list(text: str) -> list[int]:
    """``7``, ``7,9,11`` or ``7..9`` (inclusive)."""
    out = []
    for part in text.split(","):
        part = part.strip()
        try:
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected integers like 7, 7,8 or 7..9, got {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("empty range")
    return out


def _k_spec(text: str):
    text = text.replace(" ", "")
    if text.startswith("n+"):
        try:
            return int(text[2:])
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected n+<int>, got {text!r}") from None
    return _int_list(text)


# -- output ------------------------------------------------------------------


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6f}"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _emit(out: TextIO, fmt: str, command: str, rows: list[dict], columns: Sequence[str],
          meta: dict | None = None, lines: list[str] | None = None) -> None:
    meta = meta or {}
    if fmt == "json":
        doc = {"command": command, **meta, "records": rows}
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(c)) for c in columns])
        out.write(buf.getvalue())
    else:
        for key, value in meta.items():
            out.write(f"# {key}={_cell(value)}\n")
        if lines is not None:
            out.write("".join(line + "\n" for line in lines))
            return
        table = [list(columns)] + [[_cell(row.get(c)) for c in columns] for row in rows]
        widths = [max(len(r[i]) for r in table) for i in range(len(columns))]
        for r in table:
            out.write("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() + "\n")


def _read_graphs(path: str | None, stdin: TextIO):
    if path is None or path == "-":
        text = stdin.read()
    else:
        with open(path) as fh:
            text = fh.read()
    return graph6.read_stream(text)


# -- subcommands -------------------------------------------------------------


def _cmd_construct(args, out, stdin) -> int:
    family = Family.parse(args.family)
    params = derive_params(args.n, args.k, args.s, args.r)
    g = build_construction(family, params)
    code = graph6.encode(g)
    row = {"id": construction_id(family, params), "family": family.value, "n": params.n, "k": params.k,
           "s": params.s, "r": params.r, "order": g.order, "edges": g.edge_count,
           "cliques": count_cliques(g, params.r), "graph6": code}
    summary = f"{row['id']} order={g.order} edges={g.edge_count} K{params.r}={row['cliques']}"
    _emit(out, args.format, "construct", [row], CONSTRUCT_COLUMNS, lines=[code, summary])
    return EXIT_OK


def _cmd_invariants(args, out, stdin) -> int:
    rs = args.r or [2, 3]
    columns = ["graph6", "order", "edges"] + [f"K{r}" for r in rs] + ["nu", "circumference", "blocks"]
    rows = []
    for g in _read_graphs(args.input, stdin):
        row = {"graph6": graph6.encode(g), "order": g.order, "edges": g.edge_count}
        for r in rs:
            row[f"K{r}"] = count_cliques(g, r)
        row.update(nu=matching_number(g), circumference=circumference(g), blocks=block_count(g))
        rows.append(row)
    _emit(out, args.format, "invariants", rows, columns)
    return EXIT_OK


def _cmd_theorem(args, out, stdin) -> int:
    ev = theorem_evaluation(derive_params(args.n, args.k, args.s, args.r))
    row = {"n": args.n, "k": args.k, "s": args.s, "r": args.r, "branch": ev.branch,
           "families": ";".join(f.value for f in ev.families),
           "values": ";".join(f"{f.value}={v}" for f, v in ev.values.items()),
           "excluded": ";".join(f.value for f in ev.excluded), "value": ev.value}
    if args.format == "table":
        lines = [f"branch: {ev.branch}"]
        for f in ev.families:
            lines.append(f"{f.value}: {ev.values[f]}" if f in ev.values else f"{f.value}: excluded ({ev.excluded[f]})")
        lines.append(f"value: {ev.value}")
        _emit(out, "table", "theorem", [row], THEOREM_COLUMNS, lines=lines)
    else:
        _emit(out, args.format, "theorem", [row], THEOREM_COLUMNS)
    return EXIT_OK


def _options(args) -> SearchOptions:
    dedup = {"auto": None, "on": True, "off": False}[args.dedup]
    return SearchOptions(dedup, args.jobs, args.split_depth, not args.no_seed_incumbent, args.max_order)


def _open_cache(args, err: TextIO) -> ResultCache | None:
    if args.no_cache:
        return None
    cache = ResultCache(args.cache or default_cache_path())
    for bad in cache.corrupt:
        err.write(f"warning: cache {cache.path} line {bad.lineno} skipped: {bad.reason}\n")
    return cache


def _record_row(rec: SearchRecord, cached: bool) -> dict:
    row = comparison_row(rec, cached)
    return {"n": row.n, "k": row.k, "s": row.s, "r": row.r, "value": rec.value,
            "theorem_value": row.theorem_value, "theorem_gap": rec.theorem_gap,
            "matching_value": row.matching_value, "nodes_explored": rec.nodes_explored,
            "maximal_graphs_seen": rec.maximal_graphs_seen, "wall_time": rec.wall_time,
            "cached": cached, "witness": rec.witness}


def _cmd_search(args, out, stdin, err) -> int:
    opts = _options(args)
    search_params(args.n, args.k, args.s, args.r, opts.max_order)
    cache = _open_cache(args, err)
    key = (args.n, args.k, args.s, args.r)
    rec = cache.get(key) if cache is not None else None
    cached = rec is not None
    if rec is None:
        rec = extremal_search(key, opts)
        if cache is not None:
            cache.put(rec)
    _emit(out, args.format, "search", [_record_row(rec, cached)], SEARCH_COLUMNS)
    return EXIT_OK


def _cmd_sweep(args, out, stdin, err) -> int:
    opts = _options(args)
    tuples = []
    for n in args.n:
        ks = [n + args.k] if isinstance(args.k, int) else args.k
        for k in ks:
            for s in args.s:
                for r in args.r:
                    search_params(n, k, s, r, opts.max_order)
                    tuples.append((n, k, s, r))
    cache = _open_cache(args, err)
    result = sweep(tuples, opts, cache)
    rows = [_record_row(rec, row.cached) for rec, row in zip(result.records, result.table)]
    _emit(out, args.format, "sweep", rows, SEARCH_COLUMNS)
    return EXIT_OK


def _cmd_check_lemma(args, out, stdin) -> int:
    if args.input is not None:
        if args.lemma == "binom":
            raise UsageError("--input: the binom lemma takes no graphs")
        records = [check_graph(args.lemma, g, k=args.k, s=args.s, p=args.p, seed=args.seed)
                   for g in _read_graphs(args.input, stdin)]
    else:
        records = list(run_lemma_checks(args.lemma, args.trials, args.seed, k=args.k, s=args.s))
    rows = [{"lemma": r.lemma, "seed": r.seed, "graph6": r.graph6,
             "status": "pass" if r.passed else "fail", "witness": r.witness} for r in records]
    failed = sum(not r.passed for r in records)
    meta = {"seed": args.seed, "lemma": args.lemma, "trials": len(records), "failed": failed}
    _emit(out, args.format, "check-lemma", rows, LEMMA_COLUMNS, meta=meta,
          lines=[r.to_line() for r in records])
    return EXIT_LEMMA if failed else EXIT_OK


# -- parser ------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "table"), default="table",
                   help="output format (default: table)")


def _search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--jobs", type=_at_least(1), default=1, help="worker threads (default 1)")
    p.add_argument("--dedup", choices=("auto", "on", "off"), default="auto",
                   help="isomorph rejection at the split depth (auto: on for n >= 8)")
    p.add_argument("--split-depth", type=_at_least(0), default=12,
                   help="edge decisions before work is split (rounded up to a full row)")
    p.add_argument("--max-order", type=_at_least(1), default=10,
                   help=f"largest n accepted (hard limit {HARD_MAX_ORDER})")
    p.add_argument("--no-seed-incumbent", action="store_true",
                   help="start from no incumbent instead of the best simple free graph")
    p.add_argument("--cache", help="result cache file (default: $EXTREMAL_LAB_CACHE or "
                                   "~/.cache/extremal_lab/search.jsonl)")
    p.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="extremal-lab",
                     description="Constructions, invariants, lemma checks and exact searches for "
                                 "ex(n, K_r, {C_>=k, M_s+1}).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    fmt = argparse.RawDescriptionHelpFormatter

    p = sub.add_parser("construct", help="build one extremal construction", formatter_class=fmt,
                       epilog="CSV columns: " + ",".join(CONSTRUCT_COLUMNS))
    p.add_argument("--family", required=True, help="g1..g6 or star")
    p.add_argument("--n", type=_at_least(1), required=True)
    p.add_argument("--k", type=_at_least(5), required=True)
    p.add_argument("--s", type=_at_least(1), required=True)
    p.add_argument("--r", type=_at_least(0), default=2, help="clique size counted (default 2)")
    _common(p)

    p = sub.add_parser("invariants", help="invariants of graph6 input", formatter_class=fmt,
                       epilog="CSV columns: graph6,order,edges,K<r> for each --r in the given order,"
                              "nu,circumference,blocks")
    p.add_argument("--input", help="graph6 file, one graph per line (default: stdin)")
    p.add_argument("--r", type=_at_least(0), nargs="+", help="clique sizes to count (default 2 3)")
    _common(p)

    p = sub.add_parser("theorem", help="evaluate the theorem's family maximum", formatter_class=fmt,
                       epilog="CSV columns: " + ",".join(THEOREM_COLUMNS))
    p.add_argument("--n", type=_at_least(1), required=True)
    p.add_argument("--k", type=_at_least(5), required=True)
    p.add_argument("--s", type=_at_least(1), required=True)
    p.add_argument("--r", type=_at_least(0), default=2)
    _common(p)

    p = sub.add_parser("search", help="exact extremal number by exhaustive search", formatter_class=fmt,
                       epilog="CSV columns: " + ",".join(SEARCH_COLUMNS))
    p.add_argument("--n", type=_at_least(1), required=True)
    p.add_argument("--k", type=_at_least(3), required=True)
    p.add_argument("--s", type=_at_least(0), required=True)
    p.add_argument("--r", type=_at_least(2), default=2)
    _search_flags(p)
    _common(p)

    p = sub.add_parser("sweep", help="searches over a parameter grid", formatter_class=fmt,
                       epilog="Ranges: 7, 7,8,9 or 7..9; --k also accepts n+<int>.\n"
                              "CSV columns: " + ",".join(SEARCH_COLUMNS))
    p.add_argument("--n", type=_int_list, required=True)
    p.add_argument("--k", type=_k_spec, required=True)
    p.add_argument("--s", type=_int_list, required=True)
    p.add_argument("--r", type=_int_list, default=[2])
    _search_flags(p)
    _common(p)

    p = sub.add_parser("check-lemma", help="randomised or input-driven lemma checks", formatter_class=fmt,
                       epilog="CSV columns: " + ",".join(LEMMA_COLUMNS) + "\n"
                              "Table format prints one tab-separated record per line.")
    p.add_argument("--lemma", choices=LEMMAS, required=True)
    p.add_argument("--trials", type=_at_least(0), default=100)
    p.add_argument("--seed", type=int, default=0, help="first trial seed (default 0); trial i uses seed+i")
    p.add_argument("--input", help="check graph6 graphs from this file ('-' for stdin) instead of random ones")
    p.add_argument("--k", type=_at_least(3), default=5, help="cycle bound for contraction checks")
    p.add_argument("--s", type=_at_least(0), default=3, help="matching bound for contraction checks")
    p.add_argument("--p", type=_at_least(3), help="clique size + 1 for stability checks on --input")
    _common(p)
    return parser


def main(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
         stderr: TextIO | None = None, stdin: TextIO | None = None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    inp = stdin or sys.stdin
    parser = build_parser()
    _Parser.out = out
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_INVALID
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        if args.command in ("search", "sweep"):
            handler = {"search": _cmd_search, "sweep": _cmd_sweep}[args.command]
            return handler(args, out, inp, err)
        handler = {"construct": _cmd_construct, "invariants": _cmd_invariants,
                   "theorem": _cmd_theorem, "check-lemma": _cmd_check_lemma}[args.command]
        return handler(args, out, inp)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    except CacheIntegrityError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INTERNAL
    except (ExtremalLabError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        err.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
