"""Batch front end: invariant reports, predictions, oracle checks, girth reports.

Four subcommands over single diagrams or a corpus TSV:

* ``invariants`` -- crossing/state/graph data and the chromatic polynomial.
* ``predict`` -- extremal Khovanov prediction plus Jones tail/head runs.
* ``verify`` -- recompute predictions against the homology oracle, emit diffs.
* ``girth`` -- combine every bound into one GirthReport per corpus name.

Output is byte-deterministic: JSON with sorted keys, entries in input order.
Exit code 1 when any entry produced an error record or a nonempty diff.
"""

from __future__ import annotations

import argparse
import json
import multiprocessing
import os
import sys
from dataclasses import dataclass

from .chromatic import chromatic_polynomial
from .diagram import (
    LinkDiagram,
    all_negative_state,
    all_positive_state,
    assign_signs,
    mirror,
    n_grading,
    n_grading_head,
    parse_pd,
    state_graph,
)
from .extremal import (
    jones_head,
    jones_state_sum,
    jones_tail,
    kh_extremal_prediction,
    normalize_jones,
)
from .girth import girth_report
from .homology_core import khovanov_homology
from .multigraph import census

__all__ = ["CorpusEntry", "load_corpus", "main"]

_STATE_SUM_LIMIT = 20


@dataclass(frozen=True)
class CorpusEntry:
    """One corpus row; ``mirror`` records whether the run flips the diagram."""

    name: str
    pd: str
    signature: int | None = None
    mirror: bool = False


def load_corpus(
    path: str, mirror_all: bool = False, allow_duplicates: bool = False
) -> list[CorpusEntry]:
    """Read `name<TAB>pd<TAB>signature?` rows.

    Names must be unique, except when allow_duplicates is set: the girth
    command treats rows sharing a name as diagrams of one link.
    """
    entries: list[CorpusEntry] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) not in (2, 3):
                raise ValueError(f"{path}:{lineno}: expected 2 or 3 tab-separated fields")
            name = parts[0].strip()
            if not name:
                raise ValueError(f"{path}:{lineno}: empty name")
            if name in seen and not allow_duplicates:
                raise ValueError(f"{path}:{lineno}: duplicate name {name!r}")
            seen.add(name)
            signature = None
            if len(parts) == 3 and parts[2].strip():
                signature = int(parts[2])
            entries.append(CorpusEntry(name, parts[1].strip(), signature, mirror_all))
    return entries


def _diagram(entry: CorpusEntry) -> LinkDiagram:
    d = parse_pd(entry.pd)
    if entry.mirror:
        d = mirror(d)
    return assign_signs(d)


# -- per-entry pipelines ----------------------------------------------------------


def _invariants_one(entry: CorpusEntry, opts: dict) -> dict:
    d = _diagram(entry)
    s_plus = all_positive_state(d)
    s_minus = all_negative_state(d)
    g_plus = state_graph(d, s_plus)
    g_minus = state_graph(d, s_minus)
    poly = chromatic_polynomial(g_plus, cache_dir=opts.get("cache_dir"))
    return {
        "name": entry.name,
        "crossings": d.n,
        "c_plus": d.c_plus,
        "c_minus": d.c_minus,
        "s_plus": s_plus.size,
        "s_minus": s_minus.size,
        "n_low": n_grading(d),
        "n_high": n_grading_head(d),
        "graph_plus": census(g_plus).to_json(),
        "graph_minus": census(g_minus).to_json(),
        "chromatic_plus": poly.to_json(),
    }


def _predict_one(entry: CorpusEntry, opts: dict) -> dict:
    d = _diagram(entry)
    stats = census(state_graph(d, all_positive_state(d)))
    if stats.girth <= 2:
        return {
            "name": entry.name,
            "skipped": f"all-A girth {stats.girth} is below the prediction threshold",
        }
    pred = kh_extremal_prediction(d)
    out = {
        "name": entry.name,
        "girth": stats.girth,
        "prediction": pred.to_json(),
        "jones_tail": list(
            jones_tail(stats.p1, stats.girth, stats.n_k[stats.girth], d.c_minus)
        ),
    }
    head_stats = census(state_graph(d, all_negative_state(d)))
    if head_stats.girth > 2:
        out["jones_head"] = list(
            jones_head(head_stats.p1, head_stats.girth,
                       head_stats.n_k[head_stats.girth], d.c_plus)
        )
    return out


def _verify_one(entry: CorpusEntry, opts: dict) -> dict:
    d = _diagram(entry)
    budget = opts["max_crossings"]
    if d.n > budget:
        return {
            "name": entry.name,
            "error": f"{d.n} crossings exceed the oracle budget of {budget}",
        }
    stats = census(state_graph(d, all_positive_state(d)))
    if stats.girth <= 2:
        return {
            "name": entry.name,
            "skipped": f"all-A girth {stats.girth} is below the prediction threshold",
        }
    pred = kh_extremal_prediction(d)
    oracle = khovanov_homology(d, max_crossings=budget)
    diff = []
    checked = 0
    for (p, q), (rank, tor2) in sorted(pred.table.entries.items()):
        checked += 1
        got = (oracle.rank(p, q), oracle.tor2(p, q))
        if got != (rank, tor2):
            diff.append({
                "p": p, "q": q,
                "predicted": {"rank": rank, "tor2": tor2},
                "actual": {"rank": got[0], "tor2": got[1]},
            })
    for (p, q), tor2 in sorted(pred.torsion_only.items()):
        checked += 1
        if oracle.tor2(p, q) != tor2:
            diff.append({
                "p": p, "q": q,
                "predicted": {"tor2": tor2},
                "actual": {"tor2": oracle.tor2(p, q)},
            })
    return {"name": entry.name, "checked": checked, "diff": diff}


def _girth_one(group: list[CorpusEntry], opts: dict) -> dict:
    name = group[0].name
    diagrams = [_diagram(e) for e in group]
    jones = None
    for d in diagrams:
        if d.n <= _STATE_SUM_LIMIT:
            jones = normalize_jones(jones_state_sum(d))
            break
    kh = None
    for d in diagrams:
        if d.n <= opts["max_crossings"]:
            kh = khovanov_homology(d, max_crossings=opts["max_crossings"])
            break
    sigma = next((e.signature for e in group if e.signature is not None), None)
    if sigma is not None and group[0].mirror:
        sigma = -sigma
    report = girth_report(diagrams, jones=jones, kh=kh, sigma=sigma)
    return {"name": name, **report.to_json()}


_PIPELINES = {
    "invariants": _invariants_one,
    "predict": _predict_one,
    "verify": _verify_one,
    "girth": _girth_one,
}


def _run_one(task: tuple[str, object, dict]) -> dict:
    command, payload, opts = task
    name = payload[0].name if isinstance(payload, list) else payload.name
    try:
        return _PIPELINES[command](payload, opts)
    except ValueError as exc:
        return {"name": name, "error": str(exc)}


def _run_all(command: str, payloads: list, opts: dict) -> list[dict]:
    tasks = [(command, p, opts) for p in payloads]
    jobs = min(opts["jobs"], len(tasks))
    if jobs <= 1:
        return [_run_one(t) for t in tasks]
    with multiprocessing.get_context("fork").Pool(jobs) as pool:
        return pool.map(_run_one, tasks)


# -- output -----------------------------------------------------------------------


def _flatten(value) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return str(value)


def _render(results: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(results, sort_keys=True, indent=2) + "\n"
    lines = []
    for row in results:
        fields = " ".join(
            f"{key}={_flatten(row[key])}" for key in sorted(row) if key != "name"
        )
        lines.append(f"{row['name']}\t{fields}")
    return "\n".join(lines) + ("\n" if lines else "")


def _failed(command: str, results: list[dict]) -> bool:
    for row in results:
        if "error" in row:
            return True
        if command == "verify" and row.get("diff"):
            return True
    return False


# -- argument handling --------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="statechrome",
        description="State-graph invariants, extremal Khovanov predictions, girth bounds.",
    )
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group(required=True)
    source.add_argument("--pd", help="single diagram as PD text")
    source.add_argument("--corpus", help="corpus TSV: name<TAB>pd<TAB>signature?")
    common.add_argument("--name", default="pd", help="name for a --pd diagram")
    common.add_argument("--mirror", action="store_true", help="mirror every diagram")
    common.add_argument("--max-crossings", type=int, default=12,
                        help="homology oracle budget (default 12)")
    common.add_argument("--cache-dir", default=os.environ.get("STATECHROME_CACHE"),
                        help="chromatic polynomial cache (env STATECHROME_CACHE)")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--jobs", type=int, default=1,
                        help="worker processes for corpus batches")
    sub = parser.add_subparsers(dest="command", required=True)
    for command in ("invariants", "predict", "verify", "girth"):
        sub.add_parser(command, parents=[common])
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.jobs < 1:
        print("--jobs must be >= 1", file=sys.stderr)
        return 1
    try:
        if args.corpus is not None:
            entries = load_corpus(args.corpus, mirror_all=args.mirror,
                                  allow_duplicates=args.command == "girth")
        else:
            entries = [CorpusEntry(args.name, args.pd, None, args.mirror)]
    except (OSError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return 1

    opts = {
        "max_crossings": args.max_crossings,
        "cache_dir": args.cache_dir,
        "jobs": args.jobs,
    }
    if args.command == "girth":
        groups: dict[str, list[CorpusEntry]] = {}
        order = []
        for e in entries:
            if e.name not in groups:
                groups[e.name] = []
                order.append(e.name)
            groups[e.name].append(e)
        payloads: list = [groups[name] for name in order]
    else:
        payloads = list(entries)

    results = _run_all(args.command, payloads, opts)
    sys.stdout.write(_render(results, args.format))
    return 1 if _failed(args.command, results) else 0


if __name__ == "__main__":
    sys.exit(main())
