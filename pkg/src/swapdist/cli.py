"""Command line interface.

    swapdist analyze   per-condition tau(d,s), tau(p,s), tau(c,s) with exact tests
    swapdist diff      per-condition tau(d,s) - tau(c,s) and tau(d,s) - tau(p,s)
    swapdist global    per-language Monte Carlo test of the sums S, Holm-adjusted
    swapdist ring      the permutahedron as DOT or JSON
    swapdist predict   predicted cost levels for a canonical order
    swapdist data      bundled conditions, or the template for external ones

Exit codes: 0 success, 2 usage, 3 data validation, 4 size guard.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import __version__
from .dataset import ORDERS, Condition, bundled_paper_data, dumps_csv, external_template, load_csv, missing_external, to_cost
from .errors import InputError, SwapDistError
from .kendall import dominance_check, is_max_given_measure, max_diff_given_sample, max_given_sample, tau_a
from .montecarlo import ConditionSet, monte_carlo_diff_pvalue, monte_carlo_right_pvalue
from .permutation import (
    DEFAULT_ALPHABET,
    Order,
    all_orders,
    build_permutahedron,
    canonical_indicator,
    format_levels,
    head_distance_to_end,
    predicted_cost_levels,
    rotation_angle,
    standard_measures,
    swap_distance,
)
from .significance import exact_diff_right_pvalue, exact_right_pvalue, holm_adjust

log = logging.getLogger("swapdist")

GLOBAL_TESTS = ("S(d)", "S(p)", "S(c)", "S(d)-S(c)", "S(d)-S(p)")
HOLM_PRESETS = ("pooled", "per-language", "none")


@dataclass
class RunConfig:
    canonical: str = "SOV"
    head: str = "V"
    T: int = 1_000_000
    seed: int = 1
    format: str = "table"
    holm: str = "pooled"
    workers: int = 1
    arithmetic: str = "exact"
    progress: bool = False
    measures: dict = field(init=False, repr=False)

    def __post_init__(self):
        canonical = Order.parse(self.canonical)
        if canonical.alphabet != frozenset(DEFAULT_ALPHABET):
            raise InputError(f"canonical order must be a permutation of S, O, V for data analyses, got {self.canonical!r}")
        if self.T < 1:
            raise InputError("--trials must be at least 1")
        self.measures = standard_measures(canonical, self.head)


def _label_fields(c: Condition) -> dict:
    return {"language": c.language, "group": c.group or "", "score_kind": c.score_kind, "modality": c.modality}


def cmd_analyze(data: Sequence[Condition], config: RunConfig) -> list[dict]:
    if not data:
        raise InputError("no conditions to analyze")
    rows = []
    for c in data:
        y = to_cost(c).vector()
        row = _label_fields(c)
        taus = {}
        for name, m in config.measures.items():
            x = m.values(ORDERS)
            res = tau_a(x, y)
            test = exact_right_pvalue(x, y)
            taus[name] = res.tau
            row[f"tau_{name}"] = res.tau
            row[f"p_{name}"] = test.right_p
            row[f"max_given_measure_{name}"] = is_max_given_measure(res, m)
            row[f"max_given_sample_{name}"] = max_given_sample(x, y)[1]
        row["dominance"] = " ".join(sorted(dominance_check(taus["d"], taus["p"], taus["c"])))
        rows.append(row)
    return rows


def cmd_diff(data: Sequence[Condition], config: RunConfig) -> list[dict]:
    if not data:
        raise InputError("no conditions to analyze")
    d = config.measures["d"].values(ORDERS)
    rows = []
    for c in data:
        y = to_cost(c).vector()
        row = _label_fields(c)
        for other in ("c", "p"):
            x2 = config.measures[other].values(ORDERS)
            test = exact_diff_right_pvalue(d, x2, y, arithmetic=config.arithmetic)
            row[f"diff_d{other}"] = test.statistic
            row[f"p_d{other}"] = test.right_p
            row[f"max_given_sample_d{other}"] = max_diff_given_sample(d, x2, y)[1]
        rows.append(row)
    return rows


def parse_holm(spec: str, n_languages: int) -> list[list[int]]:
    """Holm families as lists of indices into the global report rows.

    Rows run language by language, five per language, in the order of
    ``GLOBAL_TESTS``.  ``spec`` is a preset name or index lists such as
    ``"0,1,2;3,4"``.
    """
    k = len(GLOBAL_TESTS)
    if spec == "pooled":
        return [
            [lang * k + t for lang in range(n_languages) for t in range(3)],
            [lang * k + t for lang in range(n_languages) for t in range(3, 5)],
        ]
    if spec == "per-language":
        return [g for lang in range(n_languages) for g in ([lang * k + t for t in range(3)], [lang * k + 3, lang * k + 4])]
    if spec == "none":
        return []
    groups = []
    try:
        for chunk in spec.split(";"):
            groups.append([int(i) for i in chunk.split(",") if i.strip()])
    except ValueError:
        raise InputError(f"--holm must be one of {HOLM_PRESETS} or index lists like '0,1,2;3,4', got {spec!r}") from None
    flat = [i for g in groups for i in g]
    if any(not 0 <= i < k * n_languages for i in flat) or len(flat) != len(set(flat)):
        raise InputError(f"--holm indices must be distinct and below {k * n_languages}")
    return [g for g in groups if g]


def cmd_global(data: Sequence[Condition], config: RunConfig) -> dict:
    if not data:
        raise InputError("no conditions to analyze")
    m = config.measures
    by_language: dict[str, list[Condition]] = {}
    for c in data:
        by_language.setdefault(c.language, []).append(c)
    rows = []
    for language in sorted(by_language):
        cs = ConditionSet(tuple(by_language[language]))
        kw = dict(T=config.T, seed=config.seed, workers=config.workers, progress=config.progress)
        results = [
            monte_carlo_right_pvalue(cs, m["d"], **kw),
            monte_carlo_right_pvalue(cs, m["p"], **kw),
            monte_carlo_right_pvalue(cs, m["c"], **kw),
            monte_carlo_diff_pvalue(cs, m["d"], m["c"], **kw),
            monte_carlo_diff_pvalue(cs, m["d"], m["p"], **kw),
        ]
        for test, r in zip(GLOBAL_TESTS, results):
            rows.append({
                "language": language,
                "conditions": len(cs),
                "test": test,
                "statistic": r.statistic,
                "tail_count": r.tail_count,
                "p_raw": r.p_estimate,
                "p_holm": r.p_estimate,
            })
    for group in parse_holm(config.holm, len(by_language)):
        adjusted = holm_adjust([rows[i]["p_raw"] for i in group])
        for i, p in zip(group, adjusted):
            rows[i]["p_holm"] = p
    notes = [
        f"T = {config.T} randomizations, seed = {config.seed}; a p-value of 0 means < {1 / config.T:.2g}",
        f"Holm families: {config.holm}",
    ]
    missing = missing_external(data)
    if missing:
        notes.append(
            "the published global p-values cannot be reproduced without the external raw score vectors "
            "(see `swapdist data --template`); missing here: " + "; ".join(e.label for e in missing)
        )
    return {"rows": rows, "notes": notes, "T": config.T, "seed": config.seed}


def cmd_ring(canonical: str = "SOV", head: str = "V", fmt: str = "dot") -> str:
    canonical = Order.parse(canonical)
    graph = build_permutahedron(canonical.symbols if canonical.alphabet != frozenset(DEFAULT_ALPHABET) else DEFAULT_ALPHABET)
    annotations = {}
    for v in graph.vertices:
        a = {"d": swap_distance(v, canonical), "c": canonical_indicator(v, canonical)}
        if head in canonical.alphabet:
            a["p"] = head_distance_to_end(v, head)
        if len(canonical) == 3:
            a["rotation"] = rotation_angle(v, canonical)
        annotations[v] = a
    if fmt == "json":
        return graph.to_json(annotations) + "\n"
    labels = {v: f"{v}\\n" + " ".join(f"{k}={a[k]}" for k in a) for v, a in annotations.items()}
    return graph.to_dot(labels)


def cmd_predict(canonical: str | None = None) -> list[dict]:
    canonicals = [Order.parse(canonical)] if canonical else all_orders(DEFAULT_ALPHABET)
    rows = []
    for k in canonicals:
        levels = predicted_cost_levels(k)
        rows.append({
            "canonical": str(k),
            "prediction": format_levels(levels),
            "levels": [[str(o) for o in level] for level in levels],
        })
    return rows


# rendering ---------------------------------------------------------------


def _plain(v):
    if isinstance(v, Fraction):
        return float(v)
    return v


def _cell(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (Fraction, float)):
        return f"{float(v):.3f}"
    if isinstance(v, list):
        return " | ".join(", ".join(level) for level in v)
    return str(v)


def render_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        out = []
        for row in rows:
            doc = {}
            for k, v in row.items():
                doc[k] = _plain(v)
                if isinstance(v, Fraction):
                    doc[f"{k}_exact"] = str(v)
            out.append(doc)
        return json.dumps(out, indent=2) + "\n"
    if not rows:
        return ""
    keys = list(rows[0])
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(keys)
        for row in rows:
            writer.writerow([repr(_plain(row[k])) if isinstance(row[k], (Fraction, float)) else _cell(row[k]) if isinstance(row[k], (bool, list)) else row[k] for k in keys])
        return buf.getvalue()
    table = [keys] + [[_cell(row[k]) for k in keys] for row in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(keys))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in table]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _render_global(report: dict, fmt: str) -> str:
    rows = report["rows"]
    if fmt == "json":
        doc = json.loads(render_rows(rows, "json"))
        return json.dumps({"rows": doc, "notes": report["notes"]}, indent=2) + "\n"
    if fmt == "csv":
        return render_rows(rows, "csv")
    shown = []
    for row in rows:
        row = dict(row)
        for key in ("p_raw", "p_holm"):
            row[key] = _format_p(row[key], report["T"])
        shown.append(row)
    return render_rows(shown, "table") + "".join(f"# {n}\n" for n in report["notes"])


def _format_p(p: float, T: int) -> str:
    return f"< {1 / T:.0e}" if p == 0 else f"{p:.2g}"


# argument handling ----------------------------------------------------------


def _load(args) -> list[Condition]:
    data = [] if args.no_bundled else bundled_paper_data()
    for path in args.data or []:
        data.extend(load_csv(path))
    return data


def _config(args) -> RunConfig:
    seed = args.seed
    if seed is None:
        env = os.environ.get("SWAPDIST_SEED")
        try:
            seed = int(env) if env else 1
        except ValueError:
            raise InputError(f"SWAPDIST_SEED must be an integer, got {env!r}") from None
    return RunConfig(
        canonical=args.canonical,
        head=args.head,
        T=getattr(args, "trials", 1_000_000),
        seed=seed,
        format=args.format,
        holm=getattr(args, "holm", "pooled"),
        workers=getattr(args, "workers", 1),
        arithmetic=getattr(args, "arithmetic", "exact"),
        progress=getattr(args, "progress", False),
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swapdist", description="Swap distance minimization tests for word order.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--canonical", default="SOV", help="canonical order (default SOV)")
    common.add_argument("--head", default="V", help="head constituent for the head-to-end measure (default V)")

    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("--data", action="append", metavar="CSV", help="additional conditions (repeatable)")
    data.add_argument("--no-bundled", action="store_true", help="do not include the bundled conditions")
    data.add_argument("--seed", type=int, default=None, help="RNG seed (default $SWAPDIST_SEED or 1)")
    data.add_argument("--format", choices=("table", "csv", "json"), default="table")

    sub.add_parser("analyze", parents=[common, data], help="per-condition correlation tests")
    p = sub.add_parser("diff", parents=[common, data], help="per-condition correlation difference tests")
    p.add_argument("--arithmetic", choices=("exact", "float"), default="exact",
                   help="compare differences as exact rationals or as doubles")
    p = sub.add_parser("global", parents=[common, data], help="Monte Carlo global test per language")
    p.add_argument("-T", "--trials", type=int, default=1_000_000, help="randomizations (default 10^6)")
    p.add_argument("--holm", default="pooled", help=f"{'|'.join(HOLM_PRESETS)} or index lists '0,1,2;3,4'")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--progress", action="store_true", help="block progress on stderr")

    p = sub.add_parser("ring", parents=[common], help="export the permutahedron")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p = sub.add_parser("predict", help="predicted cost levels")
    p.add_argument("--canonical", default=None, help="canonical order (default: all six)")
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p = sub.add_parser("data", help="write the bundled conditions as CSV")
    p.add_argument("--template", action="store_true", help="write the fill-in template for external conditions")
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        if args.command == "ring":
            out.write(cmd_ring(args.canonical, args.head, args.format))
        elif args.command == "predict":
            out.write(render_rows(cmd_predict(args.canonical), args.format))
        elif args.command == "data":
            out.write(external_template() if args.template else dumps_csv(bundled_paper_data()))
        else:
            config = _config(args)
            data = _load(args)
            if args.command == "analyze":
                out.write(render_rows(cmd_analyze(data, config), config.format))
            elif args.command == "diff":
                out.write(render_rows(cmd_diff(data, config), config.format))
            else:
                out.write(_render_global(cmd_global(data, config), config.format))
    except SwapDistError as exc:
        print(f"swapdist: error: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


def main():
    sys.exit(run())
