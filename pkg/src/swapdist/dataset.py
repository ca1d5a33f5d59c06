"""Conditions, score vectors, and the data that ships with the package.

A condition is one (language, group, score kind, modality) with a score for
each of the six orders of S, O and V.  Ease scores (acceptability,
frequency) are negated by :func:`to_cost` so that every analysis is a
right-sided test against cost.

Only values printed in full are bundled: the Malayalam mean acceptability
ratings and the eight rank vectors derived from pairwise contrasts.  The raw
Korean acceptability means, the Sinhalese reaction times and error rates and
the Malayalam corpus frequencies come from external sources; they are listed
by :func:`external_placeholders` and a fill-in template ships as
``data/external_template.csv``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import DataValidationError, InputError, ParseError
from .permutation import Order

ORDER_COLUMNS = ("SOV", "SVO", "OSV", "OVS", "VSO", "VOS")
CSV_HEADER = ("language", "group", "score_kind", "modality", "direction") + ORDER_COLUMNS

SCORE_KINDS = (
    "acceptability",
    "acceptability_rank",
    "frequency",
    "reaction_time",
    "reaction_time_rank",
    "error",
    "error_rank",
)
RANK_KINDS = frozenset(k for k in SCORE_KINDS if k.endswith("_rank"))
EASE_KINDS = frozenset({"acceptability", "frequency"})
MODALITIES = ("spoken", "written", "none")
DIRECTIONS = ("ease", "cost")

ORDERS = tuple(Order.parse(o) for o in ORDER_COLUMNS)


@dataclass(frozen=True)
class Condition:
    language: str
    group: str | None
    score_kind: str
    modality: str
    direction: str
    scores: Mapping[Order, float] = field(hash=False)

    def __post_init__(self):
        if self.score_kind not in SCORE_KINDS:
            raise DataValidationError(f"unknown score kind {self.score_kind!r}")
        if self.modality not in MODALITIES:
            raise DataValidationError(f"unknown modality {self.modality!r}")
        if self.direction not in DIRECTIONS:
            raise DataValidationError(f"direction must be 'ease' or 'cost', got {self.direction!r}")
        scores = {Order.parse(k): v for k, v in self.scores.items()}
        if set(scores) != set(ORDERS):
            missing = sorted(str(o) for o in set(ORDERS) - set(scores))
            extra = sorted(str(o) for o in set(scores) - set(ORDERS))
            raise DataValidationError(f"{self.label}: scores must cover the six orders (missing {missing}, unexpected {extra})")
        if self.score_kind in RANK_KINDS:
            ranks = list(scores.values())
            if any(r != int(r) or r < 1 for r in ranks) or 1 not in ranks:
                raise DataValidationError(f"{self.label}: ranks must be positive integers including 1")
        object.__setattr__(self, "scores", {o: scores[o] for o in ORDERS})

    @property
    def label(self) -> str:
        parts = [self.language, self.group or "-", self.score_kind, self.modality]
        return " / ".join(parts)

    def vector(self, orders: Sequence[Order] = ORDERS) -> list[float]:
        return [self.scores[o] for o in orders]


@dataclass(frozen=True)
class ContrastChain:
    """Orders partitioned into levels of increasing cost, e.g. ``SOV < SVO, OVS < ...``."""

    levels: tuple[frozenset[Order], ...]

    def __post_init__(self):
        if not self.levels or any(not level for level in self.levels):
            raise InputError("a contrast chain needs non-empty levels")
        seen: list[Order] = [o for level in self.levels for o in level]
        if len(seen) != len(set(seen)) or set(seen) != set(ORDERS):
            raise InputError("contrast levels must partition the six orders")

    @classmethod
    def parse(cls, text: str) -> ContrastChain:
        levels = []
        for chunk in text.split("<"):
            orders = [Order.parse(tok) for tok in chunk.replace(",", " ").split()]
            if len(orders) != len(set(orders)):
                raise InputError(f"repeated order in contrast level {chunk.strip()!r}")
            levels.append(frozenset(orders))
        return cls(tuple(levels))

    def __str__(self):
        return " < ".join(", ".join(str(o) for o in ORDERS if o in level) for level in self.levels)


def ranks_from_contrasts(chain: ContrastChain) -> dict[Order, int]:
    """Rank 1 for the cheapest level, 2 for the next, and so on."""
    return {o: rank for rank, level in enumerate(chain.levels, start=1) for o in level}


def to_cost(condition: Condition) -> Condition:
    if condition.direction == "cost":
        return condition
    negated = {o: -v for o, v in condition.scores.items()}
    return replace(condition, direction="cost", scores=negated)


# (language, group, score kind, modality, chain), in increasing cost.
CONTRAST_CHAINS = (
    ("Korean", "Korean-dominant", "acceptability_rank", "spoken", "SOV < OSV < SVO, OVS < VSO, VOS"),
    ("Korean", "English-dominant active", "acceptability_rank", "spoken", "SOV < OSV < SVO, OVS < VSO, VOS"),
    ("Korean", "English-dominant passive", "acceptability_rank", "spoken", "SOV < OSV < SVO, OVS < VSO, VOS"),
    ("Malayalam", None, "acceptability_rank", "spoken", "SOV, OSV < SVO, OVS < VSO, VOS"),
    ("Sinhalese", None, "reaction_time_rank", "spoken", "SOV < SVO, OVS < OSV, VSO, VOS"),
    ("Sinhalese", None, "reaction_time_rank", "written", "SOV < SVO, OVS, OSV, VSO, VOS"),
    ("Sinhalese", None, "error_rank", "spoken", "SOV < SVO, OVS, VSO < OSV, VOS"),
    ("Sinhalese", None, "error_rank", "written", "SOV, SVO, VSO, VOS, OVS, OSV"),
)

# Mean z-scored acceptability, listening experiment (N = 18).
MALAYALAM_ACCEPTABILITY = {"SOV": 1.05, "OSV": 0.80, "SVO": 0.36, "OVS": 0.30, "VSO": -0.14, "VOS": -0.36}


@dataclass(frozen=True)
class ExternalPlaceholder:
    language: str
    group: str | None
    score_kind: str
    modality: str
    direction: str
    source: str

    @property
    def label(self) -> str:
        return " / ".join([self.language, self.group or "-", self.score_kind, self.modality])


EXTERNAL = (
    ExternalPlaceholder("Korean", "Korean-dominant", "acceptability", "spoken", "ease", "Namboodiripad et al. 2019, Table 2"),
    ExternalPlaceholder("Korean", "English-dominant active", "acceptability", "spoken", "ease", "Namboodiripad et al. 2019, Table 2"),
    ExternalPlaceholder("Korean", "English-dominant passive", "acceptability", "spoken", "ease", "Namboodiripad et al. 2019, Table 2"),
    ExternalPlaceholder("Malayalam", None, "frequency", "none", "ease", "Leela 2016, Table 4"),
    ExternalPlaceholder("Sinhalese", None, "reaction_time", "spoken", "cost", "Tamaoka et al. 2011, Table 2"),
    ExternalPlaceholder("Sinhalese", None, "reaction_time", "written", "cost", "Tamaoka et al. 2011, Table 1"),
    ExternalPlaceholder("Sinhalese", None, "error", "spoken", "cost", "Tamaoka et al. 2011, Table 2"),
    ExternalPlaceholder("Sinhalese", None, "error", "written", "cost", "Tamaoka et al. 2011, Table 1"),
)


def external_placeholders() -> tuple[ExternalPlaceholder, ...]:
    return EXTERNAL


def bundled_paper_data() -> list[Condition]:
    """The conditions whose score vectors are fully known without external sources."""
    out = [Condition("Malayalam", None, "acceptability", "spoken", "ease", MALAYALAM_ACCEPTABILITY)]
    for language, group, kind, modality, chain in CONTRAST_CHAINS:
        ranks = ranks_from_contrasts(ContrastChain.parse(chain))
        out.append(Condition(language, group, kind, modality, "cost", ranks))
    return out


def missing_external(conditions: Iterable[Condition]) -> list[ExternalPlaceholder]:
    """Placeholders not covered by any supplied condition."""
    have = {(c.language, c.group, c.score_kind, c.modality) for c in conditions}
    return [e for e in EXTERNAL if (e.language, e.group, e.score_kind, e.modality) not in have]


def _parse_number(text: str, line: int, column: str) -> float | int:
    text = text.strip()
    if not text:
        raise ParseError(f"empty score in column {column}", line)
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"not a number in column {column}: {text!r}", line) from None


def read_csv(stream) -> list[Condition]:
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty file", 1) from None
    header = [h.strip().lstrip("﻿") for h in header]
    if tuple(header) != CSV_HEADER:
        labels = [h for h in header[5:]]
        bad = [h for h in labels if h and h not in ORDER_COLUMNS]
        if bad:
            raise DataValidationError(f"line 1: {bad} are not orders of S, O and V")
        raise ParseError(f"header must be {','.join(CSV_HEADER)}", 1)
    out = []
    for line, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(CSV_HEADER):
            raise ParseError(f"expected {len(CSV_HEADER)} fields, got {len(row)}", line)
        language, group, kind, modality, direction = (cell.strip() for cell in row[:5])
        scores = {col: _parse_number(v, line, col) for col, v in zip(ORDER_COLUMNS, row[5:])}
        try:
            out.append(Condition(language, group or None, kind, modality, direction, scores))
        except DataValidationError as exc:
            raise ParseError(str(exc), line) from None
    return out


def load_csv(path: str | Path) -> list[Condition]:
    with open(path, newline="", encoding="utf-8") as fh:
        return read_csv(fh)


def _format_number(v) -> str:
    return str(v) if isinstance(v, int) else repr(float(v))


def write_csv(conditions: Iterable[Condition], stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for c in conditions:
        writer.writerow(
            [c.language, c.group or "", c.score_kind, c.modality, c.direction]
            + [_format_number(c.scores[o]) for o in ORDERS]
        )


def dumps_csv(conditions: Iterable[Condition]) -> str:
    buf = io.StringIO()
    write_csv(conditions, buf)
    return buf.getvalue()


def external_template() -> str:
    return resources.files("swapdist").joinpath("data/external_template.csv").read_text(encoding="utf-8")
