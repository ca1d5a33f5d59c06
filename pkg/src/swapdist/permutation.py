"""Orders of constituents, the permutahedron and the three distance measures.

An :class:`Order` is an arrangement of the symbols of an alphabet (``S``,
``O``, ``V`` by default).  The swap distance between two orders is the
number of adjacent transpositions needed to turn one into the other, i.e.
the inversion count of one order read in the coordinates of the other.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from itertools import permutations, product
from math import factorial
from typing import Iterable, Literal, Sequence

from .errors import AlphabetMismatchError, InputError, SizeGuardError, UnsupportedArityError

DEFAULT_ALPHABET = ("S", "O", "V")
MAX_ALPHABET = 7

MeasureKind = Literal["d", "p", "c"]


@dataclass(frozen=True)
class Order:
    """A permutation of the constituent labels, e.g. ``Order.parse("SOV")``."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise InputError(f"repeated constituent in {self.symbols!r}")
        if len(self.symbols) < 1:
            raise InputError("an order needs at least one constituent")

    @classmethod
    def parse(cls, text: str | Order | Sequence[str]) -> Order:
        if isinstance(text, Order):
            return text
        if isinstance(text, str):
            text = text.strip()
            symbols = tuple(text.split()) if " " in text else tuple(text)
        else:
            symbols = tuple(text)
        return cls(symbols)

    @property
    def alphabet(self) -> frozenset[str]:
        return frozenset(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def index(self, symbol: str) -> int:
        return self.symbols.index(symbol)

    def swapped(self, i: int) -> Order:
        """The order obtained by swapping positions ``i`` and ``i + 1``."""
        s = list(self.symbols)
        s[i], s[i + 1] = s[i + 1], s[i]
        return Order(tuple(s))

    def __str__(self):
        if all(len(s) == 1 for s in self.symbols):
            return "".join(self.symbols)
        return " ".join(self.symbols)

    def __repr__(self):
        return f"Order({str(self)!r})"


def _check_same_alphabet(a: Order, b: Order):
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError(f"{a} and {b} are over different alphabets")


def all_orders(alphabet: Sequence[str] | Order = DEFAULT_ALPHABET) -> list[Order]:
    """All n! orders, lexicographic in the positions of ``alphabet``.

    For the default alphabet this is SOV, SVO, OSV, OVS, VSO, VOS.
    """
    alphabet = tuple(alphabet)
    _guard_size(len(alphabet))
    return [Order(p) for p in permutations(alphabet)]


def _guard_size(n: int):
    if not 2 <= n <= MAX_ALPHABET:
        raise SizeGuardError(f"alphabet size must be between 2 and {MAX_ALPHABET}, got {n}")


def swap_distance(a: Order, b: Order) -> int:
    """Minimum number of adjacent swaps turning ``a`` into ``b``."""
    _check_same_alphabet(a, b)
    pos = {s: i for i, s in enumerate(b.symbols)}
    seq = [pos[s] for s in a.symbols]
    n = len(seq)
    return sum(1 for i in range(n) for j in range(i + 1, n) if seq[i] > seq[j])


def head_distance_to_end(order: Order, head: str) -> int:
    """Number of constituents following ``head``; 0 when the head is last."""
    if head not in order.alphabet:
        raise InputError(f"head {head!r} is not in the alphabet of {order}")
    return len(order) - 1 - order.index(head)


def canonical_indicator(order: Order, canonical: Order) -> int:
    _check_same_alphabet(order, canonical)
    return 0 if order == canonical else 1


@dataclass(frozen=True)
class DistanceMeasure:
    """One of the three distance measures, bound to its reference points.

    ``d`` is the swap distance to ``canonical``, ``p`` the distance of
    ``head`` to the end of the order and ``c`` the non-canonicality
    indicator.
    """

    kind: MeasureKind
    canonical: Order
    head: str | None = None

    def __post_init__(self):
        if self.kind not in ("d", "p", "c"):
            raise InputError(f"unknown distance measure {self.kind!r}")
        if self.kind == "p":
            if self.head is None:
                raise InputError("the head-to-end measure needs a head constituent")
            if self.head not in self.canonical.alphabet:
                raise InputError(f"head {self.head!r} is not in the alphabet of {self.canonical}")

    def __call__(self, order: Order) -> int:
        if self.kind == "d":
            return swap_distance(order, self.canonical)
        if self.kind == "p":
            _check_same_alphabet(order, self.canonical)
            return head_distance_to_end(order, self.head)
        return canonical_indicator(order, self.canonical)

    def values(self, orders: Iterable[Order]) -> list[int]:
        return [self(o) for o in orders]

    @property
    def name(self) -> str:
        return self.kind


def standard_measures(canonical: Order | str = "SOV", head: str = "V") -> dict[str, DistanceMeasure]:
    canonical = Order.parse(canonical)
    return {
        "d": DistanceMeasure("d", canonical),
        "p": DistanceMeasure("p", canonical, head),
        "c": DistanceMeasure("c", canonical),
    }


@dataclass(frozen=True)
class Permutahedron:
    vertices: tuple[Order, ...]
    edges: tuple[tuple[Order, Order], ...]

    def neighbors(self, v: Order) -> list[Order]:
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return out

    def degree(self, v: Order) -> int:
        return len(self.neighbors(v))

    def to_dot(self, labels: dict[Order, str] | None = None, name: str = "permutahedron") -> str:
        lines = [f"graph {name} {{"]
        if labels:
            for v in self.vertices:
                lines.append(f'  {v} [label="{labels[v]}"];')
        for a, b in self.edges:
            lines.append(f"  {a} -- {b};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self, annotations: dict[Order, dict] | None = None) -> str:
        doc = {
            "vertices": [str(v) for v in self.vertices],
            "edges": [[str(a), str(b)] for a, b in self.edges],
        }
        if annotations:
            doc["annotations"] = {str(v): annotations[v] for v in self.vertices}
        return json.dumps(doc, indent=2)


def build_permutahedron(alphabet: Sequence[str] | Order = DEFAULT_ALPHABET) -> Permutahedron:
    """Graph on all orders with an edge per adjacent transposition.

    Each edge is listed once, oriented from the vertex that comes first in
    :func:`all_orders` enumeration.
    """
    vertices = all_orders(alphabet)
    rank = {v: i for i, v in enumerate(vertices)}
    edges = []
    for v in vertices:
        for i in range(len(v) - 1):
            w = v.swapped(i)
            if rank[v] < rank[w]:
                edges.append((v, w))
    return Permutahedron(tuple(vertices), tuple(edges))


def bfs_distances(graph: Permutahedron, source: Order) -> dict[Order, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in graph.neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def _ring_cycle(alphabet: tuple[str, ...]) -> list[Order]:
    # Alternate swaps of the last and first pair, starting from the reference
    # order; this walks the hexagon in the positive (anticlockwise) direction.
    v = Order(alphabet)
    cycle = [v]
    for step in range(5):
        v = v.swapped(1 if step % 2 == 0 else 0)
        cycle.append(v)
    return cycle


def rotation_angle(order: Order, canonical: Order, alphabet: Sequence[str] | None = None) -> int:
    """Signed rotation in degrees that carries ``order`` onto ``canonical``.

    Orders are placed on a circle in ring order, anticlockwise rotations are
    positive and the antipodal order gets +180.  The orientation of the ring
    is fixed by ``alphabet`` (default: the S, O, V reference order), so that
    SVO needs +60 and OSV needs -60 to become SOV.
    """
    _check_same_alphabet(order, canonical)
    if len(order) != 3:
        raise UnsupportedArityError("rotation angles are only defined for three constituents")
    if alphabet is None:
        alphabet = DEFAULT_ALPHABET if order.alphabet == frozenset(DEFAULT_ALPHABET) else tuple(sorted(order.alphabet))
    cycle = _ring_cycle(tuple(alphabet))
    steps = (cycle.index(order) - cycle.index(canonical)) % 6
    if steps > 3:
        steps -= 6
    return 60 * steps


def predicted_cost_levels(canonical: Order) -> list[tuple[Order, ...]]:
    """Orders grouped by swap distance to ``canonical``, cheapest first."""
    levels: dict[int, list[Order]] = {}
    for o in all_orders(canonical.symbols):
        levels.setdefault(swap_distance(o, canonical), []).append(o)
    return [tuple(levels[k]) for k in sorted(levels)]


def format_levels(levels: Sequence[Sequence[Order]]) -> str:
    return " < ".join(", ".join(str(o) for o in level) for level in levels)


def bfs_rank_labelings(canonical: Order) -> list[dict[Order, int]]:
    """All rank labelings 1..6 that visit the ring layer by layer from ``canonical``.

    A labeling qualifies when ranks never decrease with swap distance to
    the canonical order: the canonical order gets rank 1, then the two
    orders at distance 1 in either order, and so on.
    """
    if len(canonical) != 3:
        raise UnsupportedArityError("breadth first labelings are only enumerated for three constituents")
    levels = predicted_cost_levels(canonical)
    out = []
    for arrangement in product(*(permutations(level) for level in levels)):
        sequence = [o for level in arrangement for o in level]
        out.append({o: r for r, o in enumerate(sequence, start=1)})
    return out


def is_bfs_labeling(labeling: dict[Order, int], canonical: Order) -> bool:
    labeling = {Order.parse(k): v for k, v in labeling.items()}
    return labeling in bfs_rank_labelings(canonical)
