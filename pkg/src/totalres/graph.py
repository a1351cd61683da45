"""Graph and layout containers plus the plain-text file formats.

Edge lists hold one ``idA idB`` pair per line; layouts hold one
``id x y`` triple per line. In both, blank lines are skipped and lines
starting with ``#`` are comments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

import numpy as np
from scipy.spatial import cKDTree

Text = Union[str, bytes]


class GraphParseError(ValueError):
    """Malformed edge-list or layout input; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class LayoutError(ValueError):
    """A layout does not match its graph or holds invalid coordinates."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph over opaque string node ids.

    ``edges`` keeps input order; each edge is stored as the pair of node
    indices it connects.
    """

    nodes: Tuple[str, ...]
    edges: Tuple[Tuple[int, int], ...]
    index: Mapping[str, int] = field(init=False, repr=False, compare=False)
    adjacency: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {}
        for i, u in enumerate(self.nodes):
            if u in index:
                raise ValueError(f"duplicate node id {u!r}")
            index[u] = i
        adj: List[List[int]] = [[] for _ in self.nodes]
        seen = set()
        n = len(self.nodes)
        for a, b in self.edges:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a}, {b}) references an unknown node")
            if a == b:
                raise ValueError(f"self-loop on {self.nodes[a]!r}")
            key = (min(a, b), max(a, b))
            if key in seen:
                raise ValueError(f"duplicate edge {self.nodes[a]!r}-{self.nodes[b]!r}")
            seen.add(key)
            adj[a].append(b)
            adj[b].append(a)
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "adjacency", tuple(tuple(x) for x in adj))

    @classmethod
    def from_edges(cls, pairs: Iterable[Tuple[str, str]], nodes: Sequence[str] = ()) -> "Graph":
        """Build from id pairs; node order is ``nodes`` then first appearance."""
        order: Dict[str, int] = {}
        for u in nodes:
            order.setdefault(str(u), len(order))
        edges = []
        for a, b in pairs:
            a, b = str(a), str(b)
            for u in (a, b):
                order.setdefault(u, len(order))
            edges.append((order[a], order[b]))
        return cls(tuple(order), tuple(edges))

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degree(self, u: str | int) -> int:
        i = self.index[u] if isinstance(u, str) else u
        return len(self.adjacency[i])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def edge_ids(self) -> List[Tuple[str, str]]:
        return [(self.nodes[a], self.nodes[b]) for a, b in self.edges]

    def edge_array(self) -> np.ndarray:
        return np.asarray(self.edges, dtype=np.intp).reshape(-1, 2)


class Layout(Mapping[str, Tuple[float, float]]):
    """Immutable node -> position map backed by an ``(n, 2)`` array.

    Rows follow ``nodes`` order, which is normally the graph's node order.
    """

    __slots__ = ("nodes", "coords", "_index")

    def __init__(self, nodes: Sequence[str], coords):
        coords = np.array(coords, dtype=float).reshape(-1, 2)
        if len(nodes) != coords.shape[0]:
            raise LayoutError(f"{len(nodes)} node ids but {coords.shape[0]} positions")
        coords.setflags(write=False)
        self.nodes = tuple(nodes)
        self.coords = coords
        self._index = {u: i for i, u in enumerate(self.nodes)}

    @classmethod
    def from_mapping(cls, graph: Graph, positions: Mapping[str, Sequence[float]]) -> "Layout":
        missing = [u for u in graph.nodes if u not in positions]
        if missing:
            raise LayoutError(f"no position for node(s) {missing}")
        extra = [u for u in positions if u not in graph.index]
        if extra:
            raise LayoutError(f"position given for unknown node(s) {extra}")
        return cls(graph.nodes, [positions[u] for u in graph.nodes])

    def __getitem__(self, u: str) -> Tuple[float, float]:
        x, y = self.coords[self._index[u]]
        return (float(x), float(y))

    def __iter__(self) -> Iterator[str]:
        return iter(self.nodes)

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def positions(self) -> Dict[str, Tuple[float, float]]:
        return {u: self[u] for u in self.nodes}

    def __eq__(self, other):
        if not isinstance(other, Layout):
            return NotImplemented
        return self.nodes == other.nodes and np.array_equal(self.coords, other.coords)

    __hash__ = None

    def __repr__(self):
        return f"Layout({len(self.nodes)} nodes)"


def check_layout(graph: Graph, layout: Layout, min_separation: float = 0.0) -> None:
    """Raise ``LayoutError`` unless ``layout`` is a finite placement of ``graph``.

    With ``min_separation > 0`` also reject pairs of nodes closer than it.
    """
    if layout.nodes != graph.nodes:
        raise LayoutError("layout node order does not match the graph")
    if not np.all(np.isfinite(layout.coords)):
        raise LayoutError("layout contains non-finite coordinates")
    if min_separation > 0 and graph.n_nodes > 1:
        close = coincident_pairs(layout.coords, min_separation)
        if close:
            i, j = close[0]
            raise LayoutError(f"nodes {graph.nodes[i]!r} and {graph.nodes[j]!r} coincide")


def coincident_pairs(coords: np.ndarray, tol: float) -> List[Tuple[int, int]]:
    """Index pairs ``i < j`` whose positions are within ``tol`` of each other."""
    if coords.shape[0] < 2:
        return []
    return sorted(cKDTree(coords).query_pairs(tol))


@dataclass(frozen=True)
class GridLayout:
    """Integer placement: node id -> (x, y) with non-negative integer coordinates."""

    positions: Mapping[str, Tuple[int, int]]

    def __post_init__(self):
        seen = set()
        for u, (x, y) in self.positions.items():
            if int(x) != x or int(y) != y or x < 0 or y < 0:
                raise LayoutError(f"node {u!r} is not on the non-negative grid: {(x, y)}")
            if (x, y) in seen:
                raise LayoutError(f"grid point {(x, y)} used twice")
            seen.add((x, y))

    @property
    def width(self) -> int:
        xs = [x for x, _ in self.positions.values()]
        return max(xs) - min(xs) if xs else 0

    @property
    def height(self) -> int:
        ys = [y for _, y in self.positions.values()]
        return max(ys) - min(ys) if ys else 0

    def to_layout(self, graph: Graph) -> Layout:
        return Layout.from_mapping(graph, {u: (float(x), float(y)) for u, (x, y) in self.positions.items()})


def _lines(text: Text) -> Iterator[Tuple[int, List[str]]]:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GraphParseError(f"input is not UTF-8: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def parse_edge_list(text: Text) -> Graph:
    order: Dict[str, int] = {}
    edges: List[Tuple[int, int]] = []
    seen = set()
    for lineno, tokens in _lines(text):
        if len(tokens) != 2:
            raise GraphParseError(f"expected 2 tokens, got {len(tokens)}", lineno)
        a, b = tokens
        if a == b:
            raise GraphParseError(f"self-loop on {a!r}", lineno)
        key = frozenset((a, b))
        if key in seen:
            raise GraphParseError(f"duplicate edge {a!r}-{b!r}", lineno)
        seen.add(key)
        for u in (a, b):
            order.setdefault(u, len(order))
        edges.append((order[a], order[b]))
    return Graph(tuple(order), tuple(edges))


def write_edge_list(graph: Graph) -> bytes:
    return "".join(f"{a} {b}\n" for a, b in graph.edge_ids()).encode()


def parse_layout(text: Text, graph: Graph) -> Layout:
    positions: Dict[str, Tuple[float, float]] = {}
    for lineno, tokens in _lines(text):
        if len(tokens) != 3:
            raise GraphParseError(f"expected 'id x y', got {len(tokens)} tokens", lineno)
        u, xs, ys = tokens
        if u not in graph.index:
            raise GraphParseError(f"unknown node {u!r}", lineno)
        if u in positions:
            raise GraphParseError(f"node {u!r} placed twice", lineno)
        try:
            x, y = float(xs), float(ys)
        except ValueError:
            raise GraphParseError(f"bad coordinate in {xs!r} {ys!r}", lineno) from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise GraphParseError(f"non-finite coordinate for {u!r}", lineno)
        positions[u] = (x, y)
    missing = [u for u in graph.nodes if u not in positions]
    if missing:
        raise GraphParseError(f"no position for node(s) {', '.join(missing)}")
    return Layout.from_mapping(graph, positions)


def format_real(v: float) -> str:
    # 17 significant digits always round-trip a double.
    return format(float(v), ".17g")


def write_layout(layout: Layout) -> bytes:
    return "".join(
        f"{u} {format_real(x)} {format_real(y)}\n" for u, (x, y) in zip(layout.nodes, layout.coords)
    ).encode()


def random_layout(graph: Graph, seed: int, box: float = 1.0) -> Layout:
    """Uniform positions in ``[0, box]^2``, re-drawn until pairwise distance > ``box * 1e-6``."""
    if not box > 0:
        raise ValueError("box must be positive")
    rng = np.random.default_rng(seed)
    coords = rng.uniform(0.0, box, size=(graph.n_nodes, 2))
    tol = box * 1e-6
    while True:
        close = coincident_pairs(coords, tol)
        if not close:
            break
        for _, j in close:
            coords[j] = rng.uniform(0.0, box, size=2)
    return Layout(graph.nodes, coords)
