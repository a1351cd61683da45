"""Small deterministic sample graphs for the benchmark harness.

``write_samples`` regenerates the bundled edge lists under
``totalres/data/graphs``; ``rome_like`` mimics the sparse Rome corpus
density of about 1.35 edges per node.
"""

from __future__ import annotations

import itertools
from importlib import resources
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np

from .graph import Graph, parse_edge_list, write_edge_list

ROME_DENSITY = 1.35


def path(n: int) -> Graph:
    return Graph.from_edges([(f"v{i}", f"v{i + 1}") for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return Graph.from_edges([(f"v{i}", f"v{(i + 1) % n}") for i in range(n)])


def star(k: int) -> Graph:
    return Graph.from_edges([("c", f"l{i}") for i in range(k)])


def complete(n: int) -> Graph:
    return Graph.from_edges(itertools.combinations([f"v{i}" for i in range(n)], 2))


def complete_bipartite(m: int, n: int) -> Graph:
    return Graph.from_edges((f"a{i}", f"b{j}") for i in range(m) for j in range(n))


def grid(rows: int, cols: int) -> Graph:
    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((f"g{r}_{c}", f"g{r}_{c + 1}"))
            if r + 1 < rows:
                edges.append((f"g{r}_{c}", f"g{r + 1}_{c}"))
    return Graph.from_edges(edges)


def binary_tree(depth: int) -> Graph:
    n = 2 ** (depth + 1) - 1
    return Graph.from_edges((f"t{(i - 1) // 2}", f"t{i}") for i in range(1, n))


def random_tree(n: int, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    return Graph.from_edges((f"v{int(rng.integers(i))}", f"v{i}") for i in range(1, n))


def rome_like(n: int, seed: int, density: float = ROME_DENSITY) -> Graph:
    """Connected random graph with ``round(density * n)`` edges."""
    rng = np.random.default_rng(seed)
    target = min(round(density * n), n * (n - 1) // 2)
    edges = set()
    for i in range(1, n):
        j = int(rng.integers(i))
        edges.add((j, i))
    while len(edges) < target:
        a, b = sorted(int(x) for x in rng.choice(n, size=2, replace=False))
        edges.add((a, b))
    ordered = sorted(edges)
    return Graph.from_edges([(f"v{a}", f"v{b}") for a, b in ordered], nodes=[f"v{i}" for i in range(n)])


def small_samples() -> Dict[str, Graph]:
    return {
        "path_8": path(8),
        "path_15": path(15),
        "cycle_6": cycle(6),
        "cycle_12": cycle(12),
        "star_5": star(5),
        "star_9": star(9),
        "k4": complete(4),
        "k5": complete(5),
        "k6": complete(6),
        "k7": complete(7),
        "k33": complete_bipartite(3, 3),
        "k34": complete_bipartite(3, 4),
        "k44": complete_bipartite(4, 4),
        "grid_3x3": grid(3, 3),
        "grid_4x5": grid(4, 5),
        "bintree_3": binary_tree(3),
        "tree_20": random_tree(20, 7),
        "tree_30": random_tree(30, 8),
        "sparse_15": rome_like(15, 101),
        "sparse_25": rome_like(25, 102),
        "sparse_40": rome_like(40, 103),
    }


def rome_like_samples(count: int = 20, seed: int = 2024) -> Dict[str, Graph]:
    """``count`` connected sparse graphs with 50 to 100 nodes."""
    rng = np.random.default_rng(seed)
    sizes = np.linspace(50, 100, count).round().astype(int)
    out = {}
    for k, n in enumerate(sizes):
        out[f"rome_like_{k:02d}_n{n}"] = rome_like(int(n), int(rng.integers(2**31)))
    return out


def write_samples(root: Path) -> List[Path]:
    written = []
    for sub, graphs in (("small", small_samples()), ("rome_like", rome_like_samples())):
        d = Path(root) / sub
        d.mkdir(parents=True, exist_ok=True)
        for name, g in graphs.items():
            p = d / f"{name}.txt"
            p.write_bytes(f"# {name}: {g.n_nodes} nodes, {g.n_edges} edges\n".encode() + write_edge_list(g))
            written.append(p)
    return written


def data_dir(sub: str) -> Path:
    """Directory of a bundled sample set: ``small`` or ``rome_like``."""
    return Path(str(resources.files("totalres") / "data" / "graphs" / sub))


def load_dir(directory: Path) -> List[Tuple[str, Graph]]:
    """All ``*.txt`` edge lists in ``directory``, sorted by file name."""
    return [(p.stem, parse_edge_list(p.read_bytes())) for p in sorted(Path(directory).glob("*.txt"))]
