"""scikit-learn style front end for the force-directed engine."""

from __future__ import annotations

from typing import Mapping, Optional

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils import check_array
from sklearn.utils.validation import check_is_fitted

from .forces import ForceConfig, initial_layout, run
from .graph import Graph, Layout, LayoutError, check_layout
from .metrics import total_resolution


def check_graph(graph) -> Graph:
    if not isinstance(graph, Graph):
        raise TypeError(f"expected a totalres Graph, got {type(graph).__name__}")
    return graph


def check_positions(graph: Graph, positions) -> Layout:
    """Coerce a ``Layout``, id -> (x, y) mapping or ``(n, 2)`` array to a checked ``Layout``."""
    if isinstance(positions, Layout):
        layout = positions
    elif isinstance(positions, Mapping):
        layout = Layout.from_mapping(graph, positions)
    else:
        arr = check_array(positions, dtype=np.float64, ensure_min_samples=0)
        if arr.shape != (graph.n_nodes, 2):
            raise LayoutError(f"expected positions of shape ({graph.n_nodes}, 2), got {arr.shape}")
        layout = Layout(graph.nodes, arr)
    check_layout(graph, layout)
    return layout


class TotalResolutionLayout(BaseEstimator):
    """Refine a drawing towards large angular and crossing resolution.

    ``fit`` takes a ``Graph`` in place of a feature matrix. Constants of
    force families that ``mode`` switches off are ignored. Without
    ``init`` the start is a seeded random placement relaxed by a classic
    spring-electrical pass (see ``forces.initial_layout``).

    Fitted attributes: ``layout_``, ``embedding_`` (positions as an
    ``(n, 2)`` array), ``n_iter_``, ``history_``, ``converged_``,
    ``config_`` and ``report_``.
    """

    def __init__(
        self,
        mode: str = "mixed",
        c_spring: float = 2.0,
        l_spring: Optional[float] = None,
        c_spring_cros: float = 1.0,
        c_ang_cros: float = 1.0,
        c_spring_ang: float = 1.0,
        c_ang_ang: float = 1.0,
        step: Optional[float] = None,
        eps_deg: float = 0.001,
        max_iters: int = 100_000,
        c_rep: float = 1.0,
        random_state: int = 0,
    ):
        self.mode = mode
        self.c_spring = c_spring
        self.l_spring = l_spring
        self.c_spring_cros = c_spring_cros
        self.c_ang_cros = c_ang_cros
        self.c_spring_ang = c_spring_ang
        self.c_ang_ang = c_ang_ang
        self.step = step
        self.eps_deg = eps_deg
        self.max_iters = max_iters
        self.c_rep = c_rep
        self.random_state = random_state

    def _config(self) -> ForceConfig:
        params = self.get_params()
        params.pop("random_state")
        if self.mode == "crossing-only":
            params.update(c_spring_ang=0.0, c_ang_ang=0.0)
        elif self.mode == "angular-only":
            params.update(c_spring_cros=0.0, c_ang_cros=0.0)
        return ForceConfig(jitter_seed=int(self.random_state), **params)

    def fit(self, X, y=None, init=None):
        graph = check_graph(X)
        cfg = self._config()
        if init is None:
            start = initial_layout(graph, seed=int(self.random_state))
        else:
            start = check_positions(graph, init)
        result = run(graph, start, cfg)
        self.layout_ = result.final_layout
        self.embedding_ = np.array(result.final_layout.coords)
        self.n_iter_ = result.iterations
        self.history_ = result.history
        self.converged_ = result.converged
        self.config_ = result.config
        self.report_ = total_resolution(graph, result.final_layout)
        return self

    def fit_transform(self, X, y=None, init=None) -> np.ndarray:
        return self.fit(X, y, init=init).embedding_

    def score(self, X=None, y=None) -> float:
        """Total resolution of the fitted drawing in degrees (0 for an angle-free graph)."""
        check_is_fitted(self, "report_")
        total = self.report_.total
        return 0.0 if total is None else float(np.degrees(total))
