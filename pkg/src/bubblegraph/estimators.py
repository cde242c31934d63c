"""Estimator-style wrappers: configure in ``__init__``, run with ``fit(g)``, read ``result_``.

Parameters follow the usual convention: every constructor argument is stored
under its own name, so ``get_params`` and ``set_params`` need no bookkeeping.
"""

from __future__ import annotations

import inspect
from typing import Any, Union

from .feedback import FeedbackResult, feedback_arcs_directed, feedback_edges_tipless_bidirected
from .graph import BidirectedGraph, DirectedGraph, as_bidirected
from .snarls import expand_representation, find_snarl_representation
from .superbubbles import find_superbubbles
from .ultrabubbles import find_ultrabubbles


class BaseFinder:
    def get_params(self) -> dict[str, Any]:
        names = [p for p in inspect.signature(type(self).__init__).parameters if p != "self"]
        return {name: getattr(self, name) for name in names}

    def set_params(self, **params: Any) -> "BaseFinder":
        valid = self.get_params()
        for key, value in params.items():
            if key not in valid:
                raise ValueError(f"invalid parameter {key!r} for {type(self).__name__}")
            setattr(self, key, value)
        return self

    def fit(self, g, y=None) -> "BaseFinder":
        raise NotImplementedError

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.get_params().items())
        return f"{type(self).__name__}({args})"


class SuperbubbleFinder(BaseFinder):
    def __init__(self, threads: int = 1) -> None:
        self.threads = threads

    def fit(self, g: DirectedGraph, y=None) -> "SuperbubbleFinder":
        self.result_ = find_superbubbles(g, threads=self.threads)
        return self


class UltrabubbleFinder(BaseFinder):
    def __init__(self, back_edge: bool = False, threads: int = 1) -> None:
        self.back_edge = back_edge
        self.threads = threads

    def fit(self, g: Union[BidirectedGraph, DirectedGraph], y=None) -> "UltrabubbleFinder":
        self.result_ = find_ultrabubbles(as_bidirected(g), back_edge=self.back_edge,
                                         threads=self.threads)
        return self


class SnarlFinder(BaseFinder):
    """``result_`` is the compact representation; ``expanded()`` lists every pair."""

    def __init__(self, threads: int = 1) -> None:
        self.threads = threads

    def fit(self, g: Union[BidirectedGraph, DirectedGraph], y=None) -> "SnarlFinder":
        self.result_ = find_snarl_representation(as_bidirected(g), threads=self.threads)
        return self

    def expanded(self) -> set:
        return set(expand_representation(self.result_))


class FeedbackFinder(BaseFinder):
    """Feedback arcs of a directed graph, or feedback edges of a tipless bidirected one."""

    def __init__(self) -> None:
        pass

    def fit(self, g: Union[BidirectedGraph, DirectedGraph], y=None) -> "FeedbackFinder":
        if isinstance(g, DirectedGraph):
            self.result_: FeedbackResult = feedback_arcs_directed(g)
        else:
            self.result_ = feedback_edges_tipless_bidirected(g)
        return self
