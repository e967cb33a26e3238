"""Weighted face-adjacency (dual) graph of an arrangement."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .arrangement import Arrangement
from .errors import EmptyColorClassWarning
from .geom import Instance


@dataclass(frozen=True)
class DualEdge:
    u: int
    v: int
    weight: float
    provenance: tuple[int, ...]  # arrangement edge ids

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


@dataclass(frozen=True)
class DualGraph:
    num_nodes: int
    edges: tuple[DualEdge, ...]
    terminals: dict[int, frozenset[int]]   # color -> nodes

    def total_weight(self) -> float:
        return sum(e.weight for e in self.edges)

    def terminal_color(self) -> dict[int, int]:
        return {v: c for c, nodes in self.terminals.items() for v in nodes}


@dataclass(frozen=True)
class AugmentedGraph:
    base: DualGraph
    apex: dict[int, int]       # color -> apex node id
    apex_weight: float

    def as_graph(self) -> DualGraph:
        """Base graph plus apex nodes; apex edges come after all base edges."""
        extra = []
        for c in sorted(self.apex):
            for v in sorted(self.base.terminals.get(c, ())):
                extra.append(DualEdge(self.apex[c], v, self.apex_weight, ()))
        return DualGraph(self.base.num_nodes + len(self.apex), self.base.edges + tuple(extra),
                         {c: frozenset({a}) for c, a in self.apex.items()})

    @property
    def num_colors(self) -> int:
        return len(self.apex)


def build_dual(arr: Arrangement, inst: Instance | None = None) -> DualGraph:
    """One node per face; parallel adjacencies are merged into one weighted edge.

    An edge with the same face on both sides becomes a self-loop so that the
    provenance lists still partition the arrangement edges.  Terminal colors
    come from ``inst`` (object id -> color); without it, the object faces are
    grouped under the object id.
    """
    acc: dict[tuple[int, int], list[int]] = {}
    for e, (f, g) in enumerate(arr.edge_faces):
        acc.setdefault((min(f, g), max(f, g)), []).append(e)
    edges = tuple(DualEdge(u, v, sum(arr.edges[e][2] for e in prov), tuple(prov))
                  for (u, v), prov in sorted(acc.items()))
    terminals: dict[int, set[int]] = {}
    for face in arr.faces:
        if face.object is None:
            continue
        color = inst.objects[face.object].color if inst is not None else face.object
        terminals.setdefault(color, set()).add(face.id)
    if inst is not None:
        for c in range(inst.num_colors):
            terminals.setdefault(c, set())
    return DualGraph(len(arr.faces), edges, {c: frozenset(v) for c, v in sorted(terminals.items())})


def add_apexes(g: DualGraph, k: int) -> AugmentedGraph:
    """Attach one apex per color, tied to its terminals by a sentinel weight.

    The sentinel (total base weight + 1) beats every apex-free cut, so apex
    edges never appear in a minimum cut.
    """
    apex = {c: g.num_nodes + c for c in range(k)}
    for c in range(k):
        if not g.terminals.get(c):
            warnings.warn(f"color {c} has no objects; its apex is isolated",
                          EmptyColorClassWarning, stacklevel=2)
    return AugmentedGraph(g, apex, g.total_weight() + 1.0)
