"""Parity-fixing edge duplication on trees whose inner vertices have degree 3.

Given such a tree, pick edges to double so that every inner vertex ends up
with even degree (4 or 6) while the doubled length is as small as possible.
The optimum never exceeds a third of the total tree length.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import MalformedTree, ParseError, TooLarge

Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class WeightedTree:
    """Rooted at a leaf; ``lengths[v]`` is the length of edge (v, parent[v])."""

    parent: tuple[int, ...]
    lengths: tuple[float, ...]
    root: int
    labels: tuple[str, ...] = ()

    @classmethod
    def from_edges(cls, num_nodes: int, edges, root: Optional[int] = None,
                   labels=()) -> "WeightedTree":
        if num_nodes < 2 or len(edges) != num_nodes - 1:
            raise MalformedTree(f"{num_nodes} nodes need {num_nodes - 1} edges, got {len(edges)}")
        adj: list[list[tuple[int, float]]] = [[] for _ in range(num_nodes)]
        for u, v, w in edges:
            if not (0 <= u < num_nodes and 0 <= v < num_nodes) or u == v:
                raise MalformedTree(f"bad edge ({u}, {v})")
            if not (math.isfinite(w) and w > 0):
                raise MalformedTree(f"edge ({u}, {v}) has non-positive length {w}")
            adj[u].append((v, float(w)))
            adj[v].append((u, float(w)))
        for v, nb in enumerate(adj):
            if len(nb) not in (1, 3):
                raise MalformedTree(f"vertex {v} has degree {len(nb)}; inner vertices need degree 3")
        leaves = [v for v in range(num_nodes) if len(adj[v]) == 1]
        if root is None:
            root = leaves[0]
        elif len(adj[root]) != 1:
            raise MalformedTree(f"root {root} is not a leaf")
        parent = [-2] * num_nodes
        lengths = [0.0] * num_nodes
        parent[root] = -1
        stack = [root]
        while stack:
            x = stack.pop()
            for y, w in adj[x]:
                if parent[y] == -2:
                    parent[y] = x
                    lengths[y] = w
                    stack.append(y)
        if -2 in parent:
            raise MalformedTree("graph is not connected")
        return cls(tuple(parent), tuple(lengths), root, tuple(labels))

    @property
    def num_nodes(self) -> int:
        return len(self.parent)

    def edges(self) -> list[tuple[int, int, float]]:
        return sorted((*_edge(v, p), self.lengths[v]) for v, p in enumerate(self.parent) if p >= 0)

    def total_length(self) -> float:
        return sum(w for v, w in enumerate(self.lengths) if self.parent[v] >= 0)

    def children(self) -> list[list[int]]:
        kids: list[list[int]] = [[] for _ in self.parent]
        for v, p in enumerate(self.parent):
            if p >= 0:
                kids[p].append(v)
        return kids

    def rerooted(self, root: int) -> "WeightedTree":
        return WeightedTree.from_edges(self.num_nodes, self.edges(), root, self.labels)

    def leaves(self) -> list[int]:
        deg = [0] * self.num_nodes
        for u, v, _ in self.edges():
            deg[u] += 1
            deg[v] += 1
        return [v for v in range(self.num_nodes) if deg[v] == 1]


@dataclass(frozen=True)
class DuplicationResult:
    cost: float
    duplicated: frozenset[Edge]
    table: dict[Edge, tuple[float, float]]   # edge above a subtree -> (U1, U2)


def _check(t: WeightedTree) -> None:
    kids = t.children()
    for v, ks in enumerate(kids):
        if v == t.root:
            if len(ks) != 1:
                raise MalformedTree("root must be a leaf")
        elif len(ks) not in (0, 2):
            raise MalformedTree(f"vertex {v} has degree {len(ks) + 1}; inner vertices need degree 3")


def min_duplication(t: WeightedTree) -> DuplicationResult:
    """Bottom-up DP over subtrees hanging below each edge.

    For the subtree below edge (u, v): U1 is the cheapest duplication inside
    it when (u, v) is kept single, U2 when (u, v) is doubled.  With L, R the
    two subtrees below v::

        U1 = min(L1 + R2, L2 + R1)
        U2 = min(L1 + R1, L2 + R2) + |uv|
    """
    _check(t)
    kids = t.children()
    order = []
    stack = [t.root]
    while stack:
        x = stack.pop()
        order.append(x)
        stack.extend(kids[x])
    u1 = [0.0] * t.num_nodes
    u2 = [0.0] * t.num_nodes
    for v in reversed(order):
        if v == t.root:
            continue
        if not kids[v]:
            u1[v], u2[v] = 0.0, t.lengths[v]
        else:
            l, r = kids[v]
            u1[v] = min(u1[l] + u2[r], u2[l] + u1[r])
            u2[v] = min(u1[l] + u1[r], u2[l] + u2[r]) + t.lengths[v]

    top = kids[t.root][0]
    mult = [0] * t.num_nodes
    mult[top] = 1 if u1[top] <= u2[top] else 2
    for v in order:
        if v == t.root or not kids[v]:
            continue
        l, r = kids[v]
        if mult[v] == 1:
            mult[l], mult[r] = (1, 2) if u1[l] + u2[r] <= u2[l] + u1[r] else (2, 1)
        else:
            mult[l], mult[r] = (1, 1) if u1[l] + u1[r] <= u2[l] + u2[r] else (2, 2)

    dup = frozenset(_edge(v, t.parent[v]) for v in order if v != t.root and mult[v] == 2)
    cost = float(sum(t.lengths[v] for v in order if v != t.root and mult[v] == 2))
    table = {_edge(v, t.parent[v]): (u1[v], u2[v]) for v in order if v != t.root}
    return DuplicationResult(cost, dup, table)


def parity_ok(t: WeightedTree, duplicated) -> bool:
    """Every inner vertex has even degree once ``duplicated`` edges are doubled."""
    deg = [0] * t.num_nodes
    inner = [0] * t.num_nodes
    for u, v, _ in t.edges():
        m = 2 if (u, v) in duplicated else 1
        deg[u] += m
        deg[v] += m
        inner[u] += 1
        inner[v] += 1
    return all(deg[v] % 2 == 0 for v in range(t.num_nodes) if inner[v] > 1)


def brute_force_duplication(t: WeightedTree, max_edges: int = 22) -> DuplicationResult:
    """Minimum over all edge subsets that fix inner-vertex parity."""
    _check(t)
    edges = t.edges()
    m = len(edges)
    if m > max_edges:
        raise TooLarge(f"{m} edges exceed the exhaustive limit of {max_edges}")
    masks = np.arange(1 << m, dtype=np.int64)
    incident: dict[int, int] = {}
    for i, (u, v, _) in enumerate(edges):
        incident[u] = incident.get(u, 0) | (1 << i)
        incident[v] = incident.get(v, 0) | (1 << i)
    ok = np.ones(1 << m, dtype=bool)
    for v, bits in incident.items():
        if bin(bits).count("1") == 3:
            # degree 3 + (number doubled) must be even, so an odd number doubled
            sel = masks & bits
            parity = np.zeros_like(sel)
            for i in range(m):
                if bits >> i & 1:
                    parity ^= (sel >> i) & 1
            ok &= parity == 1
    cost = np.zeros(1 << m)
    for i, (_, _, w) in enumerate(edges):
        cost += ((masks >> i) & 1) * w
    cost[~ok] = np.inf
    best = int(np.argmin(cost))
    dup = frozenset((edges[i][0], edges[i][1]) for i in range(m) if best >> i & 1)
    return DuplicationResult(float(cost[best]), dup, {})


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

TREE_FORMAT_HELP = """\
Trees are written as nested parentheses with edge lengths, Newick style:
  node  := '(' child (',' child)* ')' [name]  |  name
  child := node ':' length
The outermost node is a vertex too, so '(a:1,b:1,c:1)' is the star K_{1,3}
and '(:5)' is a single edge of length 5.  Every inner vertex must end up
with degree 3, e.g. '((:1,:1):1,:1,:1)' is the 4-leaf tree with 5 edges."""


def parse_tree(text: str) -> WeightedTree:
    pos = 0
    text = text.strip().rstrip(";")
    edges: list[tuple[int, int, float]] = []
    labels: list[str] = []

    def fail(msg):
        raise ParseError(msg, 1, pos + 1)

    def name():
        nonlocal pos
        start = pos
        while pos < len(text) and (text[pos].isalnum() or text[pos] in "_.-"):
            pos += 1
        return text[start:pos]

    def number():
        nonlocal pos
        start = pos
        while pos < len(text) and (text[pos].isdigit() or text[pos] in ".eE+-"):
            pos += 1
        try:
            return float(text[start:pos])
        except ValueError:
            pos = start
            fail("expected an edge length")

    def node():
        nonlocal pos
        me = len(labels)
        labels.append("")
        if pos < len(text) and text[pos] == "(":
            pos += 1
            while True:
                child = node()
                if pos >= len(text) or text[pos] != ":":
                    fail("expected ':' before edge length")
                pos += 1
                edges.append((me, child, number()))
                if pos < len(text) and text[pos] == ",":
                    pos += 1
                    continue
                if pos < len(text) and text[pos] == ")":
                    pos += 1
                    break
                fail("expected ',' or ')'")
        labels[me] = name()
        return me

    node()
    if pos != len(text):
        fail("trailing characters")
    return WeightedTree.from_edges(len(labels), edges, labels=labels)


def random_full_tree(rng: random.Random, num_leaves: int, max_length: float = 10.0) -> WeightedTree:
    """Random tree with ``num_leaves`` leaves, inner degree 3, lengths in (0, max_length]."""
    if num_leaves < 2:
        raise ValueError("need at least two leaves")
    edges = [[0, 1]]
    n = 2
    if num_leaves >= 3:
        # start from a star, then keep splitting an edge and hanging a leaf off it
        edges = [[0, 1], [0, 2], [0, 3]]
        n = 4
        for _ in range(num_leaves - 3):
            i = rng.randrange(len(edges))
            u, v = edges[i]
            edges[i] = [u, n]
            edges.append([n, v])
            edges.append([n, n + 1])
            n += 2
    weighted = [(u, v, max_length * (1.0 - rng.random())) for u, v in edges]
    return WeightedTree.from_edges(n, weighted)
