"""Simple undirected graphs on vertices ``0..n-1`` and vertex subsets.

Graphs are immutable. Edge-list files look like::

    # optional comments
    n m
    u v
    ...

with exactly ``m`` edge lines and ``0 <= u, v < n``, ``u != v``.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DisconnectedGraphError, GraphError

__all__ = [
    "Graph",
    "VertexSet",
    "from_edge_list",
    "regular_degree",
    "is_connected",
    "bipartition",
    "edge_boundary",
    "internal_edges",
    "is_independent",
    "read_graph",
    "write_graph",
    "read_vertex_set",
    "write_vertex_set",
]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph. Build it with :func:`from_edge_list`."""

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(compare=False, repr=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(nb) for nb in self.adjacency]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        if self.edges:
            e = np.asarray(self.edges)
            a[e[:, 0], e[:, 1]] = 1
            a[e[:, 1], e[:, 0]] = 1
        return a

    def bitmasks(self) -> list[int]:
        """Neighborhood of each vertex as an int bitset."""
        out = []
        for nb in self.adjacency:
            mask = 0
            for u in nb:
                mask |= 1 << u
            out.append(mask)
        return out

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabeling must be a permutation of 0..n-1")
        return from_edge_list(self.n, [(perm[u], perm[v]) for u, v in self.edges])


@dataclass(frozen=True)
class VertexSet:
    """Sorted set of distinct vertices of a graph with ``host_n`` vertices."""

    members: tuple[int, ...]
    host_n: int

    @classmethod
    def of(cls, host_n: int, members: Iterable[int]) -> "VertexSet":
        items = [int(v) for v in members]
        if len(set(items)) != len(items):
            raise GraphError("vertex set contains duplicates")
        for v in items:
            if not 0 <= v < host_n:
                raise GraphError(f"vertex {v} out of range 0..{host_n - 1}")
        return cls(tuple(sorted(items)), host_n)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, v: object) -> bool:
        return v in self._lookup

    @cached_property
    def _lookup(self) -> frozenset[int]:
        return frozenset(self.members)

    def indicator(self) -> np.ndarray:
        f = np.zeros(self.host_n)
        f[list(self.members)] = 1.0
        return f

    def mask(self) -> int:
        out = 0
        for v in self.members:
            out |= 1 << v
        return out

    def complement(self) -> "VertexSet":
        inside = self._lookup
        return VertexSet(tuple(v for v in range(self.host_n) if v not in inside), self.host_n)

    def is_proper(self) -> bool:
        """Nonempty and not the whole vertex set."""
        return 0 < len(self.members) < self.host_n

    def check_host(self, g: Graph) -> None:
        if self.host_n != g.n:
            raise GraphError(f"vertex set indexes {self.host_n} vertices, graph has {g.n}")


def from_edge_list(n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph, collapsing duplicate edges. Loops are rejected."""
    if n < 1:
        raise GraphError("a graph needs at least one vertex")
    edges = set()
    for u, v in pairs:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        edges.add((u, v) if u < v else (v, u))
    ordered = tuple(sorted(edges))
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in ordered:
        nbrs[u].append(v)
        nbrs[v].append(u)
    return Graph(n, ordered, tuple(tuple(sorted(nb)) for nb in nbrs))


def regular_degree(g: Graph) -> int | None:
    """Common degree if ``g`` is regular, else None."""
    degs = set(g.degrees())
    return degs.pop() if len(degs) == 1 else None


def _components(g: Graph) -> list[int]:
    comp = [-1] * g.n
    c = 0
    for s in range(g.n):
        if comp[s] != -1:
            continue
        comp[s] = c
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.adjacency[v]:
                if comp[u] == -1:
                    comp[u] = c
                    queue.append(u)
        c += 1
    return comp


def is_connected(g: Graph) -> bool:
    return max(_components(g)) == 0


def bipartition(g: Graph) -> tuple[VertexSet, VertexSet] | None:
    """2-coloring classes of a connected graph; the class of vertex 0 comes first."""
    if not is_connected(g):
        raise DisconnectedGraphError("bipartition requires a connected graph")
    color = [-1] * g.n
    color[0] = 0
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for u in g.adjacency[v]:
            if color[u] == -1:
                color[u] = 1 - color[v]
                queue.append(u)
            elif color[u] == color[v]:
                return None
    a = VertexSet(tuple(v for v in range(g.n) if color[v] == 0), g.n)
    b = VertexSet(tuple(v for v in range(g.n) if color[v] == 1), g.n)
    return a, b


def edge_boundary(g: Graph, s: VertexSet) -> int:
    """Number of edges with exactly one endpoint in ``s``."""
    s.check_host(g)
    inside = s._lookup
    return sum((u in inside) != (v in inside) for u, v in g.edges)


def internal_edges(g: Graph, s: VertexSet) -> int:
    """Number of edges with both endpoints in ``s``."""
    s.check_host(g)
    inside = s._lookup
    return sum(u in inside and v in inside for u, v in g.edges)


def is_independent(g: Graph, s: VertexSet) -> bool:
    return internal_edges(g, s) == 0


# --- file I/O ---------------------------------------------------------------

def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((lineno, line))
    return out


def parse_graph(text: str, *, strict: bool = True) -> Graph:
    lines = _content_lines(text)
    if not lines:
        raise GraphError("missing 'n m' header")
    lineno, header = lines[0]
    try:
        n, m = (int(tok) for tok in header.split())
    except ValueError:
        raise GraphError(f"line {lineno}: malformed header {header!r}") from None
    if n < 1 or m < 0:
        raise GraphError(f"line {lineno}: header needs n >= 1 and m >= 0")
    body = lines[1:]
    if len(body) != m:
        raise GraphError(f"header announces {m} edges, file has {len(body)}")
    pairs = []
    seen = set()
    for lineno, line in body:
        toks = line.split()
        if len(toks) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex in {line!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"line {lineno}: vertex index out of range 0..{n - 1}")
        if u == v:
            raise GraphError(f"line {lineno}: loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if strict and key in seen:
            raise GraphError(f"line {lineno}: duplicate edge {key}")
        seen.add(key)
        pairs.append((u, v))
    return from_edge_list(n, pairs)


def format_graph(g: Graph) -> str:
    """Canonical serialized form: sorted edges with ``u < v``."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def read_graph(path: str | os.PathLike, *, strict: bool = True) -> Graph:
    """Read an edge-list file. ``strict=False`` deduplicates repeated edges."""
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read(), strict=strict)


def write_graph(g: Graph, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(g))


def parse_vertex_set(text: str, host_n: int) -> VertexSet:
    members = []
    for lineno, line in _content_lines(text):
        try:
            members.append(int(line))
        except ValueError:
            raise GraphError(f"line {lineno}: expected a vertex index, got {line!r}") from None
    return VertexSet.of(host_n, members)


def read_vertex_set(path: str | os.PathLike, host_n: int) -> VertexSet:
    with open(path, encoding="utf-8") as fh:
        return parse_vertex_set(fh.read(), host_n)


def write_vertex_set(s: VertexSet, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("".join(f"{v}\n" for v in s))
