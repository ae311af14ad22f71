"""Generators for the graph families and named designs used throughout.

Labeling conventions (fixed, so vertex indices are stable):

* ``kneser(n, k)``: k-subsets of ``{1..n}`` in colexicographic order.
* ``derangement_graph(n)``: permutations of ``{1..n}`` in lexicographic order;
  a permutation is stored as the tuple ``(sigma(1), ..., sigma(n))``.
* ``hypercube(n)``: a subset ``J`` of ``{1..n}`` is the integer whose bit
  ``k - 1`` is set iff ``k`` is in ``J``.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import GraphError, PreconditionError
from .graph import Graph, VertexSet, from_edge_list, read_graph, read_vertex_set

FIXTURE_ENV = "GRAPHDESIGNS_FIXTURES"
FIXTURES = ("sylvester", "truncated_tetrahedron")


def complete(n: int) -> Graph:
    if n < 2:
        raise PreconditionError("complete graph needs n >= 2")
    return from_edge_list(n, itertools.combinations(range(n), 2))


def cycle(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("cycle needs n >= 3")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def hypercube(n: int) -> Graph:
    if not 1 <= n <= 12:
        raise PreconditionError("hypercube dimension must be in 1..12")
    return from_edge_list(
        1 << n, [(x, x | (1 << b)) for x in range(1 << n) for b in range(n) if not x >> b & 1]
    )


def _colex_subsets(n: int, k: int) -> list[tuple[int, ...]]:
    return sorted(itertools.combinations(range(1, n + 1), k), key=lambda c: c[::-1])


def kneser_labels(n: int, k: int) -> list[tuple[int, ...]]:
    """Vertex ``i`` of ``kneser(n, k)`` is the k-subset ``kneser_labels(n, k)[i]``."""
    return _colex_subsets(n, k)


def kneser(n: int, k: int) -> Graph:
    """KG(n, k): k-subsets of [n], adjacent when disjoint.

    Requires ``k >= 1`` and ``n >= 2k`` (nonempty edge set). ``n = 2k`` is a
    perfect matching, which the spectral operations refuse as disconnected.
    """
    if k < 1 or n < 2 * k:
        raise PreconditionError(f"kneser({n}, {k}) has no edges; need k >= 1 and n >= 2k")
    labels = _colex_subsets(n, k)
    sets = [frozenset(c) for c in labels]
    pairs = [(i, j) for i, j in itertools.combinations(range(len(sets)), 2) if not sets[i] & sets[j]]
    return from_edge_list(len(sets), pairs)


def kneser_star(n: int, k: int, element: int) -> VertexSet:
    if not 1 <= element <= n:
        raise PreconditionError(f"element must lie in 1..{n}")
    if k < 1 or n < 2 * k:
        raise PreconditionError(f"kneser({n}, {k}) has no edges; need k >= 1 and n >= 2k")
    labels = _colex_subsets(n, k)
    return VertexSet.of(len(labels), (i for i, c in enumerate(labels) if element in c))


def derangement_labels(n: int) -> list[tuple[int, ...]]:
    return list(itertools.permutations(range(1, n + 1)))


def derangement_graph(n: int) -> Graph:
    """Permutations of [n], adjacent when they disagree at every position."""
    if not 2 <= n <= 6:
        raise PreconditionError("derangement graph supported for 2 <= n <= 6")
    perms = np.array(derangement_labels(n))
    agree = (perms[:, None, :] == perms[None, :, :]).any(axis=2)
    u, v = np.nonzero(np.triu(~agree, k=1))
    return from_edge_list(len(perms), zip(u.tolist(), v.tolist()))


def derangement_count(n: int) -> int:
    """Number of fixed-point-free permutations of n elements."""
    return sum((-1) ** i * math.factorial(n) // math.factorial(i) for i in range(n + 1))


def permutation_stabilizer(n: int, i: int, j: int) -> VertexSet:
    """Permutations with ``sigma(i) == j``, as vertices of ``derangement_graph(n)``."""
    if not 2 <= n <= 6:
        raise PreconditionError("derangement graph supported for 2 <= n <= 6")
    if not (1 <= i <= n and 1 <= j <= n):
        raise PreconditionError(f"indices must lie in 1..{n}")
    perms = derangement_labels(n)
    return VertexSet.of(len(perms), (r for r, p in enumerate(perms) if p[i - 1] == j))


def _subset_mask(n: int, subset: Iterable[int]) -> int:
    mask = 0
    for k in subset:
        if not 1 <= k <= n:
            raise PreconditionError(f"element {k} outside 1..{n}")
        mask |= 1 << (k - 1)
    return mask


@dataclass(frozen=True, eq=False)
class HypercubeCharacter:
    """The +-1 function ``J -> (-1)^{|I & J|}`` on the vertices of Q_n."""

    n: int
    subset: frozenset[int]
    values: np.ndarray
    eigenvalue: Fraction

    def exact_residual(self, g: Graph) -> int:
        """max_v |sum_{u~v} chi(u) - (n - 2|I|) chi(v)| in integer arithmetic."""
        vals = self.values.tolist()
        target = self.n - 2 * len(self.subset)
        return max(abs(sum(vals[u] for u in g.adjacency[v]) - target * vals[v]) for v in range(g.n))


def hypercube_character(n: int, subset: Iterable[int]) -> HypercubeCharacter:
    subset = frozenset(subset)
    mask = _subset_mask(n, subset)
    verts = np.arange(1 << n)
    values = np.where(np.bitwise_count(verts & mask) % 2 == 0, 1, -1).astype(np.int64)
    return HypercubeCharacter(n, subset, values, Fraction(n - 2 * len(subset), n))


def hypercube_design(n: int, subset: Iterable[int]) -> tuple[VertexSet, VertexSet]:
    """``(S_I, T_I)``: vertices meeting ``I`` in an odd / even number of elements."""
    subset = frozenset(subset)
    if not subset or len(subset) >= n:
        raise PreconditionError("I must be a nonempty proper subset of [n]")
    mask = _subset_mask(n, subset)
    odd = [x for x in range(1 << n) if bin(x & mask).count("1") % 2]
    even = [x for x in range(1 << n) if not bin(x & mask).count("1") % 2]
    return VertexSet(tuple(odd), 1 << n), VertexSet(tuple(even), 1 << n)


def _fixture_dir() -> Path:
    override = os.environ.get(FIXTURE_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("graphdesigns") / "fixtures"))


def fixture(name: str) -> tuple[Graph, dict[str, VertexSet]]:
    """Bundled graph plus its named vertex sets.

    ``sylvester`` carries ``"design"``, a maximal independent 6-set.
    ``truncated_tetrahedron`` carries ``"design"``, the first order-1 4-set
    found by exhaustive search.
    """
    if name not in FIXTURES:
        raise GraphError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    root = _fixture_dir()
    g = read_graph(root / f"{name}.edges")
    sets = {}
    for path in sorted(root.glob(f"{name}.*")):
        if path.suffix != ".edges":
            sets[path.suffix[1:]] = read_vertex_set(path, g.n)
    return g, sets
