"""Weak (tensor) and cartesian products, and design orders in weak products.

Product vertices are indexed row-major: ``(v1, v2) -> v1 * n2 + v2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .design import DEFAULT_EPSILON, design_order
from .errors import DisconnectedGraphError, PreconditionError
from .graph import Graph, VertexSet, bipartition, from_edge_list, is_connected, regular_degree
from .spectral import DEFAULT_TAU, decompose

MAX_PRODUCT_N = 4096


@dataclass(frozen=True)
class ProductLabeling:
    n1: int
    n2: int

    def index(self, v1: int, v2: int) -> int:
        return v1 * self.n2 + v2

    def pair(self, index: int) -> tuple[int, int]:
        return divmod(index, self.n2)


def _check_size(g1: Graph, g2: Graph) -> None:
    if g1.n * g2.n > MAX_PRODUCT_N:
        raise PreconditionError(f"product would have {g1.n * g2.n} vertices (cap {MAX_PRODUCT_N})")


def weak_product(g1: Graph, g2: Graph) -> Graph:
    """Tensor product: ``(v1,v2) ~ (u1,u2)`` iff ``v1 ~ u1`` and ``v2 ~ u2``."""
    if regular_degree(g1) is None or regular_degree(g2) is None:
        raise PreconditionError("weak product factors must be regular")
    _check_size(g1, g2)
    lab = ProductLabeling(g1.n, g2.n)
    pairs = []
    for a, b in g1.edges:
        for c, d in g2.edges:
            pairs.append((lab.index(a, c), lab.index(b, d)))
            pairs.append((lab.index(a, d), lab.index(b, c)))
    return from_edge_list(g1.n * g2.n, pairs)


def weak_power(g: Graph, r: int) -> Graph:
    if r < 1:
        raise PreconditionError("power must be at least 1")
    out = g
    for _ in range(r - 1):
        out = weak_product(out, g)
    return out


def cartesian_product(g1: Graph, g2: Graph) -> Graph:
    _check_size(g1, g2)
    lab = ProductLabeling(g1.n, g2.n)
    pairs = [(lab.index(v, a), lab.index(v, b)) for v in range(g1.n) for a, b in g2.edges]
    pairs += [(lab.index(a, w), lab.index(b, w)) for a, b in g1.edges for w in range(g2.n)]
    return from_edge_list(g1.n * g2.n, pairs)


def product_set(w1: VertexSet, w2: VertexSet) -> VertexSet:
    lab = ProductLabeling(w1.host_n, w2.host_n)
    return VertexSet(tuple(lab.index(a, b) for a in w1 for b in w2), w1.host_n * w2.host_n)


def full_set(n: int) -> VertexSet:
    return VertexSet(tuple(range(n)), n)


def _pair_values(a: list[float], b: list[float], tol: float) -> tuple[list[float], bool]:
    """Distinct products x*y over ``a x b`` minus the (1, 1) pair; flags collisions."""
    prods = sorted(x * y for i, x in enumerate(a) for j, y in enumerate(b) if i or j)
    distinct: list[float] = []
    for p in prods:
        if not distinct or p - distinct[-1] > tol:
            distinct.append(p)
    return distinct, len(distinct) == len(prods)


@dataclass(frozen=True)
class ProductOrderRecord:
    k1: int
    k2: int
    k_product: int
    bound: int
    holds: bool
    predicted_order: int
    collision_free: bool
    cylinder1_order: int | None = None
    cylinder2_order: int | None = None
    cylinders_exact: bool | None = None

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def verify_product_order(
    g1: Graph,
    w1: VertexSet,
    g2: Graph,
    w2: VertexSet,
    eps: float = DEFAULT_EPSILON,
    *,
    cylinders: bool = True,
    tau: float = DEFAULT_TAU,
) -> ProductOrderRecord:
    """Design orders of ``w1``, ``w2`` and ``w1 x w2`` and the product bound.

    ``predicted_order`` counts distinct products ``lambda * mu`` over the active
    eigenvalues of each factor (each extended by the constant's eigenvalue 1),
    excluding ``1 * 1``; it is what the order must be when the factors'
    indicators split as tensor products. With ``cylinders`` the sets
    ``w1 x V2`` and ``V1 x w2`` are also checked for order exactly ``k1``,
    ``k2``.
    """
    g = weak_product(g1, g2)
    if not is_connected(g):
        bip = "; both factors are bipartite" if all(_bipartite(x) for x in (g1, g2)) else ""
        raise DisconnectedGraphError(f"weak product is disconnected{bip}")
    r1 = design_order(g1, w1, eps, tau=tau)
    r2 = design_order(g2, w2, eps, tau=tau)
    dec = decompose(g, tau)
    rp = design_order(g, product_set(w1, w2), eps, dec=dec)
    bound = (r1.order + 1) * (r2.order + 1) - 1
    a = [1.0] + [lam for lam, _ in r1.active_eigenvalues]
    b = [1.0] + [lam for lam, _ in r2.active_eigenvalues]
    predicted, collision_free = _pair_values(a, b, dec.grouping_tolerance)
    c1 = c2 = exact = None
    if cylinders:
        c1 = design_order(g, product_set(w1, full_set(g2.n)), eps, dec=dec).order
        c2 = design_order(g, product_set(full_set(g1.n), w2), eps, dec=dec).order
        exact = c1 == r1.order and c2 == r2.order
    return ProductOrderRecord(
        k1=r1.order,
        k2=r2.order,
        k_product=rp.order,
        bound=bound,
        holds=rp.order <= bound,
        predicted_order=len(predicted),
        collision_free=collision_free,
        cylinder1_order=c1,
        cylinder2_order=c2,
        cylinders_exact=exact,
    )


def _bipartite(g: Graph) -> bool:
    return is_connected(g) and bipartition(g) is not None


def spectrum_products(e1, e2) -> np.ndarray:
    """All pairwise products of two eigenvalue lists, sorted descending."""
    return np.sort(np.multiply.outer(np.asarray(e1), np.asarray(e2)).ravel())[::-1]
