"""Hoffman and Cheeger bounds, exact small-graph oracles, and proof chains.

Conventions: ``alpha(G)`` is a ratio ``|S|/|V|``; the Cheeger constant is
``h(G) = min |V| |E(S, V-S)| / (d |S| |V-S|)`` and the classic one is
``h'(G) = min |E(S, V-S)| / min(|S|, |V-S|)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import CapExceeded, PreconditionError
from .graph import Graph, VertexSet, edge_boundary, internal_edges, is_independent, regular_degree
from .spectral import DEFAULT_TAU, SpectralDecomposition, decompose, normalized_adjacency, projection_norms, rayleigh

SHARPNESS_TOL = 1e-9
CHAIN_TOL = 1e-8
ALPHA_CAP = 40
CHEEGER_CAP = 24


def hoffman_bound(dec: SpectralDecomposition) -> float:
    """``-lambda_min / (1 - lambda_min)``."""
    lam = dec.lambda_min
    if lam >= 1.0:
        raise PreconditionError("smallest eigenvalue is 1; the Hoffman bound is undefined")
    return -lam / (1.0 - lam)


def cheeger_lower(dec: SpectralDecomposition) -> float:
    """``1 - lambda_2``."""
    return 1.0 - dec.lambda_2


# --- independence number ----------------------------------------------------

def _low(x: int) -> int:
    return (x & -x).bit_length() - 1


def _clique_cover(p: int, adj: list[int]) -> int:
    """Greedy clique partition size of ``p``: an upper bound on alpha(G[p])."""
    count = 0
    while p:
        v = _low(p)
        p &= ~(1 << v)
        cand = p & adj[v]
        while cand:
            u = _low(cand)
            p &= ~(1 << u)
            cand &= adj[u]
        count += 1
    return count


def _max_independent_size(n: int, adj: list[int]) -> int:
    best = 0

    def expand(size: int, p: int) -> None:
        nonlocal best
        # vertices with at most one neighbor left can always be taken
        changed = True
        while changed and p:
            changed = False
            q = p
            while q:
                v = _low(q)
                q &= ~(1 << v)
                if p >> v & 1 and (adj[v] & p).bit_count() <= 1:
                    size += 1
                    p &= ~(adj[v] | (1 << v))
                    changed = True
        if not p:
            best = max(best, size)
            return
        if size + _clique_cover(p, adj) <= best:
            return
        pivot, pdeg = -1, -1
        q = p
        while q:
            v = _low(q)
            q &= ~(1 << v)
            dv = (adj[v] & p).bit_count()
            if dv > pdeg:
                pivot, pdeg = v, dv
        expand(size + 1, p & ~(adj[pivot] | (1 << pivot)))
        expand(size, p & ~(1 << pivot))

    expand(0, (1 << n) - 1)
    return best


def _lex_first_independent(n: int, adj: list[int], target: int) -> list[int]:
    """Lexicographically smallest independent set of size ``target``."""

    def search(size: int, p: int, chosen: list[int]) -> list[int] | None:
        if size == target:
            return chosen
        if size + p.bit_count() < target or size + _clique_cover(p, adj) < target:
            return None
        v = _low(p)
        found = search(size + 1, p & ~(adj[v] | (1 << v)), chosen + [v])
        if found is not None:
            return found
        return search(size, p & ~(1 << v), chosen)

    result = search(0, (1 << n) - 1, [])
    assert result is not None
    return result


@dataclass(frozen=True)
class IndependenceResult:
    ratio: Fraction
    witness: VertexSet

    @property
    def value(self) -> float:
        return float(self.ratio)


def independence_ratio_exact(g: Graph, cap: int = ALPHA_CAP) -> IndependenceResult:
    """Exact ``alpha(G)`` with the lexicographically smallest maximum independent set."""
    if g.n > cap:
        raise CapExceeded(f"exact independence search capped at n={cap}, graph has n={g.n}")
    adj = g.bitmasks()
    size = _max_independent_size(g.n, adj)
    witness = VertexSet(tuple(_lex_first_independent(g.n, adj, size)), g.n)
    return IndependenceResult(Fraction(size, g.n), witness)


# --- Cheeger constant -------------------------------------------------------

@dataclass(frozen=True)
class CheegerResult:
    exact: Fraction
    witness: VertexSet
    classic_exact: Fraction
    classic_witness: VertexSet

    @property
    def value(self) -> float:
        return float(self.exact)

    @property
    def classic(self) -> float:
        return float(self.classic_exact)


def _subset_boundaries(g: Graph) -> np.ndarray:
    """|E(S, V-S)| for S = {0} + {v : bit v-1 of r}, indexed by r < 2^(n-1).

    Built incrementally: the table for vertices 1..v is the table for 1..v-1
    followed by the same subsets with v added, whose boundary changes by
    ``deg(v) - 2 |N(v) & S|``.
    """
    bound = np.array([g.degree(0)], dtype=np.int32)
    for v in range(1, g.n):
        rest = 0
        for u in g.adjacency[v]:
            if u > 0:
                rest |= 1 << (u - 1)
        inside = np.bitwise_count(np.arange(bound.size, dtype=np.int32) & rest).astype(np.int32)
        inside += 1 if 0 in g.adjacency[v] else 0
        bound = np.concatenate([bound, bound + g.degree(v) - 2 * inside])
    return bound


def _lex_first(masks: np.ndarray) -> int:
    """Mask among ``masks`` whose sorted member tuple is lexicographically smallest."""
    rem = masks.copy()
    keep = np.arange(masks.size)
    while keep.size > 1:
        empty = rem == 0
        if empty.any():
            return int(masks[keep[np.argmax(empty)]])
        low = rem & -rem
        sel = low == low.min()
        keep, rem = keep[sel], rem[sel] ^ low[sel]
    return int(masks[keep[0]])


def _argmin_exact(num: np.ndarray, den: np.ndarray) -> tuple[Fraction, np.ndarray]:
    """Exact minimum of num/den and the indices attaining it."""
    vals = num / den
    lo = vals.min()
    near = np.nonzero(vals <= lo * (1 + 1e-9) + 1e-15)[0]
    best = min(Fraction(int(num[i]), int(den[i])) for i in near)
    hits = near[num[near] * best.denominator == den[near] * best.numerator]
    return best, hits


def _rest_to_set(n: int, rest: int) -> VertexSet:
    return VertexSet((0, *(v for v in range(1, n) if rest >> (v - 1) & 1)), n)


def cheeger_constant_exact(g: Graph, cap: int = CHEEGER_CAP) -> CheegerResult:
    """Exact ``h(G)`` and ``h'(G)`` over all proper subsets.

    Each unordered partition is visited once, through the part containing
    vertex 0; that part is also the lexicographically smaller of the two,
    so witnesses are lexicographically smallest among all optimal subsets.
    """
    if g.n > cap:
        raise CapExceeded(f"exact Cheeger sweep capped at n={cap}, graph has n={g.n}")
    if g.n < 2:
        raise PreconditionError("Cheeger constant needs at least two vertices")
    d = regular_degree(g)
    if d is None or d == 0:
        raise PreconditionError("Cheeger constant requires a regular graph of positive degree")
    n = g.n
    boundary = _subset_boundaries(g)[:-1].astype(np.int64)  # drop S = V
    masks = np.arange(boundary.size, dtype=np.int64)
    sizes = 1 + np.bitwise_count(masks).astype(np.int64)

    ratio, hits = _argmin_exact(boundary, sizes * (n - sizes))
    h = ratio * Fraction(n, d)
    witness = _rest_to_set(n, _lex_first(masks[hits]))

    classic, chits = _argmin_exact(boundary, np.minimum(sizes, n - sizes))
    classic_witness = _rest_to_set(n, _lex_first(masks[chits]))
    return CheegerResult(h, witness, classic, classic_witness)


# --- sharpness ---------------------------------------------------------------

@dataclass(frozen=True)
class Sharpness:
    sharp: bool
    bound: float
    value: float
    witness: VertexSet | None
    witness_only: bool = False

    def to_dict(self) -> dict:
        return {
            "sharp": self.sharp,
            "bound": self.bound,
            "value": self.value,
            "witness": None if self.witness is None else list(self.witness),
            "witness_only": self.witness_only,
        }


def hoffman_sharpness(
    g: Graph,
    *,
    dec: SpectralDecomposition | None = None,
    cap: int = ALPHA_CAP,
    witness: VertexSet | None = None,
    tau: float = DEFAULT_TAU,
    tol: float = SHARPNESS_TOL,
) -> Sharpness:
    """Compare exact ``alpha(G)`` to the Hoffman bound.

    Above ``cap`` a known independent ``witness`` can stand in for the exact
    search; the result is then flagged ``witness_only``: it shows the witness
    meets the bound, and the bound itself rules out anything larger.
    """
    dec = decompose(g, tau) if dec is None else dec
    bound = hoffman_bound(dec)
    if g.n > cap and witness is not None:
        if not is_independent(g, witness):
            raise PreconditionError("witness set is not independent")
        value = len(witness) / g.n
        return Sharpness(abs(value - bound) <= tol, bound, value, witness, True)
    res = independence_ratio_exact(g, cap)
    return Sharpness(abs(res.value - bound) <= tol, bound, res.value, res.witness)


def cheeger_sharpness(
    g: Graph,
    *,
    dec: SpectralDecomposition | None = None,
    cap: int = CHEEGER_CAP,
    tau: float = DEFAULT_TAU,
    tol: float = SHARPNESS_TOL,
) -> Sharpness:
    dec = decompose(g, tau) if dec is None else dec
    bound = cheeger_lower(dec)
    res = cheeger_constant_exact(g, cap)
    return Sharpness(abs(res.value - bound) <= tol, bound, res.value, res.witness)


# --- proof chains -------------------------------------------------------------

@dataclass(frozen=True)
class ChainStep:
    label: str
    value: float
    relation: str  # how the previous step relates to this one: "", "=", ">="
    residual: float  # |prev - this| for "=", prev - this for ">="


@dataclass(frozen=True)
class Chain:
    steps: tuple[ChainStep, ...]

    @property
    def slack(self) -> float:
        return sum(s.residual for s in self.steps if s.relation == ">=")

    @property
    def max_equality_residual(self) -> float:
        return max((s.residual for s in self.steps if s.relation == "="), default=0.0)

    @property
    def tight(self) -> bool:
        return abs(self.slack) <= CHAIN_TOL

    def to_list(self) -> list[dict]:
        return [
            {"label": s.label, "value": s.value, "relation": s.relation, "residual": s.residual}
            for s in self.steps
        ]


def _chain(items: list[tuple[str, float, str]]) -> Chain:
    steps = []
    prev = None
    for label, value, rel in items:
        if prev is None:
            res = 0.0
        elif rel == ">=":
            res = prev - value
        else:
            res = abs(prev - value)
        steps.append(ChainStep(label, float(value), rel, float(res)))
        prev = value
    return Chain(tuple(steps))


def hoffman_inequality_chain(
    g: Graph, s: VertexSet, *, dec: SpectralDecomposition | None = None, tau: float = DEFAULT_TAU
) -> Chain:
    """Evaluate every expression in the Hoffman bound derivation for independent ``s``.

    ``c_i^2`` is aggregated per eigenspace: ``||P_lambda 1_S||^2``. The only
    inequality step has zero slack exactly when ``1_S`` lives in the constant
    and bottom eigenspaces.
    """
    if not is_independent(g, s):
        raise PreconditionError("set is not independent")
    dec = decompose(g, tau) if dec is None else dec
    n, k, d = g.n, len(s), g.degree(0)
    lams = np.array(dec.eigenvalues)
    norms = projection_norms(dec, s.indicator())
    c1sq = norms[0]
    lam_n = dec.lambda_min
    tail = norms[1:].sum()
    return _chain([
        ("<A 1_S, 1_S>", 2 * internal_edges(g, s) / d, ""),
        ("sum_i lambda_i c_i^2", float(lams @ norms), "="),
        ("c_1^2 + sum_{i>=2} lambda_i c_i^2", c1sq + float(lams[1:] @ norms[1:]), "="),
        ("c_1^2 + lambda_n sum_{i>=2} c_i^2", c1sq + lam_n * tail, ">="),
        ("c_1^2 + lambda_n (<1_S, 1_S> - c_1^2)", c1sq + lam_n * (k - c1sq), "="),
        ("(1 - lambda_n) |S|^2 / n + lambda_n |S|", (1 - lam_n) * k * k / n + lam_n * k, "="),
    ])


def cheeger_equality_chain(
    g: Graph, s: VertexSet, *, dec: SpectralDecomposition | None = None, tau: float = DEFAULT_TAU
) -> Chain:
    """Evaluate the Cheeger bound derivation for the partition ``(s, V - s)``."""
    s.check_host(g)
    if not s.is_proper():
        raise PreconditionError("partition needs a nonempty proper subset")
    dec = decompose(g, tau) if dec is None else dec
    n, k, d = g.n, len(s), g.degree(0)
    lams = np.array(dec.eigenvalues)
    ind = s.indicator()
    norms = projection_norms(dec, ind)
    c1 = math.sqrt(norms[0])
    lam2 = dec.lambda_2
    head = c1 * (math.sqrt(n) - c1)
    return _chain([
        ("|E(S,T)| / d", edge_boundary(g, s) / d, ""),
        ("<A 1_S, 1_T>", rayleigh(normalized_adjacency(g), ind, 1.0 - ind), "="),
        ("c_1 (sqrt(n) - c_1) - sum_{i>=2} lambda_i c_i^2", head - float(lams[1:] @ norms[1:]), "="),
        ("c_1 (sqrt(n) - c_1) - lambda_2 sum_{i>=2} c_i^2", head - lam2 * norms[1:].sum(), ">="),
        ("c_1 (sqrt(n) - c_1) - lambda_2 (sum_i c_i^2 - c_1^2)", head - lam2 * (k - norms[0]), "="),
        ("|S| (n - |S|) / n (1 - lambda_2)", k * (n - k) / n * (1 - lam2), "="),
    ])


# --- aggregate report -----------------------------------------------------------

@dataclass(frozen=True)
class BoundsReport:
    hoffman_bound: float
    cheeger_lower: float
    independence: IndependenceResult | None = None
    hoffman: Sharpness | None = None
    cheeger: CheegerResult | None = None
    cheeger_sharp: Sharpness | None = None
    warnings: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        out: dict = {
            "hoffman_bound": self.hoffman_bound,
            "cheeger_lower": self.cheeger_lower,
            "independence_ratio": None,
            "independence_witness": None,
            "hoffman_sharp": None,
            "witness_only": False,
            "cheeger_constant": None,
            "cheeger_witness": None,
            "classic_cheeger": None,
            "cheeger_sharp": None,
        }
        if self.hoffman is not None:
            out["independence_ratio"] = self.hoffman.value
            out["independence_witness"] = list(self.hoffman.witness) if self.hoffman.witness else None
            out["hoffman_sharp"] = self.hoffman.sharp
            out["witness_only"] = self.hoffman.witness_only
        if self.cheeger is not None:
            out["cheeger_constant"] = self.cheeger.value
            out["cheeger_witness"] = list(self.cheeger.witness)
            out["classic_cheeger"] = self.cheeger.classic
            out["cheeger_sharp"] = self.cheeger_sharp.sharp if self.cheeger_sharp else None
        return out


def bounds_report(
    g: Graph,
    *,
    exact_alpha: bool = True,
    exact_cheeger: bool = True,
    alpha_cap: int = ALPHA_CAP,
    cheeger_cap: int = CHEEGER_CAP,
    witness: VertexSet | None = None,
    dec: SpectralDecomposition | None = None,
    tau: float = DEFAULT_TAU,
    tol: float = SHARPNESS_TOL,
) -> BoundsReport:
    dec = decompose(g, tau) if dec is None else dec
    hb, cl = hoffman_bound(dec), cheeger_lower(dec)
    hoff = indep = cheeger = csharp = None
    warnings = []
    if exact_alpha:
        hoff = hoffman_sharpness(g, dec=dec, cap=alpha_cap, witness=witness, tol=tol)
        if hoff.witness_only:
            warnings.append("hoffman sharpness checked on the supplied witness only (witness_only)")
        else:
            indep = IndependenceResult(Fraction(len(hoff.witness), g.n), hoff.witness)
    if exact_cheeger:
        cheeger = cheeger_constant_exact(g, cheeger_cap)
        csharp = Sharpness(abs(cheeger.value - cl) <= tol, cl, cheeger.value, cheeger.witness)
    return BoundsReport(hb, cl, indep, hoff, cheeger, csharp, tuple(warnings))
