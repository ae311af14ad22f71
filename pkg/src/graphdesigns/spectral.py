"""Normalized adjacency operator and its eigenspace decomposition.

Eigenvalues of ``A = adj / d`` are computed with a cyclic Jacobi method and
grouped into eigenspaces. Designs are defined in terms of eigenspaces, never
in terms of a particular enumeration of eigenfunctions inside one.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import DisconnectedGraphError, PreconditionError, SpectralError
from .graph import Graph, is_connected, regular_degree

log = logging.getLogger(__name__)

DEFAULT_TAU = 1e-7
MAX_DENSE_N = 4096
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True, eq=False)
class NormalizedAdjacency:
    matrix: np.ndarray
    degree: int

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def __matmul__(self, f):
        return self.matrix @ f


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Distinct eigenvalues (descending) with orthonormal eigenspace bases.

    ``bases[i]`` is an ``n x multiplicity`` array whose columns span the
    eigenspace of ``eigenvalues[i]``.
    """

    eigenvalues: tuple[float, ...]
    bases: tuple[np.ndarray, ...]
    grouping_tolerance: float
    raw_eigenvalues: np.ndarray = field(repr=False)
    sweeps: int = 0
    warnings: tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return self.raw_eigenvalues.shape[0]

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(b.shape[1] for b in self.bases)

    @property
    def lambda_min(self) -> float:
        return self.eigenvalues[-1]

    @property
    def lambda_2(self) -> float:
        """Largest eigenvalue strictly below the top one."""
        if len(self.eigenvalues) < 2:
            raise PreconditionError("spectrum has a single distinct eigenvalue")
        return self.eigenvalues[1]

    def projector(self, index: int) -> np.ndarray:
        b = self.bases[index]
        return b @ b.T

    def index_of(self, value: float, tol: float | None = None) -> int | None:
        tol = self.grouping_tolerance if tol is None else tol
        for i, lam in enumerate(self.eigenvalues):
            if abs(lam - value) <= tol:
                return i
        return None

    def reconstruct(self) -> np.ndarray:
        return sum(lam * self.projector(i) for i, lam in enumerate(self.eigenvalues))


@dataclass(frozen=True, eq=False)
class Projection:
    eigenvalue: float
    component: np.ndarray
    squared_norm: float


def normalized_adjacency(g: Graph) -> NormalizedAdjacency:
    d = regular_degree(g)
    if d is None or d == 0:
        raise PreconditionError("normalized adjacency requires a regular graph of positive degree")
    if not is_connected(g):
        raise DisconnectedGraphError("graph is disconnected; design analysis assumes connectivity")
    if g.n > MAX_DENSE_N:
        raise PreconditionError(f"n={g.n} exceeds the dense-spectrum guard {MAX_DENSE_N}")
    return NormalizedAdjacency(g.adjacency_matrix() / d, d)


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Circle-method schedule: n-1 rounds (n even) of disjoint index pairs."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        p, q = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < n and b < n:
                p.append(min(a, b))
                q.append(max(a, b))
        rounds.append((np.array(p, dtype=np.intp), np.array(q, dtype=np.intp)))
        players = [players[0], players[-1], *players[1:-1]]
    return rounds


def _rotate_rows(m: np.ndarray, p, q, c, s) -> None:
    mp, mq = m[p], m[q]
    m[p] = c * mp - s * mq
    m[q] = s * mp + c * mq


def jacobi_eigh(
    a: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS
) -> tuple[np.ndarray, np.ndarray, int]:
    """Eigenvalues and eigenvectors of a symmetric matrix by cyclic Jacobi.

    Each sweep visits every off-diagonal pair once, grouped into rounds of
    disjoint pairs whose rotations commute and are applied together. The
    schedule is fixed, so results are bitwise reproducible.

    Returns ``(eigenvalues, vectors, sweeps)`` with ``a @ vectors[:, i] ==
    eigenvalues[i] * vectors[:, i]``; order is unspecified.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise PreconditionError("matrix must be square")
    if not np.allclose(a, a.T, atol=1e-12):
        raise PreconditionError("matrix must be symmetric")
    a = (a + a.T) / 2
    vt = np.eye(n)  # transposed eigenvector matrix: rows are updated in place
    if n == 1:
        return a.diagonal().copy(), vt, 0
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n), vt, 0
    threshold = tol * scale
    # skipped entries contribute < threshold**2 / 2 to the off-diagonal mass
    negligible = threshold / n
    offdiag = ~np.eye(n, dtype=bool)
    rounds = _round_robin(n)
    for sweep in range(max_sweeps + 1):
        off = float(np.sqrt(np.sum(a[offdiag] ** 2)))
        if off < threshold:
            return a.diagonal().copy(), vt.T.copy(), sweep
        if sweep == max_sweeps:
            break
        for p, q in rounds:
            apq = a[p, q]
            active = np.abs(apq) > negligible
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            t[theta == 0.0] = 1.0
            c = (1.0 / np.sqrt(t * t + 1.0))[:, None]
            s = t[:, None] * c
            # J^T A J as two row passes: rows of J^T A, then rows of (J^T A)^T = A J
            _rotate_rows(a, p, q, c, s)
            a = np.ascontiguousarray(a.T)
            _rotate_rows(a, p, q, c, s)
            a[p, q] = 0.0
            a[q, p] = 0.0
            _rotate_rows(vt, p, q, c, s)
    raise SpectralError(f"Jacobi did not converge in {max_sweeps} sweeps (off-norm {off:.3e})")


def eigendecompose(
    a: NormalizedAdjacency | np.ndarray, grouping_tolerance: float = DEFAULT_TAU
) -> SpectralDecomposition:
    """Full spectrum grouped into eigenspaces.

    Sorted eigenvalues whose consecutive gaps are at most ``grouping_tolerance``
    are merged; each group's basis is re-orthonormalized. A group whose spread
    exceeds ``grouping_tolerance / 10`` is reported in ``warnings`` since it may
    merge genuinely distinct eigenvalues.
    """
    mat = a.matrix if isinstance(a, NormalizedAdjacency) else np.asarray(a, dtype=float)
    values, vectors, sweeps = jacobi_eigh(mat)
    order = np.argsort(-values, kind="stable")
    values, vectors = values[order], vectors[:, order]

    groups: list[list[int]] = [[0]]
    for i in range(1, len(values)):
        if values[groups[-1][-1]] - values[i] <= grouping_tolerance:
            groups[-1].append(i)
        else:
            groups.append([i])

    eigenvalues, bases, warnings = [], [], []
    for idx in groups:
        vals = values[idx]
        lam = float(vals.mean())
        spread = float(vals.max() - vals.min())
        if spread > grouping_tolerance / 10:
            msg = f"eigenvalue group near {lam:.12g} has spread {spread:.3e}; distinct eigenvalues may be merged"
            log.warning(msg)
            warnings.append(msg)
        basis, _ = np.linalg.qr(vectors[:, idx])
        eigenvalues.append(lam)
        bases.append(basis)
    return SpectralDecomposition(
        eigenvalues=tuple(eigenvalues),
        bases=tuple(bases),
        grouping_tolerance=grouping_tolerance,
        raw_eigenvalues=values,
        sweeps=sweeps,
        warnings=tuple(warnings),
    )


@functools.lru_cache(maxsize=64)
def decompose(g: Graph, grouping_tolerance: float = DEFAULT_TAU) -> SpectralDecomposition:
    """Cached ``eigendecompose(normalized_adjacency(g))``."""
    return eigendecompose(normalized_adjacency(g), grouping_tolerance)


def project(dec: SpectralDecomposition, f, index: int) -> Projection:
    """Component of ``f`` in the eigenspace ``dec.eigenvalues[index]``."""
    f = np.asarray(f, dtype=float)
    if f.shape != (dec.n,):
        raise PreconditionError(f"vector has shape {f.shape}, expected ({dec.n},)")
    if not 0 <= index < len(dec.eigenvalues):
        raise IndexError(f"eigenspace index {index} out of range")
    b = dec.bases[index]
    coeffs = b.T @ f
    return Projection(dec.eigenvalues[index], b @ coeffs, float(coeffs @ coeffs))


def projection_norms(dec: SpectralDecomposition, f) -> np.ndarray:
    """``||P_lambda f||^2`` for every eigenspace, in ``dec.eigenvalues`` order."""
    f = np.asarray(f, dtype=float)
    return np.array([float(np.sum((b.T @ f) ** 2)) for b in dec.bases])


def rayleigh(a: NormalizedAdjacency, f, g) -> float:
    """The bilinear form ``<A f, g>``."""
    f = np.asarray(f, dtype=float)
    g = np.asarray(g, dtype=float)
    if f.shape != (a.n,) or g.shape != (a.n,):
        raise PreconditionError("vector dimensions do not match the operator")
    return float((a.matrix @ f) @ g)
