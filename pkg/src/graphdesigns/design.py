"""Design order of a vertex subset and extremality certificates.

The order of ``W`` is the number of non-constant eigenspaces onto which the
indicator ``1_W`` has a nonzero projection. This is the minimal number of
non-constant eigenfunctions that, together with the constant, span ``1_W``:
the projection onto each active eigenspace is one such eigenfunction, so the
count suffices; and eigenfunctions of distinct eigenvalues are linearly
independent, so every active eigenspace needs at least one. The count does not
depend on how a basis is chosen inside a repeated eigenvalue.

Only uniform weights ``1/|W|`` are supported.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CertificationError, PreconditionError
from .graph import Graph, VertexSet, edge_boundary, is_independent
from .spectral import DEFAULT_TAU, SpectralDecomposition, decompose, projection_norms

DEFAULT_EPSILON = 1e-8
SHARPNESS_TOL = 1e-9
MEAN_TOL = 1e-8


@dataclass(frozen=True)
class DesignReport:
    subset: VertexSet
    order: int
    active_eigenvalues: tuple[tuple[float, float], ...]
    satisfied_count: int
    activity_threshold: float

    @property
    def is_extremal(self) -> bool:
        return self.order == 1

    def to_dict(self) -> dict:
        return {
            "subset": list(self.subset),
            "size": len(self.subset),
            "order": self.order,
            "extremal": self.is_extremal,
            "active_eigenvalues": [
                {"eigenvalue": lam, "squared_norm": norm} for lam, norm in self.active_eigenvalues
            ],
            "satisfied_count": self.satisfied_count,
            "activity_threshold": self.activity_threshold,
        }


def _spectrum_for(g: Graph, w: VertexSet, dec: SpectralDecomposition | None, tau: float) -> SpectralDecomposition:
    w.check_host(g)
    if not w.is_proper():
        raise PreconditionError("a graphical design must be a nonempty proper subset")
    if dec is None:
        dec = decompose(g, tau)
    if dec.n != g.n:
        raise PreconditionError("decomposition does not belong to this graph")
    if dec.multiplicities[0] != 1 or abs(dec.eigenvalues[0] - 1.0) > 1e-9:
        raise CertificationError("top eigenvalue is not a simple 1; spectrum is inconsistent")
    return dec


def _active(dec: SpectralDecomposition, w: VertexSet, eps: float) -> list[tuple[int, float]]:
    norms = projection_norms(dec, w.indicator())
    return [(i, float(norms[i])) for i in range(1, len(norms)) if norms[i] > eps * len(w)]


def design_order(
    g: Graph,
    w: VertexSet,
    eps: float = DEFAULT_EPSILON,
    *,
    dec: SpectralDecomposition | None = None,
    tau: float = DEFAULT_TAU,
) -> DesignReport:
    """Order of ``w``: non-constant eigenspaces with ``||P 1_W||^2 > eps * |W|``."""
    dec = _spectrum_for(g, w, dec, tau)
    active = _active(dec, w, eps)
    order = len(active)
    return DesignReport(
        subset=w,
        order=order,
        active_eigenvalues=tuple((dec.eigenvalues[i], norm) for i, norm in active),
        satisfied_count=g.n - order,
        activity_threshold=eps,
    )


def is_extremal(g: Graph, w: VertexSet, eps: float = DEFAULT_EPSILON, **kw) -> bool:
    return design_order(g, w, eps, **kw).order == 1


@dataclass(frozen=True, eq=False)
class WitnessBasis:
    """Orthonormal eigenbasis adapted to a design.

    Column 0 is constant, columns ``1..order`` are the normalized active
    projections of ``1_W``; every later column has equal mean over ``W`` and
    over ``V``.
    """

    functions: np.ndarray
    eigenvalues: np.ndarray
    order: int
    mean_gaps: np.ndarray  # |mean over W - mean over V| per column

    @property
    def satisfied(self) -> int:
        """Number of basis functions meeting the mean-value identity."""
        return int(np.sum(self.mean_gaps <= MEAN_TOL))


def witness_basis(
    g: Graph,
    w: VertexSet,
    eps: float = DEFAULT_EPSILON,
    *,
    dec: SpectralDecomposition | None = None,
    tau: float = DEFAULT_TAU,
) -> WitnessBasis:
    dec = _spectrum_for(g, w, dec, tau)
    ind = w.indicator()
    active = dict(_active(dec, w, eps))

    head = [dec.bases[0][:, 0] * np.sign(dec.bases[0][:, 0].sum())]
    head_vals = [dec.eigenvalues[0]]
    tail, tail_vals = [], []
    for i in range(1, len(dec.eigenvalues)):
        b = dec.bases[i]
        if i in active:
            c = b.T @ ind
            c /= np.linalg.norm(c)
            # orthonormal completion of c inside the eigenspace coordinates
            q, _ = np.linalg.qr(np.column_stack([c, np.eye(len(c))]))
            q[:, 0] = c
            head.append(b @ c)
            head_vals.append(dec.eigenvalues[i])
            rest = b @ q[:, 1:]
        else:
            rest = b
        tail.extend(rest.T)
        tail_vals.extend([dec.eigenvalues[i]] * rest.shape[1])

    funcs = np.column_stack(head + tail)
    gaps = np.abs(funcs[list(w)].mean(axis=0) - funcs.mean(axis=0))
    basis = WitnessBasis(funcs, np.array(head_vals + tail_vals), len(active), gaps)
    bad = np.nonzero(basis.mean_gaps[len(head):] > MEAN_TOL)[0]
    if bad.size:
        raise CertificationError(f"{bad.size} inactive eigenfunctions violate the mean-value identity")
    return basis


@dataclass(frozen=True)
class ExtremalCertificate:
    kind: str  # "hoffman" or "cheeger"
    subset: VertexSet
    order: int
    active_eigenvalue: float
    expected_eigenvalue: float
    ratio: float
    bound: float

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "subset": list(self.subset),
            "order": self.order,
            "active_eigenvalue": self.active_eigenvalue,
            "expected_eigenvalue": self.expected_eigenvalue,
            "ratio": self.ratio,
            "bound": self.bound,
        }


def _certify(kind, g, s, report, expected, ratio, bound) -> ExtremalCertificate:
    if report.order != 1:
        raise CertificationError(f"{kind}-sharp set has design order {report.order}, expected 1")
    lam = report.active_eigenvalues[0][0]
    if abs(lam - expected) > 1e-7:
        raise CertificationError(f"active eigenvalue {lam:.12g} differs from expected {expected:.12g}")
    return ExtremalCertificate(kind, s, 1, lam, expected, ratio, bound)


def extremal_from_hoffman(
    g: Graph,
    s: VertexSet,
    *,
    dec: SpectralDecomposition | None = None,
    tau: float = DEFAULT_TAU,
    tol: float = SHARPNESS_TOL,
) -> ExtremalCertificate:
    """Certify that a Hoffman-sharp independent set is an extremal design.

    The single active eigenvalue must be the smallest one.
    """
    dec = _spectrum_for(g, s, dec, tau)
    if not is_independent(g, s):
        raise PreconditionError("set is not independent")
    lam_n = dec.lambda_min
    bound = -lam_n / (1.0 - lam_n)
    ratio = len(s) / g.n
    if abs(ratio - bound) > tol:
        raise PreconditionError(f"|S|/|V| = {ratio:.12g} does not meet the Hoffman bound {bound:.12g}")
    return _certify("hoffman", g, s, design_order(g, s, dec=dec), lam_n, ratio, bound)


def extremal_from_cheeger(
    g: Graph,
    s: VertexSet,
    *,
    dec: SpectralDecomposition | None = None,
    tau: float = DEFAULT_TAU,
    tol: float = SHARPNESS_TOL,
) -> ExtremalCertificate:
    """Certify that a set realizing ``h(G) = 1 - lambda_2`` is an extremal design.

    The single active eigenvalue must be ``lambda_2``.
    """
    dec = _spectrum_for(g, s, dec, tau)
    d = g.degree(0)
    size = len(s)
    ratio = g.n * edge_boundary(g, s) / (d * size * (g.n - size))
    bound = 1.0 - dec.lambda_2
    if abs(ratio - bound) > tol:
        raise PreconditionError(f"partition ratio {ratio:.12g} does not meet 1 - lambda_2 = {bound:.12g}")
    return _certify("cheeger", g, s, design_order(g, s, dec=dec), dec.lambda_2, ratio, bound)
