"""Connections, curvature and Ricci tensors of invariant metrics.

Conventions, all in the structure-constant frame ``e_i``:

* ``gamma[k, i, j]``: ``nabla_{e_i} e_j = sum_k gamma[k, i, j] e_k``;
* ``R[l, i, j, k]``: ``R(e_i, e_j) e_k = sum_l R[l, i, j, k] e_l`` with
  ``R(X, Y) = [nabla_X, nabla_Y] - nabla_[X, Y]``;
* ``Ric(X, Y) = sum_a g(R(u_a, X) Y, u_a)`` for an orthonormal basis ``u_a``.
"""
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from ._exact import is_exact, parse_rational, to_exact
from .metric import DegenerateMetricError, InvariantMetric, g_alpha, orthonormal_frame

__all__ = ["ConnectionCoefficients", "CurvatureTensor", "RicciTensor", "levi_civita",
           "flat_connection", "curvature", "ricci", "MilnorNormalForm",
           "milnor_normal_form", "NotSu2TypeError", "family_ricci_eigenvalues",
           "ricci_eigenvalues_closed_form", "RicciRegion", "ricci_positivity",
           "region_curves", "connection_components_closed_form"]


class NotSu2TypeError(ValueError):
    """Three-dimensional algebra is not of su(2) type (some Milnor eigenvalue <= 0)."""


@dataclass(frozen=True, eq=False)
class ConnectionCoefficients:
    """An invariant connection on the frame ``frame``.

    ``frame`` holds the brackets the invariant fields actually satisfy, so
    for a right-invariant metric it is the negated frame.  ``metric`` is the
    metric the connection is compatible with, when there is one.
    """
    gamma: np.ndarray
    frame: object
    metric: InvariantMetric = None

    @property
    def dim(self):
        return self.gamma.shape[0]

    @property
    def exact(self):
        return is_exact(self.gamma)

    def matrices(self):
        """``A[i]`` is the matrix of ``nabla_{e_i}``: ``A[i][k, j] = gamma[k, i, j]``."""
        return self.gamma.transpose(1, 0, 2)

    @property
    def torsion(self):
        """``T[k, i, j]`` with ``T(e_i, e_j) = nabla_i e_j - nabla_j e_i - [e_i, e_j]``."""
        c = self.frame.constants(self.exact)
        return self.gamma - self.gamma.transpose(0, 2, 1) - c

    def lowered(self):
        """``g(nabla_{e_i} e_j, e_l)`` as ``low[i, j, l]``."""
        if self.metric is None:
            raise ValueError("connection carries no metric")
        return np.einsum("kij,kl->ijl", self.gamma, self.metric.gram)

    def covariant(self, x, y):
        """``nabla_X Y`` for constant-coefficient (invariant) fields."""
        return np.einsum("kij,i,j->k", self.gamma, np.asarray(x), np.asarray(y))

    def __add__(self, other):
        if isinstance(other, ConnectionCoefficients):
            other = other.gamma
        return ConnectionCoefficients(self.gamma + other, self.frame, self.metric)


def _mode_constants(frame, metric):
    return frame.constants(exact=metric.exact)


def levi_civita(frame, metric):
    """Levi-Civita connection via the Koszul formula on invariant fields,

        2 g(nabla_X Y, Z) = g([X, Y], Z) - g([Y, Z], X) + g([Z, X], Y).

    Right-invariant metrics use the negated brackets.
    """
    eff = metric.effective_frame(frame)
    c = _mode_constants(eff, metric)
    g = metric.gram
    c_low = np.einsum("mk,kij->mij", g, c)  # g([e_i, e_j], e_m)
    half = parse_rational(1) / 2 if metric.exact else 0.5
    low = half * (c_low.transpose(1, 2, 0) - c_low + c_low.transpose(2, 0, 1))
    gamma = np.einsum("ijl,lk->kij", low, metric.inverse)
    return ConnectionCoefficients(gamma, eff, metric)


def flat_connection(frame, metric=None, exact=None):
    """The connection making every invariant field parallel.

    This is the flat connection of the trivialisation by any constant
    frame, in particular by an orthonormal one.
    """
    n = frame.dim
    if exact is None:
        exact = metric.exact if metric is not None else frame.exact
    gamma = to_exact(np.zeros((n, n, n), dtype=int)) if exact else np.zeros((n, n, n))
    eff = metric.effective_frame(frame) if metric is not None else frame
    return ConnectionCoefficients(gamma, eff, metric)


@dataclass(frozen=True, eq=False)
class CurvatureTensor:
    R: np.ndarray

    def operator(self, i, j):
        """Matrix of ``R(e_i, e_j)`` acting on frame coordinates."""
        return self.R[:, i, j, :]

    def sectional(self, metric, x, y):
        """``g(R(x, y) y, x) / |x ^ y|^2``."""
        x, y = np.asarray(x), np.asarray(y)
        rxy_y = np.einsum("lijk,i,j,k->l", self.R, x, y, y)
        num = metric.inner(rxy_y, x)
        area = metric.inner(x, x) * metric.inner(y, y) - metric.inner(x, y) ** 2
        return num / area


def curvature(conn):
    """Curvature of an invariant connection (with or without torsion)."""
    a = conn.matrices()
    c = conn.frame.constants(conn.exact)
    comm = np.einsum("ilm,jmk->ijlk", a, a)
    comm = comm - comm.transpose(1, 0, 2, 3)
    brk = np.einsum("mij,mlk->ijlk", c, a)
    return CurvatureTensor((comm - brk).transpose(2, 0, 1, 3))


@dataclass(frozen=True, eq=False)
class RicciTensor:
    """``matrix[x, y] = Ric(e_x, e_y)`` in the structure-constant frame."""
    matrix: np.ndarray
    metric: InvariantMetric

    @property
    def symmetric(self):
        return (self.matrix + self.matrix.T) / 2

    @property
    def skew(self):
        return (self.matrix - self.matrix.T) / 2

    def quadratic(self, x):
        x = np.asarray(x)
        return x @ self.matrix @ x

    def eigenvalues(self):
        """Eigenvalues of the symmetric part relative to the metric, ascending."""
        from scipy.linalg import eigh
        return eigh(np.asarray(self.symmetric, dtype=float),
                    np.asarray(self.metric.gram, dtype=float), eigvals_only=True)

    def in_frame(self, f):
        """Components ``Ric(f_a, f_b)`` for the basis given by the columns of ``f``."""
        return f.T @ self.matrix @ f


def ricci(conn, metric=None):
    """Ricci tensor ``Ric(X, Y) = sum_a g(R(u_a, X) Y, u_a)``.

    For an orthonormal basis ``u_a = F e``, ``sum_a u_a (x) u_a = g^{-1}``,
    so the trace collapses to ``sum_p R[p, p, x, y]`` and needs no square
    roots; the result is the same for every orthonormal basis.
    """
    metric = metric if metric is not None else conn.metric
    if metric is None:
        raise DegenerateMetricError("Ricci trace needs a metric")
    R = curvature(conn).R
    return RicciTensor(np.einsum("ppxy->xy", R), metric)


# ---------------------------------------------------------------------------
# The two-parameter family on su(2)

def connection_components_closed_form(alpha1, alpha2):
    """The three independent Levi-Civita components for ``g_{alpha1, alpha2}``.

    In the orthonormal frame ``u = (alpha1 e1, alpha2 e2, e3)`` these are
    ``g(nabla_{u1} u2, u3)``, ``g(nabla_{u2} u3, u1)``, ``g(nabla_{u3} u1, u2)``.
    """
    a1, a2 = alpha1, alpha2
    return (a1 * a2 + a1 / a2 - a2 / a1,
            a1 * a2 - a1 / a2 + a2 / a1,
            -a1 * a2 + a1 / a2 + a2 / a1)


def ricci_eigenvalues_closed_form(alpha1, alpha2):
    """Ricci eigenvalues of ``g_{alpha1, alpha2}`` in the directions
    ``alpha1 e1, alpha2 e2, e3`` from the connection components."""
    p, q, r = connection_components_closed_form(alpha1, alpha2)
    return (2 * q * r, 2 * r * p, 2 * p * q)


def family_ricci_eigenvalues(alpha1, alpha2, chirality="left", exact=None):
    """Ricci eigenvalues of ``g_{alpha1, alpha2}`` through the full
    connection -> curvature -> Ricci pipeline, in the order
    ``(alpha1 e1, alpha2 e2, e3)``."""
    from .lie import su2
    g = g_alpha(alpha1, alpha2, chirality, exact=exact)
    ric = ricci(levi_civita(su2(), g))
    m = ric.in_frame(orthonormal_frame(g))
    return (m[0, 0], m[1, 1], m[2, 2])


class RicciRegion(str, Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def ricci_positivity(alpha1, alpha2, tol=1e-12):
    """Classify ``g_{alpha1, alpha2}`` by the signs of its Ricci eigenvalues.

    Exact inputs are classified exactly.  For floats an eigenvalue within
    ``tol`` times the size of its terms counts as zero.
    """
    exact = not any(isinstance(a, (float, np.floating)) for a in (alpha1, alpha2))
    if exact:
        a1, a2 = parse_rational(alpha1), parse_rational(alpha2)
    else:
        a1, a2 = float(alpha1), float(alpha2)
    if not (a1 > 0 and a2 > 0):
        raise DegenerateMetricError("alpha parameters must be positive")
    eig = ricci_eigenvalues_closed_form(a1, a2)
    if exact:
        signs = [(v > 0) - (v < 0) for v in eig]
    else:
        scale = (a1 * a2 + a1 / a2 + a2 / a1) ** 2
        signs = [0 if abs(v) <= tol * scale else (1 if v > 0 else -1) for v in eig]
    if all(s > 0 for s in signs):
        return RicciRegion.INTERIOR
    if all(s >= 0 for s in signs):
        return RicciRegion.BOUNDARY
    return RicciRegion.OUTSIDE


def region_curves(alpha1):
    """The three curves ``alpha2(alpha1)`` on which a Ricci eigenvalue vanishes.

    Returns ``(a, b, c)`` with ``nan`` where a curve is undefined:
    ``a = sqrt(x/(1+x))``, ``b = sqrt(x/(x-1))`` (for ``alpha1 > 1``),
    ``c = sqrt(-x/(x-1))`` (for ``alpha1 < 1``), ``x = alpha1**2``.
    """
    x = np.asarray(alpha1, dtype=float) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        a = np.sqrt(x / (1 + x))
        b = np.where(x > 1, np.sqrt(x / (x - 1)), np.nan)
        c = np.where(x < 1, np.sqrt(-x / (x - 1)), np.nan)
    if np.ndim(alpha1) == 0:
        return float(a), float(b), float(c)
    return a, b, c


# ---------------------------------------------------------------------------
# Milnor normal form

class MilnorNormalForm(NamedTuple):
    alpha1: float
    alpha2: float
    scale: float
    frame_map: np.ndarray
    eigenvalues: tuple


def milnor_normal_form(frame, metric, tol=1e-12):
    """Reduce an invariant metric on an su(2)-type algebra to the family.

    Finds a ``g``-orthonormal basis ``E`` with ``[E1, E2] = l3 E3`` (cyclic),
    ``l_i > 0``, and returns ``alpha1, alpha2, scale`` with ``g`` isometric to
    ``scale * g_{alpha1, alpha2}``:

        alpha_i = sqrt(l3 / l_i),   scale = 4 / (l1 l2).

    ``frame_map`` is a Lie algebra isomorphism ``P`` from standard su(2)
    (``[e1, e2] = 2 e3``, cyclic) onto ``frame`` with
    ``P^T G P = scale * G_alpha``; for the standard frame it is an
    automorphism.  When the coordinate frame is already a Milnor frame its
    axis order is kept; otherwise eigenvalues are sorted descending.  The
    chirality flag is ignored: the isometry class depends only on the inner
    product on the algebra.
    """
    if frame.dim != 3:
        raise NotSu2TypeError("Milnor normal form needs a three-dimensional algebra")
    c = frame.constants(False)
    g = np.asarray(metric.gram, dtype=float)
    f = np.array(orthonormal_frame(InvariantMetric(g)), dtype=float)
    lmap = _milnor_map(c, f)
    if np.all(np.linalg.eigvalsh(lmap) < 0):
        # su(2) type in the opposite orientation, e.g. negated brackets
        f[:, 0] = -f[:, 0]
        lmap = _milnor_map(c, f)
    off = lmap - np.diag(np.diag(lmap))
    if np.abs(off).max() <= tol * np.abs(lmap).max():
        lam = np.diag(lmap).copy()
        e = f
    else:
        lam, v = np.linalg.eigh(lmap)
        order = np.argsort(lam)[::-1]
        lam, v = lam[order], v[:, order]
        if np.linalg.det(v) < 0:
            v[:, 2] = -v[:, 2]
        e = f @ v
    if np.any(lam <= 0):
        raise NotSu2TypeError(f"Milnor eigenvalues {tuple(lam)} are not all positive")
    l1, l2, l3 = lam
    a = np.sqrt([l2 * l3, l3 * l1, l1 * l2]) / 2
    alpha1, alpha2 = float(np.sqrt(l3 / l1)), float(np.sqrt(l3 / l2))
    scale = float(4.0 / (l1 * l2))
    return MilnorNormalForm(alpha1, alpha2, scale, e / a, (float(l1), float(l2), float(l3)))


def _milnor_map(c, f):
    """Symmetric map ``L`` with ``[u, v] = L(u x v)`` in the orthonormal basis ``f``."""
    cb = np.einsum("ak,kij,ib,jc->abc", np.linalg.inv(f), c, f, f)
    lmap = np.column_stack([cb[:, 1, 2], cb[:, 2, 0], cb[:, 0, 1]])
    if not np.allclose(lmap, lmap.T, atol=1e-9 * max(1.0, np.abs(lmap).max())):
        raise NotSu2TypeError("algebra is not unimodular")
    return 0.5 * (lmap + lmap.T)

