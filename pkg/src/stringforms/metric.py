"""Invariant metrics: a positive-definite Gram matrix on the frame."""
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ._exact import as_array, det, exact_sqrt, inv, is_exact, parse_rational, to_exact

__all__ = ["Chirality", "InvariantMetric", "DegenerateMetricError", "g_alpha",
           "orthonormal_frame"]


class DegenerateMetricError(ValueError):
    """Gram matrix is not symmetric positive-definite."""


class Chirality(str, Enum):
    LEFT = "left"
    RIGHT = "right"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"chirality must be 'left' or 'right', got {value!r}") from None


def _check_positive_definite(gram):
    n = gram.shape[0]
    if gram.shape != (n, n):
        raise DegenerateMetricError(f"Gram matrix must be square, got {gram.shape}")
    if gram.dtype == object:
        if np.any(gram != gram.T):
            raise DegenerateMetricError("Gram matrix is not symmetric")
        # Sylvester's criterion, exact.
        for k in range(1, n + 1):
            if det(gram[:k, :k]) <= 0:
                raise DegenerateMetricError("Gram matrix is not positive-definite")
        return
    if not np.all(np.isfinite(gram)):
        raise DegenerateMetricError("Gram matrix has non-finite entries")
    if not np.allclose(gram, gram.T, rtol=0, atol=1e-12 * max(1.0, np.abs(gram).max())):
        raise DegenerateMetricError("Gram matrix is not symmetric")
    try:
        np.linalg.cholesky(gram)
    except np.linalg.LinAlgError:
        raise DegenerateMetricError("Gram matrix is not positive-definite") from None


@dataclass(frozen=True, eq=False)
class InvariantMetric:
    """Gram matrix ``gram[i, j] = g(e_i, e_j)`` plus a chirality flag.

    Float or exact depending on the entries of ``gram``; the arithmetic mode
    of every downstream computation follows the metric.
    """
    gram: np.ndarray
    chirality: Chirality = Chirality.LEFT
    alphas: tuple = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        gram = as_array(self.gram)
        _check_positive_definite(gram)
        if gram.dtype != object:
            gram = 0.5 * (gram + gram.T)
        gram.setflags(write=False)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "chirality", Chirality.parse(self.chirality))

    @property
    def dim(self):
        return self.gram.shape[0]

    @property
    def exact(self):
        return is_exact(self.gram)

    @property
    def inverse(self):
        if "inv" not in self._cache:
            g_inv = inv(self.gram)
            g_inv.setflags(write=False)
            self._cache["inv"] = g_inv
        return self._cache["inv"]

    @property
    def det(self):
        if "det" not in self._cache:
            self._cache["det"] = det(self.gram)
        return self._cache["det"]

    def effective_frame(self, frame):
        """The frame whose brackets the invariant vector fields obey."""
        if frame.dim != self.dim:
            raise ValueError(f"metric has dim {self.dim}, frame has dim {frame.dim}")
        return frame if self.chirality is Chirality.LEFT else frame.negated()

    def scaled(self, eps):
        if self.exact:
            eps = parse_rational(eps)
        else:
            eps = float(eps)
        if eps <= 0:
            raise ValueError("scale factor must be positive")
        return InvariantMetric(self.gram * eps, self.chirality)

    def with_chirality(self, chirality):
        return InvariantMetric(self.gram, chirality, self.alphas)

    def inner(self, x, y):
        return np.asarray(x) @ self.gram @ np.asarray(y)

    def __repr__(self):
        if self.alphas is not None:
            return f"g_{{{self.alphas[0]},{self.alphas[1]}}}({self.chirality.value})"
        return f"InvariantMetric(dim={self.dim}, {self.chirality.value})"


def g_alpha(alpha1, alpha2=1, chirality=Chirality.LEFT, exact=None):
    """The metric for which ``{alpha1 e1, alpha2 e2, e3}`` is orthonormal.

    ``alpha2 = 1`` gives the Berger family, ``(1, 1)`` the round metric.
    Unless ``exact`` is given, the metric is exact when neither parameter is
    a float (ints, Fractions, mpq and ``"p/q"`` strings).
    """
    if exact is None:
        exact = not any(isinstance(a, (float, np.floating)) for a in (alpha1, alpha2))
    if exact:
        a1, a2 = parse_rational(alpha1), parse_rational(alpha2)
        one = parse_rational(1)
        if a1 <= 0 or a2 <= 0:
            raise DegenerateMetricError("alpha parameters must be positive")
        gram = to_exact(np.diag([one / (a1 * a1), one / (a2 * a2), one]))
    else:
        a1, a2 = float(alpha1), float(alpha2)
        if not (a1 > 0 and a2 > 0) or not np.isfinite(a1 * a2):
            raise DegenerateMetricError("alpha parameters must be positive and finite")
        gram = np.diag([1.0 / (a1 * a1), 1.0 / (a2 * a2), 1.0])
    return InvariantMetric(gram, chirality, alphas=(a1, a2))


def orthonormal_frame(metric):
    """Matrix ``F`` whose columns form a positively oriented orthonormal basis.

    A diagonal Gram matrix yields the coordinate-aligned frame (for
    ``g_alpha`` this is ``{alpha1 e1, alpha2 e2, e3}``); otherwise
    Gram-Schmidt in coordinate order, i.e. ``F = L^{-T}`` for the Cholesky
    factor ``L``.  Exact metrics need an exact square root, so the exact
    path only works for diagonal Gram matrices with square entries.
    """
    if "frame" in metric._cache:
        return metric._cache["frame"]
    g = metric.gram
    n = metric.dim
    diagonal = all(g[i, j] == 0 for i in range(n) for j in range(n) if i != j)
    if metric.exact:
        if not diagonal:
            raise ValueError("exact orthonormal frame needs a diagonal Gram matrix")
        roots = [exact_sqrt(1 / g[i, i]) for i in range(n)]
        if any(r is None for r in roots):
            raise ValueError("exact orthonormal frame needs square diagonal entries")
        f = to_exact(np.zeros((n, n), dtype=int))
        for i, r in enumerate(roots):
            f[i, i] = r
    elif diagonal:
        f = np.diag(1.0 / np.sqrt(np.diag(g)))
    else:
        chol = np.linalg.cholesky(g)
        f = np.linalg.inv(chol).T
    f.setflags(write=False)
    metric._cache["frame"] = f
    return f
