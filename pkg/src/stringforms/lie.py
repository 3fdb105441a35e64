"""Lie algebras given by structure constants of a fixed frame.

``c[k, i, j]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``.  Indices are
0-based in the API and 1-based in the JSON interchange format.
"""
from dataclasses import dataclass, field
from functools import cached_property
import json
from pathlib import Path

import numpy as np

from ._exact import as_array, is_exact, to_exact

__all__ = ["LieAlgebraFrame", "StructureReport", "bracket", "check_structure",
           "su2", "abelian", "direct_sum", "change_basis", "load_frame",
           "frame_from_json", "frame_to_json", "STRUCTURE_TOL"]

STRUCTURE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class LieAlgebraFrame:
    """Structure constants of a Lie algebra in a fixed frame ``e_1..e_n``.

    The array is stored as given (float or exact rationals); use
    :meth:`constants` to obtain it in a particular arithmetic mode.
    No validation beyond shape happens here, see :func:`check_structure`.
    """
    c: np.ndarray
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        c = as_array(self.c)
        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]):
            raise ValueError(f"structure constants must be n x n x n, got {c.shape}")
        if c.shape[0] < 1:
            raise ValueError("dimension must be positive")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    @property
    def dim(self):
        return self.c.shape[0]

    @property
    def exact(self):
        return is_exact(self.c)

    def constants(self, exact=False):
        """Structure constants as float64 or as an exact mpq object array."""
        key = ("c", bool(exact))
        if key not in self._cache:
            if exact:
                if not self.exact and not np.all(np.mod(self.c, 1) == 0):
                    raise ValueError("frame has non-integer float constants; "
                                     "build it from rationals for exact mode")
                arr = to_exact(self.c if self.exact else self.c.astype(np.int64))
            else:
                arr = self.c.astype(float)
            arr.setflags(write=False)
            self._cache[key] = arr
        return self._cache[key]

    def negated(self):
        """The opposite algebra ``[x, y]' = -[x, y]``.

        Left- and right-invariant vector fields with the same value at the
        identity bracket with opposite signs; right chirality is handled by
        running the left machinery on this frame.
        """
        if "neg" not in self._cache:
            name = f"{self.name}^op" if self.name else ""
            self._cache["neg"] = LieAlgebraFrame(-self.c, name=name)
        return self._cache["neg"]

    @cached_property
    def is_su2_type(self):
        """Three-dimensional with all Milnor eigenvalues positive.

        Checked in the coordinate-orthonormal inner product; the sign pattern
        of the Milnor eigenvalues does not depend on the inner product.
        """
        if self.dim != 3:
            return False
        c = self.constants(exact=False)
        lmap = np.column_stack([c[:, 1, 2], c[:, 2, 0], c[:, 0, 1]])
        if not np.allclose(lmap, lmap.T, atol=1e-12):
            return False
        return bool(np.all(np.linalg.eigvalsh(lmap) > 0))

    def __repr__(self):
        label = self.name or "LieAlgebraFrame"
        return f"<{label} dim={self.dim} {'exact' if self.exact else 'float'}>"


def bracket(frame, x, y):
    """``[x, y]`` for coordinate vectors ``x, y`` in the frame."""
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != (frame.dim,) or y.shape != (frame.dim,):
        raise ValueError(f"expected vectors of length {frame.dim}, "
                         f"got {x.shape} and {y.shape}")
    exact = x.dtype == object or y.dtype == object
    c = frame.constants(exact=exact)
    return np.einsum("kij,i,j->k", c, x, y)


@dataclass(frozen=True)
class StructureReport:
    antisymmetry: float
    jacobi: float
    tol: float = STRUCTURE_TOL

    @property
    def passed(self):
        return self.antisymmetry <= self.tol and self.jacobi <= self.tol

    def __str__(self):
        verdict = "pass" if self.passed else "FAIL"
        return (f"{verdict}: antisymmetry violation {self.antisymmetry:.3g}, "
                f"Jacobi violation {self.jacobi:.3g}")


def check_structure(frame, tol=STRUCTURE_TOL):
    """Largest violations of antisymmetry and of the Jacobi identity."""
    c = frame.c
    anti = c + c.transpose(0, 2, 1)
    # sum_m c[m,i,j] c[l,m,k] + cyclic(i,j,k)
    jac = np.einsum("mij,lmk->lijk", c, c)
    jac = jac + jac.transpose(0, 2, 3, 1) + jac.transpose(0, 3, 1, 2)
    amax = float(np.max(np.abs(anti))) if anti.size else 0.0
    jmax = float(np.max(np.abs(jac))) if jac.size else 0.0
    return StructureReport(amax, jmax, tol)


def _antisymmetric_from_pairs(n, pairs, exact):
    c = np.zeros((n, n, n), dtype=object if exact else float)
    if exact:
        c[...] = to_exact(np.zeros((n, n, n), dtype=int))
    for i, j, coeffs in pairs:
        coeffs = as_array(coeffs, exact=exact)
        if coeffs.shape != (n,):
            raise ValueError(f"bracket [{i + 1},{j + 1}] needs {n} coefficients")
        c[:, i, j] = coeffs
        c[:, j, i] = -coeffs
    return c


def su2(exact=True):
    """su(2) with ``[e1, e2] = 2 e3`` and cyclic permutations."""
    pairs = [(0, 1, [0, 0, 2]), (1, 2, [2, 0, 0]), (2, 0, [0, 2, 0])]
    return LieAlgebraFrame(_antisymmetric_from_pairs(3, pairs, exact), name="su(2)")


def abelian(n, exact=True):
    c = np.zeros((n, n, n), dtype=int)
    return LieAlgebraFrame(to_exact(c) if exact else c.astype(float), name=f"R^{n}")


def direct_sum(a, b):
    """Block sum of two frames; exact only if both are."""
    n, m = a.dim, b.dim
    exact = a.exact and b.exact
    ca, cb = a.constants(exact), b.constants(exact)
    c = np.zeros((n + m,) * 3, dtype=object if exact else float)
    if exact:
        c[...] = to_exact(np.zeros((n + m,) * 3, dtype=int))
    c[:n, :n, :n] = ca
    c[n:, n:, n:] = cb
    return LieAlgebraFrame(c, name=f"{a.name}+{b.name}")


def change_basis(frame, p):
    """Frame ``f_a = sum_i p[i, a] e_i``; ``p`` must be invertible.

    New constants are ``p^{-1} c(p, p)``, so the Jacobi identity is kept.
    """
    from ._exact import inv
    p = as_array(p, exact=frame.exact and is_exact(np.asarray(p, dtype=object)))
    c = frame.constants(exact=p.dtype == object)
    pinv = inv(p)
    new = np.einsum("ak,kij,ib,jc->abc", pinv, c, p, p)
    return LieAlgebraFrame(new, name=frame.name)


def frame_from_json(doc, exact=True):
    """Parse ``{"dim": n, "brackets": [[i, j, [coeffs...]], ...]}``.

    Indices are 1-based.  Coefficients may be numbers or ``"p/q"`` strings;
    in exact mode floats are read through their decimal repr.
    """
    if isinstance(doc, (str, bytes)):
        doc = json.loads(doc)
    try:
        n = int(doc["dim"])
        raw = doc["brackets"]
    except (KeyError, TypeError) as exc:
        raise ValueError("structure-constant document needs 'dim' and 'brackets'") from exc
    if n < 1:
        raise ValueError("dim must be positive")
    pairs = []
    for entry in raw:
        i, j, coeffs = entry
        i, j = int(i) - 1, int(j) - 1
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise ValueError(f"bad bracket indices {entry[:2]}")
        pairs.append((i, j, coeffs))
    return LieAlgebraFrame(_antisymmetric_from_pairs(n, pairs, exact),
                           name=doc.get("name", ""))


def load_frame(path, exact=True):
    return frame_from_json(Path(path).read_text(), exact=exact)


def frame_to_json(frame):
    n = frame.dim
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            col = frame.c[:, i, j]
            if any(v != 0 for v in col):
                out.append([i + 1, j + 1, [str(v) if frame.exact else float(v) for v in col]])
    doc = {"dim": n, "brackets": out}
    if frame.name:
        doc["name"] = frame.name
    return json.dumps(doc)
