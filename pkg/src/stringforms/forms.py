"""Invariant differential forms and their exterior calculus.

An invariant ``p``-form on a Lie group is an alternating ``p``-linear map on
the Lie algebra, stored by its values on strictly increasing tuples of frame
vectors: ``coeffs[(i1, ..., ip)] = omega(e_i1, ..., e_ip)``, which is also the
coefficient of ``e^i1 ^ ... ^ e^ip``.  The exterior derivative of an invariant
form only involves brackets,

    d omega(X_0, ..., X_p) = sum_{a<b} (-1)^(a+b) omega([X_a, X_b], X_0, ..^a..^b.., X_p),

so the whole de Rham calculus restricted to invariant forms is finite linear
algebra.  The metric enters only through the Hodge star.
"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from ._exact import exact_sqrt, is_exact, parse_rational, to_exact

__all__ = ["InvariantForm", "ce_differential", "hodge_star", "codifferential",
           "laplacian", "form_inner", "wedge", "volume_form", "DegreeError"]


class DegreeError(ValueError):
    """Form degree outside the range an operator accepts."""


@lru_cache(maxsize=None)
def basis(n, p):
    """Strictly increasing index tuples of length ``p`` in ``range(n)``."""
    return tuple(combinations(range(n), p))


def _sort_sign(idx):
    """Sorted copy of ``idx`` and the sign of the sorting permutation (0 on repeats)."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return None, 0
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return tuple(idx), sign


def _convert(v, exact):
    return parse_rational(v) if exact else float(v)


@dataclass(frozen=True, eq=False)
class InvariantForm:
    """Invariant ``degree``-form on an ``dim``-dimensional Lie algebra."""
    dim: int
    degree: int
    coeffs: dict

    def __post_init__(self):
        if not 0 <= self.degree <= self.dim:
            raise DegreeError(f"degree {self.degree} outside 0..{self.dim}")
        clean = {}
        for key, v in self.coeffs.items():
            key = tuple(int(k) for k in key)
            if len(key) != self.degree:
                raise DegreeError(f"index {key} has wrong length for degree {self.degree}")
            if any(not 0 <= k < self.dim for k in key):
                raise IndexError(f"index {key} out of range for dim {self.dim}")
            skey, sign = _sort_sign(key)
            if sign == 0:
                continue
            clean[skey] = clean.get(skey, 0) + sign * v
        object.__setattr__(self, "coeffs", {k: v for k, v in clean.items() if v != 0})

    # construction ---------------------------------------------------------
    @classmethod
    def zero(cls, dim, degree):
        return cls(dim, degree, {})

    @classmethod
    def constant(cls, dim, value):
        return cls(dim, 0, {(): value})

    @classmethod
    def basis_form(cls, dim, *indices, coefficient=1):
        """``coefficient * e^i1 ^ ... ^ e^ip`` (0-based indices)."""
        return cls(dim, len(indices), {tuple(indices): coefficient})

    @classmethod
    def from_vector(cls, dim, degree, vec):
        return cls(dim, degree, dict(zip(basis(dim, degree), vec)))

    @classmethod
    def from_array(cls, arr):
        """From a fully antisymmetric component array ``arr[i1, ..., ip]``."""
        arr = np.asarray(arr)
        dim, degree = (arr.shape[0] if arr.ndim else 0), arr.ndim
        return cls(dim, degree, {I: arr[I] for I in basis(dim, degree)})

    # views ----------------------------------------------------------------
    @property
    def exact(self):
        return bool(self.coeffs) and all(is_exact(v) for v in self.coeffs.values())

    def astype(self, exact):
        return InvariantForm(self.dim, self.degree,
                             {k: _convert(v, exact) for k, v in self.coeffs.items()})

    def vector(self, exact=None):
        if exact is None:
            exact = self.exact
        zero = parse_rational(0) if exact else 0.0
        out = np.empty(len(basis(self.dim, self.degree)), dtype=object if exact else float)
        for a, I in enumerate(basis(self.dim, self.degree)):
            out[a] = _convert(self.coeffs.get(I, zero), exact)
        return out

    def to_array(self, exact=None):
        """Fully antisymmetric component array of shape ``(dim,) * degree``."""
        if exact is None:
            exact = self.exact
        shape = (self.dim,) * self.degree
        arr = to_exact(np.zeros(shape, dtype=int)) if exact else np.zeros(shape)
        for I, v in self.coeffs.items():
            v = _convert(v, exact)
            for perm in permutations(range(self.degree)):
                _, sign = _sort_sign(perm)
                arr[tuple(I[k] for k in perm)] = sign * v
        return arr

    def __getitem__(self, idx):
        """Value on the frame vectors ``e_idx`` (any order, alternating)."""
        if isinstance(idx, int):
            idx = (idx,)
        skey, sign = _sort_sign(idx)
        if sign == 0:
            return 0
        return sign * self.coeffs.get(skey, 0)

    def __call__(self, *vectors):
        """Evaluate on coordinate vectors."""
        if len(vectors) != self.degree:
            raise DegreeError(f"expected {self.degree} vectors")
        if self.degree == 0:
            return self.coeffs.get((), 0)
        mat = np.array(vectors, dtype=object).T
        total = 0
        for I, v in self.coeffs.items():
            sub = mat[list(I), :]
            total += v * _det_small(sub)
        return total

    # algebra --------------------------------------------------------------
    def _check_compatible(self, other):
        if not isinstance(other, InvariantForm):
            return NotImplemented
        if (self.dim, self.degree) != (other.dim, other.degree):
            raise DegreeError("forms of different dimension or degree")
        return None

    def __add__(self, other):
        if self._check_compatible(other) is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return InvariantForm(self.dim, self.degree, out)

    def __neg__(self):
        return InvariantForm(self.dim, self.degree, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, InvariantForm):
            return NotImplemented
        return InvariantForm(self.dim, self.degree,
                             {k: scalar * v for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def is_zero(self, tol=0.0):
        return all(abs(v) <= tol for v in self.coeffs.values())

    def max_abs(self):
        return max((abs(float(v)) for v in self.coeffs.values()), default=0.0)

    def __repr__(self):
        if not self.coeffs:
            return f"0 (degree {self.degree})"
        terms = []
        for I, v in sorted(self.coeffs.items()):
            name = "^".join(f"e{i + 1}" for i in I) or "1"
            terms.append(f"{v}*{name}")
        return " + ".join(terms)


def _det_small(m):
    n = m.shape[0]
    if n == 0:
        return 1
    total = 0
    for perm in permutations(range(n)):
        _, sign = _sort_sign(perm)
        prod = sign
        for r, c in enumerate(perm):
            prod = prod * m[r, c]
        total += prod
    return total


def wedge(a, b):
    """Exterior product with the determinant normalisation
    (``e^1 ^ e^2`` takes the value 1 on ``(e_1, e_2)``)."""
    if a.dim != b.dim:
        raise DegreeError("forms on different algebras")
    p, q = a.degree, b.degree
    if p + q > a.dim:
        raise DegreeError(f"wedge product of degree {p + q} exceeds dimension {a.dim}")
    out = {}
    for I, u in a.coeffs.items():
        for J, v in b.coeffs.items():
            key, sign = _sort_sign(I + J)
            if sign:
                out[key] = out.get(key, 0) + sign * u * v
    return InvariantForm(a.dim, p + q, out)


def ce_differential(frame, form):
    """Exterior derivative of an invariant form (Chevalley-Eilenberg)."""
    if form.dim != frame.dim:
        raise DegreeError("form and frame have different dimensions")
    p = form.degree
    if p >= frame.dim:
        raise DegreeError(f"d of a degree-{p} form on a {frame.dim}-dim algebra")
    exact = form.exact if form.coeffs else frame.exact
    c = frame.constants(exact=exact)
    form = form.astype(exact)
    n = frame.dim
    out = {}
    for K in basis(n, p + 1):
        total = 0
        for a in range(p + 1):
            for b in range(a + 1, p + 1):
                rest = K[:a] + K[a + 1:b] + K[b + 1:]
                sgn = -1 if (a + b) % 2 else 1
                for m in range(n):
                    cm = c[m, K[a], K[b]]
                    if cm == 0:
                        continue
                    val = form[(m,) + rest]
                    if val:
                        total += sgn * cm * val
        if total != 0:
            out[K] = total
    return InvariantForm(n, p + 1, out)


@lru_cache(maxsize=None)
def _complement_signs(n, p):
    out = []
    for I in basis(n, p):
        Ic = tuple(k for k in range(n) if k not in I)
        _, sign = _sort_sign(I + Ic)
        out.append((Ic, sign))
    return tuple(out)


def _compound(m, p):
    """``p``-th compound: minors ``det(m[I, J])`` over increasing ``I, J``."""
    idx = basis(m.shape[0], p)
    out = np.empty((len(idx), len(idx)), dtype=m.dtype)
    for a, I in enumerate(idx):
        for b, J in enumerate(idx):
            out[a, b] = _det_small(m[np.ix_(I, J)]) if p else 1
    return out


def _form_gram(metric, p):
    key = ("form_gram", p)
    if key not in metric._cache:
        metric._cache[key] = _compound(metric.inverse, p)
    return metric._cache[key]


def form_inner(metric, a, b):
    """Pointwise inner product of invariant forms induced by the metric."""
    if a.degree != b.degree:
        raise DegreeError("inner product of forms of different degree")
    exact = metric.exact
    return a.vector(exact) @ _form_gram(metric, a.degree) @ b.vector(exact)


def _star_unscaled(metric, form):
    # *form = sqrt(det g) * S(form); S is rational in g.
    n, p = metric.dim, form.degree
    raised = _form_gram(metric, p) @ form.vector(metric.exact)
    out = {}
    for (Ic, sign), val in zip(_complement_signs(n, p), raised):
        if val != 0:
            out[Ic] = sign * val
    return InvariantForm(n, n - p, out)


def _sqrt_det(metric):
    d = metric.det
    if metric.exact:
        r = exact_sqrt(d)
        if r is None:
            raise ValueError("volume factor sqrt(det g) is irrational; "
                             "use a float metric for the Hodge star")
        return r
    return float(np.sqrt(d))


def volume_form(metric):
    """Riemannian volume form ``sqrt(det g) e^1 ^ ... ^ e^n``."""
    n = metric.dim
    return InvariantForm(n, n, {tuple(range(n)): _sqrt_det(metric)})


def hodge_star(frame, metric, form):
    """Hodge star, characterised by ``a ^ *b = <a, b> vol``.

    ``frame`` is accepted for signature symmetry with the other operators;
    the star itself only needs the metric.
    """
    if form.dim != metric.dim or frame.dim != metric.dim:
        raise DegreeError("form, frame and metric dimensions differ")
    return _star_unscaled(metric, form.astype(metric.exact)) * _sqrt_det(metric)


def codifferential(frame, metric, form):
    """``d^* = (-1)^(n(p+1)+1) * d *`` on a ``p``-form; zero on functions.

    The two volume factors combine to ``det g``, so this stays exact for
    any rational metric.  Brackets follow the metric's chirality.
    """
    n, p = metric.dim, form.degree
    if p == 0:
        return InvariantForm.zero(n, 0)
    eff = metric.effective_frame(frame)
    inner = _star_unscaled(metric, form.astype(metric.exact))
    d_inner = ce_differential(eff, inner)
    sign = -1 if (n * (p + 1) + 1) % 2 else 1
    return _star_unscaled(metric, d_inner) * (sign * metric.det)


def laplacian(frame, metric, form):
    """Hodge Laplacian ``d d^* + d^* d`` on invariant forms."""
    n, p = metric.dim, form.degree
    eff = metric.effective_frame(frame)
    form = form.astype(metric.exact)
    total = InvariantForm.zero(n, p)
    if p > 0:
        total = total + ce_differential(eff, codifferential(frame, metric, form))
    if p < n:
        total = total + codifferential(frame, metric, ce_differential(eff, form))
    return total
