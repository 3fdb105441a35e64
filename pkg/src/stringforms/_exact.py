"""Scalar plumbing shared by the float and exact-rational code paths.

Arrays are either ``float64`` (float mode) or ``object`` arrays of
:class:`gmpy2.mpq` (exact mode).  Everything downstream is written against
numpy operations that work for both dtypes; the few that do not
(inverse, determinant, square root) live here.
"""
from fractions import Fraction
from numbers import Rational

import gmpy2
import numpy as np
from gmpy2 import mpq

__all__ = ["mpq", "is_exact", "to_exact", "as_array", "exact_sqrt", "inv",
           "det", "to_float", "parse_rational"]


def is_exact(a):
    """True if ``a`` is an object array (or scalar) of exact rationals."""
    if isinstance(a, np.ndarray):
        return a.dtype == object
    return isinstance(a, (Rational, type(mpq(0))))


def parse_rational(x):
    """Exact rational from int, Fraction, mpq, ``"p/q"`` string or float.

    Floats are read through their shortest decimal repr, so ``0.2`` becomes
    ``1/5`` rather than the binary neighbour.
    """
    if isinstance(x, type(mpq(0))):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, np.integer)):
        return mpq(int(x))
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, (float, np.floating)):
        if not np.isfinite(x):
            raise ValueError(f"non-finite value {x!r}")
        f = Fraction(repr(float(x)))
        return mpq(f.numerator, f.denominator)
    if isinstance(x, str):
        f = Fraction(x.strip())
        return mpq(f.numerator, f.denominator)
    if isinstance(x, Rational):
        return mpq(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot interpret {x!r} as a rational")


def to_exact(a):
    """Convert an array-like of rationals to an object array of mpq."""
    arr = np.asarray(a, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = parse_rational(v)
    return out


def as_array(a, exact=None):
    """Array in the requested mode.

    With ``exact=None`` the mode is inferred: any Fraction/mpq entry (or an
    object array) selects exact mode, anything else float.
    """
    if exact is None:
        arr = np.asarray(a, dtype=object)
        exact = arr.dtype == object and any(
            isinstance(v, (Fraction, type(mpq(0)), str)) for v in arr.flat)
    if exact:
        return to_exact(a)
    return np.asarray(a, dtype=float)


def to_float(a):
    if isinstance(a, np.ndarray):
        return a.astype(float)
    return float(a)


def exact_sqrt(q):
    """Square root of a non-negative rational if it is rational, else None."""
    q = mpq(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    if gmpy2.is_square(n) and gmpy2.is_square(d):
        return mpq(gmpy2.isqrt(n), gmpy2.isqrt(d))
    return None


def _gauss_jordan(a):
    n = a.shape[0]
    m = np.concatenate([a.copy(), np.eye(n, dtype=int).astype(object)], axis=1)
    m = to_exact(m)
    detv = mpq(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r, col] != 0), None)
        if piv is None:
            return None, mpq(0)
        if piv != col:
            m[[col, piv]] = m[[piv, col]]
            detv = -detv
        p = m[col, col]
        detv *= p
        m[col] = m[col] / p
        for r in range(n):
            if r != col and m[r, col] != 0:
                m[r] = m[r] - m[r, col] * m[col]
    return m[:, n:], detv


def inv(a):
    """Matrix inverse; exact Gauss-Jordan for object arrays."""
    if a.dtype != object:
        return np.linalg.inv(a)
    res, d = _gauss_jordan(a)
    if res is None:
        raise np.linalg.LinAlgError("singular matrix")
    return res


def det(a):
    if a.dtype != object:
        return float(np.linalg.det(a))
    if a.shape[0] == 0:
        return mpq(1)
    return _gauss_jordan(a)[1]
