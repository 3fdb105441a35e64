"""Chern-Simons forms of invariant connections and canonical 3-forms on S^3.

For the class ``p1/2`` the Chern-Simons form of a connection 1-form
``Theta`` (pulled back by a section) is

    CS(Theta) = -1/(16 pi^2) <Theta ^ Omega - 1/6 Theta ^ [Theta ^ Theta]>,

with ``Omega = d Theta + Theta ^ Theta`` and ``<.>`` a suitably normalised
trace.  In an invariant orthonormal frame every ingredient is an invariant
matrix-valued form, so the evaluation is pure algebra: no quadrature.

On ``S^3 = SU(2)`` the frame ``e1, e2, e3`` with ``[e1, e2] = 2 e3``
(cyclic) has ``int e^1 ^ e^2 ^ e^3 = 2 pi^2``; the factors of ``pi`` cancel
and every integral below is a rational function of the metric.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
import math

import numpy as np

from ._exact import exact_sqrt, parse_rational, to_exact
from .forms import InvariantForm, volume_form
from .geometry import levi_civita
from .lie import su2
from .metric import Chirality, InvariantMetric, g_alpha, orthonormal_frame
from .string_class import Anchor, RationalModZ, StringClass

__all__ = ["SpinPairing", "CalibrationError", "FrameMismatchError", "spinor_pairing",
           "complex_spinor_pairing", "vector_pairing", "default_pairing",
           "chern_simons_form", "cs_frame_coefficient", "cs_integral", "cs_transgression",
           "integral_H", "integral_H_closed_form", "berger_integral_closed_form",
           "canonical_three_form", "e_invariant", "FRAME_VOLUME", "MetricOutsideFamilyError"]

FRAME_VOLUME = 2 * math.pi ** 2
"""``int_{S^3} e^1 ^ e^2 ^ e^3`` for the standard su(2) frame."""


class CalibrationError(RuntimeError):
    """A pairing fails to reproduce the round-metric value ``-1``."""


class FrameMismatchError(ValueError):
    """Two connections are not expressed in the same frame."""


class MetricOutsideFamilyError(ValueError):
    """The frame is not the standard su(2) frame (or its opposite)."""


# ---------------------------------------------------------------------------
# representations of so(3)

def _skew_coordinates(a, exact):
    """``(a1, a2, a3)`` with ``a = sum a_k L_k``, ``(L_k)_{ij} = -eps_{kij}``."""
    if exact:
        if np.any(a + a.T != 0):
            raise ValueError("connection matrix is not skew; need an orthonormal frame")
    else:
        scale = max(1.0, float(np.abs(a).max()))
        if np.abs(a + a.T).max() > 1e-9 * scale:
            raise ValueError("connection matrix is not skew; need an orthonormal frame")
    return a[2, 1], a[0, 2], a[1, 0]


def _quaternion_units():
    # left multiplication by i, j, k on H = span(1, i, j, k)
    qi = np.array([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    qj = np.array([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]])
    qk = np.array([[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])
    return qi, qj, qk


@lru_cache(maxsize=2)
def _quaternion_generators(exact):
    half = parse_rational(1) / 2 if exact else 0.5
    units = _quaternion_units()
    return tuple((to_exact(q) if exact else q.astype(float)) * half for q in units)


def _rho_quaternion(a, exact):
    coords = _skew_coordinates(a, exact)
    gens = _quaternion_generators(exact)
    return coords[0] * gens[0] + coords[1] * gens[1] + coords[2] * gens[2]


_PAULI = (np.array([[0, 1], [1, 0]], dtype=complex),
          np.array([[0, -1j], [1j, 0]], dtype=complex),
          np.array([[1, 0], [0, -1]], dtype=complex))


def _rho_complex(a, exact):
    if exact:
        raise ValueError("the complex spinor representation is float-only")
    coords = _skew_coordinates(a, False)
    return sum(-0.5j * x * s for x, s in zip(coords, _PAULI))


def _rho_identity(a, exact):
    return a


@dataclass(frozen=True, eq=False)
class SpinPairing:
    """Representation ``rho`` of so(3) and the trace normalisation.

    ``<A, B> = normalization * Tr(rho(A) rho(B))``.  Construction checks
    that ``rho`` is a Lie algebra homomorphism and that the full pipeline
    returns exactly ``-1`` for the left framing and the round metric; a
    mismatch raises :class:`CalibrationError` rather than being rescaled.
    """
    name: str
    rho: object
    normalization: object
    needs_orthonormal_frame: bool = True
    supports_exact: bool = True
    calibrated: bool = field(default=False, init=False)

    def __post_init__(self):
        self._check_homomorphism()
        value = _round_metric_check(self)
        ok = (value == -1) if self.supports_exact else abs(value + 1) < 1e-12
        if not ok:
            raise CalibrationError(
                f"pairing {self.name!r} gives {value} for (L, round metric), expected -1")
        object.__setattr__(self, "calibrated", True)

    def _check_homomorphism(self):
        exact = self.supports_exact
        eps = np.zeros((3, 3, 3), dtype=int)
        for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            eps[k, j, i], eps[k, i, j] = 1, -1
        gens = [to_exact(-eps[k]) if exact else -eps[k].astype(float) for k in range(3)]
        for i in range(3):
            for j in range(3):
                lhs = self.rho(gens[i] @ gens[j] - gens[j] @ gens[i], exact)
                ri, rj = self.rho(gens[i], exact), self.rho(gens[j], exact)
                rhs = ri @ rj - rj @ ri
                if np.abs(np.asarray(lhs - rhs, dtype=complex)).max() > 1e-12:
                    raise CalibrationError(f"rho of pairing {self.name!r} is not a homomorphism")

    def trace(self, m):
        t = np.trace(m)
        if np.iscomplexobj(t):
            t = t.real
        return self.normalization * t

    def __repr__(self):
        return f"SpinPairing({self.name!r})"


@lru_cache(maxsize=None)
def spinor_pairing():
    """Fundamental representation of su(2) = spin(3), realised on
    ``C^2 = H`` as real 4x4 matrices so that exact arithmetic works.

    ``Re Tr_C = Tr_R / 2`` and ``Tr_3(A B) = 4 Tr_C(rho A rho B)`` give the
    normalisation ``2`` relative to the real trace.
    """
    return SpinPairing("spinor-quaternionic", _rho_quaternion, 2)


@lru_cache(maxsize=None)
def complex_spinor_pairing():
    """Same representation as 2x2 complex matrices ``-i sigma_k / 2`` (float only)."""
    return SpinPairing("spinor-complex", _rho_complex, 4, supports_exact=False)


@lru_cache(maxsize=None)
def vector_pairing():
    """Ordinary trace of the 3x3 matrices of the tangent representation.

    Invariant under conjugation by any constant frame change, so it needs
    no orthonormal frame.
    """
    return SpinPairing("vector", _rho_identity, 1, needs_orthonormal_frame=False)


def default_pairing():
    return spinor_pairing()


# ---------------------------------------------------------------------------
# matrix-valued invariant forms

def _frame_matrices(conn, frame_matrix, pairing, exact):
    """``rho(F^{-1} A_i F)`` for each frame index ``i``."""
    a = conn.matrices()
    if frame_matrix is None:
        mats = [a[i] for i in range(conn.dim)]
    else:
        from ._exact import inv
        finv = inv(frame_matrix)
        mats = [finv @ a[i] @ frame_matrix for i in range(conn.dim)]
    return [pairing.rho(m, exact) for m in mats]


def _curvature_matrices(theta, c):
    n = len(theta)
    out = {}
    for i, j in combinations(range(n), 2):
        m = theta[i] @ theta[j] - theta[j] @ theta[i]
        for k in range(n):
            if c[k, i, j] != 0:
                m = m - c[k, i, j] * theta[k]
        out[i, j] = m
    return out


def _two_form(om, i, j):
    if i < j:
        return om[i, j]
    return -om[j, i]


def _cs_trace_values(theta, omega, pairing, exact):
    """``<Theta ^ Omega - 1/6 Theta ^ [Theta ^ Theta]>`` on each increasing triple."""
    n = len(theta)
    sixth = parse_rational(1) / 6 if exact else 1.0 / 6.0
    out = {}
    for a, b, c in combinations(range(n), 3):
        shuffles = ((a, b, c, 1), (b, a, c, -1), (c, a, b, 1))
        lin = 0
        cubic = 0
        for x, y, z, s in shuffles:
            lin = lin + s * (theta[x] @ _two_form(omega, y, z))
            tt = 2 * (theta[y] @ theta[z] - theta[z] @ theta[y])
            cubic = cubic + s * (theta[x] @ tt)
        out[a, b, c] = pairing.trace(lin - sixth * cubic)
    return out


def _resolve_frame(conns, pairing):
    metrics = [c.metric for c in conns if c.metric is not None]
    frames = {id(c.frame) for c in conns}
    if len(frames) > 1:
        ref = conns[0].frame.constants(False)
        if any(not np.array_equal(ref, c.frame.constants(False)) for c in conns[1:]):
            raise FrameMismatchError("connections live on different structure-constant frames")
    if not pairing.needs_orthonormal_frame:
        return None
    if not metrics:
        raise FrameMismatchError("this pairing needs an orthonormal frame; "
                                 "connections carry no metric")
    g0 = metrics[0]
    for g in metrics[1:]:
        if g is not g0 and not np.array_equal(np.asarray(g.gram, dtype=object),
                                              np.asarray(g0.gram, dtype=object)):
            raise FrameMismatchError("connections are orthonormal for different metrics")
    return orthonormal_frame(g0)


def _exactness(conns):
    return all(c.exact for c in conns)


def _check(pairing, exact):
    pairing = pairing if pairing is not None else default_pairing()
    if not pairing.calibrated:
        raise CalibrationError(f"pairing {pairing.name!r} is not calibrated")
    if exact and not pairing.supports_exact:
        raise ValueError(f"pairing {pairing.name!r} does not support exact arithmetic")
    return pairing


def _auto_pairing(conns, pairing):
    """Default pairing, falling back to the (equivalent) vector pairing when
    an exact metric has no rational orthonormal frame."""
    if pairing is not None:
        return pairing
    pairing = default_pairing()
    if _exactness(conns):
        try:
            _resolve_frame(conns, pairing)
        except ValueError:
            return vector_pairing()
    return pairing


def _trace_values(conn, pairing):
    exact = conn.exact
    pairing = _check(_auto_pairing([conn], pairing), exact)
    f = _resolve_frame([conn], pairing)
    theta = _frame_matrices(conn, f, pairing, exact)
    omega = _curvature_matrices(theta, conn.frame.constants(exact))
    return _cs_trace_values(theta, omega, pairing, exact)


def chern_simons_form(conn, pairing=None):
    """The pulled-back Chern-Simons 3-form as an invariant form (float)."""
    vals = _trace_values(conn, pairing)
    k = -1.0 / (16 * math.pi ** 2)
    return InvariantForm(conn.dim, 3, {I: k * float(v) for I, v in vals.items()})


def cs_frame_coefficient(conn, pairing=None):
    """``c`` with ``p^* CS(Theta) = c e^1 ^ e^2 ^ e^3`` on a 3-dim frame."""
    if conn.dim != 3:
        raise ValueError("frame coefficient is defined for three-dimensional frames")
    return chern_simons_form(conn, pairing)[(0, 1, 2)]


def _require_su2_frame(frame):
    c = frame.constants(False)
    std = su2(False).constants(False)
    if not (np.array_equal(c, std) or np.array_equal(c, -std)):
        raise MetricOutsideFamilyError(
            "integrals over S^3 need the standard su(2) frame [e1,e2]=2e3 (or its opposite)")


def cs_integral(conn, pairing=None):
    """``int_{S^3} p^* CS(Theta)`` for an invariant connection on su(2).

    Equals ``2 pi^2`` times the frame coefficient; computed as
    ``-trace / 8`` so that it is exact for exact connections.
    """
    if conn.dim != 3:
        raise ValueError("S^3 integrals need a three-dimensional frame")
    _require_su2_frame(conn.frame)
    trace = _trace_values(conn, pairing)[0, 1, 2]
    if conn.exact:
        return -trace / 8
    return -float(trace) / 8


def cs_transgression(conn1, conn0, pairing=None):
    """``int_{S^3} int_0^1 lambda(Theta_t)`` along ``Theta_t = t Theta_1 + (1 - t) Theta_0``.

    The Chern-Weil form of the path connection on ``[0, 1] x S^3`` has the
    ``dt`` part ``2 <eta ^ Omega_t>`` with ``eta = Theta_1 - Theta_0``, and
    ``Omega_t = Omega_0 + t D + t^2 [eta ^ eta] / 2`` is quadratic in ``t``,
    so the fibre integral is done in closed form.
    """
    if conn1.dim != 3 or conn0.dim != 3:
        raise ValueError("S^3 integrals need a three-dimensional frame")
    exact = _exactness([conn1, conn0])
    pairing = _check(_auto_pairing([conn1, conn0], pairing), exact)
    f = _resolve_frame([conn1, conn0], pairing)
    _require_su2_frame(conn1.frame)
    c = conn1.frame.constants(exact)
    th1 = _frame_matrices(conn1, f, pairing, exact)
    th0 = _frame_matrices(conn0, f, pairing, exact)
    eta = [a - b for a, b in zip(th1, th0)]
    one = parse_rational(1) if exact else 1.0
    om0 = _curvature_matrices(th0, c)
    avg = {}
    for (i, j), m in om0.items():
        d = (th0[i] @ eta[j] - eta[j] @ th0[i]) + (eta[i] @ th0[j] - th0[j] @ eta[i])
        for k in range(3):
            if c[k, i, j] != 0:
                d = d - c[k, i, j] * eta[k]
        e = eta[i] @ eta[j] - eta[j] @ eta[i]
        avg[i, j] = m + (one / 2) * d + (one / 3) * e
    a, b, cc = 0, 1, 2
    val = 0
    for x, y, z, s in ((a, b, cc, 1), (b, a, cc, -1), (cc, a, b, 1)):
        val = val + s * (eta[x] @ _two_form(avg, y, z))
    trace = 2 * pairing.trace(val)
    return -trace / 8 if exact else -float(trace) / 8


# ---------------------------------------------------------------------------
# canonical 3-forms and the e-invariant

def integral_H(string_class, metric, pairing=None, frame=None):
    """``int_{S^3} H_{S, g}`` for a string class and an invariant metric.

    Left-invariant metrics: ``(S - L) + int p^* CS(Theta_g)`` in the
    left-invariant orthonormal frame.  Right-invariant metrics: the same
    with the opposite brackets, anchored at ``R``; the Chern-Simons term
    then changes sign.  Exact for exact metrics.
    """
    cls = StringClass.parse(string_class)
    frame = frame if frame is not None else su2()
    if metric.dim != 3:
        raise MetricOutsideFamilyError("canonical 3-forms are computed on S^3 only")
    _require_su2_frame(frame)
    base = cs_integral(levi_civita(frame, metric), pairing)
    anchor = Anchor.L if metric.chirality is Chirality.LEFT else Anchor.R
    return cls.relative_to(anchor) + base


def integral_H_closed_form(alpha1, alpha2):
    """Closed form of ``int H_{L, g_{alpha1, alpha2}}`` (left-invariant)."""
    a2, b2 = alpha1 * alpha1, alpha2 * alpha2
    a4, b4, a6, b6 = a2 * a2, b2 * b2, a2 * a2 * a2, b2 * b2 * b2
    num = (a6 * b6 - a6 * b4 - a4 * b6 - a6 * b2 - a2 * b6 - a4 * b2 - a2 * b4
           + 4 * a4 * b4 + a6 + b6)
    return -num / (a4 * b4)


def berger_integral_closed_form(alpha1):
    """``int H_{L, g_{alpha1, 1}} = -2 + (2 alpha1^2 - 1) / alpha1^4``."""
    a2 = alpha1 * alpha1
    return -2 + (2 * a2 - 1) / (a2 * a2)


def canonical_three_form(string_class, metric, pairing=None):
    """``H_{S, g} = (int H / Vol(g)) dvol_g`` as an invariant 3-form.

    On S^3 the harmonic 3-forms are the constant multiples of the volume
    form, and the class fixes the multiple through its integral.
    """
    total = float(integral_H(string_class, metric, pairing))
    vol = volume_form(metric) if not metric.exact or exact_sqrt(metric.det) is not None \
        else volume_form(InvariantMetric(np.asarray(metric.gram, dtype=float)))
    sqrt_det = float(vol[(0, 1, 2)])
    return vol.astype(False) * (total / (FRAME_VOLUME * sqrt_det))


def e_invariant(string_class, pairing=None):
    """Adams e-invariant of ``(S^3, S)`` in Q/Z, via the round metric:
    ``e = (1/24) int H_{S, round} mod Z``."""
    total = integral_H(string_class, g_alpha(1, 1, exact=True), pairing)
    return RationalModZ.of(parse_rational(total) / 24)


def _round_metric_check(pairing):
    exact = pairing.supports_exact
    g = g_alpha(1, 1, exact=exact)
    conn = levi_civita(su2(), g)
    f = orthonormal_frame(g) if pairing.needs_orthonormal_frame else None
    theta = _frame_matrices(conn, f, pairing, exact)
    omega = _curvature_matrices(theta, conn.frame.constants(exact))
    trace = _cs_trace_values(theta, omega, pairing, exact)[0, 1, 2]
    return -trace / 8 if exact else -float(trace) / 8
