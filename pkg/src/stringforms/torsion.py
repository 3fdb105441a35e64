"""Metric connections with totally skew-symmetric torsion.

A 3-form ``H`` and a metric ``g`` determine the torsion ``T`` by raising an
index, ``g(T_X Y, Z) = H(X, Y, Z)``, and the connection
``nabla^T = nabla^g + T / 2``.  Its Ricci tensor differs from the
Levi-Civita one by

    Ric^T(X, Y) = Ric^g(X, Y) - 1/4 sum_a g(T_{u_a} X, T_{u_a} Y) - 1/2 d^*H(X, Y).
"""
from dataclasses import dataclass, field
from typing import List

import numpy as np

from ._exact import parse_rational
from .forms import DegreeError, InvariantForm, codifferential
from .geometry import ConnectionCoefficients, RicciTensor, levi_civita, ricci
from .metric import InvariantMetric

__all__ = ["TorsionTensor", "torsion_from_three_form", "connection_with_torsion",
           "ricci_with_torsion_direct", "ricci_torsion_formula", "torsion_deficit",
           "scaled_ricci_family", "scaled_ricci_formula", "MaximalityReport",
           "levi_civita_maximality_check", "random_metric", "random_three_form",
           "SkewTorsionError"]


class SkewTorsionError(ValueError):
    """Torsion is not totally skew-symmetric, or does not come from the given form."""


@dataclass(frozen=True, eq=False)
class TorsionTensor:
    """``T[k, i, j]`` with ``T_{e_i} e_j = sum_k T[k, i, j] e_k``."""
    T: np.ndarray
    form: InvariantForm
    metric: InvariantMetric

    def lowered(self):
        """``g(T_{e_i} e_j, e_k)`` as ``[i, j, k]``."""
        return np.einsum("lij,lk->ijk", self.T, self.metric.gram)

    def skew_violation(self):
        low = np.asarray(self.lowered(), dtype=float)
        return max(float(np.abs(low + low.transpose(1, 0, 2)).max()),
                   float(np.abs(low + low.transpose(0, 2, 1)).max()))


def _half(metric):
    return parse_rational(1) / 2 if metric.exact else 0.5


def torsion_from_three_form(frame, metric, H):
    """Raise an index of ``H``: ``T^k_{ij} = g^{rk} H_{ijr}``."""
    if H.degree != 3:
        raise DegreeError(f"torsion needs a 3-form, got degree {H.degree}")
    if H.dim != metric.dim or frame.dim != metric.dim:
        raise DegreeError("form, frame and metric dimensions differ")
    h = H.to_array(exact=metric.exact)
    T = np.einsum("rk,ijr->kij", metric.inverse, h)
    return TorsionTensor(T, H, metric)


def connection_with_torsion(lc, torsion):
    """``nabla^g + T / 2``; metric with torsion exactly ``T`` when ``lc`` is
    Levi-Civita and ``T`` is totally skew."""
    if torsion.skew_violation() > 1e-9 * max(1.0, float(np.abs(np.asarray(
            torsion.T, dtype=float)).max())):
        raise SkewTorsionError("torsion is not totally skew-symmetric")
    return ConnectionCoefficients(lc.gamma + _half(torsion.metric) * torsion.T,
                                  lc.frame, lc.metric)


def ricci_with_torsion_direct(conn, metric=None):
    """Ricci tensor of a torsion connection from its curvature."""
    return ricci(conn, metric)


def _trace_tt(metric, T):
    # sum_a g(T_{u_a} e_x, T_{u_a} e_y) = g^{pq} g_{kl} T[k,p,x] T[l,q,y]
    return np.einsum("pq,kl,kpx,lqy->xy", metric.inverse, metric.gram, T, T)


def ricci_torsion_formula(frame, metric, ric_lc, torsion, H=None):
    """Ricci of ``nabla^g + T/2`` from the Levi-Civita Ricci, ``T`` and ``d^*H``."""
    if H is None:
        H = torsion.form
    check = torsion_from_three_form(frame, metric, H).T - torsion.T
    if np.abs(np.asarray(check, dtype=float)).max() > 1e-9:
        raise SkewTorsionError("torsion was not raised from the given 3-form")
    quarter = _half(metric) / 2
    dstar = codifferential(frame, metric, H.astype(metric.exact)).to_array(exact=metric.exact)
    m = ric_lc.matrix - quarter * _trace_tt(metric, torsion.T) - _half(metric) * dstar
    return RicciTensor(m, metric)


def torsion_deficit(metric, torsion, x):
    """``Ric^g(X) - Ric^T(X) = 1/4 sum_a |T_{u_a} X|^2``."""
    x = np.asarray(x)
    return (x @ _trace_tt(metric, torsion.T) @ x) * (_half(metric) / 2)


def scaled_ricci_family(frame, metric, H, eps):
    """Ricci tensor of ``nabla^{eps g} + T^{eps g} / 2`` with ``H`` held fixed.

    ``H`` does not change under rescaling while ``T^{eps g} = T^g / eps``.
    """
    eps = parse_rational(eps) if metric.exact else float(eps)
    if not eps > 0:
        raise ValueError("scale factor must be positive")
    g_eps = metric.scaled(eps)
    T = torsion_from_three_form(frame, g_eps, H)
    conn = connection_with_torsion(levi_civita(frame, g_eps), T)
    return ricci(conn)


def scaled_ricci_formula(frame, metric, H, eps, power=1):
    """``Ric^g(X, X) - 1/(4 eps^power) sum_a |T_{u_a} X|^2`` for ``T = T^{g}``,
    frame vectors ``X``, returned as a symmetric matrix.

    ``power=1`` is the form printed in the literature this package follows;
    the curvature computation gives ``power=2``.
    """
    eps = parse_rational(eps) if metric.exact else float(eps)
    T = torsion_from_three_form(frame, metric, H)
    ric = ricci(levi_civita(frame, metric))
    quarter = _half(metric) / 2
    return ric.symmetric - quarter / eps ** power * _trace_tt(metric, T.T)


# ---------------------------------------------------------------------------
# random trials

def random_metric(rng, n, max_cond=1e3, exact=False, denominator=64):
    """Shifted Wishart draw ``A A^T / n + s I`` with condition number at most ``max_cond``.

    In exact mode entries are rounded to multiples of ``1/denominator``
    (after which positive-definiteness is re-checked by the metric).
    """
    while True:
        a = rng.standard_normal((n, n))
        w = a @ a.T / n
        ev = np.linalg.eigvalsh(w)
        shift = max(0.0, (ev[-1] - max_cond * ev[0]) / (max_cond - 1)) + 0.05
        g = w + shift * np.eye(n)
        if np.linalg.cond(g) > max_cond:
            continue
        if exact:
            from fractions import Fraction
            rows = [[Fraction(round(v * denominator), denominator) for v in row] for row in g]
            for i in range(n):
                for j in range(i):
                    rows[i][j] = rows[j][i]
            try:
                return InvariantMetric(np.array(rows, dtype=object))
            except ValueError:
                continue
        return InvariantMetric(g)


def random_three_form(rng, n, low=-2.0, high=2.0, exact=False, denominator=16):
    from itertools import combinations
    coeffs = {}
    for I in combinations(range(n), 3):
        v = rng.uniform(low, high)
        if exact:
            from fractions import Fraction
            v = Fraction(round(v * denominator), denominator)
        coeffs[I] = v
    form = InvariantForm(n, 3, coeffs)
    return form.astype(exact) if form.coeffs else form


@dataclass
class MaximalityReport:
    trials: int
    violations: int = 0
    strict_failures: int = 0
    min_deficit: float = np.inf
    max_formula_error: float = 0.0
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self):
        return self.violations == 0 and self.strict_failures == 0

    def __str__(self):
        verdict = "pass" if self.passed else "FAIL"
        return (f"{verdict}: {self.trials} trials, {self.violations} violations of "
                f"Ric^T <= Ric^g, {self.strict_failures} trials with H != 0 but no "
                f"strict deficit, min deficit {self.min_deficit:.3g}, max direct/formula "
                f"gap {self.max_formula_error:.3g}")


def levi_civita_maximality_check(frame, trials, seed=0, metric=None, tol=1e-10):
    """Randomised check that Levi-Civita maximises ``Ric(X, X)`` over skew-torsion
    connections, frame vector by frame vector.

    Each trial draws a metric (unless one is given) and a 3-form from its own
    seeded generator ``default_rng([seed, trial])``, so results do not depend
    on the order in which trials run.
    """
    if trials <= 0:
        raise ValueError("trials must be positive")
    n = frame.dim
    report = MaximalityReport(trials)
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        g = metric if metric is not None else random_metric(rng, n)
        H = random_three_form(rng, n)
        lc = levi_civita(frame, g)
        ric_g = ricci(lc)
        T = torsion_from_three_form(frame, g, H)
        ric_t = ricci(connection_with_torsion(lc, T))
        formula = ricci_torsion_formula(frame, g, ric_g, T, H)
        report.max_formula_error = max(report.max_formula_error,
                                       float(np.abs(ric_t.matrix - formula.matrix).max()))
        strict = False
        for x in np.eye(n):
            deficit = ric_g.quadratic(x) - ric_t.quadratic(x)
            report.min_deficit = min(report.min_deficit, float(deficit))
            if deficit < -tol:
                report.violations += 1
            if deficit > tol:
                strict = True
        if not H.is_zero() and not strict:
            report.strict_failures += 1
    return report
