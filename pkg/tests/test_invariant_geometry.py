from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.spatial.transform import Rotation

from stringforms import (DegenerateMetricError, InvariantMetric, NotSu2TypeError, RicciRegion,
                         connection_components_closed_form, curvature, family_ricci_eigenvalues,
                         flat_connection, g_alpha, levi_civita, milnor_normal_form,
                         region_curves, ricci, ricci_eigenvalues_closed_form,
                         ricci_positivity, su2)
from stringforms.lie import abelian, change_basis, direct_sum
from stringforms.torsion import random_metric
from stringforms._exact import mpq

from conftest import float_alphas, rational_alphas


def unit_frame(a1, a2):
    return [np.array([a1, 0, 0], dtype=object), np.array([0, a2, 0], dtype=object),
            np.array([0, 0, 1], dtype=object)]


@given(rational_alphas(), rational_alphas())
def test_connection_components_exact(a1, a2):
    a1, a2 = mpq(a1), mpq(a2)
    g = g_alpha(a1, a2)
    conn = levi_civita(su2(), g)
    u = unit_frame(a1, a2)
    p, q, r = connection_components_closed_form(a1, a2)
    assert g.inner(conn.covariant(u[0], u[1]), u[2]) == p
    assert g.inner(conn.covariant(u[1], u[2]), u[0]) == q
    assert g.inner(conn.covariant(u[2], u[0]), u[1]) == r
    # oracle written out independently of the helper
    assert p == a1 * a2 + a1 / a2 - a2 / a1


def test_bi_invariant_connection_is_half_bracket():
    conn = levi_civita(su2(), g_alpha(1, 1))
    assert np.array_equal(conn.gamma, su2().constants(True) / 2)


def test_abelian_connection_vanishes(rng):
    conn = levi_civita(abelian(3, False), random_metric(rng, 3))
    assert not np.any(conn.gamma)


def _random_frames():
    p = np.array([[1, 2, 0], [0, 1, -1], [1, 0, 1]], dtype=float)
    return [su2(False), change_basis(su2(False), p), direct_sum(su2(False), abelian(1, False))]


@given(st.integers(0, 2**32 - 1), st.sampled_from([0, 1, 2]), st.sampled_from(["left", "right"]))
def test_levi_civita_torsion_free_and_compatible(seed, which, chir):
    frame = _random_frames()[which]
    rng = np.random.default_rng(seed)
    g = random_metric(rng, frame.dim).with_chirality(chir)
    conn = levi_civita(frame, g)
    assert np.abs(conn.torsion).max() < 1e-12 * max(1, np.abs(conn.gamma).max())
    low = conn.lowered()  # g(nabla_i e_j, e_k)
    assert np.abs(low + low.transpose(0, 2, 1)).max() < 1e-12 * max(1, np.abs(low).max())


def test_levi_civita_exact_compatibility():
    g = InvariantMetric(np.array([[mpq(2), mpq(1), 0], [mpq(1), mpq(3), 0], [0, 0, mpq(5)]],
                                 dtype=object))
    conn = levi_civita(su2(), g)
    assert not np.any(conn.torsion)
    low = conn.lowered()
    assert not np.any(low + low.transpose(0, 2, 1))


def test_flat_abelian_curvature_zero():
    R = curvature(flat_connection(abelian(3)))
    assert not np.any(R.R)


def test_round_sectional_curvature_one():
    g = g_alpha(1, 1)
    R = curvature(levi_civita(su2(), g))
    e = np.eye(3, dtype=int).astype(object)
    for i in range(3):
        for j in range(i + 1, 3):
            assert R.sectional(g, e[i], e[j]) == 1


@given(st.integers(0, 2**32 - 1))
def test_curvature_antisymmetric(seed):
    g = random_metric(np.random.default_rng(seed), 3)
    R = curvature(levi_civita(su2(False), g)).R
    assert np.abs(R + R.transpose(0, 2, 1, 3)).max() < 1e-12 * max(1, np.abs(R).max())


def test_round_ricci_is_two():
    assert family_ricci_eigenvalues(1, 1) == (2, 2, 2)


@given(rational_alphas(), rational_alphas())
def test_ricci_eigenvalues_match_products(a1, a2):
    a1, a2 = mpq(a1), mpq(a2)
    got = family_ricci_eigenvalues(a1, a2)
    p = a1 * a2 + a1 / a2 - a2 / a1
    q = a1 * a2 - a1 / a2 + a2 / a1
    r = -a1 * a2 + a1 / a2 + a2 / a1
    assert got == (2 * q * r, 2 * r * p, 2 * p * q)


@given(rational_alphas())
def test_berger_ricci(a):
    a = mpq(a)
    assert family_ricci_eigenvalues(a, 1) == (2 / a**2, 4 - 2 / a**2, 4 - 2 / a**2)


@given(float_alphas, float_alphas)
def test_ricci_frame_is_eigenbasis(a1, a2):
    ric = ricci(levi_civita(su2(False), g_alpha(a1, a2)))
    ev = np.sort(ric.eigenvalues())
    assert np.allclose(ev, np.sort(ricci_eigenvalues_closed_form(a1, a2)), atol=1e-9)
    assert np.abs(ric.skew).max() < 1e-12 * max(1, np.abs(ric.matrix).max())


@given(st.integers(0, 2**32 - 1), st.builds(Fraction, st.integers(1, 50), st.integers(1, 50)))
def test_ricci_scale_invariance_exact(seed, eps):
    rng = np.random.default_rng(seed)
    g = random_metric(rng, 3, exact=True)
    a = ricci(levi_civita(su2(), g)).matrix
    b = ricci(levi_civita(su2(), g.scaled(eps))).matrix
    assert np.array_equal(a, b)


@given(st.integers(0, 2**32 - 1))
def test_left_right_mirror(seed):
    g = random_metric(np.random.default_rng(seed), 3)
    left = levi_civita(su2(False), g)
    right = levi_civita(su2(False), g.with_chirality("right"))
    assert np.allclose(right.gamma, -left.gamma, atol=1e-13)
    assert np.allclose(ricci(right).matrix, ricci(left).matrix, atol=1e-12)


def test_left_right_mirror_exact():
    g = g_alpha(mpq(3, 2), mpq(5, 7))
    gr = g_alpha(mpq(3, 2), mpq(5, 7), "right")
    assert np.array_equal(levi_civita(su2(), gr).gamma, -levi_civita(su2(), g).gamma)
    assert np.array_equal(ricci(levi_civita(su2(), gr)).matrix,
                          ricci(levi_civita(su2(), g)).matrix)


# -- Milnor normal form ------------------------------------------------------

def test_milnor_fixed_point():
    m = milnor_normal_form(su2(False), g_alpha(2.0, 3.0))
    assert (m.alpha1, m.alpha2) == pytest.approx((2, 3))
    assert m.scale == pytest.approx(1)
    assert np.allclose(m.frame_map, np.eye(3))


def test_milnor_uniform_scaling():
    m = milnor_normal_form(su2(False), InvariantMetric(np.diag([4.0, 4.0, 4.0])))
    assert (m.alpha1, m.alpha2, m.scale) == pytest.approx((1, 1, 4))


def _lengths(m):
    # e-lengths of the orthonormal frame of scale * g_{alpha1, alpha2}
    return sorted(np.array([m.alpha1, m.alpha2, 1.0]) / np.sqrt(m.scale))


@pytest.mark.parametrize("seed", range(10))
def test_milnor_rotated_berger(seed):
    q = Rotation.random(random_state=seed).as_matrix()
    g = InvariantMetric(q.T @ np.diag([0.25, 1.0, 1.0]) @ q)
    m = milnor_normal_form(su2(False), g)
    assert _lengths(m) == pytest.approx([1, 1, 2])
    # the returned map is an isometry onto scale * g_alpha and preserves brackets
    P = m.frame_map
    ga = np.asarray(g_alpha(m.alpha1, m.alpha2).gram, dtype=float)
    assert np.allclose(P.T @ np.asarray(g.gram) @ P, m.scale * ga)
    c = su2(False).constants()
    assert np.allclose(np.einsum("ak,kij,ib,jc->abc", np.linalg.inv(P), c, P, P), c)


@given(st.integers(0, 2**32 - 1))
def test_milnor_preserves_ricci_spectrum(seed):
    g = random_metric(np.random.default_rng(seed), 3)
    m = milnor_normal_form(su2(False), g)
    ev = np.sort(ricci(levi_civita(su2(False), g)).eigenvalues())
    expect = np.sort(ricci_eigenvalues_closed_form(m.alpha1, m.alpha2)) / m.scale
    assert np.allclose(ev, expect, rtol=1e-8, atol=1e-8)


def test_milnor_rejects_non_su2():
    with pytest.raises(NotSu2TypeError):
        milnor_normal_form(abelian(3, False), InvariantMetric(np.eye(3)))
    with pytest.raises(NotSu2TypeError):
        milnor_normal_form(direct_sum(su2(False), abelian(1, False)), InvariantMetric(np.eye(4)))


def test_milnor_accepts_opposite_orientation():
    m = milnor_normal_form(su2(False).negated(), g_alpha(2.0, 3.0))
    assert _lengths(m) == pytest.approx(sorted([2, 3, 1]))


# -- region classification ---------------------------------------------------

def test_region_round_point():
    assert ricci_positivity(1, 1) is RicciRegion.INTERIOR


def test_region_boundary_point_two_zero_eigenvalues():
    a = 1 / np.sqrt(2)
    assert ricci_positivity(a, 1.0) is RicciRegion.BOUNDARY
    ev = ricci_eigenvalues_closed_form(a, 1.0)
    assert ev[0] == pytest.approx(4)
    assert ev[1] == pytest.approx(0, abs=1e-12) and ev[2] == pytest.approx(0, abs=1e-12)


def test_region_three_one_is_interior():
    # all three eigenvalues are positive: 2/9, 34/9, 34/9
    assert family_ricci_eigenvalues(3, 1) == (mpq(2, 9), mpq(34, 9), mpq(34, 9))
    assert ricci_positivity(3, 1) is RicciRegion.INTERIOR


def test_region_outside():
    assert ricci_positivity(mpq(1, 2), 1) is RicciRegion.OUTSIDE
    assert ricci_positivity(3.0, 3.0) is RicciRegion.OUTSIDE


@given(float_alphas)
def test_points_on_curves_are_boundary(a1):
    for a2 in region_curves(a1):
        if np.isnan(a2) or not 0 < a2 < 50:
            continue
        assert ricci_positivity(a1, a2, tol=1e-9) is RicciRegion.BOUNDARY


@given(rational_alphas(), rational_alphas())
def test_interior_iff_all_positive(a1, a2):
    ev = ricci_eigenvalues_closed_form(mpq(a1), mpq(a2))
    region = ricci_positivity(a1, a2)
    assert (region is RicciRegion.INTERIOR) == all(v > 0 for v in ev)


@pytest.mark.parametrize("bad", [(0, 1), (-1, 1), (1, 0.0)])
def test_degenerate_parameters_rejected(bad):
    with pytest.raises(DegenerateMetricError):
        g_alpha(*bad)
    with pytest.raises(DegenerateMetricError):
        ricci_positivity(*bad)


def test_indefinite_metric_rejected():
    with pytest.raises(DegenerateMetricError):
        InvariantMetric(np.diag([1.0, -1.0, 1.0]))
    with pytest.raises(DegenerateMetricError):
        InvariantMetric(np.array([[1.0, 2.0], [0.0, 1.0]]))
