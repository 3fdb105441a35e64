import itertools
import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from stringforms import (InvariantForm, InvariantMetric, LieAlgebraFrame, bracket,
                         ce_differential, check_structure, codifferential, form_inner,
                         frame_from_json, frame_to_json, g_alpha, hodge_star, laplacian,
                         su2, volume_form)
from stringforms.forms import DegreeError, basis, wedge
from stringforms.lie import abelian, change_basis, direct_sum
from stringforms.torsion import random_metric
from stringforms._exact import mpq

E = np.eye(3, dtype=int)


def form(dim, deg, vec):
    return InvariantForm.from_vector(dim, deg, vec)


# -- brackets and structure ------------------------------------------------

def test_su2_brackets():
    L = su2()
    assert list(bracket(L, E[0], E[1])) == [0, 0, 2]
    assert list(bracket(L, E[1], E[2])) == [2, 0, 0]
    assert list(bracket(L, E[2], E[0])) == [0, 2, 0]
    assert list(bracket(L, E[1], E[0])) == [0, 0, -2]


@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_bracket_self_is_zero(x):
    assert not np.any(bracket(su2(), np.array(x), np.array(x)))


def test_bracket_dimension_mismatch():
    with pytest.raises(ValueError):
        bracket(su2(), np.ones(2), np.ones(3))


def test_check_structure_su2():
    rep = check_structure(su2())
    assert rep.passed and rep.antisymmetry == 0 and rep.jacobi == 0


def test_check_structure_antisymmetry_failure():
    c = np.zeros((3, 3, 3))
    c[2, 0, 1] = 2
    c[2, 1, 0] = 2
    rep = check_structure(LieAlgebraFrame(c))
    assert not rep.passed
    assert rep.antisymmetry == 4


def test_check_structure_jacobi_failure(rng):
    c = rng.standard_normal((4, 4, 4))
    c = c - c.transpose(0, 2, 1)
    rep = check_structure(LieAlgebraFrame(c))
    # evaluate the Jacobi sum independently
    worst = 0.0
    for i, j, k, l in itertools.product(range(4), repeat=4):
        s = sum(c[m, i, j] * c[l, m, k] + c[m, j, k] * c[l, m, i] + c[m, k, i] * c[l, m, j]
                for m in range(4))
        worst = max(worst, abs(s))
    assert rep.jacobi == pytest.approx(worst)
    assert rep.jacobi > 0 and not rep.passed


def test_json_round_trip():
    doc = {"dim": 3, "brackets": [[1, 2, [0, 0, 2]], [2, 3, [2, 0, 0]], [3, 1, [0, 2, 0]]]}
    L = frame_from_json(doc)
    assert np.array_equal(L.constants(True), su2().constants(True))
    again = frame_from_json(frame_to_json(L))
    assert np.array_equal(again.constants(True), L.constants(True))
    assert frame_from_json(json.dumps(doc), exact=False).constants().dtype == float


@pytest.mark.parametrize("doc", [{"dim": 3}, {"dim": 3, "brackets": [[1, 1, [0, 0, 0]]]},
                                 {"dim": 3, "brackets": [[1, 4, [0, 0, 0]]]},
                                 {"dim": 3, "brackets": [[1, 2, [0, 0]]]}])
def test_json_rejects_bad_documents(doc):
    with pytest.raises(ValueError):
        frame_from_json(doc)


# -- CE differential -------------------------------------------------------

def test_d_e3():
    d = ce_differential(su2(), InvariantForm.basis_form(3, 2))
    assert d.coeffs == {(0, 1): -2}


def test_d_of_constant_and_top_form():
    assert ce_differential(su2(), InvariantForm.constant(3, mpq(1))).is_zero()
    assert ce_differential(su2(), InvariantForm.basis_form(3, 0, 1, coefficient=mpq(1))).is_zero()
    # no 4-forms on a 3-dim algebra: top degree is rejected, not silently zeroed
    with pytest.raises(DegreeError):
        ce_differential(su2(), InvariantForm.basis_form(3, 0, 1, 2))


def _frames():
    so3_r = direct_sum(su2(), abelian(2))
    p = np.array([[1, 2, 0], [0, 1, -1], [1, 0, 1]], dtype=object)
    return [su2(), so3_r, change_basis(su2(), p), abelian(3)]


@pytest.mark.parametrize("frame", _frames(), ids=lambda f: f.name or "frame")
def test_d_squared_zero_all_basis_forms(frame):
    n = frame.dim
    for p in range(n - 1):
        for I in basis(n, p):
            dd = ce_differential(frame, ce_differential(frame, InvariantForm(n, p, {I: mpq(1)})))
            assert dd.is_zero()


# -- Hodge star ------------------------------------------------------------

def test_star_identity_metric():
    g = InvariantMetric(np.eye(3, dtype=int).astype(object) * mpq(1))
    assert hodge_star(su2(), g, InvariantForm.basis_form(3, 0, coefficient=mpq(1))).coeffs \
        == {(1, 2): 1}


def test_star_family_metric():
    a1, a2 = mpq(2), mpq(3)
    g = g_alpha(a1, a2)
    assert hodge_star(su2(), g, InvariantForm.basis_form(3, 0, coefficient=mpq(1))).coeffs \
        == {(1, 2): a1 / a2}
    assert hodge_star(su2(), g, InvariantForm.constant(3, mpq(1))).coeffs \
        == {(0, 1, 2): 1 / (a1 * a2)}
    assert volume_form(g).coeffs == {(0, 1, 2): mpq(1, 6)}


@given(st.integers(0, 2**32 - 1), st.integers(0, 3), st.integers(3, 4))
def test_star_twice_sign_and_isometry(seed, p, n):
    p = min(p, n)
    rng = np.random.default_rng(seed)
    g = random_metric(rng, n)
    a = form(n, p, rng.standard_normal(len(basis(n, p))))
    b = form(n, p, rng.standard_normal(len(basis(n, p))))
    L = abelian(n, exact=False)
    ss = hodge_star(L, g, hodge_star(L, g, a))
    sign = (-1) ** (p * (n - p))
    assert np.allclose(ss.vector(False), sign * a.vector(False), atol=1e-9)
    lhs = form_inner(g, hodge_star(L, g, a), hodge_star(L, g, b))
    assert lhs == pytest.approx(form_inner(g, a, b), rel=1e-9, abs=1e-9)


def test_wedge_with_star_is_inner_times_volume(rng):
    g = random_metric(rng, 4)
    a = form(4, 2, rng.standard_normal(6))
    b = form(4, 2, rng.standard_normal(6))
    lhs = wedge(a, hodge_star(abelian(4, False), g, b))
    rhs = form_inner(g, a, b) * volume_form(g)[(0, 1, 2, 3)]
    assert lhs[(0, 1, 2, 3)] == pytest.approx(rhs)


# -- codifferential and Laplacian -------------------------------------------

def test_codifferential_of_volume_forms_vanishes(rng):
    assert codifferential(su2(), g_alpha(mpq(2), mpq(3)),
                          InvariantForm.basis_form(3, 0, 1, 2, coefficient=mpq(5))).is_zero()
    for _ in range(5):
        g = random_metric(rng, 3)
        d = codifferential(su2(False), g, InvariantForm.basis_form(3, 0, 1, 2, coefficient=1.0))
        assert d.max_abs() < 1e-12


def test_codifferential_of_function_is_zero():
    assert codifferential(su2(), g_alpha(1, 1), InvariantForm.constant(3, mpq(1))).is_zero()


def test_laplacian_volume_form_harmonic():
    g = g_alpha(1, 1)
    assert laplacian(su2(), g, InvariantForm.basis_form(3, 0, 1, 2, coefficient=mpq(1))).is_zero()


def test_adjointness_identity_metric_basis():
    g = g_alpha(1, 1)
    e3 = InvariantForm.basis_form(3, 2, coefficient=mpq(1))
    e12 = InvariantForm.basis_form(3, 0, 1, coefficient=mpq(1))
    lhs = form_inner(g, ce_differential(su2(), e3), e12)
    rhs = form_inner(g, e3, codifferential(su2(), g, e12))
    assert lhs == rhs == -2


@given(st.integers(0, 2**32 - 1), st.integers(0, 2))
def test_adjointness_random(seed, p):
    rng = np.random.default_rng(seed)
    frame = direct_sum(su2(False), abelian(1, False))
    n = frame.dim
    g = random_metric(rng, n)
    a = form(n, p, rng.standard_normal(len(basis(n, p))))
    b = form(n, p + 1, rng.standard_normal(len(basis(n, p + 1))))
    lhs = form_inner(g, ce_differential(frame, a), b)
    rhs = form_inner(g, a, codifferential(frame, g, b))
    assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(lhs))


def test_codifferential_exact_with_irrational_volume():
    # sqrt(det g) irrational: d* stays rational
    g = InvariantMetric(np.array([[mpq(2), mpq(1), 0], [mpq(1), mpq(3), 0], [0, 0, mpq(1)]],
                                 dtype=object))
    b = InvariantForm.basis_form(3, 0, 1, coefficient=mpq(1))
    d = codifferential(su2(), g, b)
    assert d.exact
    gf = InvariantMetric(np.asarray(g.gram, dtype=float))
    df = codifferential(su2(False), gf, b.astype(False))
    assert np.allclose(d.vector(False), df.vector(False))
