import numpy as np
from hypothesis import given, strategies as st

from stringforms import g_alpha, integral_H, levi_civita, ricci, su2
from stringforms.batch import (cs_integral_batch, family_batch, family_grams,
                               levi_civita_batch, ricci_batch)
from stringforms.lie import abelian, direct_sum
from stringforms.torsion import random_metric

from conftest import float_alphas


@given(st.integers(0, 2**32 - 1), st.sampled_from(["left", "right"]))
def test_batch_matches_scalar_pipeline(seed, chir):
    rng = np.random.default_rng(seed)
    metrics = [random_metric(rng, 3).with_chirality(chir) for _ in range(4)]
    grams = np.stack([np.asarray(g.gram) for g in metrics])
    gam = levi_civita_batch(grams, chirality=chir)
    ric = ricci_batch(grams, chirality=chir)
    cs = cs_integral_batch(grams, chir)
    for k, g in enumerate(metrics):
        lc = levi_civita(su2(False), g)
        assert np.allclose(gam[k], lc.gamma, atol=1e-12)
        assert np.allclose(ric[k], ricci(lc).matrix, atol=1e-10)
        anchor = "L" if chir == "left" else "R"
        assert np.isclose(cs[k], integral_H(anchor, g), rtol=1e-12, atol=1e-12)


def test_batch_other_frames():
    frame = direct_sum(su2(False), abelian(1, False))
    g = random_metric(np.random.default_rng(1), 4)
    got = ricci_batch(np.asarray(g.gram)[None], frame)[0]
    assert np.allclose(got, ricci(levi_civita(frame, g)).matrix, atol=1e-12)


@given(float_alphas, float_alphas)
def test_family_batch_scalar_point(a1, a2):
    eigs, base = family_batch(a1, a2)
    assert np.isclose(base, integral_H("L", g_alpha(a1, a2)), rtol=1e-12, atol=1e-12)
    assert eigs.shape == (3,)


def test_family_grams_rejects_nonpositive():
    import pytest
    with pytest.raises(ValueError):
        family_grams(np.array([1.0, 0.0]), 1.0)


def test_complex_step_derivative():
    # d/da of -2 + (2 a^2 - 1)/a^4 is 4 (1 - a^2) / a^5
    for a in (0.6, 1.0, 1.7):
        h = 1e-30
        d = family_batch(a + 1j * h, 1.0)[1].imag / h
        assert np.isclose(d, 4 * (1 - a**2) / a**5, rtol=1e-13, atol=1e-13)
