"""Gauge derivative, transforms, and the invariance identity."""

import numpy as np
import pytest

from scalefield.errors import ZeroCoupling
from scalefield.fields import (
    CombinationField,
    ConstantField,
    FieldSample,
    GaussianField,
    LinearField,
    ScalingField,
)
from scalefield.gauge import (
    GaugeConfig,
    GaugeTransform,
    apply_transform,
    gauge_connection,
    gauge_covariant_derivative,
    invariance_residual,
)
from scalefield.manifold import Manifold


def spacetime(nodes=9, half=1.0):
    return Manifold.box([(-half, half)] * 4, nodes)


def make_field(m, theta=None, phi=None):
    theta = theta or LinearField((0.2, -0.3, 0.1, 0.4))
    phi = phi or GaussianField(0.7, (0.0, 0.1, -0.2, 0.0), 0.9)
    return ScalingField(m, theta, phi)


def constant_photon(values):
    return tuple(ConstantField(v) for v in values)


def test_gauge_derivative_of_constant_sample():
    m = spacetime(nodes=9)
    f = ScalingField(m, LinearField((0.5, 0.1, -0.2, 0.3)), ConstantField(0.0))
    cfg = GaugeConfig(g_r=1.5, g_i=2.0, h_i=0.75,
                      photon=constant_photon((0.2, -0.4, 0.6, 0.0)))
    psi0 = 1.0 - 2.0j
    psi = FieldSample(m, np.full(m.grid_shape, psi0))
    x = np.array([m.axis_nodes(a)[4] for a in range(4)])
    for mu, (slope, b) in enumerate(zip((0.5, 0.1, -0.2, 0.3),
                                        (0.2, -0.4, 0.6, 0.0))):
        expected = (cfg.g_r * slope + 1j * cfg.h_i * b) * psi0
        got = gauge_covariant_derivative(psi, f, cfg, x, mu)
        assert got == pytest.approx(expected, rel=1e-12)


def test_gauge_derivative_reduces_to_plain_derivative():
    m = spacetime(nodes=9)
    f = ScalingField(m, ConstantField(0.0), ConstantField(0.0))
    cfg = GaugeConfig(0.0, 0.0, 0.0, constant_photon((1.0, 1.0, 1.0, 1.0)))
    pts = m.grid_points()
    psi = FieldSample(m, pts[..., 1] ** 2)
    x = np.array([m.axis_nodes(a)[4] for a in range(4)])
    got = gauge_covariant_derivative(psi, f, cfg, x, 1)
    assert got == pytest.approx(2.0 * x[1], rel=1e-12, abs=1e-12)


def test_transform_shifts_delta_by_unit():
    m = spacetime()
    f = make_field(m, phi=LinearField((0.0, 2.0, 0.0, 0.0)))
    cfg = GaugeConfig(1.0, 3.0, 1.0, constant_photon((0.0,) * 4))
    tr = GaugeTransform(alpha=ConstantField(0.0),
                        gamma=LinearField((0.0, 3.0, 0.0, 0.0)))
    new_field, _ = apply_transform(f, cfg, tr)
    x = np.zeros(4)
    _, delta_before = f.gamma_delta(x)
    _, delta_after = new_field.gamma_delta(x)
    assert delta_after[1] == pytest.approx(delta_before[1] - 1.0, abs=1e-14)


def test_transform_shifts_photon_by_unit():
    m = spacetime()
    f = make_field(m)
    cfg = GaugeConfig(1.0, 1.0, 0.5, constant_photon((0.0, 0.3, 0.0, 0.9)))
    tr = GaugeTransform(alpha=LinearField((0.0, 0.0, 0.5, 0.0)),
                        gamma=ConstantField(0.0))
    _, new_cfg = apply_transform(f, cfg, tr)
    x = np.zeros(4)[None]
    b = new_cfg.photon_at(x)[0]
    assert b[2] == pytest.approx(0.0 - 1.0, abs=1e-14)
    assert b[1] == pytest.approx(0.3, abs=1e-14)


def test_gamma_component_untouched():
    m = spacetime()
    f = make_field(m)
    cfg = GaugeConfig(1.2, 0.8, 0.6, constant_photon((0.1,) * 4))
    tr = GaugeTransform(alpha=GaussianField(0.4, (0.0,) * 4, 1.1),
                        gamma=LinearField((0.3, 0.1, 0.0, -0.2)))
    new_field, _ = apply_transform(f, cfg, tr)
    x = np.array([0.2, -0.3, 0.4, 0.1])
    g0, _ = f.gamma_delta(x)
    g1, _ = new_field.gamma_delta(x)
    assert np.array_equal(g0, g1)


def test_invariance_residual_is_machine_small():
    m = spacetime()
    f = make_field(m)
    cfg = GaugeConfig(1.3, 0.9, 0.7,
                      photon=(LinearField((0.1, 0.0, 0.2, 0.0)),
                              ConstantField(0.4),
                              GaussianField(0.5, (0.1, 0.0, 0.0, -0.1), 1.3),
                              ConstantField(-0.2)))
    tr = GaugeTransform(alpha=GaussianField(0.6, (0.0, 0.2, 0.0, 0.0), 1.0),
                        gamma=LinearField((0.2, -0.1, 0.3, 0.1)))
    pts = m.interior_grid_points()
    res = invariance_residual(f, cfg, tr, pts)
    assert float(np.max(res)) < 1e-10


def test_sign_flipped_alpha_breaks_invariance_by_twice_its_gradient():
    m = spacetime()
    f = make_field(m)
    cfg = GaugeConfig(1.0, 1.0, 0.5, constant_photon((0.0,) * 4))
    alpha = LinearField((0.0, 0.8, 0.0, 0.0))
    tr = GaugeTransform(alpha=alpha, gamma=ConstantField(0.0))
    corrupt_photon = tuple(
        CombinationField(((1.0, b), (+1.0 / cfg.h_i,
                                     LinearField((0.0, 0.0, 0.0, 0.0))
                                     if mu != 1 else ConstantField(0.8))))
        for mu, b in enumerate(cfg.photon)
    )
    x = np.array([0.1, 0.2, -0.3, 0.0])
    before = gauge_connection(f, cfg, x)
    after = gauge_connection(f, GaugeConfig(1.0, 1.0, 0.5, corrupt_photon), x)
    dbeta = f._spec_gradient(tr.beta, np.asarray(x))
    residual = np.max(np.abs(after + 1j * dbeta - before))
    assert residual == pytest.approx(2.0 * 0.8, rel=1e-12)


def test_split_additivity():
    m = spacetime()
    f = make_field(m)
    cfg = GaugeConfig(1.1, 0.6, 0.9,
                      photon=constant_photon((0.2, -0.1, 0.0, 0.3)))
    a1 = GaussianField(0.3, (0.0,) * 4, 1.2)
    a2 = LinearField((0.1, 0.0, -0.2, 0.0))
    g1 = LinearField((0.0, 0.4, 0.0, 0.1))
    g2 = GaussianField(0.2, (0.1, 0.0, 0.0, 0.0), 0.8)
    combined = GaugeTransform(CombinationField(((1.0, a1), (1.0, a2))),
                              CombinationField(((1.0, g1), (1.0, g2))))
    f_c, cfg_c = apply_transform(f, cfg, combined)
    f_s, cfg_s = apply_transform(*apply_transform(f, cfg,
                                                  GaugeTransform(a1, g1)),
                                 GaugeTransform(a2, g2))
    pts = m.interior_grid_points()[::97]
    _, d_c = f_c.gamma_delta(pts)
    _, d_s = f_s.gamma_delta(pts)
    assert np.allclose(d_c, d_s, atol=1e-13, rtol=0)
    assert np.allclose(cfg_c.photon_at(pts), cfg_s.photon_at(pts),
                       atol=1e-13, rtol=0)


def test_transformed_delta_has_vanishing_curl():
    m = spacetime()
    f = make_field(m)
    cfg = GaugeConfig(1.0, 0.75, 0.5, constant_photon((0.0,) * 4))
    tr = GaugeTransform(alpha=ConstantField(0.0),
                        gamma=GaussianField(0.9, (0.0, 0.1, 0.0, -0.1), 1.1))
    new_field, _ = apply_transform(f, cfg, tr)
    h = 1e-4
    x = np.array([0.15, -0.2, 0.25, 0.05])
    for i in range(4):
        for j in range(i + 1, 4):
            ei, ej = np.zeros(4), np.zeros(4)
            ei[i] = h
            ej[j] = h
            di = (new_field.gamma_delta(x + ei)[1][j]
                  - new_field.gamma_delta(x - ei)[1][j]) / (2 * h)
            dj = (new_field.gamma_delta(x + ej)[1][i]
                  - new_field.gamma_delta(x - ej)[1][i]) / (2 * h)
            assert di - dj == pytest.approx(0.0, abs=1e-7)


def test_zero_coupling_rejected_for_nonconstant_alpha():
    m = spacetime()
    f = make_field(m)
    cfg = GaugeConfig(1.0, 1.0, 0.0, constant_photon((0.0,) * 4))
    tr = GaugeTransform(alpha=LinearField((0.1, 0.0, 0.0, 0.0)),
                        gamma=ConstantField(0.0))
    with pytest.raises(ZeroCoupling):
        apply_transform(f, cfg, tr)


def test_constant_split_needs_no_couplings():
    m = spacetime()
    f = make_field(m)
    cfg = GaugeConfig(1.0, 0.0, 0.0, constant_photon((0.0,) * 4))
    tr = GaugeTransform(alpha=ConstantField(2.0), gamma=ConstantField(-1.0))
    new_field, new_cfg = apply_transform(f, cfg, tr)
    x = np.zeros(4)
    assert np.array_equal(new_field.gamma_delta(x)[1], f.gamma_delta(x)[1])
    assert new_cfg.photon == cfg.photon


def test_residual_in_central_difference_mode():
    m = spacetime(nodes=17, half=1.0)
    f = ScalingField(m, LinearField((0.2, -0.3, 0.1, 0.4)),
                     GaussianField(0.7, (0.0, 0.1, -0.2, 0.0), 0.9),
                     gradient_mode="central")
    cfg = GaugeConfig(1.3, 0.9, 0.7, constant_photon((0.1, 0.2, -0.3, 0.0)))
    tr = GaugeTransform(alpha=GaussianField(0.6, (0.0, 0.2, 0.0, 0.0), 1.0),
                        gamma=LinearField((0.2, -0.1, 0.3, 0.1)))
    x = np.zeros(4)
    h = f.gradient_step
    assert float(invariance_residual(f, cfg, tr, x)) < h ** 2
