import numpy as np
import pytest

from modpair.inclusion import (StandardPairModel, contraction_ratio, dense_spectral_defect,
                               generator_form_gap, into_form_domain, membership_inclusion_defect,
                               orthogonality_defect, pair_apply_U, pair_spectral_projection,
                               quadratic_form, relative_phase, required_pad, spectral_inclusion_defect,
                               strip_poles, transport, wiesbrock_cocycle_residual, check_inclusion)
from modpair.numgrid import GridSpec, WaveFunction, gaussian, inner_product, probe_family
from modpair.phases import (BlaschkeProduct, ConjugateOf, ExponentialFactor, ScalingPhase,
                            SinhPhase, TrivialPhase, apply_phase_values, product_phase)
from modpair.schrodinger import flow_values, weyl_values

ID = TrivialPhase()
B1 = BlaschkeProduct((-1j,))
B2 = BlaschkeProduct((-0.5 - 0.5j, 0.5 - 0.5j))
SINH = SinhPhase()


def _psi(g, c=-2.0, w=0.6, k=0.0):
    return WaveFunction(g, "theta", gaussian(g, c, w, k))


def _rel(a, b):
    return np.linalg.norm(a - b) / np.linalg.norm(b)


# -- U_φ(s) ---------------------------------------------------------------------

def test_trivial_pair_is_base_weyl(grid2k):
    psi = _psi(grid2k)
    out = pair_apply_U(ID, 1.3, psi, pad=1)
    np.testing.assert_allclose(out.values, weyl_values(psi.values, grid2k, 1.3), atol=1e-13)


def test_scaling_pair_is_conjugated_weyl(grid4k):
    # V for scaling by 2 is the modular flow at t₀ with e^{-2πt₀} = 2
    t0 = -np.log(2.0) / (2 * np.pi)
    psi = _psi(grid4k, -3.0, 0.5)
    for s in (0.5, 1.0, 2.0):
        lhs = pair_apply_U(ScalingPhase(2.0), s, psi, pad=1).values
        rhs = flow_values(weyl_values(flow_values(psi.values, grid4k, -t0), grid4k, s), grid4k, t0)
        assert _rel(lhs, rhs) <= 1e-9


@pytest.mark.parametrize("phi", [B1, B2, SINH, ExponentialFactor(0.3)])
def test_pair_group_is_unitary(grid2k, phi):
    psi = _psi(grid2k)
    a = pair_apply_U(phi, 0.7, psi)
    assert a.norm() == pytest.approx(psi.norm(), rel=1e-12)
    # s·e^θ must be exact in floating point: the padded grid reaches e^θ ~ 1e100,
    # where a rounding error in the product scrambles the phase
    once = pair_apply_U(phi, 1.0, psi)
    twice = pair_apply_U(phi, 1.0, once, pad=1)
    assert _rel(twice.values, pair_apply_U(phi, 2.0, psi).values) <= 1e-12
    back = pair_apply_U(phi, -1.0, once, pad=1)
    assert _rel(back.values, once.grid.embed(psi.values, grid2k)) <= 1e-12


def test_required_pad_grows_for_small_zeros(grid2k):
    assert required_pad(grid2k, ID) == 4
    assert required_pad(grid2k, B2) == 8
    assert required_pad(grid2k, BlaschkeProduct((-0.1j,))) >= 16


# -- spectral projections ---------------------------------------------------------

@pytest.mark.parametrize("phi", [ID, B1, SINH])
def test_projection_idempotent_and_selfadjoint(grid2k, phi):
    x, y = _psi(grid2k, -1.0, 0.5, 2.0), _psi(grid2k, 0.5, 0.8, -1.0)
    pad = required_pad(grid2k, phi)
    ex = pair_spectral_projection(phi, 0.5, 2.0, x, pad)
    eex = pair_spectral_projection(phi, 0.5, 2.0, WaveFunction(ex.grid, "theta", ex.values), 1)
    assert _rel(eex.values, ex.values) <= 1e-12
    ey = pair_spectral_projection(phi, 0.5, 2.0, y, pad)
    xw, yw = ex.grid.embed(x.values, grid2k), ey.grid.embed(y.values, grid2k)
    w = WaveFunction(ex.grid, "theta", xw)
    assert abs(inner_product(w.with_values(ex.values), w.with_values(yw))
               - inner_product(w.with_values(xw), w.with_values(ey.values))) <= 1e-12


def test_projections_partition(grid2k):
    x = _psi(grid2k, -0.5, 0.7, 1.0)
    parts = [pair_spectral_projection(B1, a, b, x, 8).values for a, b in ((0, 0.5), (0.5, 3.0), (3.0, np.inf))]
    total = sum(parts)
    ref = pair_apply_U(B1, 0.0, x, 8).values
    assert _rel(total, ref) <= 1e-12


def test_projection_flow_covariance():
    g = GridSpec(120.0, 16384)
    x = _psi(g, -3.0, 0.7, 1.0)
    m = 37
    t = m * g.spacing / (2 * np.pi)
    for phi in (ID, B1):
        e = pair_spectral_projection(phi, 0.0, 1.0, WaveFunction(g, "theta", flow_values(x.values, g, -t)), 1)
        lhs = flow_values(e.values, g, t)
        rhs = pair_spectral_projection(phi, 0.0, np.exp(2 * np.pi * t), x, 1).values
        assert _rel(lhs, rhs) <= 1e-8


def test_bad_interval_order(grid2k):
    with pytest.raises(ValueError, match="a < b"):
        pair_spectral_projection(ID, 2.0, 1.0, _psi(grid2k))
    with pytest.raises(ValueError, match="a < b"):
        orthogonality_defect(B1, ID, (1.0, 0.5), (2.0, 3.0), grid2k)


# -- detectors --------------------------------------------------------------------

def test_relative_phase():
    lam = np.linspace(-6, 6, 61)
    assert relative_phase(B1, ID) == B1
    assert relative_phase(ID, B1) == ConjugateOf(B1)
    r = relative_phase(product_phase(B1, B2), B1)
    np.testing.assert_allclose(r(lam), B2(lam), atol=1e-14)
    assert relative_phase(StandardPairModel(SINH), SINH)(lam) == pytest.approx(np.ones_like(lam))


def test_spectral_defect_examples(grid4k):
    assert spectral_inclusion_defect(B1, ID, grid4k) <= 1e-3
    assert spectral_inclusion_defect(ID, B1, grid4k) >= 1e-2
    assert spectral_inclusion_defect(SINH, ID, grid4k) >= 1e-2


@pytest.mark.parametrize("phi", [ID, B1, B2, SINH, ExponentialFactor(0.2)])
def test_reflexivity(grid2k, phi):
    assert spectral_inclusion_defect(phi, phi, grid2k) <= 1e-9


def test_membership_examples(grid4k):
    assert membership_inclusion_defect(B1, ID, grid4k) <= 1e-6
    assert membership_inclusion_defect(B2, ID, grid4k) <= 1e-6
    assert membership_inclusion_defect(ID, B1, grid4k) >= 1e-2


def test_transitivity_chain(grid2k):
    b12 = product_phase(B1, B2)
    assert check_inclusion(b12, B1, grid2k).verdict is True
    assert check_inclusion(B1, ID, grid2k).verdict is True
    assert check_inclusion(b12, ID, grid2k).verdict is True


def test_dense_oracle_agrees():
    g = GridSpec(30.0, 256)
    for p1, p2 in ((B1, ID), (ID, B1), (SINH, ID)):
        a = spectral_inclusion_defect(p1, p2, g)
        b = dense_spectral_defect(p1, p2, g)
        assert abs(a - b) <= 1e-6


def test_dense_oracle_size_limit():
    with pytest.raises(ValueError, match="4096"):
        dense_spectral_defect(ID, ID, GridSpec(30.0, 2048))


# -- consequences ------------------------------------------------------------------

def test_orthogonality(grid2k):
    assert orthogonality_defect(B1, ID, (0.5, 1.0), (2.0, 3.0), grid2k) <= 1e-3
    assert orthogonality_defect(ID, ID, (0.5, 1.0), (1.0, 3.0), grid2k) <= 1e-12
    assert orthogonality_defect(ID, ID, (0.5, 2.0), (1.0, 3.0), grid2k) >= 0.5


def test_contraction(grid2k):
    probes = probe_family(grid2k, "gaussian", 8, 0)
    for y in (0.1, 1.0, 10.0):
        r = contraction_ratio(B1, ID, y, probes)
        assert r.ratio <= 1 + 1e-6
        assert r.cutoff == pytest.approx(18.0 / y)
    assert contraction_ratio(ID, B1, 5.0, probes).ratio > 1.001
    with pytest.raises(ValueError, match="positive"):
        contraction_ratio(B1, ID, 0.0, probes)
    with pytest.raises(ValueError, match="exceeds"):
        contraction_ratio(B1, ID, 1.0, probes, cutoff=1e4)


def test_form_gap_sinh_pair(grid2k):
    for psi in probe_family(grid2k, "gaussian", 10, 3):
        assert generator_form_gap(ID, SINH, psi) >= -1e-9


def test_form_gap_blaschke_needs_domain(grid2k):
    assert strip_poles(B1) == [pytest.approx(1j / (2 * np.pi))]
    psi = _psi(grid2k, -1.0, 0.8)
    with pytest.raises(ValueError, match="form domain"):
        quadratic_form(B1, psi)
    q = into_form_domain(B1, psi)
    assert q.norm() == pytest.approx(1.0)
    assert generator_form_gap(B1, ID, q) >= -1e-9


def test_quadratic_form_trivial_pair(grid2k):
    # ⟨ψ, P₀ψ⟩ = ∫ e^θ |ψ|² dθ
    psi = _psi(grid2k, -1.0, 0.6, 0.5)
    want = grid2k.spacing * np.sum(np.exp(grid2k.nodes) * np.abs(psi.values) ** 2)
    assert quadratic_form(ID, psi) == pytest.approx(want, rel=1e-10)


@pytest.mark.parametrize("phi", [B1, B2, SINH, ScalingPhase(2.0)])
def test_wiesbrock_on_transported_probes(grid2k, phi):
    psi = WaveFunction(grid2k, "theta", apply_phase_values(phi, gaussian(grid2k, -2.0, 0.7), grid2k))
    for t in (0.1, 0.4):
        assert wiesbrock_cocycle_residual(phi, t, psi) <= 1e-7


def test_transport_is_unitary(grid2k):
    psi = _psi(grid2k, -1.0, 0.5, 1.0)
    assert transport(SINH, psi).norm() == pytest.approx(psi.norm(), rel=1e-12)
