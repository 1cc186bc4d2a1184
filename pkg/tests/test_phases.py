from dataclasses import dataclass

import numpy as np
import pytest

from modpair.numgrid import GridSpec, WaveFunction, gaussian, normalized
from modpair.phases import (BlaschkeProduct, BoundaryPhase, ConjugateOf, ExponentialFactor, MatrixPhase,
                            PhaseSyntaxError, ProductOf, ScalingPhase, SinhPhase, TrivialPhase,
                            apply_phase_mirrored, apply_phase_values, blaschke_kernel_apply,
                            check_symmetric, check_unitary, conjugate_phase, eval_phase,
                            exp_tail_integral, gregory_end_weights, inner_test, leakage,
                            matrix_inner_test, parse_phase, product_phase)
from modpair.schrodinger import membership_H0, sample_H0_element, weyl_values
from modpair.trend import shrinks

B1 = BlaschkeProduct((-1j,))
B2 = BlaschkeProduct((-0.5 - 0.5j, 0.5 - 0.5j))
LN2 = np.log(2) / (2 * np.pi)


@dataclass(frozen=True)
class _Lopsided(BoundaryPhase):
    """exp(i(aλ² + λ)): unimodular but not symmetric."""
    a: float = 0.3

    def continued(self, z):
        return np.exp(1j * (self.a * np.asarray(z) ** 2 + z))

    def spec(self):
        return "lopsided"


@dataclass(frozen=True)
class _Constant(BoundaryPhase):
    value: float = -1.0

    def continued(self, z):
        return np.full(np.shape(z), self.value, dtype=complex)

    def spec(self):
        return f"const:{self.value}"


def test_eval_examples():
    assert eval_phase(B1, 1.0) == pytest.approx(1j)
    assert eval_phase(B1, 0.0) == pytest.approx(-1.0)
    assert eval_phase(SinhPhase(), 0.0) == pytest.approx(1.0)
    assert eval_phase(ExponentialFactor(0.5), 2.0) == pytest.approx(np.exp(-1j))
    assert eval_phase(ScalingPhase(2.0), 1.0) == pytest.approx(np.exp(-1j * LN2))


@pytest.mark.parametrize("phi", [TrivialPhase(), B1, B2, ExponentialFactor(0.7), ScalingPhase(3.0),
                                 SinhPhase(), ConjugateOf(B1), ProductOf((B1, B2, SinhPhase())),
                                 MatrixPhase((B1, SinhPhase()), 0.4)])
def test_families_are_symmetric_and_unimodular(grid2k, phi):
    assert check_symmetric(phi, grid2k) <= 1e-12
    assert check_unitary(phi, grid2k) <= 1e-12


def test_lopsided_phase_is_flagged(grid2k):
    assert check_symmetric(_Lopsided(), grid2k) >= 0.1
    with pytest.raises(ValueError, match="not symmetric"):
        inner_test(_Lopsided(), grid2k)


def test_sinh_argument_is_clipped(grid2k):
    lam = np.array([-5000.0, -2000.0, 2000.0, 5000.0])
    v = SinhPhase()(lam)
    assert np.all(np.isfinite(v))
    np.testing.assert_allclose(np.abs(v), 1.0, atol=1e-14)
    np.testing.assert_allclose(v[::-1], np.conj(v), atol=1e-14)


def test_blaschke_validation():
    with pytest.raises(ValueError, match="lower half-plane"):
        BlaschkeProduct((1j,))
    with pytest.raises(ValueError, match="closed under"):
        BlaschkeProduct((-0.5 - 0.5j,))


def test_blaschke_inner_and_shrinking(grid4k):
    v = inner_test(B1, grid4k)
    assert v.is_inner is True and v.leakage <= 1e-3
    assert shrinks(v.leakage, v.leakage_refined, 1e-6)


@pytest.mark.parametrize("phi", [SinhPhase(), ConjugateOf(SinhPhase()), ConjugateOf(B1),
                                 ConjugateOf(ExponentialFactor(0.3))])
def test_non_inner_phases(grid2k, phi):
    v = inner_test(phi, grid2k)
    assert v.is_inner is False
    assert min(v.leakage, v.leakage_refined) >= 0.05


def test_sinh_leakage_stable_across_refinement():
    vals = [leakage(SinhPhase(), GridSpec(30.0, n)) for n in (2048, 4096, 8192)]
    assert min(vals) >= 0.1
    assert max(vals) / min(vals) < 2


def test_translation_phase_is_inner(grid2k):
    assert inner_test(ExponentialFactor(LN2), grid2k).is_inner is True
    assert inner_test(ScalingPhase(2.0), grid2k).is_inner is True
    assert inner_test(ScalingPhase(0.5), grid2k).is_inner is False


def test_conjugation_involution():
    for phi in (B1, SinhPhase(), ExponentialFactor(0.2)):
        assert conjugate_phase(conjugate_phase(phi)) == phi
    assert conjugate_phase(TrivialPhase()) == TrivialPhase()


def test_product_flattening():
    p = product_phase(B1, TrivialPhase(), product_phase(B2, SinhPhase()))
    assert isinstance(p, ProductOf) and len(p.factors) == 3
    assert product_phase(TrivialPhase(), TrivialPhase()) == TrivialPhase()
    lam = np.linspace(-4, 4, 9)
    np.testing.assert_allclose(p(lam), B1(lam) * B2(lam) * SinhPhase()(lam), atol=1e-15)


def test_mirrored_route_matches(grid2k):
    v = gaussian(grid2k, -1.0, 0.8, 0.5)
    for phi in (B1, B2, SinhPhase(), ExponentialFactor(0.4)):
        np.testing.assert_allclose(apply_phase_mirrored(phi, v, grid2k), apply_phase_values(phi, v, grid2k),
                                   atol=1e-12)


def test_gregory_weights():
    np.testing.assert_allclose(gregory_end_weights(1), [-0.5])
    # order 2: trapezoid plus endpoint slope correction, total weights 5/12, 13/12
    np.testing.assert_allclose(1 + gregory_end_weights(2), [5 / 12, 13 / 12], atol=1e-14)
    w = gregory_end_weights(6)
    assert np.sum(w) == pytest.approx(-0.5, abs=1e-12)


def test_exp_tail_integral_closed_form():
    # f(θ) = e^{(-1+i)θ} decays to the right, so the window end is harmless
    g = GridSpec(20.0, 4096)
    a = 1 / (2 * np.pi)
    f = np.exp((-1 + 1j) * g.nodes)
    out = exp_tail_integral(f, g, a)
    want = f / (a + 1 - 1j)
    left = g.nodes < 0
    np.testing.assert_allclose(out[left], want[left], rtol=1e-10)


def test_blaschke_kernel_routes_agree():
    g = GridSpec(30.0, 8192)
    w = g.padded(4)
    v = w.embed(gaussian(g, -1.0, 0.7, 1.0), g)
    a, b = blaschke_kernel_apply(v, w), apply_phase_values(B1, v, w)
    assert np.linalg.norm(a - b) / np.linalg.norm(b) <= 1e-6
    assert abs(np.linalg.norm(a) / np.linalg.norm(v) - 1) <= 1e-6


def test_blaschke_kernel_keeps_H0():
    g = GridSpec(30.0, 8192)
    w = g.padded(4)
    h = sample_H0_element(g, seed=11)
    out = blaschke_kernel_apply(w.embed(h.values, g), w)
    assert membership_H0(WaveFunction(w, "theta", out), tol=1e-6).member
    # and after U₀(1), the transported sample of the included subspace
    k = blaschke_kernel_apply(weyl_values(w.embed(h.values, g), w, 1.0), w)
    assert membership_H0(WaveFunction(w, "theta", weyl_values(k, w, -1.0)), tol=1e-6, strict=False).member


def test_matrix_phases(grid2k):
    rot = MatrixPhase((B1, TrivialPhase()), np.pi / 6)
    assert matrix_inner_test(rot, grid2k).is_inner is True
    const = MatrixPhase((TrivialPhase(), _Constant(-1.0)), 0.7)
    v = matrix_inner_test(const, grid2k)
    assert v.is_inner is True and v.leakage <= 1e-10
    assert matrix_inner_test(MatrixPhase((SinhPhase(), TrivialPhase()), 0.0), grid2k).is_inner is False
    with pytest.raises(ValueError, match="2x2"):
        matrix_inner_test(B1, grid2k)


def test_matrix_symbol_is_unitary(grid2k):
    m = MatrixPhase((B1, SinhPhase()), 0.9).symbol(grid2k)
    eye = np.einsum("kij,kil->kjl", m.conj(), m)
    np.testing.assert_allclose(eye, np.broadcast_to(np.eye(2), eye.shape), atol=1e-13)


# -- grammar -----------------------------------------------------------------

@pytest.mark.parametrize("text, expected", [
    ("id", TrivialPhase()),
    ("sinh", SinhPhase()),
    ("exp:0.1103", ExponentialFactor(0.1103)),
    ("scaling:2.0", ScalingPhase(2.0)),
    ("blaschke:-1i", B1),
    ("blaschke:-1i;-0.5-0.5i,+0.5-0.5i", ProductOf((B1, B2)).factors[0].__class__((-1j, -0.5 - 0.5j, 0.5 - 0.5j))),
    ("conj(blaschke:-1i)", ConjugateOf(B1)),
    ("prod(blaschke:-1i, sinh)", ProductOf((B1, SinhPhase()))),
    ("conj(conj(sinh))", SinhPhase()),
])
def test_parse(text, expected):
    assert parse_phase(text) == expected


@pytest.mark.parametrize("text, token", [
    ("blaschk:-1i", "blaschk"),
    ("exp:abc", "abc"),
    ("blaschke:1i", "1i"),
    ("blaschke:-1j", "-1j"),
    ("prod(id;sinh)", ";sinh)"),
    ("conj(id]", "]"),
    ("sinh extra", "extra"),
    ("scaling:-2", "-2"),
])
def test_parse_errors_name_token(text, token):
    with pytest.raises(PhaseSyntaxError) as exc:
        parse_phase(text)
    assert token in str(exc.value)


def test_parse_empty():
    with pytest.raises(PhaseSyntaxError, match="end"):
        parse_phase("")


def test_spec_round_trip():
    for phi in (B1, B2, ConjugateOf(SinhPhase()), ProductOf((B1, ExponentialFactor(0.25))), ScalingPhase(1.5)):
        assert parse_phase(phi.spec()) == phi
