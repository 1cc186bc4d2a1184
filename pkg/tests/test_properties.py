"""Property-based checks of structural invariants."""
import numpy as np
from hypothesis import HealthCheck, given, settings, strategies as st

from modpair.config import DEFAULT_TOLERANCES, RunConfig, normalize, parse_config
from modpair.numgrid import GridSpec, ft_values, ift_values
from modpair.phases import (BlaschkeProduct, ConjugateOf, ExponentialFactor, ProductOf, ScalingPhase,
                            SinhPhase, TrivialPhase, check_symmetric, check_unitary, conjugate_phase,
                            inner_test, parse_phase, product_phase)
from modpair.special import apply_ts, build_ts_kernel
from modpair.trend import FLOOR_FRACTION, classify

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

finite = st.floats(-3, 3, allow_nan=False, allow_infinity=False)


@st.composite
def grids(draw):
    n = 2 * draw(st.integers(8, 256))
    return GridSpec(draw(st.floats(2.0, 40.0)), n)


@st.composite
def vectors(draw, n):
    re = draw(st.lists(finite, min_size=n, max_size=n))
    im = draw(st.lists(finite, min_size=n, max_size=n))
    return np.array(re) + 1j * np.array(im)


@given(st.data())
@SETTINGS
def test_fourier_unitary_round_trip(data):
    g = data.draw(grids())
    v = data.draw(vectors(g.N))
    w = ft_values(v, g)
    assert np.allclose(ift_values(w, g), v, atol=1e-12)
    assert np.isclose(np.sqrt(g.spacing) * np.linalg.norm(v), np.sqrt(g.dual_spacing) * np.linalg.norm(w),
                      rtol=1e-12, atol=1e-300)


zeros_lhp = st.builds(complex, st.floats(0.05, 3.0), st.floats(-3.0, -0.2))


@st.composite
def blaschke(draw):
    zs = []
    for w in draw(st.lists(zeros_lhp, min_size=1, max_size=3)):
        zs += [w, -np.conj(w)]
    if draw(st.booleans()):
        zs.append(complex(0, draw(st.floats(-3.0, -0.2))))
    return BlaschkeProduct(tuple(zs))


@given(blaschke())
@SETTINGS
def test_blaschke_symmetric_and_unimodular(phi):
    g = GridSpec(30.0, 512)
    assert check_symmetric(phi, g) <= 1e-12
    assert check_unitary(phi, g) <= 1e-12


@given(blaschke(), blaschke())
@settings(max_examples=8, deadline=None)
def test_product_of_inner_is_inner(a, b):
    g = GridSpec(30.0, 2048)
    assert inner_test(product_phase(a, b), g).is_inner is True


leaf = st.one_of(
    st.just(TrivialPhase()), st.just(SinhPhase()),
    st.builds(ExponentialFactor, st.floats(0.0, 2.0)),
    st.builds(ScalingPhase, st.floats(1.01, 5.0)),
    blaschke(),
)
phases = st.recursive(leaf, lambda kids: st.one_of(
    st.builds(ConjugateOf, kids),
    st.builds(lambda fs: ProductOf(tuple(fs)), st.lists(kids, min_size=2, max_size=3))), max_leaves=5)


@given(phases)
@SETTINGS
def test_grammar_round_trip(phi):
    again = parse_phase(phi.spec())
    lam = np.linspace(-4, 4, 17)
    np.testing.assert_allclose(again(lam), phi(lam), atol=1e-12)
    assert again.spec() == parse_phase(again.spec()).spec()


@given(phases)
@SETTINGS
def test_double_conjugation(phi):
    lam = np.linspace(-4, 4, 17)
    np.testing.assert_allclose(conjugate_phase(conjugate_phase(phi))(lam), phi(lam), atol=1e-14)
    np.testing.assert_allclose(conjugate_phase(phi)(lam), np.conj(phi(lam)), atol=1e-14)


def _reflect(v):
    # λ_k → -λ_k maps index k to N - k; index 0 (λ = -N/2·π/L) has no partner
    out = v.copy()
    out[1:] = v[1:][::-1]
    return out


@given(st.floats(0.05, 4.0), st.floats(-3.0, 3.0), st.floats(-1.0, 1.0))
@settings(max_examples=15, deadline=None)
def test_ts_reflection_symmetry(s, center, kick):
    g = GridSpec(30.0, 1024)
    lam = g.dual_nodes
    f = np.exp(-(lam - center) ** 2 / 2 + 1j * kick * lam)
    a = apply_ts(build_ts_kernel(-s, g), f)
    b = _reflect(np.conj(apply_ts(build_ts_kernel(s, g), _reflect(np.conj(f)))))
    assert np.max(np.abs(a - b)[1:]) <= 1e-12


defects = st.floats(0.0, 10.0, allow_nan=False)


@given(defects, defects, st.floats(1e-8, 1.0))
@SETTINGS
def test_classify_rules(c, f, tol):
    v = classify(c, f, tol)
    if v is True:
        assert c <= tol and f <= tol
        assert f <= 1.05 * c or f <= FLOOR_FRACTION * tol
    elif v is False:
        assert c > 10 * tol and f > 10 * tol and f >= c / 2


@given(defects, defects, st.floats(1e-6, 1.0), st.sampled_from([2.0, 0.5, 8.0]))
@SETTINGS
def test_classify_scale_invariant(c, f, tol, k):
    assert classify(c, f, tol) is classify(k * c, k * f, k * tol)


@given(st.integers(8, 4096), st.floats(0.5, 100.0), st.integers(0, 2 ** 31), st.integers(1, 500),
       st.dictionaries(st.sampled_from(sorted(DEFAULT_TOLERANCES)), st.floats(1e-14, 1.0)), phases)
@SETTINGS
def test_config_round_trip(half_n, L, seed, count, tols, phi):
    cfg = normalize(RunConfig(L=L, N=2 * half_n, seed=seed, probe_count=count, tolerances=tols,
                              phase1=phi.spec()))
    assert parse_config(cfg.to_ini()) == cfg
