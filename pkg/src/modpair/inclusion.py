"""Standard pairs built from boundary phases, and inclusion detectors.

A pair is ``(H₀, U_φ)`` with ``U_φ(s) = V U₀(s) V*`` and ``V = φ(ln Δ)``.  The
question ``U₁(1)H₀ ⊂ U₂(1)H₀`` is answered three independent ways:

* spectral: the norm of ``(1 - E₂[(0,1)]) E₁[(0,1)]``,
* membership: transported samples of ``K₁`` tested for membership in ``K₂``,
* analytic: leakage of the relative phase ``φ₁ conj φ₂``.

Everything runs on a zero-padded working grid with the same spacing as the
physical grid.  Operator norms are taken over a resolved test subspace
(orthonormalized Hermite functions in the physical window) because the full
periodic grid carries edge vectors with no continuum counterpart.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from .numgrid import (GridSpec, WaveFunction, apply_multiplier, ft_values, gaussian, hermite_basis,
                      normalized)
from .phases import (BoundaryPhase, BlaschkeProduct, ConjugateOf, ProductOf, TrivialPhase,
                     conjugate_phase, product_phase, leakage, required_pad, blaschke_zeros, INNER_TOL)
from .schrodinger import (flow_values, weyl_values, membership_H0, sample_H0_element,
                          SEMIGROUP_EXPONENT_CAP)
from .trend import classify

SPECTRAL_TOL = 1e-3
MEMBERSHIP_TOL = 1e-6
TEST_SUBSPACE_DIM = 40
POWER_STARTS = 3
# Growth exponent y·Λ for the contraction cutoff; e^18 keeps rounding below 1e-8.
CONTRACTION_EXPONENT = 18.0


@dataclass(frozen=True)
class StandardPairModel:
    phase: BoundaryPhase

    def symbol(self, grid: GridSpec) -> np.ndarray:
        return self.phase.symbol(grid)

    def spec(self) -> str:
        return self.phase.spec()


def as_pair(p) -> StandardPairModel:
    return p if isinstance(p, StandardPairModel) else StandardPairModel(p)


def relative_phase(pair1, pair2) -> BoundaryPhase:
    """φ₁ conj φ₂; the first pair's subspace sits inside the second's iff this is inner."""
    return product_phase(as_pair(pair1).phase, conjugate_phase(as_pair(pair2).phase))


# -- pair operators on arrays --------------------------------------------------

def _mult(values: np.ndarray, grid: GridSpec, symbol: np.ndarray) -> np.ndarray:
    return apply_multiplier(values, grid, symbol)


def _where(mask: np.ndarray, values: np.ndarray) -> np.ndarray:
    return values * (mask if values.ndim == 1 else mask[:, None])


def _work(psi: WaveFunction, pad: int) -> tuple[GridSpec, np.ndarray]:
    if psi.picture != "theta":
        raise ValueError("expected a θ-picture wave function")
    work = psi.grid.padded(pad)
    return work, work.embed(psi.values, psi.grid)


def pair_apply_U(pair, s: float, psi: WaveFunction, pad: Optional[int] = None) -> WaveFunction:
    """U_φ(s)ψ, returned on the padded working grid."""
    pair = as_pair(pair)
    pad = pad or required_pad(psi.grid, pair.phase)
    work, v = _work(psi, pad)
    m = pair.symbol(work)
    out = _mult(weyl_values(_mult(v, work, np.conj(m)), work, s), work, m)
    return WaveFunction(work, "theta", out)


def pair_spectral_projection(pair, a: float, b: float, psi: WaveFunction, pad: Optional[int] = None) -> WaveFunction:
    """E_φ[(a, b)]ψ = V E₀[(a, b)] V* ψ on the working grid."""
    from .schrodinger import _interval_mask
    pair = as_pair(pair)
    pad = pad or required_pad(psi.grid, pair.phase)
    work, v = _work(psi, pad)
    m = pair.symbol(work)
    out = _mult(np.where(_interval_mask(work, a, b), _mult(v, work, np.conj(m)), 0), work, m)
    return WaveFunction(work, "theta", out)


# -- norms on a test subspace --------------------------------------------------

def compressed_gram(apply: Callable[[np.ndarray], np.ndarray], basis: np.ndarray) -> np.ndarray:
    """(AQ)ᴴ(AQ) for an ℓ²-orthonormal basis Q; ``apply`` acts on all columns at once."""
    b = apply(basis)
    c = b.conj().T @ b
    return 0.5 * (c + c.conj().T)


def power_iteration_top(mat: np.ndarray, starts: int = POWER_STARTS, seed: int = 0,
                        rtol: float = 1e-14, maxiter: int = 10000, squarings: int = 10) -> float:
    """Largest eigenvalue of a positive semidefinite matrix.

    The iteration runs on ``mat^(2^squarings)`` (normalized at each squaring) so a
    near-degenerate top pair still separates quickly; Rayleigh quotients use
    ``mat`` itself.  The best of ``starts`` seeded random starts wins.
    """
    scale = np.linalg.norm(mat)
    if scale == 0:
        return 0.0
    boost = mat / scale
    for _ in range(squarings):
        boost = boost @ boost
        nb = np.linalg.norm(boost)
        if nb == 0:
            boost = mat / scale
            break
        boost /= nb
    rng = np.random.default_rng(seed)
    n = mat.shape[0]
    best = 0.0
    for _ in range(starts):
        x = rng.normal(size=n) + 1j * rng.normal(size=n)
        x /= np.linalg.norm(x)
        prev = -1.0
        rq = 0.0
        for _ in range(maxiter):
            y = boost @ x
            ny = np.linalg.norm(y)
            if ny == 0:
                break
            x = y / ny
            rq = float(np.real(np.vdot(x, mat @ x)))
            if abs(rq - prev) <= rtol * abs(rq):
                break
            prev = rq
        best = max(best, rq)
    return best


def power_iteration_norm(apply: Callable[[np.ndarray], np.ndarray], basis: np.ndarray,
                         starts: int = POWER_STARTS, seed: int = 0) -> float:
    """Largest singular value of ``A`` restricted to span(basis) (ℓ²-orthonormal columns)."""
    return float(np.sqrt(max(power_iteration_top(compressed_gram(apply, basis), starts, seed), 0.0)))


def test_subspace(grid: GridSpec, work: GridSpec, dim: int = TEST_SUBSPACE_DIM) -> np.ndarray:
    """Hermite functions on the physical window, embedded in the working grid, ℓ²-orthonormal."""
    q = hermite_basis(grid, dim) * np.sqrt(grid.spacing)
    off = (work.N - grid.N) // 2
    out = np.zeros((work.N, dim), dtype=complex)
    out[off:off + grid.N] = q
    return out


def sandwich_operator(pair1, pair2, work: GridSpec, mask1: np.ndarray, mask2: np.ndarray):
    """v ↦ χ₂ V₂*V₁ χ₁ V₁* v, which equals V₂* E₂ E₁ v for E_i = V_i χ_i V_i*.

    Dropping the unitary V₂ on the left leaves every norm unchanged.
    """
    m1 = as_pair(pair1).symbol(work)
    rel = m1 * np.conj(as_pair(pair2).symbol(work))
    conj1 = np.conj(m1)

    def apply(v):
        return _where(mask2, _mult(_where(mask1, _mult(v, work, conj1)), work, rel))

    return apply


def spectral_defect_operator(pair1, pair2, work: GridSpec):
    """A with ‖A v‖ = ‖(1 - E₂[(0,1)]) E₁[(0,1)] v‖."""
    neg = work.nodes < 0
    return sandwich_operator(pair1, pair2, work, neg, ~neg)


def spectral_inclusion_defect(pair1, pair2, grid: GridSpec, pad: Optional[int] = None,
                              seed: int = 0, dim: int = TEST_SUBSPACE_DIM) -> float:
    p1, p2 = as_pair(pair1), as_pair(pair2)
    pad = pad or required_pad(grid, p1.phase, p2.phase)
    work = grid.padded(pad)
    a = spectral_defect_operator(p1, p2, work)
    return power_iteration_norm(a, test_subspace(grid, work, dim), seed=seed)


def dense_multiplier_matrix(work: GridSpec, symbol: np.ndarray) -> np.ndarray:
    """F* diag(symbol) F assembled from explicit DFT matrices (no FFT)."""
    th = work.nodes
    lam = work.dual_nodes
    f = work.spacing / np.sqrt(2 * np.pi) * np.exp(-1j * np.outer(lam, th))
    finv = work.dual_spacing / np.sqrt(2 * np.pi) * np.exp(1j * np.outer(th, lam))
    return finv @ (symbol[:, None] * f)


def dense_spectral_defect(pair1, pair2, grid: GridSpec, pad: Optional[int] = None,
                          dim: int = TEST_SUBSPACE_DIM) -> float:
    """Oracle for small grids: dense matrices and an SVD."""
    p1, p2 = as_pair(pair1), as_pair(pair2)
    pad = pad or required_pad(grid, p1.phase, p2.phase)
    work = grid.padded(pad)
    if work.N > 4096:
        raise ValueError("dense oracle is limited to working grids of at most 4096 points")
    chi = (work.nodes < 0).astype(float)
    v1 = dense_multiplier_matrix(work, p1.symbol(work))
    v2 = dense_multiplier_matrix(work, p2.symbol(work))
    q = test_subspace(grid, work, dim)
    e1q = v1 @ (chi[:, None] * (v1.conj().T @ q))
    b = e1q - v2 @ (chi[:, None] * (v2.conj().T @ e1q))
    return float(np.linalg.svd(b, compute_uv=False)[0])


# -- membership detector -------------------------------------------------------

def transported_samples(grid: GridSpec, count: int, seed: int = 0) -> list[WaveFunction]:
    return [sample_H0_element(grid, seed=seed + 7919 * k) for k in range(count)]


def membership_inclusion_defect(pair1, pair2, grid: GridSpec, count: int = 6, seed: int = 0,
                                pad: Optional[int] = None) -> float:
    """Worst reflection residual of U₂(-1) k over transported samples k ∈ K₁.

    A sample is ``k = U₁(1) V₁ h = V₁ U₀(1) h`` with h ∈ H₀ (V₁ preserves H₀).
    Then ``U₂(-1)k ∈ H₀`` iff ``U₀(-1) V₂* k ∈ H₀``, because V₂ preserves H₀ and
    leaves the reflection residual unchanged pointwise.
    """
    p1, p2 = as_pair(pair1), as_pair(pair2)
    pad = pad or required_pad(grid, p1.phase, p2.phase)
    work = grid.padded(pad)
    rel = p1.symbol(work) * np.conj(p2.symbol(work))
    worst = 0.0
    for h in transported_samples(grid, count, seed):
        v = weyl_values(work.embed(h.values, grid), work, 1.0)
        g = weyl_values(_mult(v, work, rel), work, -1.0)
        ver = membership_H0(WaveFunction(work, "theta", g), strict=False)
        worst = max(worst, ver.reflection_residual)
    return worst


# -- combined verdict ------------------------------------------------------------

@dataclass(frozen=True)
class InclusionVerdict:
    spectral_defect: float
    membership_defect: float
    relative_phase_leakage: float
    spectral_defect_refined: float
    membership_defect_refined: float
    relative_phase_leakage_refined: float
    spectral: Optional[bool]
    membership: Optional[bool]
    analytic: Optional[bool]

    @property
    def agreement(self) -> bool:
        return self.spectral is not None and self.spectral == self.membership == self.analytic

    @property
    def verdict(self) -> Optional[bool]:
        return self.spectral if self.agreement else None


@lru_cache(maxsize=256)
def detector_defects(phase1: BoundaryPhase, phase2: BoundaryPhase, L: float, N: int,
                     seed: int = 0) -> tuple[float, float, float]:
    grid = GridSpec(L, N)
    pad = required_pad(grid, phase1, phase2)
    spec = spectral_inclusion_defect(phase1, phase2, grid, pad, seed)
    memb = membership_inclusion_defect(phase1, phase2, grid, seed=seed, pad=pad)
    leak = leakage(relative_phase(phase1, phase2), grid, seed=seed, pad=pad)
    return spec, memb, leak


def check_inclusion(pair1, pair2, grid: GridSpec, seed: int = 0) -> InclusionVerdict:
    """Run the three detectors at N and 2N and classify each."""
    p1, p2 = as_pair(pair1), as_pair(pair2)
    a = detector_defects(p1.phase, p2.phase, grid.L, grid.N, seed)
    b = detector_defects(p1.phase, p2.phase, grid.L, 2 * grid.N, seed)
    return InclusionVerdict(
        a[0], a[1], a[2], b[0], b[1], b[2],
        classify(a[0], b[0], SPECTRAL_TOL),
        classify(a[1], b[1], MEMBERSHIP_TOL),
        classify(a[2], b[2], INNER_TOL),
    )


# -- consequences of inclusion -------------------------------------------------

def interval_mask(work: GridSpec, a: float, b: float) -> np.ndarray:
    from .schrodinger import _interval_mask
    return _interval_mask(work, a, b)


def orthogonality_defect(pair1, pair2, interval1, interval2, grid: GridSpec,
                         pad: Optional[int] = None, seed: int = 0) -> float:
    """‖E₂[I₂] E₁[I₁]‖ on the test subspace."""
    p1, p2 = as_pair(pair1), as_pair(pair2)
    pad = pad or required_pad(grid, p1.phase, p2.phase)
    work = grid.padded(pad)
    a = sandwich_operator(p1, p2, work, interval_mask(work, *interval1), interval_mask(work, *interval2))
    return power_iteration_norm(a, test_subspace(grid, work), seed=seed)


def default_cutoff(y: float) -> float:
    return CONTRACTION_EXPONENT / y


@dataclass(frozen=True)
class ContractionResult:
    ratio: float
    tail_mass: float
    cutoff: float


def contraction_ratio(pair1, pair2, y: float, probes: Sequence[WaveFunction],
                      cutoff: Optional[float] = None, pad: Optional[int] = None) -> ContractionResult:
    """max ‖e^{yP₂} E₂[(0,Λ)] e^{-yP₁} ψ‖ / ‖ψ‖ over probes pre-projected by E₂[(0,Λ)].

    ``tail_mass`` is the worst relative mass of e^{-yP₁}ψ that E₂ puts above Λ.
    """
    if y <= 0:
        raise ValueError("y must be positive")
    lam_cut = default_cutoff(y) if cutoff is None else float(cutoff)
    if y * lam_cut > SEMIGROUP_EXPONENT_CAP:
        raise ValueError(f"cutoff·y = {y * lam_cut:.4g} exceeds {SEMIGROUP_EXPONENT_CAP}")
    p1, p2 = as_pair(pair1), as_pair(pair2)
    grid = probes[0].grid
    pad = pad or required_pad(grid, p1.phase, p2.phase)
    work = grid.padded(pad)
    m1, m2 = p1.symbol(work), p2.symbol(work)
    ep = np.exp(work.nodes)
    below = ep < lam_cut
    decay = np.exp(-y * ep)
    grow = np.where(below, np.exp(y * np.minimum(ep, lam_cut)), 0.0)
    worst, tail = 0.0, 0.0
    for psi in probes:
        v = work.embed(psi.values, grid)
        v = _mult(np.where(below, _mult(v, work, np.conj(m2)), 0), work, m2)
        nv = np.linalg.norm(v)
        if nv == 0:
            continue
        g = _mult(decay * _mult(v, work, np.conj(m1)), work, m1)
        u = _mult(g, work, np.conj(m2))
        tail = max(tail, float(np.linalg.norm(u[~below]) ** 2 / nv ** 2))
        out = _mult(grow * u, work, m2)
        worst = max(worst, float(np.linalg.norm(out) / nv))
    return ContractionResult(worst, tail, lam_cut)


def strip_poles(phi: BoundaryPhase) -> list[complex]:
    """Poles of z ↦ conj φ(conj(-2πz)) in 0 < Im z < 1/2."""
    out = []
    for w, flipped in blaschke_zeros(phi):
        z = -w / (2 * np.pi) if not flipped else -np.conj(w) / (2 * np.pi)
        if 0 < z.imag < 0.5:
            out.append(z)
    return out


def _shifted_transform(values: np.ndarray, grid: GridSpec, z: complex) -> complex:
    """ψ̂(z) = (2π)^{-1/2} ∫ ψ e^{-izθ} dθ by direct summation."""
    return complex(grid.spacing / np.sqrt(2 * np.pi) * np.sum(values * np.exp(-1j * z * grid.nodes)))


def quadratic_form(pair, psi: WaveFunction, pole_tol: float = 1e-8) -> float:
    """⟨ψ, P_φ ψ⟩ = ‖(conj φ(-2π·) ψ̂)(· + i/2)‖², with ψ̂(· + i/2) = F[e^{θ/2} ψ].

    Raises when ψ is outside the form domain: weighted mass at the right edge,
    or ψ̂ not vanishing at a pole of the continued phase inside the strip.
    """
    p = as_pair(pair)
    if psi.picture != "theta":
        raise ValueError("expected a θ-picture wave function")
    work, v = psi.grid, psi.values
    w = np.exp(0.5 * work.nodes) * v
    tot = float(np.sum(np.abs(w) ** 2))
    if tot and np.sum(np.abs(w[work.nodes > work.L - 1.0]) ** 2) > 1e-12 * tot:
        raise ValueError("ψ is outside the form domain of P (weighted tail at the edge)")
    scale = np.sqrt(tot * work.spacing)
    for z in strip_poles(p.phase):
        if abs(_shifted_transform(v, work, z)) > pole_tol * max(scale, 1e-300):
            raise ValueError(f"ψ is outside the form domain of P (ψ̂ does not vanish at {z:.4g})")
    cont = conjugate_phase(p.phase).continued(-2 * np.pi * (work.dual_nodes + 0.5j))
    q = cont * ft_values(w, work)
    return float(work.dual_spacing * np.sum(np.abs(q) ** 2))


def into_form_domain(pair, psi: WaveFunction, width: float = 1.0) -> WaveFunction:
    """Normalized ψ - Σ c_k g_k with shifted Gaussians g_k chosen so that ψ̂ vanishes
    at every strip pole of the pair's continued phase."""
    poles = strip_poles(as_pair(pair).phase)
    if not poles:
        return psi
    g = psi.grid
    gs = [gaussian(g, -1.0 + 0.7 * k, width) for k in range(len(poles))]
    a = np.array([[_shifted_transform(gk, g, z) for gk in gs] for z in poles])
    rhs = np.array([_shifted_transform(psi.values, g, z) for z in poles])
    c = np.linalg.solve(a, rhs)
    v = psi.values - sum(ck * gk for ck, gk in zip(c, gs))
    return normalized(psi.with_values(v))


def generator_form_gap(pair1, pair2, psi: WaveFunction) -> float:
    """⟨ψ, P₁ψ⟩ - ⟨ψ, P₂ψ⟩; nonnegative whenever the first pair is included in the second."""
    return quadratic_form(pair1, psi) - quadratic_form(pair2, psi)


def transport(pair, psi: WaveFunction, pad: Optional[int] = None) -> WaveFunction:
    """Vψ on the working grid."""
    p = as_pair(pair)
    pad = pad or required_pad(psi.grid, p.phase)
    work, v = _work(psi, pad)
    return WaveFunction(work, "theta", _mult(v, work, p.symbol(work)))


def wiesbrock_cocycle_residual(pair, t: float, psi: WaveFunction) -> float:
    """‖U(1)Δ^{it}U(-1)Δ^{-it}ψ - U(1 - e^{-2πt})ψ‖ / ‖ψ‖ on ψ's own grid."""
    p = as_pair(pair)
    g = psi.grid
    m = p.symbol(g)

    def u(s, x):
        return _mult(weyl_values(_mult(x, g, np.conj(m)), g, s), g, m)

    x = psi.values
    lhs = u(1.0, flow_values(u(-1.0, flow_values(x, g, -t)), g, t))
    rhs = u(1.0 - np.exp(-2 * np.pi * t), x)
    return float(np.linalg.norm(lhs - rhs) / np.linalg.norm(x))
