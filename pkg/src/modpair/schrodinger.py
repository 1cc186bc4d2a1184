"""Operators of the base standard pair on L²(ℝ, dθ).

In the λ-picture the modular flow ``Δ^{it}`` is the multiplier ``exp(-2πitλ)``,
i.e. translation of θ by ``2πt``.  The translations ``U₀(s)`` multiply by
``exp(i s e^θ)`` and have generator ``P₀ = e^θ``.  The standard subspace ``H₀`` is
the fixed-point set of ``S = J Δ^{1/2}``, which in the λ-picture reads

    (Sψ)^(λ) = e^{πλ} conj ψ̂(-λ).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numgrid import GridSpec, WaveFunction, ft_values, ift_values, lambda_parity, gaussian

SEMIGROUP_EXPONENT_CAP = 700.0
MEMBERSHIP_BAND = 220.0 / np.pi
DOMAIN_WEIGHT_BAND = 5.0
RESOLUTION_FRACTION = 0.9


def _theta(psi: WaveFunction) -> WaveFunction:
    if psi.picture != "theta":
        raise ValueError("expected a θ-picture wave function")
    return psi


def check_shift_margin(values: np.ndarray, grid: GridSpec, shift: float, tol: float = 1e-12) -> None:
    """Raise if translating by ``shift`` pushes more than ``tol`` of the mass across the window edge."""
    th = grid.nodes
    w = np.abs(values) ** 2
    tot = w.sum()
    if tot == 0:
        return
    moved = th + shift
    lost = w[(moved >= grid.L) | (moved < -grid.L)].sum() / tot
    if lost > tol:
        raise ValueError(f"margin violation: translation by {shift:.4g} moves {lost:.2e} of the mass out of the window")


def check_resolved(values: np.ndarray, grid: GridSpec, s: float, tol: float = 1e-12) -> None:
    """Raise if ``exp(i s e^θ)`` oscillates faster than the grid resolves where ψ lives."""
    if s == 0:
        return
    th_max = np.log(RESOLUTION_FRACTION * grid.max_frequency / abs(s))
    w = np.abs(values) ** 2
    tot = w.sum()
    if tot and w[grid.nodes > th_max].sum() / tot > tol:
        raise ValueError(f"unresolved oscillation: |s| e^θ exceeds {RESOLUTION_FRACTION} λ_max on the support")


def flow_values(values: np.ndarray, grid: GridSpec, t: float) -> np.ndarray:
    return ift_values(np.exp(-2j * np.pi * t * grid.dual_nodes) * ft_values(values, grid), grid)


def weyl_values(values: np.ndarray, grid: GridSpec, s: float) -> np.ndarray:
    return np.exp(1j * s * np.exp(grid.nodes)) * values


def modular_flow(t: float, psi: WaveFunction, check: bool = True) -> WaveFunction:
    """Δ^{it}ψ.  Works in either picture; in θ it is a translation by 2πt."""
    g = psi.grid
    if psi.picture == "lambda":
        return psi.with_values(np.exp(-2j * np.pi * t * g.dual_nodes) * psi.values)
    if check:
        check_shift_margin(psi.values, g, 2.0 * np.pi * t)
    return psi.with_values(flow_values(psi.values, g, t))


def modular_conjugation(psi: WaveFunction) -> WaveFunction:
    if psi.picture == "theta":
        return psi.with_values(np.conj(psi.values))
    return psi.with_values(np.conj(lambda_parity(psi.values)))


def weyl(s: float, psi: WaveFunction, check: bool = True) -> WaveFunction:
    """U₀(s)ψ = exp(i s e^θ) ψ."""
    _theta(psi)
    if check:
        check_resolved(psi.values, psi.grid, s)
    return psi.with_values(weyl_values(psi.values, psi.grid, s))


def borchers_residual(t: float, s: float, psi: WaveFunction) -> tuple[float, float]:
    """Relative residuals of Δ^{it}U₀(s)Δ^{-it} = U₀(e^{-2πt}s) and J U₀(s) J = U₀(-s)."""
    _theta(psi)
    n = psi.norm()
    lhs = modular_flow(t, weyl(s, modular_flow(-t, psi)))
    rhs = weyl(np.exp(-2.0 * np.pi * t) * s, psi)
    r_flow = float(np.sqrt(psi.grid.spacing) * np.linalg.norm(lhs.values - rhs.values) / n)
    jj = modular_conjugation(weyl(s, modular_conjugation(psi)))
    r_j = float(np.sqrt(psi.grid.spacing) * np.linalg.norm(jj.values - weyl(-s, psi).values) / n)
    return r_flow, r_j


def generator_apply(psi: WaveFunction, tol: float = 1e-12) -> WaveFunction:
    """P₀ψ = e^θ ψ; refuses ψ whose e^θ-weighted tail reaches the right edge."""
    _theta(psi)
    g = psi.grid
    out = np.exp(g.nodes) * psi.values
    w = np.abs(out) ** 2
    tail = w[g.nodes > g.L - 1.0].sum() / max(w.sum(), np.finfo(float).tiny)
    if tail > tol:
        raise ValueError("ψ is not in the domain of P₀ on this grid (weighted tail at the edge)")
    return psi.with_values(out)


def _interval_mask(grid: GridSpec, a: float, b: float) -> np.ndarray:
    if not (0 <= a < b):
        raise ValueError(f"need 0 <= a < b, got ({a}, {b})")
    lo = -np.inf if a == 0 else np.log(a)
    hi = np.inf if b == np.inf else np.log(b)
    th = grid.nodes
    # half-open in θ so that adjacent intervals partition the grid exactly
    return (th >= lo) & (th < hi)


def spectral_projection_base(a: float, b: float, psi: WaveFunction) -> WaveFunction:
    """E₀[(a, b)] = indicator of ln a < θ < ln b."""
    _theta(psi)
    return psi.with_values(np.where(_interval_mask(psi.grid, a, b), psi.values, 0))


def semigroup_factor(grid: GridSpec, y: float, sign: int, cutoff: float | None = None) -> np.ndarray:
    """Samples of exp(-sign·y·e^θ), restricted to e^θ < cutoff when given."""
    if y < 0:
        raise ValueError("y must be nonnegative")
    p = np.exp(grid.nodes)
    if sign > 0:
        return np.exp(-y * p)
    if cutoff is None:
        raise ValueError("the growing semigroup needs a spectral cutoff")
    if y * cutoff > SEMIGROUP_EXPONENT_CAP:
        raise ValueError(f"cutoff·y = {y * cutoff:.4g} exceeds {SEMIGROUP_EXPONENT_CAP}")
    return np.where(p < cutoff, np.exp(y * np.minimum(p, cutoff)), 0.0)


def semigroup_apply(y: float, psi: WaveFunction, sign: int = 1, cutoff: float | None = None) -> WaveFunction:
    """exp(-y P₀)ψ for ``sign=1``; exp(+y P₀) E₀[(0, cutoff)] ψ for ``sign=-1``."""
    _theta(psi)
    return psi.with_values(semigroup_factor(psi.grid, y, sign, cutoff) * psi.values)


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    reflection_residual: float
    domain_weight: float
    out_of_band: float


def reflection_residual_values(psi_hat: np.ndarray, grid: GridSpec) -> float:
    """‖e^{-πλ}ψ̂(λ) - conj ψ̂(-λ)‖ over λ >= 0, relative to ‖ψ̂‖.

    Vanishing on the half line is equivalent to vanishing everywhere, and the
    half line avoids amplifying rounding errors by e^{π|λ|}.
    """
    lam = grid.dual_nodes
    pos = lam >= 0
    diff = np.exp(-np.pi * lam[pos]) * psi_hat[pos] - np.conj(lambda_parity(psi_hat)[pos])
    return float(np.linalg.norm(diff) / np.linalg.norm(psi_hat))


def membership_H0(psi: WaveFunction, tol: float = 1e-6, domain_bound: float = 1.0 + 1e-6,
                  strict: bool = True) -> MembershipVerdict:
    """Test ψ ∈ H₀ through the reflection identity e^{-πλ}ψ̂(λ) = conj ψ̂(-λ).

    With ``strict`` the λ-band precondition raises; otherwise out-of-band mass is
    folded into the residual.
    """
    g = psi.grid
    ph = psi.values if psi.picture == "lambda" else ft_values(psi.values, g)
    nrm2 = float(np.sum(np.abs(ph) ** 2))
    if nrm2 == 0:
        return MembershipVerdict(True, 0.0, 0.0, 0.0)
    lam = g.dual_nodes
    oob = float(np.sum(np.abs(ph[np.abs(lam) > MEMBERSHIP_BAND]) ** 2) / nrm2)
    if strict and oob > 1e-12:
        raise ValueError(f"band violation: {oob:.2e} of the mass lies outside |λ| <= {MEMBERSHIP_BAND:.1f}")
    res = reflection_residual_values(ph, g)
    if not strict:
        res = float(np.hypot(res, np.sqrt(oob)))
    band = np.abs(lam) <= DOMAIN_WEIGHT_BAND
    weight = float(np.sum(np.exp(-2 * np.pi * lam[band]) * np.abs(ph[band]) ** 2) / nrm2)
    return MembershipVerdict(bool(res <= tol and weight <= domain_bound), res, weight, oob)


def h0_projection_values(psi_hat: np.ndarray, grid: GridSpec) -> np.ndarray:
    """(ψ̂ + Sψ̂)/2 in the λ-picture."""
    lam = grid.dual_nodes
    return 0.5 * (psi_hat + np.exp(np.pi * lam) * np.conj(lambda_parity(psi_hat)))


def gaussian_transform(grid: GridSpec, center: float, width: float, kick: float,
                       phase: float = 0.0) -> np.ndarray:
    """Closed-form transform of exp(-(θ-c)²/2σ² + ikθ + iα) on the dual nodes."""
    lam = grid.dual_nodes
    return width * np.exp(-0.5 * (width * (lam - kick)) ** 2 + 1j * (kick - lam) * center + 1j * phase)


def sample_H0_element(grid: GridSpec, seed: int = 0, center=(-2.5, -1.5), width=(0.8, 1.2),
                      kick=(-1.0, 1.0)) -> WaveFunction:
    """A normalized element of H₀ built as (ψ + Sψ)/2 from a random Gaussian seed ψ.

    Both halves are evaluated in closed form: (Sψ)^ = e^{πλ} conj ψ̂(-λ) would
    amplify FFT rounding by e^{πλ}.
    """
    rng = np.random.default_rng(seed)
    c, sig, k = rng.uniform(*center), rng.uniform(*width), rng.uniform(*kick)
    alpha = rng.uniform(0, 2 * np.pi)
    lam = grid.dual_nodes
    direct = gaussian_transform(grid, c, sig, k, alpha)
    # e^{πλ} conj ψ̂(-λ), with the growth folded into the exponent
    mirrored = sig * np.exp(np.pi * lam - 0.5 * (sig * (lam + k)) ** 2 - 1j * (k + lam) * c - 1j * alpha)
    vals = ift_values(0.5 * (direct + mirrored), grid)
    vals /= np.sqrt(grid.spacing) * np.linalg.norm(vals)
    return WaveFunction(grid, "theta", vals)
