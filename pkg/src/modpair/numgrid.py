"""Uniform grids, wave functions and the unitary Fourier transform.

Position nodes are ``θ_j = -L + j h`` with ``h = 2L/N``; dual nodes are
``λ_k = (k - N/2) Δλ`` with ``Δλ = 2π/(N h) = π/L``.  The transform

    ψ̂(λ) = (2π)^{-1/2} ∫ ψ(θ) e^{-iλθ} dθ

is evaluated exactly on these nodes with one FFT and two phase ramps, so the
discrete map is unitary for the weighted inner products below.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np

Picture = Literal["theta", "lambda"]


@dataclass(frozen=True)
class GridSpec:
    L: float
    N: int

    def __post_init__(self):
        if not np.isfinite(self.L) or self.L <= 0:
            raise ValueError(f"grid half-width L must be positive, got {self.L}")
        if int(self.N) != self.N or self.N < 16 or self.N % 2:
            raise ValueError(f"grid size N must be an even integer >= 16, got {self.N}")
        object.__setattr__(self, "L", float(self.L))
        object.__setattr__(self, "N", int(self.N))

    @property
    def spacing(self) -> float:
        return 2.0 * self.L / self.N

    @property
    def dual_spacing(self) -> float:
        return np.pi / self.L

    @property
    def nodes(self) -> np.ndarray:
        return -self.L + self.spacing * np.arange(self.N)

    @property
    def dual_nodes(self) -> np.ndarray:
        return (np.arange(self.N) - self.N // 2) * self.dual_spacing

    @property
    def max_frequency(self) -> float:
        return 0.5 * self.N * self.dual_spacing

    def padded(self, factor: int) -> "GridSpec":
        """Same spacing, ``factor`` times wider window."""
        if int(factor) != factor or factor < 1:
            raise ValueError(f"pad factor must be a positive integer, got {factor}")
        return GridSpec(self.L * factor, self.N * int(factor))

    def embed(self, values: np.ndarray, inner: "GridSpec") -> np.ndarray:
        """Zero-extend θ-samples on ``inner`` onto this (wider, same spacing) grid."""
        off = _offset(self, inner)
        out = np.zeros(self.N, dtype=complex)
        out[off : off + inner.N] = values
        return out

    def restrict(self, values: np.ndarray, inner: "GridSpec") -> np.ndarray:
        off = _offset(self, inner)
        return np.asarray(values)[off : off + inner.N]


def _offset(outer: GridSpec, inner: GridSpec) -> int:
    if not np.isclose(outer.spacing, inner.spacing, rtol=1e-12, atol=0):
        raise ValueError("incompatible grids: spacings differ")
    off = (outer.N - inner.N) // 2
    if off < 0 or (outer.N - inner.N) % 2:
        raise ValueError("incompatible grids: inner grid is not centred inside outer")
    return off


@dataclass(frozen=True)
class WaveFunction:
    grid: GridSpec
    picture: Picture
    values: np.ndarray

    def __post_init__(self):
        if self.picture not in ("theta", "lambda"):
            raise ValueError(f"unknown picture {self.picture!r}")
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.grid.N,):
            raise ValueError(f"expected {self.grid.N} samples, got shape {v.shape}")
        object.__setattr__(self, "values", v)

    def weight(self) -> float:
        return self.grid.spacing if self.picture == "theta" else self.grid.dual_spacing

    def norm(self) -> float:
        return float(np.sqrt(self.weight()) * np.linalg.norm(self.values))

    def with_values(self, values: np.ndarray) -> "WaveFunction":
        return WaveFunction(self.grid, self.picture, values)


def check_compatible(a: WaveFunction, b: WaveFunction) -> None:
    if a.grid != b.grid or a.picture != b.picture:
        raise ValueError("incompatible grids")


def inner_product(a: WaveFunction, b: WaveFunction) -> complex:
    """⟨a, b⟩, antilinear in ``a``."""
    check_compatible(a, b)
    return complex(a.weight() * np.vdot(a.values, b.values))


# -- array level transforms ------------------------------------------------

@lru_cache(maxsize=64)
def _ramps(grid: GridSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    th0 = -grid.L
    lam = grid.dual_nodes
    shift = grid.nodes - th0
    pre = grid.spacing / np.sqrt(2.0 * np.pi) * np.exp(-1j * lam * th0)
    post = np.exp(1j * lam * th0)
    scale = grid.N * grid.dual_spacing / np.sqrt(2.0 * np.pi)
    return np.exp(-1j * lam[0] * shift), pre, post, np.exp(1j * lam[0] * shift) * scale


def _col(v: np.ndarray, ndim: int) -> np.ndarray:
    return v if ndim == 1 else v[:, None]


def ft_values(values: np.ndarray, grid: GridSpec) -> np.ndarray:
    """θ-samples -> λ-samples; a 2-d input is transformed column by column."""
    ramp, pre, _, _ = _ramps(grid)
    nd = np.ndim(values)
    return _col(pre, nd) * np.fft.fft(values * _col(ramp, nd), axis=0)


def ift_values(values: np.ndarray, grid: GridSpec) -> np.ndarray:
    _, _, post, ramp = _ramps(grid)
    nd = np.ndim(values)
    return _col(ramp, nd) * np.fft.ifft(values * _col(post, nd), axis=0)


def apply_multiplier(values: np.ndarray, grid: GridSpec, symbol: np.ndarray) -> np.ndarray:
    """θ-samples -> F* M[symbol] F θ-samples."""
    return ift_values(_col(symbol, np.ndim(values)) * ft_values(values, grid), grid)


def theta_parity(values: np.ndarray) -> np.ndarray:
    """θ -> -θ on the periodic grid (node 0 at -L maps to itself)."""
    return np.roll(np.asarray(values)[::-1], 1)


def lambda_parity(values: np.ndarray) -> np.ndarray:
    return np.roll(np.asarray(values)[::-1], 1)


def fourier(psi: WaveFunction) -> WaveFunction:
    if psi.picture != "theta":
        raise ValueError("fourier expects a θ-picture wave function")
    return WaveFunction(psi.grid, "lambda", ft_values(psi.values, psi.grid))


def inverse_fourier(psi: WaveFunction) -> WaveFunction:
    if psi.picture != "lambda":
        raise ValueError("inverse_fourier expects a λ-picture wave function")
    return WaveFunction(psi.grid, "theta", ift_values(psi.values, psi.grid))


# -- probes ----------------------------------------------------------------

def gaussian(grid: GridSpec, center: float, width: float, kick: float = 0.0) -> np.ndarray:
    th = grid.nodes
    return np.exp(-0.5 * ((th - center) / width) ** 2 + 1j * kick * th).astype(complex)


def hermite_basis(grid: GridSpec, count: int, width: float = 1.0, center: float = 0.0) -> np.ndarray:
    """Orthonormal (in the h-weighted inner product) columns spanning the first
    ``count`` Hermite functions of the given width."""
    x = (grid.nodes - center) / width
    cols = np.empty((grid.N, count))
    h0 = np.exp(-0.5 * x * x)
    cols[:, 0] = h0
    if count > 1:
        cols[:, 1] = np.sqrt(2.0) * x * h0
    for n in range(2, count):
        cols[:, n] = np.sqrt(2.0 / n) * x * cols[:, n - 1] - np.sqrt((n - 1) / n) * cols[:, n - 2]
    q, _ = np.linalg.qr(cols)
    return q.astype(complex) / np.sqrt(grid.spacing)


def probe_family(grid: GridSpec, kind: str, count: int, seed: int = 0,
                 center=(-1.0, 1.0), width=(0.5, 1.5), kick=(-2.0, 2.0),
                 lambda_max: float = 18.0) -> list[WaveFunction]:
    """Normalized θ-picture probes.

    ``gaussian`` draws centres, widths and momentum kicks uniformly from the given
    ranges.  ``hermite`` returns the first ``count`` Hermite functions.
    ``band-limited`` draws a smooth random transform supported in |λ| <= lambda_max.
    """
    if count < 1:
        raise ValueError("count must be positive")
    kind = _KIND_ALIASES.get(kind, kind)
    if kind == "hermite":
        q = hermite_basis(grid, count)
        return [WaveFunction(grid, "theta", q[:, i]) for i in range(count)]
    rng = np.random.default_rng(seed)
    out = []
    if kind == "band-limited":
        lam = grid.dual_nodes
        inside = np.abs(lam) <= lambda_max
        for _ in range(count):
            c = rng.uniform(*center)
            # smooth random spectrum: a few random Gaussians in λ, cut to the band
            spec = np.zeros(grid.N, dtype=complex)
            for _k in range(4):
                mu = rng.uniform(-0.6, 0.6) * lambda_max
                sig = rng.uniform(0.5, 2.0)
                spec += (rng.normal() + 1j * rng.normal()) * np.exp(-0.5 * ((lam - mu) / sig) ** 2)
            spec *= np.exp(-1j * lam * c) * inside
            out.append(normalized(WaveFunction(grid, "theta", ift_values(spec, grid))))
        return out
    if kind != "gaussian":
        raise ValueError(f"unknown probe kind {kind!r}")
    for _ in range(count):
        v = gaussian(grid, rng.uniform(*center), rng.uniform(*width), rng.uniform(*kick))
        out.append(normalized(WaveFunction(grid, "theta", v)))
    return out


_KIND_ALIASES = {"gaussian-bump": "gaussian", "hermite-like": "hermite",
                 "band-limited-random": "band-limited"}


def normalized(psi: WaveFunction) -> WaveFunction:
    n = psi.norm()
    if n == 0:
        raise ValueError("cannot normalize the zero vector")
    return psi.with_values(psi.values / n)


def edge_mass(values: np.ndarray, grid: GridSpec, margin: float) -> float:
    """Relative L² mass within ``margin`` of either end of the window."""
    th = grid.nodes
    w = np.abs(values) ** 2
    tot = w.sum()
    if tot == 0:
        return 0.0
    return float(w[(th < -grid.L + margin) | (th > grid.L - margin)].sum() / tot)
