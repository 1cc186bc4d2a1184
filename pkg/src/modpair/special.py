"""Complex Gamma function and the Fourier-side Weyl kernel.

The kernel ``T_s`` is the λ-picture image of multiplication by ``exp(i s e^θ)``:

    T_s = δ/2 + (1/2π) PV[ exp(iν ln(-is)) Γ(-iν) ],   ln(-is) = ln|s| - iπ/2 sign(s)

Its regular part ``F(z) = exp(-z ln(-is)) Γ(z) - 1/z`` is finite at the origin with
``F(0) = -γ - ln(-is)``.  Kernel samples span many orders of magnitude
(``|Γ(-iν)|`` underflows near ν ~ 230 while ``exp(πν/2)`` overflows), so they are
built from ``log Γ``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numgrid import GridSpec

EULER_GAMMA = 0.577215664901532860606512090082

# Lanczos approximation, g = 7, nine terms.
_LANCZOS_G = 7.0
_LANCZOS_P = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])
_HALF_LOG_2PI = 0.5 * np.log(2.0 * np.pi)


def _loggamma_right(z: np.ndarray) -> np.ndarray:
    # valid for Re z >= 1/2
    zm = z - 1.0
    acc = np.full(zm.shape, _LANCZOS_P[0], dtype=complex)
    for k in range(1, len(_LANCZOS_P)):
        acc = acc + _LANCZOS_P[k] / (zm + k)
    t = zm + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (zm + 0.5) * np.log(t) - t + np.log(acc)


def _log_sin_pi(z: np.ndarray) -> np.ndarray:
    """log(sin(πz)) without overflow for large |Im z|."""
    w = np.pi * z
    out = np.empty(w.shape, dtype=complex)
    big = np.abs(w.imag) > 30.0
    out[~big] = np.log(np.sin(w[~big]))
    wb = w[big]
    # sin w = (e^{iw} - e^{-iw}) / 2i; keep the dominant exponential in log form
    sgn = np.where(wb.imag > 0, 1.0, -1.0)
    out[big] = -sgn * 1j * wb + np.log(1.0 - np.exp(sgn * 2j * wb)) - np.log(-sgn * 2j)
    return out


def complex_loggamma(z) -> np.ndarray:
    """A branch of log Γ(z); exp() of it is Γ(z).  Poles raise ``ValueError``."""
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    pole = (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))
    if np.any(pole):
        raise ValueError(f"pole of Gamma at z = {z[pole][0].real:g}")
    out = np.empty(z.shape, dtype=complex)
    right = z.real >= 0.5
    out[right] = _loggamma_right(z[right])
    zl = z[~right]
    if zl.size:
        # reflection: Γ(z) Γ(1 - z) = π / sin(πz)
        out[~right] = np.log(np.pi) - _log_sin_pi(zl) - _loggamma_right(1.0 - zl)
    return out[0] if scalar else out


def complex_gamma(z) -> np.ndarray:
    """Γ(z) for complex z, relative error ~1e-14 away from the poles."""
    return np.exp(complex_loggamma(z))


def log_minus_is(s: float) -> complex:
    if s == 0:
        raise ValueError("s must be nonzero")
    return complex(np.log(abs(s)), -0.5 * np.pi * np.sign(s))


@dataclass(frozen=True)
class TsKernel:
    """Samples of ``T_s`` on the offsets ``ν_j = j Δλ``, ``|j| < N``.

    ``samples`` holds ``(1/2π) exp(iν ln(-is)) Γ(-iν)`` with a zero at ``ν = 0``;
    ``singular`` and ``regular`` are its split into ``(1/2π) i/ν`` and the rest.
    """

    s: float
    grid: GridSpec
    offsets: np.ndarray
    samples: np.ndarray
    singular: np.ndarray
    regular: np.ndarray
    origin_correction: complex
    delta_weight: float = 0.5


def build_ts_kernel(s: float, grid: GridSpec) -> TsKernel:
    s = float(s)
    ell = log_minus_is(s)
    n = grid.N
    j = np.arange(-(n - 1), n)
    nu = j * grid.dual_spacing
    samples = np.zeros(nu.shape, dtype=complex)
    singular = np.zeros(nu.shape, dtype=complex)
    nz = j != 0
    logk = 1j * nu[nz] * ell + complex_loggamma(-1j * nu[nz])
    samples[nz] = np.exp(logk) / (2.0 * np.pi)
    singular[nz] = 1j / nu[nz] / (2.0 * np.pi)
    regular = samples - singular
    origin = (-EULER_GAMMA - ell) / (2.0 * np.pi)
    regular[~nz] = origin
    return TsKernel(s, grid, nu, samples, singular, regular, complex(origin))


def _linear_convolve_same(kernel: np.ndarray, f: np.ndarray) -> np.ndarray:
    # out[k] = sum_j kernel[j + n - 1] f[k - j], for 0 <= k < n
    n = f.size
    m = kernel.size + n - 1
    size = 1 << int(np.ceil(np.log2(m)))
    full = np.fft.ifft(np.fft.fft(kernel, size) * np.fft.fft(f, size))[:m]
    return full[n - 1 : 2 * n - 1]


def apply_ts(kernel: TsKernel, psi_hat: np.ndarray, pv_rule: str = "odd") -> np.ndarray:
    """Convolve a λ-picture wave function with ``T_s``.

    The regular part is summed with the trapezoid rule (``F(0)`` at the origin).
    The ``i/ν`` part is a principal value.  ``pv_rule="odd"`` sums it over odd
    offsets with doubled weight, which is spectrally accurate.  ``"symmetric"``
    sums all nonzero offsets, which carries an O(Δλ) error ``-i Δλ ψ̂'/2π``.
    """
    psi_hat = np.asarray(psi_hat, dtype=complex)
    if psi_hat.shape != (kernel.grid.N,):
        raise ValueError("incompatible grids")
    dl = kernel.grid.dual_spacing
    j = np.arange(-(kernel.grid.N - 1), kernel.grid.N)
    if pv_rule == "odd":
        sing = np.where(j % 2 == 1, 2.0 * kernel.singular, 0.0)
    elif pv_rule == "symmetric":
        sing = kernel.singular
    else:
        raise ValueError(f"unknown pv_rule {pv_rule!r}")
    full = dl * (kernel.regular + sing)
    full[j == 0] += kernel.delta_weight
    return _linear_convolve_same(full, psi_hat)
