"""Boundary phases φ: ℝ → U(1) (or U(2)) and the inner-function test.

A phase acts on the λ-picture as the multiplier ``φ(-2πλ)``; that is the
operator ``φ(ln Δ)`` of the base pair.  Inner means bounded analytic in the
lower half-plane, which shows up in θ as "probes supported in θ < 0 stay in
θ < 0".  Every closed form here also knows its analytic continuation so that
quadratic forms can be evaluated on the shifted line Im λ = 1/2.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .numgrid import GridSpec, ft_values, ift_values, gaussian
from .trend import classify

SINH_ARG_CAP = 700.0
DEFAULT_PAD = 4
# Length over which a Blaschke tail e^{|Im w| θ / 2π} falls by ~e^{-10}.
_TAIL_LENGTH = 65.0
INNER_TOL = 1e-3


class BoundaryPhase:
    """Base class; subclasses implement ``continued`` for complex arguments."""

    dim = 1

    def continued(self, z):
        raise NotImplementedError

    def __call__(self, lam):
        return self.continued(np.asarray(lam, dtype=complex) if np.iscomplexobj(lam) else np.asarray(lam, dtype=float))

    def symbol(self, grid: GridSpec) -> np.ndarray:
        """Multiplier ``φ(-2πλ)`` on the dual nodes."""
        return self(-2.0 * np.pi * grid.dual_nodes)

    def spec(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.spec()


@dataclass(frozen=True, eq=True)
class TrivialPhase(BoundaryPhase):
    def continued(self, z):
        return np.ones_like(np.asarray(z), dtype=complex)

    def spec(self):
        return "id"


@dataclass(frozen=True)
class BlaschkeProduct(BoundaryPhase):
    """Π (λ - w)/(λ - conj w) over zeros w in the lower half-plane."""

    zeros: tuple

    def __post_init__(self):
        zs = tuple(complex(w) for w in self.zeros)
        if not zs:
            raise ValueError("a Blaschke product needs at least one zero")
        for w in zs:
            if not w.imag < 0:
                raise ValueError(f"Blaschke zero {_fmt_complex(w)} is not in the lower half-plane")
        if not _closed_under_reflection(zs):
            raise ValueError("Blaschke zeros must be closed under w -> -conj(w)")
        object.__setattr__(self, "zeros", zs)

    def continued(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.ones(z.shape, dtype=complex)
        for w in self.zeros:
            out = out * (z - w) / (z - np.conj(w))
        return out

    def spec(self):
        return "blaschke:" + ",".join(_fmt_complex(w) for w in self.zeros)


@dataclass(frozen=True)
class ExponentialFactor(BoundaryPhase):
    """exp(-i a λ); inner for a >= 0."""

    a: float

    def __post_init__(self):
        if not np.isfinite(self.a) or self.a < 0:
            raise ValueError(f"exponential factor needs a >= 0, got {self.a}")

    def continued(self, z):
        return np.exp(-1j * self.a * np.asarray(z))

    def spec(self):
        return f"exp:{self.a!r}"


@dataclass(frozen=True)
class ScalingPhase(BoundaryPhase):
    """exp(-i λ ln(c) / 2π); the pair it defines has U(s) = U₀(c s)."""

    c: float

    def __post_init__(self):
        if not np.isfinite(self.c) or self.c <= 0:
            raise ValueError(f"scaling factor must be positive, got {self.c}")

    def continued(self, z):
        return np.exp(-1j * np.log(self.c) * np.asarray(z) / (2.0 * np.pi))

    def spec(self):
        return f"scaling:{self.c!r}"


@dataclass(frozen=True)
class SinhPhase(BoundaryPhase):
    """exp(i sinh(λ/2)).

    On the real line the sinh argument is clipped at ±700 to stay finite; the
    clip is odd, so the symmetry φ(-λ) = conj φ(λ) survives exactly.
    """

    def continued(self, z):
        z = np.asarray(z)
        if np.isrealobj(z):
            return np.exp(1j * np.sinh(np.clip(z / 2.0, -SINH_ARG_CAP, SINH_ARG_CAP)))
        half = z / 2.0
        half = np.clip(half.real, -SINH_ARG_CAP, SINH_ARG_CAP) + 1j * half.imag
        with np.errstate(over="ignore", invalid="ignore"):
            return np.exp(1j * np.sinh(half))

    def spec(self):
        return "sinh"


@dataclass(frozen=True)
class ConjugateOf(BoundaryPhase):
    inner: BoundaryPhase

    def continued(self, z):
        z = np.asarray(z)
        return np.conj(self.inner.continued(np.conj(z)))

    def spec(self):
        return f"conj({self.inner.spec()})"


@dataclass(frozen=True)
class ProductOf(BoundaryPhase):
    factors: tuple

    def __post_init__(self):
        if not self.factors:
            raise ValueError("empty product")
        object.__setattr__(self, "factors", tuple(self.factors))

    def continued(self, z):
        out = self.factors[0].continued(z)
        for f in self.factors[1:]:
            out = out * f.continued(z)
        return out

    def spec(self):
        if len(self.factors) == 1:
            return self.factors[0].spec()
        acc = self.factors[0].spec()
        for f in self.factors[1:]:
            acc = f"prod({acc},{f.spec()})"
        return acc


@dataclass(frozen=True)
class MatrixPhase(BoundaryPhase):
    """R diag(φ₁, φ₂) Rᵀ with R the rotation by ``angle``; d = 2."""

    diag: tuple
    angle: float = 0.0
    dim: int = field(default=2, init=False)

    def rotation(self) -> np.ndarray:
        c, s = np.cos(self.angle), np.sin(self.angle)
        return np.array([[c, -s], [s, c]])

    def continued(self, z):
        z = np.asarray(z)
        d = np.stack([self.diag[0].continued(z), self.diag[1].continued(z)], axis=-1)
        r = self.rotation()
        # (..., 2, 2)
        return np.einsum("ik,...k,jk->...ij", r, d, r)

    def spec(self):
        return f"matrix(angle={self.angle!r};{self.diag[0].spec()};{self.diag[1].spec()})"


def _fmt_complex(w: complex) -> str:
    im = _signed(w.imag) + "i"
    if w.real == 0:
        return im.lstrip("+")
    return _signed(w.real).lstrip("+") + im


def _signed(x: float) -> str:
    # shortest round-tripping form, explicit sign, no "-0"
    r = repr(float(x) + 0.0)
    r = r[:-2] if r.endswith(".0") else r
    return r if r.startswith("-") else "+" + r


def _closed_under_reflection(zs) -> bool:
    pool = list(zs)
    while pool:
        w = pool.pop()
        r = -np.conj(w)
        if abs(r - w) <= 1e-12 * max(1.0, abs(w)):
            continue
        hit = [k for k, v in enumerate(pool) if abs(v - r) <= 1e-12 * max(1.0, abs(w))]
        if not hit:
            return False
        pool.pop(hit[0])
    return True


# -- basic operations --------------------------------------------------------

def eval_phase(phi: BoundaryPhase, lam):
    return phi(lam)


def conjugate_phase(phi: BoundaryPhase) -> BoundaryPhase:
    if isinstance(phi, ConjugateOf):
        return phi.inner
    if isinstance(phi, TrivialPhase):
        return phi
    return ConjugateOf(phi)


def product_phase(*factors: BoundaryPhase) -> BoundaryPhase:
    flat = []
    for f in factors:
        if isinstance(f, TrivialPhase):
            continue
        flat.extend(f.factors if isinstance(f, ProductOf) else [f])
    if not flat:
        return TrivialPhase()
    return flat[0] if len(flat) == 1 else ProductOf(tuple(flat))


def check_symmetric(phi: BoundaryPhase, grid: GridSpec) -> float:
    """max |φ(-λ) - conj φ(λ)| on the multiplier nodes (entrywise for d = 2)."""
    lam = 2.0 * np.pi * grid.dual_nodes
    return float(np.max(np.abs(phi(-lam) - np.conj(phi(lam)))))


def check_unitary(phi: BoundaryPhase, grid: GridSpec) -> float:
    v = phi(2.0 * np.pi * grid.dual_nodes)
    if phi.dim == 1:
        return float(np.max(np.abs(np.abs(v) - 1.0)))
    eye = np.eye(2)
    return float(np.max(np.abs(np.einsum("...ki,...kj->...ij", np.conj(v), v) - eye)))


def apply_phase_values(phi: BoundaryPhase, values: np.ndarray, grid: GridSpec) -> np.ndarray:
    """θ-samples -> θ-samples of φ(ln Δ)ψ (multiplier route, periodic grid)."""
    if phi.dim == 1:
        return ift_values(phi.symbol(grid) * ft_values(values, grid), grid)
    comp = np.stack([ft_values(values[0], grid), ft_values(values[1], grid)])
    m = phi.symbol(grid)
    out = np.einsum("kij,jk->ik", m, comp)
    return np.stack([ift_values(out[0], grid), ift_values(out[1], grid)])


def apply_phase_mirrored(phi: BoundaryPhase, values: np.ndarray, grid: GridSpec) -> np.ndarray:
    """Same operator written as F M[φ(2πλ)] F*, using F = F* ∘ parity."""
    from .numgrid import theta_parity
    lam = grid.dual_nodes
    return theta_parity(ift_values(phi(2.0 * np.pi * lam) * ft_values(theta_parity(values), grid), grid))


# -- Blaschke kernel by direct quadrature -----------------------------------

def gregory_end_weights(order: int) -> np.ndarray:
    """Corrections a_j (j < order) to unit trapezoid weights at a left endpoint.

    With weights 1 + a_j the rule ``h Σ_j (1 + a_j) f(jh)`` integrates
    polynomials of degree < order on [0, ∞) exactly (right end assumed to vanish).
    """
    from math import comb
    # Bernoulli numbers, B_1 = -1/2 convention
    b = [1.0]
    for m in range(1, order + 1):
        b.append(-sum(comb(m + 1, k) * b[k] for k in range(m)) / (m + 1))
    rhs = np.zeros(order)
    rhs[0] = -0.5
    for k in range(1, order):
        if k % 2 == 1:
            rhs[k] = b[k + 1] / (k + 1)
    j = np.arange(order, dtype=float)
    return np.linalg.solve(np.vander(j, order, increasing=True).T, rhs)


def exp_tail_integral(values: np.ndarray, grid: GridSpec, rate: float, order: int = 8) -> np.ndarray:
    """I(θ_k) = ∫_0^∞ e^{-rate·x} f(θ_k + x) dx by direct end-corrected summation.

    Samples beyond the right end of the window count as zero.
    """
    h = grid.spacing
    n = grid.N
    w = np.ones(n)
    w[:order] += gregory_end_weights(order)
    c = h * w * np.exp(-rate * h * np.arange(n))
    rev = np.asarray(values, dtype=complex)[::-1]
    return np.convolve(rev, c)[:n][::-1]


def blaschke_kernel_apply(values: np.ndarray, grid: GridSpec, order: int = 8) -> np.ndarray:
    """φ(ln Δ)ψ for φ(λ) = (λ+i)/(λ-i) through its θ-kernel δ - (1/π) e^{θ/2π} χ_{θ<0}."""
    return values - exp_tail_integral(values, grid, 1.0 / (2.0 * np.pi), order) / np.pi


# -- working-grid size ------------------------------------------------------

def blaschke_zeros(phi: BoundaryPhase, flipped: bool = False):
    """Zeros of Blaschke factors with the conjugation parity they appear under."""
    if isinstance(phi, BlaschkeProduct):
        return [(w, flipped) for w in phi.zeros]
    if isinstance(phi, ConjugateOf):
        return blaschke_zeros(phi.inner, not flipped)
    if isinstance(phi, ProductOf):
        return [z for f in phi.factors for z in blaschke_zeros(f, flipped)]
    if isinstance(phi, MatrixPhase):
        return [z for f in phi.diag for z in blaschke_zeros(f, flipped)]
    return []


def required_pad(grid: GridSpec, *phases: BoundaryPhase) -> int:
    """Smallest power-of-two pad (>= DEFAULT_PAD) that lets Blaschke tails decay before wrapping."""
    need = DEFAULT_PAD * grid.L
    for phi in phases:
        for w, _ in blaschke_zeros(phi):
            need = max(need, grid.L + _TAIL_LENGTH / abs(w.imag))
    pad = DEFAULT_PAD
    while pad * grid.L < need:
        pad *= 2
    return pad


# -- inner test ----------------------------------------------------------------

@dataclass(frozen=True)
class InnerVerdict:
    is_inner: Optional[bool]
    leakage: float
    leakage_refined: float
    symmetry_residual: float
    unitarity_residual: float
    tol: float


def inner_probes(grid: GridSpec, count: int, seed: int = 0, dim: int = 1) -> list[np.ndarray]:
    """Gaussians that sit left of θ = 0 with at most e^{-32} amplitude at the origin."""
    rng = np.random.default_rng(seed)
    widths = np.geomspace(0.05, 0.5, count)
    out = []
    for sig in widths:
        c = -8.0 * sig - rng.uniform(0.0, 0.5)
        g = gaussian(grid, c, sig) * (grid.nodes < 0)
        g = g / (np.sqrt(grid.spacing) * np.linalg.norm(g))
        if dim == 2:
            a = rng.normal(size=2) + 1j * rng.normal(size=2)
            a /= np.linalg.norm(a)
            g = np.outer(a, g)
        out.append(g)
    return out


def leakage(phi: BoundaryPhase, grid: GridSpec, count: int = 12, seed: int = 0,
            pad: Optional[int] = None) -> float:
    """max over probes of ‖χ_{θ>0} φ(ln Δ) g‖ / ‖g‖, computed on the padded grid."""
    work = grid.padded(pad or required_pad(grid, phi))
    pos = work.nodes > 0
    worst = 0.0
    for g in inner_probes(grid, count, seed, phi.dim):
        if phi.dim == 1:
            gw = work.embed(g, grid)
            out = apply_phase_values(phi, gw, work)
            worst = max(worst, float(np.linalg.norm(out[pos]) / np.linalg.norm(gw)))
        else:
            gw = np.stack([work.embed(g[0], grid), work.embed(g[1], grid)])
            out = apply_phase_values(phi, gw, work)
            worst = max(worst, float(np.linalg.norm(out[:, pos]) / np.linalg.norm(gw)))
    return worst


def inner_test(phi: BoundaryPhase, grid: GridSpec, count: int = 12, seed: int = 0,
               tol: float = INNER_TOL, pad: Optional[int] = None) -> InnerVerdict:
    """Leakage at N and 2N, classified by the refinement protocol."""
    sym = check_symmetric(phi, grid)
    uni = check_unitary(phi, grid)
    if sym > 1e-9:
        raise ValueError(f"phase is not symmetric (residual {sym:.2e})")
    a = leakage(phi, grid, count, seed, pad)
    b = leakage(phi, GridSpec(grid.L, 2 * grid.N), count, seed, pad)
    return InnerVerdict(classify(a, b, tol), a, b, sym, uni, tol)


def matrix_inner_test(phi: BoundaryPhase, grid: GridSpec, count: int = 12, seed: int = 0,
                      tol: float = INNER_TOL, pad: Optional[int] = None) -> InnerVerdict:
    if phi.dim != 2:
        raise ValueError("matrix_inner_test expects a 2x2 phase")
    return inner_test(phi, grid, count, seed, tol, pad)


# -- mini-grammar ------------------------------------------------------------

class PhaseSyntaxError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(conj|prod|blaschke|exp|scaling|sinh|id|\(|\)|,|:|[^\s(),:]+)")


def parse_phase(text: str) -> BoundaryPhase:
    """Parse ``id``, ``sinh``, ``exp:a``, ``scaling:c``, ``blaschke:w1;w2,...``,
    ``conj(<spec>)`` and ``prod(<spec>,<spec>,...)``."""
    pos, phi = _parse(text, 0)
    if text[pos:].strip():
        raise PhaseSyntaxError(f"unexpected token {text[pos:].strip()!r}")
    return phi


def _word(text: str, pos: int) -> tuple[int, str]:
    m = re.compile(r"\s*([A-Za-z_]+|[(),:])").match(text, pos)
    if not m:
        rest = text[pos:].strip()
        raise PhaseSyntaxError(f"unexpected token {rest[:12]!r}" if rest else "unexpected end of phase spec")
    return m.end(), m.group(1)


def _expect(text: str, pos: int, tok: str) -> int:
    end, got = _word(text, pos)
    if got != tok:
        raise PhaseSyntaxError(f"expected {tok!r} but found token {got!r}")
    return end


def _number(text: str, pos: int) -> tuple[int, str]:
    m = re.compile(r"\s*([^\s(),;]+)").match(text, pos)
    if not m:
        raise PhaseSyntaxError("missing number")
    return m.end(), m.group(1)


def _real(tok: str) -> float:
    try:
        return float(tok)
    except ValueError:
        raise PhaseSyntaxError(f"bad number token {tok!r}") from None


def _complex(tok: str) -> complex:
    t = tok.strip()
    if not t or "j" in t or not re.fullmatch(r"[0-9eE.+\-i]+", t):
        raise PhaseSyntaxError(f"bad complex token {tok!r}")
    t = re.sub(r"(^|[+-])i$", r"\g<1>1i", t)
    try:
        return complex(t.replace("i", "j"))
    except ValueError:
        raise PhaseSyntaxError(f"bad complex token {tok!r}") from None


def _parse(text: str, pos: int) -> tuple[int, BoundaryPhase]:
    pos, word = _word(text, pos)
    if word == "id":
        return pos, TrivialPhase()
    if word == "sinh":
        return pos, SinhPhase()
    if word in ("exp", "scaling"):
        pos = _expect(text, pos, ":")
        pos, tok = _number(text, pos)
        val = _real(tok)
        try:
            return pos, ExponentialFactor(val) if word == "exp" else ScalingPhase(val)
        except ValueError as e:
            raise PhaseSyntaxError(f"token {tok!r}: {e}") from None
    if word == "blaschke":
        pos = _expect(text, pos, ":")
        m = re.compile(r"\s*([^()]+?)(?=\s*(?:\)|,\s*(?:conj|prod|blaschke|exp|scaling|sinh|id)\b|$))").match(text, pos)
        if not m:
            raise PhaseSyntaxError("missing Blaschke zeros")
        toks = re.split(r"[;,]", m.group(1))
        if any(not t.strip() for t in toks):
            raise PhaseSyntaxError(f"empty Blaschke zero in token {m.group(1).strip()!r}")
        zeros = tuple(_complex(t) for t in toks)
        for t, w in zip(toks, zeros):
            if not w.imag < 0:
                raise PhaseSyntaxError(f"Blaschke zero token {t.strip()!r} is not in the lower half-plane")
        try:
            return m.end(), BlaschkeProduct(zeros)
        except ValueError as e:
            raise PhaseSyntaxError(f"blaschke:{m.group(1).strip()}: {e}") from None
    if word == "conj":
        pos = _expect(text, pos, "(")
        pos, inner = _parse(text, pos)
        pos = _expect(text, pos, ")")
        return pos, conjugate_phase(inner)
    if word == "prod":
        pos = _expect(text, pos, "(")
        factors = []
        while True:
            pos, f = _parse(text, pos)
            factors.append(f)
            pos, tok = _word(text, pos)
            if tok == ")":
                break
            if tok != ",":
                raise PhaseSyntaxError(f"expected ',' or ')' but found token {tok!r}")
        return pos, product_phase(*factors)
    raise PhaseSyntaxError(f"unknown phase token {word!r}")
