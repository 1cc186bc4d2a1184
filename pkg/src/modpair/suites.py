"""Reproduction suites.  Each returns a ``VerificationReport``; the CLI and the
acceptance tests both go through these functions."""
from __future__ import annotations

import time
from typing import Callable, Optional, Sequence

import numpy as np

from . import __version__
from .config import RunConfig
from .inclusion import (check_inclusion, contraction_ratio, dense_spectral_defect, detector_defects,
                        generator_form_gap, into_form_domain, membership_inclusion_defect,
                        orthogonality_defect, pair_apply_U, relative_phase,
                        spectral_inclusion_defect, wiesbrock_cocycle_residual)
from .numgrid import (GridSpec, WaveFunction, fourier, ft_values, gaussian, lambda_parity,
                      inverse_fourier, normalized, probe_family, theta_parity)
from .phases import (BlaschkeProduct, ConjugateOf, ExponentialFactor, MatrixPhase, ScalingPhase,
                     SinhPhase, TrivialPhase, apply_phase_values, blaschke_kernel_apply, inner_test,
                     matrix_inner_test, parse_phase, product_phase)
from .report import VerificationReport, verdict_metric
from .schrodinger import (borchers_residual, flow_values, gaussian_transform, membership_H0,
                          modular_conjugation, modular_flow, sample_H0_element, weyl, weyl_values)
from .special import apply_ts, build_ts_kernel, complex_gamma
from .trend import verdict_label

ID = TrivialPhase()
B1 = BlaschkeProduct((-1j,))
B2 = BlaschkeProduct((-0.5 - 0.5j, 0.5 - 0.5j))
TRANSLATE = ExponentialFactor(float(np.log(2.0) / (2 * np.pi)))
SCALE2 = ScalingPhase(2.0)
SINH = SinhPhase()

# (pair₁ phase, pair₂ phase, expected inclusion U₁(1)H₀ ⊂ U₂(1)H₀)
BATTERY = (
    (B1, ID, True),
    (ID, B1, False),
    (B2, ID, True),
    (ID, B2, False),
    (product_phase(B1, B2), B1, True),
    (B1, product_phase(B1, B2), False),
    (TRANSLATE, ID, True),
    (ID, TRANSLATE, False),
    (SCALE2, ID, True),
    (ID, SCALE2, False),
    (SINH, ID, False),
    (ID, SINH, False),
    (B1, B1, True),
    (ConjugateOf(B1), ID, False),
)
BATTERY_GRIDS = (2048, 4096)     # each classified against its doubling, so N ∈ {2048, 4096, 8192}

EXAMPLES = ("blaschke-4.4", "sinh-4.5", "scaling-4.3", "borchers", "wiesbrock",
            "orthogonality", "contraction", "matrix-4.6", "battery", "dense-oracle")


def _report(case: str, cfg: RunConfig) -> VerificationReport:
    return VerificationReport(case, cfg.as_dict(), __version__)


class _Timer:
    def __init__(self, rep: VerificationReport, key: str):
        self.rep, self.key = rep, key

    def __enter__(self):
        self.t = time.perf_counter()

    def __exit__(self, *exc):
        self.rep.timings[self.key] = self.rep.timings.get(self.key, 0.0) + time.perf_counter() - self.t


def _tag(x: float) -> str:
    return f"{x:g}".replace("-", "m").replace(".", "p")


# -- selfcheck --------------------------------------------------------------

ACCURACY_MIN_N = 1024


def borchers_probe(grid: GridSpec) -> WaveFunction:
    """Narrow Gaussian well left of the origin: e^{ise^θ} stays resolved after flows."""
    return normalized(WaveFunction(grid, "theta", gaussian(grid, -2.0, 0.5)))


def selfcheck(cfg: RunConfig) -> VerificationReport:
    rep = _report("selfcheck", cfg)
    g = GridSpec(cfg.L, cfg.N)
    rng = np.random.default_rng(cfg.seed)
    v = rng.normal(size=g.N) + 1j * rng.normal(size=g.N)
    psi = WaveFunction(g, "theta", v)
    with _Timer(rep, "structural"):
        back = inverse_fourier(fourier(psi)).values
        rep.check("numgrid.round_trip.max_error", np.max(np.abs(back - v)) / np.max(np.abs(v)), 1e-12)
        rep.check("numgrid.parseval.rel_error", abs(fourier(psi).norm() / psi.norm() - 1), 1e-12)
        par = np.max(np.abs(ft_values(theta_parity(v), g) - lambda_parity(ft_values(v, g))))
        rep.check("numgrid.parity_identity.max_error", par / np.max(np.abs(v)), 1e-12)
        jj = modular_conjugation(modular_conjugation(psi)).values
        rep.check("schrodinger.conjugation.involution", np.max(np.abs(jj - v)) / np.max(np.abs(v)), 1e-13)
        fl = modular_flow(0.05, psi, check=False)
        rep.check("schrodinger.flow.unitarity", abs(fl.norm() / psi.norm() - 1), 1e-12)
        back = modular_flow(-0.05, fl, check=False).values
        rep.check("schrodinger.flow.group_law", np.max(np.abs(back - v)) / np.max(np.abs(v)), 1e-12)
        wy = weyl(0.7, psi, check=False)
        rep.check("schrodinger.weyl.unitarity", abs(wy.norm() / psi.norm() - 1), 1e-12)
    if g.N < ACCURACY_MIN_N:
        rep.notes.append(f"accuracy checks skipped below N = {ACCURACY_MIN_N}")
        return rep
    with _Timer(rep, "accuracy"):
        ga = gaussian(g, -0.3, 1.1, 0.8)
        err = np.max(np.abs(ft_values(ga, g) - gaussian_transform(g, -0.3, 1.1, 0.8)))
        rep.check("numgrid.gaussian_transform.max_error", err, 1e-10)
        r_flow, r_j = borchers_residual(0.1, 1.0, borchers_probe(g))
        rep.check("schrodinger.borchers.flow_residual", r_flow, cfg.tolerances["borchers"])
        rep.check("schrodinger.borchers.conjugation_residual", r_j, cfg.tolerances["borchers"])
        worst = max(membership_H0(sample_H0_element(g, seed=cfg.seed + k)).reflection_residual
                    for k in range(4))
        rep.check("schrodinger.membership.sample_residual", worst, cfg.tolerances["membership"])
        outside = membership_H0(normalized(WaveFunction(g, "theta", gaussian(g, -1.0, 1.0))))
        rep.check("schrodinger.membership.nonmember_residual", outside.reflection_residual, 0.05, ">=")
    return rep


# -- T_s kernel convergence -----------------------------------------------------

APPENDIX_NS = (2048, 4096, 8192, 16384)
APPENDIX_CHECK_N = 8192


def ts_discrepancy(s: float, grid: GridSpec, center: float = 0.0, width: float = 1.0) -> float:
    """‖T_s * ψ̂ - F[e^{ise^θ}ψ]‖ / ‖F[e^{ise^θ}ψ]‖ for a Gaussian ψ."""
    psi = normalized(WaveFunction(grid, "theta", gaussian(grid, center, width)))
    exact = ft_values(weyl_values(psi.values, grid, s), grid)
    conv = apply_ts(build_ts_kernel(s, grid), ft_values(psi.values, grid))
    return float(np.linalg.norm(conv - exact) / np.linalg.norm(exact))


def gamma_modulus_error(count: int = 40) -> float:
    lam = np.geomspace(0.1, 10.0, count)
    exact = np.pi / (lam * np.sinh(np.pi * lam))
    return float(np.max(np.abs(np.abs(complex_gamma(1j * lam)) ** 2 / exact - 1)))


def appendix_a(cfg: RunConfig, s: float = 1.0, ns: Sequence[int] = APPENDIX_NS) -> VerificationReport:
    if s == 0:
        raise ValueError("s must be nonzero")
    rep = _report("appendix-a", cfg)
    tol = cfg.tolerances["appendix_a"]
    with _Timer(rep, "convergence"):
        errs = [ts_discrepancy(s, GridSpec(cfg.L, n)) for n in ns]
    for n, e in zip(ns, errs):
        rep.check(f"special.appendix_a.discrepancy_N{n}", e, None, "info")
    mono = all(b < a for a, b in zip(errs, errs[1:]))
    rep.check("special.appendix_a.monotone", float(mono), 1.0, "==")
    if APPENDIX_CHECK_N in ns:
        rep.check(f"special.appendix_a.discrepancy_at_{APPENDIX_CHECK_N}",
                  errs[list(ns).index(APPENDIX_CHECK_N)], tol)
    g = GridSpec(cfg.L, max(ns))
    with _Timer(rep, "group_law"):
        psi = normalized(WaveFunction(g, "theta", gaussian(g, 0.0, 1.0)))
        ph = ft_values(psi.values, g)
        once = apply_ts(build_ts_kernel(s, g), ph)
        rep.check("special.appendix_a.unitarity", abs(np.linalg.norm(once) / np.linalg.norm(ph) - 1), tol)
        twice = apply_ts(build_ts_kernel(s, g), once)
        direct = ft_values(weyl_values(psi.values, g, 2 * s), g)
        rep.check("special.appendix_a.group_law", np.linalg.norm(twice - direct) / np.linalg.norm(direct), tol)
        k_pos, k_neg = build_ts_kernel(s, g), build_ts_kernel(-s, g)
        sym = np.max(np.abs(k_neg.samples - np.conj(k_pos.samples[::-1])))
        rep.check("special.ts_kernel.reflection_symmetry", sym / np.max(np.abs(k_pos.samples)), 1e-12)
    rep.check("special.gamma.modulus_rel_error", gamma_modulus_error(), cfg.tolerances["gamma"])
    return rep


def appendix_sweep(cfg: RunConfig, ns: Sequence[int], s: float = 1.0) -> tuple[list[str], list[list]]:
    errs = [ts_discrepancy(s, GridSpec(cfg.L, n)) for n in ns]
    rows = []
    for i, (n, e) in enumerate(zip(ns, errs)):
        mono = "" if i == 0 else str(e < errs[i - 1]).lower()
        rows.append([n, e, mono])
    return ["N", "discrepancy", "decreased"], rows


# -- inclusion -----------------------------------------------------------------

def inclusion_case(cfg: RunConfig, phase1: str, phase2: str, expected: Optional[bool] = None,
                   grid_n: Optional[int] = None, prefix: str = "inclusion") -> VerificationReport:
    """Three detectors at N and 2N.  With ``expected`` the verdict must match it;
    without, the detectors must agree."""
    p1, p2 = parse_phase(phase1), parse_phase(phase2)
    g = GridSpec(cfg.L, grid_n or cfg.N)
    rep = _report("inclusion", cfg)
    with _Timer(rep, f"{prefix}.detectors"):
        ver = check_inclusion(p1, p2, g, cfg.seed)
    target = ver.verdict if expected is None else expected
    if target is None:
        target = ver.spectral if ver.spectral is not None else True
    tols = {"spectral": cfg.tolerances["spectral"], "membership": cfg.tolerances["membership"],
            "analytic": cfg.tolerances["inner"]}
    for name, coarse, fine, cls in (
            ("spectral", ver.spectral_defect, ver.spectral_defect_refined, ver.spectral),
            ("membership", ver.membership_defect, ver.membership_defect_refined, ver.membership),
            ("analytic", ver.relative_phase_leakage, ver.relative_phase_leakage_refined, ver.analytic)):
        rep.add(f"{prefix}.{name}.defect_N{g.N}", verdict_metric(coarse, tols[name], cls, target))
        rep.add(f"{prefix}.{name}.defect_N{2 * g.N}", verdict_metric(fine, tols[name], cls, target))
    rep.check(f"{prefix}.detectors.agreement", float(ver.agreement), 1.0, "==")
    rep.notes.append(f"{prefix}: {p1.spec()} vs {p2.spec()} -> spectral {verdict_label(ver.spectral)}, "
                     f"membership {verdict_label(ver.membership)}, analytic {verdict_label(ver.analytic)}")
    if ver.verdict:
        gap = min_form_gap(p1, p2, g, min(cfg.probe_count, 20), cfg.seed)
        rep.check(f"{prefix}.generator_form.min_gap", gap, -cfg.tolerances["form_gap"], ">=")
    return rep


def form_probes(p1, p2, grid: GridSpec, count: int, seed: int) -> list[WaveFunction]:
    """Gaussian probes moved into the form domains of both pairs."""
    both = product_phase(p1, p2)
    return [into_form_domain(both, psi) for psi in probe_family(grid, "gaussian", count, seed)]


def min_form_gap(p1, p2, grid: GridSpec, count: int, seed: int) -> float:
    return min(generator_form_gap(p1, p2, q) for q in form_probes(p1, p2, grid, count, seed))


def battery(cfg: RunConfig, grids: Sequence[int] = BATTERY_GRIDS) -> VerificationReport:
    rep = _report("battery", cfg)
    for p1, p2, expected in BATTERY:
        key = f"{p1.spec()} | {p2.spec()}"
        verdicts = []
        with _Timer(rep, key):
            for n in grids:
                ver = check_inclusion(p1, p2, GridSpec(cfg.L, n), cfg.seed)
                verdicts.append(ver.verdict)
        tag = f"inclusion.battery[{key}]"
        stable = all(v == verdicts[0] for v in verdicts)
        rep.check(f"{tag}.agreement_and_stability",
                  float(stable and verdicts[0] is not None), 1.0, "==")
        rep.check(f"{tag}.matches_expected", float(verdicts[0] == expected), 1.0, "==")
        rep.notes.append(f"{key}: " + ", ".join(f"N={n} {verdict_label(v)}" for n, v in zip(grids, verdicts)))
    return rep


def battery_defect_table(cfg: RunConfig, ns: Sequence[int]) -> tuple[list[str], list[list]]:
    rows = []
    for p1, p2, _ in BATTERY:
        for n in ns:
            d = detector_defects(p1, p2, cfg.L, n, cfg.seed)
            rows.append([p1.spec(), p2.spec(), n, d[0], d[1], d[2]])
    return ["phase1", "phase2", "N", "spectral", "membership", "leakage"], rows


def inclusion_sweep(cfg: RunConfig, ns: Sequence[int]) -> tuple[list[str], list[list]]:
    p1, p2 = parse_phase(cfg.phase1), parse_phase(cfg.phase2)
    rows = []
    for n in ns:
        d = detector_defects(p1, p2, cfg.L, n, cfg.seed)
        rows.append([n, d[0], d[1], d[2]])
    return ["N", "spectral", "membership", "leakage"], rows


# -- examples --------------------------------------------------------------------

def blaschke_example(cfg: RunConfig) -> VerificationReport:
    """Blaschke factor with its zero at -i against the trivial phase."""
    rep = _report("blaschke-4.4", cfg)
    fine = GridSpec(cfg.L, 2 * cfg.N)
    work = fine.padded(4)
    with _Timer(rep, "kernel_route"):
        worst = 0.0
        for k in range(4):
            h = sample_H0_element(fine, seed=cfg.seed + k)
            v = weyl_values(work.embed(h.values, fine), work, 1.0)
            a = blaschke_kernel_apply(v, work)
            b = apply_phase_values(B1, v, work)
            worst = max(worst, float(np.linalg.norm(a - b) / np.linalg.norm(b)))
    rep.check(f"phases.blaschke_kernel.rel_error_N{fine.N}", worst, cfg.tolerances["membership"])
    memb = membership_inclusion_defect(B1, ID, fine, seed=cfg.seed)
    rep.check(f"inclusion.transported_samples.residual_N{fine.N}", memb, cfg.tolerances["membership"])
    rep.merge(inclusion_case(cfg, B1.spec(), ID.spec(), True, prefix="inclusion.blaschke"))
    inner = inner_test(relative_phase(B1, ID), GridSpec(cfg.L, cfg.N), seed=cfg.seed, tol=cfg.tolerances["inner"])
    rep.add("phases.blaschke.inner_leakage", verdict_metric(inner.leakage_refined, inner.tol, inner.is_inner, True))
    return rep


def sinh_example(cfg: RunConfig) -> VerificationReport:
    """P₂ ≤ P₁ for pair₁ trivial and pair₂ = sinh phase, yet neither subspace contains the other."""
    rep = _report("sinh-4.5", cfg)
    g = GridSpec(cfg.L, cfg.N)
    with _Timer(rep, "form_gap"):
        probes = probe_family(g, "gaussian", cfg.probe_count, cfg.seed)
        gap = min(generator_form_gap(ID, SINH, psi) for psi in probes)
    rep.check("inclusion.sinh.generator_form.min_gap", gap, -cfg.tolerances["form_gap"], ">=")
    rep.merge(inclusion_case(cfg, ID.spec(), SINH.spec(), False, prefix="inclusion.sinh.forward"))
    rep.merge(inclusion_case(cfg, SINH.spec(), ID.spec(), False, prefix="inclusion.sinh.reverse"))
    for direction, (p1, p2) in (("forward", (ID, SINH)), ("reverse", (SINH, ID))):
        a = spectral_inclusion_defect(p1, p2, g, seed=cfg.seed)
        b = spectral_inclusion_defect(p1, p2, GridSpec(cfg.L, 2 * g.N), seed=cfg.seed)
        rep.check(f"inclusion.sinh.{direction}.spectral_floor", min(a, b), 0.05, ">=")
        rep.check(f"inclusion.sinh.{direction}.spectral_stability", b / a, 0.5, ">=")
    for name, phi in (("sinh", SINH), ("conj_sinh", ConjugateOf(SINH))):
        iv = inner_test(phi, g, seed=cfg.seed, tol=cfg.tolerances["inner"])
        rep.add(f"phases.{name}.inner_leakage", verdict_metric(iv.leakage_refined, iv.tol, iv.is_inner, False))
    return rep


def scaling_example(cfg: RunConfig) -> VerificationReport:
    """Scaling by 2: U_φ(s) = flow(t₀) U₀(s) flow(-t₀) with e^{-2πt₀} = 2."""
    rep = _report("scaling-4.3", cfg)
    g = GridSpec(cfg.L, cfg.N)
    t0 = -np.log(2.0) / (2 * np.pi)
    worst = 0.0
    for psi in probe_family(g, "gaussian", 6, cfg.seed, center=(-3.0, -1.5), width=(0.4, 0.8)):
        for s in (0.5, 1.0, 2.0):
            lhs = pair_apply_U(SCALE2, s, psi, pad=1).values
            rhs = flow_values(weyl_values(flow_values(psi.values, g, -t0), g, s), g, t0)
            worst = max(worst, float(np.linalg.norm(lhs - rhs) / np.linalg.norm(rhs)))
    rep.check("inclusion.scaling.conjugated_weyl_residual", worst, 1e-9)
    rel = relative_phase(SCALE2, ID)
    lam = np.linspace(-5, 5, 101)
    rep.check("phases.scaling.relative_is_translation",
              float(np.max(np.abs(rel(lam) - TRANSLATE(lam)))), 1e-12)
    iv = inner_test(rel, g, seed=cfg.seed, tol=cfg.tolerances["inner"])
    rep.add("phases.scaling.inner_leakage", verdict_metric(iv.leakage_refined, iv.tol, iv.is_inner, True))
    rep.merge(inclusion_case(cfg, SCALE2.spec(), ID.spec(), True, prefix="inclusion.scaling"))
    return rep


def borchers_example(cfg: RunConfig, n: int = 4096) -> VerificationReport:
    """Borchers relations on a 5×5 (t, s) lattice, at N and 2N."""
    rep = _report("borchers", cfg)
    worst = {}
    for m in (n, 2 * n):
        g = GridSpec(cfg.L, m)
        psi = borchers_probe(g)
        w = 0.0
        with _Timer(rep, f"N{m}"):
            for t in np.linspace(-0.5, 0.5, 5):
                for s in np.linspace(-2.0, 2.0, 5):
                    w = max(w, *borchers_residual(float(t), float(s), psi))
        worst[m] = w
    rep.check(f"schrodinger.borchers.lattice_max_N{n}", worst[n], cfg.tolerances["borchers"])
    rep.check(f"schrodinger.borchers.lattice_max_N{2 * n}", worst[2 * n], cfg.tolerances["borchers"])
    rep.check("schrodinger.borchers.refinement_gain", worst[n] / max(worst[2 * n], 1e-300), 2.0, ">=")
    return rep


WIESBROCK_TIMES = (0.1, 0.2, 0.4)


def wiesbrock_example(cfg: RunConfig) -> VerificationReport:
    """Cocycle identity for every battery phase, on transported probes Vψ₀."""
    rep = _report("wiesbrock", cfg)
    g = GridSpec(cfg.L, cfg.N)
    base = probe_family(g, "gaussian", 6, cfg.seed, center=(-3.0, -1.0), width=(0.5, 1.0))
    phases = {p.spec(): p for trio in BATTERY for p in trio[:2]}
    for spec in sorted(phases):
        phi = phases[spec]
        probes = [WaveFunction(g, "theta", apply_phase_values(phi, p.values, g)) for p in base]
        res = max(wiesbrock_cocycle_residual(phi, t, p) for t in WIESBROCK_TIMES for p in probes)
        rep.check(f"inclusion.wiesbrock[{spec}].residual", res, cfg.tolerances["wiesbrock"])
    return rep


def orthogonality_example(cfg: RunConfig) -> VerificationReport:
    rep = _report("orthogonality", cfg)
    tol = cfg.tolerances["orthogonality"]
    a = orthogonality_defect(B1, ID, (0.5, 1.0), (2.0, 3.0), GridSpec(cfg.L, cfg.N), seed=cfg.seed)
    b = orthogonality_defect(B1, ID, (0.5, 1.0), (2.0, 3.0), GridSpec(cfg.L, 2 * cfg.N), seed=cfg.seed)
    rep.check(f"inclusion.orthogonality.defect_N{cfg.N}", a, tol)
    rep.check(f"inclusion.orthogonality.defect_N{2 * cfg.N}", b, tol)
    rep.check("inclusion.orthogonality.refinement_ratio", b / a, 1.0, "<=")
    g = GridSpec(cfg.L, cfg.N)
    rep.check("inclusion.orthogonality.same_pair_disjoint",
              orthogonality_defect(ID, ID, (0.5, 1.0), (2.0, 3.0), g, seed=cfg.seed), 1e-10)
    rep.check("inclusion.orthogonality.same_pair_overlap",
              orthogonality_defect(ID, ID, (0.5, 2.0), (1.0, 3.0), g, seed=cfg.seed), 0.5, ">=")
    return rep


CONTRACTION_YS = (0.1, 1.0, 10.0)


def contraction_example(cfg: RunConfig) -> VerificationReport:
    rep = _report("contraction", cfg)
    g = GridSpec(cfg.L, cfg.N)
    probes = probe_family(g, "gaussian", min(cfg.probe_count, 20), cfg.seed)
    for y in CONTRACTION_YS:
        r = contraction_ratio(B1, ID, y, probes)
        rep.check(f"inclusion.contraction.ratio_y{_tag(y)}", r.ratio, 1 + cfg.tolerances["contraction"])
        rep.check(f"inclusion.contraction.tail_mass_y{_tag(y)}", r.tail_mass, 1e-10)
        rep.check(f"inclusion.contraction.cutoff_y{_tag(y)}", r.cutoff, None, "info")
    r = contraction_ratio(ID, B1, 5.0, probes)
    rep.check("inclusion.contraction.reversed_ratio_y5", r.ratio, 1.0 + 1e-3, ">=")
    return rep


def matrix_battery() -> tuple:
    """2×2 phases with the expected inner-ness."""
    return (
        (MatrixPhase((B1, ID), 0.3), True),
        (MatrixPhase((B1, B2), 1.1), True),
        (MatrixPhase((TRANSLATE, B1), 0.7), True),
        (MatrixPhase((SINH, ID), 0.3), False),
        (MatrixPhase((ConjugateOf(B1), ID), 0.5), False),
    )


def matrix_example(cfg: RunConfig) -> VerificationReport:
    rep = _report("matrix-4.6", cfg)
    g = GridSpec(cfg.L, cfg.N)
    for k, (phi, expected) in enumerate(matrix_battery()):
        iv = matrix_inner_test(phi, g, seed=cfg.seed, tol=cfg.tolerances["inner"])
        rep.add(f"phases.matrix[{k}].inner_leakage",
                verdict_metric(iv.leakage_refined, iv.tol, iv.is_inner, expected))
        rep.check(f"phases.matrix[{k}].unitarity", iv.unitarity_residual, 1e-12)
        rep.notes.append(f"matrix[{k}] = {phi.spec()}")
    return rep


DENSE_N = 512
DENSE_PAIRS = ((B1, ID), (ID, B1), (SINH, ID))


def dense_example(cfg: RunConfig, n: int = DENSE_N) -> VerificationReport:
    rep = _report("dense-oracle", cfg)
    g = GridSpec(cfg.L, n)
    for p1, p2 in DENSE_PAIRS:
        a = spectral_inclusion_defect(p1, p2, g, seed=cfg.seed)
        b = dense_spectral_defect(p1, p2, g)
        rep.check(f"inclusion.dense_oracle[{p1.spec()} | {p2.spec()}].abs_diff", abs(a - b),
                  cfg.tolerances["dense"])
    return rep


_EXAMPLE_FUNCS: dict[str, Callable[[RunConfig], VerificationReport]] = {
    "blaschke-4.4": blaschke_example,
    "sinh-4.5": sinh_example,
    "scaling-4.3": scaling_example,
    "borchers": borchers_example,
    "wiesbrock": wiesbrock_example,
    "orthogonality": orthogonality_example,
    "contraction": contraction_example,
    "matrix-4.6": matrix_example,
    "battery": battery,
    "dense-oracle": dense_example,
}


def run_example(name: str, cfg: RunConfig) -> VerificationReport:
    if name not in _EXAMPLE_FUNCS:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    return _EXAMPLE_FUNCS[name](cfg)


SWEEPS = ("appendix-a", "inclusion", "battery")


def run_sweep(case: str, cfg: RunConfig, ns: Sequence[int]) -> tuple[list[str], list[list]]:
    if case == "appendix-a":
        return appendix_sweep(cfg, ns)
    if case == "inclusion":
        return inclusion_sweep(cfg, ns)
    if case == "battery":
        return battery_defect_table(cfg, ns)
    raise KeyError(f"unknown sweep case {case!r}; choose from {', '.join(SWEEPS)}")
