"""Acceptance suite: the pinned end-to-end checks for this laboratory.

Each criterion is a pure function returning a CriterionResult with the
named sub-checks (windows, tolerances, runtime budget), the data table to
emit, and the parameter echo for provenance. run_acceptance executes a
selection, writes one CSV and one verdict file per criterion plus a
summary, and is the engine behind the `accept` subcommand. CSV content is
bytewise deterministic for a fixed seed; timing never enters the CSVs.

The determinism criterion itself (identical bytes from two same-seed runs)
is exercised from the tests by invoking the suite twice and comparing the
emitted files.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from .exponents import exponent_profile, oscillatory_exponents, verify_identities
from .fitting import flatness_factor
from .grids import GridSpec
from .knapp import knapp_sharpness_experiment
from .lorentz import indicator_lorentz_norm, lorentz_norm_values
from .measures import (
    DiscreteMeasure,
    ball_regularity_profile,
    dyadic_piece,
    fourier_decay_profile,
    make_cantor_measure,
    make_sphere_measure,
)
from .operators import convolve_mu_hat, extend, random_smooth_family, restrict_at_atoms, restrict_sq_integral
from .oscillatory import (
    check_fold,
    dyadic_kernel_sup,
    fold_scaling_family,
    parabola_scaling_family,
    phase_catalog,
    scaling_experiment,
)
from .reporting import ExperimentConfig, ReportTable, emit_csv, write_verdict

__all__ = ["CriterionResult", "CRITERIA", "run_acceptance"]


@dataclass(frozen=True)
class CriterionResult:
    index: int
    name: str
    passed: bool
    checks: Tuple[Tuple[str, bool, str], ...]
    table: ReportTable
    params: Tuple[Tuple[str, Any], ...]
    elapsed: float


def _result(index, name, checks, table, params, t0) -> CriterionResult:
    elapsed = time.perf_counter() - t0
    return CriterionResult(
        index=index,
        name=name,
        passed=all(ok for _, ok, _ in checks),
        checks=tuple(checks),
        table=table,
        params=tuple(params),
        elapsed=elapsed,
    )


def _in_window(value: float, lo: float, hi: float) -> bool:
    return lo <= value <= hi


def criterion_1(seed: int = 0) -> CriterionResult:
    """Exponent identity suite over random rational triples, exact."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    triples = [
        (Fraction(3), Fraction(2), Fraction(1)),
        (Fraction(2), Fraction(1), Fraction(1, 2)),
    ]
    for _ in range(100):
        d = Fraction(int(rng.integers(2, 13)), int(rng.integers(1, 5)))
        a = d * Fraction(int(rng.integers(1, 8)), 8)
        b = (a / 2) * Fraction(int(rng.integers(1, 6)), 5)
        triples.append((d, a, b))
    rows = []
    all_ok = True
    names: Tuple[str, ...] = ()
    for d, a, b in triples:
        flags = verify_identities(exponent_profile(d, a, b))
        names = tuple(flags)
        all_ok = all_ok and all(flags.values())
        rows.append((str(d), str(a), str(b)) + tuple(flags.values()))
    elapsed = time.perf_counter() - t0
    checks = [
        ("all identities hold exactly on %d triples" % len(triples), all_ok, ""),
        ("runtime < 1 s", elapsed < 1.0, "%.3f s" % elapsed),
    ]
    table = ReportTable(columns=("d", "a", "b") + names, rows=tuple(rows))
    return _result(1, "exponent-identities", checks, table, [("triples", len(triples))], t0)


def criterion_2(seed: int = 0) -> CriterionResult:
    """Named exponent values, exact rational equality."""
    t0 = time.perf_counter()
    prof = exponent_profile(3, 2, 1)
    osc2 = oscillatory_exponents(2)
    osc1 = oscillatory_exponents(1)
    d = 3
    checks = [
        ("p0(3,2,1) = 4/3", prof.p0 == Fraction(4, 3), str(prof.p0)),
        ("theta(3,2,1) = 1/2", prof.theta == Fraction(1, 2), str(prof.theta)),
        ("gamma(3,2,1) = 1/3", prof.gamma == Fraction(1, 3), str(prof.gamma)),
        ("rho(3,2,1) = 6/5", prof.rho == Fraction(6, 5), str(prof.rho)),
        ("sigma(3,2,1) = 3", prof.sigma == Fraction(3), str(prof.sigma)),
        (
            "q0(kappa=2) = 4 = (2d+2)/(d-1) at d=3",
            osc2.q0 == 4 and osc2.q0 == Fraction(2 * d + 2, d - 1),
            str(osc2.q0),
        ),
        ("q1(kappa=1) = 3", osc1.q1 == 3, str(osc1.q1)),
    ]
    table = ReportTable(
        columns=("quantity", "value"),
        rows=(
            ("p0", str(prof.p0)),
            ("theta", str(prof.theta)),
            ("gamma", str(prof.gamma)),
            ("rho", str(prof.rho)),
            ("sigma", str(prof.sigma)),
            ("q0_kappa2", str(osc2.q0)),
            ("q1_kappa1", str(osc1.q1)),
        ),
    )
    return _result(2, "exponent-cross-checks", checks, table, [("d", 3), ("a", 2), ("b", 1)], t0)


def criterion_3(seed: int = 0) -> CriterionResult:
    """Circle measure: ball dimension ~ 1, decay dimension ~ 1/2."""
    t0 = time.perf_counter()
    n = 8192
    measure = make_sphere_measure(2, n)
    r_list = [4.0 * 2.0**k for k in range(7)]
    decay = fourier_decay_profile(measure, r_list, n_directions=64, seed=seed)
    radii = [2.0 ** (-k) for k in range(1, 9)]
    reg = ball_regularity_profile(measure, radii)
    elapsed = time.perf_counter() - t0
    checks = [
        ("b_fit in [0.45, 0.55]", _in_window(decay.b_fit, 0.45, 0.55), "%.4f" % decay.b_fit),
        ("a_fit in [0.9, 1.1]", _in_window(reg.a_fit, 0.9, 1.1), "%.4f" % reg.a_fit),
        ("runtime < 10 s", elapsed < 10.0, "%.2f s" % elapsed),
    ]
    rows = [("annulus_sup", R, s) for R, s in zip(decay.annulus_radii, decay.annulus_sups)]
    rows += [("max_ball_ratio", r, v) for r, v in zip(reg.radii, reg.max_ball_ratios)]
    rows += [("a_fit", 0.0, reg.a_fit), ("b_fit", 0.0, decay.b_fit)]
    table = ReportTable(columns=("quantity", "scale", "value"), rows=tuple(rows))
    return _result(3, "circle-dimensions", checks, table, [("atoms", n)], t0)


def criterion_4(seed: int = 0) -> CriterionResult:
    """Cantor measure: ball dimension log2/log3 but no decay dimension."""
    t0 = time.perf_counter()
    reg_measure = make_cantor_measure(1.0 / 3.0, 14)
    radii = [3.0 ** (-k) for k in range(2, 9)]
    reg = ball_regularity_profile(reg_measure, radii)
    decay_measure = make_cantor_measure(1.0 / 3.0, 16)
    r_list = [3.0**k for k in range(1, 7)]
    decay = fourier_decay_profile(decay_measure, r_list, seed=seed)
    elapsed = time.perf_counter() - t0
    checks = [
        ("a_fit in [0.58, 0.68]", _in_window(reg.a_fit, 0.58, 0.68), "%.4f" % reg.a_fit),
        ("b_fit < 0.05", decay.b_fit < 0.05, "%.4f" % decay.b_fit),
        ("runtime < 10 s", elapsed < 10.0, "%.2f s" % elapsed),
    ]
    rows = [("max_ball_ratio", r, v) for r, v in zip(reg.radii, reg.max_ball_ratios)]
    rows += [("annulus_sup", R, s) for R, s in zip(decay.annulus_radii, decay.annulus_sups)]
    rows += [("a_fit", 0.0, reg.a_fit), ("b_fit", 0.0, decay.b_fit)]
    table = ReportTable(columns=("quantity", "scale", "value"), rows=tuple(rows))
    return _result(
        4, "cantor-dimensions", checks, table, [("ratio", "1/3"), ("levels", (14, 16))], t0
    )


def criterion_5(seed: int = 0) -> CriterionResult:
    """Dyadic frequency pieces of the circle measure: sup of the localized
    transform scales like 2^{-j/2}, mass of the piece like 2^j."""
    t0 = time.perf_counter()
    measure = make_sphere_measure(2, 4096)
    grid = GridSpec(dim=2, half_width=2.0, points_per_axis=2048)
    j_list = list(range(1, 9))
    rows = []
    hat_scaled = []
    mass_scaled = []
    for j in j_list:
        piece = dyadic_piece(measure, j, grid)
        hat_scaled.append(piece.sup_mu_hat_j * 2.0 ** (j / 2.0))
        mass_scaled.append(piece.sup_mu_j * 2.0 ** (-j))
        rows.append((j, piece.sup_mu_hat_j, piece.sup_mu_j, hat_scaled[-1], mass_scaled[-1]))
    elapsed = time.perf_counter() - t0
    f_hat = flatness_factor(hat_scaled)
    f_mass = flatness_factor(mass_scaled)
    checks = [
        ("sup|mu_hat_j| 2^{j/2} flat within factor 10", f_hat <= 10.0, "%.3f" % f_hat),
        ("sup|mu_j| 2^{-j} flat within factor 10", f_mass <= 10.0, "%.3f" % f_mass),
        ("runtime < 60 s", elapsed < 60.0, "%.2f s" % elapsed),
    ]
    table = ReportTable(
        columns=("j", "sup_mu_hat_j", "sup_mu_j", "hat_scaled", "mass_scaled"),
        rows=tuple(rows),
    )
    return _result(
        5,
        "dyadic-piece-bounds",
        checks,
        table,
        [("atoms", 4096), ("half_width", 2.0), ("points_per_axis", 2048)],
        t0,
    )


def criterion_6(seed: int = 0) -> CriterionResult:
    """Restriction-squared identity and extend/restrict adjointness."""
    t0 = time.perf_counter()
    grid = GridSpec(dim=2, half_width=1.0, points_per_axis=64)
    measure = make_sphere_measure(2, 256)
    reflected = DiscreteMeasure(
        dim=measure.dim,
        atoms=-np.asarray(measure.atoms),
        weights=np.asarray(measure.weights),
        label=measure.label + "-reflected",
        alias_radius=measure.alias_radius,
    )
    fields = random_smooth_family(grid, 20, seed=seed)
    rng = np.random.default_rng(seed + 1)
    cell = grid.cell_volume
    worst_identity = 0.0
    worst_adjoint = 0.0
    rows = []
    for k, f in enumerate(fields):
        rsq = restrict_sq_integral(f, measure)
        conv = convolve_mu_hat(f, reflected)
        pairing = complex(np.sum(np.conj(f.values) * conv.values) * cell)
        rel = abs(rsq - pairing) / rsq
        worst_identity = max(worst_identity, rel)
        g = rng.standard_normal(measure.n_atoms) + 1j * rng.standard_normal(measure.n_atoms)
        eg = extend(g, measure, grid)
        lhs = complex(np.sum(eg.values * np.conj(f.values)) * cell)
        rhs = complex(np.sum(np.asarray(measure.weights) * g * np.conj(restrict_at_atoms(f, measure))))
        scale = max(abs(lhs), abs(rhs), 1e-300)
        adj = abs(lhs - rhs) / scale
        worst_adjoint = max(worst_adjoint, adj)
        rows.append((k, rsq, rel, adj))
    elapsed = time.perf_counter() - t0
    checks = [
        ("identity relative error <= 1e-8 on 20 fields", worst_identity <= 1e-8, "%.3g" % worst_identity),
        ("adjointness relative error <= 1e-8", worst_adjoint <= 1e-8, "%.3g" % worst_adjoint),
    ]
    table = ReportTable(
        columns=("field", "restrict_sq", "identity_rel_err", "adjoint_rel_err"),
        rows=tuple(rows),
    )
    return _result(6, "tomas-identity", checks, table, [("fields", 20), ("atoms", 256)], t0)


def criterion_7(seed: int = 0) -> CriterionResult:
    """Lorentz quasi-norm: diagonal, indicator closed form, exact symmetries."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst_pp = 0.0
    for _ in range(1000):
        n = int(rng.integers(8, 160))
        vals = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        cell = float(10.0 ** rng.uniform(-2, 2))
        p = float(rng.uniform(1.05, 4.0))
        lp = float(np.sum(np.abs(vals) ** p) * cell) ** (1.0 / p)
        ln = lorentz_norm_values(vals, cell, p=p, s=p)
        worst_pp = max(worst_pp, abs(lp - ln) / lp)
    worst_ind = 0.0
    for _ in range(50):
        m_cells = int(rng.integers(1, 64))
        cell = float(10.0 ** rng.uniform(-2, 2))
        p = float(rng.uniform(1.05, 4.0))
        s = float(rng.uniform(0.7, 5.0)) if rng.uniform() < 0.8 else np.inf
        vals = np.zeros(128)
        vals[:m_cells] = 1.0
        closed = indicator_lorentz_norm(p, s, m_cells * cell)
        got = lorentz_norm_values(vals, cell, p=p, s=s)
        worst_ind = max(worst_ind, abs(got - closed) / closed)
    vals = rng.standard_normal(200)
    base = lorentz_norm_values(vals, 0.37, p=1.5, s=2.5)
    homog_exact = lorentz_norm_values(4.0 * vals, 0.37, p=1.5, s=2.5) == 4.0 * base
    rearr_exact = lorentz_norm_values(rng.permutation(vals), 0.37, p=1.5, s=2.5) == base
    elapsed = time.perf_counter() - t0
    checks = [
        ("L^{p,p} matches L^p within 1e-10 on 1000 fields", worst_pp <= 1e-10, "%.3g" % worst_pp),
        ("indicator closed form within 1e-12", worst_ind <= 1e-12, "%.3g" % worst_ind),
        ("homogeneity exact for scale 4", homog_exact, ""),
        ("rearrangement invariance exact", rearr_exact, ""),
    ]
    table = ReportTable(
        columns=("check", "max_rel_dev"),
        rows=(
            ("diagonal", worst_pp),
            ("indicator", worst_ind),
            ("homogeneity", 0.0 if homog_exact else 1.0),
            ("rearrangement", 0.0 if rearr_exact else 1.0),
        ),
    )
    return _result(7, "lorentz-suite", checks, table, [("fields", 1000)], t0)


def criterion_8(seed: int = 0) -> CriterionResult:
    """Cap superposition sharpness: input grows like N^{1/q} in L^q while
    the extension stays bounded in sup and grows slowly in L^2."""
    t0 = time.perf_counter()
    grid = GridSpec(dim=2, half_width=512.0, points_per_axis=4096)
    rep = knapp_sharpness_experiment(
        q=2.0,
        p=1.2,
        s_list=[2.0, np.inf],
        N_list=[2, 3, 4, 5, 6],
        grid=grid,
        d=2,
        sphere_n=16384,
    )
    slope_g = rep.fit_g.slope
    slope_f2 = rep.fits_f[0].slope
    slope_finf = rep.fits_f[1].slope
    gap = slope_g - slope_finf
    elapsed = time.perf_counter() - t0
    checks = [
        ("slope_g in [0.4, 0.6]", _in_window(slope_g, 0.4, 0.6), "%.4f" % slope_g),
        ("slope_f(s=inf) in [-0.1, 0.1]", _in_window(slope_finf, -0.1, 0.1), "%.4f" % slope_finf),
        ("slope_f(s=2) in [0.35, 0.65]", _in_window(slope_f2, 0.35, 0.65), "%.4f" % slope_f2),
        ("gap slope_g - slope_f(inf) >= 0.3", gap >= 0.3, "%.4f" % gap),
        ("runtime < 300 s", elapsed < 300.0, "%.1f s" % elapsed),
    ]
    rows = []
    for k, N in enumerate(rep.n_values):
        rows.append((N, rep.norm_g[k], rep.norms_f[k][0], rep.norms_f[k][1]))
    table = ReportTable(
        columns=("N", "norm_g_Lq", "norm_f_s2", "norm_f_sinf"),
        rows=tuple(rows),
    )
    return _result(
        8,
        "knapp-sharpness",
        checks,
        table,
        [("q", 2.0), ("p", "6/5"), ("N_list", (2, 3, 4, 5, 6)), ("points_per_axis", 4096)],
        t0,
    )


def criterion_9(seed: int = 0) -> CriterionResult:
    """Parabola-phase operator norms decay like lambda^{-1/3} at q = 6."""
    t0 = time.perf_counter()
    spec = phase_catalog(amp_radius=1.0)["parabola"]
    family = parabola_scaling_family(seed=seed, radius=1.0)
    lam_list = [2.0**k for k in range(4, 11)]
    rep = scaling_experiment(spec, kappa=1, lam_list=lam_list, family=family, q=6.0)
    elapsed = time.perf_counter() - t0
    checks = [
        (
            "fitted slope in [-0.43, -0.23] (target -1/3)",
            _in_window(rep.fit.slope, -0.43, -0.23),
            "%.4f" % rep.fit.slope,
        ),
        ("runtime < 600 s", elapsed < 600.0, "%.1f s" % elapsed),
    ]
    rows = tuple(zip(rep.lam_values, rep.ratios))
    table = ReportTable(columns=("lambda", "ratio"), rows=rows)
    return _result(
        9,
        "parabola-scaling",
        checks,
        table,
        [("phase", "parabola"), ("q", 6.0), ("lam_list", tuple(lam_list))],
        t0,
    )


def criterion_10(seed: int = 0) -> CriterionResult:
    """Curved-fold fixture: the fold checker accepts it and the operator
    norms decay like lambda^{-2/3} at q = 3."""
    t0 = time.perf_counter()
    spec = phase_catalog(amp_radius=1.0)["fold-curved"]
    probes = [((0.2, 0.5), (0.1, t)) for t in np.linspace(-0.5, 0.5, 9)]
    fold_rep = check_fold(spec, probes, kappa_target=1)
    family = fold_scaling_family(seed=seed, radius=1.0)
    lam_list = [2.0**k for k in range(4, 10)]
    rep = scaling_experiment(spec, kappa=1, lam_list=lam_list, family=family, q=3.0)
    elapsed = time.perf_counter() - t0
    checks = [
        ("fold checker passes", fold_rep.verdict, fold_rep.notes),
        (
            "fitted slope in [-0.82, -0.52] (target -2/3)",
            _in_window(rep.fit.slope, -0.82, -0.52),
            "%.4f" % rep.fit.slope,
        ),
        ("runtime < 600 s", elapsed < 600.0, "%.1f s" % elapsed),
    ]
    rows = tuple(zip(rep.lam_values, rep.ratios))
    table = ReportTable(columns=("lambda", "ratio"), rows=rows)
    return _result(
        10,
        "fold-scaling",
        checks,
        table,
        [("phase", "fold-curved"), ("q", 3.0), ("lam_list", tuple(lam_list))],
        t0,
    )


def criterion_11(seed: int = 0) -> CriterionResult:
    """Near-diagonal dyadic kernel pieces obey the 2^{-j/2} sup law."""
    t0 = time.perf_counter()
    spec = phase_catalog()["parabola"]
    lam = 1024.0
    j_list = list(range(2, 8))
    rows = []
    scaled = []
    for j in j_list:
        sup = dyadic_kernel_sup(spec, lam, j)
        scaled.append(sup * 2.0 ** (j / 2.0))
        rows.append((j, sup, scaled[-1]))
    positive = all(s > 0 for s in scaled)
    flat = flatness_factor(scaled) if positive else float("inf")
    elapsed = time.perf_counter() - t0
    checks = [
        ("all sampled sups positive", positive, ""),
        ("sup|S_j| 2^{j/2} flat within factor 10", flat <= 10.0, "%.3f" % flat),
    ]
    table = ReportTable(columns=("j", "sup_S_j", "scaled"), rows=tuple(rows))
    return _result(
        11,
        "dyadic-kernel-sup",
        checks,
        table,
        [("phase", "parabola"), ("lambda", lam), ("j_list", tuple(j_list))],
        t0,
    )


CRITERIA = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
)


def run_acceptance(
    out_dir: str, seed: int = 0, only: Optional[Sequence[int]] = None
) -> List[CriterionResult]:
    """Run the selected criteria (default: all computable ones, 1-11),
    writing criterion_NN.csv and criterion_NN_verdict.txt for each plus a
    summary pair."""
    selected = sorted(set(only)) if only else list(range(1, len(CRITERIA) + 1))
    for idx in selected:
        if not 1 <= idx <= len(CRITERIA):
            raise ValueError("criterion index %d out of range 1..%d" % (idx, len(CRITERIA)))
    os.makedirs(out_dir, exist_ok=True)
    results = []
    for idx in selected:
        res = CRITERIA[idx - 1](seed)
        config = ExperimentConfig(
            subcommand="accept",
            params=(("criterion", idx), ("name", res.name)) + res.params,
            out_dir=out_dir,
            seed=seed,
        )
        table = replace(res.table, provenance=config.echo_lines())
        base = os.path.join(out_dir, "criterion_%02d" % idx)
        emit_csv(table, base + ".csv")
        write_verdict(base + "_verdict.txt", "criterion %d: %s" % (idx, res.name), config, res.checks)
        results.append(res)
    summary = ReportTable(
        columns=("criterion", "name", "passed"),
        rows=tuple((r.index, r.name, r.passed) for r in results),
    )
    emit_csv(summary, os.path.join(out_dir, "summary.csv"))
    config = ExperimentConfig(
        subcommand="accept",
        params=(("criteria", tuple(selected)),),
        out_dir=out_dir,
        seed=seed,
    )
    write_verdict(
        os.path.join(out_dir, "accept_verdict.txt"),
        "acceptance suite",
        config,
        [
            ("criterion %d %s" % (r.index, r.name), r.passed, "%.1f s" % r.elapsed)
            for r in results
        ],
    )
    return results
