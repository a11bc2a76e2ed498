//! One function per experiment; each returns tables plus summary/fit data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;
use tfcompass::correlations::{string_correlators_xx, SpinCorrelations};
use tfcompass::ed::{
    ed_ground_state, ed_ground_state_of, ed_low_levels, ed_spectrum, Pauli, Sector,
    SpinHamiltonian, MAX_SITES,
};
use tfcompass::observables::density::density_matrix_from;
use tfcompass::observables::{
    block_entropy, entropy_curve, fidelity_map, fidelity_susceptibility,
    fidelity_susceptibility_extrapolated, ising_susceptibility_peak, magnetization,
    magnetization_analytic, susceptibility, susceptibility_analytic, Direction,
};
use tfcompass::scaling::{
    central_charge_fit, critical_power_law, fs_collapse, power_law_fit, SizeCurve,
};
use tfcompass::solver::{
    energy_gap, ground_state_with, ising, spectra_n4, spectrum_analytic, GroundState,
};
use tfcompass::{momentum_grid, Boundary, Error, ModelParams};

use crate::config::{Experiment, RunConfig};
use crate::error::CliError;
use crate::output::{Outputs, Table};

type Res = Result<Outputs, CliError>;

pub fn run(cfg: &RunConfig) -> Res {
    match cfg.experiment {
        Experiment::GsEnergy => gs_energy(cfg),
        Experiment::Spectrum => spectrum(cfg),
        Experiment::Gap => gap(cfg),
        Experiment::FidelityMap => fidelity_map_exp(cfg),
        Experiment::FsScan => fs_scan_exp(cfg),
        Experiment::FsScaling => fs_scaling(cfg),
        Experiment::Concurrence => concurrence_exp(cfg),
        Experiment::Entropy => entropy_exp(cfg),
        Experiment::Correlator => correlator(cfg),
        Experiment::Magnetization => magnetization_exp(cfg),
        Experiment::OracleValidate => oracle_validate(cfg),
        Experiment::IsingCheck => ising_check(cfg),
    }
}

fn ground(cfg: &RunConfig, p: &ModelParams) -> Result<GroundState, CliError> {
    Ok(ground_state_with(p, cfg.lift)?)
}

fn fidelity_sector(bc: Boundary) -> Sector {
    match bc {
        Boundary::Abc => Sector::Even,
        Boundary::Pbc => Sector::Odd,
    }
}

fn ed_allowed(p: &ModelParams) -> bool {
    p.n_sites() <= MAX_SITES
}

fn gs_energy(cfg: &RunConfig) -> Res {
    let base = cfg.params;
    let alphas = cfg.alphas();
    let with_ed = ed_allowed(&base);
    let rows = alphas
        .par_iter()
        .map(|&a| {
            let p = base.with_alpha(a);
            let gs = ground(cfg, &p)?;
            let ed = if with_ed {
                let sector = ed_ground_state(&p, fidelity_sector(p.bc))?.energy;
                let full = ed_ground_state(&p, Sector::Full)?.energy;
                Some((sector, full))
            } else {
                None
            };
            Ok((a, gs.energy, gs.is_degenerate(), ed))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut out = Outputs::default();
    let mut t = Table::new(
        "gs-energy",
        &["alpha", "E_G", "E_G_ed_sector", "E_G_ed_full", "abs_diff", "degenerate"],
    );
    let mut max_diff = 0.0_f64;
    for (a, e, deg, ed) in rows {
        let (es, ef) = ed.unwrap_or((f64::NAN, f64::NAN));
        let d = (e - es).abs();
        if ed.is_some() {
            max_diff = max_diff.max(d);
        }
        out.degenerate_points += usize::from(deg);
        t.push(vec![a.into(), e.into(), es.into(), ef.into(), d.into(), deg.into()]);
    }
    out.tables.push(t);
    if with_ed {
        out.note("max_abs_diff", max_diff);
        out.note("ed_sector", format!("{:?}", fidelity_sector(base.bc)).to_lowercase());
        if max_diff > cfg.tolerance() {
            out.failure = Some(format!(
                "closed-form energy deviates from ED by {max_diff:.3e} (tolerance {:.1e})",
                cfg.tolerance()
            ));
        }
    }
    Ok(out)
}

fn spectrum(cfg: &RunConfig) -> Res {
    let p = cfg.params;
    let grid = momentum_grid(&p)?;
    let mut out = Outputs::default();
    let mut t = Table::new("spectrum", &["p", "label", "epsilon"]);
    for m in &grid.points {
        let s = spectrum_analytic(&p, *m)?;
        for (label, e) in s.branches {
            t.push(vec![m.value().into(), (label as usize).into(), e.into()]);
        }
    }
    out.tables.push(t);
    if p.n_cells == 2 {
        let mut analytic = spectra_n4(&p).to_vec();
        analytic.sort_by(f64::total_cmp);
        let ed = ed_spectrum(&SpinHamiltonian::compass(&p)?, Sector::Full)?;
        let mut t = Table::new("spectrum-n4", &["level", "analytic", "ed", "abs_diff"]);
        let mut worst = 0.0_f64;
        for (k, (a, e)) in analytic.iter().zip(&ed).enumerate() {
            worst = worst.max((a - e).abs());
            t.push(vec![k.into(), (*a).into(), (*e).into(), (a - e).abs().into()]);
        }
        out.tables.push(t);
        out.note("max_abs_diff", worst);
        if worst > cfg.tolerance() {
            out.failure = Some(format!("N=4 spectrum deviates from ED by {worst:.3e}"));
        }
    }
    Ok(out)
}

fn gap(cfg: &RunConfig) -> Res {
    let base = cfg.params;
    let with_ed = ed_allowed(&base);
    let hs = cfg.hs();
    let rows = hs
        .par_iter()
        .map(|&h| {
            let p = base.with_h(h);
            let ed = if with_ed {
                let levels = ed_low_levels(&SpinHamiltonian::compass(&p)?, Sector::Even, 2)?;
                levels.get(1).map(|e1| e1 - levels[0]).unwrap_or(f64::NAN)
            } else {
                f64::NAN
            };
            Ok((h, energy_gap(&p), ed))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut t = Table::new("gap", &["h", "Delta", "Delta_ed_even"]);
    for (h, d, e) in rows {
        t.push(vec![h.into(), d.into(), e.into()]);
    }
    let mut out = Outputs::default();
    out.tables.push(t);
    Ok(out)
}

fn fidelity_map_exp(cfg: &RunConfig) -> Res {
    let pts = fidelity_map(&cfg.params, &cfg.alphas(), &cfg.hs(), cfg.delta())?;
    let mut out = Outputs::default();
    let mut t = Table::new(
        "fidelity-map",
        &["alpha", "h", "F_alpha", "F_h", "F_min", "degenerate"],
    );
    for q in &pts {
        out.degenerate_points += usize::from(q.degenerate);
        t.push(vec![
            q.alpha.into(),
            q.h.into(),
            q.f_alpha.into(),
            q.f_h.into(),
            q.f_min.into(),
            q.degenerate.into(),
        ]);
    }
    if let Some(m) = pts.iter().min_by(|a, b| a.f_min.total_cmp(&b.f_min)) {
        out.note("F_min_min", json!({"alpha": m.alpha, "h": m.h, "F_min": m.f_min}));
    }
    out.tables.push(t);
    Ok(out)
}

fn chi_f(cfg: &RunConfig, p: &ModelParams) -> Result<(f64, bool), CliError> {
    let s = if cfg.fit.richardson.unwrap_or(false) {
        fidelity_susceptibility_extrapolated(p, Direction::H)?
    } else {
        fidelity_susceptibility(p, Direction::H, cfg.delta())?
    };
    Ok((s.chi_f, s.degenerate))
}

fn fs_scan_exp(cfg: &RunConfig) -> Res {
    let hs = cfg.hs();
    let rows = hs
        .par_iter()
        .map(|&h| chi_f(cfg, &cfg.params.with_h(h)).map(|r| (h, r)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let n = cfg.params.n_cells as f64;
    let mut out = Outputs::default();
    let mut t = Table::new("fs-scan", &["h", "chi_F", "chi_F_per_Nprime", "degenerate"]);
    for &(h, (c, deg)) in &rows {
        out.degenerate_points += usize::from(deg);
        t.push(vec![h.into(), c.into(), (c / n).into(), deg.into()]);
    }
    if let Some(m) = rows.iter().max_by(|a, b| a.1 .0.total_cmp(&b.1 .0)) {
        out.note("h_max", m.0);
        out.note("chi_F_max", m.1 .0);
    }
    out.tables.push(t);
    Ok(out)
}

/// Synthetic curves `χ = A / (1 + x²)`, `x = N^ν (h - h_c)`, with optional
/// multiplicative noise; used to check the collapse machinery.
fn synthetic_curves(cfg: &RunConfig, sizes: &[usize], hs: &[f64], nu: f64) -> Vec<SizeCurve> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let noise = cfg.fit.noise.unwrap_or(0.0);
    let hc = cfg.fit.h_c.unwrap_or(0.0);
    sizes
        .iter()
        .map(|&n| SizeCurve {
            n_cells: n,
            points: hs
                .iter()
                .map(|&h| {
                    let x = (n as f64).powf(nu) * (h - hc);
                    let eps: f64 = rng.random_range(-1.0..1.0);
                    (h, (1.0 + noise * eps) * n as f64 / (1.0 + x * x))
                })
                .collect(),
        })
        .collect()
}

fn fs_scaling(cfg: &RunConfig) -> Res {
    let sizes = cfg
        .sweep
        .n_cells
        .clone()
        .unwrap_or_else(|| vec![cfg.params.n_cells]);
    // Rescale the field grid of each size onto the same scaling variable.
    let hs = cfg.hs();
    let h_c = cfg.fit.h_c.unwrap_or(0.0);
    let curves: Vec<SizeCurve> = match cfg.fit.synthetic_nu {
        Some(nu) => synthetic_curves(cfg, &sizes, &hs, nu),
        None => sizes
            .iter()
            .map(|&n| {
                let p = cfg.params.with_cells(n);
                let pts = hs
                    .par_iter()
                    .map(|&h| chi_f(cfg, &p.with_h(h)).map(|(c, _)| (h, c / n as f64)))
                    .collect::<Result<Vec<_>, CliError>>()?;
                Ok(SizeCurve {
                    n_cells: n,
                    points: pts,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?,
    };
    let mut out = Outputs::default();
    let mut maxima = Table::new("fs-scaling-max", &["Nprime", "h_max", "chi_F_max_per_Nprime"]);
    let mut peaks = Vec::new();
    for c in &curves {
        let mut t = Table::new(
            format!("fs-scaling-N{}", c.n_cells),
            &["h", "chi_F_per_Nprime"],
        );
        for &(h, y) in &c.points {
            t.push(vec![h.into(), y.into()]);
        }
        out.tables.push(t);
        let &(hm, ym) = c
            .points
            .iter()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty curve");
        peaks.push((c.n_cells as f64, ym));
        maxima.push(vec![c.n_cells.into(), hm.into(), ym.into()]);
    }
    out.tables.push(maxima);
    let nu_range = cfg.fit.nu_range.unwrap_or([0.5, 2.0]);
    let collapse = fs_collapse(&curves, h_c, (nu_range[0], nu_range[1]))?;
    // χ_F^max ∝ N'^μ, i.e. χ_F^max/N' ∝ N'^(μ-1).
    let w = cfg.fit.window.unwrap_or([1.0, 1e6]);
    let totals: Vec<(f64, f64)> = peaks.iter().map(|&(n, y)| (n, y * n)).collect();
    let mu = power_law_fit(&totals, (w[0], w[1])).ok();
    out.fit = Some(json!({
        "nu": collapse.nu,
        "collapse_residual": collapse.residual,
        "nu_range": nu_range,
        "h_max": h_c,
        "mu": mu,
    }));
    Ok(out)
}

fn concurrence_exp(cfg: &RunConfig) -> Res {
    let pair = cfg.fit.pair.unwrap_or([0, 1]);
    let pair = (pair[0], pair[1]);
    let inter = (1, 2);
    let step = cfg.delta();
    let points: Vec<(f64, f64)> = cfg
        .alphas()
        .iter()
        .flat_map(|&a| cfg.hs().into_iter().map(move |h| (a, h)))
        .collect();
    let conc = |p: &ModelParams, pair: (usize, usize)| -> Result<(f64, bool), CliError> {
        let gs = ground(cfg, p)?;
        let sc = SpinCorrelations::new(&gs)?;
        Ok((density_matrix_from(&sc, pair)?.concurrence()?, gs.is_degenerate()))
    };
    let rows = points
        .par_iter()
        .map(|&(a, h)| {
            let p = cfg.params.with_alpha(a).with_h(h);
            let (c, deg) = conc(&p, pair)?;
            let (ci, _) = conc(&p, inter)?;
            let (cp, _) = conc(&p.with_alpha(a + step), pair)?;
            let (cm, _) = conc(&p.with_alpha(a - step), pair)?;
            Ok((a, h, c, ci, (cp - cm) / (2.0 * step), deg))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut out = Outputs::default();
    let mut t = Table::new(
        "concurrence",
        &["alpha", "h", "C", "C_inter", "dC_dalpha", "degenerate"],
    );
    for (a, h, c, ci, d, deg) in rows {
        out.degenerate_points += usize::from(deg);
        t.push(vec![a.into(), h.into(), c.into(), ci.into(), d.into(), deg.into()]);
    }
    out.note("pair", pair);
    out.note("inter_pair", inter);
    out.tables.push(t);
    Ok(out)
}

fn entropy_exp(cfg: &RunConfig) -> Res {
    let p = cfg.params;
    let n = p.n_sites();
    let sizes = cfg
        .sweep
        .l
        .map(|r| r.values())
        .unwrap_or_else(|| (1..=n / 2).collect());
    let gs = ground(cfg, &p)?;
    let curve = entropy_curve(&gs, &sizes)?;
    let mut out = Outputs {
        degenerate_points: usize::from(gs.is_degenerate()),
        ..Outputs::default()
    };
    let mut t = Table::new("entropy", &["L", "S_L"]);
    for (l, s) in curve.block_sizes.iter().zip(&curve.entropies) {
        t.push(vec![(*l).into(), (*s).into()]);
    }
    out.tables.push(t);
    let w = cfg.fit.window.unwrap_or([8.0, (n / 4) as f64]);
    let window = (w[0] as usize, w[1] as usize);
    out.fit = Some(match central_charge_fit(&curve, window) {
        Ok(f) => json!({"central_charge": f.exponent, "saturated": false, "fit": f}),
        Err(Error::Saturated { slope }) => json!({
            "central_charge": null,
            "saturated": true,
            "upper_window_slope_bits_per_octave": slope,
            "window": window,
        }),
        Err(e) => return Err(e.into()),
    });
    Ok(out)
}

fn correlator(cfg: &RunConfig) -> Res {
    let p = cfg.params;
    let rs = cfg
        .sweep
        .r
        .map(|r| r.values())
        .unwrap_or_else(|| (0..=p.n_cells / 2).collect());
    let gs = ground(cfg, &p)?;
    let values = string_correlators_xx(&gs, &rs)?;
    let mut out = Outputs {
        degenerate_points: usize::from(gs.is_degenerate()),
        ..Outputs::default()
    };
    let mut t = Table::new("correlator", &["r", "C_xx"]);
    for (r, c) in rs.iter().zip(&values) {
        t.push(vec![(*r).into(), (*c).into()]);
    }
    out.tables.push(t);
    let w = cfg.fit.window.unwrap_or([8.0, 64.0]);
    let pts: Vec<(f64, f64)> = rs
        .iter()
        .zip(&values)
        .map(|(&r, &c)| (r as f64, c.abs()))
        .collect();
    out.fit = Some(match power_law_fit(&pts, (w[0], w[1])) {
        Ok(f) => json!({"eta_slope": f.exponent, "fit": f, "lift": cfg.lift}),
        Err(e) => json!({"eta_slope": null, "error": e.to_string()}),
    });
    Ok(out)
}

fn magnetization_exp(cfg: &RunConfig) -> Res {
    let p = cfg.params;
    let hs = cfg.hs();
    let closed = p.beta == 1.0 && p.bc == Boundary::Abc;
    let mut out = Outputs::default();
    let mut t = Table::new("magnetization", &["h", "m", "chi"]);
    let rows: Vec<(f64, f64, f64)> = if closed {
        hs.par_iter()
            .map(|&h| {
                let q = p.with_h(h);
                let gs = ground(cfg, &q)?;
                Ok((h, magnetization(&gs)?, susceptibility_analytic(&q)?))
            })
            .collect::<Result<Vec<_>, CliError>>()?
    } else {
        susceptibility(&p, &hs)?
            .into_iter()
            .map(|s| (s.h, s.magnetization, s.chi))
            .collect()
    };
    for &(h, m, c) in &rows {
        t.push(vec![h.into(), m.into(), c.into()]);
    }
    out.tables.push(t);
    if closed {
        let h_c = cfg.fit.h_c.unwrap_or(0.0);
        let chi_c = susceptibility_analytic(&p.with_h(h_c))?;
        let w = cfg.fit.window.unwrap_or([1e-3, 1e-2]);
        let pts: Vec<(f64, f64)> = rows.iter().map(|&(h, _, c)| (h, c)).collect();
        out.fit = Some(match critical_power_law(&pts, h_c, chi_c, (w[0], w[1])) {
            Ok(f) => json!({"gamma": f.exponent, "h_c": h_c, "chi_c": chi_c, "fit": f}),
            Err(e) => json!({"gamma": null, "error": e.to_string()}),
        });
        out.note("m_closed_form_at_first_h", magnetization_analytic(&p.with_h(hs[0]))?);
    }
    Ok(out)
}

struct Check {
    name: &'static str,
    value: f64,
    tolerance: f64,
}

fn oracle_validate(cfg: &RunConfig) -> Res {
    let p = cfg.params.with_bc(Boundary::Abc);
    if !ed_allowed(&p) {
        return Err(Error::SizeLimit {
            limit: MAX_SITES,
            requested: p.n_sites(),
        }
        .into());
    }
    let tol = cfg.tolerance();
    let mut checks = Vec::new();
    let gs = ground(cfg, &p)?;
    let ed = ed_ground_state(&p, Sector::Even)?;
    checks.push(Check {
        name: "abc_energy_vs_even_sector",
        value: (gs.energy - ed.energy).abs(),
        tolerance: 1e-10,
    });
    let pbc = p.with_bc(Boundary::Pbc);
    let ed_odd = ed_ground_state(&pbc, Sector::Odd)?;
    checks.push(Check {
        name: "pbc_energy_vs_odd_sector",
        value: (ground(cfg, &pbc)?.energy - ed_odd.energy).abs(),
        tolerance: 1e-10,
    });
    let sc = SpinCorrelations::new(&gs)?;
    let n = p.n_sites();
    let mut worst: f64 = 0.0;
    for (i, j) in [(0, 1), (1, 2), (0, n / 2), (1, n - 1)] {
        let pm = sc.pauli_matrix(i, j)?;
        let ops = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
        for (a, &pa) in ops.iter().enumerate() {
            for (b, &pb) in ops.iter().enumerate() {
                let want = tfcompass::ed::pauli_expectation(&ed.vector, &[(i, pa), (j, pb)])?.re;
                worst = worst.max((pm[a][b] - want).abs());
            }
        }
    }
    checks.push(Check {
        name: "pauli_pairs_vs_ed",
        value: worst,
        tolerance: tol,
    });
    let mut worst: f64 = 0.0;
    for l in 1..n {
        let want = tfcompass::ed::block_entropy(&ed.vector, l)?;
        worst = worst.max((block_entropy(&gs, l)? - want).abs());
    }
    checks.push(Check {
        name: "block_entropy_vs_ed",
        value: worst,
        tolerance: 1e-6,
    });
    let ising_p = p;
    let ising_ed = ed_ground_state_of(&SpinHamiltonian::ising(&ising_p)?, Sector::Even)?;
    checks.push(Check {
        name: "ising_abc_energy_vs_even_sector",
        value: (ising::ising_ground_energy(&ising_p)?.energy - ising_ed.energy).abs(),
        tolerance: 1e-10,
    });
    let mut out = Outputs::default();
    let mut t = Table::new("oracle-validate", &["check", "value", "tolerance", "pass"]);
    let mut failed = Vec::new();
    for c in &checks {
        let pass = c.value <= c.tolerance;
        if !pass {
            failed.push(c.name);
        }
        t.push(vec![c.name.into(), c.value.into(), c.tolerance.into(), pass.into()]);
    }
    out.tables.push(t);
    if !failed.is_empty() {
        out.failure = Some(format!("oracle checks failed: {}", failed.join(", ")));
    }
    Ok(out)
}

fn ising_check(cfg: &RunConfig) -> Res {
    let p = cfg.params;
    let hs = cfg.hs();
    let with_ed = ed_allowed(&p);
    let rows = hs
        .par_iter()
        .map(|&h| {
            let q = p.with_h(h);
            let e = ising::ising_ground_energy(&q)?;
            let ed = if with_ed {
                ed_ground_state_of(&SpinHamiltonian::ising(&q)?, fidelity_sector(q.bc))?.energy
            } else {
                f64::NAN
            };
            Ok((
                h,
                e.energy,
                ed,
                e.within_validity,
                ising::ising_magnetization(&q)?,
                ising::ising_susceptibility(&q)?,
            ))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut t = Table::new(
        "ising-check",
        &["h", "E_G", "E_G_ed", "within_validity", "m", "chi"],
    );
    for (h, e, ed, v, m, c) in rows {
        t.push(vec![h.into(), e.into(), ed.into(), v.into(), m.into(), c.into()]);
    }
    let mut out = Outputs::default();
    out.tables.push(t);
    if p.bc == Boundary::Abc {
        let b = cfg.fit.ising_bracket.unwrap_or([1.5, 2.5]);
        let w = cfg.fit.window.unwrap_or([1e-3, 1e-2]);
        let (ig, cg) = gamma_pair(&p, (b[0], b[1]), (w[0], w[1]))?;
        out.fit = Some(json!({
            "h_c_ising": ig.0,
            "gamma_ising": ig.1.exponent,
            "gamma_compass": cg.exponent,
            "slope_difference": (ig.1.exponent - cg.exponent).abs(),
            "ising_fit": ig.1,
            "compass_fit": cg,
        }));
    }
    Ok(out)
}

/// Deviations sampled log-uniformly from `window.0` to `window.1`, 20 per decade.
pub fn log_offsets(window: (f64, f64)) -> Vec<f64> {
    let decades = (window.1 / window.0).log10();
    let n = (20.0 * decades).round().max(4.0) as usize;
    (0..=n)
        .map(|k| window.0 * (window.1 / window.0).powf(k as f64 / n as f64))
        .collect()
}

type GammaFit = tfcompass::scaling::ScalingFit;

/// `γ` of the Ising chain (about its finite-size `χ` peak, `h > h_c`) and of
/// the compass chain at `α = 1` (about `h = 0`) on the same window.
pub fn gamma_pair(
    p: &ModelParams,
    bracket: (f64, f64),
    window: (f64, f64),
) -> Result<((f64, GammaFit), GammaFit), CliError> {
    let offsets = log_offsets(window);
    let hc = ising_susceptibility_peak(p, bracket.0, bracket.1)?;
    let chic = ising::ising_susceptibility(&p.with_h(hc))?;
    let ipts = offsets
        .iter()
        .map(|&d| Ok((hc + d, ising::ising_susceptibility(&p.with_h(hc + d))?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let ising_fit = critical_power_law(&ipts, hc, chic, window)?;
    let c = p.with_alpha(1.0).with_beta(1.0);
    let chi0 = susceptibility_analytic(&c.with_h(0.0))?;
    let cpts = offsets
        .iter()
        .map(|&d| Ok((d, susceptibility_analytic(&c.with_h(d))?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let compass_fit = critical_power_law(&cpts, 0.0, chi0, window)?;
    Ok(((hc, ising_fit), compass_fit))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_cover_window() {
        let o = log_offsets((1e-3, 1e-2));
        assert_eq!(o.len(), 21);
        assert!((o[0] - 1e-3).abs() < 1e-18);
        assert!((o[20] - 1e-2).abs() < 1e-15);
    }

    #[test]
    fn synthetic_is_seeded() {
        let (mut cfg, _) =
            RunConfig::resolve(crate::config::defaults(Experiment::FsScaling), 7).unwrap();
        cfg.fit.noise = Some(0.01);
        let a = synthetic_curves(&cfg, &[10, 20], &[0.0, 0.1], 1.0);
        let b = synthetic_curves(&cfg, &[10, 20], &[0.0, 0.1], 1.0);
        assert_eq!(a, b);
        cfg.seed = 8;
        assert_ne!(a, synthetic_curves(&cfg, &[10, 20], &[0.0, 0.1], 1.0));
    }
}
