//! Critical exponents from computed curves: power laws, finite-size data
//! collapse and the central charge.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::observables::EntropyCurve;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingFit {
    pub exponent: f64,
    pub amplitude: f64,
    pub window: (f64, f64),
    /// RMS misfit of the fitted line (log space for power laws).
    pub residual: f64,
    pub std_error: f64,
    pub n_points: usize,
}

/// Ordinary least squares `y = a + b x`: `(b, a, rms residual, σ_b)`.
fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let b = sxy / sxx;
    let a = my - b * mx;
    let ssr: f64 = xs.iter().zip(ys).map(|(x, y)| (y - a - b * x).powi(2)).sum();
    let rms = (ssr / n).sqrt();
    let se = if xs.len() > 2 {
        (ssr / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    (b, a, rms, se)
}

fn in_window(x: f64, window: (f64, f64)) -> bool {
    x >= window.0 && x <= window.1
}

/// `y = A x^k` by least squares in `(ln x, ln y)` over points with `x` in `window`.
pub fn power_law_fit(points: &[(f64, f64)], window: (f64, f64)) -> Result<ScalingFit> {
    if !(window.0 < window.1) {
        return Err(Error::InvalidParams(format!(
            "empty fit window [{}, {}]",
            window.0, window.1
        )));
    }
    let sel: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(x, _)| in_window(x, window))
        .collect();
    if sel.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "{} points in window [{}, {}], need at least 4",
            sel.len(),
            window.0,
            window.1
        )));
    }
    if let Some(&(x, y)) = sel.iter().find(|&&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(Error::InvalidParams(format!(
            "power-law fit needs positive data, got ({x}, {y})"
        )));
    }
    let lx: Vec<f64> = sel.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = sel.iter().map(|p| p.1.ln()).collect();
    let (b, a, rms, se) = linear_fit(&lx, &ly);
    Ok(ScalingFit {
        exponent: b,
        amplitude: a.exp(),
        window,
        residual: rms,
        std_error: se,
        n_points: sel.len(),
    })
}

/// Power law of `|y - y_c|` against `|x - x_c|` (e.g. `χ` near `h_c`).
pub fn critical_power_law(
    points: &[(f64, f64)],
    x_c: f64,
    y_c: f64,
    window: (f64, f64),
) -> Result<ScalingFit> {
    let dev: Vec<(f64, f64)> = points
        .iter()
        .map(|&(x, y)| ((x - x_c).abs(), (y - y_c).abs()))
        .collect();
    power_law_fit(&dev, window)
}

/// One finite-size curve `(h, χ)` for the collapse.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeCurve {
    pub n_cells: usize,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollapseResult {
    pub nu: f64,
    pub residual: f64,
    /// `(ν, residual)` at every trial, in evaluation order.
    pub trials: Vec<(f64, f64)>,
}

/// Coarse grid step of the `ν` search.
pub const COLLAPSE_COARSE_STEP: f64 = 0.05;

/// Rescaled curve: `x = N'^ν (h - h_max)`, `y = (χ^max - χ)/χ`, sorted in `x`.
fn rescale(curve: &SizeCurve, h_max: f64, nu: f64) -> Vec<(f64, f64)> {
    let chi_max = curve
        .points
        .iter()
        .fold(f64::NEG_INFINITY, |m, p| m.max(p.1));
    let s = (curve.n_cells as f64).powf(nu);
    let mut v: Vec<(f64, f64)> = curve
        .points
        .iter()
        .map(|&(h, chi)| (s * (h - h_max), (chi_max - chi) / chi))
        .collect();
    v.sort_by(|a, b| a.0.total_cmp(&b.0));
    v
}

/// Piecewise-linear interpolation on sorted abscissae.
fn interpolate(curve: &[(f64, f64)], x: f64) -> f64 {
    let k = curve.partition_point(|p| p.0 < x);
    if k == 0 {
        return curve[0].1;
    }
    if k == curve.len() {
        return curve[k - 1].1;
    }
    let (x0, y0) = curve[k - 1];
    let (x1, y1) = curve[k];
    if x1 == x0 {
        return y1;
    }
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

/// Mean pairwise squared deviation of the rescaled curves on the union of
/// their abscissae within the common support.
pub fn collapse_residual(curves: &[SizeCurve], h_max: f64, nu: f64) -> Result<f64> {
    let scaled: Vec<Vec<(f64, f64)>> = curves.iter().map(|c| rescale(c, h_max, nu)).collect();
    let mut total = 0.0;
    let mut pairs = 0;
    for a in 0..scaled.len() {
        for b in a + 1..scaled.len() {
            let (ca, cb) = (&scaled[a], &scaled[b]);
            let lo = ca[0].0.max(cb[0].0);
            let hi = ca[ca.len() - 1].0.min(cb[cb.len() - 1].0);
            let xs: Vec<f64> = ca
                .iter()
                .chain(cb.iter())
                .map(|p| p.0)
                .filter(|&x| x >= lo && x <= hi)
                .collect();
            if !(lo < hi) || xs.is_empty() {
                return Err(Error::InsufficientData(format!(
                    "rescaled curves N'={} and N'={} do not overlap at nu = {nu}",
                    curves[a].n_cells, curves[b].n_cells
                )));
            }
            let d: f64 = xs
                .iter()
                .map(|&x| (interpolate(ca, x) - interpolate(cb, x)).powi(2))
                .sum();
            total += d / xs.len() as f64;
            pairs += 1;
        }
    }
    Ok(total / pairs as f64)
}

/// Best `ν` in `nu_range`: coarse grid, then golden-section refinement
/// around the coarse optimum. Ties go to the smaller `ν`.
pub fn fs_collapse(curves: &[SizeCurve], h_max: f64, nu_range: (f64, f64)) -> Result<CollapseResult> {
    if curves.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "collapse needs at least 3 system sizes, got {}",
            curves.len()
        )));
    }
    if curves.iter().any(|c| c.points.len() < 2) {
        return Err(Error::InsufficientData("collapse curve with fewer than 2 points".into()));
    }
    let (lo, hi) = nu_range;
    if !(lo <= hi) {
        return Err(Error::InvalidParams(format!("empty nu range [{lo}, {hi}]")));
    }
    let steps = ((hi - lo) / COLLAPSE_COARSE_STEP).round() as usize;
    let grid: Vec<f64> = (0..=steps)
        .map(|k| (lo + k as f64 * COLLAPSE_COARSE_STEP).min(hi))
        .collect();
    let coarse = grid
        .par_iter()
        .map(|&nu| collapse_residual(curves, h_max, nu).map(|r| (nu, r)))
        .collect::<Result<Vec<_>>>()?;
    let mut trials = coarse.clone();
    let mut best = coarse[0];
    for &t in &coarse[1..] {
        if t.1 < best.1 {
            best = t;
        }
    }
    // Golden section on the bracket around the coarse optimum.
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (
        (best.0 - COLLAPSE_COARSE_STEP).max(lo),
        (best.0 + COLLAPSE_COARSE_STEP).min(hi),
    );
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let mut fc = collapse_residual(curves, h_max, c)?;
    let mut fd = collapse_residual(curves, h_max, d)?;
    trials.push((c, fc));
    trials.push((d, fd));
    while b - a > 1e-6 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = collapse_residual(curves, h_max, c)?;
            trials.push((c, fc));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = collapse_residual(curves, h_max, d)?;
            trials.push((d, fd));
        }
    }
    let mid = 0.5 * (a + b);
    let fm = collapse_residual(curves, h_max, mid)?;
    trials.push((mid, fm));
    if fm < best.1 {
        best = (mid, fm);
    }
    // Ties towards smaller ν among all trials.
    for &t in &trials {
        if t.1 < best.1 || (t.1 == best.1 && t.0 < best.0) {
            best = t;
        }
    }
    Ok(CollapseResult {
        nu: best.0,
        residual: best.1,
        trials,
    })
}

/// Slope (bits per octave of `L`) below which the entropy counts as saturated.
pub const SATURATION_SLOPE: f64 = 0.05;

/// `S_L = (c/3) log₂ L + const` over `L` in `window`; rejects curves whose
/// slope over the top octave of the window is below [`SATURATION_SLOPE`].
pub fn central_charge_fit(curve: &EntropyCurve, window: (usize, usize)) -> Result<ScalingFit> {
    let sel: Vec<(f64, f64)> = curve
        .block_sizes
        .iter()
        .zip(&curve.entropies)
        .filter(|(&l, _)| l >= window.0 && l <= window.1 && l > 0)
        .map(|(&l, &s)| ((l as f64).log2(), s))
        .collect();
    if sel.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "{} block sizes in [{}, {}], need at least 4",
            sel.len(),
            window.0,
            window.1
        )));
    }
    let top = (window.1 as f64).log2();
    let mut upper: Vec<(f64, f64)> = sel.iter().copied().filter(|p| p.0 >= top - 1.0).collect();
    if upper.len() < 2 {
        upper = sel[sel.len() / 2..].to_vec();
    }
    let (ux, uy): (Vec<f64>, Vec<f64>) = upper.into_iter().unzip();
    let upper_slope = linear_fit(&ux, &uy).0;
    if upper_slope < SATURATION_SLOPE {
        return Err(Error::Saturated { slope: upper_slope });
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = sel.iter().copied().unzip();
    let (b, a, rms, se) = linear_fit(&xs, &ys);
    Ok(ScalingFit {
        exponent: 3.0 * b,
        amplitude: a,
        window: (window.0 as f64, window.1 as f64),
        residual: rms,
        std_error: 3.0 * se,
        n_points: xs.len(),
    })
}
