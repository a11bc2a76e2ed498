use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Antisymmetry defects above this are rejected.
pub const ANTISYMMETRY_TOL: f64 = 1e-10;

/// Pfaffian of a real antisymmetric matrix by skew-symmetric Gaussian
/// elimination with full pivoting.
pub fn pfaffian(m: &DMatrix<f64>) -> Result<f64> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::InvalidParams(format!(
            "pfaffian of a non-square {}x{} matrix",
            n,
            m.ncols()
        )));
    }
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    let scale = m.iter().fold(1.0_f64, |s, x| s.max(x.abs()));
    let defect = (m + m.transpose()).iter().fold(0.0_f64, |s, x| s.max(x.abs()));
    if defect > ANTISYMMETRY_TOL * scale {
        return Err(Error::NotAntisymmetric(defect));
    }
    let mut a = m.clone();
    let mut pf = 1.0;
    for k in (0..n).step_by(2) {
        // Largest |a_ij| in the trailing block becomes a_{k,k+1}.
        let (mut pi, mut pj, mut best) = (k, k + 1, 0.0);
        for i in k..n {
            for j in i + 1..n {
                if a[(i, j)].abs() > best {
                    (pi, pj, best) = (i, j, a[(i, j)].abs());
                }
            }
        }
        if best == 0.0 {
            return Ok(0.0);
        }
        if pi != k {
            swap(&mut a, pi, k);
            pf = -pf;
        }
        if pj != k + 1 {
            swap(&mut a, pj, k + 1);
            pf = -pf;
        }
        let piv = a[(k, k + 1)];
        pf *= piv;
        for i in k + 2..n {
            for j in k + 2..n {
                let upd = (a[(i, k + 1)] * a[(j, k)] - a[(i, k)] * a[(j, k + 1)]) / piv;
                a[(i, j)] += upd;
            }
        }
    }
    Ok(pf)
}

/// Simultaneous row/column swap (a congruence, so antisymmetry is kept).
fn swap(a: &mut DMatrix<f64>, i: usize, j: usize) {
    a.swap_rows(i, j);
    a.swap_columns(i, j);
}
