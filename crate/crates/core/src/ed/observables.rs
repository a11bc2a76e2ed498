use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

fn n_sites_of(state: &[f64]) -> Result<usize> {
    let n = state.len().trailing_zeros() as usize;
    if state.len() != 1 << n {
        return Err(Error::InvalidParams(format!(
            "state length {} is not a power of two",
            state.len()
        )));
    }
    Ok(n)
}

fn check_site(site: usize, n: usize) -> Result<()> {
    if site >= n {
        return Err(Error::OutOfRange(format!("site {site} in a chain of {n}")));
    }
    Ok(())
}

/// `⟨a|b⟩` for real states.
pub fn overlap(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::InvalidParams(format!(
            "state dimensions differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(a.iter().zip(b).map(|(x, y)| x * y).sum())
}

/// `⟨ψ| Π_k P_k |ψ⟩` for Pauli operators on distinct sites.
pub fn pauli_expectation(state: &[f64], ops: &[(usize, Pauli)]) -> Result<Complex64> {
    let n = n_sites_of(state)?;
    for (k, &(s, _)) in ops.iter().enumerate() {
        check_site(s, n)?;
        if ops[..k].iter().any(|&(t, _)| t == s) {
            return Err(Error::InvalidParams(format!("site {s} repeated")));
        }
    }
    let i = Complex64::i();
    let mut acc = Complex64::new(0.0, 0.0);
    for (b, &amp) in state.iter().enumerate() {
        if amp == 0.0 {
            continue;
        }
        let mut target = b;
        let mut coef = Complex64::new(amp, 0.0);
        for &(s, p) in ops {
            let up = (b >> s) & 1 == 1;
            match p {
                Pauli::I => {}
                Pauli::X => target ^= 1 << s,
                Pauli::Y => {
                    target ^= 1 << s;
                    coef *= if up { i } else { -i };
                }
                Pauli::Z => {
                    if !up {
                        coef = -coef;
                    }
                }
            }
        }
        acc += coef * state[target];
    }
    Ok(acc)
}

/// Two-site reduced density matrix in the basis `|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩`
/// (first label: site `i`).
pub fn two_site_rdm(state: &[f64], i: usize, j: usize) -> Result<DMatrix<Complex64>> {
    let n = n_sites_of(state)?;
    check_site(i, n)?;
    check_site(j, n)?;
    if i == j {
        return Err(Error::InvalidParams("two-site RDM needs distinct sites".into()));
    }
    // Local index a = 2·[site i down] + [site j down]; a set bit means up.
    let bits = |a: usize| -> usize { ((1 - (a >> 1)) << i) | ((1 - (a & 1)) << j) };
    let mut rho = DMatrix::<Complex64>::zeros(4, 4);
    let mask = (1usize << i) | (1usize << j);
    for rest in (0..state.len()).filter(|r| r & mask == 0) {
        let amps: Vec<f64> = (0..4).map(|a| state[rest | bits(a)]).collect();
        for a in 0..4 {
            for b in 0..4 {
                rho[(a, b)] += Complex64::new(amps[a] * amps[b], 0.0);
            }
        }
    }
    Ok(rho)
}

/// Von Neumann entropy (bits) of sites `0 … L-1`.
pub fn block_entropy(state: &[f64], l: usize) -> Result<f64> {
    let n = n_sites_of(state)?;
    if l > n {
        return Err(Error::OutOfRange(format!("block of {l} sites in a chain of {n}")));
    }
    if l == 0 || l == n {
        return Ok(0.0);
    }
    let rows = 1usize << l;
    let cols = 1usize << (n - l);
    // ψ(b) with b = block + rest·2^L.
    let psi = DMatrix::from_fn(rows, cols, |r, c| state[r | (c << l)]);
    let rho = if rows <= cols {
        &psi * psi.transpose()
    } else {
        psi.transpose() * &psi
    };
    let mut s = 0.0;
    for &lambda in rho.symmetric_eigenvalues().iter() {
        if lambda > 1e-15 {
            s -= lambda * lambda.log2();
        }
    }
    Ok(s)
}

/// `⟨σ^z_{1,n} + σ^z_{2,n}⟩` averaged over cells.
pub fn magnetization(state: &[f64]) -> Result<f64> {
    let n = n_sites_of(state)?;
    let mut total = 0.0;
    for (b, &a) in state.iter().enumerate() {
        let up = (b as u32).count_ones() as f64;
        total += a * a * (2.0 * up - n as f64);
    }
    Ok(total / (n / 2) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn bell() -> Vec<f64> {
        // (|↑↑⟩ - |↓↓⟩)/√2 on two sites
        let mut v = vec![0.0; 4];
        v[0b11] = FRAC_1_SQRT_2;
        v[0b00] = -FRAC_1_SQRT_2;
        v
    }

    #[test]
    fn self_overlap() {
        let v = bell();
        assert!((overlap(&v, &v).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bell_correlators() {
        let v = bell();
        let xx = pauli_expectation(&v, &[(0, Pauli::X), (1, Pauli::X)]).unwrap();
        let yy = pauli_expectation(&v, &[(0, Pauli::Y), (1, Pauli::Y)]).unwrap();
        let zz = pauli_expectation(&v, &[(0, Pauli::Z), (1, Pauli::Z)]).unwrap();
        assert!((xx.re + 1.0).abs() < 1e-15);
        assert!((yy.re - 1.0).abs() < 1e-15);
        assert!((zz.re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn single_y_is_imaginary_free() {
        // |↑⟩ + |↓⟩ (normalised) has ⟨σ^y⟩ = 0 and ⟨σ^x⟩ = 1.
        let v = vec![FRAC_1_SQRT_2, FRAC_1_SQRT_2];
        assert!(pauli_expectation(&v, &[(0, Pauli::Y)]).unwrap().norm() < 1e-15);
        assert!((pauli_expectation(&v, &[(0, Pauli::X)]).unwrap().re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rdm_of_bell_state() {
        let rho = two_site_rdm(&bell(), 0, 1).unwrap();
        assert!((rho[(0, 0)].re - 0.5).abs() < 1e-15);
        assert!((rho[(3, 3)].re - 0.5).abs() < 1e-15);
        assert!((rho[(0, 3)].re + 0.5).abs() < 1e-15);
    }

    #[test]
    fn rdm_basis_order() {
        // site 0 up, site 1 down: |↑↓⟩ is local index 1.
        let mut v = vec![0.0; 4];
        v[0b01] = 1.0;
        let rho = two_site_rdm(&v, 0, 1).unwrap();
        assert!((rho[(1, 1)].re - 1.0).abs() < 1e-15);
        let swapped = two_site_rdm(&v, 1, 0).unwrap();
        assert!((swapped[(2, 2)].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn entropy_edges() {
        let v = bell();
        assert_eq!(block_entropy(&v, 0).unwrap(), 0.0);
        assert!((block_entropy(&v, 1).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_sites() {
        assert!(pauli_expectation(&bell(), &[(2, Pauli::X)]).is_err());
        assert!(two_site_rdm(&bell(), 0, 0).is_err());
        assert!(overlap(&bell(), &[1.0]).is_err());
    }
}
