//! Real-space fermion correlators and Wick evaluation of spin observables.

pub mod kernel;
pub mod majorana;
pub mod pfaffian;
pub mod strings;

pub use kernel::{block_moments, BlockMoments, CorrelationKernel};
pub use majorana::{
    majorana_matrix, real_space_correlators, FermionCorrelators, MajoranaCorrelationMatrix,
};
pub use pfaffian::pfaffian;
pub use strings::{
    string_correlator_xx, string_correlators_xx, two_site_correlators, MajoranaString,
    SpinCorrelations, TwoSiteCorrelators,
};

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::ed::{ed_ground_state, pauli_expectation, EDGroundState, Pauli, Sector};
    use crate::model::ModelParams;
    use crate::solver::ground_state;

    /// `⟨a_m† a_n⟩` (`anomalous = false`) or `⟨a_m† a_n†⟩` from spin amplitudes, `m < n`.
    fn ed_bilinear(ed: &EDGroundState, m: usize, n: usize, anomalous: bool) -> Complex64 {
        let i = Complex64::i();
        let sign = if (n - m - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
        let term = |p: Pauli, q: Pauli| {
            let mut ops = vec![(m, p), (n, q)];
            ops.extend((m + 1..n).map(|j| (j, Pauli::Z)));
            pauli_expectation(&ed.vector, &ops).unwrap() * sign
        };
        let (xx, xy, yx, yy) = (
            term(Pauli::X, Pauli::X),
            term(Pauli::X, Pauli::Y),
            term(Pauli::Y, Pauli::X),
            term(Pauli::Y, Pauli::Y),
        );
        if anomalous {
            (xx + i * xy + i * yx - yy) / 4.0
        } else {
            (xx - i * xy + i * yx + yy) / 4.0
        }
    }

    #[test]
    fn bilinears_match_oracle() {
        for (alpha, h, n_cells) in [(1.0, 0.5, 4), (0.6, 0.1, 6), (-0.7, 1.3, 2)] {
            let params = ModelParams::compass(alpha, h, n_cells);
            let fc = real_space_correlators(&ground_state(&params).unwrap()).unwrap();
            let ed = ed_ground_state(&params, Sector::Even).unwrap();
            let n = 2 * n_cells;
            for m in 0..n {
                let z = pauli_expectation(&ed.vector, &[(m, Pauli::Z)]).unwrap().re;
                assert!((fc.normal[(m, m)].re - (1.0 + z) / 2.0).abs() < 1e-8);
                for k in m + 1..n {
                    let f = ed_bilinear(&ed, m, k, false);
                    let g = ed_bilinear(&ed, m, k, true);
                    assert!((fc.normal[(m, k)] - f).norm() < 1e-8, "f {m} {k} {} {f}", fc.normal[(m, k)]);
                    assert!((fc.anomalous[(m, k)] - g).norm() < 1e-8, "g {m} {k} {} {g}", fc.anomalous[(m, k)]);
                }
            }
        }
    }

    #[test]
    fn fermion_invariants() {
        let params = ModelParams::compass(0.8, 0.4, 6);
        let fc = real_space_correlators(&ground_state(&params).unwrap()).unwrap();
        let n = fc.normal.nrows();
        assert!((fc.normal.adjoint() - &fc.normal).norm() < 1e-12);
        assert!((fc.anomalous.transpose() + &fc.anomalous).norm() < 1e-12);
        for m in 0..n {
            let d = fc.normal[(m, m)].re;
            assert!((-1e-12..=1.0 + 1e-12).contains(&d));
        }
        // Translation by one cell.
        for m in 0..n - 2 {
            for k in 0..n - 2 {
                assert!((fc.normal[(m, k)] - fc.normal[(m + 2, k + 2)]).norm() < 1e-10);
                assert!((fc.anomalous[(m, k)] - fc.anomalous[(m + 2, k + 2)]).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn dimer_limit() {
        let params = ModelParams::compass(0.0, 0.0, 4);
        let fc = real_space_correlators(&ground_state(&params).unwrap()).unwrap();
        let n = fc.normal.nrows();
        for m in 0..n {
            assert!((fc.normal[(m, m)].re - 0.5).abs() < 1e-12);
            for k in 0..n {
                // Active x-bonds join flat sites (2c+1, 2c+2) cyclically.
                let bonded = (m % 2 == 1 && k == (m + 1) % n) || (k % 2 == 1 && m == (k + 1) % n);
                let want = if bonded { 0.5 } else { 0.0 };
                assert!((fc.anomalous[(m, k)].norm() - want).abs() < 1e-12, "{m} {k}");
            }
        }
    }

    #[test]
    fn polarised_is_filled() {
        let params = ModelParams::compass(1.0, 1e3, 4);
        let fc = real_space_correlators(&ground_state(&params).unwrap()).unwrap();
        for m in 0..8 {
            assert!((fc.normal[(m, m)].re - 1.0).abs() < 1e-5);
        }
    }

    #[test]
    fn gamma_spectrum_bounded_and_symmetric() {
        let params = ModelParams::compass(1.0, 0.5, 4);
        let fc = real_space_correlators(&ground_state(&params).unwrap()).unwrap();
        let gamma = majorana_matrix(&fc).unwrap().gamma;
        // iΓ has eigenvalues ±ν; those of -Γ² are ν².
        let sq = -(&gamma * &gamma);
        let mut nu2: Vec<f64> = sq.symmetric_eigenvalues().iter().copied().collect();
        nu2.sort_by(f64::total_cmp);
        for x in &nu2 {
            assert!(*x <= 1.0 + 1e-9 && *x >= -1e-9);
        }
        // Pure Gaussian state: all |ν| = 1.
        assert!(nu2.iter().all(|x| (x - 1.0).abs() < 1e-9));
    }

    #[test]
    fn spin_strings_match_oracle() {
        let params = ModelParams::compass(1.0, 0.3, 6);
        let sc = SpinCorrelations::new(&ground_state(&params).unwrap()).unwrap();
        let ed = ed_ground_state(&params, Sector::Even).unwrap();
        for r in 0..=3 {
            let want = pauli_expectation(&ed.vector, &[(1, Pauli::X), (2 * r + 2, Pauli::X)])
                .unwrap()
                .re;
            assert!((sc.string_xx(r).unwrap() - want).abs() < 1e-8, "r = {r}");
        }
        assert!(matches!(sc.string_xx(4), Err(crate::Error::OutOfRange(_))));
        let paulis = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
        for (i, j) in [(0, 1), (1, 2), (0, 5), (3, 10), (7, 2)] {
            let p = sc.pauli_matrix(i, j).unwrap();
            for (a, &pa) in paulis.iter().enumerate() {
                for (b, &pb) in paulis.iter().enumerate() {
                    let want = pauli_expectation(&ed.vector, &[(i, pa), (j, pb)]).unwrap().re;
                    assert!((p[a][b] - want).abs() < 1e-8, "{i} {j} {pa:?} {pb:?}");
                }
            }
        }
    }

    #[test]
    fn two_site_entries_match_oracle() {
        let params = ModelParams::compass(0.6, 0.1, 6);
        let gs = ground_state(&params).unwrap();
        let ed = ed_ground_state(&params, Sector::Even).unwrap();
        for pair in [(0, 1), (1, 2)] {
            let c = two_site_correlators(&gs, pair).unwrap();
            let e = |ops: &[(usize, Pauli)]| pauli_expectation(&ed.vector, ops).unwrap().re;
            let (i, j) = pair;
            assert!((c.xx - e(&[(i, Pauli::X), (j, Pauli::X)])).abs() < 1e-8);
            assert!((c.yy - e(&[(i, Pauli::Y), (j, Pauli::Y)])).abs() < 1e-8);
            assert!((c.zz - e(&[(i, Pauli::Z), (j, Pauli::Z)])).abs() < 1e-8);
            assert!((c.z_i - e(&[(i, Pauli::Z)])).abs() < 1e-8);
            assert!((c.z_j - e(&[(j, Pauli::Z)])).abs() < 1e-8);
        }
    }

    #[test]
    fn zz_wick_matches_determinant() {
        let params = ModelParams::compass(0.9, 0.7, 8);
        let gs = ground_state(&params).unwrap();
        let fc = real_space_correlators(&gs).unwrap();
        let g = majorana_matrix(&fc).unwrap().gamma;
        let sc = SpinCorrelations::new(&gs).unwrap();
        for (i, j) in [(0, 1), (2, 7), (5, 6)] {
            let (a, b, c, d) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
            // σ^zσ^z = -A_iB_iA_jB_j, whose expectation is -i²Pf = Pf
            let det = g[(a, b)] * g[(c, d)] - g[(a, c)] * g[(b, d)] + g[(a, d)] * g[(b, c)];
            let zz = sc.expectation(&[(i, Pauli::Z), (j, Pauli::Z)]).unwrap();
            assert!((zz - det).abs() < 1e-10);
            assert!((sc.expectation(&[(i, Pauli::Z)]).unwrap() - (2.0 * fc.normal[(i, i)].re - 1.0)).abs() < 1e-10);
        }
    }

    #[test]
    fn dimer_string_and_parity_in_alpha() {
        let gs = ground_state(&ModelParams::compass(0.0, 0.0, 4)).unwrap();
        assert!((string_correlator_xx(&gs, 0).unwrap() - 1.0).abs() < 1e-12);
        let yy = two_site_correlators(&gs, (0, 1)).unwrap().yy;
        assert!(yy.abs() < 1e-12);

        let plus = ground_state(&ModelParams::compass(0.7, 0.4, 8)).unwrap();
        let minus = ground_state(&ModelParams::compass(-0.7, 0.4, 8)).unwrap();
        for r in 0..4 {
            let a = string_correlator_xx(&plus, r).unwrap();
            let b = string_correlator_xx(&minus, r).unwrap();
            // A sublattice rotation maps α → -α and flips odd-r strings.
            let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
            assert!((a - sign * b).abs() < 1e-10, "{r}: {a} {b}");
        }
        let a = two_site_correlators(&plus, (0, 1)).unwrap().yy;
        let b = two_site_correlators(&minus, (0, 1)).unwrap().yy;
        assert!((a + b).abs() < 1e-10);
    }

    #[test]
    fn hellmann_feynman() {
        let (alpha, h, n) = (0.8, 0.6, 8);
        let energy = |h: f64| ground_state(&ModelParams::compass(alpha, h, n)).unwrap().energy;
        let step = 1e-5;
        let de = (energy(h + step) - energy(h - step)) / (2.0 * step);
        let fc = real_space_correlators(&ground_state(&ModelParams::compass(alpha, h, n)).unwrap())
            .unwrap();
        let sz: f64 = (0..2 * n).map(|m| 2.0 * fc.normal[(m, m)].re - 1.0).sum();
        // H carries -h/2 Σσ^z.
        assert!((sz + 2.0 * de).abs() < 1e-6, "{sz} {de}");
    }

    #[test]
    fn rejects_periodic() {
        let mut params = ModelParams::compass(1.0, 0.5, 4);
        params.bc = crate::Boundary::Pbc;
        let gs = ground_state(&params).unwrap();
        assert!(matches!(
            real_space_correlators(&gs),
            Err(crate::Error::RequiresAbc(_))
        ));
    }
}
