use proptest::prelude::*;
use tfcompass::correlations::{pfaffian, two_site_correlators};
use tfcompass::ed::{ed_ground_state, Sector};
use tfcompass::observables::{block_entropy, fidelity, two_site_density_matrix, Direction};
use tfcompass::solver::{energy_gap, ground_state, spectra_n4};
use tfcompass::{Boundary, ModelParams};

fn cells() -> impl Strategy<Value = usize> {
    (1usize..=6).prop_map(|k| 2 * k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn energy_even_in_alpha_and_extensive_bound(a in -2.0..2.0f64, h in -1.5..1.5f64, n in cells()) {
        let plus = ground_state(&ModelParams::compass(a, h, n)).unwrap().energy;
        let minus = ground_state(&ModelParams::compass(-a, h, n)).unwrap().energy;
        let flipped = ground_state(&ModelParams::compass(a, -h, n)).unwrap().energy;
        prop_assert!((plus - minus).abs() < 1e-10);
        prop_assert!((plus - flipped).abs() < 1e-10);
        // Each two-site cell contributes at most the norm of its terms.
        let bound = n as f64 * 2.0 * (1.0 + a.abs() + h.abs());
        prop_assert!(plus <= 0.0 && plus >= -bound);
    }

    #[test]
    fn small_chains_match_ed(a in -2.0..2.0f64, h in 0.05..1.5f64, pbc in any::<bool>()) {
        let bc = if pbc { Boundary::Pbc } else { Boundary::Abc };
        let sector = if pbc { Sector::Odd } else { Sector::Even };
        let p = ModelParams::compass(a, h, 4).with_bc(bc);
        let e = ground_state(&p).unwrap().energy;
        prop_assert!((e - ed_ground_state(&p, sector).unwrap().energy).abs() < 1e-10);
    }

    #[test]
    fn n4_spectrum_is_traceless_and_symmetric(a in -2.0..2.0f64, h in 0.0..2.0f64) {
        let mut s = spectra_n4(&ModelParams::compass(a, h, 2)).to_vec();
        s.sort_by(f64::total_cmp);
        let trace: f64 = s.iter().sum();
        prop_assert!(trace.abs() < 1e-10);
        for k in 0..8 {
            prop_assert!((s[k] + s[15 - k]).abs() < 1e-10);
        }
    }

    #[test]
    fn gap_is_nonnegative(a in -2.0..2.0f64, h in -2.0..2.0f64) {
        prop_assert!(energy_gap(&ModelParams::compass(a, h, 10)) >= 0.0);
    }

    #[test]
    fn fidelity_is_a_probability(a in -1.8..1.8f64, h in 0.05..1.0f64, d in 1e-4..5e-2f64) {
        let p = ModelParams::compass(a, h, 20);
        for dir in [Direction::Alpha, Direction::H] {
            let f = fidelity(&p, dir, d).unwrap().fidelity;
            prop_assert!(f > 0.0 && f <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn density_matrix_is_physical(a in -2.0..2.0f64, h in 0.05..1.5f64, i in 0usize..8, gap in 1usize..8) {
        let gs = ground_state(&ModelParams::compass(a, h, 8)).unwrap();
        let j = (i + gap).min(15);
        let rho = two_site_density_matrix(&gs, (i, j)).unwrap();
        prop_assert!(rho.sparsity_defect() < 1e-10);
        prop_assert!(rho.eigenvalues().iter().all(|&l| l > -1e-9));
        let c = rho.concurrence().unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&c));
        let t = two_site_correlators(&gs, (i, j)).unwrap();
        for v in [t.xx, t.yy, t.zz, t.z_i, t.z_j] {
            prop_assert!(v.abs() <= 1.0 + 1e-10);
        }
    }

    #[test]
    fn entropy_bounded_and_reflection_symmetric(a in -2.0..2.0f64, h in 0.05..1.5f64, l in 1usize..12) {
        let gs = ground_state(&ModelParams::compass(a, h, 6)).unwrap();
        let s = block_entropy(&gs, l).unwrap();
        prop_assert!(s >= -1e-12 && s <= l.min(12 - l) as f64 + 1e-9);
        prop_assert!((s - block_entropy(&gs, 12 - l).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn pfaffian_squares_to_determinant(seed in any::<u64>(), k in 1usize..5) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = 2 * k;
        let mut m = nalgebra::DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let x: f64 = rng.random_range(-1.0..1.0);
                m[(i, j)] = x;
                m[(j, i)] = -x;
            }
        }
        let pf = pfaffian(&m).unwrap();
        let det = m.determinant();
        prop_assert!((pf * pf - det).abs() < 1e-10 * (1.0 + det.abs()));
    }
}
