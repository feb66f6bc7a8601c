//! Heavier seeded sweeps of the same invariants the acceptance suite pins.
//! Ignored by default; run with `cargo test --test stress -- --ignored`.

mod common;

use forest_matrices::error::Error;
use forest_matrices::forest::ForestSpectrum;
use forest_matrices::geninv;
use forest_matrices::linalg::{rel_eps, DEFAULT_TOL};
use forest_matrices::markov;
use forest_matrices::oracle;
use forest_matrices::spectral;
use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::random_digraph;

#[test]
#[ignore = "heavy sweep; run with --ignored"]
fn oracle_equivalence_wide_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xD15EA5E);
    for round in 0..2000 {
        let n = 2 + round % 5; // up to n = 6
        let g = random_digraph(&mut rng, n, 0.5, 0.1, 10.0);
        let computed = ForestSpectrum::of_graph(&g, DEFAULT_TOL).unwrap();
        let reference = oracle::oracle_forest_spectrum(&g).unwrap();
        assert_eq!(computed.dimension(), reference.dimension());
        let scale = reference
            .sigmas()
            .iter()
            .fold(0.0f64, |a, s| a.max(s.abs()))
            .max((0..=n).fold(0.0f64, |a, k| a.max(reference.q(k).max_abs())));
        for k in 0..=n {
            assert!(
                (computed.sigma(k) - reference.sigma(k)).abs() <= rel_eps(1e-9, scale),
                "sigma_{k} mismatch (round {round})"
            );
            let diff = computed.q(k).sub(reference.q(k)).unwrap().max_abs();
            assert!(
                diff <= rel_eps(1e-9, scale),
                "Q_{k} mismatch (round {round})"
            );
        }
    }
}

#[test]
#[ignore = "heavy sweep; run with --ignored"]
fn eigen_sweep_up_to_n8() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xE16E);
    for round in 0..400 {
        let n = 2 + round % 7;
        let g = random_digraph(&mut rng, n, 0.5, 0.1, 10.0);
        let lap = g.laplacian();
        let s = ForestSpectrum::of_graph(&g, DEFAULT_TOL).unwrap();
        let eig = spectral::eigen_data(&s).unwrap();

        let mut elementary = vec![Complex64::new(0.0, 0.0); n + 1];
        elementary[0] = Complex64::new(1.0, 0.0);
        for (i, lambda) in eig.eigenvalues.iter().enumerate() {
            for j in (1..=i + 1).rev() {
                let add = elementary[j - 1] * lambda;
                elementary[j] += add;
            }
        }
        let sigma_scale = s.sigmas().iter().fold(1.0f64, |a, x| a.max(x.abs()));
        for (k, e_k) in elementary.iter().enumerate() {
            assert!(
                (e_k.re - s.sigma(k)).abs() <= 1e-6 * sigma_scale,
                "round {round}: e_{k} = {} vs sigma_{k} = {}",
                e_k.re,
                s.sigma(k)
            );
        }

        let mut seen: Vec<Complex64> = Vec::new();
        for lambda in &eig.eigenvalues {
            if lambda.norm() <= 1e-9 || seen.iter().any(|z| (z - lambda).norm() <= 1e-12) {
                continue;
            }
            seen.push(*lambda);
            match spectral::eigenvectors_from_forests(&s, &lap, *lambda, DEFAULT_TOL) {
                Ok(vectors) => {
                    for v in &vectors {
                        assert!(v.residual <= 1e-6, "round {round}: residual {}", v.residual);
                    }
                }
                Err(Error::NoEigenvectorColumns) => {}
                Err(e) => panic!("round {round}: {e}"),
            }
        }
    }
}

#[test]
#[ignore = "heavy sweep; run with --ignored"]
fn generalized_inverse_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6E41);
    for round in 0..500 {
        let n = 2 + round % 6;
        let g = random_digraph(&mut rng, n, 0.5, 0.1, 10.0);
        let lap = g.laplacian();
        let s = ForestSpectrum::of_graph(&g, DEFAULT_TOL).unwrap();
        let report = geninv::generalized_inverse_report(&s, &lap, 1.0, 1e4, DEFAULT_TOL).unwrap();
        let scale = lap.as_matrix().max_abs().max(1.0);
        let x_scale = report.by_forest.max_abs().max(1.0);
        for other in [&report.by_perturbation, &report.by_projection] {
            let diff = report.by_forest.sub(other).unwrap().max_abs();
            assert!(
                diff <= rel_eps(1e-8, x_scale),
                "round {round}: routes differ"
            );
        }
        assert!(report.group_residuals.axa <= rel_eps(1e-9, scale));
        assert!(report.group_residuals.xax <= rel_eps(1e-9, x_scale));
        assert!(report.penrose_residuals.ax_symmetry <= rel_eps(1e-9, scale));
    }
}

#[test]
#[ignore = "heavy sweep; run with --ignored"]
fn markov_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3A4C0F);
    for round in 0..300 {
        let n = 2 + round % 7;
        let p = common::random_unichain(&mut rng, n);
        let pi = markov::stationary_distribution(&p, DEFAULT_TOL).unwrap();
        for j in 0..n {
            let propagated: f64 = (0..n).map(|i| pi[i] * p.as_matrix()[(i, j)]).sum();
            assert!((propagated - pi[j]).abs() <= 1e-10, "round {round}");
        }
        let long_run = markov::long_run_matrix(&p, DEFAULT_TOL).unwrap();
        let cesaro = markov::cesaro_average(&p, 100_000).unwrap();
        assert!(
            long_run.sub(&cesaro).unwrap().max_abs() <= 1e-3,
            "round {round}"
        );
    }
}
