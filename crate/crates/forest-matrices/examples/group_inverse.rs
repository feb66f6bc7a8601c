//! The group inverse L^# of the Laplacian by four routes, the group-inverse
//! axioms, and the eigenprojection identity J~ = I - L L^#.
//!
//! Run with: cargo run --example group_inverse

use forest_matrices::geninv::{
    eigenprojection_identity, generalized_inverse_report, group_inverse_tau_limit,
};
use forest_matrices::linalg::Matrix;
use forest_matrices::spectral::max_forest_projection;
use forest_matrices::{ForestSpectrum, Result, WeightedDigraph};

fn show(label: &str, m: &Matrix) {
    println!("{label}:");
    for i in 0..m.rows() {
        print!("   ");
        for j in 0..m.cols() {
            print!(" {:8.4}", m[(i, j)]);
        }
        println!();
    }
}

fn main() -> Result<()> {
    let g = WeightedDigraph::parse_edge_list("1 2 1.0\n2 3 1.0\n3 1 0.5\n1 3 2.0")?;
    let lap = g.laplacian();
    let s = ForestSpectrum::of_graph(&g, 1e-9)?;

    let report = generalized_inverse_report(&s, &lap, 1.0, 1e4, 1e-9)?;
    show("L^# by the forest formula", &report.by_forest);

    let diff_perturb = report.by_forest.sub(&report.by_perturbation)?.max_abs();
    let diff_project = report.by_forest.sub(&report.by_projection)?.max_abs();
    println!("\nagreement across routes (max-abs difference):");
    println!("  (L + aJ~)^-1 - a^-1 J~        : {diff_perturb:e}");
    println!("  (L + aJ~)^-1 (I - J~)         : {diff_project:e}");
    for tau in [1e2, 1e3, 1e4] {
        let err = group_inverse_tau_limit(&s, tau)?
            .sub(&report.by_forest)?
            .max_abs();
        println!("  tau (J(tau) - J~) at tau = {tau:>5}: {err:e}  (O(1/tau) limit)");
    }

    println!("\ngroup axiom residuals:");
    println!("  ||L X L - L||  = {:e}", report.group_residuals.axa);
    println!("  ||X L X - X||  = {:e}", report.group_residuals.xax);
    println!("  ||L X - X L||  = {:e}", report.group_residuals.commute);

    let jt = max_forest_projection(&s);
    let identity = eigenprojection_identity(&lap, &report.by_forest)?;
    println!(
        "\n||(I - L L^#) - J~|| = {:e}  (the eigenprojection identity)",
        identity.sub(&jt)?.max_abs()
    );
    Ok(())
}
