//! Polynomial structure around the Laplacian: each Q_k is a polynomial in
//! -L with the sigma coefficients, and conversely every power (-L)^m is a
//! fixed linear combination of the Q_k whose coefficients alpha_k do not
//! depend on m. L Q_k is itself the Laplacian of a digraph, the "digraph of
//! (k+1)-arc in-forests".
//!
//! Run with: cargo run --example laplacian_powers

use forest_matrices::forest::{
    forest_digraph_laplacian, forest_matrix_from_polynomial, laplacian_power_from_forests,
    power_coefficient_partition_sum, power_expansion_coefficients,
};
use forest_matrices::linalg::Matrix;
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
    let g = WeightedDigraph::parse_edge_list("1 2 1.0\n2 3 1.0\n3 2 0.5")?;
    let lap = g.laplacian();
    let s = ForestSpectrum::of_graph(&g, 1e-9)?;
    let n = g.n();

    println!("Q_k as Horner polynomials in -L (difference from the recursion):");
    for k in 0..=n {
        let rebuilt = forest_matrix_from_polynomial(&lap, s.sigmas(), k)?;
        println!("  k = {k}: {:e}", rebuilt.sub(s.q(k))?.max_abs());
    }

    let alpha = power_expansion_coefficients(s.sigmas(), n);
    println!("\nexpansion coefficients alpha = {alpha:?}");
    println!("partition-sum cross-check:");
    for (k, a) in alpha.iter().enumerate() {
        let partitions = power_coefficient_partition_sum(s.sigmas(), k)?;
        println!("  alpha_{k} = {a}  vs  {partitions}");
    }

    println!("\n(-L)^m rebuilt from the forest basis:");
    let neg_l = lap.as_matrix().scale(-1.0)?;
    let mut direct = Matrix::identity(n);
    for exponent in 0..=n {
        let rebuilt = laplacian_power_from_forests(&s, exponent)?;
        println!("  m = {exponent}: {:e}", rebuilt.sub(&direct)?.max_abs());
        direct = direct.matmul(&neg_l)?;
    }

    println!();
    show(
        "L itself (the digraph of 1-arc forests)",
        forest_digraph_laplacian(&s, &lap, 0, 1e-9)?.as_matrix(),
    );
    show(
        "Laplacian of the digraph of 2-arc forests, L Q_1",
        forest_digraph_laplacian(&s, &lap, 1, 1e-9)?.as_matrix(),
    );
    Ok(())
}
