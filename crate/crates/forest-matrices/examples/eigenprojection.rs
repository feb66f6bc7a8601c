//! The normalized matrix of maximum in-forests J~ = Q_{n-d} / sigma_{n-d}:
//! the eigenprojection of the Laplacian at eigenvalue zero. It annihilates
//! L on both sides, is idempotent, has trace and rank d, and is the limit
//! of (I + tau L)^{-1} as tau grows.
//!
//! Run with: cargo run --example eigenprojection

use forest_matrices::linalg::Matrix;
use forest_matrices::spectral::{max_forest_projection, projection_limit_check};
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
    // two sink components: vertices {3} and {4, 5}
    let g = WeightedDigraph::parse_edge_list(
        "n=5
         1 2 1.0
         2 3 3.0
         1 4 0.5
         4 5 1.0
         5 4 2.0",
    )?;
    let s = ForestSpectrum::of_graph(&g, 1e-9)?;
    let l = g.laplacian();
    println!("in-forest dimension d = {}", s.dimension());

    let jt = max_forest_projection(&s);
    show("eigenprojection J~", &jt);

    println!("\n||L J~||   = {:e}", l.as_matrix().matmul(&jt)?.max_abs());
    println!("||J~ L||   = {:e}", jt.matmul(l.as_matrix())?.max_abs());
    println!("||J~^2-J~|| = {:e}", jt.matmul(&jt)?.sub(&jt)?.max_abs());
    println!("tr J~      = {} (= d)", jt.trace()?);
    println!("rank J~    = {} (= d)", jt.numeric_rank(1e-9));

    println!("\nconvergence of J(tau) to J~ (max-abs distance):");
    for tau in [1.0, 10.0, 100.0, 1000.0] {
        println!("  tau = {tau:>6}: {:e}", projection_limit_check(&s, tau)?);
    }
    Ok(())
}
