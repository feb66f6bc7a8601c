//! Computes the forest spectrum of a small digraph: the weights sigma_k of
//! k-arc in-forests and the matrices Q_k whose (i, j) entry is the weight of
//! k-arc in-forests where i lies in a tree rooted at j.
//!
//! Run with: cargo run --example spectrum

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
    // a 4-vertex digraph with two weighted cycles feeding a sink
    let g = WeightedDigraph::parse_edge_list(
        "n=4
         1 2 2.0
         2 1 0.5
         2 3 1.0
         3 4 0.25
         4 3 1.5",
    )?;

    println!(
        "digraph: {} vertices, {} arcs, in-forest dimension d = {}",
        g.n(),
        g.arcs().len(),
        g.forest_dimension()
    );
    show("Laplacian L", g.laplacian().as_matrix());

    let s = ForestSpectrum::of_graph(&g, 1e-9)?;
    println!("\nforest weights sigma_0..sigma_n: {:?}", s.sigmas());
    println!("(sigma_k vanishes for k > n - d = {})", s.max_forest_arcs());

    for k in 0..=s.max_forest_arcs() {
        println!();
        show(&format!("Q_{k} (weight {})", s.sigma(k)), s.q(k));
    }

    // every row of Q_k sums to sigma_k, and tr Q_k = (n - k) sigma_k
    let k = s.max_forest_arcs();
    let row_sum: f64 = s.q(k).row(0).iter().sum();
    println!("\nrow sum of Q_{k} = {row_sum} = sigma_{k}");
    println!("tr Q_{k} = {} = (n - k) sigma_{k}", s.q(k).trace()?);
    Ok(())
}
