//! The normalized (row-stochastic) forest matrices J_k, the totals
//! Q = sum Q_k with J = Q / sigma = (I + L)^{-1}, and the parametric family
//! Q(tau) obtained by scaling every arc weight by tau.
//!
//! Run with: cargo run --example forest_matrices

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
    let g = WeightedDigraph::parse_edge_list("1 2 1.0\n2 1 1.0\n2 3 2.0\n3 2 1.0")?;
    let s = ForestSpectrum::of_graph(&g, 1e-9)?;

    for k in 0..=s.max_forest_arcs() {
        show(&format!("J_{k} = Q_{k} / sigma_{k}"), &s.normalized(k)?);
    }

    let totals = s.totals();
    println!("\ntotal forest weight sigma = {}", totals.weight);
    show("J = Q / sigma", &totals.normalized);

    // J is exactly the inverse of I + L
    let check = Matrix::identity(g.n())
        .add(g.laplacian().as_matrix())?
        .matmul(&totals.normalized)?;
    show("(I + L) J  (identity check)", &check);

    // the parametric family: tau scales every arc weight
    for tau in [0.1, 1.0, 10.0] {
        let p = s.parametric(tau)?;
        println!("\ntau = {tau}: sigma(tau) = {}", p.weight);
        show(&format!("J({tau})"), &p.normalized);
    }

    println!(
        "\ncumulative weights s_k (at most k arcs): {:?}",
        s.partial_sums()
    );
    println!(
        "cumulative weights s_k(2):                {:?}",
        s.partial_sums_tau(2.0)
    );
    Ok(())
}
