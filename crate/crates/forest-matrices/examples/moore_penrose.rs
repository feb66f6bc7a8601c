//! The Moore-Penrose inverse L^+ = L^T (J~^T J~ + L L^T)^{-1} and its four
//! defining conditions. For a symmetric Laplacian (an undirected graph
//! encoded as a symmetric digraph) L^+ coincides with the group inverse.
//!
//! Run with: cargo run --example moore_penrose

use forest_matrices::geninv::{group_inverse_forest, moore_penrose, penrose_axiom_residuals};
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

fn report(g: &WeightedDigraph) -> Result<()> {
    let lap = g.laplacian();
    let s = ForestSpectrum::of_graph(g, 1e-9)?;
    let jt = max_forest_projection(&s);
    let mp = moore_penrose(&lap, &jt, 1e-9)?;
    show("L^+", &mp);
    let r = penrose_axiom_residuals(&lap, &mp)?;
    println!("  ||L X L - L||     = {:e}", r.axa);
    println!("  ||X L X - X||     = {:e}", r.xax);
    println!("  ||LX - (LX)^T||   = {:e}", r.ax_symmetry);
    println!("  ||XL - (XL)^T||   = {:e}", r.xa_symmetry);
    let group = group_inverse_forest(&s)?;
    println!("  ||L^+ - L^#||     = {:e}", mp.sub(&group)?.max_abs());
    Ok(())
}

fn main() -> Result<()> {
    println!("directed case (L^+ and L^# differ):");
    report(&WeightedDigraph::parse_edge_list("1 2 2.0")?)?;

    println!("\nsymmetric case (L^+ = L^#):");
    report(&WeightedDigraph::parse_edge_list(
        "1 2 1.0\n2 1 1.0\n2 3 2.0\n3 2 2.0",
    )?)?;
    Ok(())
}
