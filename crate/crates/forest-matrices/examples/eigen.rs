//! The characteristic polynomial of -L has the forest weights sigma_k as
//! its coefficients, so eigenvalues of L come straight from the forest
//! spectrum; eigenvectors for a nonzero eigenvalue are the nonzero columns
//! of Q(-1/lambda).
//!
//! Run with: cargo run --example eigen

use forest_matrices::spectral::{
    char_poly, eigenvectors_from_forests, laplacian_eigenvalues, null_space_basis,
};
use forest_matrices::{ForestSpectrum, Result, WeightedDigraph};

fn main() -> Result<()> {
    // a 3-cycle: genuinely complex spectrum
    let g = WeightedDigraph::parse_edge_list("1 2 1.0\n2 3 1.0\n3 1 1.0")?;
    let lap = g.laplacian();
    let s = ForestSpectrum::of_graph(&g, 1e-9)?;

    let eig = char_poly(&s);
    print!("characteristic polynomial of -L: phi(x) =");
    let n = g.n();
    for (k, c) in eig.coeffs.iter().enumerate() {
        if *c != 0.0 {
            print!(" + {c} x^{}", n - k);
        }
    }
    println!();

    let eig = laplacian_eigenvalues(&eig)?;
    println!("\neigenvalues of L (re, im) with residuals |phi(-lambda)|:");
    for (lambda, residual) in eig.eigenvalues.iter().zip(&eig.residuals) {
        println!(
            "  {:10.6} {:+10.6}i   residual {:e}",
            lambda.re, lambda.im, residual
        );
    }

    println!("\neigenvectors from the columns of Q(-1/lambda):");
    for lambda in &eig.eigenvalues {
        if lambda.norm() <= 1e-9 {
            continue;
        }
        let vectors = eigenvectors_from_forests(&s, &lap, *lambda, 1e-9)?;
        println!("  lambda = {:.6} {:+.6}i:", lambda.re, lambda.im);
        let v = &vectors[0];
        for component in &v.vector {
            println!("    {:10.6} {:+10.6}i", component.re, component.im);
        }
        println!(
            "    (residual {:e}, {} independent column(s))",
            v.residual,
            vectors.len()
        );
        // conjugate eigenvalues repeat; one of each pair is enough here
        break;
    }

    let basis = null_space_basis(&s, &lap, 1e-9)?;
    println!(
        "\nnull-space basis from the eigenprojection columns ({} vector(s)):",
        basis.len()
    );
    for v in &basis {
        println!("  {v:?}");
    }
    Ok(())
}
