//! Markov chains through the tree theorem: the long-run transition matrix
//! P^inf is the normalized maximum in-forest matrix of the chain digraph
//! (with L = I - P), and for a unichain its common row is the stationary
//! distribution. The Cesaro average (1/k) sum P^t converges to the same
//! matrix, which makes a handy numerical cross-check.
//!
//! Run with: cargo run --example markov_chain

use forest_matrices::linalg::Matrix;
use forest_matrices::markov::{
    cesaro_average, chain_laplacian, long_run_matrix, stationary_distribution,
};
use forest_matrices::{Result, StochasticMatrix};

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
    let p = StochasticMatrix::parse_csv(
        "0.50, 0.30, 0.20
         0.10, 0.60, 0.30
         0.25, 0.25, 0.50",
    )?;
    show("transition matrix P", p.as_matrix());
    show("chain Laplacian I - P", chain_laplacian(&p).as_matrix());

    let pi = stationary_distribution(&p, 1e-9)?;
    println!("\nstationary distribution pi = {pi:?}");
    let propagated = p.as_matrix().transpose().mul_vec(&pi)?;
    println!("pi P                       = {propagated:?}");

    let p_inf = long_run_matrix(&p, 1e-9)?;
    show("\nlong-run matrix P^inf (tree theorem)", &p_inf);
    for k in [10u64, 1000, 100_000] {
        let avg = cesaro_average(&p, k)?;
        println!(
            "  ||P^inf - cesaro({k:>6})|| = {:e}",
            p_inf.sub(&avg)?.max_abs()
        );
    }

    // a periodic chain still has a Cesaro limit
    let flip = StochasticMatrix::parse_csv("0, 1\n1, 0")?;
    show(
        "\nperiodic two-state chain: P^inf",
        &long_run_matrix(&flip, 1e-9)?,
    );

    // multichain: no unique stationary distribution
    let absorbing = StochasticMatrix::parse_csv("1, 0\n0, 1")?;
    match stationary_distribution(&absorbing, 1e-9) {
        Err(e) => println!("\ntwo absorbing states: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
