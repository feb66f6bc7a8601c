//! Markov-chain front end. A transition matrix `P` defines the loop-free
//! weighted digraph whose arc weights are the off-diagonal transition
//! probabilities; its Laplacian is `I - P`, and the normalized matrix of
//! maximum in-forests of that digraph is the long-run transition matrix
//! `P^inf = lim (1/k) sum_{t<k} P^t` (the Markov chain tree theorem). With a
//! single sink component the common row of `P^inf` is the stationary
//! distribution.

use crate::error::{Error, Result};
use crate::forest::ForestSpectrum;
use crate::graph::{LaplacianMatrix, WeightedDigraph};
use crate::linalg::Matrix;
use crate::spectral::max_forest_projection;

/// Row-sum validation tolerance for transition matrices.
pub const ROW_SUM_TOL: f64 = 1e-8;

/// Entry-range validation tolerance.
pub const ENTRY_TOL: f64 = 1e-12;

/// Row-stochastic transition matrix: entries in `[0, 1]`, rows summing to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct StochasticMatrix(Matrix);

impl StochasticMatrix {
    /// Validates entry ranges (within `1e-12`) and row sums (within `1e-8`).
    pub fn new(m: Matrix) -> Result<Self> {
        Self::build(m, false)
    }

    /// Like `new`, but renormalizes each row to sum exactly to 1 after
    /// validation. Off by default everywhere else: silent renormalization
    /// hides data errors.
    pub fn new_renormalized(m: Matrix) -> Result<Self> {
        Self::build(m, true)
    }

    fn build(mut m: Matrix, renormalize: bool) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidInput(
                "transition matrix must be square".into(),
            ));
        }
        let n = m.rows();
        for i in 0..n {
            let mut row_sum = 0.0;
            for j in 0..n {
                let p = m[(i, j)];
                if !(-ENTRY_TOL..=1.0 + ENTRY_TOL).contains(&p) {
                    return Err(Error::InvalidInput(format!(
                        "transition probability {p} at ({}, {}) outside [0, 1]",
                        i + 1,
                        j + 1
                    )));
                }
                row_sum += p;
            }
            if (row_sum - 1.0).abs() > ROW_SUM_TOL {
                return Err(Error::InvalidInput(format!(
                    "row {} sums to {row_sum}, not 1",
                    i + 1
                )));
            }
            if renormalize {
                for j in 0..n {
                    m[(i, j)] /= row_sum;
                }
            }
        }
        Ok(StochasticMatrix(m))
    }

    /// Parses CSV input: `n` lines of `n` comma-separated probabilities;
    /// `#` comment lines are permitted.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw_line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row: Vec<f64> = line
                .split(',')
                .map(|field| {
                    field.trim().parse::<f64>().map_err(|_| Error::Parse {
                        line: line_no,
                        message: format!("malformed probability `{}`", field.trim()),
                    })
                })
                .collect::<Result<_>>()?;
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "empty transition matrix".into(),
            });
        }
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse {
                line: 0,
                message: format!("expected {n} values per row for an {n}x{n} matrix"),
            });
        }
        let data: Vec<f64> = rows.into_iter().flatten().collect();
        StochasticMatrix::new(Matrix::from_vec(n, n, data)?)
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    /// The loop-free weighted digraph of the chain: an arc `i -> j` with
    /// weight `p_ij` for every off-diagonal positive probability. Self-loop
    /// probability is legal in `P` and simply does not generate an arc.
    pub fn digraph(&self) -> WeightedDigraph {
        let n = self.n();
        let mut arcs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.0[(i, j)] > 0.0 {
                    arcs.push((i + 1, j + 1, self.0[(i, j)]));
                }
            }
        }
        WeightedDigraph::new(n, arcs).expect("valid by construction")
    }
}

/// Laplacian `I - P` of the chain digraph. Built from the digraph so the
/// row sums vanish exactly even when the rows of `P` carry validation-level
/// error; with exact rows this is entrywise `I - P` off the diagonal.
pub fn chain_laplacian(p: &StochasticMatrix) -> LaplacianMatrix {
    p.digraph().laplacian()
}

/// Long-run transition matrix `P^inf`: the eigenprojection of `I - P`,
/// which the tree theorem identifies with the normalized matrix of maximum
/// in-forests of the chain digraph.
pub fn long_run_matrix(p: &StochasticMatrix, tol: f64) -> Result<Matrix> {
    let g = p.digraph();
    let spectrum = ForestSpectrum::compute(&g.laplacian(), g.forest_dimension(), tol)?;
    Ok(max_forest_projection(&spectrum))
}

/// Stationary distribution of a unichain: the common row of `P^inf`.
/// Multichain input (more than one sink component) is an error because the
/// long-run behavior then depends on the starting state.
pub fn stationary_distribution(p: &StochasticMatrix, tol: f64) -> Result<Vec<f64>> {
    let g = p.digraph();
    let d = g.forest_dimension();
    if d != 1 {
        return Err(Error::Multichain { d });
    }
    let long_run = long_run_matrix(p, tol)?;
    Ok(long_run.row(0).to_vec())
}

/// Cesaro average `(1/k) sum_{t=0}^{k-1} P^t`, the defining limit of
/// `P^inf`; a diagnostic oracle for `long_run_matrix`. Computed by binary
/// splitting so large `k` stays cheap.
pub fn cesaro_average(p: &StochasticMatrix, k: u64) -> Result<Matrix> {
    if k == 0 {
        return Err(Error::InvalidInput("cesaro average requires k >= 1".into()));
    }
    let (sum, _) = power_sum(p.as_matrix(), k)?;
    sum.scale(1.0 / k as f64)
}

/// Returns `(sum_{t=0}^{k-1} P^t, P^k)`.
fn power_sum(p: &Matrix, k: u64) -> Result<(Matrix, Matrix)> {
    if k == 1 {
        return Ok((Matrix::identity(p.rows()), p.clone()));
    }
    if k.is_multiple_of(2) {
        let (s, pw) = power_sum(p, k / 2)?;
        let sum = s.add(&pw.matmul(&s)?)?;
        Ok((sum, pw.matmul(&pw)?))
    } else {
        let (s, pw) = power_sum(p, k - 1)?;
        Ok((s.add(&pw)?, pw.matmul(p)?))
    }
}
