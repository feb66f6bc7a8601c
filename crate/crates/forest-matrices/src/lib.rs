#![forbid(unsafe_code)]

//! In-forest matrices of weighted digraphs.
//!
//! An *in-forest* of a digraph is a spanning subgraph whose weak components
//! are trees, each converging to a single root. This crate computes the
//! matrices `Q_k` whose `(i, j)` entry is the total weight of k-arc
//! in-forests in which vertex `i` lies in a tree rooted at `j`, together
//! with everything that grows out of them:
//!
//! * the forest weights `sigma_k`, which are also the coefficients of the
//!   characteristic polynomial of `-L` for the digraph Laplacian `L`;
//! * the row-stochastic normalizations `J_k`, the totals `Q`, `sigma`,
//!   `J = (I + L)^{-1}`, and the parametric family `Q(tau)`;
//! * the eigenprojection `J~ = Q_{n-d} / sigma_{n-d}` of `L` at eigenvalue
//!   zero, eigenvalues from the characteristic polynomial, and eigenvectors
//!   read off the columns of `Q(-1/lambda)`;
//! * the group inverse `L^#` (four routes), the Moore-Penrose inverse
//!   `L^+`, and the dense in-forest proximity matrices `(L + alpha J~)^{-1}`;
//! * Markov-chain long-run matrices and stationary distributions through
//!   the Markov chain tree theorem, with `L = I - P`;
//! * an exhaustive enumeration oracle (`n <= 8`) that recomputes every
//!   quantity straight from the definitions for verification.
//!
//! Start with [`WeightedDigraph`] and [`ForestSpectrum`]:
//!
//! ```
//! use forest_matrices::{ForestSpectrum, WeightedDigraph};
//!
//! // path 1 -> 2 -> 3 with unit weights
//! let g = WeightedDigraph::parse_edge_list("1 2 1.0\n2 3 1.0").unwrap();
//! let s = ForestSpectrum::of_graph(&g, 1e-9).unwrap();
//! assert_eq!(s.sigmas(), &[1.0, 2.0, 1.0, 0.0]);
//! assert_eq!(s.dimension(), 1);
//! ```
//!
//! The `examples/` directory holds one runnable walkthrough per capability;
//! the thin `forestmat` binary exposes the same computations over edge-list
//! and CSV files.

pub mod cli;
pub mod error;
pub mod forest;
pub mod geninv;
pub mod graph;
pub mod linalg;
pub mod markov;
pub mod oracle;
pub mod spectral;

pub use error::{Error, Result};
pub use forest::ForestSpectrum;
pub use graph::{LaplacianMatrix, WeightedDigraph};
pub use linalg::Matrix;
pub use markov::StochasticMatrix;
pub use spectral::EigenData;
