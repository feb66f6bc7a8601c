//! Exhaustive combinatorial ground truth. Enumerates every in-forest of a
//! small digraph directly from the definition (each vertex keeps at most one
//! outgoing arc, no directed cycle) and recomputes the forest spectrum, the
//! classical tree/forest minor theorems, and the adjugate identity without
//! touching the recursion that the rest of the crate uses.

use crate::error::{Error, Result};
use crate::forest::ForestSpectrum;
use crate::graph::{LaplacianMatrix, WeightedDigraph};
use crate::linalg::{rel_eps, Matrix};

/// Enumeration is exponential in the vertex count, so it is capped hard.
pub const MAX_ORACLE_VERTICES: usize = 8;

/// One spanning converging forest: the chosen arc ids, its weight, and the
/// root that each vertex converges to.
#[derive(Clone, Debug)]
pub struct OracleForest {
    /// Indices into `WeightedDigraph::arcs()`, ascending.
    pub arc_ids: Vec<usize>,
    /// Same arc ids as a bitmask; the canonical sort key.
    pub mask: u64,
    /// Product of arc weights (1 for the empty forest).
    pub weight: f64,
    /// `roots[v]` is the 1-based root of the tree containing vertex `v + 1`.
    pub roots: Vec<usize>,
}

impl OracleForest {
    pub fn arc_count(&self) -> usize {
        self.arc_ids.len()
    }

    /// The set of tree roots, sorted.
    pub fn root_set(&self) -> Vec<usize> {
        let mut roots: Vec<usize> = self.roots.clone();
        roots.sort_unstable();
        roots.dedup();
        roots
    }
}

/// All in-forests of a digraph, sorted by arc-id bitmask.
#[derive(Clone, Debug)]
pub struct ForestEnumeration {
    n: usize,
    pub forests: Vec<OracleForest>,
}

impl ForestEnumeration {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest arc count over all forests; equals `n - d`.
    pub fn max_arc_count(&self) -> usize {
        self.forests
            .iter()
            .map(|f| f.arc_count())
            .max()
            .unwrap_or(0)
    }

    /// Total weight of forests whose root set is exactly `roots`
    /// (1-based, sorted).
    pub fn weight_with_root_set(&self, roots: &[usize]) -> f64 {
        self.forests
            .iter()
            .filter(|f| f.root_set() == roots)
            .map(|f| f.weight)
            .sum()
    }
}

/// Enumerates all spanning converging forests of `g`.
///
/// Iterates over every function that assigns each vertex either no outgoing
/// arc or one of its existing outgoing arcs, then rejects configurations
/// with a directed cycle; this bounds the work at
/// `prod_v (outdeg(v) + 1)` rather than `2^|E|`.
pub fn enumerate_in_forests(g: &WeightedDigraph) -> Result<ForestEnumeration> {
    let n = g.n();
    if n > MAX_ORACLE_VERTICES {
        return Err(Error::SizeLimit {
            n,
            max: MAX_ORACLE_VERTICES,
        });
    }
    // arcs are sorted by (tail, head), so per-vertex choice lists carry
    // ascending arc ids and chosen ids come out ascending by construction
    let mut choices: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (id, arc) in g.arcs().iter().enumerate() {
        choices[arc.tail - 1].push(id);
    }

    let mut forests = Vec::new();
    let mut chosen: Vec<Option<usize>> = vec![None; n];
    enumerate_rec(g, &choices, &mut chosen, 0, &mut forests);
    forests.sort_by_key(|f| f.mask);
    Ok(ForestEnumeration { n, forests })
}

fn enumerate_rec(
    g: &WeightedDigraph,
    choices: &[Vec<usize>],
    chosen: &mut Vec<Option<usize>>,
    v: usize,
    out: &mut Vec<OracleForest>,
) {
    let n = g.n();
    if v == n {
        if let Some(roots) = roots_if_acyclic(g, chosen) {
            let arc_ids: Vec<usize> = chosen.iter().flatten().copied().collect();
            let weight = arc_ids.iter().map(|&id| g.arcs()[id].weight).product();
            let mask = arc_ids.iter().fold(0u64, |m, &id| m | (1 << id));
            out.push(OracleForest {
                arc_ids,
                mask,
                weight,
                roots,
            });
        }
        return;
    }
    chosen[v] = None;
    enumerate_rec(g, choices, chosen, v + 1, out);
    for &id in &choices[v] {
        chosen[v] = Some(id);
        enumerate_rec(g, choices, chosen, v + 1, out);
    }
    chosen[v] = None;
}

/// Follows the unique outgoing arc chain from every vertex; returns the
/// 1-based root assignment, or `None` when a directed cycle exists.
fn roots_if_acyclic(g: &WeightedDigraph, chosen: &[Option<usize>]) -> Option<Vec<usize>> {
    let n = g.n();
    let succ: Vec<Option<usize>> = chosen
        .iter()
        .map(|c| c.map(|id| g.arcs()[id].head - 1))
        .collect();
    // 0 = unvisited, 1 = on current chain, 2 = resolved
    let mut state = vec![0u8; n];
    let mut root = vec![0usize; n];
    for start in 0..n {
        if state[start] == 2 {
            continue;
        }
        let mut chain = Vec::new();
        let mut v = start;
        loop {
            if state[v] == 1 {
                return None; // rejoined the current chain: cycle
            }
            if state[v] == 2 {
                break;
            }
            state[v] = 1;
            chain.push(v);
            match succ[v] {
                Some(w) => v = w,
                None => {
                    root[v] = v + 1;
                    state[v] = 2;
                    chain.pop();
                    break;
                }
            }
        }
        let r = root[v];
        for u in chain {
            root[u] = r;
            state[u] = 2;
        }
    }
    Some(root)
}

/// Forest spectrum recomputed from the enumeration: `sigma_k` sums the
/// weights of k-arc forests and the `(i, j)` entry of `Q_k` sums the weights
/// of k-arc forests whose root assignment sends `i` to `j`.
pub fn oracle_forest_spectrum(g: &WeightedDigraph) -> Result<ForestSpectrum> {
    let enumeration = enumerate_in_forests(g)?;
    let n = g.n();
    let d = n - enumeration.max_arc_count();
    let mut sigma = vec![0.0; n + 1];
    let mut q: Vec<Matrix> = (0..=n).map(|_| Matrix::zeros(n, n)).collect();
    for forest in &enumeration.forests {
        let k = forest.arc_count();
        sigma[k] += forest.weight;
        for (v, &r) in forest.roots.iter().enumerate() {
            q[k][(v, r - 1)] += forest.weight;
        }
    }
    Ok(ForestSpectrum::from_parts(n, d, sigma, q))
}

/// Matrix-tree check: the principal minor of `L` with rows and columns
/// `roots` removed, against the total weight of in-forests rooted exactly at
/// `roots`. Returns the pair `(minor, forest_weight)`.
pub fn check_principal_minor(
    lap: &LaplacianMatrix,
    enumeration: &ForestEnumeration,
    roots: &[usize],
) -> Result<(f64, f64)> {
    let n = lap.n();
    if n != enumeration.n() {
        return Err(Error::DimensionMismatch(
            "Laplacian and enumeration sizes differ".into(),
        ));
    }
    let mut roots: Vec<usize> = roots.to_vec();
    roots.sort_unstable();
    roots.dedup();
    if roots.is_empty() || roots.iter().any(|&r| r == 0 || r > n) {
        return Err(Error::InvalidInput(
            "root set must be a nonempty subset of the vertices".into(),
        ));
    }
    let keep: Vec<usize> = (1..=n).filter(|v| !roots.contains(v)).collect();
    let minor = if keep.is_empty() {
        1.0 // empty minor convention
    } else {
        let m = lap.as_matrix();
        let k = keep.len();
        let mut sub = Matrix::zeros(k, k);
        for (i, &vi) in keep.iter().enumerate() {
            for (j, &vj) in keep.iter().enumerate() {
                sub[(i, j)] = m[(vi - 1, vj - 1)];
            }
        }
        sub.determinant()?
    };
    Ok((minor, enumeration.weight_with_root_set(&roots)))
}

/// Matrix-tree check for spanning converging trees: the `(i, j)` cofactor of
/// `L` against the total weight of spanning trees converging to `i`. The
/// cofactor is independent of `j`.
pub fn check_tree_cofactor(
    lap: &LaplacianMatrix,
    enumeration: &ForestEnumeration,
    i: usize,
    j: usize,
) -> Result<(f64, f64)> {
    let n = lap.n();
    if i == 0 || i > n || j == 0 || j > n {
        return Err(Error::InvalidInput(format!(
            "cofactor indices ({i}, {j}) out of range for n = {n}"
        )));
    }
    let cofactor = if n == 1 {
        1.0
    } else {
        let m = lap.as_matrix();
        let k = n - 1;
        let mut sub = Matrix::zeros(k, k);
        let mut r = 0;
        for vi in 0..n {
            if vi == i - 1 {
                continue;
            }
            let mut c = 0;
            for vj in 0..n {
                if vj == j - 1 {
                    continue;
                }
                sub[(r, c)] = m[(vi, vj)];
                c += 1;
            }
            r += 1;
        }
        let sign = if (i + j).is_multiple_of(2) { 1.0 } else { -1.0 };
        sign * sub.determinant()?
    };
    let tree_weight: f64 = enumeration
        .forests
        .iter()
        .filter(|f| f.arc_count() == n - 1 && f.roots.iter().all(|&r| r == i))
        .map(|f| f.weight)
        .sum();
    Ok((cofactor, tree_weight))
}

/// Matrix-forest identity check at a given `tau`: the larger of
/// `max_abs(adj(I + tau L) - Q(tau))` and `|det(I + tau L) - sigma(tau)|`,
/// with the adjugate computed by cofactor expansion.
pub fn check_adjugate_identity(
    lap: &LaplacianMatrix,
    spectrum: &ForestSpectrum,
    tau: f64,
) -> Result<f64> {
    let n = lap.n();
    let a = Matrix::identity(n).add(&lap.as_matrix().scale(tau)?)?;
    let adj = a.adjugate()?;
    let q_tau = spectrum.q_tau(tau)?;
    let matrix_residual = adj.sub(&q_tau)?.max_abs();
    let det_residual = (a.determinant()? - spectrum.sigma_tau(tau)).abs();
    Ok(matrix_residual.max(det_residual))
}

/// One line of a verification report.
#[derive(Clone, Debug)]
pub struct VerifyCheck {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub passed: bool,
}

/// Outcome of the full oracle suite on one digraph.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub checks: Vec<VerifyCheck>,
    pub passed: bool,
}

/// Runs every oracle comparison for a digraph with `n <= 8`: recursion vs
/// enumeration, tree cofactors, principal minors, the root-set partition of
/// `sigma_k`, and the adjugate identity at several `tau`.
pub fn verify_report(g: &WeightedDigraph, tol: f64) -> Result<VerifyReport> {
    let n = g.n();
    let lap = g.laplacian();
    let d = g.forest_dimension();
    let spectrum = ForestSpectrum::compute(&lap, d, tol)?;
    let enumeration = enumerate_in_forests(g)?;
    let oracle = oracle_forest_spectrum(g)?;

    let mut checks: Vec<VerifyCheck> = Vec::new();
    let mut push = |name: String, residual: f64, threshold: f64| {
        checks.push(VerifyCheck {
            name,
            residual,
            threshold,
            passed: residual <= threshold,
        });
    };

    let sigma_scale = oracle.sigmas().iter().fold(0.0f64, |a, s| a.max(s.abs()));
    let sigma_residual = spectrum
        .sigmas()
        .iter()
        .zip(oracle.sigmas())
        .fold(0.0f64, |a, (x, y)| a.max((x - y).abs()));
    push(
        "sigma vs enumeration".into(),
        sigma_residual,
        rel_eps(tol, sigma_scale),
    );

    let q_scale = (0..=n).fold(0.0f64, |a, k| a.max(oracle.q(k).max_abs()));
    let mut q_residual = 0.0f64;
    for k in 0..=n {
        q_residual = q_residual.max(spectrum.q(k).sub(oracle.q(k))?.max_abs());
    }
    push(
        "Q_k vs enumeration".into(),
        q_residual,
        rel_eps(tol, q_scale),
    );

    let oracle_d = n - enumeration.max_arc_count();
    push(
        "forest dimension vs enumeration".into(),
        (oracle_d as f64 - d as f64).abs(),
        0.0,
    );

    // every forest has exactly n - k self-rooted vertices
    let root_count_violations = enumeration
        .forests
        .iter()
        .filter(|f| f.root_set().len() != n - f.arc_count())
        .count();
    push("roots per forest".into(), root_count_violations as f64, 0.0);

    let mut cofactor_residual = 0.0f64;
    for i in 1..=n {
        for j in 1..=n {
            let (cof, trees) = check_tree_cofactor(&lap, &enumeration, i, j)?;
            cofactor_residual = cofactor_residual.max((cof - trees).abs());
        }
    }
    push(
        "tree cofactors".into(),
        cofactor_residual,
        rel_eps(tol, sigma_scale),
    );

    let mut minor_residual = 0.0f64;
    let mut partition = vec![0.0f64; n + 1];
    for mask in 1u32..(1 << n) {
        let roots: Vec<usize> = (1..=n).filter(|v| mask & (1 << (v - 1)) != 0).collect();
        let (minor, weight) = check_principal_minor(&lap, &enumeration, &roots)?;
        minor_residual = minor_residual.max((minor - weight).abs());
        partition[roots.len()] += weight;
    }
    push(
        "principal minors".into(),
        minor_residual,
        rel_eps(tol, sigma_scale),
    );

    // forests with k arcs have n - k roots, so summing the exact-root-set
    // weights over all root sets of size n - k must reproduce sigma_k
    let mut partition_residual = 0.0f64;
    for k in 0..=n.saturating_sub(1) {
        partition_residual = partition_residual.max((partition[n - k] - oracle.sigma(k)).abs());
    }
    push(
        "root-set partition of sigma".into(),
        partition_residual,
        rel_eps(tol, sigma_scale),
    );

    for tau in [0.0, 1.0, -1.0, 0.37] {
        let residual = check_adjugate_identity(&lap, &spectrum, tau)?;
        let scale = spectrum.q_tau(tau)?.max_abs().max(sigma_scale);
        push(
            format!("adjugate identity at tau = {tau}"),
            residual,
            rel_eps(tol, scale),
        );
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport { checks, passed })
}
