//! The forest spectrum of a digraph: the sequences `sigma_0..sigma_n` of
//! k-arc in-forest weights and the matrices `Q_0..Q_n` whose `(i, j)` entry
//! is the total weight of k-arc in-forests in which `i` lies in a tree
//! rooted at `j`.
//!
//! Everything is computed by a single Faddeev-style recursion
//!
//! ```text
//! Q_0 = I,  sigma_{k+1} = tr(L Q_k) / (k + 1),  Q_{k+1} = -L Q_k + sigma_{k+1} I
//! ```
//!
//! which coincides with the Leverrier-Faddeev algorithm applied to `-L`.
//! The module also provides the normalized (row-stochastic) forest matrices,
//! the parametric family `Q(tau)`, polynomial representations of the `Q_k`,
//! and the expansion of Laplacian powers in the forest basis.

use crate::error::{Error, Result};
use crate::graph::{LaplacianMatrix, WeightedDigraph};
use crate::linalg::{rel_eps, Matrix, DEFAULT_TOL};

/// Hard cap on the partition-sum evaluator for power-expansion coefficients.
pub const PARTITION_MAX_K: usize = 20;

/// The paired sequences `(sigma_k, Q_k)` for `k = 0..=n`, plus the in-forest
/// dimension `d`. Entries with `k > n - d` are exact zeros.
#[derive(Clone, Debug)]
pub struct ForestSpectrum {
    n: usize,
    d: usize,
    sigma: Vec<f64>,
    q: Vec<Matrix>,
}

/// Total forest matrix `Q`, total weight `sigma`, and the row-stochastic
/// normalization `J = Q / sigma`.
#[derive(Clone, Debug)]
pub struct ForestTotals {
    pub matrix: Matrix,
    pub weight: f64,
    pub normalized: Matrix,
}

/// Parametric forest matrices at a fixed `tau >= 0`.
#[derive(Clone, Debug)]
pub struct ParametricForest {
    pub tau: f64,
    pub matrix: Matrix,
    pub weight: f64,
    pub normalized: Matrix,
}

impl ForestSpectrum {
    /// Runs the recursion for all `n` steps and validates the spectrum
    /// against the structural dimension `d`:
    ///
    /// * `sigma_k` must stay positive for `k <= n - d`,
    /// * `sigma_k` and `Q_k` must vanish (within tolerance) for `k > n - d`,
    /// * entries of `Q_k` may dip below zero only within tolerance.
    ///
    /// Small negative entries are clamped to zero and the vanishing tail is
    /// set to exact zeros; larger violations abort with a
    /// numerical-instability error, since every downstream quantity would
    /// inherit the corruption.
    pub fn compute(lap: &LaplacianMatrix, d: usize, tol: f64) -> Result<Self> {
        let n = lap.n();
        if d == 0 || d > n {
            return Err(Error::InvalidInput(format!(
                "in-forest dimension {d} out of range for n = {n}"
            )));
        }
        let l = lap.as_matrix();
        let mut sigma = Vec::with_capacity(n + 1);
        let mut q = Vec::with_capacity(n + 1);
        sigma.push(1.0);
        q.push(Matrix::identity(n));
        for k in 0..n {
            let lq = l.matmul(&q[k])?;
            let s_next = lq.trace()? / (k + 1) as f64;
            if !s_next.is_finite() {
                return Err(Error::Overflow("forest recursion"));
            }
            let mut next = lq.scale(-1.0)?;
            for i in 0..n {
                next[(i, i)] += s_next;
            }
            next.check_finite("forest recursion")?;
            sigma.push(s_next);
            q.push(next);
        }

        // The magnitudes of sigma_k and Q_k grow like the k-th power of the
        // weights, so a single family-wide scale would swamp the small-k
        // values. The zero-versus-positive tests for sigma_k use the noise
        // floor of the step that produced them, tol * ||L|| * sigma_{k-1};
        // negativity clamps use each matrix's own magnitude; the vanishing
        // tail is compared against the largest magnitude seen.
        let l_norm = l.max_abs();
        let sigma_scale = sigma.iter().fold(0.0f64, |a, s| a.max(s.abs()));
        let q_scale = q.iter().fold(0.0f64, |a, m| a.max(m.max_abs()));
        let tail_sigma_eps = rel_eps(tol, sigma_scale);
        let tail_q_eps = rel_eps(tol, q_scale);

        for k in 0..=n {
            if k <= n - d {
                if k > 0 && sigma[k] <= tol * l_norm * sigma[k - 1] {
                    return Err(Error::NumericalInstability(format!(
                        "sigma_{k} = {:e} is not positive although k <= n - d = {}",
                        sigma[k],
                        n - d
                    )));
                }
            } else {
                if sigma[k].abs() >= tail_sigma_eps {
                    return Err(Error::NumericalInstability(format!(
                        "sigma_{k} = {:e} does not vanish although k > n - d = {}",
                        sigma[k],
                        n - d
                    )));
                }
                sigma[k] = 0.0;
            }
            let matrix = &mut q[k];
            if k > n - d {
                if matrix.max_abs() >= tail_q_eps {
                    return Err(Error::NumericalInstability(format!(
                        "Q_{k} does not vanish although k > n - d = {}",
                        n - d
                    )));
                }
                *matrix = Matrix::zeros(n, n);
                continue;
            }
            let clamp_eps = rel_eps(tol, matrix.max_abs());
            for entry in matrix.entries_mut() {
                if *entry < -clamp_eps {
                    return Err(Error::NumericalInstability(format!(
                        "negative entry {entry:e} in Q_{k}"
                    )));
                }
                if *entry <= 0.0 {
                    *entry = 0.0; // also normalizes -0.0
                }
            }
        }

        Ok(ForestSpectrum { n, d, sigma, q })
    }

    /// Laplacian, structural dimension, and recursion in one step.
    pub fn of_graph(g: &WeightedDigraph, tol: f64) -> Result<Self> {
        ForestSpectrum::compute(&g.laplacian(), g.forest_dimension(), tol)
    }

    /// Assembles a spectrum from independently computed parts (used by the
    /// enumeration oracle).
    pub(crate) fn from_parts(n: usize, d: usize, sigma: Vec<f64>, q: Vec<Matrix>) -> Self {
        debug_assert_eq!(sigma.len(), n + 1);
        debug_assert_eq!(q.len(), n + 1);
        ForestSpectrum { n, d, sigma, q }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// In-forest dimension `d`.
    pub fn dimension(&self) -> usize {
        self.d
    }

    /// Number of arcs in a maximum in-forest, `n - d`.
    pub fn max_forest_arcs(&self) -> usize {
        self.n - self.d
    }

    /// Weight of all k-arc in-forests.
    pub fn sigma(&self, k: usize) -> f64 {
        self.sigma.get(k).copied().unwrap_or(0.0)
    }

    /// The full sequence `sigma_0..=sigma_n`.
    pub fn sigmas(&self) -> &[f64] {
        &self.sigma
    }

    /// The k-arc in-forest matrix `Q_k` (zero matrix for `k > n - d`).
    pub fn q(&self, k: usize) -> &Matrix {
        &self.q[k]
    }

    /// Row-stochastic normalization `J_k = Q_k / sigma_k`, defined for
    /// `k <= n - d` only.
    pub fn normalized(&self, k: usize) -> Result<Matrix> {
        if k > self.max_forest_arcs() {
            return Err(Error::IndexOutOfRange(format!(
                "J_{k} is undefined: sigma_{k} = 0 for k > n - d = {}",
                self.max_forest_arcs()
            )));
        }
        self.q[k].scale(1.0 / self.sigma[k])
    }

    /// `Q = sum Q_k`, `sigma = sum sigma_k`, and `J = Q / sigma`, which
    /// equals `(I + L)^{-1}` by the matrix-forest theorem.
    pub fn totals(&self) -> ForestTotals {
        let mut total = self.q[0].clone();
        for k in 1..=self.max_forest_arcs() {
            total = total.add(&self.q[k]).expect("same dimensions");
        }
        let weight: f64 = self.sigma.iter().sum();
        let normalized = total.scale(1.0 / weight).expect("weight >= 1");
        ForestTotals {
            matrix: total,
            weight,
            normalized,
        }
    }

    /// `Q(tau)` for any real `tau` (Horner over the matrix coefficients).
    pub fn q_tau(&self, tau: f64) -> Result<Matrix> {
        let m = self.max_forest_arcs();
        let mut acc = self.q[m].clone();
        for k in (0..m).rev() {
            acc = acc.scale(tau)?.add(&self.q[k])?;
        }
        Ok(acc)
    }

    /// `sigma(tau) = sum sigma_k tau^k` for any real `tau`; the total forest
    /// weight after every arc weight is multiplied by `tau`.
    pub fn sigma_tau(&self, tau: f64) -> f64 {
        let m = self.max_forest_arcs();
        let mut acc = self.sigma[m];
        for k in (0..m).rev() {
            acc = acc * tau + self.sigma[k];
        }
        acc
    }

    /// `Q(tau)`, `sigma(tau)`, and `J(tau) = Q(tau) / sigma(tau)`; requires
    /// `tau >= 0` so that the normalization is well defined.
    pub fn parametric(&self, tau: f64) -> Result<ParametricForest> {
        if !tau.is_finite() || tau < 0.0 {
            return Err(Error::InvalidInput(format!(
                "J(tau) requires tau >= 0, got {tau}"
            )));
        }
        let matrix = self.q_tau(tau)?;
        let weight = self.sigma_tau(tau);
        let normalized = matrix.scale(1.0 / weight)?;
        Ok(ParametricForest {
            tau,
            matrix,
            weight,
            normalized,
        })
    }

    /// Cumulative weights `s_k = sigma_0 + .. + sigma_k` for
    /// `k = 0..=n-d`; the weight of in-forests with at most `k` arcs.
    pub fn partial_sums(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.max_forest_arcs() + 1);
        let mut acc = 0.0;
        for k in 0..=self.max_forest_arcs() {
            acc += self.sigma[k];
            out.push(acc);
        }
        out
    }

    /// Parametric cumulative weights `s_k(tau) = sum_{j<=k} sigma_j tau^j`.
    pub fn partial_sums_tau(&self, tau: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.max_forest_arcs() + 1);
        let mut acc = 0.0;
        let mut power = 1.0;
        for k in 0..=self.max_forest_arcs() {
            acc += self.sigma[k] * power;
            out.push(acc);
            power *= tau;
        }
        out
    }

    /// `sum_k Q_k lambda^{n-k-1}` (with `lambda^0 = 1`), the polynomial
    /// expansion of `adj(lambda I + L)`.
    pub fn adjugate_expansion(&self, lambda: f64) -> Result<Matrix> {
        let m = self.max_forest_arcs();
        // Horner over Q_0 lambda^m + .. + Q_m, then the remaining factor
        // lambda^{d-1}.
        let mut acc = self.q[0].clone();
        for k in 1..=m {
            acc = acc.scale(lambda)?.add(&self.q[k])?;
        }
        let tail = lambda.powi((self.d - 1) as i32);
        acc.scale(tail)
    }
}

/// `Q_k` as a Horner-evaluated polynomial in the Laplacian:
/// `sum_{i=0}^{k} sigma_{k-i} (-L)^i`.
pub fn forest_matrix_from_polynomial(
    lap: &LaplacianMatrix,
    sigma: &[f64],
    k: usize,
) -> Result<Matrix> {
    if k >= sigma.len() {
        return Err(Error::IndexOutOfRange(format!(
            "need sigma_0..sigma_{k} but only {} coefficients were given",
            sigma.len()
        )));
    }
    let n = lap.n();
    let l = lap.as_matrix();
    let mut acc = Matrix::identity(n).scale(sigma[0])?;
    for &coefficient in &sigma[1..=k] {
        acc = l.matmul(&acc)?.scale(-1.0)?;
        for j in 0..n {
            acc[(j, j)] += coefficient;
        }
        acc.check_finite("forest polynomial")?;
    }
    Ok(acc)
}

/// Coefficients `alpha_0..alpha_m` of the expansion
/// `(-L)^m = sum_k alpha_k Q_{m-k}`, computed by the convolution recurrence
/// `alpha_k = sum_{i=1}^{k} (-sigma_i) alpha_{k-i}` with `alpha_0 = 1`.
/// The coefficients do not depend on `m`.
pub fn power_expansion_coefficients(sigma: &[f64], m: usize) -> Vec<f64> {
    let mut alpha = Vec::with_capacity(m + 1);
    alpha.push(1.0);
    for k in 1..=m {
        let mut acc = 0.0;
        for i in 1..=k {
            let s = sigma.get(i).copied().unwrap_or(0.0);
            acc -= s * alpha[k - i];
        }
        alpha.push(acc);
    }
    alpha
}

/// Independent evaluator for `alpha_k`: the sum over nonnegative integer
/// vectors `(p_1..p_k)` with `sum i*p_i = k` of
/// `(-1)^{sum p_i} (sum p_i)! / prod(p_i!) * prod sigma_i^{p_i}`.
/// Combinatorial cost, so `k` is capped at `PARTITION_MAX_K`.
pub fn power_coefficient_partition_sum(sigma: &[f64], k: usize) -> Result<f64> {
    if k > PARTITION_MAX_K {
        return Err(Error::SizeLimit {
            n: k,
            max: PARTITION_MAX_K,
        });
    }
    if k == 0 {
        return Ok(1.0);
    }
    fn factorial(n: usize) -> f64 {
        (1..=n).map(|i| i as f64).product()
    }
    // one partial assignment of multiplicities p_1..p_{part-1}
    struct Partial {
        remaining: usize,
        count: usize,
        multiplicity_product: f64,
        weight_product: f64,
    }
    // recurse over part sizes choosing multiplicities p_part
    fn walk(sigma: &[f64], k: usize, part: usize, state: Partial, total: &mut f64) {
        if state.remaining == 0 {
            let sign = if state.count.is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            *total +=
                sign * factorial(state.count) / state.multiplicity_product * state.weight_product;
            return;
        }
        if part > k || part > state.remaining {
            return;
        }
        let s = sigma.get(part).copied().unwrap_or(0.0);
        let mut weight = 1.0;
        let mut p = 0;
        while p * part <= state.remaining {
            walk(
                sigma,
                k,
                part + 1,
                Partial {
                    remaining: state.remaining - p * part,
                    count: state.count + p,
                    multiplicity_product: state.multiplicity_product * factorial(p),
                    weight_product: state.weight_product * weight,
                },
                total,
            );
            weight *= s;
            p += 1;
        }
    }
    let mut total = 0.0;
    walk(
        sigma,
        k,
        1,
        Partial {
            remaining: k,
            count: 0,
            multiplicity_product: 1.0,
            weight_product: 1.0,
        },
        &mut total,
    );
    Ok(total)
}

/// `(-L)^m` reconstructed as `sum_{k=0}^{m} alpha_k Q_{m-k}`.
pub fn laplacian_power_from_forests(s: &ForestSpectrum, m: usize) -> Result<Matrix> {
    let alpha = power_expansion_coefficients(s.sigmas(), m);
    let n = s.n();
    let mut acc = Matrix::zeros(n, n);
    for (k, a) in alpha.iter().enumerate() {
        let j = m - k;
        if j > n {
            continue; // Q_j = 0 beyond the stored range
        }
        acc = acc.add(&s.q(j).scale(*a)?)?;
    }
    Ok(acc)
}

/// Laplacian matrix of the digraph of (k+1)-arc in-forests: `L_{k+1} = L Q_k`.
///
/// The result is cross-checked against `sigma_{k+1} I - Q_{k+1}` and, for
/// `k >= 1`, against the recurrence `L_{k+1} = L(-L_k + (tr L_k / k) I)`;
/// disagreement or an off-diagonal entry above `+tol * scale` aborts.
pub fn forest_digraph_laplacian(
    s: &ForestSpectrum,
    lap: &LaplacianMatrix,
    k: usize,
    tol: f64,
) -> Result<LaplacianMatrix> {
    let n = s.n();
    if k >= n {
        return Err(Error::IndexOutOfRange(format!(
            "forest digraph index k = {k} out of range for n = {n}"
        )));
    }
    let l = lap.as_matrix();
    let mut lk1 = l.matmul(s.q(k))?;
    let scale = lk1.max_abs().max(s.q(k + 1).max_abs());
    let eps = rel_eps(tol, scale);

    // L_{k+1} = sigma_{k+1} I - Q_{k+1}
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j {
                s.sigma(k + 1) - s.q(k + 1)[(i, j)]
            } else {
                -s.q(k + 1)[(i, j)]
            };
            if (lk1[(i, j)] - expected).abs() > eps {
                return Err(Error::NumericalInstability(format!(
                    "L_{} disagrees with sigma_{} I - Q_{} at ({i}, {j})",
                    k + 1,
                    k + 1,
                    k + 1
                )));
            }
        }
    }

    // recurrence through the previous forest digraph Laplacian
    if k >= 1 {
        let lk = l.matmul(s.q(k - 1))?;
        let adjusted = {
            let mut a = lk.scale(-1.0)?;
            let shift = lk.trace()? / k as f64;
            for i in 0..n {
                a[(i, i)] += shift;
            }
            a
        };
        let via_recurrence = l.matmul(&adjusted)?;
        if lk1.sub(&via_recurrence)?.max_abs() > eps {
            return Err(Error::NumericalInstability(format!(
                "L_{} disagrees with the trace recurrence",
                k + 1
            )));
        }
    }

    // clamp off-diagonal roundoff and rebuild the diagonal for exact row sums
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let v = lk1[(i, j)];
            if v > eps {
                return Err(Error::NumericalInstability(format!(
                    "positive off-diagonal entry {v:e} in L_{}",
                    k + 1
                )));
            }
            if v > 0.0 {
                lk1[(i, j)] = 0.0;
            }
        }
    }
    for i in 0..n {
        let off_sum: f64 = (0..n).filter(|j| *j != i).map(|j| lk1[(i, j)]).sum();
        lk1[(i, i)] = -off_sum;
    }
    LaplacianMatrix::new(lk1)
}

/// Convenience wrapper used in tests and examples: spectrum at the default
/// tolerance.
pub fn spectrum_of(g: &WeightedDigraph) -> Result<ForestSpectrum> {
    ForestSpectrum::of_graph(g, DEFAULT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::approx_eq;

    fn g0() -> WeightedDigraph {
        WeightedDigraph::new(2, []).unwrap()
    }

    fn g1() -> WeightedDigraph {
        WeightedDigraph::new(2, [(1, 2, 2.0)]).unwrap()
    }

    fn g2() -> WeightedDigraph {
        WeightedDigraph::new(2, [(1, 2, 1.0), (2, 1, 1.0)]).unwrap()
    }

    fn g3() -> WeightedDigraph {
        WeightedDigraph::new(3, [(1, 2, 1.0), (2, 3, 1.0)]).unwrap()
    }

    fn assert_matrix_eq(actual: &Matrix, expected: &Matrix, tol: f64) {
        let scale = expected.max_abs();
        let diff = actual.sub(expected).unwrap().max_abs();
        assert!(
            diff <= rel_eps(tol, scale),
            "matrices differ by {diff:e}:\n{actual:?}\nvs\n{expected:?}"
        );
    }

    #[test]
    fn recursion_g1() {
        let s = spectrum_of(&g1()).unwrap();
        assert_eq!(s.dimension(), 1);
        assert_eq!(s.sigmas(), &[1.0, 2.0, 0.0]);
        assert_matrix_eq(
            s.q(1),
            &Matrix::from_rows(&[&[0.0, 2.0], &[0.0, 2.0]]).unwrap(),
            1e-12,
        );
    }

    #[test]
    fn recursion_g3() {
        let s = spectrum_of(&g3()).unwrap();
        assert_eq!(s.sigmas(), &[1.0, 2.0, 1.0, 0.0]);
        assert_matrix_eq(
            s.q(1),
            &Matrix::from_rows(&[&[1.0, 1.0, 0.0], &[0.0, 1.0, 1.0], &[0.0, 0.0, 2.0]]).unwrap(),
            1e-12,
        );
        assert_matrix_eq(
            s.q(2),
            &Matrix::from_rows(&[&[0.0, 0.0, 1.0], &[0.0, 0.0, 1.0], &[0.0, 0.0, 1.0]]).unwrap(),
            1e-12,
        );
        assert_eq!(s.q(3).max_abs(), 0.0);
    }

    #[test]
    fn recursion_arcless() {
        let s = spectrum_of(&g0()).unwrap();
        assert_eq!(s.dimension(), 2);
        assert_eq!(s.sigmas(), &[1.0, 0.0, 0.0]);
        assert_eq!(s.q(1).max_abs(), 0.0);
        assert_eq!(s.q(2).max_abs(), 0.0);
    }

    #[test]
    fn dimension_mismatch_detected() {
        // Claiming d = 2 for a graph whose spectrum has sigma_1 > 0 must fail.
        let lap = g1().laplacian();
        assert!(matches!(
            ForestSpectrum::compute(&lap, 2, DEFAULT_TOL),
            Err(Error::NumericalInstability(_))
        ));
    }

    #[test]
    fn normalized_matrices() {
        let s = spectrum_of(&g3()).unwrap();
        assert_matrix_eq(&s.normalized(0).unwrap(), &Matrix::identity(3), 1e-12);
        assert_matrix_eq(
            &s.normalized(2).unwrap(),
            &Matrix::from_rows(&[&[0.0, 0.0, 1.0], &[0.0, 0.0, 1.0], &[0.0, 0.0, 1.0]]).unwrap(),
            1e-12,
        );
        assert!(matches!(s.normalized(3), Err(Error::IndexOutOfRange(_))));

        let s = spectrum_of(&g2()).unwrap();
        assert_matrix_eq(
            &s.normalized(1).unwrap(),
            &Matrix::from_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap(),
            1e-12,
        );
    }

    #[test]
    fn totals_match_adjugate_of_i_plus_l() {
        let s = spectrum_of(&g3()).unwrap();
        let t = s.totals();
        assert_eq!(t.weight, 4.0);
        assert_matrix_eq(
            &t.matrix,
            &Matrix::from_rows(&[&[2.0, 1.0, 1.0], &[0.0, 2.0, 2.0], &[0.0, 0.0, 4.0]]).unwrap(),
            1e-12,
        );

        let s = spectrum_of(&g0()).unwrap();
        let t = s.totals();
        assert_eq!(t.weight, 1.0);
        assert_matrix_eq(&t.matrix, &Matrix::identity(2), 1e-12);
        assert_matrix_eq(&t.normalized, &Matrix::identity(2), 1e-12);

        let s = spectrum_of(&g2()).unwrap();
        let t = s.totals();
        assert_eq!(t.weight, 3.0);
        let expected = Matrix::from_rows(&[&[2.0, 1.0], &[1.0, 2.0]])
            .unwrap()
            .scale(1.0 / 3.0)
            .unwrap();
        assert_matrix_eq(&t.normalized, &expected, 1e-12);
    }

    #[test]
    fn parametric_values() {
        let s = spectrum_of(&g1()).unwrap();
        let p0 = s.parametric(0.0).unwrap();
        assert_eq!(p0.weight, 1.0);
        assert_matrix_eq(&p0.matrix, &Matrix::identity(2), 1e-12);

        let p1 = s.parametric(1.0).unwrap();
        let t = s.totals();
        assert_eq!(p1.weight, t.weight);
        assert_matrix_eq(&p1.matrix, &t.matrix, 1e-12);

        let p2 = s.parametric(2.0).unwrap();
        assert_eq!(p2.weight, 5.0);
        let expected = Matrix::from_rows(&[&[1.0, 4.0], &[0.0, 5.0]])
            .unwrap()
            .scale(0.2)
            .unwrap();
        assert_matrix_eq(&p2.normalized, &expected, 1e-12);
        // (I + 2L) J(2) = I
        let lhs = Matrix::identity(2)
            .add(&g1().laplacian().as_matrix().scale(2.0).unwrap())
            .unwrap()
            .matmul(&p2.normalized)
            .unwrap();
        assert_matrix_eq(&lhs, &Matrix::identity(2), 1e-12);

        assert!(s.parametric(-1.0).is_err());
    }

    #[test]
    fn partial_sums_values() {
        let s = spectrum_of(&g3()).unwrap();
        assert_eq!(s.partial_sums(), vec![1.0, 3.0, 4.0]);
        assert_eq!(s.partial_sums_tau(2.0), vec![1.0, 5.0, 9.0]);
        assert_eq!(s.partial_sums()[0], 1.0);
        // s_{n-d} = sigma and s_{n-d}(tau) = sigma(tau)
        assert_eq!(*s.partial_sums().last().unwrap(), s.totals().weight);
        assert!(approx_eq(
            *s.partial_sums_tau(2.0).last().unwrap(),
            s.sigma_tau(2.0),
            1e-12,
            10.0
        ));
    }

    #[test]
    fn adjugate_expansion_values() {
        let s = spectrum_of(&g3()).unwrap();
        // lambda = 0 leaves only Q_{n-1} when d = 1
        assert_matrix_eq(&s.adjugate_expansion(0.0).unwrap(), s.q(2), 1e-12);
        // lambda = 1 gives adj(I + L) = total Q
        assert_matrix_eq(
            &s.adjugate_expansion(1.0).unwrap(),
            &s.totals().matrix,
            1e-12,
        );

        // arcless graph: adj(lambda I) = lambda^{n-1} I, so adj(5I) = 5I at n = 2
        let s = spectrum_of(&g0()).unwrap();
        assert_matrix_eq(
            &s.adjugate_expansion(5.0).unwrap(),
            &Matrix::identity(2).scale(5.0).unwrap(),
            1e-12,
        );
        assert_matrix_eq(
            &s.adjugate_expansion(5.0).unwrap(),
            &Matrix::identity(2).scale(5.0).unwrap().adjugate().unwrap(),
            1e-12,
        );
    }

    #[test]
    fn polynomial_reconstruction() {
        let g = g3();
        let lap = g.laplacian();
        let s = spectrum_of(&g).unwrap();
        for k in 0..=3 {
            let p = forest_matrix_from_polynomial(&lap, s.sigmas(), k).unwrap();
            assert_matrix_eq(&p, s.q(k), 1e-12);
        }
        // k = 1 on G1 gives sigma_1 I - L
        let g = g1();
        let p = forest_matrix_from_polynomial(&g.laplacian(), &[1.0, 2.0], 1).unwrap();
        assert_matrix_eq(
            &p,
            &Matrix::from_rows(&[&[0.0, 2.0], &[0.0, 2.0]]).unwrap(),
            1e-12,
        );
    }

    #[test]
    fn power_coefficients_for_g3() {
        let s = spectrum_of(&g3()).unwrap();
        let alpha = power_expansion_coefficients(s.sigmas(), 3);
        assert_eq!(alpha, vec![1.0, -2.0, 3.0, -4.0]);

        // alpha_1 = -sigma_1 and alpha_2 = sigma_1^2 - sigma_2 in general
        let sigma = [1.0, 0.7, 2.3, 0.4];
        let alpha = power_expansion_coefficients(&sigma, 2);
        assert!(approx_eq(alpha[1], -0.7, 1e-12, 1.0));
        assert!(approx_eq(alpha[2], 0.7 * 0.7 - 2.3, 1e-12, 1.0));
    }

    #[test]
    fn partition_sum_agrees_with_recurrence() {
        let sigma = [1.0, 1.3, 0.2, 2.7, 0.05, 1.9, 0.8];
        let alpha = power_expansion_coefficients(&sigma, 6);
        for (k, alpha_k) in alpha.iter().enumerate() {
            let via_partitions = power_coefficient_partition_sum(&sigma, k).unwrap();
            assert!(
                approx_eq(via_partitions, *alpha_k, 1e-12, alpha_k.abs()),
                "k = {k}: {via_partitions} vs {alpha_k}"
            );
        }
        assert!(matches!(
            power_coefficient_partition_sum(&sigma, PARTITION_MAX_K + 1),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn laplacian_powers_from_forests() {
        let g = g3();
        let s = spectrum_of(&g).unwrap();
        let m0 = laplacian_power_from_forests(&s, 0).unwrap();
        assert_matrix_eq(&m0, &Matrix::identity(3), 1e-12);

        let m1 = laplacian_power_from_forests(&s, 1).unwrap();
        let neg_l = g.laplacian().as_matrix().scale(-1.0).unwrap();
        assert_matrix_eq(&m1, &neg_l, 1e-12);

        let m3 = laplacian_power_from_forests(&s, 3).unwrap();
        let expected =
            Matrix::from_rows(&[&[-1.0, 3.0, -2.0], &[0.0, -1.0, 1.0], &[0.0, 0.0, 0.0]]).unwrap();
        assert_matrix_eq(&m3, &expected, 1e-12);
    }

    #[test]
    fn forest_digraph_laplacians() {
        let g = g3();
        let lap = g.laplacian();
        let s = spectrum_of(&g).unwrap();

        // k = 0 reproduces L itself
        let l1 = forest_digraph_laplacian(&s, &lap, 0, DEFAULT_TOL).unwrap();
        assert_matrix_eq(l1.as_matrix(), lap.as_matrix(), 1e-12);

        let l2 = forest_digraph_laplacian(&s, &lap, 1, DEFAULT_TOL).unwrap();
        let expected =
            Matrix::from_rows(&[&[1.0, 0.0, -1.0], &[0.0, 1.0, -1.0], &[0.0, 0.0, 0.0]]).unwrap();
        assert_matrix_eq(l2.as_matrix(), &expected, 1e-12);

        // arcless graph: L = 0 and so is every forest digraph Laplacian
        let g = g0();
        let s = spectrum_of(&g).unwrap();
        let l1 = forest_digraph_laplacian(&s, &g.laplacian(), 0, DEFAULT_TOL).unwrap();
        assert_eq!(l1.as_matrix().max_abs(), 0.0);

        let g = g3();
        let s = spectrum_of(&g).unwrap();
        assert!(forest_digraph_laplacian(&s, &g.laplacian(), 3, DEFAULT_TOL).is_err());
    }

    #[test]
    fn stochastic_recurrence_for_normalized_matrices() {
        // J_{k+1} = (sigma_k / sigma_{k+1}) (-L) J_k + I for k < n - d
        let g = g3();
        let l = g.laplacian().into_matrix();
        let s = spectrum_of(&g).unwrap();
        for k in 0..s.max_forest_arcs() {
            let jk = s.normalized(k).unwrap();
            let jk1 = s.normalized(k + 1).unwrap();
            let ratio = s.sigma(k) / s.sigma(k + 1);
            let mut rhs = l.matmul(&jk).unwrap().scale(-ratio).unwrap();
            for i in 0..3 {
                rhs[(i, i)] += 1.0;
            }
            assert_matrix_eq(&jk1, &rhs, 1e-10);
        }
    }

    #[test]
    fn trace_and_row_sum_identities() {
        for g in [g0(), g1(), g2(), g3()] {
            let n = g.n();
            let s = spectrum_of(&g).unwrap();
            for k in 0..=n {
                let q = s.q(k);
                let trace = q.trace().unwrap();
                assert!(
                    approx_eq(trace, (n - k) as f64 * s.sigma(k), 1e-10, s.sigma(k)),
                    "trace identity failed at k = {k}"
                );
                for i in 0..n {
                    let row_sum: f64 = q.row(i).iter().sum();
                    assert!(approx_eq(row_sum, s.sigma(k), 1e-10, s.sigma(k)));
                }
            }
        }
    }
}
