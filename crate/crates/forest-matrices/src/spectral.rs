//! Spectral quantities derived from the forest spectrum: the characteristic
//! polynomial of `-L` (whose coefficients are exactly the `sigma_k`), the
//! eigenvalues of `L` found by root-finding after analytic deflation of the
//! known zero eigenvalue, eigenvectors extracted from the parametric forest
//! matrix `Q(-1/lambda)`, and the eigenprojection `J~ = J_{n-d}` of the
//! Laplacian at eigenvalue zero.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::forest::ForestSpectrum;
use crate::graph::LaplacianMatrix;
use crate::linalg::{rel_eps, Matrix};

/// Acceptable residual `|phi(-lambda)|` per computed root, relative to the
/// polynomial's magnitude at that point.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-6;

/// Acceptable relative residual `||Lv - lambda v|| / ||v||` (scaled by the
/// Laplacian magnitude) for extracted eigenvectors.
pub const EIGENVECTOR_RESIDUAL_TOL: f64 = 1e-6;

const ABERTH_MAX_ITERS: usize = 800;
const NULLSPACE_INDEPENDENCE_TOL: f64 = 1e-8;

/// Characteristic-polynomial coefficients of `-L`, the eigenvalues of `L`,
/// and the per-root residuals `|phi(-lambda_i)|`.
#[derive(Clone, Debug)]
pub struct EigenData {
    /// `c_0..c_n` with `phi(lambda) = det(lambda I + L) = sum c_{n-k} lambda^k`;
    /// these coincide with the forest weights `sigma_k`.
    pub coeffs: Vec<f64>,
    /// Eigenvalues of `L` with multiplicity, sorted by (re, im). Exactly `d`
    /// of them are zero, pinned analytically rather than computed.
    pub eigenvalues: Vec<Complex64>,
    /// `|phi(-lambda_i)|` for each eigenvalue.
    pub residuals: Vec<f64>,
}

/// The normalized matrix of maximum in-forests `J~ = Q_{n-d} / sigma_{n-d}`,
/// the eigenprojection of the Laplacian at eigenvalue zero.
pub fn max_forest_projection(s: &ForestSpectrum) -> Matrix {
    s.normalized(s.max_forest_arcs())
        .expect("sigma_{n-d} is positive")
}

/// Characteristic polynomial of `-L`: the coefficients are the forest
/// weights themselves, `c_k = sigma_k`.
pub fn char_poly(s: &ForestSpectrum) -> EigenData {
    EigenData {
        coeffs: s.sigmas().to_vec(),
        eigenvalues: Vec::new(),
        residuals: Vec::new(),
    }
}

/// Fills in the eigenvalues of `L` as the negated roots of `phi`.
///
/// The factor `lambda^d` is deflated analytically (the trailing `sigma_k`
/// are exact zeros), so exactly `d` eigenvalues come out as exact zeros; the
/// remaining roots are found by Aberth-Ehrlich iteration with a clustering
/// pass that restores the accuracy of multiple roots.
pub fn laplacian_eigenvalues(e: &EigenData) -> Result<EigenData> {
    let n = e.coeffs.len().saturating_sub(1);
    if n == 0 {
        return Err(Error::InvalidInput(
            "characteristic polynomial has no roots".into(),
        ));
    }
    let top = (0..=n).rev().find(|&k| e.coeffs[k] != 0.0).unwrap_or(0);
    let d = n - top;
    // phi(lambda) = lambda^d psi(lambda) with psi of degree n - d; ascending
    // coefficients of psi are sigma_{n-d}, sigma_{n-d-1}, .., sigma_0.
    let psi: Vec<f64> = (0..=top).rev().map(|k| e.coeffs[k]).collect();
    let mut roots = aberth_roots(&psi)?;
    refine_root_clusters(&psi, &mut roots);

    let mut eigenvalues: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); d];
    for z in roots {
        let flipped = -z;
        // drop imaginary dust from conjugate-symmetric rounding
        if flipped.im.abs() <= 1e-11 * (1.0 + flipped.norm()) {
            eigenvalues.push(Complex64::new(flipped.re, 0.0));
        } else {
            eigenvalues.push(flipped);
        }
    }
    eigenvalues.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));

    // phi ascending: coefficient of lambda^k is c_{n-k}
    let phi_asc: Vec<f64> = (0..=n).rev().map(|k| e.coeffs[k]).collect();
    let mut residuals = Vec::with_capacity(n);
    for lambda in &eigenvalues {
        let value = poly_eval(&phi_asc, -lambda).norm();
        let scale = poly_abs_eval(&phi_asc, lambda.norm());
        if value > ROOT_RESIDUAL_TOL * scale.max(1.0) {
            return Err(Error::RootFinding(format!(
                "residual {value:e} at eigenvalue {lambda} exceeds tolerance"
            )));
        }
        residuals.push(value);
    }
    Ok(EigenData {
        coeffs: e.coeffs.clone(),
        eigenvalues,
        residuals,
    })
}

/// Convenience: characteristic polynomial plus eigenvalues in one call.
pub fn eigen_data(s: &ForestSpectrum) -> Result<EigenData> {
    laplacian_eigenvalues(&char_poly(s))
}

/// An eigenvector extracted from the parametric forest matrix, with its
/// relative residual `||Lv - lambda v|| / max(1, ||L||)`.
#[derive(Clone, Debug)]
pub struct ForestEigenvector {
    pub vector: Vec<Complex64>,
    pub residual: f64,
}

/// Eigenvectors of `L` for a nonzero eigenvalue, read off from the columns
/// of `Q(-1/lambda)`: every column that is not numerically zero is an
/// eigenvector. Columns below `tol` times the largest column norm are
/// filtered out; if the whole matrix vanishes (geometric multiplicity of the
/// eigenvalue at least two), the all-columns-zero condition is reported
/// rather than fabricating a vector.
///
/// Returned vectors are normalized to unit Euclidean length with their
/// largest component made real and positive.
pub fn eigenvectors_from_forests(
    s: &ForestSpectrum,
    lap: &LaplacianMatrix,
    lambda: Complex64,
    tol: f64,
) -> Result<Vec<ForestEigenvector>> {
    let n = s.n();
    if lambda.norm() <= rel_eps(tol, 1.0) {
        return Err(Error::InvalidInput(
            "eigenvector extraction requires a nonzero eigenvalue".into(),
        ));
    }
    let t = -lambda.inv();
    // Horner over the matrix coefficients with a complex scalar
    let m = s.max_forest_arcs();
    let mut acc: Vec<Complex64> = s.q(m).entries().iter().map(|&x| x.into()).collect();
    let mut family_scale = s.q(m).max_abs();
    for k in (0..m).rev() {
        let q = s.q(k);
        for (i, value) in acc.iter_mut().enumerate() {
            *value = *value * t + q.entries()[i];
        }
        family_scale = family_scale * t.norm() + q.max_abs();
    }

    let col_norm = |j: usize| -> f64 {
        (0..n)
            .map(|i| acc[i * n + j].norm_sqr())
            .sum::<f64>()
            .sqrt()
    };
    let max_norm = (0..n).map(col_norm).fold(0.0f64, f64::max);
    if max_norm <= rel_eps(tol, family_scale) {
        return Err(Error::NoEigenvectorColumns);
    }

    let l = lap.as_matrix();
    let l_scale = l.max_abs();
    let mut vectors = Vec::new();
    for j in 0..n {
        if col_norm(j) < tol * max_norm {
            continue;
        }
        let mut v: Vec<Complex64> = (0..n).map(|i| acc[i * n + j]).collect();
        normalize_complex(&mut v);
        // residual ||Lv - lambda v|| relative to the Laplacian magnitude
        let mut residual = 0.0f64;
        for i in 0..n {
            let lv: Complex64 = (0..n).map(|k| l[(i, k)] * v[k]).sum();
            residual += (lv - lambda * v[i]).norm_sqr();
        }
        let residual = residual.sqrt() / l_scale.max(1.0);
        if residual > EIGENVECTOR_RESIDUAL_TOL {
            return Err(Error::NumericalInstability(format!(
                "eigenvector residual {residual:e} at eigenvalue {lambda}"
            )));
        }
        vectors.push(ForestEigenvector {
            vector: v,
            residual,
        });
    }
    if vectors.is_empty() {
        return Err(Error::NoEigenvectorColumns);
    }
    Ok(vectors)
}

/// A basis of the null space of `L`: a maximal linearly independent subset
/// of the nonzero columns of the eigenprojection, exactly `d` vectors.
pub fn null_space_basis(
    s: &ForestSpectrum,
    lap: &LaplacianMatrix,
    tol: f64,
) -> Result<Vec<Vec<f64>>> {
    let n = s.n();
    let projection = max_forest_projection(s);
    let l = lap.as_matrix();
    let l_scale = l.max_abs();
    let mut orthonormal: Vec<Vec<f64>> = Vec::new();
    let mut picked: Vec<Vec<f64>> = Vec::new();
    for j in 0..n {
        let col = projection.column(j);
        let norm = l2(&col);
        if norm <= rel_eps(tol, 1.0) {
            continue;
        }
        let mut w = col.clone();
        for u in &orthonormal {
            let dot: f64 = w.iter().zip(u).map(|(a, b)| a * b).sum();
            for (wi, ui) in w.iter_mut().zip(u) {
                *wi -= dot * ui;
            }
        }
        let w_norm = l2(&w);
        if w_norm <= NULLSPACE_INDEPENDENCE_TOL * norm {
            continue;
        }
        for wi in &mut w {
            *wi /= w_norm;
        }
        orthonormal.push(w);
        // residual check: the column must lie in the null space of L
        let image = l.mul_vec(&col)?;
        if l2(&image) > EIGENVECTOR_RESIDUAL_TOL * l_scale.max(1.0) * norm {
            return Err(Error::NumericalInstability(format!(
                "column {} of the eigenprojection is not annihilated by L",
                j + 1
            )));
        }
        picked.push(col);
    }
    if picked.len() != s.dimension() {
        return Err(Error::NumericalInstability(format!(
            "found {} independent null-space columns, expected d = {}",
            picked.len(),
            s.dimension()
        )));
    }
    Ok(picked)
}

/// The complementary perturbation `L + alpha J~`, nonsingular for every
/// `alpha != 0` with `det(L + alpha J~) = alpha^d sigma_{n-d}`.
pub fn perturbed_laplacian(
    lap: &LaplacianMatrix,
    projection: &Matrix,
    alpha: f64,
) -> Result<Matrix> {
    lap.as_matrix().add(&projection.scale(alpha)?)
}

/// `||J(tau) - J~||` in the max-abs norm; decays like `1/tau` as
/// `J(tau) = (I + tau L)^{-1}` approaches the eigenprojection.
pub fn projection_limit_check(s: &ForestSpectrum, tau: f64) -> Result<f64> {
    if !tau.is_finite() || tau <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "projection limit check requires tau > 0, got {tau}"
        )));
    }
    let j_tau = s.parametric(tau)?.normalized;
    let projection = max_forest_projection(s);
    Ok(j_tau.sub(&projection)?.max_abs())
}

fn l2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn normalize_complex(v: &mut [Complex64]) {
    let mut best = 0usize;
    for (i, x) in v.iter().enumerate() {
        if x.norm() > v[best].norm() {
            best = i;
        }
    }
    let pivot = v[best];
    if pivot.norm() > 0.0 {
        let phase = pivot.conj() / pivot.norm();
        for x in v.iter_mut() {
            *x *= phase;
        }
    }
    let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
}

// ---------------------------------------------------------------------------
// polynomial root finding (Aberth-Ehrlich with multiple-root refinement)
// ---------------------------------------------------------------------------

fn poly_eval(asc: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in asc.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// `sum |a_k| r^k`, the attainable-accuracy scale for evaluation at radius `r`.
fn poly_abs_eval(asc: &[f64], r: f64) -> f64 {
    let mut acc = 0.0;
    for &c in asc.iter().rev() {
        acc = acc * r + c.abs();
    }
    acc
}

fn poly_derivative(asc: &[f64]) -> Vec<f64> {
    asc.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| k as f64 * c)
        .collect()
}

/// All complex roots of a real polynomial given by ascending coefficients
/// with a nonzero leading coefficient.
fn aberth_roots(asc: &[f64]) -> Result<Vec<Complex64>> {
    let degree = asc.len() - 1;
    if degree == 0 {
        return Ok(Vec::new());
    }
    let lead = asc[degree];
    if lead == 0.0 {
        return Err(Error::RootFinding("zero leading coefficient".into()));
    }
    let monic: Vec<f64> = asc.iter().map(|c| c / lead).collect();
    let deriv = poly_derivative(&monic);

    // start on a circle whose radius approximates the geometric mean of the
    // root moduli, with an angle twist that breaks symmetric stagnation
    let radius = if monic[0] != 0.0 {
        monic[0].abs().powf(1.0 / degree as f64).clamp(1e-3, 1e6)
    } else {
        0.5
    };
    let mut z: Vec<Complex64> = (0..degree)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / degree as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    let eps = f64::EPSILON;
    for _ in 0..ABERTH_MAX_ITERS {
        let mut all_settled = true;
        for j in 0..degree {
            let p = poly_eval(&monic, z[j]);
            let noise_floor = 4.0 * eps * poly_abs_eval(&monic, z[j].norm()).max(f64::MIN_POSITIVE);
            if p.norm() <= noise_floor {
                continue;
            }
            let dp = poly_eval(&deriv, z[j]);
            if dp.norm() == 0.0 {
                // critical point: nudge off it
                let nudge = Complex64::new(1e-8 * (1.0 + z[j].norm()), 1e-8);
                z[j] += nudge;
                all_settled = false;
                continue;
            }
            let newton = p / dp;
            let mut repulsion = Complex64::new(0.0, 0.0);
            for k in 0..degree {
                if k == j {
                    continue;
                }
                let dz = z[j] - z[k];
                if dz.norm() > 0.0 {
                    repulsion += dz.inv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() < 1e-12 {
                newton
            } else {
                newton / denom
            };
            z[j] -= step;
            if step.norm() > 1e-14 * (1.0 + z[j].norm()) {
                all_settled = false;
            }
        }
        if all_settled {
            break;
        }
    }
    Ok(z)
}

/// Detects clusters of nearly coincident roots and replaces each cluster of
/// size `m` by `m` copies of the root of the `(m-1)`-th derivative nearby.
///
/// A simple root iteration stops a distance `O(eps^{1/m})` from an m-fold
/// root, but the nearby root of the `(m-1)`-th derivative matches the m-fold
/// root to full precision, so this pass restores the accuracy of multiple
/// eigenvalues. A candidate replacement is accepted only when its residual
/// stays at the evaluation noise floor, which rejects clusters of genuinely
/// distinct roots.
fn refine_root_clusters(asc: &[f64], roots: &mut [Complex64]) {
    let m = roots.len();
    if m < 2 {
        return;
    }
    let lead = asc[asc.len() - 1];
    let monic: Vec<f64> = asc.iter().map(|c| c / lead).collect();

    // union-find over the closeness relation
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for i in 0..m {
        for j in i + 1..m {
            let gap = (roots[i] - roots[j]).norm();
            let scale = 1.0 + roots[i].norm().max(roots[j].norm());
            if gap <= 2e-5 * scale {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut clusters: std::collections::BTreeMap<usize, Vec<usize>> =
        std::collections::BTreeMap::new();
    for i in 0..m {
        let r = find(&mut parent, i);
        clusters.entry(r).or_default().push(i);
    }

    let eps = f64::EPSILON;
    for members in clusters.values() {
        let size = members.len();
        if size < 2 {
            continue;
        }
        let centroid = members.iter().map(|&i| roots[i]).sum::<Complex64>() / size as f64;
        // Newton on the (size-1)-th derivative, which has the multiple root
        // as a simple root
        let mut target = monic.clone();
        for _ in 0..size - 1 {
            target = poly_derivative(&target);
        }
        let refined = newton_polish(&target, centroid);
        let candidate_residual = poly_eval(&monic, refined).norm();
        let member_residual = members
            .iter()
            .map(|&i| poly_eval(&monic, roots[i]).norm())
            .fold(0.0f64, f64::max);
        let noise = eps * poly_abs_eval(&monic, refined.norm()).max(f64::MIN_POSITIVE);
        if candidate_residual <= 4.0 * member_residual + 64.0 * noise {
            for &i in members {
                roots[i] = refined;
            }
        }
    }
}

fn newton_polish(asc: &[f64], start: Complex64) -> Complex64 {
    let deriv = poly_derivative(asc);
    let mut z = start;
    for _ in 0..60 {
        let p = poly_eval(asc, z);
        let dp = poly_eval(&deriv, z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        z -= step;
        if step.norm() <= 1e-16 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}
