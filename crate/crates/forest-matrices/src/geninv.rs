//! Generalized inverses of the Laplacian in terms of forest matrices: the
//! group inverse `L^#` by four routes (a closed forest formula, two
//! perturbation formulas, and a `tau -> infinity` limit used as a
//! convergence diagnostic), the Moore-Penrose inverse `L^+`, the
//! eigenprojection identity `J~ = I - L L^#`, and the dense in-forest
//! matrices `(L + alpha J~)^{-1}`.
//!
//! The Laplacian always has index one, so its Drazin inverse is the group
//! inverse and no higher-index machinery is needed.

use crate::error::{Error, Result};
use crate::forest::ForestSpectrum;
use crate::graph::LaplacianMatrix;
use crate::linalg::{rel_eps, Matrix};

/// Group-inverse axiom residuals (max-abs norms): `LXL = L`, `XLX = X`,
/// `LX = XL`.
#[derive(Clone, Copy, Debug)]
pub struct GroupAxiomResiduals {
    pub axa: f64,
    pub xax: f64,
    pub commute: f64,
}

/// Moore-Penrose axiom residuals: `LXL = L`, `XLX = X`, and symmetry of
/// `LX` and `XL` (the transpose plays the role of the conjugate transpose;
/// everything here is real).
#[derive(Clone, Copy, Debug)]
pub struct PenroseAxiomResiduals {
    pub axa: f64,
    pub xax: f64,
    pub ax_symmetry: f64,
    pub xa_symmetry: f64,
}

/// Group inverse and Moore-Penrose inverse with per-method results and the
/// axiom residuals of the reported matrices.
#[derive(Clone, Debug)]
pub struct GeneralizedInverseReport {
    /// The reported group inverse (the exact forest formula).
    pub group_inverse: Matrix,
    pub by_forest: Matrix,
    pub by_perturbation: Matrix,
    pub by_projection: Matrix,
    /// `tau (J(tau) - J~)`: approaches the group inverse at rate `O(1/tau)`;
    /// diagnostic only, never the reported value.
    pub tau_limit: Matrix,
    pub moore_penrose: Matrix,
    pub group_residuals: GroupAxiomResiduals,
    pub penrose_residuals: PenroseAxiomResiduals,
}

/// Group inverse by the closed forest formula
/// `L^# = (sigma_{n-d-1} / sigma_{n-d}) (J_{n-d-1} - J~)`.
///
/// For an arcless graph (`n - d = 0`) the formula's `sigma_{n-d-1}` does not
/// exist, but then `L = 0` and the group-inverse axioms force `L^# = 0`, so
/// the zero matrix is returned directly.
pub fn group_inverse_forest(s: &ForestSpectrum) -> Result<Matrix> {
    let n = s.n();
    let m = s.max_forest_arcs();
    if m == 0 {
        return Ok(Matrix::zeros(n, n));
    }
    let ratio = s.sigma(m - 1) / s.sigma(m);
    s.normalized(m - 1)?.sub(&s.normalized(m)?)?.scale(ratio)
}

/// Group inverse via the complementary perturbation:
/// `L^# = (L + alpha J~)^{-1} - alpha^{-1} J~`, any `alpha != 0`.
pub fn group_inverse_perturbation(
    lap: &LaplacianMatrix,
    projection: &Matrix,
    alpha: f64,
    tol: f64,
) -> Result<Matrix> {
    require_nonzero_alpha(alpha)?;
    let perturbed = lap.as_matrix().add(&projection.scale(alpha)?)?;
    let inverse = perturbed.inverse(tol)?;
    inverse.sub(&projection.scale(1.0 / alpha)?)
}

/// Group inverse via the projected resolvent:
/// `L^# = (L + alpha J~)^{-1} (I - J~)`, any `alpha != 0`.
pub fn group_inverse_projection(
    lap: &LaplacianMatrix,
    projection: &Matrix,
    alpha: f64,
    tol: f64,
) -> Result<Matrix> {
    require_nonzero_alpha(alpha)?;
    let n = lap.n();
    let perturbed = lap.as_matrix().add(&projection.scale(alpha)?)?;
    let complement = Matrix::identity(n).sub(projection)?;
    perturbed.lu_solve(&complement, tol)
}

/// The scaled deviation `tau (J(tau) - J~)`, which converges to the group
/// inverse as `tau -> infinity` at rate `O(1/tau)`. Exposed for convergence
/// diagnostics only.
pub fn group_inverse_tau_limit(s: &ForestSpectrum, tau: f64) -> Result<Matrix> {
    if !tau.is_finite() || tau < 1.0 {
        return Err(Error::InvalidInput(format!(
            "the tau-limit diagnostic requires tau >= 1, got {tau}"
        )));
    }
    let j_tau = s.parametric(tau)?.normalized;
    let projection = s.normalized(s.max_forest_arcs())?;
    j_tau.sub(&projection)?.scale(tau)
}

/// Eigenprojection identity `J~ = I - L L^#`.
pub fn eigenprojection_identity(lap: &LaplacianMatrix, group_inv: &Matrix) -> Result<Matrix> {
    let n = lap.n();
    Matrix::identity(n).sub(&lap.as_matrix().matmul(group_inv)?)
}

/// Moore-Penrose inverse `L^+ = L^T (J~^T J~ + L L^T)^{-1}`; the inner
/// matrix is `Z Z^T` for the nonsingular `Z = L + J~^T`.
pub fn moore_penrose(lap: &LaplacianMatrix, projection: &Matrix, tol: f64) -> Result<Matrix> {
    let l = lap.as_matrix();
    let gram = projection
        .transpose()
        .matmul(projection)?
        .add(&l.matmul(&l.transpose())?)?;
    l.transpose().matmul(&gram.inverse(tol)?)
}

/// Dense in-forest matrix `(L + alpha J~)^{-1}` by the closed form
/// `(sigma_{n-d-1} / sigma_{n-d}) (J_{n-d-1} + beta J~)` with
/// `beta = sigma_{n-d} / (alpha sigma_{n-d-1}) - 1`, verified against a
/// direct solve. Entrywise nonnegative for
/// `alpha < sigma_{n-d} / sigma_{n-d-1}`, where it is a positive
/// combination of `J_{n-d-1}` and `J~`.
pub fn dense_forest_matrix(
    s: &ForestSpectrum,
    lap: &LaplacianMatrix,
    alpha: f64,
    tol: f64,
) -> Result<Matrix> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "dense in-forest matrices require alpha > 0, got {alpha}"
        )));
    }
    let m = s.max_forest_arcs();
    if m == 0 {
        return Err(Error::DegenerateGraph);
    }
    let ratio = s.sigma(m - 1) / s.sigma(m);
    let beta = s.sigma(m) / (alpha * s.sigma(m - 1)) - 1.0;
    let projection = s.normalized(m)?;
    let closed_form = s
        .normalized(m - 1)?
        .add(&projection.scale(beta)?)?
        .scale(ratio)?;

    // cross-check against a direct solve of (L + alpha J~) X = I
    let perturbed = lap.as_matrix().add(&projection.scale(alpha)?)?;
    let direct = perturbed.inverse(tol)?;
    let scale = closed_form.max_abs().max(direct.max_abs());
    let diff = closed_form.sub(&direct)?.max_abs();
    if diff > rel_eps(tol.max(1e-12) * 100.0, scale) {
        return Err(Error::NumericalInstability(format!(
            "dense forest closed form deviates from the direct inverse by {diff:e}"
        )));
    }
    Ok(closed_form)
}

/// Residuals of the three group-inverse axioms for a candidate `X`.
pub fn group_axiom_residuals(lap: &LaplacianMatrix, x: &Matrix) -> Result<GroupAxiomResiduals> {
    let l = lap.as_matrix();
    let lx = l.matmul(x)?;
    let xl = x.matmul(l)?;
    Ok(GroupAxiomResiduals {
        axa: lx.matmul(l)?.sub(l)?.max_abs(),
        xax: xl.matmul(x)?.sub(x)?.max_abs(),
        commute: lx.sub(&xl)?.max_abs(),
    })
}

/// Residuals of the four Moore-Penrose axioms for a candidate `X`.
pub fn penrose_axiom_residuals(lap: &LaplacianMatrix, x: &Matrix) -> Result<PenroseAxiomResiduals> {
    let l = lap.as_matrix();
    let lx = l.matmul(x)?;
    let xl = x.matmul(l)?;
    Ok(PenroseAxiomResiduals {
        axa: lx.matmul(l)?.sub(l)?.max_abs(),
        xax: xl.matmul(x)?.sub(x)?.max_abs(),
        ax_symmetry: lx.sub(&lx.transpose())?.max_abs(),
        xa_symmetry: xl.sub(&xl.transpose())?.max_abs(),
    })
}

/// Computes every generalized-inverse quantity in one pass: the four group
/// inverse routes (at the given `alpha` and diagnostic `tau`), the
/// Moore-Penrose inverse, and the axiom residuals of the reported matrices.
pub fn generalized_inverse_report(
    s: &ForestSpectrum,
    lap: &LaplacianMatrix,
    alpha: f64,
    tau: f64,
    tol: f64,
) -> Result<GeneralizedInverseReport> {
    require_nonzero_alpha(alpha)?;
    let projection = s.normalized(s.max_forest_arcs())?;
    let by_forest = group_inverse_forest(s)?;
    let by_perturbation = group_inverse_perturbation(lap, &projection, alpha, tol)?;
    let by_projection = group_inverse_projection(lap, &projection, alpha, tol)?;
    let tau_limit = group_inverse_tau_limit(s, tau)?;
    let moore_penrose = moore_penrose(lap, &projection, tol)?;
    let group_residuals = group_axiom_residuals(lap, &by_forest)?;
    let penrose_residuals = penrose_axiom_residuals(lap, &moore_penrose)?;
    Ok(GeneralizedInverseReport {
        group_inverse: by_forest.clone(),
        by_forest,
        by_perturbation,
        by_projection,
        tau_limit,
        moore_penrose,
        group_residuals,
        penrose_residuals,
    })
}

fn require_nonzero_alpha(alpha: f64) -> Result<()> {
    if alpha == 0.0 || !alpha.is_finite() {
        Err(Error::InvalidInput(format!(
            "alpha must be a nonzero finite real, got {alpha}"
        )))
    } else {
        Ok(())
    }
}
