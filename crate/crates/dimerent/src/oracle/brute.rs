//! The brute-force oracles themselves.
//!
//! Deliberately independent: nothing here calls into [`crate::entanglement`].
//! Separability is decided by numerically diagonalizing the partial
//! transpose, the nearest separable state is found by scanning, and
//! concurrence goes through the full spin-flip spectrum.

use crate::smalllin::{eig_sym, func_sym, mat_mul, LinAlgError, Mat4, SymMatrix4};
use crate::thermal::{DensityMatrix, StateError};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum OracleError {
    #[error("input state is separable; nothing to minimize")]
    Separable,
    #[error("grid of {0} points is too coarse; need at least 1000")]
    TooFewPoints(usize),
    #[error("non-physical density matrix: {0}")]
    NonPhysical(#[from] StateError),
    #[error("linear algebra failure: {0}")]
    LinAlg(#[from] LinAlgError),
    #[error("verification grid is empty")]
    EmptyGrid,
}

/// `sigma_y (x) sigma_y`, the two-qubit spin-flip operator. Real.
const SPIN_FLIP: Mat4 = [
    [0.0, 0.0, 0.0, -1.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
];

/// Numeric separability verdict: smallest eigenvalue of the partial
/// transpose, found by the dense eigensolver rather than any closed form.
fn pt_min_eigenvalue(rho: &DensityMatrix) -> Result<f64, LinAlgError> {
    let m = rho.matrix();
    let a = m.rows();
    let mut pt = [[0.0_f64; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    pt[2 * i + l][2 * j + k] = a[2 * i + k][2 * j + l];
                }
            }
        }
    }
    let spectrum = eig_sym(&SymMatrix4::new(pt).expect("transpose of a symmetric matrix"))?;
    Ok(spectrum.eigenvalues[0])
}

/// Scans the separable band for the state nearest to `rho`.
///
/// Candidates are the `n_points` cell centers of a uniform partition of
/// `[-sqrt(rho11 rho44), 0]`, the interval the equal-diagonal separable
/// family occupies. Returns the minimizing candidate and the distance
/// `sqrt(2) |rho23 - argmin|`; ties keep the earliest candidate.
///
/// The argmin lands within half a cell of the interval edge the closed form
/// predicts, so halving the cell width halves the error: the first-order
/// convergence the calibration test pins down.
pub fn grid_min_distance(rho: &DensityMatrix, n_points: usize) -> Result<(f64, f64), OracleError> {
    if n_points < 1000 {
        return Err(OracleError::TooFewPoints(n_points));
    }
    if pt_min_eigenvalue(rho)? >= -1e-14 {
        return Err(OracleError::Separable);
    }
    let lo = -(rho.rho11() * rho.rho44()).sqrt();
    let width = -lo;
    let step = width / n_points as f64;
    let mut best_c = f64::NAN;
    let mut best_d = f64::INFINITY;
    for k in 0..n_points {
        let c = lo + (k as f64 + 0.5) * step;
        let d = (rho.rho23() - c).abs();
        if d < best_d {
            best_d = d;
            best_c = c;
        }
    }
    Ok((best_c, std::f64::consts::SQRT_2 * best_d))
}

/// Wootters concurrence of a real two-qubit state, by the general route.
///
/// Validates the matrix numerically (unit trace, eigenvalues above -1e-12),
/// then takes `s_i = |eig(sqrt(rho) Y sqrt(rho))|` in decreasing order with
/// `Y` the spin flip, and returns `max(0, s1 - s2 - s3 - s4)`.
///
/// `sqrt(rho) Y sqrt(rho)` is symmetric and similar to `Y rho` (squaring it
/// gives a conjugate of `rho Y rho Y`), so its absolute eigenvalues are the
/// square roots of the usual `rho rho~` spectrum, obtained here without the
/// square-root-of-a-product step that costs half the significant digits
/// near zero eigenvalues.
///
/// No X-structure is assumed anywhere; the dimer's closed forms are checked
/// against this, never used by it.
pub fn concurrence(rho: &SymMatrix4) -> Result<f64, OracleError> {
    let spectrum = eig_sym(rho)?;
    if (rho.trace() - 1.0).abs() > 1e-12 {
        return Err(StateError::Trace(rho.trace()).into());
    }
    if spectrum.eigenvalues[0] < -1e-12 {
        return Err(StateError::NotPositive(spectrum.eigenvalues[0]).into());
    }
    let root = func_sym(rho, |x| x.max(0.0).sqrt())?;
    let flipped = mat_mul(&mat_mul(root.rows(), &SPIN_FLIP), root.rows());
    // Symmetric up to rounding; fold onto the upper triangle.
    let sym = SymMatrix4::from_upper(flipped)?;
    let mut s: Vec<f64> = eig_sym(&sym)?.eigenvalues.iter().map(|x| x.abs()).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Ok((s[0] - s[1] - s[2] - s[3]).max(0.0))
}
