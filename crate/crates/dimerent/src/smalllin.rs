//! Dense linear algebra for real symmetric 4x4 matrices.
//!
//! Everything the dimer model needs fits in fixed-size arrays: the
//! Hamiltonian, the density matrix and its partial transpose are all real
//! symmetric 4x4 matrices (the only imaginary Pauli term, sigma_y (x) sigma_y,
//! is itself real). Eigendecomposition uses cyclic Jacobi rotations, which at
//! this size are exact to machine precision, branch-free to reason about, and
//! deterministic.
//!
//! Conventions:
//!
//! * `kron(a, b)[2i + k][2j + l] = a[i][j] * b[k][l]` (row-major blocks of
//!   `b` scaled by entries of `a`).
//! * [`Spectrum4`] stores eigenvalues ascending; `eigenvectors[k]` is the
//!   unit eigenvector for `eigenvalues[k]`, sign-fixed so its first nonzero
//!   component is positive. Ties are ordered by eigenvector lexicographic
//!   order, so equal inputs always produce identical output.

// Index loops throughout: the index arithmetic (Kronecker maps, symmetric
// pair sweeps) is the content, not an iteration detail.
#![allow(clippy::needless_range_loop)]

use thiserror::Error;

/// Real 2x2 matrix, row-major.
pub type Mat2 = [[f64; 2]; 2];

/// Real 4x4 matrix, row-major. Not necessarily symmetric.
pub type Mat4 = [[f64; 4]; 4];

/// Real Pauli-matrix building blocks.
///
/// `sigma_y` is purely imaginary, so it is carried as `IY = i*sigma_y`,
/// which is real; the tensor-product identity
/// `sigma_y (x) sigma_y = -(IY (x) IY)` recovers the physical term.
pub mod pauli {
    use super::Mat2;

    pub const X: Mat2 = [[0.0, 1.0], [1.0, 0.0]];
    pub const Z: Mat2 = [[1.0, 0.0], [0.0, -1.0]];
    /// `i * sigma_y`.
    pub const IY: Mat2 = [[0.0, 1.0], [-1.0, 0.0]];
    pub const I2: Mat2 = [[1.0, 0.0], [0.0, 1.0]];
}

#[derive(Debug, Error, PartialEq)]
pub enum LinAlgError {
    #[error("matrix entry ({0},{1}) is not finite")]
    NonFinite(usize, usize),
    #[error("matrix entries ({0},{1}) and ({1},{0}) differ; symmetric input required")]
    NotSymmetric(usize, usize),
    #[error("Jacobi iteration did not converge within {0} sweeps")]
    NoConvergence(usize),
}

/// Real symmetric 4x4 matrix. Symmetry is exact (bitwise) and enforced at
/// construction, so downstream code never needs to re-check it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymMatrix4 {
    rows: [[f64; 4]; 4],
}

impl SymMatrix4 {
    /// Validates exact symmetry (`rows[i][j] == rows[j][i]`) and finiteness.
    pub fn new(rows: Mat4) -> Result<Self, LinAlgError> {
        for i in 0..4 {
            for j in 0..4 {
                if !rows[i][j].is_finite() {
                    return Err(LinAlgError::NonFinite(i, j));
                }
            }
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                if rows[i][j] != rows[j][i] {
                    return Err(LinAlgError::NotSymmetric(i, j));
                }
            }
        }
        Ok(Self { rows })
    }

    /// Builds from the upper triangle, mirroring it so symmetry is exact by
    /// construction. Entries below the diagonal in `upper` are ignored.
    pub fn from_upper(upper: Mat4) -> Result<Self, LinAlgError> {
        let mut rows = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in i..4 {
                if !upper[i][j].is_finite() {
                    return Err(LinAlgError::NonFinite(i, j));
                }
                rows[i][j] = upper[i][j];
                rows[j][i] = upper[i][j];
            }
        }
        Ok(Self { rows })
    }

    pub fn zero() -> Self {
        Self {
            rows: [[0.0; 4]; 4],
        }
    }

    pub fn identity() -> Self {
        Self::diag([1.0; 4])
    }

    pub fn diag(d: [f64; 4]) -> Self {
        let mut rows = [[0.0; 4]; 4];
        for i in 0..4 {
            rows[i][i] = d[i];
        }
        Self { rows }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &Mat4 {
        &self.rows
    }

    pub fn trace(&self) -> f64 {
        self.rows[0][0] + self.rows[1][1] + self.rows[2][2] + self.rows[3][3]
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut rows = self.rows;
        for i in 0..4 {
            for j in 0..4 {
                rows[i][j] += other.rows[i][j];
            }
        }
        Self { rows }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut rows = self.rows;
        for i in 0..4 {
            for j in 0..4 {
                rows[i][j] -= other.rows[i][j];
            }
        }
        Self { rows }
    }

    pub fn scaled(&self, k: f64) -> Self {
        let mut rows = self.rows;
        for row in rows.iter_mut() {
            for x in row.iter_mut() {
                *x *= k;
            }
        }
        Self { rows }
    }

    /// Frobenius (Hilbert-Schmidt) norm.
    pub fn hs_norm(&self) -> f64 {
        hs_norm(&self.rows)
    }
}

/// Eigendecomposition of a [`SymMatrix4`].
///
/// `eigenvalues` ascend; `eigenvectors[k]` is the orthonormal eigenvector
/// belonging to `eigenvalues[k]`, with its first nonzero component positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum4 {
    pub eigenvalues: [f64; 4],
    pub eigenvectors: [[f64; 4]; 4],
}

/// Kronecker product of two real 2x2 matrices:
/// `result[2i + k][2j + l] = a[i][j] * b[k][l]`.
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut out = [[0.0; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// Plain 4x4 matrix product.
pub fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = 0.0;
            for k in 0..4 {
                acc += a[i][k] * b[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Frobenius (Hilbert-Schmidt) norm of a 4x4 matrix:
/// `sqrt(sum_ij m[i][j]^2)`.
pub fn hs_norm(m: &Mat4) -> f64 {
    let mut acc = 0.0;
    for row in m {
        for x in row {
            acc += x * x;
        }
    }
    acc.sqrt()
}

/// Relative off-diagonal mass below which the Jacobi iteration is converged.
const JACOBI_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 32;

fn off_diagonal_norm(a: &Mat4) -> f64 {
    let mut acc = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                acc += a[i][j] * a[i][j];
            }
        }
    }
    acc.sqrt()
}

/// Eigendecomposition by cyclic Jacobi rotations.
///
/// Sweeps annihilate each off-diagonal pair (p,q) in turn with a plane
/// rotation; the iteration stops when the off-diagonal Frobenius mass drops
/// below `1e-14 * ||m||_F`. A rotation is skipped when its target entry is
/// already exactly zero, so block structure in the input (common here: the
/// Hamiltonian couples only the central basis pair) passes through without
/// contaminating unrelated entries.
pub fn eig_sym(m: &SymMatrix4) -> Result<Spectrum4, LinAlgError> {
    let norm = m.hs_norm();
    let mut a = m.rows;
    // Columns of v accumulate the rotations: m = v * diag(lambda) * v^T.
    let mut v = [[0.0; 4]; 4];
    for i in 0..4 {
        v[i][i] = 1.0;
    }

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= JACOBI_TOL * norm {
            converged = true;
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                // tan of the rotation angle; the smaller root keeps |t| <= 1.
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                a[p][p] -= t * apq;
                a[q][q] += t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for r in 0..4 {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r][p];
                    let arq = a[r][q];
                    a[r][p] = arp - s * (arq + tau * arp);
                    a[p][r] = a[r][p];
                    a[r][q] = arq + s * (arp - tau * arq);
                    a[q][r] = a[r][q];
                }
                for r in 0..4 {
                    let vrp = v[r][p];
                    let vrq = v[r][q];
                    v[r][p] = vrp - s * (vrq + tau * vrp);
                    v[r][q] = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > JACOBI_TOL * norm {
        return Err(LinAlgError::NoConvergence(JACOBI_MAX_SWEEPS));
    }

    // (eigenvalue, eigenvector) pairs, sign-fixed then ordered.
    let mut pairs: [(f64, [f64; 4]); 4] = [(0.0, [0.0; 4]); 4];
    for k in 0..4 {
        let mut vec = [v[0][k], v[1][k], v[2][k], v[3][k]];
        if let Some(first) = vec.iter().find(|x| **x != 0.0) {
            if *first < 0.0 {
                for x in vec.iter_mut() {
                    *x = -*x;
                }
            }
        }
        pairs[k] = (a[k][k], vec);
    }
    pairs.sort_by(|x, y| {
        x.0.total_cmp(&y.0).then_with(|| {
            for i in 0..4 {
                let ord = x.1[i].total_cmp(&y.1[i]);
                if ord != std::cmp::Ordering::Equal {
                    return ord;
                }
            }
            std::cmp::Ordering::Equal
        })
    });

    let mut eigenvalues = [0.0; 4];
    let mut eigenvectors = [[0.0; 4]; 4];
    for k in 0..4 {
        eigenvalues[k] = pairs[k].0;
        eigenvectors[k] = pairs[k].1;
    }
    Ok(Spectrum4 {
        eigenvalues,
        eigenvectors,
    })
}

/// Rebuilds `sum_k f(lambda_k) v_k v_k^T` from a spectrum. Only the upper
/// triangle is accumulated and then mirrored, so the result is exactly
/// symmetric.
pub(crate) fn reconstruct(spectrum: &Spectrum4, f: impl Fn(f64) -> f64) -> SymMatrix4 {
    let fv = [
        f(spectrum.eigenvalues[0]),
        f(spectrum.eigenvalues[1]),
        f(spectrum.eigenvalues[2]),
        f(spectrum.eigenvalues[3]),
    ];
    let mut rows = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in i..4 {
            let mut acc = 0.0;
            for k in 0..4 {
                acc += fv[k] * spectrum.eigenvectors[k][i] * spectrum.eigenvectors[k][j];
            }
            rows[i][j] = acc;
            rows[j][i] = acc;
        }
    }
    SymMatrix4 { rows }
}

/// Matrix function of a symmetric matrix: `f` applied to each eigenvalue in
/// the eigenbasis, `func_sym(m, f) = V f(Lambda) V^T`.
pub fn func_sym(m: &SymMatrix4, f: impl Fn(f64) -> f64) -> Result<SymMatrix4, LinAlgError> {
    let spectrum = eig_sym(m)?;
    Ok(reconstruct(&spectrum, f))
}
