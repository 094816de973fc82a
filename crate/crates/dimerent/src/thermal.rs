//! Gibbs state of the dimer at finite temperature.
//!
//! The density matrix `rho = exp(-H/T)/Z` inherits the Hamiltonian's block
//! structure: diagonal `(rho11, rho22, rho22, rho44)` plus one symmetric
//! off-diagonal pair `rho23` coupling `|ud>` and `|du>`. All Boltzmann
//! factors are evaluated with the largest exponent subtracted first, so the
//! closed forms stay finite at temperatures far below the coupling scale
//! (naively, `exp(-E/T)` for `J = -136` overflows already near 0.2 K).
//!
//! Two independent routes produce the state: [`density_closed_form`]
//! evaluates the published element formulas, and [`gibbs_oracle`]
//! exponentiates the Hamiltonian spectrally. They must agree to 1e-11
//! everywhere; `dimerent verify` checks that on a parameter grid.

use crate::dimer::{DimerParams, FieldSpec, ParamError};
use crate::smalllin::{eig_sym, reconstruct, LinAlgError, SymMatrix4};
use thiserror::Error;

/// Strictly positive temperature in Kelvin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalPoint {
    t_kelvin: f64,
}

impl ThermalPoint {
    pub fn new(t_kelvin: f64) -> Result<Self, ParamError> {
        if !t_kelvin.is_finite() {
            return Err(ParamError::NonFinite("t_kelvin"));
        }
        if t_kelvin <= 0.0 {
            return Err(ParamError::NonPositive("t_kelvin", t_kelvin));
        }
        Ok(Self { t_kelvin })
    }

    pub fn t_kelvin(&self) -> f64 {
        self.t_kelvin
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum StateError {
    #[error("density matrix element {0} is not finite")]
    NonFinite(&'static str),
    #[error("trace is {0}, expected 1 within 1e-12")]
    Trace(f64),
    #[error("smallest eigenvalue {0} is below -1e-12; not positive semidefinite")]
    NotPositive(f64),
}

/// Shifted Boltzmann weights of the four levels.
///
/// Exponents are taken relative to their maximum `shift`, so each weight is
/// in (0, 1] and the sum is in [1, 4]. `offset` is the remaining exponent of
/// the partition function's prefactor; `log Z = offset + shift + ln(sum)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LevelWeights {
    /// `|uu>` level, exponent `(2b + j)/t`.
    pub triplet_up: f64,
    /// `(|ud> + |du>)/sqrt(2)` level, exponent `(b + j)/t`.
    pub triplet_zero: f64,
    /// `(|ud> - |du>)/sqrt(2)` level, exponent `b/t`.
    pub singlet: f64,
    /// `|dd>` level, exponent `j/t`.
    pub triplet_down: f64,
    pub sum: f64,
    pub shift: f64,
    pub offset: f64,
}

impl LevelWeights {
    pub fn compute(j: f64, b: f64, t: f64) -> Self {
        let u_up = (2.0 * b + j) / t;
        let u_zero = (b + j) / t;
        let u_singlet = b / t;
        let u_down = j / t;
        let shift = u_up.max(u_zero).max(u_singlet).max(u_down);
        let triplet_up = (u_up - shift).exp();
        let triplet_zero = (u_zero - shift).exp();
        let singlet = (u_singlet - shift).exp();
        let triplet_down = (u_down - shift).exp();
        let sum = triplet_up + triplet_zero + singlet + triplet_down;
        let offset = -(4.0 * b + 3.0 * j) / (4.0 * t);
        Self {
            triplet_up,
            triplet_zero,
            singlet,
            triplet_down,
            sum,
            shift,
            offset,
        }
    }
}

/// Partition function `Z = sum_i exp(-E_i/T)`.
///
/// The result saturates to `+inf` only when the true value exceeds the f64
/// range; in ratio computations use [`log_partition_function`] instead.
pub fn partition_function(params: &DimerParams, field: &FieldSpec, point: &ThermalPoint) -> f64 {
    let w = LevelWeights::compute(params.j_kelvin(), field.b_kelvin(), point.t_kelvin());
    (w.offset + w.shift).exp() * w.sum
}

/// `ln Z`, finite for any valid parameters (no overflow at low temperature).
pub fn log_partition_function(
    params: &DimerParams,
    field: &FieldSpec,
    point: &ThermalPoint,
) -> f64 {
    let w = LevelWeights::compute(params.j_kelvin(), field.b_kelvin(), point.t_kelvin());
    w.offset + w.shift + w.sum.ln()
}

/// Thermal density matrix of the dimer.
///
/// Invariants held by construction: unit trace (to 1e-12), positive
/// semidefiniteness (eigenvalues above -1e-12), exact block structure with
/// `rho22 == rho33` (stored once), and all other off-diagonal entries
/// exactly zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    rho11: f64,
    rho22: f64,
    rho23: f64,
    rho44: f64,
}

impl DensityMatrix {
    /// Validating constructor. The four arguments are the independent
    /// elements; `rho33` equals `rho22` by symmetry of the family.
    pub fn from_elements(
        rho11: f64,
        rho22: f64,
        rho23: f64,
        rho44: f64,
    ) -> Result<Self, StateError> {
        for (x, name) in [
            (rho11, "rho11"),
            (rho22, "rho22"),
            (rho23, "rho23"),
            (rho44, "rho44"),
        ] {
            if !x.is_finite() {
                return Err(StateError::NonFinite(name));
            }
        }
        let trace = rho11 + 2.0 * rho22 + rho44;
        if (trace - 1.0).abs() > 1e-12 {
            return Err(StateError::Trace(trace));
        }
        // Eigenvalues are rho11, rho44 and rho22 +- rho23.
        let min_eig = rho11.min(rho44).min(rho22 - rho23.abs());
        if min_eig < -1e-12 {
            return Err(StateError::NotPositive(min_eig));
        }
        Ok(Self {
            rho11,
            rho22,
            rho23,
            rho44,
        })
    }

    fn from_elements_unchecked(rho11: f64, rho22: f64, rho23: f64, rho44: f64) -> Self {
        debug_assert!((rho11 + 2.0 * rho22 + rho44 - 1.0).abs() <= 1e-12);
        Self {
            rho11,
            rho22,
            rho23,
            rho44,
        }
    }

    pub fn rho11(&self) -> f64 {
        self.rho11
    }

    pub fn rho22(&self) -> f64 {
        self.rho22
    }

    /// Equal to [`Self::rho22`]; kept as its own accessor because the two
    /// basis states are distinct even though their populations coincide.
    pub fn rho33(&self) -> f64 {
        self.rho22
    }

    pub fn rho23(&self) -> f64 {
        self.rho23
    }

    pub fn rho44(&self) -> f64 {
        self.rho44
    }

    pub fn trace(&self) -> f64 {
        self.rho11 + 2.0 * self.rho22 + self.rho44
    }

    /// Full 4x4 matrix form.
    pub fn matrix(&self) -> SymMatrix4 {
        SymMatrix4::from_upper([
            [self.rho11, 0.0, 0.0, 0.0],
            [0.0, self.rho22, self.rho23, 0.0],
            [0.0, 0.0, self.rho22, 0.0],
            [0.0, 0.0, 0.0, self.rho44],
        ])
        .expect("finite elements")
    }
}

/// Gibbs state in closed form.
///
/// Elements (with `Z` the partition function, all exponentials max-shifted):
///
/// ```text
/// rho11 = exp(j/4t + b/t) / Z          rho22 = rho33 = exp(-j/4t) cosh(j/2t) / Z
/// rho44 = exp(j/4t - b/t) / Z          rho23 =         exp(-j/4t) sinh(j/2t) / Z
/// ```
pub fn density_closed_form(
    params: &DimerParams,
    field: &FieldSpec,
    point: &ThermalPoint,
) -> DensityMatrix {
    let w = LevelWeights::compute(params.j_kelvin(), field.b_kelvin(), point.t_kelvin());
    let rho11 = w.triplet_up / w.sum;
    let rho44 = w.triplet_down / w.sum;
    // cosh/sinh forms split into the two central levels' weights.
    let rho22 = (w.triplet_zero + w.singlet) / (2.0 * w.sum);
    let rho23 = (w.triplet_zero - w.singlet) / (2.0 * w.sum);
    DensityMatrix::from_elements_unchecked(rho11, rho22, rho23, rho44)
}

/// Spectral-decomposition route to the same state: diagonalize `h`, shift
/// eigenvalues by their minimum, exponentiate, normalize by the trace.
/// Independent of the closed forms above; used to cross-check them.
pub fn gibbs_oracle(h: &SymMatrix4, point: &ThermalPoint) -> Result<SymMatrix4, LinAlgError> {
    let spectrum = eig_sym(h)?;
    let lambda_min = spectrum.eigenvalues[0];
    let t = point.t_kelvin();
    let z: f64 = spectrum
        .eigenvalues
        .iter()
        .map(|l| (-(l - lambda_min) / t).exp())
        .sum();
    Ok(reconstruct(&spectrum, |l| {
        (-(l - lambda_min) / t).exp() / z
    }))
}
