//! Model parameters and Hamiltonian of the spin-1/2 dimer.
//!
//! The two-spin Heisenberg Hamiltonian in a z-axis field,
//! `H = -J S1.S2 - g mu_B B (S1z + S2z)`, is expressed in reduced Kelvin
//! units: `j_kelvin = J/k_B` and `b_kelvin = g mu_B B / k_B` are both
//! temperatures, so every formula downstream is a function of ratios like
//! `j_kelvin / t_kelvin`. Negative `j_kelvin` is antiferromagnetic coupling
//! (singlet ground state at zero field); positive is ferromagnetic.
//!
//! Basis order is `|uu>, |ud>, |du>, |dd>` throughout.

use crate::smalllin::SymMatrix4;
use thiserror::Error;

/// Bohr magneton over Boltzmann constant, Kelvin per Tesla (CODATA).
///
/// Fixed for the whole process; field conversions scale it by the g-factor:
/// `b_kelvin = g * MU_B_OVER_K_B * b_tesla`.
pub const MU_B_OVER_K_B: f64 = 0.67171381563;

#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("{0} must be finite")]
    NonFinite(&'static str),
    #[error("{0} must be positive (got {1})")]
    NonPositive(&'static str, f64),
}

/// Exchange coupling and g-factor of one dimer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimerParams {
    j_kelvin: f64,
    g_factor: f64,
}

impl DimerParams {
    /// Coupling in Kelvin with the free-electron default `g = 2`.
    pub fn new(j_kelvin: f64) -> Result<Self, ParamError> {
        Self::with_g_factor(j_kelvin, 2.0)
    }

    pub fn with_g_factor(j_kelvin: f64, g_factor: f64) -> Result<Self, ParamError> {
        if !j_kelvin.is_finite() {
            return Err(ParamError::NonFinite("j_kelvin"));
        }
        if !g_factor.is_finite() {
            return Err(ParamError::NonFinite("g_factor"));
        }
        if g_factor <= 0.0 {
            return Err(ParamError::NonPositive("g_factor", g_factor));
        }
        Ok(Self { j_kelvin, g_factor })
    }

    pub fn j_kelvin(&self) -> f64 {
        self.j_kelvin
    }

    pub fn g_factor(&self) -> f64 {
        self.g_factor
    }

    pub fn is_antiferromagnetic(&self) -> bool {
        self.j_kelvin < 0.0
    }
}

/// Magnetic field in reduced Kelvin units (`g mu_B B / k_B`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSpec {
    b_kelvin: f64,
}

impl FieldSpec {
    pub fn new(b_kelvin: f64) -> Result<Self, ParamError> {
        if !b_kelvin.is_finite() {
            return Err(ParamError::NonFinite("b_kelvin"));
        }
        Ok(Self { b_kelvin })
    }

    /// Converts a laboratory field in Tesla using the dimer's g-factor.
    pub fn from_tesla(b_tesla: f64, params: &DimerParams) -> Result<Self, ParamError> {
        if !b_tesla.is_finite() {
            return Err(ParamError::NonFinite("b_tesla"));
        }
        Self::new(tesla_to_kelvin(b_tesla, params.g_factor()))
    }

    pub fn b_kelvin(&self) -> f64 {
        self.b_kelvin
    }
}

/// `b_tesla -> b_kelvin` for a given g-factor.
pub fn tesla_to_kelvin(b_tesla: f64, g_factor: f64) -> f64 {
    g_factor * MU_B_OVER_K_B * b_tesla
}

/// `b_kelvin -> b_tesla` for a given g-factor.
pub fn kelvin_to_tesla(b_kelvin: f64, g_factor: f64) -> f64 {
    b_kelvin / (g_factor * MU_B_OVER_K_B)
}

/// Dimer Hamiltonian in Kelvin units, basis `|uu>, |ud>, |du>, |dd>`:
///
/// ```text
/// [ -j/4 - b    0        0       0      ]
/// [    0       j/4     -j/2      0      ]
/// [    0      -j/2      j/4      0      ]
/// [    0        0        0    -j/4 + b  ]
/// ```
///
/// Equivalent to `-(j/4) sum_a sigma_a (x) sigma_a - (b/2)(sigma_z (x) I +
/// I (x) sigma_z)`; the closed-form fill is used here and the Kronecker
/// assembly is exercised against it in the tests.
pub fn build_hamiltonian(params: &DimerParams, field: &FieldSpec) -> SymMatrix4 {
    let j = params.j_kelvin();
    let b = field.b_kelvin();
    SymMatrix4::from_upper([
        [-j / 4.0 - b, 0.0, 0.0, 0.0],
        [0.0, j / 4.0, -j / 2.0, 0.0],
        [0.0, 0.0, j / 4.0, 0.0],
        [0.0, 0.0, 0.0, -j / 4.0 + b],
    ])
    .expect("finite parameters produce a finite Hamiltonian")
}

/// Energy levels in closed form, ascending: the field-split triplet
/// `{-j/4 - b, -j/4, -j/4 + b}` and the singlet `3j/4`.
pub fn analytic_spectrum(params: &DimerParams, field: &FieldSpec) -> [f64; 4] {
    let j = params.j_kelvin();
    let b = field.b_kelvin();
    let mut levels = [-j / 4.0 - b, -j / 4.0 + b, -j / 4.0, 3.0 * j / 4.0];
    levels.sort_by(f64::total_cmp);
    levels
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;
    use crate::smalllin::{eig_sym, kron, pauli, Mat4};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    /// Tensor-product assembly of the same Hamiltonian, used as the second,
    /// structurally independent construction route.
    fn hamiltonian_from_kron(j: f64, b: f64) -> Mat4 {
        let xx = kron(&pauli::X, &pauli::X);
        let yy = kron(&pauli::IY, &pauli::IY); // = -(sigma_y (x) sigma_y)
        let zz = kron(&pauli::Z, &pauli::Z);
        let zi = kron(&pauli::Z, &pauli::I2);
        let iz = kron(&pauli::I2, &pauli::Z);
        let mut h = [[0.0; 4]; 4];
        for i in 0..4 {
            for k in 0..4 {
                let exchange = xx[i][k] - yy[i][k] + zz[i][k];
                h[i][k] = -(j / 4.0) * exchange - (b / 2.0) * (zi[i][k] + iz[i][k]);
            }
        }
        h
    }

    #[test]
    fn hamiltonian_known_matrices() {
        let p = DimerParams::new(0.0).unwrap();
        let f = FieldSpec::new(0.0).unwrap();
        assert_eq!(
            build_hamiltonian(&p, &f),
            crate::smalllin::SymMatrix4::zero()
        );

        let p = DimerParams::new(-10.0).unwrap();
        let h = build_hamiltonian(&p, &FieldSpec::new(0.0).unwrap());
        assert_eq!(h.get(0, 0), 2.5);
        assert_eq!(h.get(1, 1), -2.5);
        assert_eq!(h.get(1, 2), 5.0);
        assert_eq!(h.get(3, 3), 2.5);

        let h = build_hamiltonian(&p, &FieldSpec::new(10.0).unwrap());
        assert_eq!(h.get(0, 0), -7.5);
        assert_eq!(h.get(1, 1), -2.5);
        assert_eq!(h.get(2, 1), 5.0);
        assert_eq!(h.get(3, 3), 12.5);
    }

    #[test]
    fn hamiltonian_matches_kron_assembly() {
        for &j in &[-136.0, -10.0, -1.0, 0.0, 2.0, 50.0] {
            for &b in &[-200.0, -7.5, 0.0, 0.1, 12.0, 199.0] {
                let p = DimerParams::new(j).unwrap();
                let f = FieldSpec::new(b).unwrap();
                let closed = build_hamiltonian(&p, &f);
                let kroned = hamiltonian_from_kron(j, b);
                for i in 0..4 {
                    for k in 0..4 {
                        assert!(
                            (closed.get(i, k) - kroned[i][k]).abs()
                                <= 1e-14 * (1.0 + j.abs() + b.abs()),
                            "J={j} B={b} entry ({i},{k}): {} vs {}",
                            closed.get(i, k),
                            kroned[i][k]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn spectrum_known_values() {
        let p = DimerParams::new(-10.0).unwrap();
        let s = analytic_spectrum(&p, &FieldSpec::new(0.0).unwrap());
        assert_eq!(s, [-7.5, 2.5, 2.5, 2.5]);

        let p = DimerParams::new(0.0).unwrap();
        let s = analytic_spectrum(&p, &FieldSpec::new(4.0).unwrap());
        assert_eq!(s, [-4.0, 0.0, 0.0, 4.0]);
    }

    #[test]
    fn spectrum_matches_eigensolver() {
        for &j in &[-136.0, -10.0, -0.5, 3.0, 40.0] {
            for &b in &[-150.0, -10.0, 0.0, 5.0, 77.0] {
                let p = DimerParams::new(j).unwrap();
                let f = FieldSpec::new(b).unwrap();
                let analytic = analytic_spectrum(&p, &f);
                let numeric = eig_sym(&build_hamiltonian(&p, &f)).unwrap().eigenvalues;
                for (a, n) in analytic.iter().zip(numeric) {
                    assert_relative_eq!(*a, n, epsilon = 1e-12, max_relative = 1e-12);
                }
            }
        }
    }

    #[test]
    fn conversions_hit_reference_fields() {
        // Laboratory anchors for g = 2: 10 K ~ 7.456 T and 140 K ~ 104.238 T
        // (published figures carry a coarser constant; agreement is 0.5%).
        assert!((tesla_to_kelvin(7.456, 2.0) - 10.0).abs() / 10.0 <= 5e-3);
        assert!((tesla_to_kelvin(104.238, 2.0) - 140.0).abs() / 140.0 <= 5e-3);
        assert!((kelvin_to_tesla(10.0, 2.0) - 7.456).abs() / 7.456 <= 5e-3);
        assert!((kelvin_to_tesla(140.0, 2.0) - 104.238).abs() / 104.238 <= 5e-3);
        // Exact values under the CODATA constant.
        assert_relative_eq!(
            kelvin_to_tesla(10.0, 2.0),
            7.443646213098212,
            max_relative = 1e-12
        );
        assert_eq!(tesla_to_kelvin(0.0, 2.0), 0.0);
    }

    #[test]
    fn param_validation() {
        assert!(DimerParams::new(f64::NAN).is_err());
        assert!(DimerParams::with_g_factor(-10.0, 0.0).is_err());
        assert!(DimerParams::with_g_factor(-10.0, -2.0).is_err());
        assert!(FieldSpec::new(f64::INFINITY).is_err());
        assert_eq!(DimerParams::new(-136.0).unwrap().g_factor(), 2.0);
    }

    proptest! {
        #[test]
        fn hamiltonian_is_traceless(j in -200.0f64..200.0, b in -200.0f64..200.0) {
            let p = DimerParams::new(j).unwrap();
            let f = FieldSpec::new(b).unwrap();
            let h = build_hamiltonian(&p, &f);
            prop_assert!(h.trace().abs() <= 1e-13 * (1.0 + j.abs() + b.abs()));
        }

        #[test]
        fn spectrum_is_even_in_field(j in -200.0f64..200.0, b in -200.0f64..200.0) {
            let p = DimerParams::new(j).unwrap();
            let plus = analytic_spectrum(&p, &FieldSpec::new(b).unwrap());
            let minus = analytic_spectrum(&p, &FieldSpec::new(-b).unwrap());
            prop_assert_eq!(plus, minus);
        }

        #[test]
        fn hamiltonian_is_linear_in_parameters(
            j1 in -100.0f64..100.0, j2 in -100.0f64..100.0,
            b1 in -100.0f64..100.0, b2 in -100.0f64..100.0,
        ) {
            let h = |j: f64, b: f64| {
                build_hamiltonian(
                    &DimerParams::new(j).unwrap(),
                    &FieldSpec::new(b).unwrap(),
                )
            };
            let combined = h(j1 + j2, b1 + b2);
            let summed = h(j1, b1).add(&h(j2, b2));
            for i in 0..4 {
                for k in 0..4 {
                    prop_assert!(
                        (combined.get(i, k) - summed.get(i, k)).abs()
                            <= 1e-13 * (1.0 + combined.get(i, k).abs())
                    );
                }
            }
        }

        #[test]
        fn tesla_kelvin_roundtrip(b in -500.0f64..500.0, g in 0.1f64..5.0) {
            let forth = tesla_to_kelvin(b, g);
            let back = kelvin_to_tesla(forth, g);
            prop_assert!((back - b).abs() <= 1e-12 * (1.0 + b.abs()));
        }
    }
}
