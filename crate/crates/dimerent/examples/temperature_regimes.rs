//! Three qualitatively different temperature profiles, set by how the
//! field compares to the coupling: below |J| the measure starts saturated
//! and decays; at exactly |J| it starts at one half; above |J| it starts
//! at zero, rises to an interior peak, then dies at the same T_c.
//!
//! Run with: cargo run --example temperature_regimes

use dimerent::entanglement::{measure, peak_temperature, zero_t_limit};
use dimerent::{DimerParams, FieldSpec, ThermalPoint};

fn main() {
    let params = DimerParams::new(-10.0).expect("valid coupling");
    let cold = ThermalPoint::new(0.01).expect("valid temperature");

    println!("J = -10 K, T = 0.01 K:");
    for b in [5.0, 10.0, 20.0] {
        let field = FieldSpec::new(b).expect("valid field");
        let r = measure(&params, &field, &cold);
        let limit = zero_t_limit(&params, &field);
        println!(
            "  B = {b:>4} K: E = {:>12.9}  (zero-T limit {limit}, {})",
            r.value, r.regime
        );
        assert!((r.value - limit).abs() < 1e-3);
    }

    // Strong field: entanglement grows out of nothing as heat mixes the
    // polarized ground state with the singlet.
    let field = FieldSpec::new(20.0).expect("valid field");
    let peak = peak_temperature(&params, &field)
        .expect("search bracketed")
        .expect("strong field has a peak");
    println!(
        "\nB = 20 K: thermally activated peak E = {:.9} at T = {:.6} K",
        peak.value, peak.t_m_kelvin
    );
    for dt in [-0.5, 0.5] {
        let nearby = ThermalPoint::new(peak.t_m_kelvin + dt).expect("valid temperature");
        assert!(measure(&params, &field, &nearby).value < peak.value);
    }

    // Weak and medium fields never beat their cold-limit start.
    for b in [5.0, 10.0] {
        let field = FieldSpec::new(b).expect("valid field");
        assert_eq!(peak_temperature(&params, &field).expect("classified"), None);
    }
    println!("B <= |J|: no interior peak, the profile only decays");
}
