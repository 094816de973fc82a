//! Build a dimer Hamiltonian and its thermal state, then cross-check the
//! closed-form density matrix against a numeric Gibbs construction.
//!
//! Run with: cargo run --example thermal_state

use dimerent::dimer::{analytic_spectrum, build_hamiltonian};
use dimerent::thermal::{density_closed_form, gibbs_oracle, partition_function};
use dimerent::{DimerParams, FieldSpec, ThermalPoint};

fn main() {
    let params = DimerParams::new(-10.0).expect("valid coupling");
    let field = FieldSpec::new(6.0).expect("valid field");
    let point = ThermalPoint::new(2.0).expect("valid temperature");

    let h = build_hamiltonian(&params, &field);
    println!("Hamiltonian (Kelvin units, basis |uu>, |ud>, |du>, |dd>):");
    for row in h.rows() {
        println!(
            "  [{:>8.3} {:>8.3} {:>8.3} {:>8.3}]",
            row[0], row[1], row[2], row[3]
        );
    }

    let levels = analytic_spectrum(&params, &field);
    println!("\nenergy levels: {levels:.3?}");
    println!(
        "partition function Z = {:.12}",
        partition_function(&params, &field, &point)
    );

    let rho = density_closed_form(&params, &field, &point);
    println!(
        "\nthermal state diagonal: [{:.6}, {:.6}, {:.6}, {:.6}]",
        rho.rho11(),
        rho.rho22(),
        rho.rho33(),
        rho.rho44()
    );
    println!("central coherence rho23 = {:.6}", rho.rho23());

    // The closed form must match exp(-H/T)/Z built by diagonalization.
    let numeric = gibbs_oracle(&h, &point).expect("jacobi converges");
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for k in 0..4 {
            worst = worst.max((rho.matrix().get(i, k) - numeric.get(i, k)).abs());
        }
    }
    println!("\nclosed form vs numeric Gibbs state: max |diff| = {worst:.3e}");
    assert!(worst < 1e-14);
}
