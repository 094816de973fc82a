//! Run the oracle cross-checks in-process and poke the two brute-force
//! oracles directly on one state: the general concurrence agrees with the
//! closed-form measure, and a dense scan over candidate separable states
//! lands on the closed-form nearest point.
//!
//! Run with: cargo run --example verify_oracles

use dimerent::entanglement::{closest_separable_rho23, measure};
use dimerent::oracle::{concurrence, grid_min_distance, run_all_checks, VerifyGrid};
use dimerent::thermal::density_closed_form;
use dimerent::{DimerParams, FieldSpec, ThermalPoint};

fn main() {
    let params = DimerParams::new(-136.0).expect("valid coupling");
    let field = FieldSpec::new(10.0).expect("valid field");
    let point = ThermalPoint::new(60.0).expect("valid temperature");
    let rho = density_closed_form(&params, &field, &point);

    let direct = measure(&params, &field, &point).value;
    let conc = concurrence(&rho.matrix()).expect("valid state");
    println!("closed-form measure   {direct:.15}");
    println!("numeric concurrence   {conc:.15}");
    assert!((direct - conc).abs() < 1e-12);

    let closed_nearest = closest_separable_rho23(&rho).expect("entangled");
    let (scanned_nearest, _dist) = grid_min_distance(&rho, 1_000_000).expect("entangled");
    println!("nearest separable rho23: closed {closed_nearest:.9}, scanned {scanned_nearest:.9}");
    assert!((closed_nearest - scanned_nearest).abs() < 1e-5);

    println!("\noracle sweep over the default grid:");
    let reports = run_all_checks(&VerifyGrid::coarse()).expect("grid evaluates");
    for r in &reports {
        println!(
            "  {:<30} {:>6} points  max dev {:>9.2e}  {}",
            r.check_name,
            r.grid_size,
            r.max_abs_deviation,
            if r.pass { "PASS" } else { "FAIL" }
        );
    }
    assert!(reports.iter().all(|r| r.pass));
}
