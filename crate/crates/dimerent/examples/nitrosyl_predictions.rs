//! Entanglement predictions for the built-in nitrosyl iron complex
//! (J = -136 K): measure values at laboratory field strengths, the
//! decoherence temperature, and the Tesla equivalents of the fields.
//!
//! Run with: cargo run --example nitrosyl_predictions

use dimerent::cli::materials;
use dimerent::dimer::kelvin_to_tesla;
use dimerent::entanglement::{critical_temperature, measure};
use dimerent::{DimerParams, FieldSpec, ThermalPoint};

fn main() {
    let registry = materials::load_registry(None).expect("built-ins load");
    let rec = materials::find(&registry, "nitrosyl-iron-complex").expect("built-in");
    let params = DimerParams::with_g_factor(rec.j_kelvin, rec.g_factor).expect("valid");
    println!("{}: J = {} K, g = {}", rec.name, rec.j_kelvin, rec.g_factor);

    let t_c = critical_temperature(&params).expect("antiferromagnetic");
    println!("decoherence temperature T_c = {t_c:.6} K");

    let point = ThermalPoint::new(60.0).expect("valid temperature");
    for b_kelvin in [10.0, 140.0] {
        let field = FieldSpec::new(b_kelvin).expect("valid field");
        let r = measure(&params, &field, &point);
        println!(
            "B = {:>5.1} K-units ({:>6.2} T at g = {}): E = {:.9} [{}]",
            b_kelvin,
            kelvin_to_tesla(b_kelvin, params.g_factor()),
            params.g_factor(),
            r.value,
            r.regime,
        );
    }

    // Entanglement survives far above liquid-nitrogen temperature at low
    // field, and a 100 T-scale field still leaves a third of it intact.
    let low = measure(&params, &FieldSpec::new(10.0).unwrap(), &point).value;
    let high = measure(&params, &FieldSpec::new(140.0).unwrap(), &point).value;
    assert!(low > 0.52 && low < 0.53);
    assert!(high > 0.31 && high < 0.32);
}
