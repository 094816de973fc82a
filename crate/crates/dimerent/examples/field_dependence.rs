//! The measure as a function of field at fixed temperature: even in B,
//! monotone decreasing in |B|, with an inflection shoulder near |J| that
//! sharpens as the temperature drops.
//!
//! Run with: cargo run --example field_dependence

use dimerent::entanglement::measure;
use dimerent::sweep::find_inflection_b;
use dimerent::{DimerParams, FieldSpec, ThermalPoint};

fn main() {
    let params = DimerParams::new(-10.0).expect("valid coupling");
    let point = ThermalPoint::new(5.0).expect("valid temperature");

    println!("J = -10 K, T = 5 K:");
    println!("{:>8}  {:>14}", "B (K)", "E");
    for b in [0.0, 2.5, 5.0, 7.5, 10.0, 12.5, 15.0, 20.0, 40.0] {
        let r = measure(&params, &FieldSpec::new(b).expect("valid"), &point);
        println!("{b:>8}  {:>14.9}", r.value);
    }

    // Sign of the field is irrelevant, bit for bit.
    for b in [0.1, 3.0, 17.0, 220.0] {
        let plus = measure(&params, &FieldSpec::new(b).expect("valid"), &point);
        let minus = measure(&params, &FieldSpec::new(-b).expect("valid"), &point);
        assert_eq!(plus.value.to_bits(), minus.value.to_bits());
    }
    println!("\nE(B) == E(-B) exactly");

    // Decay is strict until the value underflows to zero.
    let mut prev = measure(&params, &FieldSpec::new(0.0).expect("valid"), &point).value;
    for k in 1..=120 {
        let b = 0.5 * k as f64;
        let next = measure(&params, &FieldSpec::new(b).expect("valid"), &point).value;
        assert!(next < prev || (next == 0.0 && prev == 0.0));
        prev = next;
    }
    println!("E is strictly decreasing in |B| (until it hits zero)");

    for t in [5.0, 1.0] {
        let warm = ThermalPoint::new(t).expect("valid temperature");
        let b_inflect = find_inflection_b(&params, &warm).expect("curvature flips");
        println!("T = {t} K: inflection at B = {b_inflect:.3} K (|J| = 10)");
    }
}
