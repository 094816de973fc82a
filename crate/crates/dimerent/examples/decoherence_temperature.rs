//! The temperature where entanglement dies is -J/ln 3, independent of how
//! strong the coupling is otherwise. Checks the closed form against a
//! bisection root of the unclamped measure.
//!
//! Run with: cargo run --example decoherence_temperature

use dimerent::entanglement::{critical_temperature, critical_temperature_root};
use dimerent::{DimerParams, FieldSpec};

fn main() {
    println!(
        "{:>8}  {:>18}  {:>18}  {:>9}",
        "J (K)", "closed form (K)", "root found (K)", "rel diff"
    );
    for j in [-1.0, -5.0, -10.0, -136.0] {
        let params = DimerParams::new(j).expect("valid coupling");
        let field = FieldSpec::new(0.0).expect("valid field");
        let closed = critical_temperature(&params).expect("antiferromagnetic");
        let root = critical_temperature_root(&params, &field).expect("bracketed");
        let rel = ((closed - root) / closed).abs();
        println!("{j:>8}  {closed:>18.12}  {root:>18.12}  {rel:>9.2e}");
        assert!(rel < 1e-9);
    }

    // Ferromagnetic couplings have no crossing to find.
    let ferro = DimerParams::new(25.0).expect("valid coupling");
    assert_eq!(critical_temperature(&ferro), None);
    println!("\nJ = +25 K: no decoherence temperature (never entangled)");
}
