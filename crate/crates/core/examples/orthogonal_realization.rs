//! Check that two orthonormal bases of R^3 sharing one vector realize the
//! five-atom V-logic faithfully, and watch the check fail when the second
//! basis is not rotated.
//!
//!     cargo run --example orthogonal_realization

use std::f64::consts::PI;

use quantum_square::orthorep::v_realization_unchecked;
use quantum_square::{build_v_realization, fixtures, parse_logic_spec, verify_faithful};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (logic, _) = parse_logic_spec(fixtures::L12)?.resolve()?;

    for theta in [PI / 6.0, PI / 4.0, PI / 3.0] {
        let report = verify_faithful(&logic, &build_v_realization(theta)?)?;
        println!("theta = {theta:.4}");
        for line in report.lines() {
            println!("  {line}");
        }
    }

    // out of range for the builder, so go around it
    let report = verify_faithful(&logic, &v_realization_unchecked(0.0))?;
    println!("theta = 0");
    for line in report.lines() {
        println!("  {line}");
    }
    Ok(())
}
