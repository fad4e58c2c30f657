//! Draw the atom-state incidence table: a colored cell where a state makes
//! an atom true, gray otherwise.
//!
//!     cargo run --example incidence_schema -- [OUT.svg]

use quantum_square::render::render_schema;
use quantum_square::{fixtures, parse_logic_spec, Backend, RenderSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "schema.svg".into());
    let (logic, states) = parse_logic_spec(fixtures::EXAMPLE_A)?.resolve()?;
    let spec = RenderSpec::for_states(&states).with_backend(Backend::SvgSchema);
    let svg = render_schema(&logic, &states, &spec)?;
    std::fs::write(&out, svg)?;

    let ones: usize = states
        .states()
        .iter()
        .map(|s| s.values.iter().filter(|&&v| v).count())
        .sum();
    println!(
        "wrote {out}: {} atoms x {} states, {ones} true cells",
        logic.atom_count(),
        states.len()
    );
    Ok(())
}
