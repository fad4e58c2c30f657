//! Render the derivation of a logic as a grid of colored tiles.
//!
//!     cargo run --example quantum_square_svg -- [OUT.svg]

use quantum_square::{fixtures, parse_logic_spec, Backend, Compiled, Rgb};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "triangle.svg".into());
    let c = Compiled::from_spec_file(&parse_logic_spec(fixtures::TRIANGLE)?)?;

    let mut spec = c.render_spec(Backend::SvgTiles);
    spec.cell_size = 48;
    spec.cell_gap = 4;
    spec.separator_color = Rgb(0x20, 0x20, 0x20);

    let svg = c.render(&spec)?;
    std::fs::write(&out, &svg)?;
    println!(
        "wrote {out}: {} rows of {} tiles",
        c.derivation.row_count(),
        c.states.len() + 1
    );
    Ok(())
}
