//! Preview a derivation in the terminal with 24-bit color blocks, as plain
//! symbol names, and as an HTML fragment.
//!
//!     cargo run --example terminal_preview

use quantum_square::{fixtures, parse_logic_spec, Backend, Compiled};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = Compiled::from_spec_file(&parse_logic_spec(fixtures::L12)?)?;

    let mut ansi = c.render_spec(Backend::Ansi);
    print!("{}", c.render(&ansi)?);
    println!();
    ansi.ansi_color = false;
    print!("{}", c.render(&ansi)?);
    println!();
    print!("{}", c.render(&c.render_spec(Backend::Html))?);
    Ok(())
}
