//! Export a grammar as DCG source for a Prolog system and read its
//! structural rules back.
//!
//!     cargo run --example logic_program

use quantum_square::render::parse_structural_layer;
use quantum_square::{fixtures, parse_logic_spec, Backend, Compiled};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in [fixtures::TRIANGLE, fixtures::EXAMPLE_A] {
        let c = Compiled::from_spec_file(&parse_logic_spec(text)?)?;
        let src = c.render(&c.render_spec(Backend::LogicProgram))?;
        println!("% {}\n{src}", c.logic.name());
        let rules = parse_structural_layer(&src)?;
        assert_eq!(rules, c.grammar.production_list());
    }
    Ok(())
}
