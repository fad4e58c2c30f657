//! Stream a derivation as JSON lines, one event per token, for driving an
//! external renderer or sequencer.
//!
//!     cargo run --example event_stream

use quantum_square::render::emit_events;
use quantum_square::{fixtures, parse_logic_spec, Compiled, SymbolKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = Compiled::from_spec_file(&parse_logic_spec(fixtures::EXAMPLE_A)?)?;
    let stream = emit_events(&c.derivation);
    print!("{}", stream.to_json_lines());

    let separators = stream
        .events
        .iter()
        .filter(|e| e.kind == SymbolKind::Separator)
        .count();
    eprintln!("{} events, {separators} separators", stream.events.len());
    Ok(())
}
