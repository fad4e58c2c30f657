//! Compile a bundled logic into its row grammar, derive it, and confirm the
//! derivation keeps the atom-state incidence.
//!
//!     cargo run --example compile_grammar

use quantum_square::{check_incidence, fixtures, parse_logic_spec, Compiled};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let file = parse_logic_spec(fixtures::L12)?;
    let c = Compiled::from_spec_file(&file)?;

    print!("{}", c.grammar.to_text());
    println!(
        "\n{} rows, {} tokens, {} cells",
        c.derivation.row_count(),
        c.derivation.tokens.len(),
        c.derivation.cell_count()
    );
    for (atom, row) in c.derivation.row_atoms.iter().zip(c.derivation.rows()) {
        let names: Vec<&str> = row.iter().map(|s| s.name.as_str()).collect();
        println!("{atom:>2}: {}", names.join(" "));
    }

    let report = check_incidence(&c.derivation, &c.logic, &c.states);
    println!("incidence holds: {}", report.holds());
    println!("\n{}", serde_json::to_string_pretty(&c.grammar.to_json())?);
    Ok(())
}
