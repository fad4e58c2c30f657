use std::fmt::Write;

use super::{RenderError, RenderSpec};
use crate::grammar::{parse_productions, Grammar, GrammarError, LINEBREAK, SEPARATOR};

/// Prolog atom syntax: bare when it is a plain lowercase identifier,
/// single-quoted otherwise.
fn atom(name: &str) -> String {
    let mut chars = name.chars();
    let bare = chars.next().is_some_and(|c| c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if bare {
        return name.to_string();
    }
    let mut out = String::with_capacity(name.len() + 2);
    out.push('\'');
    for c in name.chars() {
        match c {
            '\'' => out.push_str("\\'"),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('\'');
    out
}

/// DCG source for a grammar in three blocks separated by blank lines:
/// structural rules (start rule first, then one rule per nonterminal),
/// repertoire rules binding every state terminal to its color, and layout
/// rules for `br` and `n`, followed by an `output` predicate that prints a
/// derivation.
pub fn emit_logic_program(grammar: &Grammar, spec: &RenderSpec) -> Result<String, RenderError> {
    let mut out = String::new();
    if let Some(start) = grammar.production(grammar.start()) {
        write_rule(&mut out, &start.head, &start.body_names());
        out.push('\n');
    }
    for p in grammar
        .productions()
        .iter()
        .filter(|p| p.head != grammar.start())
    {
        write_rule(&mut out, &p.head, &p.body_names());
    }
    out.push('\n');
    for terminal in grammar.terminals() {
        let color = spec.state_color(terminal)?;
        let _ = writeln!(out, "{} --> [ '{color}' ].", atom(terminal));
    }
    out.push('\n');
    let _ = writeln!(out, "{SEPARATOR} --> [ '{}' ].", spec.separator_color);
    let _ = writeln!(out, "{LINEBREAK}  --> [ '\\n' ].");
    out.push('\n');
    out.push_str("output :-\n");
    let _ = writeln!(out, "    phrase({}, Ls),", atom(grammar.start()));
    out.push_str("    forall(member(T, Ls), format(\"~w \", [T])).\n");
    Ok(out)
}

fn write_rule(out: &mut String, head: &str, body: &[&str]) {
    let body: Vec<String> = body.iter().map(|s| atom(s)).collect();
    let _ = writeln!(out, "{} --> {}.", atom(head), body.join(","));
}

/// Reads back the structural rules of an emitted program as
/// `(head, body)` pairs. Repertoire and layout rules (bracketed bodies) and
/// the output predicate are skipped.
pub fn parse_structural_layer(source: &str) -> Result<Vec<(String, Vec<String>)>, GrammarError> {
    parse_productions(source)
}
