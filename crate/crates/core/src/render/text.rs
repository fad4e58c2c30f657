use std::fmt::Write;

use super::{escape_xml, Backend, RenderError, RenderSpec};
use crate::grammar::{Derivation, SymbolKind};

const BLOCK: char = '\u{2588}';

/// Terminal or markup preview of a derivation, selected by `spec.backend`.
///
/// The ANSI form prints one block glyph per token in 24-bit color, one line
/// per row; with `ansi_color` off it prints the symbol names instead, `|`
/// standing for the separator. The HTML form is a fragment of nested `div`s
/// with inline background colors.
pub fn render_text(derivation: &Derivation, spec: &RenderSpec) -> Result<String, RenderError> {
    match spec.backend {
        Backend::Ansi => ansi(derivation, spec),
        Backend::Html => html(derivation, spec),
        other => Err(RenderError::WrongBackend(other)),
    }
}

fn ansi(derivation: &Derivation, spec: &RenderSpec) -> Result<String, RenderError> {
    let mut out = String::new();
    for row in derivation.rows() {
        let mut plain = Vec::with_capacity(row.len());
        for symbol in row {
            let Some(color) = spec.color_of(symbol)? else {
                continue;
            };
            if spec.ansi_color {
                let _ = write!(
                    out,
                    "\x1b[38;2;{};{};{}m{BLOCK}\x1b[0m",
                    color.0, color.1, color.2
                );
            } else if symbol.kind == SymbolKind::Separator {
                plain.push("|");
            } else {
                plain.push(symbol.name.as_str());
            }
        }
        out.push_str(&plain.join(" "));
        out.push('\n');
    }
    Ok(out)
}

fn html(derivation: &Derivation, spec: &RenderSpec) -> Result<String, RenderError> {
    let size = spec.cell_size;
    let gap = spec.cell_gap;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<div class=\"quantum-square\" style=\"display:flex;flex-direction:column;gap:{gap}px\">"
    );
    for (r, row) in derivation.rows().iter().enumerate() {
        let _ = writeln!(
            out,
            "  <div class=\"row\" data-atom=\"{}\" style=\"display:flex;gap:{gap}px\">",
            escape_xml(derivation.row_atoms.get(r).map_or("", String::as_str))
        );
        for symbol in row.iter() {
            let Some(color) = spec.color_of(symbol)? else {
                continue;
            };
            let _ = writeln!(
                out,
                "    <div class=\"cell {}\" title=\"{}\" style=\"width:{size}px;height:{size}px;background-color:{color}\"></div>",
                symbol.kind.as_str(),
                escape_xml(&symbol.name)
            );
        }
        out.push_str("  </div>\n");
    }
    out.push_str("</div>\n");
    Ok(out)
}
