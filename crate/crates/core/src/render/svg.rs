use std::fmt::Write;

use super::{escape_xml, RenderError, RenderSpec};
use crate::grammar::{Derivation, SymbolKind};
use crate::logic::{PartitionLogic, StateSet};

fn extent(cells: usize, size: u32, gap: u32) -> u64 {
    match cells {
        0 => 0,
        n => n as u64 * size as u64 + (n as u64 - 1) * gap as u64,
    }
}

fn header(out: &mut String, width: u64, height: u64) {
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
}

/// Tile image of a derivation: one row of squares per derivation row, states
/// in palette colors and the separator in the separator color.
pub fn render_tiles(derivation: &Derivation, spec: &RenderSpec) -> Result<String, RenderError> {
    let rows = derivation.rows();
    let columns = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let step = spec.cell_size as u64 + spec.cell_gap as u64;
    let mut out = String::new();
    header(
        &mut out,
        extent(columns, spec.cell_size, spec.cell_gap),
        extent(rows.len(), spec.cell_size, spec.cell_gap),
    );
    for (r, row) in rows.iter().enumerate() {
        let _ = writeln!(out, "  <g class=\"row\" id=\"row-{}\">", r + 1);
        for (c, symbol) in row.iter().enumerate() {
            let Some(color) = spec.color_of(symbol)? else {
                continue;
            };
            let class = match symbol.kind {
                SymbolKind::Separator => "separator".to_string(),
                _ => format!("state {}", escape_xml(&symbol.name)),
            };
            let _ = writeln!(
                out,
                "    <rect class=\"{class}\" x=\"{}\" y=\"{}\" width=\"{size}\" height=\"{size}\" fill=\"{color}\"/>",
                c as u64 * step,
                r as u64 * step,
                size = spec.cell_size,
            );
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Atom-state incidence grid: cell (atom, state) takes the state's color if
/// the state values the atom 1 and the false-cell color otherwise. Rows are
/// labelled by atom names and columns by state labels.
pub fn render_schema(
    logic: &PartitionLogic,
    states: &StateSet,
    spec: &RenderSpec,
) -> Result<String, RenderError> {
    let size = spec.cell_size as u64;
    let step = size + spec.cell_gap as u64;
    let margin = size;
    let font = (size / 2).max(1);
    let width = margin + extent(states.len(), spec.cell_size, spec.cell_gap);
    let height = margin + extent(logic.atom_count(), spec.cell_size, spec.cell_gap);

    let colors = states
        .labels()
        .map(|l| spec.state_color(l))
        .collect::<Result<Vec<_>, _>>()?;

    let mut out = String::new();
    header(&mut out, width, height);
    let _ = writeln!(
        out,
        "  <g class=\"labels\" font-family=\"sans-serif\" font-size=\"{font}\">"
    );
    for (i, label) in states.labels().enumerate() {
        let _ = writeln!(
            out,
            "    <text class=\"column\" x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
            margin + i as u64 * step + size / 2,
            margin - margin / 4,
            escape_xml(label)
        );
    }
    for (j, atom) in logic.atoms().iter().enumerate() {
        let _ = writeln!(
            out,
            "    <text class=\"row\" x=\"{}\" y=\"{}\" text-anchor=\"end\" dominant-baseline=\"central\">{}</text>",
            margin - margin / 4,
            margin + j as u64 * step + size / 2,
            escape_xml(atom)
        );
    }
    out.push_str("  </g>\n");
    for j in 0..logic.atom_count() {
        let _ = writeln!(out, "  <g class=\"row\" id=\"row-{}\">", j + 1);
        for (i, state) in states.states().iter().enumerate() {
            let (class, color) = if state.value(j) {
                (format!("cell true {}", escape_xml(&state.label)), colors[i])
            } else {
                ("cell false".to_string(), spec.false_cell_color)
            };
            let _ = writeln!(
                out,
                "    <rect class=\"{class}\" x=\"{}\" y=\"{}\" width=\"{size}\" height=\"{size}\" fill=\"{color}\"/>",
                margin + i as u64 * step,
                margin + j as u64 * step,
            );
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
