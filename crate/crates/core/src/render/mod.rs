//! The rendering map: binds grammar symbols to colors and realizes
//! derivations in several media.
//!
//! Every backend is a pure function of its inputs and produces byte-identical
//! output for identical inputs. Palettes only touch color attributes, so two
//! renderings with different palettes differ in colors and nothing else.

mod events;
mod program;
mod svg;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::grammar::{Symbol, SymbolKind};
use crate::logic::StateSet;

pub use events::{emit_events, Event, EventStream};
pub use program::{emit_logic_program, parse_structural_layer};
pub use svg::{render_schema, render_tiles};
pub use text::render_text;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("no palette entry for `{0}`")]
    MissingPaletteEntry(String),
    #[error("backend {0} cannot render a derivation")]
    WrongBackend(Backend),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{0}` is not a #RRGGBB color")]
pub struct ColorError(String);

/// A 24-bit RGB color, written `#RRGGBB`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rgb(pub u8, pub u8, pub u8);

impl Rgb {
    pub const GREEN: Rgb = Rgb(0x00, 0x80, 0x00);
    pub const BLUE: Rgb = Rgb(0x00, 0x00, 0xFF);
    pub const RED: Rgb = Rgb(0xFF, 0x00, 0x00);
    pub const ORANGE: Rgb = Rgb(0xFF, 0xA5, 0x00);
    pub const VIOLET: Rgb = Rgb(0x8F, 0x00, 0xFF);
    pub const BLACK: Rgb = Rgb(0x00, 0x00, 0x00);
    pub const GRAY: Rgb = Rgb(0xBF, 0xBF, 0xBF);

    /// Fully saturated, full-value color of the given hue in degrees.
    pub fn from_hue(hue: f64) -> Rgb {
        let h = hue.rem_euclid(360.0) / 60.0;
        let x = 1.0 - ((h % 2.0) - 1.0).abs();
        let (r, g, b) = match h as u32 {
            0 => (1.0, x, 0.0),
            1 => (x, 1.0, 0.0),
            2 => (0.0, 1.0, x),
            3 => (0.0, x, 1.0),
            4 => (x, 0.0, 1.0),
            _ => (1.0, 0.0, x),
        };
        let byte = |v: f64| (v * 255.0).round() as u8;
        Rgb(byte(r), byte(g), byte(b))
    }
}

impl fmt::Display for Rgb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{:02X}{:02X}{:02X}", self.0, self.1, self.2)
    }
}

impl FromStr for Rgb {
    type Err = ColorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ColorError(s.to_string());
        let hex = s.strip_prefix('#').ok_or_else(err)?;
        if hex.len() != 6 || !hex.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(err());
        }
        let channel = |i: usize| u8::from_str_radix(&hex[i..i + 2], 16).map_err(|_| err());
        Ok(Rgb(channel(0)?, channel(2)?, channel(4)?))
    }
}

/// Colors for the first five state labels.
pub const BASE_PALETTE: [Rgb; 5] = [Rgb::GREEN, Rgb::BLUE, Rgb::RED, Rgb::ORANGE, Rgb::VIOLET];

/// Default state colors: the five base colors when there are at most five
/// states, otherwise hue `i * 360 / N` for the `i`-th state.
pub fn default_palette<'a>(labels: impl IntoIterator<Item = &'a str>) -> BTreeMap<String, Rgb> {
    let labels: Vec<&str> = labels.into_iter().collect();
    let n = labels.len();
    labels
        .into_iter()
        .enumerate()
        .map(|(i, label)| {
            let color = if n <= BASE_PALETTE.len() {
                BASE_PALETTE[i]
            } else {
                Rgb::from_hue(i as f64 * 360.0 / n as f64)
            };
            (label.to_string(), color)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    SvgTiles,
    SvgSchema,
    Ansi,
    Html,
    LogicProgram,
    Events,
}

impl Backend {
    pub const ALL: [Backend; 6] = [
        Backend::SvgTiles,
        Backend::SvgSchema,
        Backend::Ansi,
        Backend::Html,
        Backend::LogicProgram,
        Backend::Events,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Backend::SvgTiles => "svg-tiles",
            Backend::SvgSchema => "svg-schema",
            Backend::Ansi => "ansi",
            Backend::Html => "html",
            Backend::LogicProgram => "logic-program",
            Backend::Events => "events",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Backend::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| format!("unknown backend `{s}`"))
    }
}

/// Palette, geometry and backend for realizing a derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderSpec {
    pub palette: BTreeMap<String, Rgb>,
    pub separator_color: Rgb,
    /// Color of false cells in the incidence schema.
    pub false_cell_color: Rgb,
    pub cell_size: u32,
    pub cell_gap: u32,
    pub backend: Backend,
    /// Emit ANSI color escapes; when off the ANSI backend prints symbol names.
    pub ansi_color: bool,
}

impl RenderSpec {
    pub const DEFAULT_CELL_SIZE: u32 = 32;
    pub const DEFAULT_CELL_GAP: u32 = 2;

    /// Defaults for a state set: default palette, black separator, gray
    /// false cells, 32px cells with 2px gaps, SVG tiles.
    pub fn for_states(states: &StateSet) -> Self {
        Self {
            palette: default_palette(states.labels()),
            separator_color: Rgb::BLACK,
            false_cell_color: Rgb::GRAY,
            cell_size: Self::DEFAULT_CELL_SIZE,
            cell_gap: Self::DEFAULT_CELL_GAP,
            backend: Backend::SvgTiles,
            ansi_color: true,
        }
    }

    pub fn with_backend(mut self, backend: Backend) -> Self {
        self.backend = backend;
        self
    }

    /// Replaces palette entries.
    pub fn with_colors(mut self, overrides: &BTreeMap<String, Rgb>) -> Self {
        for (label, color) in overrides {
            self.palette.insert(label.clone(), *color);
        }
        self
    }

    pub fn state_color(&self, label: &str) -> Result<Rgb, RenderError> {
        self.palette
            .get(label)
            .copied()
            .ok_or_else(|| RenderError::MissingPaletteEntry(label.to_string()))
    }

    /// Color of a cell token. Line breaks and nonterminals have none.
    pub fn color_of(&self, symbol: &Symbol) -> Result<Option<Rgb>, RenderError> {
        match symbol.kind {
            SymbolKind::StateTerminal => self.state_color(&symbol.name).map(Some),
            SymbolKind::Separator => Ok(Some(self.separator_color)),
            SymbolKind::Linebreak | SymbolKind::Nonterminal => Ok(None),
        }
    }
}

pub(crate) fn escape_xml(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            _ => out.push(c),
        }
    }
    out
}
