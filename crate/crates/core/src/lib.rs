//! Compile finite partition logics into row grammars and render them.
//!
//! The pipeline has three layers that never leak into each other:
//!
//! 1. a logic ([`PartitionLogic`]) with a separating set of two-valued
//!    states ([`StateSet`]),
//! 2. the grammar compiled from the atom supports ([`compile_grammar`]) and
//!    its derivation ([`derive`]),
//! 3. a rendering map ([`RenderSpec`]) realizing the derivation as SVG tiles,
//!    an incidence schema, ANSI text, HTML, logic-program source or an event
//!    stream.
//!
//! ```
//! use quantum_square::{fixtures, Compiled};
//!
//! let file = quantum_square::parse_logic_spec(fixtures::L12).unwrap();
//! let compiled = Compiled::from_spec_file(&file).unwrap();
//! assert_eq!(compiled.grammar.to_text().lines().nth(4).unwrap(), "d --> s2,s4,br,s1,s3,s5,n.");
//! ```
//!
//! See the `examples/` directory for one program per capability.

pub mod cli;
pub mod grammar;
pub mod logic;
pub mod orthorep;
pub mod partitions;
pub mod render;
pub mod spec;

use thiserror::Error;

pub use grammar::{
    check_incidence, compile_grammar, derive, Derivation, Grammar, GrammarError, IncidenceReport,
    Production, Symbol, SymbolKind,
};
pub use logic::{
    LogicError, PartitionLogic, Separation, StateOrder, StateSet, SupportTable, TwoValuedState,
};
pub use orthorep::{build_v_realization, verify_faithful, FaithfulnessReport, VectorRealization};
pub use partitions::{logic_from_partitions, BaseSetSpec, PartitionError, Point};
pub use render::{Backend, RenderError, RenderSpec, Rgb};
pub use spec::{load_logic_spec, parse_logic_spec, LogicSpec, SpecError, SpecFile};

/// The bundled logics: the five-atom V-logic with its states pinned in a
/// fixed order, the triangle logic, and the horizontal sum of
/// three binary partitions in base-set form.
pub mod fixtures {
    pub const L12: &str = include_str!("../fixtures/l12.json");
    pub const TRIANGLE: &str = include_str!("../fixtures/triangle.json");
    pub const EXAMPLE_A: &str = include_str!("../fixtures/example_a.json");

    pub const ALL: [(&str, &str); 3] = [
        ("l12", L12),
        ("triangle", TRIANGLE),
        ("example_a", EXAMPLE_A),
    ];
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error(transparent)]
    Render(#[from] RenderError),
}

/// A logic with its states, compiled grammar and derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compiled {
    pub logic: PartitionLogic,
    pub states: StateSet,
    pub grammar: Grammar,
    pub derivation: Derivation,
}

impl Compiled {
    pub fn new(logic: PartitionLogic, states: StateSet) -> Result<Self, GrammarError> {
        let grammar = compile_grammar(&logic, &states)?;
        let derivation = derive(&grammar)?;
        Ok(Self {
            logic,
            states,
            grammar,
            derivation,
        })
    }

    pub fn from_spec_file(file: &SpecFile) -> Result<Self, Error> {
        let (logic, states) = file.resolve()?;
        Ok(Self::new(logic, states)?)
    }

    pub fn supports(&self) -> SupportTable {
        self.states.supports(&self.logic)
    }

    /// Default render settings for this state set.
    pub fn render_spec(&self, backend: Backend) -> RenderSpec {
        RenderSpec::for_states(&self.states).with_backend(backend)
    }

    /// Realizes the derivation (or, for `svg-schema`, the incidence table)
    /// with the backend chosen in `spec`.
    pub fn render(&self, spec: &RenderSpec) -> Result<String, RenderError> {
        match spec.backend {
            Backend::SvgTiles => render::render_tiles(&self.derivation, spec),
            Backend::SvgSchema => render::render_schema(&self.logic, &self.states, spec),
            Backend::Ansi | Backend::Html => render::render_text(&self.derivation, spec),
            Backend::LogicProgram => render::emit_logic_program(&self.grammar, spec),
            Backend::Events => Ok(render::emit_events(&self.derivation).to_json_lines()),
        }
    }
}
