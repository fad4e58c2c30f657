//! The `qsquare` command line.
//!
//! Exit status is 0 on success, 1 when an analysis or validation fails and 2
//! when an input cannot be read or parsed.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::grammar::{check_incidence, compile_grammar, derive, GrammarError};
use crate::logic::{PartitionLogic, StateOrder, StateSet};
use crate::orthorep::{build_v_realization, verify_faithful, OrthoError, VectorRealization};
use crate::render::{Backend, RenderSpec, Rgb};
use crate::spec::{load_logic_spec, SpecFile};
use crate::{Compiled, Error};

#[derive(Debug, Parser)]
#[command(
    name = "qsquare",
    version,
    about = "Partition logics as generative grammars"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the two-valued states as a table, one row per state.
    States { spec: PathBuf },
    /// Print the compiled grammar.
    Grammar {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = GrammarFormat::Text)]
        format: GrammarFormat,
    },
    /// Realize the derivation with one of the backends.
    Render {
        spec: PathBuf,
        #[arg(long, value_enum)]
        format: RenderFormat,
        /// Output file; required for SVG.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        style: StyleArgs,
    },
    /// Write the atom-state incidence schema as SVG.
    Schema {
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        style: StyleArgs,
    },
    /// Check a faithful orthogonal representation.
    VerifyOrthorep {
        spec: PathBuf,
        /// JSON vector file.
        #[arg(long, conflicts_with = "theta", required_unless_present = "theta")]
        vectors: Option<PathBuf>,
        /// Angle of the built-in V-logic realization, in radians.
        #[arg(long, allow_negative_numbers = true)]
        theta: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run every analysis; fail if any of them fails.
    Check { spec: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GrammarFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RenderFormat {
    SvgTiles,
    Ansi,
    Html,
    LogicProgram,
    Events,
}

impl From<RenderFormat> for Backend {
    fn from(f: RenderFormat) -> Self {
        match f {
            RenderFormat::SvgTiles => Backend::SvgTiles,
            RenderFormat::Ansi => Backend::Ansi,
            RenderFormat::Html => Backend::Html,
            RenderFormat::LogicProgram => Backend::LogicProgram,
            RenderFormat::Events => Backend::Events,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct StyleArgs {
    #[arg(long)]
    pub cell_size: Option<u32>,
    #[arg(long)]
    pub cell_gap: Option<u32>,
    /// Override a state color, e.g. `--color s1=#00FF00`. Repeatable.
    #[arg(long = "color", value_name = "LABEL=#RRGGBB", value_parser = parse_color_override)]
    pub colors: Vec<(String, Rgb)>,
    #[arg(long, value_name = "#RRGGBB")]
    pub separator_color: Option<Rgb>,
    #[arg(long, value_name = "#RRGGBB")]
    pub false_color: Option<Rgb>,
}

fn parse_color_override(s: &str) -> Result<(String, Rgb), String> {
    let (label, hex) = s
        .split_once('=')
        .ok_or_else(|| format!("expected LABEL=#RRGGBB, got `{s}`"))?;
    let color = hex.parse::<Rgb>().map_err(|e| e.to_string())?;
    Ok((label.to_string(), color))
}

/// Outcome classes mapped to exit codes.
#[derive(Debug)]
enum Failure {
    /// Exit 1.
    Validation(String),
    /// Exit 2.
    Input(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Input(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::Input(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Spec(e) => Failure::Input(e.to_string()),
            Error::Grammar(e) => Failure::Validation(e.to_string()),
            Error::Render(e) => Failure::Validation(e.to_string()),
        }
    }
}

impl From<GrammarError> for Failure {
    fn from(e: GrammarError) -> Self {
        Failure::Validation(e.to_string())
    }
}

/// Parses `args` (program name first) and runs the command. `no_color`
/// mirrors the `NO_COLOR` environment variable.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, no_color: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(&cli.command, out, no_color) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "qsquare: {}", f.message());
            f.code()
        }
    }
}

fn load(path: &Path) -> Result<SpecFile, Failure> {
    load_logic_spec(path).map_err(|e| Failure::Input(e.to_string()))
}

fn io(e: std::io::Error) -> Failure {
    Failure::Input(e.to_string())
}

/// Applies spec-file colors, then command-line overrides.
fn styled(base: RenderSpec, file: &SpecFile, style: &StyleArgs) -> RenderSpec {
    let mut spec = base.with_colors(&file.palette);
    let overrides: BTreeMap<String, Rgb> = style.colors.iter().cloned().collect();
    spec = spec.with_colors(&overrides);
    if let Some(size) = style.cell_size {
        spec.cell_size = size;
    }
    if let Some(gap) = style.cell_gap {
        spec.cell_gap = gap;
    }
    if let Some(c) = style.separator_color {
        spec.separator_color = c;
    }
    if let Some(c) = style.false_color {
        spec.false_cell_color = c;
    }
    spec
}

fn emit(out: &mut dyn Write, target: Option<&Path>, text: &str) -> Result<(), Failure> {
    match target {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => out.write_all(text.as_bytes()).map_err(io),
    }
}

fn execute(command: &Command, out: &mut dyn Write, no_color: bool) -> Result<(), Failure> {
    match command {
        Command::States { spec } => {
            let (logic, states) = load(spec)?
                .resolve()
                .map_err(|e| Failure::Input(e.to_string()))?;
            out.write_all(state_table(&logic, &states).as_bytes())
                .map_err(io)
        }
        Command::Grammar { spec, format } => {
            let compiled = Compiled::from_spec_file(&load(spec)?)?;
            let text = match format {
                GrammarFormat::Text => compiled.grammar.to_text(),
                GrammarFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&compiled.grammar.to_json())
                        .expect("json value serializes");
                    s.push('\n');
                    s
                }
            };
            out.write_all(text.as_bytes()).map_err(io)
        }
        Command::Render {
            spec,
            format,
            output,
            style,
        } => {
            if *format == RenderFormat::SvgTiles && output.is_none() {
                return Err(Failure::Input("SVG output needs -o FILE".into()));
            }
            let file = load(spec)?;
            let compiled = Compiled::from_spec_file(&file)?;
            let mut rs = styled(compiled.render_spec((*format).into()), &file, style);
            rs.ansi_color = !no_color;
            let text = compiled.render(&rs).map_err(Error::from)?;
            emit(out, output.as_deref(), &text)
        }
        Command::Schema {
            spec,
            output,
            style,
        } => {
            let Some(output) = output else {
                return Err(Failure::Input("SVG output needs -o FILE".into()));
            };
            let file = load(spec)?;
            let (logic, states) = file.resolve().map_err(|e| Failure::Input(e.to_string()))?;
            let rs = styled(
                RenderSpec::for_states(&states).with_backend(Backend::SvgSchema),
                &file,
                style,
            );
            let text = crate::render::render_schema(&logic, &states, &rs)
                .map_err(|e| Failure::Validation(e.to_string()))?;
            emit(out, Some(output), &text)
        }
        Command::VerifyOrthorep {
            spec,
            vectors,
            theta,
            tol,
        } => {
            let (logic, _) = load(spec)?
                .resolve()
                .map_err(|e| Failure::Input(e.to_string()))?;
            let mut real = match (vectors, theta) {
                (Some(path), _) => {
                    VectorRealization::load(path).map_err(|e| Failure::Input(e.to_string()))?
                }
                (None, Some(theta)) => {
                    build_v_realization(*theta).map_err(|e| Failure::Input(e.to_string()))?
                }
                (None, None) => unreachable!("clap requires --vectors or --theta"),
            };
            if let Some(tol) = tol {
                real = real
                    .with_tolerance(*tol)
                    .map_err(|e| Failure::Input(e.to_string()))?;
            }
            let report = verify_faithful(&logic, &real).map_err(|e| match e {
                OrthoError::MissingVector(_) => Failure::Validation(e.to_string()),
                other => Failure::Input(other.to_string()),
            })?;
            for line in report.lines() {
                writeln!(out, "{line}").map_err(io)?;
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Validation(
                    "not a faithful orthogonal representation".into(),
                ))
            }
        }
        Command::Check { spec } => {
            let (logic, states) = load(spec)?
                .resolve()
                .map_err(|e| Failure::Input(e.to_string()))?;
            check(&logic, &states, out)
        }
    }
}

/// States as rows, atoms as columns.
pub fn state_table(logic: &PartitionLogic, states: &StateSet) -> String {
    let first = states
        .labels()
        .map(|l| l.chars().count())
        .chain([5])
        .max()
        .unwrap_or(5);
    let widths: Vec<usize> = logic.atoms().iter().map(|a| a.chars().count()).collect();
    let pad = |s: &str, w: usize| format!("{s}{}", " ".repeat(w - s.chars().count()));
    let mut out = String::new();
    let mut line = vec![pad("state", first)];
    line.extend(logic.atoms().iter().zip(&widths).map(|(a, &w)| pad(a, w)));
    out.push_str(line.join("  ").trim_end());
    out.push('\n');
    for state in states.states() {
        let mut line = vec![pad(&state.label, first)];
        line.extend(
            state
                .values
                .iter()
                .zip(&widths)
                .map(|(&v, &w)| pad(if v { "1" } else { "0" }, w)),
        );
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn check(logic: &PartitionLogic, states: &StateSet, out: &mut dyn Write) -> Result<(), Failure> {
    let all = logic.enumerate_states();
    let source = match states.order() {
        StateOrder::Canonical => "full enumeration",
        StateOrder::Pinned => "pinned",
        StateOrder::PointInduced => "point-induced",
    };
    let coverage = if states.same_valuations(&all) {
        "all of them".to_string()
    } else {
        format!("a proper subset of {}", all.len())
    };
    let _ = writeln!(
        out,
        "logic {}: {} atoms, {} contexts; {} states ({source}), {coverage}",
        logic.name(),
        logic.atom_count(),
        logic.contexts().len(),
        states.len()
    );

    let mut failures = Vec::new();
    let mut report = |ok: bool, text: String, failures: &mut Vec<String>| {
        let _ = writeln!(out, "[{}] {text}", if ok { "ok" } else { "FAIL" });
        if !ok {
            failures.push(text);
        }
    };

    let admissible = states
        .states()
        .iter()
        .all(|s| logic.is_admissible(&s.values));
    report(
        admissible,
        "every state makes exactly one atom per context true".into(),
        &mut failures,
    );
    report(
        !states.is_empty(),
        format!("{} states", states.len()),
        &mut failures,
    );
    match states.separation(logic) {
        crate::logic::Separation::Separating => {
            report(true, "states separate the atoms".into(), &mut failures)
        }
        crate::logic::Separation::Collision { first, second } => report(
            false,
            format!("not separating: atoms {first} and {second} have the same support"),
            &mut failures,
        ),
    }
    for (atom, support) in logic.atoms().iter().zip(states.supports(logic).rows) {
        if support.truthy.is_empty() {
            report(
                false,
                format!("atom {atom} is true in no state"),
                &mut failures,
            );
        }
    }
    match states.partition_representation(logic) {
        Ok(_) => report(
            true,
            "every context is a partition of the states".into(),
            &mut failures,
        ),
        Err(e) => report(false, e.to_string(), &mut failures),
    }
    match compile_grammar(logic, states).and_then(|g| derive(&g).map(|d| (g, d))) {
        Ok((grammar, derivation)) => {
            report(
                true,
                format!(
                    "grammar: {} productions, derivation: {} rows, {} tokens",
                    grammar.productions().len(),
                    derivation.row_count(),
                    derivation.tokens.len()
                ),
                &mut failures,
            );
            let incidence = check_incidence(&derivation, logic, states);
            let mut text = "every row preserves the atom-state incidence".to_string();
            for v in &incidence.violations {
                text.push_str(&format!("\n    {v}"));
            }
            report(incidence.holds(), text, &mut failures);
        }
        Err(e) => report(false, format!("grammar: {e}"), &mut failures),
    }

    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Validation(failures.join("; ")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_layout() {
        let logic = PartitionLogic::from_named_contexts("g", &[vec!["x", "¬x"]]).unwrap();
        let states = logic.enumerate_states();
        assert_eq!(
            state_table(&logic, &states),
            "state  x  ¬x\ns1     1  0\ns2     0  1\n"
        );
    }

    #[test]
    fn color_override_syntax() {
        assert_eq!(
            parse_color_override("s3=#FF0000").unwrap(),
            ("s3".to_string(), Rgb::RED)
        );
        assert!(parse_color_override("s3").is_err());
        assert!(parse_color_override("s3=red").is_err());
    }
}
