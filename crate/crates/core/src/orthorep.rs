//! Real orthogonal representations of partition logics.
//!
//! A representation assigns a unit vector to every atom. It is faithful when
//! the vectors of each context form an orthonormal basis and two atoms that
//! share no context get non-orthogonal vectors.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::logic::PartitionLogic;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OrthoError {
    #[error("theta = {0} is outside the open interval (0, pi/2)")]
    ThetaOutOfRange(f64),
    #[error("no vector for atom `{0}`")]
    MissingVector(String),
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("vector for `{atom}` has {len} components, expected {dimension}")]
    DimensionMismatch {
        atom: String,
        len: usize,
        dimension: usize,
    },
    #[error("vector for `{0}` is zero")]
    ZeroVector(String),
    #[error("vector for `{0}` has a non-finite component")]
    NonFinite(String),
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("invalid vector file: {0}")]
    Parse(String),
}

/// Vectors for atoms, all of one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorRealization {
    dimension: usize,
    vectors: BTreeMap<String, Vec<f64>>,
    tolerance: f64,
}

impl VectorRealization {
    pub fn new(
        dimension: usize,
        vectors: BTreeMap<String, Vec<f64>>,
        tolerance: f64,
    ) -> Result<Self, OrthoError> {
        if dimension == 0 {
            return Err(OrthoError::ZeroDimension);
        }
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(OrthoError::BadTolerance(tolerance));
        }
        for (atom, v) in &vectors {
            if v.len() != dimension {
                return Err(OrthoError::DimensionMismatch {
                    atom: atom.clone(),
                    len: v.len(),
                    dimension,
                });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(OrthoError::NonFinite(atom.clone()));
            }
            if norm(v) <= tolerance {
                return Err(OrthoError::ZeroVector(atom.clone()));
            }
        }
        Ok(Self {
            dimension,
            vectors,
            tolerance,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Result<Self, OrthoError> {
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(OrthoError::BadTolerance(tolerance));
        }
        self.tolerance = tolerance;
        Ok(self)
    }

    pub fn vector(&self, atom: &str) -> Option<&[f64]> {
        self.vectors.get(atom).map(Vec::as_slice)
    }

    pub fn vectors(&self) -> &BTreeMap<String, Vec<f64>> {
        &self.vectors
    }

    /// Reads `{"dimension": 3, "vectors": {"a": [1,0,0], ...}, "tolerance": 1e-9}`.
    pub fn from_json(text: &str) -> Result<Self, OrthoError> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            dimension: usize,
            vectors: BTreeMap<String, Vec<f64>>,
            tolerance: Option<f64>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| OrthoError::Parse(e.to_string()))?;
        Self::new(
            raw.dimension,
            raw.vectors,
            raw.tolerance.unwrap_or(DEFAULT_TOLERANCE),
        )
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, OrthoError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| OrthoError::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

/// The two orthonormal bases `{a, b, c}` and `{c, d, e}` of R³ sharing `c`,
/// with `d`, `e` rotated by `theta` in the a-b plane.
pub fn build_v_realization(theta: f64) -> Result<VectorRealization, OrthoError> {
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return Err(OrthoError::ThetaOutOfRange(theta));
    }
    Ok(v_realization_unchecked(theta))
}

/// Same vectors as [`build_v_realization`] for any angle, including the
/// degenerate ones.
pub fn v_realization_unchecked(theta: f64) -> VectorRealization {
    let (sin, cos) = theta.sin_cos();
    let vectors = BTreeMap::from([
        ("a".to_string(), vec![1.0, 0.0, 0.0]),
        ("b".to_string(), vec![0.0, 1.0, 0.0]),
        ("c".to_string(), vec![0.0, 0.0, 1.0]),
        ("d".to_string(), vec![cos, sin, 0.0]),
        ("e".to_string(), vec![-sin, cos, 0.0]),
    ]);
    VectorRealization {
        dimension: 3,
        vectors,
        tolerance: DEFAULT_TOLERANCE,
    }
}

fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(x, y)| x * y).sum()
}

fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// Result of one check. `worst` is the largest deviation for the
/// orthonormality and completeness checks and the smallest overlap `|<u,v>|`
/// among non-co-contextual pairs for the faithfulness check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub passed: bool,
    pub worst: f64,
    /// Atoms (or context) where `worst` was attained, in declaration order.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FaithfulnessReport {
    /// Within every context: `|<u,v>| <= tol` for distinct atoms and
    /// `| |u| - 1 | <= tol`.
    pub orthonormality: CheckOutcome,
    /// Every context has exactly `dimension` atoms.
    pub completeness: CheckOutcome,
    /// Atoms sharing no context have `|<u,v>| > tol`.
    pub faithfulness: CheckOutcome,
    pub tolerance: f64,
}

impl FaithfulnessReport {
    pub fn passed(&self) -> bool {
        self.orthonormality.passed && self.completeness.passed && self.faithfulness.passed
    }

    pub fn lines(&self) -> Vec<String> {
        let line = |name: &str, c: &CheckOutcome, what: &str| {
            format!(
                "{} {name}: {what} {:.3e}{}",
                if c.passed { "PASS" } else { "FAIL" },
                c.worst,
                c.witness
                    .as_ref()
                    .map(|w| format!(" at {w}"))
                    .unwrap_or_default()
            )
        };
        vec![
            line(
                "context orthonormality",
                &self.orthonormality,
                "max deviation",
            ),
            line(
                "basis completeness",
                &self.completeness,
                "max size deviation",
            ),
            line("faithfulness", &self.faithfulness, "min overlap"),
        ]
    }
}

/// Runs the three checks of a faithful orthogonal representation. Vectors
/// are used as given; they are not normalized.
pub fn verify_faithful(
    logic: &PartitionLogic,
    real: &VectorRealization,
) -> Result<FaithfulnessReport, OrthoError> {
    let vectors = logic
        .atoms()
        .iter()
        .map(|a| {
            real.vector(a)
                .ok_or_else(|| OrthoError::MissingVector(a.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let tol = real.tolerance;
    let atoms = logic.atoms();
    let pair = |x: usize, y: usize| {
        let (x, y) = (x.min(y), x.max(y));
        format!("({}, {})", atoms[x], atoms[y])
    };

    let mut ortho = (0.0f64, None);
    for context in logic.contexts() {
        for (k, &x) in context.iter().enumerate() {
            let dev = (norm(vectors[x]) - 1.0).abs();
            if dev > ortho.0 {
                ortho = (dev, Some(atoms[x].clone()));
            }
            for &y in &context[k + 1..] {
                let dev = dot(vectors[x], vectors[y]).abs();
                if dev > ortho.0 {
                    ortho = (dev, Some(pair(x, y)));
                }
            }
        }
    }

    let mut complete = (0.0f64, None);
    for (c, context) in logic.contexts().iter().enumerate() {
        let dev = (context.len() as f64 - real.dimension as f64).abs();
        if dev > complete.0 {
            complete = (dev, Some(format!("context {}", c + 1)));
        }
    }

    let mut overlap: (f64, Option<String>) = (f64::INFINITY, None);
    for x in 0..atoms.len() {
        for y in x + 1..atoms.len() {
            if logic.share_context(x, y) {
                continue;
            }
            let o = dot(vectors[x], vectors[y]).abs();
            if o < overlap.0 {
                overlap = (o, Some(pair(x, y)));
            }
        }
    }

    Ok(FaithfulnessReport {
        orthonormality: CheckOutcome {
            passed: ortho.0 <= tol,
            worst: ortho.0,
            witness: ortho.1,
        },
        completeness: CheckOutcome {
            passed: complete.0 == 0.0,
            worst: complete.0,
            witness: complete.1,
        },
        faithfulness: CheckOutcome {
            passed: overlap.0 > tol,
            worst: overlap.0,
            witness: overlap.1,
        },
        tolerance: tol,
    })
}
