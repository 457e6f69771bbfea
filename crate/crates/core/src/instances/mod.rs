//! Instance files, weight schemes and seeded generators.
//!
//! The text format is line oriented. Blank lines and lines starting with `#`
//! are ignored. Element, item, target and vertex ids are 1-based.
//!
//! ```text
//! SKP <COV|INF|LOC|DOM> <n> <aux>        aux = m, or the edge count for DOM
//! COV: one line of m item values, then n lines `<k> <i_1> … <i_k>`
//! INF: lines `<j> <i> <p>`
//! LOC: m lines of n profits
//! DOM: aux lines `<u> <v>`
//! WEIGHTS EXPLICIT <w_1> … <w_n>   |   WEIGHTS SCHEME <normal|uniform|unit> <seed>
//! BUDGET <W>
//! ```

mod format;
mod generate;
mod rng;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use format::{load_instance, parse_instance};
pub use generate::{generate_random_instance, generate_weights, GeneratorParams};
pub use rng::SplitMix64;

use crate::error::{Result, SkpError};
use crate::oracle::InfluenceEdge;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProblemKind {
    #[serde(rename = "COV")]
    Cov,
    #[serde(rename = "INF")]
    Inf,
    #[serde(rename = "LOC")]
    Loc,
    #[serde(rename = "DOM")]
    Dom,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 4] = [
        ProblemKind::Cov,
        ProblemKind::Inf,
        ProblemKind::Loc,
        ProblemKind::Dom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Cov => "COV",
            ProblemKind::Inf => "INF",
            ProblemKind::Loc => "LOC",
            ProblemKind::Dom => "DOM",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = SkpError;

    fn from_str(s: &str) -> Result<Self> {
        ProblemKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| SkpError::Config(format!("unknown problem kind `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightScheme {
    /// `N(1, 0.2)` (standard deviation 0.2) clamped to `[0.1, 1.9]`.
    Normal,
    /// `U(0.4, 1.6)`.
    Uniform,
    /// Every weight is 1.
    Unit,
}

impl WeightScheme {
    pub const ALL: [WeightScheme; 3] = [
        WeightScheme::Normal,
        WeightScheme::Uniform,
        WeightScheme::Unit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WeightScheme::Normal => "normal",
            WeightScheme::Uniform => "uniform",
            WeightScheme::Unit => "unit",
        }
    }
}

impl fmt::Display for WeightScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WeightScheme {
    type Err = SkpError;

    fn from_str(s: &str) -> Result<Self> {
        WeightScheme::ALL
            .into_iter()
            .find(|w| w.name() == s)
            .ok_or_else(|| SkpError::UnknownScheme(s.to_string()))
    }
}

/// Problem body. Ids are zero-based in memory.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemData {
    Cov {
        item_values: Vec<f64>,
        sets: Vec<Vec<usize>>,
    },
    Inf {
        sources: usize,
        targets: usize,
        edges: Vec<InfluenceEdge>,
    },
    Loc {
        facilities: usize,
        /// One row of `facilities` profits per customer.
        profits: Vec<Vec<f64>>,
    },
    Dom {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
}

impl ProblemData {
    pub fn kind(&self) -> ProblemKind {
        match self {
            ProblemData::Cov { .. } => ProblemKind::Cov,
            ProblemData::Inf { .. } => ProblemKind::Inf,
            ProblemData::Loc { .. } => ProblemKind::Loc,
            ProblemData::Dom { .. } => ProblemKind::Dom,
        }
    }

    /// Number of elements `n`.
    pub fn len(&self) -> usize {
        match self {
            ProblemData::Cov { sets, .. } => sets.len(),
            ProblemData::Inf { sources, .. } => *sources,
            ProblemData::Loc { facilities, .. } => *facilities,
            ProblemData::Dom { vertices, .. } => *vertices,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum WeightSpec {
    Explicit(Vec<f64>),
    Scheme { scheme: WeightScheme, seed: u64 },
}

/// Parsed, not yet validated, contents of an instance file.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceFile {
    pub data: ProblemData,
    pub weights: WeightSpec,
    pub budget: f64,
}

impl InstanceFile {
    pub fn kind(&self) -> ProblemKind {
        self.data.kind()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Scheme label and seed for reporting; explicit weights report `explicit`.
    pub fn weight_label(&self) -> (String, Option<u64>) {
        match &self.weights {
            WeightSpec::Explicit(_) => ("explicit".to_string(), None),
            WeightSpec::Scheme { scheme, seed } => (scheme.to_string(), Some(*seed)),
        }
    }

    /// Hex SHA-256 prefix of the canonical text.
    pub fn fingerprint(&self) -> String {
        use sha2::{Digest, Sha256};
        let digest = Sha256::digest(self.to_text().as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}
