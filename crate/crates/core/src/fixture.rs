//! JSON fixture bundles: a named example with any of a branch given by
//! characteristic exponents, a parameterized curve, its dual graph and a
//! δ-sequence at infinity.

use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DualGraph, GraphSpec};
use crate::jets::{BranchParam, CurveModel, DEFAULT_TRUNC};
use crate::semigroup::{CharExponents, SemigroupAtInfinity};

/// A rational coefficient written either as an integer or as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Int(i64),
    Text(String),
}

impl Coefficient {
    pub fn to_rational(&self) -> Result<BigRational> {
        match self {
            Coefficient::Int(n) => Ok(crate::jets::rat(*n)),
            Coefficient::Text(s) => {
                BigRational::from_str(s.trim()).map_err(|_| Error::Input(format!("cannot parse coefficient {s:?}")))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchSpec {
    /// `(exponent, coefficient)` pairs of `x(τ)`.
    #[serde(default)]
    pub x: Vec<(usize, Coefficient)>,
    #[serde(default)]
    pub y: Vec<(usize, Coefficient)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub branches: Vec<BranchSpec>,
    #[serde(default)]
    pub trunc: Option<usize>,
}

impl CurveSpec {
    pub fn build(&self) -> Result<CurveModel> {
        let trunc = self.trunc.unwrap_or(DEFAULT_TRUNC);
        let conv = |terms: &[(usize, Coefficient)]| -> Result<Vec<(usize, BigRational)>> {
            terms.iter().map(|(e, c)| Ok((*e, c.to_rational()?))).collect()
        };
        let branches = self
            .branches
            .iter()
            .map(|b| BranchParam::new(&conv(&b.x)?, &conv(&b.y)?, trunc))
            .collect::<Result<Vec<_>>>()?;
        CurveModel::new(branches)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureBundle {
    pub name: String,
    #[serde(default)]
    pub char_exponents: Option<Vec<u64>>,
    #[serde(default)]
    pub curve: Option<CurveSpec>,
    #[serde(default)]
    pub graph: Option<GraphSpec>,
    #[serde(default)]
    pub delta_sequence: Option<Vec<u64>>,
}

impl FixtureBundle {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("fixture JSON: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
    }

    pub fn char_exponents(&self) -> Option<Result<CharExponents>> {
        self.char_exponents.clone().map(CharExponents::new)
    }

    pub fn curve_model(&self) -> Option<Result<CurveModel>> {
        self.curve.as_ref().map(CurveSpec::build)
    }

    pub fn dual_graph(&self) -> Option<Result<DualGraph>> {
        self.graph.clone().map(GraphSpec::build)
    }

    pub fn semigroup_at_infinity(&self) -> Option<Result<SemigroupAtInfinity>> {
        self.delta_sequence.clone().map(SemigroupAtInfinity::new)
    }

    pub fn is_empty(&self) -> bool {
        self.char_exponents.is_none() && self.curve.is_none() && self.graph.is_none() && self.delta_sequence.is_none()
    }
}

/// Every `*.json` file directly inside `dir`, sorted by file name.
pub fn fixture_paths(dir: &Path) -> Result<Vec<std::path::PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::Input(format!("cannot read {}: {e}", dir.display())))?;
    let mut paths: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    Ok(paths)
}
