//! JSON structure descriptions.
//!
//! Every input is an object with a `kind` field; a bare integer is read as a
//! chain of that length.
//!
//! ```json
//! {"kind": "algebra", "n": 4, "generators": [[0, 1], [1, 2]]}
//! {"kind": "chain", "n": 3}
//! {"kind": "poset", "n": 3, "le": [[0, 1], [0, 2]]}
//! {"kind": "semilattice", "meet": [[0, 0], [0, 1]]}
//! {"kind": "tree", "parent": [null, 0, 0]}
//! {"kind": "free", "s": 3}
//! {"kind": "system", "points": 3, "members": [[0], [1, 2]], "labels": ["a", "b"], "base_point": 0}
//! {"kind": "porcupine", "index": {...system...}, "fibers": [...], "section": [0, 1]}
//! ```

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Element, FiniteBooleanAlgebra};
use crate::combinators::{PointedSystem, PorcupineSpec};
use crate::error::{Error, Result};
use crate::family::{PointSet, SeparatingFamily};
use crate::free_algebra::FreeAlgebra;
use crate::limits::Limits;
use crate::order::{FinitePoset, MeetSemilattice};
use crate::tree::FiniteForest;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructureSpec {
    Algebra {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<Vec<usize>>>,
    },
    Chain {
        n: usize,
    },
    Poset {
        n: usize,
        #[serde(default)]
        le: Vec<(usize, usize)>,
    },
    Semilattice {
        meet: Vec<Vec<usize>>,
    },
    Tree {
        parent: Vec<Option<usize>>,
    },
    Free {
        s: usize,
    },
    #[serde(alias = "pool")]
    System(SystemSpec),
    Porcupine {
        index: SystemSpec,
        fibers: Vec<SystemSpec>,
        section: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemSpec {
    pub points: usize,
    pub members: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub member_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_point: Option<usize>,
}

impl StructureSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
            offset: e.column(),
            message: e.to_string(),
        })?;
        Self::from_value(value)
    }

    pub fn from_value(value: Value) -> Result<Self> {
        if let Some(n) = value.as_u64() {
            return Ok(StructureSpec::Chain { n: n as usize });
        }
        serde_json::from_value(value)
            .map_err(|e| Error::validation(format!("bad structure description: {e}")))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            StructureSpec::Algebra { .. } => "algebra",
            StructureSpec::Chain { .. } => "chain",
            StructureSpec::Poset { .. } => "poset",
            StructureSpec::Semilattice { .. } => "semilattice",
            StructureSpec::Tree { .. } => "tree",
            StructureSpec::Free { .. } => "free",
            StructureSpec::System(_) => "system",
            StructureSpec::Porcupine { .. } => "porcupine",
        }
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("specs serialize")
    }
}

/// An algebra together with its generator list (singletons by default).
pub fn algebra_with_generators(
    n: usize,
    generators: Option<&[Vec<usize>]>,
    limits: &Limits,
) -> Result<(FiniteBooleanAlgebra, Vec<Element>)> {
    let b = FiniteBooleanAlgebra::with_cap(n, limits.atoms)?;
    let gens = match generators {
        Some(g) => g
            .iter()
            .map(|s| b.element(s.iter().copied()))
            .collect::<Result<Vec<_>>>()?,
        None => b.singletons(),
    };
    Ok((b, gens))
}

pub fn poset(n: usize, le: &[(usize, usize)]) -> Result<FinitePoset> {
    FinitePoset::from_pairs(n, le)
}

pub fn semilattice(meet: &[Vec<usize>]) -> Result<MeetSemilattice> {
    MeetSemilattice::new(meet.to_vec())
}

pub fn forest(parent: &[Option<usize>], limits: &Limits) -> Result<FiniteForest> {
    FiniteForest::with_limits(parent.to_vec(), limits)
}

pub fn free(s: usize, limits: &Limits) -> Result<FreeAlgebra> {
    FreeAlgebra::with_limits(s, limits)
}

impl SystemSpec {
    pub fn build(&self) -> Result<PointedSystem> {
        let points = match &self.labels {
            Some(l) if l.len() != self.points => {
                return Err(Error::validation(format!(
                    "{} labels for {} points",
                    l.len(),
                    self.points
                )))
            }
            Some(l) => PointSet::with_labels(l.clone())?,
            None => PointSet::new(self.points)?,
        };
        if let Some(l) = &self.member_labels {
            if l.len() != self.members.len() {
                return Err(Error::validation(format!(
                    "{} member labels for {} members",
                    l.len(),
                    self.members.len()
                )));
            }
        }
        let mut family = SeparatingFamily::new(points.clone());
        for (i, m) in self.members.iter().enumerate() {
            for &x in m {
                points.check(x)?;
            }
            let label = self
                .member_labels
                .as_ref()
                .map_or_else(|| format!("V{i}"), |l| l[i].clone());
            family.push(
                label,
                crate::bitset::BitSet::from_indices(self.points, m.iter().copied()),
            )?;
        }
        PointedSystem::new(family, self.base_point)
    }

    /// Inverse of [`SystemSpec::build`], so outputs can be fed back in.
    pub fn from_system(s: &PointedSystem) -> Self {
        let f = &s.family;
        SystemSpec {
            points: f.size(),
            members: f.members().iter().map(|m| m.set.to_vec()).collect(),
            labels: f.points().labels().map(<[String]>::to_vec),
            member_labels: Some(f.members().iter().map(|m| m.label.clone()).collect()),
            base_point: s.base_point,
        }
    }

    pub fn to_value(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("specs serialize");
        v["kind"] = json!("system");
        v
    }
}

pub fn porcupine_spec(
    index: &SystemSpec,
    fibers: &[SystemSpec],
    section: &[usize],
) -> Result<PorcupineSpec> {
    Ok(PorcupineSpec {
        index: index.build()?,
        fibers: fibers
            .iter()
            .map(SystemSpec::build)
            .collect::<Result<_>>()?,
        section: section.to_vec(),
    })
}
