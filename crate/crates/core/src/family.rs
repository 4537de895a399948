//! Labeled set families over finite point sets and their order analytics.
//!
//! The order of a point `x` in a family `F` is the number of members that
//! contain `x`. Members are kept as an ordered, labeled list; duplicates are
//! allowed and count once per occurrence.

use serde::Serialize;

use crate::algebra::{Element, FiniteBooleanAlgebra, Ultrafilter};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointSet {
    size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl PointSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::validation("a point set needs at least one point"));
        }
        Ok(PointSet { size, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::validation("a point set needs at least one point"));
        }
        Ok(PointSet {
            size: labels.len(),
            labels: Some(labels),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn check(&self, point: usize) -> Result<()> {
        if point >= self.size {
            return Err(Error::PointOutOfRange {
                point,
                size: self.size,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Member {
    pub label: String,
    pub set: BitSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparatingFamily {
    points: PointSet,
    members: Vec<Member>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderProfile {
    pub per_point: Vec<usize>,
    pub max_order: usize,
    pub argmax_points: Vec<usize>,
}

/// Outcome of a T₀-separation check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Separation {
    Separating,
    /// Two distinct points that no member tells apart.
    Unseparated {
        x: usize,
        y: usize,
    },
}

impl Separation {
    pub fn is_separating(&self) -> bool {
        matches!(self, Separation::Separating)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelectionValue {
    pub value: usize,
    pub witness: Ultrafilter,
    /// Whether the list actually generates the algebra.
    pub generates: bool,
}

impl SeparatingFamily {
    pub fn new(points: PointSet) -> Self {
        SeparatingFamily {
            points,
            members: Vec::new(),
        }
    }

    /// Builds a family from index lists, labeling members `V0, V1, …`.
    pub fn from_index_sets(size: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let mut f = SeparatingFamily::new(PointSet::new(size)?);
        for (i, s) in sets.iter().enumerate() {
            for &p in s {
                f.points.check(p)?;
            }
            f.push(
                format!("V{i}"),
                BitSet::from_indices(size, s.iter().copied()),
            )?;
        }
        Ok(f)
    }

    /// All singletons `{x}` labeled `{x}`.
    pub fn singletons(points: PointSet) -> Self {
        let n = points.size();
        let mut f = SeparatingFamily::new(points);
        for x in 0..n {
            f.members.push(Member {
                label: format!("{{{x}}}"),
                set: BitSet::from_indices(n, [x]),
            });
        }
        f
    }

    /// The family of algebra elements viewed over the atom point set.
    pub fn from_elements(algebra: &FiniteBooleanAlgebra, elements: &[Element]) -> Result<Self> {
        let mut f = SeparatingFamily::new(PointSet::new(algebra.atom_count())?);
        for (i, e) in elements.iter().enumerate() {
            f.push(format!("g{i}"), e.bits().clone())?;
        }
        Ok(f)
    }

    pub fn push(&mut self, label: impl Into<String>, set: BitSet) -> Result<()> {
        if set.len() != self.points.size() {
            return Err(Error::validation(format!(
                "member of width {} over a point set of size {}",
                set.len(),
                self.points.size()
            )));
        }
        self.members.push(Member {
            label: label.into(),
            set,
        });
        Ok(())
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn size(&self) -> usize {
        self.points.size()
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn ord(&self, x: usize) -> Result<usize> {
        self.points.check(x)?;
        Ok(self.members.iter().filter(|m| m.set.contains(x)).count())
    }

    /// Pairwise check over membership patterns. On failure, reports the
    /// lexicographically least unseparated pair.
    pub fn is_t0_separating(&self) -> Separation {
        let n = self.size();
        let patterns = self.patterns();
        for x in 0..n {
            for y in x + 1..n {
                if patterns[x] == patterns[y] {
                    return Separation::Unseparated { x, y };
                }
            }
        }
        Separation::Separating
    }

    /// Membership pattern of every point, one bit per member.
    pub fn patterns(&self) -> Vec<BitSet> {
        let n = self.size();
        let mut pats = vec![BitSet::new(self.members.len()); n];
        for (j, m) in self.members.iter().enumerate() {
            for x in m.set.ones() {
                pats[x].insert(j);
            }
        }
        pats
    }

    pub fn order_profile(&self) -> OrderProfile {
        let mut per_point = vec![0usize; self.size()];
        for m in &self.members {
            for x in m.set.ones() {
                per_point[x] += 1;
            }
        }
        let max_order = per_point.iter().copied().max().unwrap_or(0);
        let argmax_points = (0..per_point.len())
            .filter(|&x| per_point[x] == max_order)
            .collect();
        OrderProfile {
            per_point,
            max_order,
            argmax_points,
        }
    }

    /// Every point lies in finitely many members, trivially at finite scale;
    /// the bound reported is the maximum order.
    pub fn point_finiteness_bound(&self) -> usize {
        self.order_profile().max_order
    }

    /// Index pairs `(i, j)`, `i < j`, of members with equal sets.
    pub fn duplicate_members(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.members.len() {
            for j in i + 1..self.members.len() {
                if self.members[i].set == self.members[j].set {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Lint messages for the family: duplicate members.
    pub fn lints(&self) -> Vec<String> {
        self.duplicate_members()
            .into_iter()
            .map(|(i, j)| {
                format!(
                    "duplicate member: {} and {} are the same set {}",
                    self.members[i].label, self.members[j].label, self.members[i].set
                )
            })
            .collect()
    }

    /// Same family with a different member list, keeping the point set.
    pub fn with_members(&self, members: Vec<Member>) -> Self {
        SeparatingFamily {
            points: self.points.clone(),
            members,
        }
    }

    pub fn with_points(points: PointSet, members: Vec<Member>) -> Result<Self> {
        let mut f = SeparatingFamily::new(points);
        for m in members {
            f.push(m.label, m.set)?;
        }
        Ok(f)
    }
}

/// `max_p |p ∩ G|` over the ultrafilters of `algebra`, with the least atom
/// attaining it.
pub fn selection_value(
    algebra: &FiniteBooleanAlgebra,
    generators: &[Element],
) -> Result<SelectionValue> {
    let generates = algebra.generates_whole(generators)?;
    let mut best: Option<(usize, Ultrafilter)> = None;
    for p in algebra.ultrafilters() {
        let v = p.selected(generators);
        if best.is_none_or(|(b, _)| v > b) {
            best = Some((v, p));
        }
    }
    let (value, witness) = best.expect("algebras have at least one atom");
    Ok(SelectionValue {
        value,
        witness,
        generates,
    })
}
