//! Finite forests, their path spaces and the initial chain algebra.
//!
//! A path is a downward-closed chain. In a finite forest every nonempty path
//! has a maximum `t` and equals the ancestor-closure `↓t`, so `σT` has exactly
//! `n + 1` points: `∅` and one path per node.

use serde::Serialize;

use crate::algebra::{Element, FiniteBooleanAlgebra, SubalgebraPartition};
use crate::bitset::BitSet;
use crate::combinators::PointedSystem;
use crate::error::{Error, Result};
use crate::family::{Member, PointSet, SeparatingFamily};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteForest {
    parent: Vec<Option<usize>>,
}

impl FiniteForest {
    pub fn new(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        for (t, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n {
                    return Err(Error::PointOutOfRange { point: p, size: n });
                }
            }
            // Walking up must terminate within n steps.
            let mut cur = Some(t);
            let mut steps = 0;
            while let Some(c) = cur {
                if steps > n {
                    return Err(Error::validation(format!(
                        "parent relation has a cycle through node {t}"
                    )));
                }
                cur = parent[c];
                steps += 1;
            }
        }
        Ok(FiniteForest { parent })
    }

    pub fn with_limits(parent: Vec<Option<usize>>, limits: &Limits) -> Result<Self> {
        if parent.len() > limits.tree_nodes {
            return Err(Error::cap("tree nodes", parent.len(), limits.tree_nodes));
        }
        Self::new(parent)
    }

    /// Path `0 - 1 - … - (n-1)` rooted at 0.
    pub fn chain(n: usize) -> Self {
        Self::new((0..n).map(|i| i.checked_sub(1)).collect()).expect("a chain is a tree")
    }

    /// Complete binary tree of the given depth in heap order (`2^depth - 1` nodes).
    pub fn complete_binary(depth: u32) -> Self {
        let n = (1usize << depth) - 1;
        Self::new(
            (0..n)
                .map(|i| if i == 0 { None } else { Some((i - 1) / 2) })
                .collect(),
        )
        .expect("heap order is a tree")
    }

    pub fn size(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, t: usize) -> Option<usize> {
        self.parent[t]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&t| self.parent[t].is_none())
            .collect()
    }

    pub fn children(&self, t: usize) -> Vec<usize> {
        (0..self.size())
            .filter(|&c| self.parent[c] == Some(t))
            .collect()
    }

    /// `↓t`, the node and all its ancestors.
    pub fn ancestor_closure(&self, t: usize) -> BitSet {
        let mut out = BitSet::new(self.size());
        let mut cur = Some(t);
        while let Some(c) = cur {
            out.insert(c);
            cur = self.parent[c];
        }
        out
    }

    /// `a_t = {t' : t' < t}`.
    pub fn strict_ancestors(&self, t: usize) -> BitSet {
        let mut s = self.ancestor_closure(t);
        s.remove(t);
        s
    }

    /// Nodes on a longest root-to-leaf path; 0 for the empty forest.
    pub fn height(&self) -> usize {
        (0..self.size())
            .map(|t| self.ancestor_closure(t).count())
            .max()
            .unwrap_or(0)
    }

    pub fn is_path(&self, set: &BitSet) -> bool {
        set.ones().all(|t| self.ancestor_closure(t).is_subset(set))
            && set.ones().all(|s| {
                set.ones().all(|t| {
                    self.ancestor_closure(t).contains(s) || self.ancestor_closure(s).contains(t)
                })
            })
    }

    /// Canonical string of each rooted subtree, children sorted.
    fn canonical(&self) -> String {
        fn enc(f: &FiniteForest, t: usize) -> String {
            let mut kids: Vec<String> = f.children(t).into_iter().map(|c| enc(f, c)).collect();
            kids.sort();
            format!("({})", kids.concat())
        }
        let mut roots: Vec<String> = self.roots().into_iter().map(|r| enc(self, r)).collect();
        roots.sort();
        roots.concat()
    }

    /// One forest per isomorphism class on `n` nodes (`n <= 8`). Every forest
    /// has a labeling with parents preceding children, so the parent arrays
    /// with `parent[i] < i` reach every class.
    pub fn all_shapes(n: usize) -> Vec<FiniteForest> {
        assert!(n <= 8, "shape enumeration supports at most 8 nodes");
        let mut seen = std::collections::BTreeMap::new();
        let mut parent = vec![None; n];
        fn go(
            i: usize,
            parent: &mut Vec<Option<usize>>,
            seen: &mut std::collections::BTreeMap<String, FiniteForest>,
        ) {
            if i == parent.len() {
                let f = FiniteForest {
                    parent: parent.clone(),
                };
                seen.entry(f.canonical()).or_insert(f);
                return;
            }
            for p in std::iter::once(None).chain((0..i).map(Some)) {
                parent[i] = p;
                go(i + 1, parent, seen);
            }
        }
        go(0, &mut parent, &mut seen);
        seen.into_values().collect()
    }

    /// Shapes with a single root.
    pub fn all_tree_shapes(n: usize) -> Vec<FiniteForest> {
        Self::all_shapes(n)
            .into_iter()
            .filter(|f| f.roots().len() == 1)
            .collect()
    }

    pub fn paths(&self) -> PathSpace {
        let n = self.size();
        let mut paths = vec![BitSet::new(n)];
        paths.extend((0..n).map(|t| self.ancestor_closure(t)));
        PathSpace {
            forest: self.clone(),
            paths,
        }
    }

    /// Subalgebra of `P(T)` generated by the sets `a_t`.
    pub fn initial_chain_algebra(&self) -> Result<InitialChainAlgebra> {
        let algebra = FiniteBooleanAlgebra::with_cap(self.size(), self.size().max(1))?;
        let generators = (0..self.size())
            .map(|t| algebra.element_from_bits(self.strict_ancestors(t)))
            .collect::<Result<Vec<_>>>()?;
        let partition = algebra.generated_subalgebra(&generators)?;
        Ok(InitialChainAlgebra {
            is_whole: partition.is_discrete(),
            algebra,
            generators,
            partition,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InitialChainAlgebra {
    pub algebra: FiniteBooleanAlgebra,
    pub generators: Vec<Element>,
    pub partition: SubalgebraPartition,
    pub is_whole: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathSpace {
    #[serde(skip)]
    forest: FiniteForest,
    /// `paths[0] = ∅`, `paths[t + 1] = ↓t`.
    paths: Vec<BitSet>,
}

impl PathSpace {
    pub fn forest(&self) -> &FiniteForest {
        &self.forest
    }

    pub fn paths(&self) -> &[BitSet] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// `V_t⁺ = {A ∈ σT : t ∈ A}` as a set of path indices.
    pub fn subbasic(&self, t: usize) -> BitSet {
        BitSet::from_indices(
            self.paths.len(),
            self.paths
                .iter()
                .enumerate()
                .filter(|(_, a)| a.contains(t))
                .map(|(i, _)| i),
        )
    }

    /// Points `σT` with the family `{V_t⁺ : t ∈ T}`.
    pub fn sigma_system(&self) -> Result<PointedSystem> {
        let labels = self.paths.iter().map(|p| p.to_string()).collect();
        let members = (0..self.forest.size())
            .map(|t| Member {
                label: format!("V+_{t}"),
                set: self.subbasic(t),
            })
            .collect();
        let family = SeparatingFamily::with_points(PointSet::with_labels(labels)?, members)?;
        // The empty path is the natural base point.
        PointedSystem::new(family, Some(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(FiniteForest::new(vec![Some(1), Some(0)]).is_err());
        assert!(FiniteForest::new(vec![Some(0)]).is_err());
        assert!(FiniteForest::new(vec![Some(3)]).is_err());
        assert!(FiniteForest::new(vec![]).is_ok());
        assert!(FiniteForest::with_limits(
            vec![None; 3],
            &Limits {
                tree_nodes: 2,
                ..Limits::default()
            }
        )
        .unwrap_err()
        .is_cap());
    }

    #[test]
    fn path_counts() {
        let cherry = FiniteForest::new(vec![None, Some(0), Some(0)]).unwrap();
        assert_eq!(cherry.paths().len(), 4);
        assert_eq!(FiniteForest::complete_binary(3).paths().len(), 8);
        assert_eq!(FiniteForest::new(vec![]).unwrap().paths().len(), 1);
        let f = FiniteForest::complete_binary(3);
        assert!(f.paths().paths().iter().all(|p| f.is_path(p)));
        assert!(!f.is_path(&BitSet::from_indices(7, [1, 2, 0])));
    }

    #[test]
    fn sigma_orders() {
        let f = FiniteForest::complete_binary(3);
        let ps = f.paths();
        let s = ps.sigma_system().unwrap();
        assert!(s.family.is_t0_separating().is_separating());
        let prof = s.family.order_profile();
        assert_eq!(prof.max_order, 3);
        for (i, a) in ps.paths().iter().enumerate() {
            assert_eq!(prof.per_point[i], a.count());
        }
        assert_eq!(
            FiniteForest::chain(5)
                .paths()
                .sigma_system()
                .unwrap()
                .family
                .order_profile()
                .max_order,
            5
        );
        let empty = FiniteForest::new(vec![])
            .unwrap()
            .paths()
            .sigma_system()
            .unwrap();
        assert_eq!(empty.size(), 1);
        assert!(empty.family.is_empty());
    }

    #[test]
    fn initial_chain_algebras() {
        let c = FiniteForest::chain(3).initial_chain_algebra().unwrap();
        assert!(c.is_whole);
        let a = FiniteForest::new(vec![None, None])
            .unwrap()
            .initial_chain_algebra()
            .unwrap();
        assert_eq!(a.partition.block_count(), 1);
        let one = FiniteForest::new(vec![None])
            .unwrap()
            .initial_chain_algebra()
            .unwrap();
        assert!(one.generators[0].is_zero());
        assert!(FiniteForest::new(vec![])
            .unwrap()
            .initial_chain_algebra()
            .is_err());
    }

    #[test]
    fn shape_counts() {
        // Rooted forests: 1, 2, 4, 9, 20, 48; rooted trees: 1, 1, 2, 4, 9, 20.
        let forests: Vec<usize> = (1..=6).map(|n| FiniteForest::all_shapes(n).len()).collect();
        assert_eq!(forests, vec![1, 2, 4, 9, 20, 48]);
        let trees: Vec<usize> = (1..=6)
            .map(|n| FiniteForest::all_tree_shapes(n).len())
            .collect();
        assert_eq!(trees, vec![1, 1, 2, 4, 9, 20]);
    }
}
