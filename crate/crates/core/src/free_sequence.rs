//! Free sequences in finite Boolean algebras and in their Stone spaces.
//!
//! A sequence `a_0, …, a_{α-1}` is free when `∏_{ξ∈S} a_ξ · ∏_{ζ∈T} −a_ζ ≠ 0`
//! for all finite `S, T` with every index of `S` below every index of `T`,
//! empty `S` or `T` included. Products only shrink as `S` and `T` grow, so it
//! suffices to test the `α + 1` maximal splits `S = [0, β)`, `T = [β, α)`.

use serde::Serialize;

use crate::algebra::{Element, FiniteBooleanAlgebra};
use crate::bitset::BitSet;
use crate::combinators::PointedSystem;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::tree::FiniteForest;

/// Largest sequence accepted by the literal definition check.
pub const NAIVE_CAP: usize = 12;

fn check_same(terms: &[Element]) -> Result<usize> {
    let n = terms.first().map_or(0, |t| t.atom_count());
    for t in terms {
        if t.atom_count() != n {
            return Err(Error::AlgebraMismatch {
                left: n,
                right: t.atom_count(),
            });
        }
    }
    Ok(n)
}

/// The maximal split cells `c_β = ∏_{ξ<β} a_ξ · ∏_{β≤ζ<α} −a_ζ`.
pub fn split_cells(algebra: &FiniteBooleanAlgebra, terms: &[Element]) -> Result<Vec<BitSet>> {
    let n = algebra.atom_count();
    if check_same(terms)? != n && !terms.is_empty() {
        return Err(Error::AlgebraMismatch {
            left: n,
            right: terms[0].atom_count(),
        });
    }
    let mut cells = vec![BitSet::full(n)];
    for a in terms {
        let a = a.bits();
        let last = cells.last().expect("nonempty").and(a);
        for c in cells.iter_mut() {
            *c = c.and_not(a);
        }
        cells.push(last);
    }
    Ok(cells)
}

pub fn is_free_sequence(algebra: &FiniteBooleanAlgebra, terms: &[Element]) -> Result<bool> {
    Ok(split_cells(algebra, terms)?.iter().all(|c| !c.is_empty()))
}

/// The definition taken literally: every pair of index sets `S < T`.
pub fn is_free_sequence_naive(algebra: &FiniteBooleanAlgebra, terms: &[Element]) -> Result<bool> {
    let alpha = terms.len();
    if alpha > NAIVE_CAP {
        return Err(Error::cap(
            "naive free-sequence check (length)",
            alpha,
            NAIVE_CAP,
        ));
    }
    let n = algebra.atom_count();
    if !terms.is_empty() && check_same(terms)? != n {
        return Err(Error::AlgebraMismatch {
            left: n,
            right: terms[0].atom_count(),
        });
    }
    // Each index is in S, in T, or in neither.
    for mut code in 0..3usize.pow(alpha as u32) {
        let mut prod = BitSet::full(n);
        let mut max_s = None;
        let mut min_t = None;
        for (i, a) in terms.iter().enumerate() {
            match code % 3 {
                1 => {
                    prod.and_assign(a.bits());
                    max_s = Some(i);
                }
                2 => {
                    prod = prod.and_not(a.bits());
                    min_t.get_or_insert(i);
                }
                _ => {}
            }
            code /= 3;
        }
        let ordered = match (max_s, min_t) {
            (Some(s), Some(t)) => s < t,
            _ => true,
        };
        if ordered && prod.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LongestFreeSequence {
    pub length: usize,
    /// Indices into the pool.
    pub indices: Vec<usize>,
    pub terms: Vec<Element>,
    pub nodes_explored: u64,
    /// Whether the search stopped at the cell-count bound `n - 1`.
    pub stopped_at_bound: bool,
}

/// The default pool: all elements other than 0 and 1, for `n <= 5`.
pub fn default_pool(algebra: &FiniteBooleanAlgebra) -> Result<Vec<Element>> {
    if algebra.atom_count() > 5 {
        return Err(Error::validation(format!(
            "an explicit pool is required above 5 atoms (got {})",
            algebra.atom_count()
        )));
    }
    algebra.nonconstant_elements()
}

/// Exact maximum length of a free sequence drawn from `pool`.
///
/// A sequence of length `α` has `α + 1` pairwise disjoint nonzero cells, so
/// `α ≤ n - 1`; with `stop_at_bound` the search ends once that length is
/// reached, otherwise every free sequence is visited.
pub fn longest_free_sequence(
    algebra: &FiniteBooleanAlgebra,
    pool: &[Element],
    stop_at_bound: bool,
) -> Result<LongestFreeSequence> {
    let n = algebra.atom_count();
    if !pool.is_empty() && check_same(pool)? != n {
        return Err(Error::AlgebraMismatch {
            left: n,
            right: pool[0].atom_count(),
        });
    }
    let mut order: Vec<usize> = (0..pool.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(pool[i].bits().count()));
    let mut search = Search {
        pool,
        order: &order,
        bound: if stop_at_bound { n - 1 } else { usize::MAX },
        best: Vec::new(),
        current: Vec::new(),
        nodes: 0,
    };
    search.dfs(&[BitSet::full(n)]);
    let length = search.best.len();
    Ok(LongestFreeSequence {
        length,
        terms: search.best.iter().map(|&i| pool[i].clone()).collect(),
        indices: search.best,
        nodes_explored: search.nodes,
        stopped_at_bound: stop_at_bound && length == n - 1,
    })
}

struct Search<'a> {
    pool: &'a [Element],
    order: &'a [usize],
    bound: usize,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
}

impl Search<'_> {
    fn dfs(&mut self, cells: &[BitSet]) -> bool {
        self.nodes += 1;
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
            if self.best.len() >= self.bound {
                return true;
            }
        }
        for &i in self.order {
            let a = self.pool[i].bits();
            // Appending a: old cells lose a, the last cell splits off its part in a.
            let last = cells.last().expect("nonempty").and(a);
            if last.is_empty() {
                continue;
            }
            let mut next = Vec::with_capacity(cells.len() + 1);
            let mut ok = true;
            for c in cells {
                let c = c.and_not(a);
                if c.is_empty() {
                    ok = false;
                    break;
                }
                next.push(c);
            }
            if !ok {
                continue;
            }
            next.push(last);
            self.current.push(i);
            let done = self.dfs(&next);
            self.current.pop();
            if done {
                return true;
            }
        }
        false
    }
}

/// Disjoint closures for every initial/terminal split of a point sequence,
/// with closures computed by the ultrafilter closure formula.
pub fn is_free_point_sequence(algebra: &FiniteBooleanAlgebra, atoms: &[usize]) -> Result<bool> {
    let ufs = atoms
        .iter()
        .map(|&a| algebra.ultrafilter(a))
        .collect::<Result<Vec<_>>>()?;
    for beta in 0..=ufs.len() {
        let front = algebra.closure_of_ultrafilter_set(&ufs[..beta])?;
        let back = algebra.closure_of_ultrafilter_set(&ufs[beta..])?;
        if front.iter().any(|p| back.contains(p)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact maximum length of a free sequence of points of the Stone space,
/// by exhaustive search over point sequences (`n <= 20`).
pub fn longest_free_point_sequence(algebra: &FiniteBooleanAlgebra) -> Result<Vec<usize>> {
    fn go(alg: &FiniteBooleanAlgebra, cur: &mut Vec<usize>, best: &mut Vec<usize>) -> Result<()> {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        for x in 0..alg.atom_count() {
            cur.push(x);
            if is_free_point_sequence(alg, cur)? {
                go(alg, cur, best)?;
            }
            cur.pop();
        }
        Ok(())
    }
    let mut best = Vec::new();
    go(algebra, &mut Vec::new(), &mut best)?;
    Ok(best)
}

/// End-extension tree of the free sequences drawn from a pool.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaTree {
    /// `nodes[k]` lists pool indices; `nodes[0]` is the empty sequence.
    pub nodes: Vec<Vec<usize>>,
    #[serde(skip)]
    forest: FiniteForest,
}

impl SigmaTree {
    pub fn build(
        algebra: &FiniteBooleanAlgebra,
        pool: &[Element],
        depth_bound: Option<usize>,
        limits: &Limits,
    ) -> Result<Self> {
        let n = algebra.atom_count();
        if !pool.is_empty() && check_same(pool)? != n {
            return Err(Error::AlgebraMismatch {
                left: n,
                right: pool[0].atom_count(),
            });
        }
        let mut nodes = vec![Vec::new()];
        let mut parent = vec![None];
        let mut frontier = vec![(0usize, vec![BitSet::full(n)])];
        let mut depth = 0;
        while !frontier.is_empty() && depth_bound.is_none_or(|d| depth < d) {
            let mut next_frontier = Vec::new();
            for (node, cells) in frontier {
                for (i, a) in pool.iter().enumerate() {
                    let a = a.bits();
                    let last = cells.last().expect("nonempty").and(a);
                    let next: Vec<BitSet> =
                        cells.iter().map(|c| c.and_not(a)).chain([last]).collect();
                    if next.iter().any(|c| c.is_empty()) {
                        continue;
                    }
                    if nodes.len() >= limits.tree_nodes {
                        return Err(Error::cap(
                            "free-sequence tree nodes",
                            nodes.len() + 1,
                            limits.tree_nodes,
                        ));
                    }
                    let mut seq = nodes[node].clone();
                    seq.push(i);
                    nodes.push(seq);
                    parent.push(Some(node));
                    next_frontier.push((nodes.len() - 1, next));
                }
            }
            frontier = next_frontier;
            depth += 1;
        }
        let forest = FiniteForest::new(parent)?;
        Ok(SigmaTree { nodes, forest })
    }

    pub fn forest(&self) -> &FiniteForest {
        &self.forest
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Longest sequence in the tree (height not counting the root).
    pub fn depth(&self) -> usize {
        self.nodes.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Path space of the free-sequence tree with its subbasic family. The root
/// (empty sequence) is a node, so the maximum order is `1 + depth`.
pub fn sigma_squared(tree: &SigmaTree) -> Result<PointedSystem> {
    tree.forest.paths().sigma_system()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(n: usize) -> FiniteBooleanAlgebra {
        FiniteBooleanAlgebra::new(n).unwrap()
    }

    fn tails(b: &FiniteBooleanAlgebra) -> Vec<Element> {
        let n = b.atom_count();
        (1..n).map(|i| b.element(i..n).unwrap()).collect()
    }

    #[test]
    fn reduced_check_examples() {
        let b = alg(3);
        let t = tails(&b);
        assert!(is_free_sequence(&b, &t).unwrap());
        let a = b.element([0]).unwrap();
        assert!(!is_free_sequence(&b, &[a.clone(), a.clone()]).unwrap());
        assert!(is_free_sequence(&b, &[]).unwrap());
        assert!(!is_free_sequence(&b, &[b.one()]).unwrap());
        assert!(!is_free_sequence(&b, &[b.zero()]).unwrap());
    }

    #[test]
    fn naive_check_examples() {
        let b = alg(3);
        assert!(is_free_sequence_naive(&b, &tails(&b)).unwrap());
        let a = b.element([1]).unwrap();
        assert!(!is_free_sequence_naive(&b, &[a.clone(), a]).unwrap());
        assert!(is_free_sequence_naive(&b, &[]).unwrap());
        let long = vec![b.one(); 13];
        assert!(is_free_sequence_naive(&b, &long).unwrap_err().is_cap());
    }

    #[test]
    fn longest_examples() {
        let b = alg(3);
        let r = longest_free_sequence(&b, &default_pool(&b).unwrap(), false).unwrap();
        assert_eq!(r.length, 2);
        assert!(is_free_sequence(&b, &r.terms).unwrap());
        let b2 = alg(2);
        assert_eq!(
            longest_free_sequence(&b2, &default_pool(&b2).unwrap(), false)
                .unwrap()
                .length,
            1
        );
        let b5 = alg(5);
        assert_eq!(
            longest_free_sequence(&b5, &tails(&b5), true)
                .unwrap()
                .length,
            4
        );
        assert_eq!(longest_free_sequence(&b5, &[], true).unwrap().length, 0);
        assert!(default_pool(&alg(6)).is_err());
    }

    #[test]
    fn point_sequences() {
        assert_eq!(longest_free_point_sequence(&alg(3)).unwrap().len(), 3);
        assert_eq!(longest_free_point_sequence(&alg(1)).unwrap().len(), 1);
        assert!(!is_free_point_sequence(&alg(3), &[0, 0]).unwrap());
    }

    #[test]
    fn sigma_trees() {
        let b = alg(2);
        let t = SigmaTree::build(&b, &default_pool(&b).unwrap(), None, &Limits::default()).unwrap();
        assert_eq!(t.depth(), 1);
        assert_eq!(
            sigma_squared(&t).unwrap().family.order_profile().max_order,
            2
        );

        let e = SigmaTree::build(&b, &[], None, &Limits::default()).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(sigma_squared(&e).unwrap().size(), 2);

        let b4 = alg(4);
        let c = SigmaTree::build(&b4, &tails(&b4), None, &Limits::default()).unwrap();
        assert_eq!(c.depth(), 3);
        assert_eq!(
            sigma_squared(&c).unwrap().family.order_profile().max_order,
            4
        );

        let capped = Limits {
            tree_nodes: 3,
            ..Limits::default()
        };
        assert!(SigmaTree::build(&b4, &tails(&b4), None, &capped)
            .unwrap_err()
            .is_cap());
        let shallow = SigmaTree::build(&b4, &tails(&b4), Some(1), &Limits::default()).unwrap();
        assert_eq!(shallow.depth(), 1);
    }
}
