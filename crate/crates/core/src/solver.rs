//! Minimum achievable maximum order of a T₀-separating subfamily of a pool.
//!
//! Given points and a pool of candidate sets, find a separating subfamily
//! whose largest point order is as small as possible. The exact mode solves
//! the decision problem "max order ≤ k" for k = 0, 1, … by backtracking; the
//! greedy mode gives an upper bound for pools too large to search.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::family::{Member, PointSet, SeparatingFamily, Separation};
use crate::free_algebra::FreeAlgebra;
use crate::limits::Limits;
use crate::order::{FilterLattice, FinitePoset};
use crate::tree::FiniteForest;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PresetTag {
    Free { s: usize },
    Upsets { poset_size: usize },
    Intervals { n: usize },
    Tree { nodes: usize },
    Filters { semilattice_size: usize },
    All { n: usize },
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorPool {
    pub points: PointSet,
    pub candidates: Vec<Member>,
    pub preset: PresetTag,
}

impl GeneratorPool {
    pub fn new(points: PointSet, candidates: Vec<Member>, preset: PresetTag) -> Result<Self> {
        for c in &candidates {
            if c.set.len() != points.size() {
                return Err(Error::validation(format!(
                    "candidate {} has width {} over {} points",
                    c.label,
                    c.set.len(),
                    points.size()
                )));
            }
        }
        Ok(GeneratorPool {
            points,
            candidates,
            preset,
        })
    }

    pub fn custom(family: &SeparatingFamily) -> Self {
        GeneratorPool {
            points: family.points().clone(),
            candidates: family.members().to_vec(),
            preset: PresetTag::Custom,
        }
    }

    /// Tails `[a, →)` of the chain `0 < … < n-1`, over its `n` atoms.
    pub fn intervals(n: usize) -> Result<Self> {
        let candidates = (0..n)
            .map(|a| Member {
                label: format!("[{a},→)"),
                set: BitSet::from_indices(n, a..n),
            })
            .collect();
        Self::new(PointSet::new(n)?, candidates, PresetTag::Intervals { n })
    }

    /// Points `FS(P)`; candidates are the nonempty proper up-sets of the
    /// lattice `(FS(P), ⊆)`, the clopen final subsets of the dual space.
    pub fn upsets(poset: &FinitePoset, limits: &Limits) -> Result<Self> {
        let fs = poset.final_segments(limits)?;
        let m = fs.len();
        let lattice_le: Vec<Vec<bool>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| fs.segments()[i].is_subset(&fs.segments()[j]))
                    .collect()
            })
            .collect();
        let lattice = FinitePoset::new(&lattice_le)?;
        let ups = lattice.final_segments(limits)?;
        let candidates = ups
            .segments()
            .iter()
            .filter(|u| !u.is_empty() && !u.is_full())
            .map(|u| Member {
                label: format!(
                    "↑{}",
                    lattice
                        .minimal(u)
                        .iter()
                        .map(|&i| fs.segments()[i].to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                ),
                set: u.clone(),
            })
            .collect();
        let labels = fs.segments().iter().map(|s| s.to_string()).collect();
        Self::new(
            PointSet::with_labels(labels)?,
            candidates,
            PresetTag::Upsets {
                poset_size: poset.size(),
            },
        )
    }

    /// Points `σT`, candidates `V_t⁺`.
    pub fn tree(forest: &FiniteForest) -> Result<Self> {
        let sys = forest.paths().sigma_system()?;
        Ok(GeneratorPool {
            points: sys.family.points().clone(),
            candidates: sys.family.members().to_vec(),
            preset: PresetTag::Tree {
                nodes: forest.size(),
            },
        })
    }

    /// Points `Fil(M)`, candidates the nonempty clopen filters `[a, →)`.
    pub fn filters(lattice: &FilterLattice) -> Result<Self> {
        let report = lattice.modest_analysis()?;
        let fam = report.clopen_filter_family;
        Ok(GeneratorPool {
            points: fam.points().clone(),
            candidates: fam.members().to_vec(),
            preset: PresetTag::Filters {
                semilattice_size: lattice.semilattice().size(),
            },
        })
    }

    /// Points are the `2^s` assignments, candidates the generators.
    pub fn free(algebra: &FreeAlgebra) -> Result<Self> {
        let s = algebra.generator_count();
        let labels = (0..algebra.assignment_count())
            .map(|m| format!("{m:0s$b}").chars().rev().collect())
            .collect();
        let candidates = (0..s)
            .map(|i| {
                Ok(Member {
                    label: format!("g{i}"),
                    set: algebra.generator(i)?.table().clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            PointSet::with_labels(labels)?,
            candidates,
            PresetTag::Free { s },
        )
    }

    /// Every nonempty subset of `n` points (`n <= 20`).
    pub fn all(n: usize) -> Result<Self> {
        if n > 20 {
            return Err(Error::cap("all-subsets pool (points)", n, 20));
        }
        let candidates = (1u64..1 << n)
            .map(|m| {
                let set = BitSet::from_mask(n, m);
                Member {
                    label: set.to_string(),
                    set,
                }
            })
            .collect();
        Self::new(PointSet::new(n)?, candidates, PresetTag::All { n })
    }

    pub fn size(&self) -> usize {
        self.points.size()
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    /// The subfamily with the given candidate indices.
    pub fn family(&self, indices: &[usize]) -> SeparatingFamily {
        SeparatingFamily::with_points(
            self.points.clone(),
            indices
                .iter()
                .map(|&i| self.candidates[i].clone())
                .collect(),
        )
        .expect("candidates match the point set")
    }

    /// Fails with the least unseparated pair if even the whole pool does
    /// not separate.
    pub fn check_separable(&self) -> Result<()> {
        let all: Vec<usize> = (0..self.len()).collect();
        match self.family(&all).is_t0_separating() {
            Separation::Separating => Ok(()),
            Separation::Unseparated { x, y } => Err(Error::PoolInsufficient(x, y)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub feasible: bool,
    /// Candidate indices of the witness family.
    pub witness: Option<Vec<usize>>,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub value: usize,
    pub family: SeparatingFamily,
    pub indices: Vec<usize>,
    pub exact: bool,
    pub nodes_explored: u64,
    #[serde(skip)]
    pub time: Duration,
}

fn check_exact_caps(pool: &GeneratorPool, limits: &Limits) -> Result<()> {
    let hint = Some("use greedy mode or raise the cap".to_string());
    if pool.size() > limits.exact_points {
        return Err(Error::CapExceeded {
            what: "exact search (points)",
            requested: pool.size(),
            cap: limits.exact_points,
            hint,
        });
    }
    if pool.len() > limits.exact_pool {
        return Err(Error::CapExceeded {
            what: "exact search (pool size)",
            requested: pool.len(),
            cap: limits.exact_pool,
            hint,
        });
    }
    Ok(())
}

struct Decider<'a> {
    pool: &'a GeneratorPool,
    k: usize,
    chosen: Vec<usize>,
    forbidden: Vec<bool>,
    order: Vec<usize>,
    nodes: u64,
}

impl Decider<'_> {
    fn fits(&self, c: usize) -> bool {
        self.pool.candidates[c]
            .set
            .ones()
            .all(|x| self.order[x] < self.k)
    }

    /// Least-index pair among those with the fewest covering candidates.
    fn branch_pair(&self) -> Option<Vec<usize>> {
        let n = self.pool.size();
        let fam = self.pool.family(&self.chosen);
        let pats = fam.patterns();
        let mut best: Option<Vec<usize>> = None;
        for x in 0..n {
            for y in x + 1..n {
                if pats[x] != pats[y] {
                    continue;
                }
                let covers: Vec<usize> = (0..self.pool.len())
                    .filter(|&c| {
                        let s = &self.pool.candidates[c].set;
                        !self.forbidden[c] && s.contains(x) != s.contains(y) && self.fits(c)
                    })
                    .collect();
                if best.as_ref().is_none_or(|b| covers.len() < b.len()) {
                    let empty = covers.is_empty();
                    best = Some(covers);
                    if empty {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn search(&mut self) -> bool {
        self.nodes += 1;
        let Some(covers) = self.branch_pair() else {
            return true;
        };
        let mut newly_forbidden = Vec::new();
        let mut found = false;
        for &c in &covers {
            self.chosen.push(c);
            self.forbidden[c] = true;
            for x in self.pool.candidates[c].set.ones() {
                self.order[x] += 1;
            }
            found = self.search();
            for x in self.pool.candidates[c].set.ones() {
                self.order[x] -= 1;
            }
            if found {
                break;
            }
            self.chosen.pop();
            // Later branches exclude c, so no family is visited twice.
            newly_forbidden.push(c);
        }
        for c in newly_forbidden {
            self.forbidden[c] = false;
        }
        found
    }
}

/// Whether some separating subfamily has every point order at most `k`.
pub fn decision_max_order_at_most(
    pool: &GeneratorPool,
    k: usize,
    limits: &Limits,
) -> Result<Decision> {
    check_exact_caps(pool, limits)?;
    pool.check_separable()?;
    let mut d = Decider {
        pool,
        k,
        chosen: Vec::new(),
        forbidden: vec![false; pool.len()],
        order: vec![0; pool.size()],
        nodes: 0,
    };
    let feasible = d.search();
    let witness = feasible.then(|| {
        let mut w = d.chosen.clone();
        w.sort_unstable();
        w
    });
    Ok(Decision {
        feasible,
        witness,
        nodes_explored: d.nodes,
    })
}

pub fn min_max_order(pool: &GeneratorPool, mode: Mode, limits: &Limits) -> Result<SolveResult> {
    let start = Instant::now();
    match mode {
        Mode::Exact => {
            check_exact_caps(pool, limits)?;
            pool.check_separable()?;
            let mut nodes = 0;
            for k in 0..=pool.len() {
                let d = decision_max_order_at_most(pool, k, limits)?;
                nodes += d.nodes_explored;
                if let Some(indices) = d.witness {
                    let family = pool.family(&indices);
                    return Ok(SolveResult {
                        value: family.order_profile().max_order,
                        family,
                        indices,
                        exact: true,
                        nodes_explored: nodes,
                        time: start.elapsed(),
                    });
                }
            }
            unreachable!("a separable pool succeeds once k reaches its size")
        }
        Mode::Greedy => {
            pool.check_separable()?;
            let (indices, nodes) = greedy(pool);
            let family = pool.family(&indices);
            Ok(SolveResult {
                value: family.order_profile().max_order,
                family,
                indices,
                exact: false,
                nodes_explored: nodes,
                time: start.elapsed(),
            })
        }
    }
}

/// Repeatedly add the candidate splitting the most unseparated pairs; ties
/// go to the smallest resulting max order, then to the earlier candidate.
fn greedy(pool: &GeneratorPool) -> (Vec<usize>, u64) {
    let n = pool.size();
    let mut chosen: Vec<usize> = Vec::new();
    let mut order = vec![0usize; n];
    let mut nodes = 0;
    // Class id per point; points in one class are still unseparated.
    let mut class: Vec<usize> = vec![0; n];
    loop {
        let mut sizes = std::collections::HashMap::new();
        for &c in &class {
            *sizes.entry(c).or_insert(0usize) += 1;
        }
        if sizes.values().all(|&s| s == 1) {
            break;
        }
        let current_max = order.iter().copied().max().unwrap_or(0);
        let mut best: Option<(usize, usize, usize)> = None;
        for (c, cand) in pool.candidates.iter().enumerate() {
            if chosen.contains(&c) {
                continue;
            }
            nodes += 1;
            // Pairs split = Σ over classes of inside * outside.
            let mut inside = std::collections::HashMap::new();
            for x in cand.set.ones() {
                *inside.entry(class[x]).or_insert(0usize) += 1;
            }
            let split: usize = inside.iter().map(|(cl, &i)| i * (sizes[cl] - i)).sum();
            if split == 0 {
                continue;
            }
            let new_max = cand
                .set
                .ones()
                .map(|x| order[x] + 1)
                .max()
                .unwrap_or(0)
                .max(current_max);
            let better = match best {
                None => true,
                Some((bs, bm, _)) => split > bs || (split == bs && new_max < bm),
            };
            if better {
                best = Some((split, new_max, c));
            }
        }
        let (_, _, c) = best.expect("a separable pool always has a splitting candidate");
        chosen.push(c);
        for x in pool.candidates[c].set.ones() {
            order[x] += 1;
        }
        let mut relabel = std::collections::HashMap::new();
        for x in 0..n {
            let key = (class[x], pool.candidates[c].set.contains(x));
            let next = relabel.len();
            class[x] = *relabel.entry(key).or_insert(next);
        }
    }
    chosen.sort_unstable();
    (chosen, nodes)
}
