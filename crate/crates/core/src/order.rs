//! Finite posets and meet-semilattices with their dual point sets.
//!
//! For a poset `P` the dual space is `FS(P)`, the lattice of final segments
//! (up-sets), with the canonical generators `a_p = {u ∈ FS(P) : p ∈ u}`. For a
//! meet-semilattice `M` it is `Fil(M)`, the filters of `M` including `∅`,
//! with generators of the same shape.

use std::collections::HashMap;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::combinators::PointedSystem;
use crate::error::{Error, Result};
use crate::family::{Member, PointSet, SeparatingFamily};
use crate::limits::Limits;
use crate::pointwise::PointwiseNeighborhood;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinitePoset {
    size: usize,
    /// `up[p] = {q : p ≤ q}`.
    #[serde(skip)]
    up: Vec<BitSet>,
    /// Strict cover pairs `(p, q)`, `p ⋖ q`.
    covers: Vec<(usize, usize)>,
}

impl FinitePoset {
    /// From a full `≤` matrix, which must be reflexive, antisymmetric and
    /// transitive.
    pub fn new(le: &[Vec<bool>]) -> Result<Self> {
        let n = le.len();
        if le.iter().any(|row| row.len() != n) {
            return Err(Error::validation("order relation must be a square matrix"));
        }
        for p in 0..n {
            if !le[p][p] {
                return Err(Error::validation(format!(
                    "relation is not reflexive at {p}"
                )));
            }
            for q in 0..n {
                if p != q && le[p][q] && le[q][p] {
                    return Err(Error::validation(format!(
                        "relation is not antisymmetric at ({p},{q})"
                    )));
                }
                for r in 0..n {
                    if le[p][q] && le[q][r] && !le[p][r] {
                        return Err(Error::validation(format!(
                            "relation is not transitive at ({p},{q},{r})"
                        )));
                    }
                }
            }
        }
        let up = (0..n)
            .map(|p| BitSet::from_indices(n, (0..n).filter(|&q| le[p][q])))
            .collect();
        Ok(Self::from_up_sets(n, up))
    }

    /// Reflexive-transitive closure of `pairs` (each `(p, q)` meaning
    /// `p ≤ q`); fails if the closure is not antisymmetric.
    pub fn from_pairs(size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut le = vec![vec![false; size]; size];
        for (p, row) in le.iter_mut().enumerate() {
            row[p] = true;
        }
        for &(p, q) in pairs {
            if p >= size || q >= size {
                return Err(Error::PointOutOfRange {
                    point: p.max(q),
                    size,
                });
            }
            le[p][q] = true;
        }
        for k in 0..size {
            for i in 0..size {
                if le[i][k] {
                    for j in 0..size {
                        if le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::new(&le)
    }

    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_pairs(n, &pairs).expect("a chain is a partial order")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_pairs(n, &[]).expect("an antichain is a partial order")
    }

    fn from_up_sets(size: usize, up: Vec<BitSet>) -> Self {
        let mut covers = Vec::new();
        for p in 0..size {
            for q in up[p].ones().filter(|&q| q != p) {
                let between = up[p].ones().any(|r| r != p && r != q && up[r].contains(q));
                if !between {
                    covers.push((p, q));
                }
            }
        }
        FinitePoset { size, up, covers }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn le(&self, p: usize, q: usize) -> bool {
        self.up[p].contains(q)
    }

    /// `↑p`.
    pub fn up(&self, p: usize) -> &BitSet {
        &self.up[p]
    }

    /// `↓p`.
    pub fn down(&self, p: usize) -> BitSet {
        BitSet::from_indices(self.size, (0..self.size).filter(|&q| self.le(q, p)))
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Minimal elements of a subset.
    pub fn minimal(&self, set: &BitSet) -> Vec<usize> {
        set.ones()
            .filter(|&p| !set.ones().any(|q| q != p && self.le(q, p)))
            .collect()
    }

    pub fn is_up_set(&self, set: &BitSet) -> bool {
        set.ones().all(|p| self.up[p].is_subset(set))
    }

    /// Upward closure of a subset.
    pub fn up_closure(&self, set: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.size);
        for p in set.ones() {
            out.or_assign(&self.up[p]);
        }
        out
    }

    /// A linear extension: every element precedes everything above it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.size).collect();
        // Fewer strict lower bounds first; ties by index.
        order.sort_by_key(|&p| (self.down(p).count(), p));
        order
    }

    /// All final segments, ordered by size then by contents.
    ///
    /// Elements are decided from the top of a linear extension downwards, so
    /// every partial choice extends to at least one up-set and each leaf of
    /// the search is a distinct up-set.
    pub fn final_segments(&self, limits: &Limits) -> Result<FinalSegmentLattice> {
        if self.size > limits.enumeration {
            return Err(Error::CapExceeded {
                what: "final-segment enumeration (poset size)",
                requested: self.size,
                cap: limits.enumeration,
                hint: Some(format!("up to 2^{} up-sets", self.size)),
            });
        }
        let mut order = self.linear_extension();
        order.reverse();
        let mut segments = Vec::new();
        let mut current = BitSet::new(self.size);
        self.extend_up_sets(&order, 0, &mut current, &mut segments);
        segments.sort_by(|a: &BitSet, b: &BitSet| (a.count(), a).cmp(&(b.count(), b)));
        Ok(FinalSegmentLattice::new(self.clone(), segments))
    }

    fn extend_up_sets(
        &self,
        order: &[usize],
        depth: usize,
        current: &mut BitSet,
        out: &mut Vec<BitSet>,
    ) {
        if depth == order.len() {
            out.push(current.clone());
            return;
        }
        let p = order[depth];
        self.extend_up_sets(order, depth + 1, current, out);
        let above_included = self.up[p].ones().all(|q| q == p || current.contains(q));
        if above_included {
            current.insert(p);
            self.extend_up_sets(order, depth + 1, current, out);
            current.remove(p);
        }
    }

    /// Canonical code: the least strict-order bit pattern over all
    /// relabelings. Only for `size <= 8`.
    pub fn canonical_code(&self) -> u64 {
        assert!(self.size <= 8, "canonical code supports at most 8 points");
        let n = self.size;
        let mut best = u64::MAX;
        for perm in permutations(n) {
            let mut code = 0u64;
            for p in 0..n {
                for q in self.up[p].ones().filter(|&q| q != p) {
                    code |= 1 << (perm[p] * n + perm[q]);
                }
            }
            best = best.min(code);
        }
        best
    }

    /// One representative of every isomorphism class of posets on `n`
    /// points (`n <= 6`), labeled along a linear extension.
    pub fn all_up_to_isomorphism(n: usize) -> Vec<FinitePoset> {
        assert!(n <= 6, "poset enumeration supports at most 6 points");
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let mut seen = std::collections::BTreeMap::new();
        for mask in 0u32..1 << pairs.len() {
            let rel: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            // Only transitively closed relations, so each poset appears once per labeling.
            let closed = rel.iter().all(|&(a, b)| {
                rel.iter()
                    .filter(|&&(c, _)| c == b)
                    .all(|&(_, d)| rel.contains(&(a, d)))
            });
            if !closed {
                continue;
            }
            let p =
                FinitePoset::from_pairs(n, &rel).expect("upper-triangular relations are acyclic");
            seen.entry(p.canonical_code()).or_insert(p);
        }
        seen.into_values().collect()
    }
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Cover pairs `(i, j)` of the inclusion order on a list of sets.
pub fn inclusion_covers(sets: &[BitSet]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..sets.len() {
        for j in 0..sets.len() {
            if i == j || sets[i] == sets[j] || !sets[i].is_subset(&sets[j]) {
                continue;
            }
            let between = (0..sets.len()).any(|k| {
                k != i
                    && k != j
                    && sets[k] != sets[i]
                    && sets[k] != sets[j]
                    && sets[i].is_subset(&sets[k])
                    && sets[k].is_subset(&sets[j])
            });
            if !between {
                out.push((i, j));
            }
        }
    }
    out
}

fn set_label(s: &BitSet) -> String {
    s.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinalSegmentLattice {
    #[serde(skip)]
    poset: FinitePoset,
    segments: Vec<BitSet>,
    #[serde(skip)]
    index: HashMap<BitSet, usize>,
}

/// Whether `p ↦ a_p` preserves or reverses the order of `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `p ≤ q ⇔ a_p ⊆ a_q`.
    Preserving,
    /// `p ≤ q ⇔ a_q ⊆ a_p`.
    Reversing,
    /// Both (only for antichains).
    Both,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeFilter {
    /// The filter as a set of indices into the lattice.
    pub members: BitSet,
    /// Index of its least element.
    pub minimum: usize,
    /// The point `p` with `minimum = ↑p`.
    pub generator: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscreteWitness {
    pub p: usize,
    /// Minimal elements of `P ∖ ↓p`; the ideal `{u : p ∉ u}` has maximum `↑τ_p`.
    pub tau: Vec<usize>,
    /// Basic pointwise neighborhood `V⁺_{↑p} ∩ V⁻_{↑τ_p}` (indices into `FS(P)`).
    pub neighborhood: PointwiseNeighborhood,
    /// Points `q` whose generator `a_q` lies in the neighborhood.
    pub captured: Vec<usize>,
    pub unique: bool,
}

impl FinalSegmentLattice {
    fn new(poset: FinitePoset, segments: Vec<BitSet>) -> Self {
        let index = segments
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        FinalSegmentLattice {
            poset,
            segments,
            index,
        }
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn segments(&self) -> &[BitSet] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn index_of(&self, set: &BitSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    /// Closed under union and intersection, and contains `∅` and `P`.
    pub fn is_sublattice(&self) -> bool {
        let n = self.poset.size;
        if self.index_of(&BitSet::new(n)).is_none() || self.index_of(&BitSet::full(n)).is_none() {
            return false;
        }
        self.segments.iter().all(|a| {
            self.segments
                .iter()
                .all(|b| self.index.contains_key(&a.or(b)) && self.index.contains_key(&a.and(b)))
        })
    }

    /// `a_p` as a set of segment indices.
    pub fn generator(&self, p: usize) -> BitSet {
        BitSet::from_indices(
            self.segments.len(),
            self.segments
                .iter()
                .enumerate()
                .filter(|(_, u)| u.contains(p))
                .map(|(i, _)| i),
        )
    }

    pub fn generators(&self) -> Vec<BitSet> {
        (0..self.poset.size).map(|p| self.generator(p)).collect()
    }

    /// Points `FS(P)` with the family `{a_p : p ∈ P}`.
    pub fn system(&self) -> Result<PointedSystem> {
        let labels = self.segments.iter().map(set_label).collect();
        let members = (0..self.poset.size)
            .map(|p| Member {
                label: format!("a_{p}"),
                set: self.generator(p),
            })
            .collect();
        let family = SeparatingFamily::with_points(PointSet::with_labels(labels)?, members)?;
        PointedSystem::new(family, None)
    }

    pub fn orientation(&self) -> Orientation {
        let gens = self.generators();
        let n = self.poset.size;
        let check = |f: &dyn Fn(usize, usize) -> bool| {
            (0..n).all(|p| (0..n).all(|q| self.poset.le(p, q) == f(p, q)))
        };
        let pres = check(&|p, q| gens[p].is_subset(&gens[q]));
        let rev = check(&|p, q| gens[q].is_subset(&gens[p]));
        match (pres, rev) {
            (true, true) => Orientation::Both,
            (true, false) => Orientation::Preserving,
            (false, true) => Orientation::Reversing,
            (false, false) => Orientation::Neither,
        }
    }

    /// `[u, →)` in `(FS(P), ⊆)`.
    fn principal_filter(&self, u: usize) -> BitSet {
        let base = &self.segments[u];
        BitSet::from_indices(
            self.segments.len(),
            self.segments
                .iter()
                .enumerate()
                .filter(|(_, v)| base.is_subset(v))
                .map(|(i, _)| i),
        )
    }

    /// Proper, nonempty filter `F` of `(FS(P), ∪, ∩)` with
    /// `x ∪ y ∈ F ⇒ x ∈ F or y ∈ F`.
    pub fn is_prime_filter(&self, filter: &BitSet) -> bool {
        let m = self.segments.len();
        if filter.is_empty() || filter.is_full() {
            return false;
        }
        for x in 0..m {
            for y in 0..m {
                let (sx, sy) = (&self.segments[x], &self.segments[y]);
                let meet = self.index[&sx.and(sy)];
                let join = self.index[&sx.or(sy)];
                if filter.contains(x) && sx.is_subset(sy) && !filter.contains(y) {
                    return false;
                }
                if filter.contains(x) && filter.contains(y) && !filter.contains(meet) {
                    return false;
                }
                if filter.contains(join) && !filter.contains(x) && !filter.contains(y) {
                    return false;
                }
            }
        }
        true
    }

    /// All prime filters, each with its minimum `↑p`; fails if they do not
    /// correspond one-to-one with `P`. In a finite lattice every nonempty
    /// filter is principal, so the principal filters are all the candidates.
    pub fn prime_clopen_filters(&self) -> Result<Vec<PrimeFilter>> {
        let mut out = Vec::new();
        let mut hit = vec![false; self.poset.size];
        for u in 0..self.segments.len() {
            let f = self.principal_filter(u);
            if !self.is_prime_filter(&f) {
                continue;
            }
            let seg = &self.segments[u];
            let generator = (0..self.poset.size)
                .find(|&p| self.poset.up(p) == seg)
                .ok_or_else(|| {
                    Error::validation(format!(
                        "prime filter with minimum {seg} is not of the form [p,→)"
                    ))
                })?;
            if self.generator(generator) != f {
                return Err(Error::validation(format!(
                    "prime filter at {seg} differs from a_{generator}"
                )));
            }
            hit[generator] = true;
            out.push(PrimeFilter {
                members: f,
                minimum: u,
                generator,
            });
        }
        if let Some(p) = hit.iter().position(|h| !h) {
            return Err(Error::validation(format!("a_{p} is not a prime filter")));
        }
        out.sort_by_key(|f| f.generator);
        Ok(out)
    }

    /// Witness that `a_p` is isolated among the generators in the pointwise
    /// topology.
    pub fn discrete_witness(&self, p: usize) -> Result<DiscreteWitness> {
        let poset = &self.poset;
        if p >= poset.size {
            return Err(Error::PointOutOfRange {
                point: p,
                size: poset.size,
            });
        }
        let outside = poset.down(p).not();
        let tau = poset.minimal(&outside);
        let ideal_max = poset.up_closure(&BitSet::from_indices(poset.size, tau.iter().copied()));
        debug_assert_eq!(ideal_max, outside);
        let plus = self.index[poset.up(p)];
        let minus = self.index[&ideal_max];
        let neighborhood = PointwiseNeighborhood::new(vec![plus], vec![minus]);
        let gens = self.generators();
        let captured = neighborhood.select(&gens);
        let unique = captured == [p];
        Ok(DiscreteWitness {
            p,
            tau,
            neighborhood,
            captured,
            unique,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeetSemilattice {
    size: usize,
    meet: Vec<Vec<usize>>,
}

impl MeetSemilattice {
    pub fn new(meet: Vec<Vec<usize>>) -> Result<Self> {
        let n = meet.len();
        if n == 0 {
            return Err(Error::validation(
                "a semilattice needs at least one element",
            ));
        }
        if meet
            .iter()
            .any(|r| r.len() != n || r.iter().any(|&v| v >= n))
        {
            return Err(Error::validation(
                "meet table must be square with entries in range",
            ));
        }
        for x in 0..n {
            if meet[x][x] != x {
                return Err(Error::validation(format!("meet is not idempotent at {x}")));
            }
            for y in 0..n {
                if meet[x][y] != meet[y][x] {
                    return Err(Error::validation(format!(
                        "meet is not commutative at ({x},{y})"
                    )));
                }
                for z in 0..n {
                    if meet[meet[x][y]][z] != meet[x][meet[y][z]] {
                        return Err(Error::validation(format!(
                            "meet is not associative at ({x},{y},{z})"
                        )));
                    }
                }
            }
        }
        Ok(MeetSemilattice { size: n, meet })
    }

    /// Chain `0 < 1 < … < n-1` with `x ∧ y = min(x, y)`.
    pub fn chain(n: usize) -> Result<Self> {
        Self::new((0..n).map(|x| (0..n).map(|y| x.min(y)).collect()).collect())
    }

    /// Meet-semilattice of a poset in which every pair has a greatest lower
    /// bound.
    pub fn from_poset(p: &FinitePoset) -> Result<Self> {
        let n = p.size();
        let mut meet = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&z| p.le(z, x) && p.le(z, y)).collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&z| lower.iter().all(|&w| p.le(w, z)))
                    .ok_or_else(|| Error::validation(format!("{x} and {y} have no meet")))?;
                meet[x][y] = glb;
            }
        }
        Self::new(meet)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x][y]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.meet[x][y] == x
    }

    pub fn as_poset(&self) -> FinitePoset {
        let le: Vec<Vec<bool>> = (0..self.size)
            .map(|x| (0..self.size).map(|y| self.leq(x, y)).collect())
            .collect();
        FinitePoset::new(&le).expect("a semilattice order is a partial order")
    }

    pub fn is_filter(&self, set: &BitSet) -> bool {
        set.ones().all(|x| {
            (0..self.size).all(|y| !self.leq(x, y) || set.contains(y))
                && set.ones().all(|y| set.contains(self.meet[x][y]))
        })
    }

    /// All filters, `∅` included: the meet-closed up-sets.
    pub fn filters(&self, limits: &Limits) -> Result<FilterLattice> {
        let up_sets = self.as_poset().final_segments(limits)?;
        let filters: Vec<BitSet> = up_sets
            .segments()
            .iter()
            .filter(|s| {
                s.ones()
                    .all(|x| s.ones().all(|y| s.contains(self.meet[x][y])))
            })
            .cloned()
            .collect();
        Ok(FilterLattice {
            semilattice: self.clone(),
            filters,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilterLattice {
    #[serde(skip)]
    semilattice: MeetSemilattice,
    filters: Vec<BitSet>,
}

impl FilterLattice {
    pub fn semilattice(&self) -> &MeetSemilattice {
        &self.semilattice
    }

    pub fn filters(&self) -> &[BitSet] {
        &self.filters
    }

    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.filters[i].is_subset(&self.filters[j])
    }

    pub fn generator(&self, p: usize) -> BitSet {
        BitSet::from_indices(
            self.filters.len(),
            self.filters
                .iter()
                .enumerate()
                .filter(|(_, u)| u.contains(p))
                .map(|(i, _)| i),
        )
    }

    /// Points `Fil(M)` with the family `{a_p : p ∈ M}`.
    pub fn system(&self) -> Result<PointedSystem> {
        let labels = self.filters.iter().map(set_label).collect();
        let members = (0..self.semilattice.size)
            .map(|p| Member {
                label: format!("a_{p}"),
                set: self.generator(p),
            })
            .collect();
        let family = SeparatingFamily::with_points(PointSet::with_labels(labels)?, members)?;
        PointedSystem::new(family, None)
    }

    /// `[a, →)` as a set of filter indices.
    pub fn cone(&self, a: usize) -> BitSet {
        BitSet::from_indices(
            self.filters.len(),
            (0..self.filters.len()).filter(|&u| self.leq(a, u)),
        )
    }

    fn bottom(&self) -> usize {
        (0..self.filters.len())
            .find(|&b| (0..self.filters.len()).all(|u| self.leq(b, u)))
            .expect("the empty filter is the least element")
    }

    /// Least upper bound in `(Fil(M), ⊆)`, if any.
    fn sup(&self, set: &[usize]) -> Option<usize> {
        let m = self.filters.len();
        let upper: Vec<usize> = (0..m)
            .filter(|&u| set.iter().all(|&s| self.leq(s, u)))
            .collect();
        upper
            .iter()
            .copied()
            .find(|&u| upper.iter().all(|&v| self.leq(u, v)))
    }

    /// Compactness via suprema: every `S ⊆ L` with `sup S = a` has a finite
    /// `F ⊆ S` with `sup F = a`. Only subsets of `↓a` can have supremum `a`.
    /// Returns `None` when `↓a` is too large to enumerate.
    fn compact_by_suprema(&self, a: usize) -> Option<bool> {
        let below: Vec<usize> = (0..self.filters.len())
            .filter(|&u| self.leq(u, a))
            .collect();
        if below.len() > 12 {
            return None;
        }
        for mask in 1u32..1 << below.len() {
            let s: Vec<usize> = (0..below.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| below[i])
                .collect();
            if self.sup(&s) != Some(a) {
                continue;
            }
            // Smallest subfamily with the same supremum.
            let found = (1u32..=mask).filter(|f| f & !mask == 0).any(|f| {
                let sub: Vec<usize> = (0..below.len())
                    .filter(|i| f >> i & 1 == 1)
                    .map(|i| below[i])
                    .collect();
                self.sup(&sub) == Some(a)
            });
            if !found {
                return Some(false);
            }
        }
        Some(true)
    }

    /// Compactness via topology: `[a, →)` coincides with the cylinder fixing
    /// the finitely many coordinates `m ∈ a` to 1, so it is clopen in the
    /// pointwise topology of `2^M`.
    fn compact_by_clopen(&self, a: usize) -> bool {
        let cylinder = BitSet::from_indices(
            self.filters.len(),
            (0..self.filters.len())
                .filter(|&u| self.filters[a].ones().all(|m| self.filters[u].contains(m))),
        );
        cylinder == self.cone(a)
    }

    /// Compact elements, immediate predecessors, maximal elements, the
    /// clopen filters `G` and the closed discrete subset `G ∖ V_p`.
    pub fn modest_analysis(&self) -> Result<ModestReport> {
        let m = self.filters.len();
        let bottom = self.bottom();
        let mut compact = Vec::new();
        let mut suprema_checked = true;
        for a in (0..m).filter(|&a| a != bottom) {
            let by_clopen = self.compact_by_clopen(a);
            match self.compact_by_suprema(a) {
                Some(by_sup) if by_sup != by_clopen => {
                    return Err(Error::validation(format!(
                        "compactness tests disagree at filter {}",
                        self.filters[a]
                    )))
                }
                None => suprema_checked = false,
                _ => {}
            }
            if by_clopen {
                compact.push(a);
            }
        }
        let immediate_predecessors: Vec<usize> = compact
            .iter()
            .map(|&a| {
                (0..m)
                    .filter(|&c| c != a && self.leq(c, a))
                    .filter(|&c| {
                        !(0..m).any(|d| d != c && d != a && self.leq(c, d) && self.leq(d, a))
                    })
                    .count()
            })
            .collect();
        let max_elements: Vec<usize> = (0..m)
            .filter(|&u| !(0..m).any(|v| v != u && self.leq(u, v)))
            .collect();
        let mut family = SeparatingFamily::new(PointSet::with_labels(
            self.filters.iter().map(set_label).collect(),
        )?);
        for &a in &compact {
            family.push(format!("[{},→)", self.filters[a]), self.cone(a))?;
        }
        let below_count = |p: usize| compact.iter().filter(|&&a| self.leq(a, p)).count();
        let witness_point = max_elements
            .iter()
            .copied()
            .max_by_key(|&p| (below_count(p), std::cmp::Reverse(p)))
            .expect("finite lattices have maximal elements");
        let compact_below_witness = below_count(witness_point);
        // G ∖ V_p: the clopen filters containing p (∅ never does).
        let closed_discrete_size = family
            .members()
            .iter()
            .filter(|g| g.set.contains(witness_point))
            .count();
        Ok(ModestReport {
            compact_elements: compact,
            immediate_predecessors,
            is_modest: true,
            suprema_checked,
            max_elements,
            witness_point,
            compact_below_witness,
            closed_discrete_size,
            clopen_filter_count: family.len() + 1,
            clopen_filter_family: family,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModestReport {
    /// Indices (into the filter list) of the compact elements.
    pub compact_elements: Vec<usize>,
    /// Immediate-predecessor count of each compact element, same order.
    pub immediate_predecessors: Vec<usize>,
    /// Always true at finite scale; the counts above are the content.
    pub is_modest: bool,
    /// Whether the suprema form of compactness was evaluated for every element.
    pub suprema_checked: bool,
    pub max_elements: Vec<usize>,
    /// Maximal element with the most compact elements below it.
    pub witness_point: usize,
    pub compact_below_witness: usize,
    /// `|G ∖ V_p|` for the witness point.
    pub closed_discrete_size: usize,
    /// `|G|`, counting the empty filter.
    pub clopen_filter_count: usize,
    /// Nonempty clopen filters `[a, →)` as a family over `L`.
    pub clopen_filter_family: SeparatingFamily,
}
