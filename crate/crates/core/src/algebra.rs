//! Finite Boolean algebras as powersets of their atoms.
//!
//! Every finite Boolean algebra is atomic, so it is represented by its atom
//! count `n`: elements are subsets of `{0, …, n-1}` and the ultrafilters (the
//! points of the Stone space) are exactly the principal ultrafilters at the
//! atoms. Subalgebras are partitions of the atom set.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::limits::{Limits, MAX_ATOM_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteBooleanAlgebra {
    atom_count: usize,
}

impl FiniteBooleanAlgebra {
    /// Powerset algebra over `atom_count` atoms, with the default cap of 64.
    pub fn new(atom_count: usize) -> Result<Self> {
        Self::with_cap(atom_count, Limits::default().atoms)
    }

    pub fn with_cap(atom_count: usize, cap: usize) -> Result<Self> {
        if cap > MAX_ATOM_CAP {
            return Err(Error::cap("atom cap", cap, MAX_ATOM_CAP));
        }
        if atom_count == 0 {
            return Err(Error::validation(
                "a Boolean algebra needs at least one atom",
            ));
        }
        if atom_count > cap {
            return Err(Error::cap("atom count", atom_count, cap));
        }
        Ok(FiniteBooleanAlgebra { atom_count })
    }

    pub fn atom_count(&self) -> usize {
        self.atom_count
    }

    pub fn zero(&self) -> Element {
        Element {
            bits: BitSet::new(self.atom_count),
        }
    }

    pub fn one(&self) -> Element {
        Element {
            bits: BitSet::full(self.atom_count),
        }
    }

    pub fn element<I: IntoIterator<Item = usize>>(&self, atoms: I) -> Result<Element> {
        let mut bits = BitSet::new(self.atom_count);
        for a in atoms {
            if a >= self.atom_count {
                return Err(Error::PointOutOfRange {
                    point: a,
                    size: self.atom_count,
                });
            }
            bits.insert(a);
        }
        Ok(Element { bits })
    }

    pub fn element_from_bits(&self, bits: BitSet) -> Result<Element> {
        if bits.len() != self.atom_count {
            return Err(Error::AlgebraMismatch {
                left: self.atom_count,
                right: bits.len(),
            });
        }
        Ok(Element { bits })
    }

    pub fn atom(&self, i: usize) -> Result<Element> {
        self.element([i])
    }

    pub fn ultrafilter(&self, atom: usize) -> Result<Ultrafilter> {
        if atom >= self.atom_count {
            return Err(Error::PointOutOfRange {
                point: atom,
                size: self.atom_count,
            });
        }
        Ok(Ultrafilter {
            atom_count: self.atom_count,
            atom,
        })
    }

    pub fn ultrafilters(&self) -> impl Iterator<Item = Ultrafilter> + '_ {
        (0..self.atom_count).map(|atom| Ultrafilter {
            atom_count: self.atom_count,
            atom,
        })
    }

    /// All `2^n` elements in mask order. Only for `n <= 20`.
    pub fn elements(&self) -> Result<Vec<Element>> {
        if self.atom_count > 20 {
            return Err(Error::cap(
                "element enumeration (atoms)",
                self.atom_count,
                20,
            ));
        }
        Ok((0..1u64 << self.atom_count)
            .map(|m| Element {
                bits: BitSet::from_mask(self.atom_count, m),
            })
            .collect())
    }

    /// Elements other than 0 and 1.
    pub fn nonconstant_elements(&self) -> Result<Vec<Element>> {
        Ok(self
            .elements()?
            .into_iter()
            .filter(|e| !e.is_zero() && !e.is_one())
            .collect())
    }

    /// Singletons `{0}, …, {n-1}`.
    pub fn singletons(&self) -> Vec<Element> {
        (0..self.atom_count)
            .map(|i| Element {
                bits: BitSet::from_indices(self.atom_count, [i]),
            })
            .collect()
    }

    fn check(&self, e: &Element) -> Result<()> {
        if e.atom_count() != self.atom_count {
            return Err(Error::AlgebraMismatch {
                left: self.atom_count,
                right: e.atom_count(),
            });
        }
        Ok(())
    }

    /// Partition of the atoms by membership pattern across `generators`.
    ///
    /// The subalgebra generated by `generators` is exactly the set of unions
    /// of blocks. Blocks are ordered by their least atom, atoms ascending.
    pub fn generated_subalgebra(&self, generators: &[Element]) -> Result<SubalgebraPartition> {
        for g in generators {
            self.check(g)?;
        }
        let mut by_pattern: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
        for atom in 0..self.atom_count {
            let pattern: Vec<bool> = generators.iter().map(|g| g.bits.contains(atom)).collect();
            by_pattern.entry(pattern).or_default().push(atom);
        }
        let mut blocks: Vec<Vec<usize>> = by_pattern.into_values().collect();
        blocks.sort_by_key(|b| b[0]);
        Ok(SubalgebraPartition {
            atom_count: self.atom_count,
            blocks,
        })
    }

    pub fn generates_whole(&self, generators: &[Element]) -> Result<bool> {
        Ok(self.generated_subalgebra(generators)?.is_discrete())
    }

    /// Topological closure in the Stone space, evaluated literally as
    /// `cl(A) = { p : p ⊆ ⋃A }`: `p` is kept iff every element of `p` lies in
    /// some ultrafilter of `A`. The quantifier runs over all `2^(n-1)` elements
    /// containing the atom of `p`, so `n` is limited to 20.
    pub fn closure_of_ultrafilter_set(&self, set: &[Ultrafilter]) -> Result<Vec<Ultrafilter>> {
        for u in set {
            if u.atom_count != self.atom_count {
                return Err(Error::AlgebraMismatch {
                    left: self.atom_count,
                    right: u.atom_count,
                });
            }
        }
        if self.atom_count > 20 {
            return Err(Error::cap(
                "closure quantifier (atoms)",
                self.atom_count,
                20,
            ));
        }
        let n = self.atom_count;
        let covered = |mask: u64| set.iter().any(|x| (mask >> x.atom) & 1 == 1);
        let mut out = Vec::new();
        for p in self.ultrafilters() {
            let in_closure = (0..1u64 << n)
                .filter(|m| (m >> p.atom) & 1 == 1)
                .all(covered);
            if in_closure {
                out.push(p);
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Element {
    bits: BitSet,
}

impl Element {
    pub fn atom_count(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn into_bits(self) -> BitSet {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.bits.is_full()
    }

    pub fn contains_atom(&self, atom: usize) -> bool {
        self.bits.contains(atom)
    }

    fn same(&self, other: &Element) -> Result<()> {
        if self.atom_count() != other.atom_count() {
            return Err(Error::AlgebraMismatch {
                left: self.atom_count(),
                right: other.atom_count(),
            });
        }
        Ok(())
    }

    pub fn meet(&self, other: &Element) -> Result<Element> {
        self.same(other)?;
        Ok(Element {
            bits: self.bits.and(&other.bits),
        })
    }

    pub fn join(&self, other: &Element) -> Result<Element> {
        self.same(other)?;
        Ok(Element {
            bits: self.bits.or(&other.bits),
        })
    }

    pub fn complement(&self) -> Element {
        Element {
            bits: self.bits.not(),
        }
    }

    /// `a - b = a · -b`.
    pub fn minus(&self, other: &Element) -> Result<Element> {
        self.same(other)?;
        Ok(Element {
            bits: self.bits.and_not(&other.bits),
        })
    }

    pub fn symdiff(&self, other: &Element) -> Result<Element> {
        self.same(other)?;
        Ok(Element {
            bits: self.bits.xor(&other.bits),
        })
    }

    pub fn leq(&self, other: &Element) -> Result<bool> {
        self.same(other)?;
        Ok(self.bits.is_subset(&other.bits))
    }
}

impl std::fmt::Display for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.bits.fmt(f)
    }
}

/// Principal ultrafilter at an atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Ultrafilter {
    #[serde(skip)]
    atom_count: usize,
    atom: usize,
}

impl Ultrafilter {
    pub fn atom(&self) -> usize {
        self.atom
    }

    /// `e ∈ p` iff the atom of `p` lies below `e`.
    pub fn contains(&self, e: &Element) -> bool {
        e.atom_count() == self.atom_count && e.contains_atom(self.atom)
    }

    /// `|p ∩ G|` for a list of elements (duplicates counted).
    pub fn selected(&self, generators: &[Element]) -> usize {
        generators.iter().filter(|g| self.contains(g)).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubalgebraPartition {
    #[serde(skip)]
    atom_count: usize,
    blocks: Vec<Vec<usize>>,
}

impl SubalgebraPartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// All blocks are singletons, i.e. the subalgebra is the whole powerset.
    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.atom_count
    }

    /// Number of elements of the represented subalgebra, `2^blocks`, when it
    /// fits in a `u128`.
    pub fn subalgebra_size(&self) -> Option<u128> {
        1u128.checked_shl(self.blocks.len() as u32)
    }

    /// Membership of an element in the represented subalgebra: it must be a
    /// union of blocks.
    pub fn contains(&self, e: &Element) -> bool {
        e.atom_count() == self.atom_count
            && self.blocks.iter().all(|b| {
                let inside = b.iter().filter(|a| e.contains_atom(**a)).count();
                inside == 0 || inside == b.len()
            })
    }
}
