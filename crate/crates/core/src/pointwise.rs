//! Basic open sets of the pointwise topology on an algebra of sets.
//!
//! For a point `q` of the dual space, `V⁺_q` is the set of elements containing
//! `q` and `V⁻_q` the set of elements missing it. A basic neighborhood is a
//! finite intersection of these.

use serde::Serialize;

use crate::bitset::BitSet;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PointwiseNeighborhood {
    /// Points every element of the neighborhood must contain.
    pub plus: Vec<usize>,
    /// Points every element of the neighborhood must miss.
    pub minus: Vec<usize>,
}

impl PointwiseNeighborhood {
    pub fn new(plus: Vec<usize>, minus: Vec<usize>) -> Self {
        PointwiseNeighborhood { plus, minus }
    }

    pub fn contains(&self, element: &BitSet) -> bool {
        self.plus.iter().all(|&q| element.contains(q))
            && !self.minus.iter().any(|&q| element.contains(q))
    }

    /// Indices of the given elements lying in the neighborhood.
    pub fn select<'a, I>(&self, elements: I) -> Vec<usize>
    where
        I: IntoIterator<Item = &'a BitSet>,
    {
        elements
            .into_iter()
            .enumerate()
            .filter(|(_, e)| self.contains(e))
            .map(|(i, _)| i)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership() {
        let v = PointwiseNeighborhood::new(vec![0], vec![2]);
        assert!(v.contains(&BitSet::from_indices(3, [0, 1])));
        assert!(!v.contains(&BitSet::from_indices(3, [0, 2])));
        assert!(!v.contains(&BitSet::from_indices(3, [1])));
        assert!(PointwiseNeighborhood::default().contains(&BitSet::new(3)));
    }
}
