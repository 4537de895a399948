//! Resource caps shared by the enumerative modules.

use serde::{Deserialize, Serialize};

/// Hard ceiling for the atom cap; beyond this elements stop being cheap.
pub const MAX_ATOM_CAP: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest atom count accepted for a `FiniteBooleanAlgebra`.
    pub atoms: usize,
    /// Largest structure (poset, semilattice) whose up-sets/filters are enumerated.
    pub enumeration: usize,
    /// Largest point set a combinator may produce.
    pub points: usize,
    /// Largest number of generators of a free algebra.
    pub free_generators: usize,
    /// Exact min-max-order search: maximum number of points.
    pub exact_points: usize,
    /// Exact min-max-order search: maximum pool size.
    pub exact_pool: usize,
    /// Node cap for free-sequence trees.
    pub tree_nodes: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            atoms: 64,
            enumeration: 20,
            points: 1 << 16,
            free_generators: 16,
            exact_points: 12,
            exact_pool: 32,
            tree_nodes: 200_000,
        }
    }
}
