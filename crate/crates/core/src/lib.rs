pub mod algebra;
pub mod bitset;
pub mod cli;
pub mod combinators;
pub mod dot;
pub mod error;
pub mod family;
pub mod free_algebra;
pub mod free_sequence;
pub mod input;
pub mod limits;
pub mod oracle;
pub mod order;
pub mod pointwise;
pub mod report;
pub mod solver;
pub mod tree;

pub use algebra::{Element, FiniteBooleanAlgebra, SubalgebraPartition, Ultrafilter};
pub use bitset::BitSet;
pub use error::{Error, Result};
pub use family::{OrderProfile, PointSet, SeparatingFamily, Separation};
pub use free_algebra::{Assignment, FreeAlgebra, FreeElement};
pub use free_sequence::{is_free_sequence, longest_free_sequence, SigmaTree};
pub use limits::Limits;
pub use order::{FilterLattice, FinalSegmentLattice, FinitePoset, MeetSemilattice, ModestReport};
pub use pointwise::PointwiseNeighborhood;
pub use solver::{min_max_order, GeneratorPool, Mode, SolveResult};
pub use tree::{FiniteForest, PathSpace};
