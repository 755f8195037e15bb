//! Multiplier ideals, log canonical thresholds and jumping numbers of
//! central hyperplane arrangements, computed from building sets of the
//! intersection lattice and checked against an independent graded
//! linear-algebra oracle.

pub mod arrangement;
pub mod building;
pub mod cli;
pub mod exactla;
pub mod lattice;
pub mod multiplier;
pub mod oracle;

pub use arrangement::{braid, parse_arrangement, Arrangement, Hyperplane};
pub use building::{
    full_building_set, irreducible_decomposition, is_building_set, is_decomposition, minimal_building_set,
    BuildingSet, BuildingSetKind,
};
pub use exactla::{parse_rational, Rational, Subspace};
pub use lattice::{closure, compute_lattice, minimal_containing, Flat, IntersectionLattice};
pub use multiplier::{lct, presentation, support, verify_jump, MultiplierIdealPresentation};
