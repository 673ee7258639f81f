//! Exact convex-geometry kernel: dependences, Radon partitions,
//! Carathéodory reductions, polytope vertices and half-space coverings.

mod caratheodory;
mod cover;
mod dependence;
pub(crate) mod linalg;
mod polytope;
mod radon;

pub use caratheodory::{caratheodory_conical_bounded, caratheodory_convex, Reduction};
pub use cover::{halfspace_covers, minimal_subcover, rotation_merge, union_covers, Coverage, OpenHalfSpace};
pub use dependence::linear_dependence;
pub use polytope::{polytope_vertices, Inequality, Polytope};
pub use radon::{radon_partition, RadonPartition};

pub use crate::point::Point;
