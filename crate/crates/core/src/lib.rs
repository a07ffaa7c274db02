//! Finite-lattice engine for spatial constraint systems.

pub mod checks;
pub mod distributed;
pub mod epistemic;
pub mod error;
pub mod lattice;
pub mod limits;
pub mod morphology;
pub mod random;
pub mod space;

pub use error::{Error, Result};
pub use lattice::{Elem, FiniteLattice};
pub use limits::Limits;
pub use distributed::{delta_group, Method};
pub use space::{Scs, SpaceFunction};
pub use morphology::PointSet;

/// Point sets with 64-bit coordinates.
pub type IntPointSet = PointSet<i64>;
/// Point sets with 32-bit coordinates.
pub type SmallPointSet = PointSet<i32>;
