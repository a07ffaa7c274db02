//! Epistemic instances of spatial constraint systems: truth assignments,
//! Kripke structures and Aumann partitions.

mod aumann;
mod boolean;
mod formula;
mod kripke;
mod sets;

pub use aumann::{AumannFile, AumannStructure};
pub use boolean::{boolean_cs, BooleanCs, MAX_PROPS};
pub use formula::Formula;
pub use kripke::{KripkeFile, KripkeInput, KripkeModel, KripkeScs, KripkeUniverse};
