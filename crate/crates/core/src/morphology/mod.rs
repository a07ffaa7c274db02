//! Binary mathematical morphology on integer point sets.

mod ops;
mod pbm;
mod point_set;
mod small_module;

pub use ops::{
    dilate, distributed_dilation, erode, minkowski_sum, oplus_law_rhs, scale, scale_as_dilation,
    ScaleVerdict,
};
pub use pbm::{Bitmap, DefaultOrigin};
pub use point_set::{Coord, PointSet};
pub use crate::{IntPointSet, SmallPointSet};
pub use small_module::{
    dilate_z2, dilation_function, small_module_lattice, theorem_check_small_module, SmallModuleReport,
};

