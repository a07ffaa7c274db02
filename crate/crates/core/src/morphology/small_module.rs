//! Dilations on the four-point module `ℤ₂ × ℤ₂`, where the abstract
//! distributed space can be computed by enumeration and compared with
//! `δ_{A∩B}`.

use std::sync::Arc;

use crate::error::Result;
use crate::lattice::{Elem, FiniteLattice};
use crate::space::{function_meet_oracle, SpaceFunction};

/// Point `(x, y)` is bit `x + 2y`; addition mod 2 per coordinate is XOR of
/// bit indices.
pub const POINTS: [&str; 4] = ["(0,0)", "(1,0)", "(0,1)", "(1,1)"];

/// `X ⊕ S` on `ℤ₂ × ℤ₂`, sets given as 4-bit masks.
pub fn dilate_z2(s: u8, x: u8) -> u8 {
    let mut out = 0;
    for i in 0..4 {
        for j in 0..4 {
            if x >> i & 1 == 1 && s >> j & 1 == 1 {
                out |= 1 << (i ^ j);
            }
        }
    }
    out
}

/// Subsets of the module ordered by inclusion.
pub fn small_module_lattice() -> Result<Arc<FiniteLattice>> {
    Ok(Arc::new(FiniteLattice::powerset(&POINTS, false, POINTS.len())?))
}

pub fn dilation_function(lattice: &Arc<FiniteLattice>, s: u8) -> Result<SpaceFunction> {
    SpaceFunction::from_fn(lattice.clone(), |x| Elem(dilate_z2(s, x.0 as u8) as u32))
}

#[derive(Clone, Debug, Default)]
pub struct SmallModuleReport {
    pub pairs: usize,
    /// `(A, B, X)` where the enumerated meet differs from `δ_{A∩B}(X)`.
    pub mismatches: Vec<(u8, u8, u8)>,
}

impl SmallModuleReport {
    pub fn passed(&self) -> bool {
        self.pairs == 256 && self.mismatches.is_empty()
    }
}

/// Compares the enumerated meet of `δ_A` and `δ_B` with `δ_{A∩B}` for every
/// pair of structuring elements.
pub fn theorem_check_small_module(cap: u64) -> Result<SmallModuleReport> {
    let lattice = small_module_lattice()?;
    let dilations = (0u8..16)
        .map(|s| dilation_function(&lattice, s))
        .collect::<Result<Vec<_>>>()?;
    let mut report = SmallModuleReport::default();
    for a in 0u8..16 {
        for b in 0u8..16 {
            report.pairs += 1;
            let meet = function_meet_oracle(&lattice, &[&dilations[a as usize], &dilations[b as usize]], cap)?;
            for x in 0u8..16 {
                if meet.apply(Elem(x as u32)).0 as u8 != dilate_z2(a & b, x) {
                    report.mismatches.push((a, b, x));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn module_addition() {
        // (1,0) + (1,1) = (0,1)
        assert_eq!(dilate_z2(0b0010, 0b1000), 0b0100);
        assert_eq!(dilate_z2(0, 0b1111), 0);
        assert_eq!(dilate_z2(0b0001, 0b1010), 0b1010);
    }

    #[test]
    fn dilations_are_space_functions() {
        let l = small_module_lattice().unwrap();
        assert_eq!(
            dilation_function(&l, 0).unwrap(),
            SpaceFunction::bottom_space(l.clone())
        );
        assert_eq!(dilation_function(&l, 1).unwrap(), SpaceFunction::identity(l.clone()));
    }
}
