use std::collections::BTreeSet;
use std::fmt;
use std::hash::Hash;

use num_traits::{PrimInt, Signed};

use crate::error::{Error, Result};

/// Integer coordinate type of a point set.
pub trait Coord: PrimInt + Signed + Hash + fmt::Debug + fmt::Display {}

impl<T: PrimInt + Signed + Hash + fmt::Debug + fmt::Display> Coord for T {}

/// A finite set of integer vectors of a fixed dimension, kept in
/// lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet<T: Coord> {
    dim: usize,
    points: BTreeSet<Vec<T>>,
}

impl<T: Coord> PointSet<T> {
    pub fn empty(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Unsupported("point sets need a positive dimension".into()));
        }
        Ok(PointSet {
            dim,
            points: BTreeSet::new(),
        })
    }

    /// `{0⃗}`, the identity of Minkowski addition.
    pub fn origin(dim: usize) -> Result<Self> {
        let mut s = Self::empty(dim)?;
        s.points.insert(vec![T::zero(); dim]);
        Ok(s)
    }

    pub fn from_points<P: AsRef<[T]>>(dim: usize, points: impl IntoIterator<Item = P>) -> Result<Self> {
        let mut s = Self::empty(dim)?;
        for p in points {
            s.insert(p.as_ref())?;
        }
        Ok(s)
    }

    /// One-dimensional set from scalars.
    pub fn line(values: impl IntoIterator<Item = T>) -> Self {
        PointSet {
            dim: 1,
            points: values.into_iter().map(|v| vec![v]).collect(),
        }
    }

    pub fn insert(&mut self, p: &[T]) -> Result<bool> {
        if p.len() != self.dim {
            return Err(Error::DimMismatch(self.dim, p.len()));
        }
        Ok(self.points.insert(p.to_vec()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[T]) -> bool {
        self.points.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &[T]> + '_ {
        self.points.iter().map(Vec::as_slice)
    }

    pub(crate) fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    fn with_points(&self, points: BTreeSet<Vec<T>>) -> Self {
        PointSet { dim: self.dim, points }
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self.with_points(self.points.union(&other.points).cloned().collect()))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self.with_points(self.points.intersection(&other.points).cloned().collect()))
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self.with_points(self.points.difference(&other.points).cloned().collect()))
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        self.same_dim(other)?;
        Ok(self.points.is_subset(&other.points))
    }

    /// `X ⊕ {u}`.
    pub fn translate(&self, u: &[T]) -> Result<Self> {
        if u.len() != self.dim {
            return Err(Error::DimMismatch(self.dim, u.len()));
        }
        let points = self
            .points
            .iter()
            .map(|p| add(p, u))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(self.with_points(points))
    }

    /// `{ -u | u ∈ X }`.
    pub fn reflect(&self) -> Result<Self> {
        let points = self
            .points
            .iter()
            .map(|p| p.iter().map(|&x| T::zero().checked_sub(&x).ok_or(Error::Overflow)).collect())
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(self.with_points(points))
    }

    /// Smallest and largest value of every coordinate, or `None` when empty.
    pub fn bounds(&self) -> Option<(Vec<T>, Vec<T>)> {
        let first = self.points.iter().next()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for p in &self.points {
            for k in 0..self.dim {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        Some((lo, hi))
    }
}

pub(crate) fn add<T: Coord>(a: &[T], b: &[T]) -> Result<Vec<T>> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| x.checked_add(&y).ok_or(Error::Overflow))
        .collect()
}

pub(crate) fn sub<T: Coord>(a: &[T], b: &[T]) -> Result<Vec<T>> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| x.checked_sub(&y).ok_or(Error::Overflow))
        .collect()
}

impl<T: Coord> fmt::Debug for PointSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<T: Coord> fmt::Display for PointSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if self.dim == 1 {
                write!(f, "{}", p[0])?;
            } else {
                let parts: Vec<String> = p.iter().map(ToString::to_string).collect();
                write!(f, "({})", parts.join(","))?;
            }
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_operations() {
        let a = PointSet::line([0i64, 1, 2]);
        let b = PointSet::line([2i64, 3]);
        assert_eq!(a.union(&b).unwrap(), PointSet::line([0, 1, 2, 3]));
        assert_eq!(a.intersection(&b).unwrap(), PointSet::line([2]));
        assert_eq!(a.difference(&b).unwrap(), PointSet::line([0, 1]));
        assert!(PointSet::line([1i64]).is_subset(&a).unwrap());
        assert_eq!(a.to_string(), "{0, 1, 2}");
    }

    #[test]
    fn dimension_is_checked() {
        let mut s = PointSet::<i32>::empty(2).unwrap();
        assert!(matches!(s.insert(&[1]), Err(Error::DimMismatch(2, 1))));
        assert!(matches!(
            s.union(&PointSet::line([1])),
            Err(Error::DimMismatch(2, 1))
        ));
        assert!(PointSet::<i32>::empty(0).is_err());
        s.insert(&[1, -1]).unwrap();
        assert_eq!(s.to_string(), "{(1,-1)}");
    }

    #[test]
    fn overflow_is_reported() {
        let s = PointSet::line([i8::MAX]);
        assert!(matches!(s.translate(&[1]), Err(Error::Overflow)));
        assert!(matches!(PointSet::line([i8::MIN]).reflect(), Err(Error::Overflow)));
    }
}
