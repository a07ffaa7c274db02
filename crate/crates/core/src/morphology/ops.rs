use std::collections::BTreeSet;

use super::point_set::{add, sub, Coord, PointSet};
use crate::error::{Error, Result};

/// `A ⊕ B = { u + v | u ∈ A, v ∈ B }`.
pub fn minkowski_sum<T: Coord>(a: &PointSet<T>, b: &PointSet<T>) -> Result<PointSet<T>> {
    a.same_dim(b)?;
    let mut out = PointSet::empty(a.dim())?;
    for u in a.iter() {
        for v in b.iter() {
            out.insert(&add(u, v)?)?;
        }
    }
    Ok(out)
}

/// `δ_S(X) = X ⊕ S`.
pub fn dilate<T: Coord>(s: &PointSet<T>, x: &PointSet<T>) -> Result<PointSet<T>> {
    minkowski_sum(x, s)
}

/// `ε_S(X) = { u | S ⊕ {u} ⊆ X }`, cross-checked against
/// `⋂_{u∈S} X ⊕ {-u}`.
pub fn erode<T: Coord>(s: &PointSet<T>, x: &PointSet<T>) -> Result<PointSet<T>> {
    s.same_dim(x)?;
    let by_containment = erode_containment(s, x)?;
    let by_translates = erode_translates(s, x)?;
    assert_eq!(by_containment, by_translates, "erosion formulas disagree");
    Ok(by_containment)
}

fn erode_containment<T: Coord>(s: &PointSet<T>, x: &PointSet<T>) -> Result<PointSet<T>> {
    let anchor = s.iter().next().ok_or(Error::EmptyStructuringElement)?;
    let mut out = PointSet::empty(x.dim())?;
    // any u with S ⊕ {u} ⊆ X has anchor + u ∈ X
    for p in x.iter() {
        let u = sub(p, anchor)?;
        let mut inside = true;
        for v in s.iter() {
            if !x.contains(&add(v, &u)?) {
                inside = false;
                break;
            }
        }
        if inside {
            out.insert(&u)?;
        }
    }
    Ok(out)
}

fn erode_translates<T: Coord>(s: &PointSet<T>, x: &PointSet<T>) -> Result<PointSet<T>> {
    let mut acc: Option<PointSet<T>> = None;
    for u in s.reflect()?.iter() {
        let shifted = x.translate(u)?;
        acc = Some(match acc {
            None => shifted,
            Some(a) => a.intersection(&shifted)?,
        });
    }
    acc.ok_or(Error::EmptyStructuringElement)
}

/// The distributed space of the dilations by `A` and `B`: `δ_{A∩B}(X)`.
pub fn distributed_dilation<T: Coord>(a: &PointSet<T>, b: &PointSet<T>, x: &PointSet<T>) -> Result<PointSet<T>> {
    x.same_dim(a)?;
    dilate(&a.intersection(b)?, x)
}

/// `⋂_{Y⊆X} (Y ⊕ A) ∪ ((X∖Y) ⊕ B)`, evaluated over all `2^|X|` subsets.
pub fn oplus_law_rhs<T: Coord>(
    x: &PointSet<T>,
    a: &PointSet<T>,
    b: &PointSet<T>,
    max_base: usize,
) -> Result<PointSet<T>> {
    x.same_dim(a)?;
    a.same_dim(b)?;
    let n = x.len();
    if n > max_base.min(63) {
        return Err(Error::too_large("subset base", n as u128, max_base.min(63) as u128));
    }
    let single: Vec<PointSet<T>> = x
        .iter()
        .map(|p| PointSet::from_points(x.dim(), [p]))
        .collect::<Result<_>>()?;
    let plus_a: Vec<PointSet<T>> = single.iter().map(|p| minkowski_sum(p, a)).collect::<Result<_>>()?;
    let plus_b: Vec<PointSet<T>> = single.iter().map(|p| minkowski_sum(p, b)).collect::<Result<_>>()?;
    let mut acc: Option<BTreeSet<Vec<T>>> = None;
    for mask in 0u64..1 << n {
        let mut term = BTreeSet::new();
        for i in 0..n {
            let part = if mask >> i & 1 == 1 { &plus_a[i] } else { &plus_b[i] };
            term.extend(part.iter().map(<[T]>::to_vec));
        }
        acc = Some(match acc {
            None => term,
            Some(prev) => prev.intersection(&term).cloned().collect(),
        });
    }
    PointSet::from_points(x.dim(), acc.unwrap_or_default())
}

/// `σ_r(X) = { r·u | u ∈ X }`.
pub fn scale<T: Coord>(r: T, x: &PointSet<T>) -> Result<PointSet<T>> {
    let mut out = PointSet::empty(x.dim())?;
    for p in x.iter() {
        let q = p
            .iter()
            .map(|&v| v.checked_mul(&r).ok_or(Error::Overflow))
            .collect::<Result<Vec<T>>>()?;
        out.insert(&q)?;
    }
    Ok(out)
}

/// Whether `σ_r` coincides with some dilation on `ℤ^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScaleVerdict<T: Coord> {
    /// `σ_r = δ_S` with the given `S`.
    Dilation(PointSet<T>),
    /// The only candidate `S` is `σ_r({0⃗})`; `probe` tells the two maps apart.
    Refuted {
        candidate: PointSet<T>,
        probe: PointSet<T>,
        scaled: PointSet<T>,
        dilated: PointSet<T>,
    },
}

/// Two-point test: any `S` with `σ_r = δ_S` must equal `σ_r({0⃗}) = {0⃗}`,
/// so `σ_r` is a dilation exactly when it fixes the unit vector.
pub fn scale_as_dilation<T: Coord>(r: T, dim: usize) -> Result<ScaleVerdict<T>> {
    let origin = PointSet::origin(dim)?;
    let candidate = scale(r, &origin)?;
    let mut unit = vec![T::zero(); dim];
    unit[0] = T::one();
    let probe = PointSet::from_points(dim, [unit])?;
    let scaled = scale(r, &probe)?;
    let dilated = dilate(&candidate, &probe)?;
    if scaled == dilated {
        return Ok(ScaleVerdict::Dilation(candidate));
    }
    Ok(ScaleVerdict::Refuted {
        candidate,
        probe,
        scaled,
        dilated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(v: &[i64]) -> PointSet<i64> {
        PointSet::line(v.iter().copied())
    }

    #[test]
    fn minkowski_examples() {
        let x = l(&[0, 1]);
        assert_eq!(minkowski_sum(&x, &l(&[1])).unwrap(), l(&[1, 2]));
        assert_eq!(minkowski_sum(&x, &l(&[2])).unwrap(), l(&[2, 3]));
        assert_eq!(minkowski_sum(&x, &l(&[])).unwrap(), l(&[]));
        assert_eq!(minkowski_sum(&x, &PointSet::origin(1).unwrap()).unwrap(), x);
        let plane = PointSet::<i64>::origin(2).unwrap();
        assert!(matches!(minkowski_sum(&x, &plane), Err(Error::DimMismatch(1, 2))));
    }

    #[test]
    fn dilation_of_a_pixel() {
        let s = PointSet::from_points(2, [[0i64, 0], [0, -1]]).unwrap();
        let x = PointSet::origin(2).unwrap();
        assert_eq!(dilate(&s, &x).unwrap(), s);
    }

    #[test]
    fn erosion_examples() {
        assert_eq!(erode(&l(&[0, 1]), &l(&[0, 1, 2])).unwrap(), l(&[0, 1]));
        let x = l(&[-4, 0, 5]);
        assert_eq!(erode(&PointSet::origin(1).unwrap(), &x).unwrap(), x);
        assert!(matches!(erode(&l(&[]), &x), Err(Error::EmptyStructuringElement)));
        assert_eq!(erode(&l(&[0, 3]), &l(&[])).unwrap(), l(&[]));
    }

    #[test]
    fn law_on_the_dim_one_instance() {
        let (x, a, b) = (l(&[0, 1]), l(&[1]), l(&[2]));
        assert_eq!(distributed_dilation(&a, &b, &x).unwrap(), l(&[]));
        assert_eq!(oplus_law_rhs(&x, &a, &b, 20).unwrap(), l(&[]));
        // the naive pointwise meet is not empty
        let naive = dilate(&a, &x).unwrap().intersection(&dilate(&b, &x).unwrap()).unwrap();
        assert_eq!(naive, l(&[2]));
    }

    #[test]
    fn law_edge_cases() {
        let a = l(&[1, 4]);
        assert_eq!(oplus_law_rhs(&l(&[]), &a, &l(&[2]), 20).unwrap(), l(&[]));
        let x = l(&[0, 2, 3]);
        assert_eq!(oplus_law_rhs(&x, &a, &a, 20).unwrap(), dilate(&a, &x).unwrap());
        let big = PointSet::line(0..21i64);
        assert!(matches!(oplus_law_rhs(&big, &a, &a, 20), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn scaling() {
        let x = l(&[-2, 3]);
        assert_eq!(scale(1, &x).unwrap(), x);
        assert_eq!(scale(0, &x).unwrap(), l(&[0]));
        assert_eq!(scale(1, &x).unwrap(), dilate(&PointSet::origin(1).unwrap(), &x).unwrap());
        assert!(matches!(scale_as_dilation(1i64, 1).unwrap(), ScaleVerdict::Dilation(s) if s == l(&[0])));
        match scale_as_dilation(2i64, 1).unwrap() {
            ScaleVerdict::Refuted { scaled, dilated, .. } => {
                assert_eq!(scaled, l(&[2]));
                assert_eq!(dilated, l(&[1]));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(scale(i64::MAX, &l(&[2])), Err(Error::Overflow)));
    }
}
