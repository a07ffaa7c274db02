//! Exhaustive enumeration of space functions, the ground truth for `Δ`.

use std::sync::Arc;

use super::{find_violation, same_lattice, SpaceFunction};
use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};

/// Calls `visit` with the image vector of every space function on `lattice`
/// (restricted to those below every member of `below`, when given).
///
/// Candidates assign an image to each join-irreducible, monotonically and
/// under the bound, and are extended by `f(x) = ⊔{f(j) | j ⊑ x}`; the
/// extension is then filtered through the axioms, which matters on
/// non-distributive lattices. Visiting order is lexicographic in the
/// irreducible images, not in the full image vector.
pub fn for_each_space_function(
    lattice: &FiniteLattice,
    below: Option<&[&SpaceFunction]>,
    cap: u64,
    mut visit: impl FnMut(&[Elem]),
) -> Result<()> {
    let irreducibles = lattice.join_irreducibles().to_vec();
    let bound: Vec<Elem> = match below {
        Some(fs) => irreducibles
            .iter()
            .map(|&j| lattice.meet_iter(fs.iter().map(|f| f.apply(j))))
            .collect(),
        None => vec![lattice.top(); irreducibles.len()],
    };
    let choices: Vec<Vec<Elem>> = bound
        .iter()
        .map(|&b| lattice.elements().filter(|&e| lattice.leq(e, b)).collect())
        .collect();
    let estimate = choices
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    if estimate > cap as u128 {
        return Err(Error::too_large("space-function enumeration", estimate, cap as u128));
    }
    // irreducibles strictly below each irreducible, by position
    let lower: Vec<Vec<usize>> = irreducibles
        .iter()
        .map(|&j| {
            irreducibles
                .iter()
                .enumerate()
                .filter(|&(_, &i)| i != j && lattice.leq(i, j))
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    // which irreducibles sit below each element
    let support: Vec<Vec<usize>> = lattice
        .elements()
        .map(|x| {
            irreducibles
                .iter()
                .enumerate()
                .filter(|&(_, &j)| lattice.leq(j, x))
                .map(|(k, _)| k)
                .collect()
        })
        .collect();

    let mut assignment = vec![lattice.bottom(); irreducibles.len()];
    let mut images = vec![lattice.bottom(); lattice.len()];
    let mut stack: Vec<usize> = vec![0];
    // iterative depth-first search: stack[d] is the next choice index at depth d
    while let Some(&next) = stack.last() {
        let depth = stack.len() - 1;
        if depth == irreducibles.len() {
            for x in lattice.elements() {
                images[x.index()] =
                    lattice.join_iter(support[x.index()].iter().map(|&k| assignment[k]));
            }
            if find_violation(lattice, &images).is_none() {
                visit(&images);
            }
            stack.pop();
            continue;
        }
        if next >= choices[depth].len() {
            stack.pop();
            continue;
        }
        *stack.last_mut().unwrap() += 1;
        let candidate = choices[depth][next];
        if lower[depth].iter().all(|&k| lattice.leq(assignment[k], candidate)) {
            assignment[depth] = candidate;
            stack.push(0);
        }
    }
    Ok(())
}

/// Every space function on `lattice` (below all of `below`, when given),
/// sorted by image vector.
pub fn enumerate_space_functions(
    lattice: &Arc<FiniteLattice>,
    below: Option<&[&SpaceFunction]>,
    cap: u64,
) -> Result<Vec<SpaceFunction>> {
    check_below(lattice, below)?;
    let mut out: Vec<Vec<Elem>> = Vec::new();
    for_each_space_function(lattice, below, cap, |images| out.push(images.to_vec()))?;
    out.sort();
    Ok(out
        .into_iter()
        .map(|images| SpaceFunction::trusted(lattice.clone(), images))
        .collect())
}

/// The meet of `fs` in the lattice of space functions, obtained as the
/// point-wise join of every space function below all of them.
pub fn function_meet_oracle(
    lattice: &Arc<FiniteLattice>,
    fs: &[&SpaceFunction],
    cap: u64,
) -> Result<SpaceFunction> {
    if fs.is_empty() {
        return Ok(SpaceFunction::top_space(lattice.clone()));
    }
    check_below(lattice, Some(fs))?;
    let mut acc = vec![lattice.bottom(); lattice.len()];
    for_each_space_function(lattice, Some(fs), cap, |images| {
        for (a, &i) in acc.iter_mut().zip(images) {
            *a = lattice.join(*a, i);
        }
    })?;
    Ok(SpaceFunction::trusted(lattice.clone(), acc))
}

fn check_below(lattice: &Arc<FiniteLattice>, below: Option<&[&SpaceFunction]>) -> Result<()> {
    if let Some(fs) = below {
        if fs.iter().any(|f| !same_lattice(f.lattice(), lattice)) {
            return Err(Error::LatticeMismatch);
        }
    }
    Ok(())
}
