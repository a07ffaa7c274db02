//! Seeded generators of random instances for property checks.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::epistemic::{AumannStructure, Formula, KripkeModel, KripkeUniverse};
use crate::error::Result;
use crate::lattice::{subset_label, Elem, FiniteLattice};
use crate::morphology::{Coord, PointSet};
use crate::space::{Scs, SpaceFunction};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Down-sets of a random poset on `1..=max_poset` points, ordered by
/// inclusion. Always distributive; at most `2^max_poset` elements.
pub fn distributive_lattice<R: Rng>(rng: &mut R, max_poset: usize) -> Result<FiniteLattice> {
    let k = rng.gen_range(1..=max_poset.clamp(1, 16));
    // below[i]: mask of points strictly below point i, transitively closed
    let mut below = vec![0u32; k];
    for i in 0..k {
        for j in 0..i {
            if rng.gen_bool(0.4) {
                below[i] |= 1 << j | below[j];
            }
        }
    }
    let downsets: Vec<u32> = (0..1u32 << k)
        .filter(|&m| (0..k).all(|i| m >> i & 1 == 0 || below[i] & !m == 0))
        .collect();
    let names: Vec<String> = (0..k).map(|i| format!("x{i}")).collect();
    let label = |m: u32| subset_label(&names, m);
    let mut covers = Vec::new();
    for &lo in &downsets {
        for &hi in &downsets {
            if hi & lo == lo && (hi ^ lo).count_ones() == 1 {
                covers.push((label(lo), label(hi)));
            }
        }
    }
    FiniteLattice::from_covers(downsets.iter().map(|&m| label(m)), covers)
}

/// A random join- and bottom-preserving map: monotone images on the
/// join-irreducibles, extended by joins, retried until the axioms hold.
pub fn space_function<R: Rng>(rng: &mut R, lattice: &Arc<FiniteLattice>) -> SpaceFunction {
    let irreducibles = lattice.join_irreducibles().to_vec();
    loop {
        let mut assigned: Vec<Elem> = Vec::with_capacity(irreducibles.len());
        for (k, &j) in irreducibles.iter().enumerate() {
            // irreducibles come in a linear extension, so lower ones are assigned already
            let floor = lattice.join_iter(
                irreducibles[..k]
                    .iter()
                    .zip(&assigned)
                    .filter(|(&i, _)| lattice.leq(i, j))
                    .map(|(_, &e)| e),
            );
            let options: Vec<Elem> = lattice.elements().filter(|&e| lattice.leq(floor, e)).collect();
            assigned.push(*options.choose(rng).expect("top is always an option"));
        }
        let images = lattice
            .elements()
            .map(|x| {
                lattice.join_iter(
                    irreducibles
                        .iter()
                        .zip(&assigned)
                        .filter(|(&j, _)| lattice.leq(j, x))
                        .map(|(_, &e)| e),
                )
            })
            .collect();
        if let Ok(f) = SpaceFunction::new(lattice.clone(), images) {
            return f;
        }
    }
}

/// Agents named `"1"`, `"2"`, … with random space functions.
pub fn scs<R: Rng>(rng: &mut R, lattice: &Arc<FiniteLattice>, agents: usize) -> Scs {
    let fs = (1..=agents).map(|i| (i.to_string(), space_function(rng, lattice)));
    Scs::new(lattice.clone(), fs).expect("functions share the lattice")
}

/// A model with states `s0, s1, …`, props `p, q` and agents `1..=agents`.
pub fn kripke_model<R: Rng>(rng: &mut R, name: &str, states: usize, agents: usize) -> KripkeModel {
    let props = vec!["p".to_string(), "q".to_string()];
    let truth = (0..states).map(|_| rng.gen_range(0..4u64)).collect();
    let relations = (1..=agents)
        .map(|a| {
            let succ = (0..states)
                .map(|_| (0..states).filter(|_| rng.gen_bool(0.45)).fold(0u64, |m, t| m | 1 << t))
                .collect();
            (a.to_string(), succ)
        })
        .collect();
    KripkeModel::from_masks(
        name,
        (0..states).map(|s| format!("s{s}")).collect(),
        props,
        truth,
        relations,
    )
    .expect("well-formed masks")
}

/// One or two models with `total_points` pointed states in all.
pub fn kripke_universe<R: Rng>(rng: &mut R, total_points: usize, agents: usize) -> KripkeUniverse {
    let first = if total_points >= 2 && rng.gen_bool(0.3) {
        rng.gen_range(1..total_points)
    } else {
        total_points
    };
    let mut models = vec![kripke_model(rng, "M1", first, agents)];
    if first < total_points {
        models.push(kripke_model(rng, "M2", total_points - first, agents));
    }
    KripkeUniverse::new(models).expect("small universe")
}

pub fn aumann_structure<R: Rng>(rng: &mut R, states: usize, agents: usize) -> AumannStructure {
    let partitions = (1..=agents)
        .map(|a| {
            let mut blocks: BTreeMap<usize, u64> = BTreeMap::new();
            for s in 0..states {
                *blocks.entry(rng.gen_range(0..states)).or_default() |= 1 << s;
            }
            (a.to_string(), blocks.into_values().collect())
        })
        .collect();
    AumannStructure::new((0..states).map(|s| format!("w{s}")).collect(), partitions)
        .expect("random blocks partition the states")
}

/// Random formula over `props` and agents `1..=agents`.
pub fn formula<R: Rng>(rng: &mut R, props: &[&str], agents: usize, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..10) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::atom(*props.choose(rng).expect("props")),
        };
    }
    let sub = |rng: &mut R| formula(rng, props, agents, depth - 1);
    match rng.gen_range(0..6) {
        0 => sub(rng).not(),
        1 => sub(rng).and(sub(rng)),
        2 => sub(rng).or(sub(rng)),
        3 => sub(rng).implies(sub(rng)),
        4 => Formula::boxed(rng.gen_range(1..=agents).to_string(), sub(rng)),
        _ => {
            let group: Vec<String> = (1..=agents).filter(|_| rng.gen_bool(0.5)).map(|a| a.to_string()).collect();
            Formula::dk(group, sub(rng))
        }
    }
}

/// Up to `max_len` points with coordinates in `-radius..=radius`.
pub fn point_set<T: Coord, R: Rng>(rng: &mut R, dim: usize, max_len: usize, radius: i32) -> PointSet<T> {
    let len = rng.gen_range(0..=max_len);
    let mut s = PointSet::empty(dim).expect("positive dimension");
    for _ in 0..len {
        let p: Vec<T> = (0..dim)
            .map(|_| T::from(rng.gen_range(-radius..=radius)).expect("small coordinate"))
            .collect();
        s.insert(&p).expect("matching dimension");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattices_are_distributive_and_small() {
        let mut r = rng(1);
        for _ in 0..50 {
            let l = distributive_lattice(&mut r, 4).unwrap();
            assert!(l.len() <= 16);
            assert!(l.is_distributive());
        }
    }

    #[test]
    fn seeds_reproduce() {
        let a = distributive_lattice(&mut rng(9), 4).unwrap();
        let b = distributive_lattice(&mut rng(9), 4).unwrap();
        assert_eq!(a, b);
        let l = Arc::new(a);
        assert_eq!(space_function(&mut rng(3), &l), space_function(&mut rng(3), &l));
        let f1 = formula(&mut rng(5), &["p", "q"], 2, 4);
        assert_eq!(f1, formula(&mut rng(5), &["p", "q"], 2, 4));
    }

    #[test]
    fn models_have_requested_shape() {
        let mut r = rng(2);
        let u = kripke_universe(&mut r, 4, 3);
        assert_eq!(u.len(), 4);
        let a = aumann_structure(&mut r, 4, 2);
        assert_eq!(a.states().len(), 4);
        let s: PointSet<i64> = point_set(&mut r, 2, 6, 3);
        assert!(s.len() <= 6 && s.iter().all(|p| p.iter().all(|c| c.abs() <= 3)));
    }
}
