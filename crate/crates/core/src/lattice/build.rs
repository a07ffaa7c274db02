use std::collections::HashMap;

use super::{FiniteLattice, Ops};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Fixed-width bit rows indexed by topological rank.
struct BitRows {
    words: usize,
    data: Vec<u64>,
}

impl BitRows {
    fn new(rows: usize, bits: usize) -> Self {
        let words = bits.div_ceil(64).max(1);
        BitRows {
            words,
            data: vec![0; rows * words],
        }
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    fn set(&mut self, r: usize, bit: usize) {
        self.data[r * self.words + bit / 64] |= 1 << (bit % 64);
    }

    fn or_into(&mut self, dst: usize, src: usize) {
        let w = self.words;
        for i in 0..w {
            let v = self.data[src * w + i];
            self.data[dst * w + i] |= v;
        }
    }
}

impl FiniteLattice {
    /// Builds a lattice from its labels and a cover relation given as
    /// `(lower, upper)` label pairs. The order is the reflexive-transitive
    /// closure of the covers; every pair must have a unique least upper bound
    /// and a unique greatest lower bound.
    pub fn from_covers<L, A, B>(
        labels: impl IntoIterator<Item = L>,
        covers: impl IntoIterator<Item = (A, B)>,
    ) -> Result<Self>
    where
        L: Into<String>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        Self::from_covers_capped(labels, covers, Limits::default().max_elements)
    }

    pub fn from_covers_capped<L, A, B>(
        labels: impl IntoIterator<Item = L>,
        covers: impl IntoIterator<Item = (A, B)>,
        max_elements: usize,
    ) -> Result<Self>
    where
        L: Into<String>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyLattice);
        }
        if labels.len() > max_elements {
            return Err(Error::too_large(
                "lattice",
                labels.len() as u128,
                max_elements as u128,
            ));
        }
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownLabel(s.to_string()))
        };
        let mut edges = Vec::new();
        for (lo, hi) in covers {
            let (lo, hi) = (lookup(lo.as_ref())?, lookup(hi.as_ref())?);
            if lo != hi {
                edges.push((lo, hi));
            }
        }
        let (join, meet) = tables(&labels, &edges)?;
        Self::assemble(labels, Vec::new(), Ops::Table { join, meet })
    }
}

fn tables(labels: &[String], edges: &[(usize, usize)]) -> Result<(Vec<u32>, Vec<u32>)> {
    let n = labels.len();
    let mut succ = vec![Vec::new(); n];
    let mut indegree = vec![0usize; n];
    for &(lo, hi) in edges {
        succ[lo].push(hi);
        indegree[hi] += 1;
    }

    // Kahn's algorithm; ties broken by id for a deterministic extension.
    let mut order = Vec::with_capacity(n);
    let mut ready: std::collections::BTreeSet<usize> =
        (0..n).filter(|&v| indegree[v] == 0).collect();
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &w in &succ[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.insert(w);
            }
        }
    }
    if order.len() < n {
        let stuck = (0..n).find(|&v| indegree[v] > 0).unwrap();
        let next = succ[stuck].iter().copied().find(|&w| indegree[w] > 0).unwrap_or(stuck);
        return Err(Error::NotAntisymmetric(labels[stuck].clone(), labels[next].clone()));
    }
    let mut rank = vec![0usize; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }

    // up[v]: ranks of elements above v; down[v]: ranks of elements below v.
    let mut up = BitRows::new(n, n);
    for &v in order.iter().rev() {
        up.set(v, rank[v]);
        for &w in &succ[v] {
            up.or_into(v, w);
        }
    }
    let mut pred = vec![Vec::new(); n];
    for &(lo, hi) in edges {
        pred[hi].push(lo);
    }
    let mut down = BitRows::new(n, n);
    for &v in &order {
        down.set(v, rank[v]);
        for &w in &pred[v] {
            down.or_into(v, w);
        }
    }

    let mut join = vec![0u32; n * n];
    let mut meet = vec![0u32; n * n];
    let mut scratch = vec![0u64; up.words];
    for a in 0..n {
        join[a * n + a] = a as u32;
        meet[a * n + a] = a as u32;
        for b in a + 1..n {
            let lub = extremal_bound(&up, a, b, &order, &mut scratch, true).map_err(|problem| {
                Error::NotALattice {
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                    problem,
                }
            })?;
            let glb = extremal_bound(&down, a, b, &order, &mut scratch, false).map_err(|problem| {
                Error::NotALattice {
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                    problem,
                }
            })?;
            join[a * n + b] = lub as u32;
            join[b * n + a] = lub as u32;
            meet[a * n + b] = glb as u32;
            meet[b * n + a] = glb as u32;
        }
    }
    Ok((join, meet))
}

/// The unique least element of `rows[a] ∩ rows[b]` (or greatest, for lower
/// bounds). The candidate is the first (last) common bound along the linear
/// extension; it is the answer iff every common bound lies on its side.
fn extremal_bound(
    rows: &BitRows,
    a: usize,
    b: usize,
    order: &[usize],
    common: &mut [u64],
    least: bool,
) -> std::result::Result<usize, &'static str> {
    let (ra, rb) = (rows.row(a), rows.row(b));
    for (c, (x, y)) in common.iter_mut().zip(ra.iter().zip(rb)) {
        *c = x & y;
    }
    let pick = if least {
        common
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    } else {
        common
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    };
    let Some(r) = pick else {
        return Err(if least {
            "no upper bound"
        } else {
            "no lower bound"
        });
    };
    let candidate = order[r];
    let cand_row = rows.row(candidate);
    if common.iter().zip(cand_row).any(|(c, k)| c & !k != 0) {
        return Err(if least {
            "several minimal upper bounds"
        } else {
            "several maximal lower bounds"
        });
    }
    Ok(candidate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Elem;

    #[test]
    fn singleton() {
        let l = FiniteLattice::from_covers(["⊥"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(l.bottom(), l.top());
    }

    #[test]
    fn empty_is_rejected() {
        let r = FiniteLattice::from_covers(Vec::<String>::new(), Vec::<(&str, &str)>::new());
        assert!(matches!(r, Err(Error::EmptyLattice)));
    }

    #[test]
    fn bowtie_is_not_a_lattice() {
        // a, b both below c and d, with c and d incomparable
        let r = FiniteLattice::from_covers(
            ["0", "a", "b", "c", "d", "1"],
            [
                ("0", "a"),
                ("0", "b"),
                ("a", "c"),
                ("a", "d"),
                ("b", "c"),
                ("b", "d"),
                ("c", "1"),
                ("d", "1"),
            ],
        );
        match r {
            Err(Error::NotALattice { a, b, problem }) => {
                assert_eq!((a.as_str(), b.as_str()), ("a", "b"));
                assert_eq!(problem, "several minimal upper bounds");
            }
            other => panic!("expected NotALattice, got {other:?}"),
        }
    }

    #[test]
    fn missing_top_is_not_a_lattice() {
        let r = FiniteLattice::from_covers(["0", "a", "b"], [("0", "a"), ("0", "b")]);
        assert!(matches!(r, Err(Error::NotALattice { problem: "no upper bound", .. })));
    }

    #[test]
    fn cycle_is_rejected() {
        let r = FiniteLattice::from_covers(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "b")]);
        assert!(matches!(r, Err(Error::NotAntisymmetric(..))));
    }

    #[test]
    fn unknown_and_duplicate_labels() {
        let r = FiniteLattice::from_covers(["a", "b"], [("a", "z")]);
        assert!(matches!(r, Err(Error::UnknownLabel(s)) if s == "z"));
        let r = FiniteLattice::from_covers(["a", "a"], Vec::<(&str, &str)>::new());
        assert!(matches!(r, Err(Error::DuplicateLabel(_))));
    }

    #[test]
    fn redundant_transitive_edges_are_harmless() {
        let l = FiniteLattice::from_covers(["0", "1", "2"], [("0", "1"), ("1", "2"), ("0", "2")])
            .unwrap();
        assert_eq!(l.join(Elem(0), Elem(2)), Elem(2));
        assert_eq!(l.covers(), vec![(Elem(0), Elem(1)), (Elem(1), Elem(2))]);
    }

    #[test]
    fn cap_is_enforced() {
        let labels: Vec<String> = (0..10).map(|i| i.to_string()).collect();
        let covers: Vec<(String, String)> =
            (0..9).map(|i| (i.to_string(), (i + 1).to_string())).collect();
        assert!(matches!(
            FiniteLattice::from_covers_capped(labels, covers, 5),
            Err(Error::TooLarge { .. })
        ));
    }
}
