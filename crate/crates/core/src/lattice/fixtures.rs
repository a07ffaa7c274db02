//! Small named lattices used throughout the tests and the CLI.

use std::collections::BTreeMap;

use super::FiniteLattice;

/// A named fixture lattice.
pub struct Fixture {
    pub name: String,
    pub lattice: FiniteLattice,
}

impl Fixture {
    /// M2, M3, N5, the Herbrand fragment and chains of length 2..=5.
    pub fn all() -> Vec<Fixture> {
        let mut out = vec![
            Fixture::new("M2", m2()),
            Fixture::new("M3", m3()),
            Fixture::new("N5", n5()),
            Fixture::new("Herbrand-xy-ab", herbrand_xy_ab()),
        ];
        for k in 2..=5 {
            out.push(Fixture::new(format!("chain({k})"), chain(k)));
        }
        out
    }

    fn new(name: impl Into<String>, lattice: FiniteLattice) -> Self {
        Fixture {
            name: name.into(),
            lattice,
        }
    }
}

/// The four-element boolean algebra over `p`, ordered by logical consequence.
pub fn m2() -> FiniteLattice {
    FiniteLattice::from_covers(
        ["p∨¬p", "p", "¬p", "p∧¬p"],
        [("p∨¬p", "p"), ("p∨¬p", "¬p"), ("p", "p∧¬p"), ("¬p", "p∧¬p")],
    )
    .expect("M2 is a lattice")
}

/// Bottom `a`, three incomparable atoms `b, c, d`, top `e`.
pub fn m3() -> FiniteLattice {
    FiniteLattice::from_covers(
        ["a", "b", "c", "d", "e"],
        [("a", "b"), ("a", "c"), ("a", "d"), ("b", "e"), ("c", "e"), ("d", "e")],
    )
    .expect("M3 is a lattice")
}

/// The pentagon: `0 < a < c < 1` and `0 < b < 1`.
pub fn n5() -> FiniteLattice {
    FiniteLattice::from_covers(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
    )
    .expect("N5 is a lattice")
}

/// The chain `0 ⊑ 1 ⊑ … ⊑ k`, which has `k + 1` elements.
pub fn chain(k: usize) -> FiniteLattice {
    let labels: Vec<String> = (0..=k).map(|i| i.to_string()).collect();
    let covers: Vec<(String, String)> = (0..k).map(|i| (i.to_string(), (i + 1).to_string())).collect();
    FiniteLattice::from_covers(labels, covers).expect("chains are lattices")
}

/// Six elements ordered by logical implication:
/// `true ⊑ p∨q ⊑ p, q ⊑ p∧q ⊑ false`.
pub fn knowledge6() -> FiniteLattice {
    FiniteLattice::from_covers(
        ["true", "p∨q", "p", "q", "p∧q", "false"],
        [
            ("true", "p∨q"),
            ("p∨q", "p"),
            ("p∨q", "q"),
            ("p", "p∧q"),
            ("q", "p∧q"),
            ("p∧q", "false"),
        ],
    )
    .expect("knowledge6 is a lattice")
}

const TERMS: [&str; 4] = ["x", "y", "a", "b"];
const X: usize = 0;
const Y: usize = 1;
const A: usize = 2;
const B: usize = 3;

/// Equality constraints over variables `x, y` and distinct constants `a, b`.
///
/// Every set of atomic equations is closed under deduction (an equivalence
/// relation on the four terms, no function symbols so substitution adds
/// nothing); classes identifying `a` with `b` collapse to `false`. Classes are
/// ordered by entailment.
pub fn herbrand_xy_ab() -> FiniteLattice {
    let atoms: Vec<(usize, usize)> = (0..4)
        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
        .collect();
    // canonical block representative per term, or None for `false`
    let mut classes: BTreeMap<Option<[usize; 4]>, ()> = BTreeMap::new();
    for subset in 0u32..1 << atoms.len() {
        let mut rep = [0, 1, 2, 3];
        for (k, &(i, j)) in atoms.iter().enumerate() {
            if subset >> k & 1 == 1 {
                union(&mut rep, i, j);
            }
        }
        let canon: [usize; 4] = std::array::from_fn(|t| find(&rep, t));
        let key = if canon[A] == canon[B] { None } else { Some(canon) };
        classes.insert(key, ());
    }
    let classes: Vec<Option<[usize; 4]>> = classes.into_keys().collect();
    let entails = |lo: &Option<[usize; 4]>, hi: &Option<[usize; 4]>| match (lo, hi) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(l), Some(h)) => (0..4).all(|i| (0..4).all(|j| l[i] != l[j] || h[i] == h[j])),
    };
    let labels: Vec<String> = classes.iter().map(herbrand_label).collect();
    let mut covers = Vec::new();
    for (i, lo) in classes.iter().enumerate() {
        for (j, hi) in classes.iter().enumerate() {
            if i == j || !entails(lo, hi) {
                continue;
            }
            let between = classes.iter().enumerate().any(|(k, mid)| {
                k != i && k != j && entails(lo, mid) && entails(mid, hi)
            });
            if !between {
                covers.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    FiniteLattice::from_covers(labels, covers).expect("Herbrand fragment is a lattice")
}

fn find(rep: &[usize; 4], mut t: usize) -> usize {
    while rep[t] != t {
        t = rep[t];
    }
    t
}

fn union(rep: &mut [usize; 4], i: usize, j: usize) {
    let (ri, rj) = (find(rep, i), find(rep, j));
    let (lo, hi) = (ri.min(rj), ri.max(rj));
    rep[hi] = lo;
}

fn herbrand_label(class: &Option<[usize; 4]>) -> String {
    let Some(c) = class else {
        return "false".to_string();
    };
    let mut parts = Vec::new();
    for v in [X, Y] {
        for k in [A, B] {
            if c[v] == c[k] {
                parts.push(format!("{}={}", TERMS[v], TERMS[k]));
            }
        }
    }
    if parts.is_empty() && c[X] == c[Y] {
        parts.push("x=y".to_string());
    }
    if parts.is_empty() {
        "true".to_string()
    } else {
        format!("{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Elem;

    fn names(l: &FiniteLattice, es: &[Elem]) -> Vec<String> {
        es.iter().map(|&e| l.label(e).to_string()).collect()
    }

    #[test]
    fn m2_shape() {
        let l = m2();
        let p = l.elem("p").unwrap();
        let np = l.elem("¬p").unwrap();
        assert_eq!(l.label(l.bottom()), "p∨¬p");
        assert_eq!(l.label(l.top()), "p∧¬p");
        assert_eq!(l.join_of(&[p, np]).unwrap(), l.top());
        assert_eq!(l.meet_of(&[p, np]).unwrap(), l.bottom());
        assert!(l.is_distributive());
        let iso = FiniteLattice::powerset(&["u", "v"], false, 16).unwrap();
        assert_eq!(iso.len(), l.len());
        assert!(iso.is_distributive());
    }

    #[test]
    fn m3_and_n5_are_not_distributive() {
        let l = m3();
        assert_eq!(l.len(), 5);
        let atoms: Vec<Elem> = ["b", "c", "d"].iter().map(|s| l.elem(s).unwrap()).collect();
        for &x in &atoms {
            for &y in &atoms {
                if x != y {
                    assert!(!l.leq(x, y));
                }
            }
        }
        let w = l.distributivity_witness().expect("M3 is not distributive");
        let lbl = names(&l, &w);
        assert!(lbl.iter().all(|s| ["a", "b", "c", "d", "e"].contains(&s.as_str())));
        let [a, b, c] = w;
        assert_ne!(l.join(a, l.meet(b, c)), l.meet(l.join(a, b), l.join(a, c)));

        let l = n5();
        assert_eq!(l.len(), 5);
        assert!(!l.is_distributive());
    }

    #[test]
    fn chains_are_distributive() {
        let l = chain(3);
        assert_eq!(l.len(), 4);
        assert!(l.leq(l.elem("0").unwrap(), l.elem("1").unwrap()));
        assert!(l.leq(l.elem("1").unwrap(), l.elem("2").unwrap()));
        for k in 1..6 {
            assert!(chain(k).is_distributive());
        }
    }

    #[test]
    fn herbrand_fragment() {
        let l = herbrand_xy_ab();
        // ten consistent equivalence relations plus `false`
        assert_eq!(l.len(), 11);
        assert_eq!(l.label(l.bottom()), "true");
        assert_eq!(l.label(l.top()), "false");
        let c = l.elem("{x=a}").unwrap();
        let d = l.elem("{x=a,y=a}").unwrap();
        let e = l.elem("{x=b}").unwrap();
        assert_eq!(l.meet(d, e), l.bottom());
        assert_eq!(l.join(c, l.meet(d, e)), c);
        assert_eq!(l.join(c, e), l.top());
        assert_eq!(l.meet(l.join(c, d), l.join(c, e)), d);
        assert!(!l.is_distributive());
        assert!(l.leq(l.elem("{x=y}").unwrap(), d));
    }

    #[test]
    fn herbrand_labels_are_stable() {
        let l = herbrand_xy_ab();
        let mut got: Vec<&str> = l.labels().iter().map(String::as_str).collect();
        got.sort();
        let mut want = vec![
            "true", "false", "{x=y}", "{x=a}", "{x=b}", "{y=a}", "{y=b}", "{x=a,y=a}",
            "{x=b,y=b}", "{x=a,y=b}", "{x=b,y=a}",
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn fixture_set() {
        let all = Fixture::all();
        let names: Vec<&str> = all.iter().map(|f| f.name.as_str()).collect();
        assert!(names.contains(&"M2") && names.contains(&"N5") && names.contains(&"chain(3)"));
    }
}
