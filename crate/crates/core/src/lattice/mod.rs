//! Finite complete lattices.
//!
//! A [`FiniteLattice`] is validated once at construction and is immutable
//! afterwards. Elements are dense ids ([`Elem`]); labels are only used at the
//! I/O boundary. The order is the information order: `bottom` carries no
//! information (`true`), `top` is the inconsistent element (`false`).
//!
//! Two representations share the same query surface:
//!
//! * explicit join/meet tables, built from a cover relation;
//! * powersets, where the id of an element *is* the bitmask of its subset and
//!   the operations are bitwise. A reversed powerset orders subsets by `⊇`
//!   (join is intersection), which is the shape of every epistemic lattice.

mod build;
mod fixtures;
mod io;

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub use fixtures::{chain, herbrand_xy_ab, knowledge6, m2, m3, n5, Fixture};
pub use io::LatticeFile;

/// Dense element id of a [`FiniteLattice`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for Elem {
    fn from(i: usize) -> Self {
        Elem(i as u32)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Ops {
    Table { join: Vec<u32>, meet: Vec<u32> },
    Powerset { full: u32, reversed: bool },
}

#[derive(Debug)]
pub struct FiniteLattice {
    labels: Vec<String>,
    index: HashMap<String, Elem>,
    ground: Vec<String>,
    ops: Ops,
    bottom: Elem,
    top: Elem,
    irreducibles: OnceLock<Vec<Elem>>,
    distributivity: OnceLock<Option<[Elem; 3]>>,
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.ops == other.ops
            && self.bottom == other.bottom
            && self.top == other.top
    }
}

impl Eq for FiniteLattice {}

impl FiniteLattice {
    fn assemble(labels: Vec<String>, ground: Vec<String>, ops: Ops) -> Result<Self> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), Elem::from(i)).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut lattice = FiniteLattice {
            labels,
            index,
            ground,
            ops,
            bottom: Elem(0),
            top: Elem(0),
            irreducibles: OnceLock::new(),
            distributivity: OnceLock::new(),
        };
        let n = lattice.len();
        lattice.bottom = (0..n).map(Elem::from).fold(Elem(0), |acc, e| lattice.meet(acc, e));
        lattice.top = (0..n).map(Elem::from).fold(Elem(0), |acc, e| lattice.join(acc, e));
        Ok(lattice)
    }

    /// The powerset of `ground` ordered by inclusion (`reversed = false`) or
    /// by reverse inclusion (`reversed = true`).
    ///
    /// Element ids are subset bitmasks: bit `i` stands for `ground[i]`.
    pub fn powerset<S: AsRef<str>>(ground: &[S], reversed: bool, max_ground: usize) -> Result<Self> {
        let k = ground.len();
        if k > max_ground || k > 24 {
            return Err(Error::too_large("powerset ground set", k as u128, max_ground.min(24) as u128));
        }
        let ground: Vec<String> = ground.iter().map(|s| s.as_ref().to_string()).collect();
        let mut seen = std::collections::HashSet::new();
        for g in &ground {
            if !seen.insert(g.as_str()) {
                return Err(Error::DuplicateLabel(g.clone()));
            }
        }
        let labels = (0..1u32 << k).map(|m| subset_label(&ground, m)).collect();
        let full = ((1u64 << k) - 1) as u32;
        Self::assemble(labels, ground, Ops::Powerset { full, reversed })
    }

    /// Same lattice with the order reversed.
    pub fn dual(&self) -> FiniteLattice {
        let ops = match &self.ops {
            Ops::Table { join, meet } => Ops::Table {
                join: meet.clone(),
                meet: join.clone(),
            },
            Ops::Powerset { full, reversed } => Ops::Powerset {
                full: *full,
                reversed: !reversed,
            },
        };
        FiniteLattice {
            labels: self.labels.clone(),
            index: self.index.clone(),
            ground: self.ground.clone(),
            ops,
            bottom: self.top,
            top: self.bottom,
            irreducibles: OnceLock::new(),
            distributivity: OnceLock::new(),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false: a lattice has at least one element.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator {
        (0..self.len() as u32).map(Elem)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e.index()]
    }

    /// Ground set of a powerset lattice; empty for table lattices.
    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn is_powerset(&self) -> bool {
        matches!(self.ops, Ops::Powerset { .. })
    }

    /// Looks an element up by label. Powerset labels are also accepted with
    /// their members in any order.
    pub fn elem(&self, label: &str) -> Result<Elem> {
        if let Some(&e) = self.index.get(label) {
            return Ok(e);
        }
        if self.is_powerset() {
            if let Some(mask) = parse_subset(&self.ground, label) {
                return Ok(Elem(mask));
            }
        }
        Err(Error::UnknownLabel(label.to_string()))
    }

    pub fn check(&self, e: Elem) -> Result<Elem> {
        if e.index() < self.len() {
            Ok(e)
        } else {
            Err(Error::InvalidElement(format!("{e} (lattice has {} elements)", self.len())))
        }
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        match &self.ops {
            Ops::Table { join, .. } => Elem(join[a.index() * self.labels.len() + b.index()]),
            Ops::Powerset { reversed: false, .. } => Elem(a.0 | b.0),
            Ops::Powerset { reversed: true, .. } => Elem(a.0 & b.0),
        }
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        match &self.ops {
            Ops::Table { meet, .. } => Elem(meet[a.index() * self.labels.len() + b.index()]),
            Ops::Powerset { reversed: false, .. } => Elem(a.0 & b.0),
            Ops::Powerset { reversed: true, .. } => Elem(a.0 | b.0),
        }
    }

    /// `a ⊑ b`.
    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        match &self.ops {
            Ops::Table { .. } => self.join(a, b) == b,
            Ops::Powerset { reversed: false, .. } => a.0 & !b.0 == 0,
            Ops::Powerset { reversed: true, .. } => b.0 & !a.0 == 0,
        }
    }

    #[inline]
    pub fn geq(&self, a: Elem, b: Elem) -> bool {
        self.leq(b, a)
    }

    /// Least upper bound of `set`; the bottom element for the empty set.
    pub fn join_of(&self, set: &[Elem]) -> Result<Elem> {
        set.iter().try_fold(self.bottom, |acc, &e| Ok(self.join(acc, self.check(e)?)))
    }

    /// Greatest lower bound of `set`; the top element for the empty set.
    pub fn meet_of(&self, set: &[Elem]) -> Result<Elem> {
        set.iter().try_fold(self.top, |acc, &e| Ok(self.meet(acc, self.check(e)?)))
    }

    pub(crate) fn join_iter(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.bottom, |acc, e| self.join(acc, e))
    }

    pub(crate) fn meet_iter(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.top, |acc, e| self.meet(acc, e))
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// A triple `(a, b, c)` with `a ⊔ (b ⊓ c) ≠ (a ⊔ b) ⊓ (a ⊔ c)`, if any.
    ///
    /// Exhaustive triple scan, computed once per lattice.
    pub fn distributivity_witness(&self) -> Option<[Elem; 3]> {
        *self.distributivity.get_or_init(|| {
            if self.is_powerset() {
                return None;
            }
            for a in self.elements() {
                for b in self.elements() {
                    for c in self.elements() {
                        let lhs = self.join(a, self.meet(b, c));
                        let rhs = self.meet(self.join(a, b), self.join(a, c));
                        if lhs != rhs {
                            return Some([a, b, c]);
                        }
                    }
                }
            }
            None
        })
    }

    pub(crate) fn require_distributive(&self) -> Result<()> {
        match self.distributivity_witness() {
            None => Ok(()),
            Some([a, b, c]) => Err(Error::NotDistributive(
                self.label(a).into(),
                self.label(b).into(),
                self.label(c).into(),
            )),
        }
    }

    /// `d ⊖ c`: the meet of every `e` with `c ⊔ e ⊒ d`.
    pub fn subtract(&self, d: Elem, c: Elem) -> Result<Elem> {
        let (d, c) = (self.check(d)?, self.check(c)?);
        Ok(self.subtract_unchecked(d, c))
    }

    pub(crate) fn subtract_unchecked(&self, d: Elem, c: Elem) -> Elem {
        match self.ops {
            Ops::Powerset { reversed: false, .. } => Elem(d.0 & !c.0),
            Ops::Powerset { full, reversed: true } => Elem((d.0 | !c.0) & full),
            Ops::Table { .. } => {
                self.meet_iter(self.elements().filter(|&e| self.geq(self.join(c, e), d)))
            }
        }
    }

    /// Join-irreducible elements (non-bottom elements that are not the join
    /// of the elements strictly below them), sorted along a linear extension.
    pub fn join_irreducibles(&self) -> &[Elem] {
        self.irreducibles.get_or_init(|| {
            let mut found: Vec<(usize, Elem)> = match self.ops {
                Ops::Powerset { full, reversed } => (0..32)
                    .filter(|bit| full >> bit & 1 == 1)
                    .map(|bit| {
                        let e = if reversed { full & !(1 << bit) } else { 1 << bit };
                        (0, Elem(e))
                    })
                    .collect(),
                Ops::Table { .. } => self
                    .elements()
                    .filter(|&j| j != self.bottom)
                    .filter(|&j| {
                        self.join_iter(self.elements().filter(|&x| x != j && self.leq(x, j))) != j
                    })
                    .map(|j| (self.elements().filter(|&x| self.leq(x, j)).count(), j))
                    .collect(),
            };
            found.sort();
            found.into_iter().map(|(_, e)| e).collect()
        })
    }

    /// The cover relation (Hasse diagram) as `(lower, upper)` pairs.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        match self.ops {
            Ops::Powerset { full, reversed } => {
                for m in 0..=full {
                    for bit in 0..32 {
                        let b = 1u32 << bit;
                        if full & b != 0 && m & b == 0 {
                            let (lo, hi) = if reversed { (m | b, m) } else { (m, m | b) };
                            out.push((Elem(lo), Elem(hi)));
                        }
                    }
                }
                out.sort();
            }
            Ops::Table { .. } => {
                for a in self.elements() {
                    let above: Vec<Elem> =
                        self.elements().filter(|&b| b != a && self.leq(a, b)).collect();
                    for &b in &above {
                        if !above.iter().any(|&x| x != b && self.leq(x, b)) {
                            out.push((a, b));
                        }
                    }
                }
            }
        }
        out
    }
}

pub(crate) fn subset_label(ground: &[String], mask: u32) -> String {
    let members: Vec<&str> = ground
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, g)| g.as_str())
        .collect();
    format!("{{{}}}", members.join(","))
}

fn parse_subset(ground: &[String], label: &str) -> Option<u32> {
    let inner = label.trim().strip_prefix('{')?.strip_suffix('}')?.trim();
    if inner.is_empty() {
        return Some(0);
    }
    let mut mask = 0u32;
    for part in inner.split(',') {
        let i = ground.iter().position(|g| g == part.trim())?;
        mask |= 1 << i;
    }
    Some(mask)
}
