//! Distributed spaces `Δ_I`: the greatest space function below every agent
//! of a group.
//!
//! Three routes compute the same function and are kept mutually checkable:
//!
//! * [`Method::Tuple`]: for two functions,
//!   `Δ(c) = ⊓{ f(a) ⊔ g(b) | a ⊔ b ⊒ c }`, folded over the group. `O(n³)` per
//!   fold step; valid on distributive lattices.
//! * [`Method::Subtract`]: `Δ(c) = ⊓{ f(a) ⊔ g(c ⊖ a) | a ⊑ c }`, the same
//!   fold with a linear inner loop once subtraction is tabulated.
//! * [`Method::Oracle`]: point-wise join of every enumerated space function
//!   below the group. Exponential, but correct on any finite lattice.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};
use crate::space::{
    enumerate_space_functions, find_violation, function_meet_oracle, project, same_lattice,
    Scs, SpaceFunction, Violation,
};

/// A set of agent names.
pub type Group = BTreeSet<String>;

pub fn group_of<S: AsRef<str>>(names: &[S]) -> Group {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Tuple,
    Subtract,
    Oracle,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Tuple, Method::Subtract, Method::Oracle];
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tuple" => Ok(Method::Tuple),
            "subtract" | "subtraction" => Ok(Method::Subtract),
            "oracle" => Ok(Method::Oracle),
            other => Err(Error::Parse(format!("unknown method `{other}`"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Tuple => "tuple",
            Method::Subtract => "subtract",
            Method::Oracle => "oracle",
        })
    }
}

fn pair_lattice(f: &SpaceFunction, g: &SpaceFunction) -> Result<Arc<FiniteLattice>> {
    if !same_lattice(f.lattice(), g.lattice()) {
        return Err(Error::LatticeMismatch);
    }
    Ok(f.lattice().clone())
}

/// `c ↦ ⊓{ f(a) ⊔ g(b) | a ⊔ b ⊒ c }` for raw image vectors.
fn dplus_images(lattice: &FiniteLattice, f: &[Elem], g: &[Elem]) -> Vec<Elem> {
    lattice
        .elements()
        .map(|c| {
            let mut acc = lattice.top();
            for a in lattice.elements() {
                let fa = f[a.index()];
                for b in lattice.elements() {
                    if lattice.leq(c, lattice.join(a, b)) {
                        acc = lattice.meet(acc, lattice.join(fa, g[b.index()]));
                    }
                }
            }
            acc
        })
        .collect()
}

/// `Δ_{f,g}` by the pairwise tuple formula. Requires a distributive lattice.
pub fn delta_pair(f: &SpaceFunction, g: &SpaceFunction) -> Result<SpaceFunction> {
    let lattice = pair_lattice(f, g)?;
    lattice.require_distributive()?;
    let images = dplus_images(&lattice, f.images(), g.images());
    Ok(SpaceFunction::trusted(lattice, images))
}

/// Tuple formula evaluated without the distributivity requirement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawDelta {
    pub images: Vec<Elem>,
    /// First failed space-function axiom of `images`, if any.
    pub violation: Option<Violation>,
}

impl RawDelta {
    pub fn is_space_function(&self) -> bool {
        self.violation.is_none()
    }
}

/// The tuple formula on any lattice, with a validity verdict instead of a
/// distributivity check.
pub fn dplus_unchecked(f: &SpaceFunction, g: &SpaceFunction) -> Result<RawDelta> {
    let lattice = pair_lattice(f, g)?;
    let images = dplus_images(&lattice, f.images(), g.images());
    let violation = find_violation(&lattice, &images);
    Ok(RawDelta { images, violation })
}

/// Tabulated `d ⊖ c` for table lattices; bitwise for powersets.
enum Subtraction<'a> {
    Direct(&'a FiniteLattice),
    Table(Vec<u32>),
}

impl<'a> Subtraction<'a> {
    fn new(lattice: &'a FiniteLattice) -> Self {
        if lattice.is_powerset() {
            return Subtraction::Direct(lattice);
        }
        let n = lattice.len();
        let mut table = vec![0u32; n * n];
        for d in lattice.elements() {
            for c in lattice.elements() {
                table[d.index() * n + c.index()] = lattice.subtract_unchecked(d, c).0;
            }
        }
        Subtraction::Table(table)
    }

    #[inline]
    fn get(&self, n: usize, d: Elem, c: Elem) -> Elem {
        match self {
            Subtraction::Direct(l) => l.subtract_unchecked(d, c),
            Subtraction::Table(t) => Elem(t[d.index() * n + c.index()]),
        }
    }
}

fn subtract_images(lattice: &FiniteLattice, sub: &Subtraction<'_>, f: &[Elem], g: &[Elem]) -> Vec<Elem> {
    let n = lattice.len();
    lattice
        .elements()
        .map(|c| {
            lattice.meet_iter(
                lattice
                    .elements()
                    .filter(|&a| lattice.leq(a, c))
                    .map(|a| lattice.join(f[a.index()], g[sub.get(n, c, a).index()])),
            )
        })
        .collect()
}

/// `Δ_{f,g}` through subtraction: `Δ(c) = ⊓{ f(a) ⊔ g(c ⊖ a) | a ⊑ c }`.
/// Requires a distributive lattice.
pub fn delta_pair_subtract(f: &SpaceFunction, g: &SpaceFunction) -> Result<SpaceFunction> {
    let lattice = pair_lattice(f, g)?;
    lattice.require_distributive()?;
    let sub = Subtraction::new(&lattice);
    let images = subtract_images(&lattice, &sub, f.images(), g.images());
    Ok(SpaceFunction::trusted(lattice, images))
}

/// Meet in the lattice of space functions by exhaustive enumeration; correct
/// on non-distributive lattices too.
pub fn delta_general(lattice: &Arc<FiniteLattice>, fs: &[&SpaceFunction], cap: u64) -> Result<SpaceFunction> {
    function_meet_oracle(lattice, fs, cap)
}

/// `Δ_I` of a named group of `scs`.
///
/// The empty group gives `λ⊤`, a singleton gives the agent's own function;
/// larger groups are folded pairwise in lexicographic name order.
pub fn delta_group<S: AsRef<str>>(scs: &Scs, group: &[S], method: Method, cap: u64) -> Result<SpaceFunction> {
    let members = scs.group(group)?;
    let lattice = scs.lattice();
    match members.as_slice() {
        [] => return Ok(SpaceFunction::top_space(lattice.clone())),
        [(_, f)] => return Ok((*f).clone()),
        _ => {}
    }
    let fs: Vec<&SpaceFunction> = members.iter().map(|(_, f)| *f).collect();
    match method {
        Method::Oracle => delta_general(lattice, &fs, cap),
        Method::Tuple => {
            lattice.require_distributive()?;
            let mut acc = fs[0].images().to_vec();
            for f in &fs[1..] {
                acc = dplus_images(lattice, &acc, f.images());
            }
            Ok(SpaceFunction::trusted(lattice.clone(), acc))
        }
        Method::Subtract => {
            lattice.require_distributive()?;
            let sub = Subtraction::new(lattice);
            let mut acc = fs[0].images().to_vec();
            for f in &fs[1..] {
                acc = subtract_images(lattice, &sub, &acc, f.images());
            }
            Ok(SpaceFunction::trusted(lattice.clone(), acc))
        }
    }
}

/// `⊓{ ⊔_k s_k(a_k) | ⊔_k a_k ⊒ c }` over all `|I|`-tuples, evaluated at a
/// single element by direct enumeration.
pub fn delta_tuples_direct<S: AsRef<str>>(scs: &Scs, group: &[S], c: Elem, cap: u64) -> Result<Elem> {
    let members = scs.group(group)?;
    let lattice = scs.lattice();
    let c = lattice.check(c)?;
    let fs: Vec<&SpaceFunction> = members.iter().map(|(_, f)| *f).collect();
    tuples_direct(lattice, &fs, c, cap)
}

pub(crate) fn tuples_direct(lattice: &FiniteLattice, fs: &[&SpaceFunction], c: Elem, cap: u64) -> Result<Elem> {
    let n = lattice.len();
    let k = fs.len();
    let estimate = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if estimate > cap as u128 {
        return Err(Error::too_large("tuple enumeration", estimate, cap as u128));
    }
    let mut tuple = vec![0usize; k];
    let mut acc = lattice.top();
    loop {
        let joined = lattice.join_iter(tuple.iter().map(|&a| Elem::from(a)));
        if lattice.leq(c, joined) {
            let value = lattice.join_iter(fs.iter().zip(&tuple).map(|(f, &a)| f.apply(Elem::from(a))));
            acc = lattice.meet(acc, value);
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(acc);
            }
            tuple[pos] += 1;
            if tuple[pos] < n {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}

/// `Π_I(c) = ⊔{ e | Δ_I(e) ⊑ c }`.
pub fn group_projection<S: AsRef<str>>(scs: &Scs, group: &[S], c: Elem, method: Method, cap: u64) -> Result<Elem> {
    let c = scs.lattice().check(c)?;
    let delta = delta_group(scs, group, method, cap)?;
    Ok(project(scs.lattice(), delta.images(), c))
}

/// `π_I(c) = ⊔_{i∈I} π_i(c)`.
pub fn join_projection<S: AsRef<str>>(scs: &Scs, group: &[S], c: Elem) -> Result<Elem> {
    let lattice = scs.lattice();
    let c = lattice.check(c)?;
    let members = scs.group(group)?;
    Ok(lattice.join_iter(members.iter().map(|(_, f)| project(lattice, f.images(), c))))
}

/// Raw self-maps indexed by group, as checked by [`verify_gdc`].
pub type GdcCandidate = BTreeMap<Group, Vec<Elem>>;

/// Distributed spaces of every requested group, computed once each.
pub struct DeltaFamily<'a> {
    scs: &'a Scs,
    method: Method,
    cap: u64,
    cache: BTreeMap<Group, SpaceFunction>,
}

impl<'a> DeltaFamily<'a> {
    pub fn new(scs: &'a Scs, method: Method, cap: u64) -> Self {
        DeltaFamily {
            scs,
            method,
            cap,
            cache: BTreeMap::new(),
        }
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn get(&mut self, group: &Group) -> Result<&SpaceFunction> {
        if !self.cache.contains_key(group) {
            let names: Vec<&str> = group.iter().map(String::as_str).collect();
            let delta = delta_group(self.scs, &names, self.method, self.cap)?;
            self.cache.insert(group.clone(), delta);
        }
        Ok(&self.cache[group])
    }

    /// Fills the cache for every subset of the agents.
    pub fn complete(&mut self) -> Result<()> {
        for group in all_subsets(self.scs)? {
            self.get(&group)?;
        }
        Ok(())
    }

    pub fn entries(&self) -> &BTreeMap<Group, SpaceFunction> {
        &self.cache
    }

    pub fn candidate(&self) -> GdcCandidate {
        self.cache
            .iter()
            .map(|(g, f)| (g.clone(), f.images().to_vec()))
            .collect()
    }
}

const MAX_GDC_AGENTS: usize = 5;

fn all_subsets(scs: &Scs) -> Result<Vec<Group>> {
    let names: Vec<&str> = scs.agent_names().collect();
    if names.len() > MAX_GDC_AGENTS {
        return Err(Error::too_large("agent set", names.len() as u128, MAX_GDC_AGENTS as u128));
    }
    Ok((0u32..1 << names.len())
        .map(|mask| {
            names
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, n)| n.to_string())
                .collect()
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GdcViolation {
    Missing { group: Group },
    /// D.1
    NotSpaceFunction { group: Group, detail: String },
    /// D.2
    SingletonMismatch { agent: String, at: Elem },
    /// D.3: `smaller ⊆ larger` but `d_smaller(at) ⋣ d_larger(at)`.
    NotAntitone { smaller: Group, larger: Group, at: Elem },
    /// Some space function below the group is not below `d_group`.
    NotMaximal { group: Group, at: Elem },
}

impl GdcViolation {
    pub fn axiom(&self) -> &'static str {
        match self {
            GdcViolation::Missing { .. } => "missing",
            GdcViolation::NotSpaceFunction { .. } => "D.1",
            GdcViolation::SingletonMismatch { .. } => "D.2",
            GdcViolation::NotAntitone { .. } => "D.3",
            GdcViolation::NotMaximal { .. } => "maximality",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct GdcReport {
    pub violations: Vec<GdcViolation>,
    pub maximality_checked: bool,
}

impl GdcReport {
    /// D.1–D.3 hold for every group.
    pub fn passes_axioms(&self) -> bool {
        !self
            .violations
            .iter()
            .any(|v| !matches!(v, GdcViolation::NotMaximal { .. }))
    }

    pub fn is_maximal(&self) -> bool {
        self.maximality_checked && self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&GdcViolation> {
        self.violations.first()
    }
}

/// Checks a family of self-maps against D.1–D.3 and, when `maximality_cap`
/// is given, compares each member with the enumerated meet of its group.
pub fn verify_gdc(scs: &Scs, family: &GdcCandidate, maximality_cap: Option<u64>) -> Result<GdcReport> {
    let lattice = scs.lattice();
    let groups = all_subsets(scs)?;
    let mut report = GdcReport::default();
    for g in &groups {
        match family.get(g) {
            None => report.violations.push(GdcViolation::Missing { group: g.clone() }),
            Some(images) => {
                crate::space::validate_space_function(lattice, images).or_else(|e| match e {
                    Error::NotASpaceFunction(detail) => {
                        report.violations.push(GdcViolation::NotSpaceFunction {
                            group: g.clone(),
                            detail,
                        });
                        Ok(())
                    }
                    other => Err(other),
                })?;
            }
        }
    }
    if !report.violations.is_empty() {
        return Ok(report);
    }
    for (name, f) in scs.agents() {
        let images = &family[&group_of(&[name])];
        if let Some(at) = lattice.elements().find(|&c| images[c.index()] != f.apply(c)) {
            report.violations.push(GdcViolation::SingletonMismatch {
                agent: name.clone(),
                at,
            });
        }
    }
    for small in &groups {
        for large in &groups {
            if small == large || !small.is_subset(large) {
                continue;
            }
            let (ds, dl) = (&family[small], &family[large]);
            if let Some(at) = lattice.elements().find(|&c| !lattice.geq(ds[c.index()], dl[c.index()])) {
                report.violations.push(GdcViolation::NotAntitone {
                    smaller: small.clone(),
                    larger: large.clone(),
                    at,
                });
            }
        }
    }
    if let Some(cap) = maximality_cap {
        report.maximality_checked = true;
        for g in &groups {
            let names: Vec<&str> = g.iter().map(String::as_str).collect();
            let best = delta_group(scs, &names, Method::Oracle, cap)?;
            let mine = &family[g];
            if let Some(at) = lattice.elements().find(|&c| !lattice.leq(best.apply(c), mine[c.index()])) {
                report.violations.push(GdcViolation::NotMaximal { group: g.clone(), at });
            }
        }
    }
    Ok(report)
}

/// Outcome of running the tuple formula over every pair of space functions
/// of one lattice.
#[derive(Clone, Debug)]
pub struct DplusSearch {
    pub functions: usize,
    pub pairs: usize,
    /// Pairs for which the tuple formula is not a space function.
    pub invalid_pairs: usize,
    /// Pairs for which the tuple formula differs from the true meet.
    pub disagreeing_pairs: usize,
    /// First pair whose tuple formula breaks an axiom.
    pub counterexample: Option<(SpaceFunction, SpaceFunction, RawDelta)>,
}

/// Exhaustive search for pairs on `lattice` where the tuple formula fails to
/// be a space function.
pub fn dplus_search(lattice: &Arc<FiniteLattice>, cap: u64) -> Result<DplusSearch> {
    let all = enumerate_space_functions(lattice, None, cap)?;
    let pairs = (all.len() as u128).pow(2);
    if pairs > cap as u128 {
        return Err(Error::too_large("function pairs", pairs, cap as u128));
    }
    let mut report = DplusSearch {
        functions: all.len(),
        pairs: 0,
        invalid_pairs: 0,
        disagreeing_pairs: 0,
        counterexample: None,
    };
    for f in &all {
        for g in &all {
            report.pairs += 1;
            let raw = dplus_unchecked(f, g)?;
            // true meet: join of the already-enumerated functions below both
            let below = all
                .iter()
                .filter(|h| h.leq(f).unwrap_or(false) && h.leq(g).unwrap_or(false));
            let truth = lattice
                .elements()
                .map(|c| lattice.join_iter(below.clone().map(|h| h.apply(c))))
                .collect::<Vec<_>>();
            if truth != raw.images {
                report.disagreeing_pairs += 1;
            }
            if !raw.is_space_function() {
                report.invalid_pairs += 1;
                if report.counterexample.is_none() {
                    report.counterexample = Some((f.clone(), g.clone(), raw));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{m2, m3, n5};
    use crate::space::ScsFile;

    fn m2_scs() -> Scs {
        let l = Arc::new(m2());
        let s1 = SpaceFunction::from_labels(l.clone(), &["p∨¬p", "¬p", "p", "p∧¬p"]).unwrap();
        let s2 = SpaceFunction::from_labels(l.clone(), &["p∨¬p", "p∧¬p", "¬p", "p∧¬p"]).unwrap();
        Scs::new(l, [("1".to_string(), s1), ("2".to_string(), s2)]).unwrap()
    }

    const FIG_DELTA: [&str; 4] = ["p∨¬p", "¬p", "p∨¬p", "¬p"];

    #[test]
    fn pair_routes_reproduce_the_worked_example() {
        let scs = m2_scs();
        let (s1, s2) = (scs.agent("1").unwrap(), scs.agent("2").unwrap());
        assert_eq!(delta_pair(s1, s2).unwrap().image_labels(), FIG_DELTA);
        assert_eq!(delta_pair_subtract(s1, s2).unwrap().image_labels(), FIG_DELTA);
        for m in Method::ALL {
            assert_eq!(delta_group(&scs, &["1", "2"], m, 1_000_000).unwrap().image_labels(), FIG_DELTA);
        }
        let l = scs.lattice();
        assert_eq!(
            l.label(delta_tuples_direct(&scs, &["1", "2"], l.top(), 1000).unwrap()),
            "¬p"
        );
    }

    #[test]
    fn identities() {
        let scs = m2_scs();
        let s1 = scs.agent("1").unwrap();
        let top = SpaceFunction::top_space(scs.lattice().clone());
        assert_eq!(&delta_pair(s1, &top).unwrap(), s1);
        assert_eq!(&delta_pair_subtract(s1, s1).unwrap(), s1);
        let empty: [&str; 0] = [];
        assert_eq!(delta_group(&scs, &empty, Method::Tuple, 10).unwrap(), top);
        assert_eq!(&delta_group(&scs, &["2"], Method::Tuple, 10).unwrap(), scs.agent("2").unwrap());
        for c in scs.lattice().elements() {
            assert_eq!(delta_tuples_direct(&scs, &["1"], c, 10).unwrap(), s1.apply(c));
        }
    }

    #[test]
    fn unknown_agent() {
        let scs = m2_scs();
        assert!(matches!(
            delta_group(&scs, &["1", "9"], Method::Tuple, 10),
            Err(Error::UnknownAgent(a)) if a == "9"
        ));
        assert!(matches!(join_projection(&scs, &["7"], Elem(0)), Err(Error::UnknownAgent(_))));
    }

    #[test]
    fn non_distributive_lattices_are_refused_by_formula_routes() {
        let l = Arc::new(n5());
        let id = SpaceFunction::identity(l.clone());
        assert!(matches!(delta_pair(&id, &id), Err(Error::NotDistributive(..))));
        assert!(matches!(delta_pair_subtract(&id, &id), Err(Error::NotDistributive(..))));
        let raw = dplus_unchecked(&id, &id).unwrap();
        assert_eq!(raw.images, id.images());
        assert!(raw.is_space_function());
    }

    #[test]
    fn group_and_join_projection_counterexample() {
        let scs = m2_scs();
        let l = scs.lattice();
        let np = l.elem("¬p").unwrap();
        let d = l.meet(scs.agent("1").unwrap().apply(np), scs.agent("2").unwrap().apply(np));
        assert_eq!(d, l.bottom());
        let group = group_projection(&scs, &["1", "2"], d, Method::Tuple, 1000).unwrap();
        assert!(l.geq(group, np));
        let joined = join_projection(&scs, &["1", "2"], d).unwrap();
        assert_eq!(joined, l.bottom());
        assert!(!l.geq(joined, np));
    }

    #[test]
    fn gdc_of_computed_family_is_maximal() {
        let scs = m2_scs();
        let mut fam = DeltaFamily::new(&scs, Method::Tuple, 1_000_000);
        fam.complete().unwrap();
        assert_eq!(fam.entries().len(), 4);
        let report = verify_gdc(&scs, &fam.candidate(), Some(1_000_000)).unwrap();
        assert!(report.passes_axioms());
        assert!(report.is_maximal(), "{:?}", report.violations);
    }

    #[test]
    fn bottom_family_is_a_gdc_but_not_maximal() {
        let scs = m2_scs();
        let l = scs.lattice();
        let mut fam = DeltaFamily::new(&scs, Method::Tuple, 1_000_000);
        fam.complete().unwrap();
        let mut cand = fam.candidate();
        cand.insert(group_of(&["1", "2"]), vec![l.bottom(); l.len()]);
        let report = verify_gdc(&scs, &cand, Some(1_000_000)).unwrap();
        assert!(report.passes_axioms());
        assert!(!report.is_maximal());
        assert_eq!(report.first().unwrap().axiom(), "maximality");
    }

    #[test]
    fn family_above_an_agent_breaks_antitonicity() {
        let scs = m2_scs();
        let l = scs.lattice();
        let mut fam = DeltaFamily::new(&scs, Method::Tuple, 1_000_000);
        fam.complete().unwrap();
        let mut cand = fam.candidate();
        let top = SpaceFunction::top_space(l.clone());
        cand.insert(group_of(&["1", "2"]), top.images().to_vec());
        let report = verify_gdc(&scs, &cand, None).unwrap();
        assert!(!report.passes_axioms());
        assert_eq!(report.first().unwrap().axiom(), "D.3");

        let mut cand = fam.candidate();
        cand.insert(group_of(&["1"]), scs.agent("2").unwrap().images().to_vec());
        let report = verify_gdc(&scs, &cand, None).unwrap();
        assert!(report.violations.iter().any(|v| v.axiom() == "D.2"));

        let mut cand = fam.candidate();
        let p = l.elem("p").unwrap();
        cand.insert(group_of(&["1", "2"]), vec![p; l.len()]);
        let report = verify_gdc(&scs, &cand, None).unwrap();
        assert_eq!(report.first().unwrap().axiom(), "D.1");
    }

    #[test]
    fn method_parsing() {
        assert_eq!("tuple".parse::<Method>().unwrap(), Method::Tuple);
        assert_eq!("subtract".parse::<Method>().unwrap(), Method::Subtract);
        assert_eq!("oracle".parse::<Method>().unwrap(), Method::Oracle);
        assert!("magic".parse::<Method>().is_err());
    }

    #[test]
    fn scs_from_file_agrees() {
        let scs = m2_scs();
        let json = serde_json::to_string(&scs.to_file()).unwrap();
        let back = ScsFile::from_json(&json, None, 4096).unwrap();
        assert_eq!(
            delta_group(&back, &["1", "2"], Method::Subtract, 10).unwrap().image_labels(),
            FIG_DELTA
        );
    }

    #[test]
    fn m3_search_terminates() {
        let l = Arc::new(m3());
        let report = dplus_search(&l, 10_000_000).unwrap();
        assert_eq!(report.pairs, report.functions * report.functions);
        assert!(report.functions > 0);
    }
}
