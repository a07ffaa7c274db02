//! Invariant checks over fixtures and seeded random instances. Each check
//! returns a [`CheckResult`]; [`run_selfcheck`] runs the whole suite.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::distributed::{
    delta_group, delta_tuples_direct, dplus_search, dplus_unchecked, group_projection, join_projection,
    verify_gdc, DeltaFamily, Method,
};
use crate::epistemic::{Formula, KripkeUniverse};
use crate::error::{Error, Result};
use crate::lattice::{chain, herbrand_xy_ab, knowledge6, m2, m3, n5, Elem, FiniteLattice};
use crate::limits::Limits;
use crate::morphology::{
    dilate, distributed_dilation, erode, minkowski_sum, oplus_law_rhs, theorem_check_small_module,
};
use crate::random;
use crate::space::{
    agent_projection, enumerate_space_functions, find_violation, function_meet_oracle,
    pointwise_meet_raw, Scs, SpaceFunction, Violation,
};
use crate::IntPointSet;

/// Default seed of the command-line self-check.
pub const DEFAULT_SEED: u64 = 20240601;

const CAP: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_result(name: &str, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => CheckResult::new(name, passed, detail),
            Err(e) => CheckResult::new(name, false, format!("error: {e}")),
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}: {}", self.name, self.detail)
    }
}

/// The two agents of the four-element boolean example.
pub fn m2_example() -> Scs {
    let l = Arc::new(m2());
    let s1 = SpaceFunction::from_labels(l.clone(), &["p∨¬p", "¬p", "p", "p∧¬p"]).expect("valid");
    let s2 = SpaceFunction::from_labels(l.clone(), &["p∨¬p", "p∧¬p", "¬p", "p∧¬p"]).expect("valid");
    Scs::new(l, [("1".to_string(), s1), ("2".to_string(), s2)]).expect("same lattice")
}

/// The two agents drawn on M3 in the counterexample figure.
pub fn m3_example() -> Scs {
    let l = Arc::new(m3());
    let s1 = SpaceFunction::from_labels(l.clone(), &["a", "b", "d", "c", "e"]).expect("valid");
    let s2 = SpaceFunction::from_labels(l.clone(), &["a", "e", "c", "d", "e"]).expect("valid");
    Scs::new(l, [("1".to_string(), s1), ("2".to_string(), s2)]).expect("same lattice")
}

fn labels(lattice: &FiniteLattice, images: &[Elem]) -> String {
    let parts: Vec<String> = lattice
        .elements()
        .map(|c| format!("{}→{}", lattice.label(c), lattice.label(images[c.index()])))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

/// Every route to `Δ_{1,2}` on the boolean example gives the expected table.
pub fn worked_example_delta() -> CheckResult {
    CheckResult::from_result("worked example Δ", (|| {
        let scs = m2_example();
        let l = scs.lattice();
        let (s1, s2) = (scs.agent("1")?, scs.agent("2")?);
        let expected = ["p∨¬p", "¬p", "p∨¬p", "¬p"];
        let mut routes: Vec<(&str, Vec<String>)> = vec![
            ("pair", crate::distributed::delta_pair(s1, s2)?.image_labels()),
            ("subtract", crate::distributed::delta_pair_subtract(s1, s2)?.image_labels()),
            ("oracle", function_meet_oracle(l, &[s1, s2], CAP)?.image_labels()),
        ];
        let direct = l
            .elements()
            .map(|c| delta_tuples_direct(&scs, &["1", "2"], c, CAP).map(|e| l.label(e).to_string()))
            .collect::<Result<Vec<_>>>()?;
        routes.push(("tuples", direct));
        let bad: Vec<&str> = routes.iter().filter(|(_, r)| r != &expected).map(|(n, _)| *n).collect();
        let table = labels(l, crate::distributed::delta_pair(s1, s2)?.images());
        Ok((bad.is_empty(), if bad.is_empty() { table } else { format!("routes {bad:?} differ from {expected:?}") }))
    })())
}

/// The point-wise meet of the boolean example breaks join preservation at
/// `(p, ¬p)`.
pub fn worked_example_raw_meet() -> CheckResult {
    CheckResult::from_result("point-wise meet is not a space function", (|| {
        let scs = m2_example();
        let l = scs.lattice();
        let raw = pointwise_meet_raw(&[scs.agent("1")?, scs.agent("2")?])?;
        let v = find_violation(l, &raw);
        let (p, np) = (l.elem("p")?, l.elem("¬p")?);
        let ok = matches!(v, Some(Violation::Join { a, b }) if (a, b) == (p, np) || (a, b) == (np, p));
        let detail = match &v {
            Some(v) => format!("{} with images {}", v.describe(l), labels(l, &raw)),
            None => "no violation".into(),
        };
        Ok((ok, detail))
    })())
}

/// The three `Δ` routes agree with the enumeration oracle on one scs,
/// for every nonempty group.
fn routes_agree(scs: &Scs) -> Result<Option<String>> {
    let names: Vec<&str> = scs.agent_names().collect();
    let l = scs.lattice();
    for mask in 1u32..1 << names.len() {
        let group: Vec<&str> = names.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, n)| *n).collect();
        let oracle = delta_group(scs, &group, Method::Oracle, CAP)?;
        for m in [Method::Tuple, Method::Subtract] {
            if delta_group(scs, &group, m, CAP)? != oracle {
                return Ok(Some(format!("{m} differs for group {group:?}")));
            }
        }
        for c in l.elements() {
            if delta_tuples_direct(scs, &group, c, CAP)? != oracle.apply(c) {
                return Ok(Some(format!("direct tuples differ at {} for {group:?}", l.label(c))));
            }
        }
    }
    Ok(None)
}

/// Formula routes versus the oracle on fixtures and `random_lattices` seeded
/// distributive lattices, with 2–3 random agents each.
pub fn oracle_equivalence(seed: u64, random_lattices: usize) -> CheckResult {
    CheckResult::from_result("Δ routes agree with the oracle", (|| {
        let mut rng = random::rng(seed);
        let mut lattices: Vec<(String, FiniteLattice)> = vec![("M2".into(), m2())];
        for k in 2..=4 {
            let ground: Vec<String> = (0..k).map(|i| format!("g{i}")).collect();
            lattices.push((format!("powerset({k})"), FiniteLattice::powerset(&ground, false, 16)?));
        }
        for k in 2..=5 {
            lattices.push((format!("chain({k})"), chain(k)));
        }
        for i in 0..random_lattices {
            lattices.push((format!("random #{i}"), random::distributive_lattice(&mut rng, 4)?));
        }
        let mut checked = 0;
        let mut sizes = BTreeSet::new();
        for (name, l) in lattices {
            sizes.insert(l.len());
            let l = Arc::new(l);
            let agents = rng.gen_range(2..=3);
            let scs = random::scs(&mut rng, &l, agents);
            if let Some(problem) = routes_agree(&scs)? {
                return Ok((false, format!("{name}: {problem}")));
            }
            checked += 1;
        }
        Ok((true, format!("{checked} lattices with sizes {sizes:?}, seed {seed}")))
    })())
}

/// The computed family satisfies D.1–D.3 and is maximal, on random
/// three-agent systems.
pub fn gdc_suite(seed: u64, instances: usize) -> CheckResult {
    CheckResult::from_result("Δ family is the greatest gdc", (|| {
        let mut rng = random::rng(seed);
        for i in 0..instances {
            let l = Arc::new(random::distributive_lattice(&mut rng, 4)?);
            let scs = random::scs(&mut rng, &l, 3);
            let mut family = DeltaFamily::new(&scs, Method::Tuple, CAP);
            family.complete()?;
            let report = verify_gdc(&scs, &family.candidate(), Some(CAP))?;
            if !report.is_maximal() {
                return Ok((false, format!("instance {i}: {:?}", report.first())));
            }
        }
        Ok((true, format!("{instances} systems × 8 groups, seed {seed}")))
    })())
}

fn fixture_functions(l: &Arc<FiniteLattice>, seed: u64) -> Result<Vec<SpaceFunction>> {
    match enumerate_space_functions(l, None, 200_000) {
        Err(Error::TooLarge { .. }) => {
            let mut rng = random::rng(seed);
            Ok((0..100).map(|_| random::space_function(&mut rng, l)).collect())
        }
        other => other,
    }
}

/// `c ⊒ f(e) ⟺ π_f(c) ⊒ e` for all space functions of each fixture (a
/// seeded sample where there are too many) and all `c, e`.
pub fn agent_galois(seed: u64) -> CheckResult {
    CheckResult::from_result("agent projection is left adjoint", (|| {
        let mut pairs = 0u64;
        let fixtures = [m2(), m3(), n5(), chain(3), knowledge6(), herbrand_xy_ab()];
        for l in fixtures {
            let l = Arc::new(l);
            for f in fixture_functions(&l, seed)? {
                for c in l.elements() {
                    let pc = agent_projection(&f, c)?;
                    for e in l.elements() {
                        pairs += 1;
                        if l.geq(c, f.apply(e)) != l.geq(pc, e) {
                            return Ok((false, format!("{f:?} at c={}, e={}", l.label(c), l.label(e))));
                        }
                    }
                }
            }
        }
        Ok((true, format!("{pairs} (f, c, e) triples")))
    })())
}

fn group_galois_on(scs: &Scs) -> Result<Option<String>> {
    let l = scs.lattice();
    let names: Vec<&str> = scs.agent_names().collect();
    for mask in 0u32..1 << names.len() {
        let group: Vec<&str> = names.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, n)| *n).collect();
        let delta = delta_group(scs, &group, Method::Tuple, CAP)?;
        for c in l.elements() {
            let pc = group_projection(scs, &group, c, Method::Tuple, CAP)?;
            if !l.geq(pc, join_projection(scs, &group, c)?) {
                return Ok(Some(format!("Π below π for {group:?} at {}", l.label(c))));
            }
            for e in l.elements() {
                if l.geq(c, delta.apply(e)) != l.geq(pc, e) {
                    return Ok(Some(format!("{group:?} at c={}, e={}", l.label(c), l.label(e))));
                }
            }
        }
    }
    Ok(None)
}

/// `c ⊒ Δ_I(e) ⟺ Π_I(c) ⊒ e` for all groups and `c, e`: on every
/// two-agent system over M2 and on `samples` random three-agent systems over
/// the powerset of a 3-set.
pub fn group_galois(seed: u64, samples: usize) -> CheckResult {
    CheckResult::from_result("group projection is left adjoint", (|| {
        let l = Arc::new(m2());
        let all = enumerate_space_functions(&l, None, CAP)?;
        let mut systems = 0;
        for f in &all {
            for g in &all {
                let scs = Scs::new(l.clone(), [("1".to_string(), f.clone()), ("2".to_string(), g.clone())])?;
                if let Some(p) = group_galois_on(&scs)? {
                    return Ok((false, format!("M2: {p}")));
                }
                systems += 1;
            }
        }
        let p3 = Arc::new(FiniteLattice::powerset(&["a", "b", "c"], false, 16)?);
        let mut rng = random::rng(seed);
        for _ in 0..samples {
            let scs = random::scs(&mut rng, &p3, 3);
            if let Some(p) = group_galois_on(&scs)? {
                return Ok((false, format!("powerset(3): {p}")));
            }
            systems += 1;
        }
        Ok((true, format!("{systems} systems, all groups, all (c, e)")))
    })())
}

/// `δ_S(X) ⊆ Y ⟺ X ⊆ ε_S(Y)` on random instances in dimensions 1 and 2.
pub fn erosion_galois(seed: u64, per_dim: usize) -> CheckResult {
    CheckResult::from_result("dilation is left adjoint to erosion", (|| {
        let mut rng = random::rng(seed);
        let mut holds = 0;
        for dim in 1..=2 {
            for _ in 0..per_dim {
                let mut s: IntPointSet = random::point_set(&mut rng, dim, 4, 2);
                if s.is_empty() {
                    s = IntPointSet::origin(dim)?;
                }
                let x: IntPointSet = random::point_set(&mut rng, dim, 5, 3);
                let noise: IntPointSet = random::point_set(&mut rng, dim, 6, 5);
                // half the time Y contains δ_S(X), so both sides are exercised
                let y = if rng.gen_bool(0.5) { dilate(&s, &x)?.union(&noise)? } else { noise };
                let left = dilate(&s, &x)?.is_subset(&y)?;
                let right = x.is_subset(&erode(&s, &y)?)?;
                if left != right {
                    return Ok((false, format!("S={s}, X={x}, Y={y}")));
                }
                if !x.is_subset(&erode(&s, &dilate(&s, &x)?)?)? {
                    return Ok((false, format!("unit fails: S={s}, X={x}")));
                }
                holds += left as usize;
            }
        }
        Ok((true, format!("{} instances ({holds} with δ_S(X) ⊆ Y), seed {seed}", 2 * per_dim)))
    })())
}

fn groups_of(agents: &BTreeSet<String>) -> Vec<BTreeSet<String>> {
    let names: Vec<&String> = agents.iter().collect();
    (0u32..1 << names.len())
        .map(|m| names.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, n)| (*n).clone()).collect())
        .collect()
}

/// `Δ_I = D_I` on the induced scs of random Kripke model sets, for all `I`
/// and all sets of pointed states; also checks modal conjunction and the
/// pooled-knowledge instance `□1 p ∧ □2 q ⊒ D{1,2}(p ∧ q)`.
pub fn kripke_distributed(seed: u64, models: usize) -> CheckResult {
    CheckResult::from_result("Δ equals distributed knowledge (Kripke)", (|| {
        let mut rng = random::rng(seed);
        let limits = Limits::default();
        let mut comparisons = 0u64;
        for i in 0..models {
            let points = rng.gen_range(1..=4);
            let agents = rng.gen_range(1..=3);
            let u: KripkeUniverse = random::kripke_universe(&mut rng, points, agents);
            let ks = u.to_scs(&limits)?;
            let scs = ks.scs();
            for group in groups_of(u.agents()) {
                let names: Vec<&str> = group.iter().map(String::as_str).collect();
                for m in [Method::Oracle, Method::Tuple] {
                    let delta = delta_group(scs, &names, m, CAP)?;
                    for x in 0..=u.full() {
                        comparisons += 1;
                        if delta.apply(Elem(x as u32)).0 as u64 != u.dk(&group, x)? {
                            return Ok((false, format!("model {i}, group {names:?}, X={:?}, {m}", u.names(x))));
                        }
                    }
                }
            }
            let l = scs.lattice();
            for _ in 0..5 {
                let f = random::formula(&mut rng, &["p", "q"], agents, 3);
                let g = random::formula(&mut rng, &["p", "q"], agents, 3);
                let both = ks.evaluate(&f.clone().and(g.clone()), Method::Tuple)?;
                let joined = l.join(ks.evaluate(&f, Method::Tuple)?, ks.evaluate(&g, Method::Tuple)?);
                if both != joined || ks.element(u.eval(&f)?) != ks.evaluate(&f, Method::Tuple)? {
                    return Ok((false, format!("model {i}: evaluation of {f} / {g}")));
                }
            }
            if agents >= 2 {
                let pooled: Formula = "[]1 p & []2 q".parse()?;
                let dk: Formula = "D{1,2} (p & q)".parse()?;
                if !l.geq(ks.evaluate(&pooled, Method::Tuple)?, ks.evaluate(&dk, Method::Tuple)?) {
                    return Ok((false, format!("model {i}: pooled knowledge")));
                }
            }
        }
        Ok((true, format!("{models} model sets, {comparisons} comparisons, seed {seed}")))
    })())
}

/// `Δ_I = G_I` on the induced scs of random Aumann structures, for all `I`
/// and all events; agent functions are idempotent and extensive.
pub fn aumann_distributed(seed: u64, structures: usize) -> CheckResult {
    CheckResult::from_result("Δ equals distributed knowledge (Aumann)", (|| {
        let mut rng = random::rng(seed);
        let limits = Limits::default();
        let mut comparisons = 0u64;
        for i in 0..structures {
            let states = rng.gen_range(1..=4);
            let agents = rng.gen_range(1..=3);
            let a = random::aumann_structure(&mut rng, states, agents);
            let scs = a.to_scs(&limits)?;
            if scs.agents().values().any(|f| {
                let c = f.classify();
                !(c.idempotent && c.extensive)
            }) {
                return Ok((false, format!("structure {i}: knowledge not idempotent and extensive")));
            }
            let all: BTreeSet<String> = a.agents().map(String::from).collect();
            for group in groups_of(&all) {
                let names: Vec<&str> = group.iter().map(String::as_str).collect();
                for m in [Method::Oracle, Method::Tuple] {
                    let delta = delta_group(&scs, &names, m, CAP)?;
                    for e in 0..=a.full() {
                        comparisons += 1;
                        if delta.apply(Elem(e as u32)).0 as u64 != a.dk(&names, e)? {
                            return Ok((false, format!("structure {i}, group {names:?}, e={:?}", a.names(e))));
                        }
                    }
                }
            }
        }
        Ok((true, format!("{structures} structures, {comparisons} comparisons, seed {seed}")))
    })())
}

/// `X ⊕ (A ∩ B)` equals the subset formula on random planar instances, and
/// on the one-dimensional instance where the naive meet is not empty.
pub fn oplus_law(seed: u64, instances: usize) -> CheckResult {
    CheckResult::from_result("X ⊕ (A ∩ B) subset law", (|| {
        let (x, a, b) = (IntPointSet::line([0, 1]), IntPointSet::line([1]), IntPointSet::line([2]));
        let lhs = distributed_dilation(&a, &b, &x)?;
        let rhs = oplus_law_rhs(&x, &a, &b, 20)?;
        if !(lhs.is_empty() && rhs.is_empty()) {
            return Ok((false, format!("dim-1 instance gives {lhs} and {rhs}")));
        }
        let mut rng = random::rng(seed);
        for _ in 0..instances {
            let x: IntPointSet = random::point_set(&mut rng, 2, 6, 3);
            let a: IntPointSet = random::point_set(&mut rng, 2, 5, 3);
            let mut b: IntPointSet = random::point_set(&mut rng, 2, 5, 3);
            if rng.gen_bool(0.5) {
                // force some overlap
                b = b.union(&a.intersection(&random::point_set(&mut rng, 2, 9, 3))?)?;
            }
            let lhs = distributed_dilation(&a, &b, &x)?;
            let rhs = oplus_law_rhs(&x, &a, &b, 20)?;
            if lhs != rhs {
                return Ok((false, format!("X={x}, A={a}, B={b}: {lhs} vs {rhs}")));
            }
        }
        Ok((true, format!("{} instances (incl. X={{0,1}}, A={{1}}, B={{2}}), seed {seed}", instances + 1)))
    })())
}

/// Associativity, commutativity, identity, zero and distribution over union.
pub fn monoid_laws(seed: u64, instances: usize) -> CheckResult {
    CheckResult::from_result("Minkowski monoid laws", (|| {
        let mut rng = random::rng(seed);
        for _ in 0..instances {
            let dim = rng.gen_range(1..=2);
            let a: IntPointSet = random::point_set(&mut rng, dim, 5, 4);
            let b: IntPointSet = random::point_set(&mut rng, dim, 5, 4);
            let c: IntPointSet = random::point_set(&mut rng, dim, 5, 4);
            let laws = [
                minkowski_sum(&minkowski_sum(&a, &b)?, &c)? == minkowski_sum(&a, &minkowski_sum(&b, &c)?)?,
                minkowski_sum(&a, &b)? == minkowski_sum(&b, &a)?,
                minkowski_sum(&a, &IntPointSet::origin(dim)?)? == a,
                minkowski_sum(&a, &IntPointSet::empty(dim)?)?.is_empty(),
                minkowski_sum(&a, &b.union(&c)?)? == minkowski_sum(&a, &b)?.union(&minkowski_sum(&a, &c)?)?,
            ];
            if let Some(k) = laws.iter().position(|ok| !ok) {
                return Ok((false, format!("law {k} fails for A={a}, B={b}, C={c}")));
            }
        }
        Ok((true, format!("{instances} triples, seed {seed}")))
    })())
}

/// Enumerated `Δ` of two dilations on `ℤ₂ × ℤ₂` equals `δ_{A∩B}`.
pub fn small_module_bridge() -> CheckResult {
    CheckResult::from_result("Δ of dilations on ℤ₂×ℤ₂", (|| {
        let report = theorem_check_small_module(CAP)?;
        Ok((
            report.passed(),
            format!("{} structuring-element pairs, {} mismatches", report.pairs, report.mismatches.len()),
        ))
    })())
}

/// Exhaustive tuple-formula search on M3 and N5 plus the drawn M3 pair.
/// Passes when the search terminates; the detail says what it found.
pub fn non_distributive_investigation() -> CheckResult {
    CheckResult::from_result("tuple formula on non-distributive lattices", (|| {
        let mut parts = Vec::new();
        for (name, l) in [("M3", m3()), ("N5", n5())] {
            let l = Arc::new(l);
            let r = dplus_search(&l, CAP)?;
            let witness = match &r.counterexample {
                Some((f, g, raw)) => format!(
                    "; first: f={}, g={}, δ⁺={} ({})",
                    labels(&l, f.images()),
                    labels(&l, g.images()),
                    labels(&l, &raw.images),
                    raw.violation.as_ref().map(|v| v.describe(&l)).unwrap_or_default()
                ),
                None => "; none found".into(),
            };
            parts.push(format!(
                "{name}: {} functions, {} pairs, {} not space functions{witness}",
                r.functions, r.pairs, r.invalid_pairs
            ));
        }
        let scs = m3_example();
        let l = scs.lattice();
        let raw = dplus_unchecked(scs.agent("1")?, scs.agent("2")?)?;
        parts.push(format!(
            "drawn M3 pair: δ⁺={} is {}",
            labels(l, &raw.images),
            if raw.is_space_function() { "a space function (figure's claim unreproduced)" } else { "not a space function" }
        ));
        Ok((true, parts.join(" | ")))
    })())
}

/// The full suite at self-check sizes, in a fixed order.
pub fn run_selfcheck(seed: u64) -> Vec<CheckResult> {
    vec![
        worked_example_delta(),
        worked_example_raw_meet(),
        oracle_equivalence(seed, 20),
        gdc_suite(seed, 5),
        agent_galois(seed),
        group_galois(seed, 20),
        erosion_galois(seed, 50),
        kripke_distributed(seed, 20),
        aumann_distributed(seed, 20),
        oplus_law(seed, 20),
        monoid_laws(seed, 50),
        small_module_bridge(),
        non_distributive_investigation(),
    ]
}
