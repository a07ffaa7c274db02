use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::sets::{self, SetSemantics};
use super::Formula;
use crate::distributed::{delta_group, Method};
use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};
use crate::limits::Limits;
use crate::space::{Scs, SpaceFunction};

/// A Kripke structure: states, a valuation and one accessibility relation per
/// agent. Relations are stored as successor masks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    name: String,
    states: Vec<String>,
    props: Vec<String>,
    /// `truth[s]` has bit `k` set when `props[k]` holds at `s`.
    truth: Vec<u64>,
    relations: BTreeMap<String, Vec<u64>>,
}

impl KripkeModel {
    pub fn new(
        name: impl Into<String>,
        states: Vec<String>,
        props: Vec<String>,
        valuation: &BTreeMap<String, BTreeMap<String, u8>>,
        relations: &BTreeMap<String, Vec<[String; 2]>>,
    ) -> Result<Self> {
        sets::check_points(states.len())?;
        sets::check_points(props.len())?;
        let index = |s: &str| {
            states
                .iter()
                .position(|t| t == s)
                .ok_or_else(|| Error::UnknownState(s.to_string()))
        };
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(Error::DuplicateLabel(s.clone()));
            }
        }
        let mut truth = vec![0u64; states.len()];
        for (s, values) in valuation {
            let si = index(s)?;
            for (p, &v) in values {
                let k = props
                    .iter()
                    .position(|q| q == p)
                    .ok_or_else(|| Error::UnknownProp(p.clone()))?;
                match v {
                    0 => {}
                    1 => truth[si] |= 1 << k,
                    other => return Err(Error::Parse(format!("truth value {other} for `{p}` at `{s}`"))),
                }
            }
        }
        let mut rel = BTreeMap::new();
        for (agent, pairs) in relations {
            let mut succ = vec![0u64; states.len()];
            for [s, t] in pairs {
                succ[index(s)?] |= 1 << index(t)?;
            }
            rel.insert(agent.clone(), succ);
        }
        Ok(KripkeModel {
            name: name.into(),
            states,
            props,
            truth,
            relations: rel,
        })
    }

    /// Builds a model from successor masks; `truth[s]` is a bitmask over `props`.
    pub fn from_masks(
        name: impl Into<String>,
        states: Vec<String>,
        props: Vec<String>,
        truth: Vec<u64>,
        relations: BTreeMap<String, Vec<u64>>,
    ) -> Result<Self> {
        sets::check_points(states.len())?;
        let n = states.len();
        if truth.len() != n || relations.values().any(|r| r.len() != n) {
            return Err(Error::DimMismatch(n, truth.len()));
        }
        let full = sets::full_mask(n);
        if relations.values().flatten().any(|&m| m & !full != 0) {
            return Err(Error::UnknownState(format!("successor outside 0..{n}")));
        }
        Ok(KripkeModel {
            name: name.into(),
            states,
            props,
            truth,
            relations,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn props(&self) -> &[String] {
        &self.props
    }

    pub fn agents(&self) -> impl Iterator<Item = &str> {
        self.relations.keys().map(String::as_str)
    }

    pub fn successors(&self, agent: &str, state: usize) -> u64 {
        self.relations.get(agent).map_or(0, |r| r[state])
    }

    pub fn to_file(&self) -> KripkeFile {
        let val = self
            .states
            .iter()
            .zip(&self.truth)
            .map(|(s, &t)| {
                let row = self
                    .props
                    .iter()
                    .enumerate()
                    .map(|(k, p)| (p.clone(), (t >> k & 1) as u8))
                    .collect();
                (s.clone(), row)
            })
            .collect();
        let rel = self
            .relations
            .iter()
            .map(|(a, succ)| {
                let pairs = succ
                    .iter()
                    .enumerate()
                    .flat_map(|(s, &m)| {
                        (0..self.states.len())
                            .filter(move |t| m >> t & 1 == 1)
                            .map(move |t| [self.states[s].clone(), self.states[t].clone()])
                    })
                    .collect();
                (a.clone(), pairs)
            })
            .collect();
        KripkeFile {
            name: Some(self.name.clone()),
            states: self.states.clone(),
            props: self.props.clone(),
            val,
            rel,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KripkeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub states: Vec<String>,
    #[serde(default)]
    pub props: Vec<String>,
    #[serde(default)]
    pub val: BTreeMap<String, BTreeMap<String, u8>>,
    #[serde(default)]
    pub rel: BTreeMap<String, Vec<[String; 2]>>,
}

/// One model or a list of them.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KripkeInput {
    One(KripkeFile),
    Many(Vec<KripkeFile>),
}

impl KripkeFile {
    pub fn build(&self, default_name: &str) -> Result<KripkeModel> {
        KripkeModel::new(
            self.name.clone().unwrap_or_else(|| default_name.to_string()),
            self.states.clone(),
            self.props.clone(),
            &self.val,
            &self.rel,
        )
    }
}

impl KripkeInput {
    pub fn build(&self) -> Result<KripkeUniverse> {
        let files: Vec<&KripkeFile> = match self {
            KripkeInput::One(f) => vec![f],
            KripkeInput::Many(fs) => fs.iter().collect(),
        };
        let models = files
            .iter()
            .enumerate()
            .map(|(i, f)| f.build(&format!("M{}", i + 1)))
            .collect::<Result<Vec<_>>>()?;
        KripkeUniverse::new(models)
    }
}

/// A set of Kripke models and the disjoint union of their pointed states.
#[derive(Clone, Debug)]
pub struct KripkeUniverse {
    models: Vec<KripkeModel>,
    /// `(model, state)` for every pointed state, model-major.
    points: Vec<(usize, usize)>,
    labels: Vec<String>,
    /// Offset of each model's first pointed state.
    offsets: Vec<usize>,
    props: Vec<String>,
    agents: BTreeSet<String>,
}

impl KripkeUniverse {
    pub fn new(models: Vec<KripkeModel>) -> Result<Self> {
        let total: usize = models.iter().map(|m| m.states.len()).sum();
        sets::check_points(total)?;
        let several = models.len() > 1;
        let mut points = Vec::with_capacity(total);
        let mut labels = Vec::with_capacity(total);
        let mut offsets = Vec::with_capacity(models.len());
        for (mi, m) in models.iter().enumerate() {
            offsets.push(points.len());
            for (si, s) in m.states.iter().enumerate() {
                points.push((mi, si));
                labels.push(if several { format!("{}:{}", m.name, s) } else { s.clone() });
            }
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut props: Vec<String> = Vec::new();
        for p in models.iter().flat_map(|m| &m.props) {
            if !props.contains(p) {
                props.push(p.clone());
            }
        }
        let agents = models.iter().flat_map(|m| m.agents().map(String::from)).collect();
        Ok(KripkeUniverse {
            models,
            points,
            labels,
            offsets,
            props,
            agents,
        })
    }

    pub fn single(model: KripkeModel) -> Result<Self> {
        Self::new(vec![model])
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let input: KripkeInput = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        input.build()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<KripkeInput>(text)?.build()
    }

    pub fn models(&self) -> &[KripkeModel] {
        &self.models
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn agents(&self) -> &BTreeSet<String> {
        &self.agents
    }

    pub fn full(&self) -> u64 {
        sets::full_mask(self.points.len())
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<u64> {
        sets::mask_of(&self.labels, labels)
    }

    pub fn names(&self, x: u64) -> Vec<String> {
        sets::names(&self.labels, x)
    }

    fn check_agent(&self, agent: &str) -> Result<()> {
        if self.agents.contains(agent) {
            Ok(())
        } else {
            Err(Error::UnknownAgent(agent.to_string()))
        }
    }

    /// Successors of pointed state `p` under the intersection of the
    /// relations of `group`, as a universe mask. The empty group relates
    /// every pair of pointed states.
    fn group_successors(&self, group: &BTreeSet<String>, p: usize) -> u64 {
        if group.is_empty() {
            return self.full();
        }
        let (mi, si) = self.points[p];
        let m = &self.models[mi];
        let local = group
            .iter()
            .fold(sets::full_mask(m.states.len()), |acc, a| acc & m.successors(a, si));
        local << self.offsets[mi]
    }

    /// `K_i(X)`: pointed states all of whose `i`-successors lie in `X`.
    pub fn box_op(&self, agent: &str, x: u64) -> Result<u64> {
        self.check_agent(agent)?;
        let group = BTreeSet::from([agent.to_string()]);
        Ok(self.necessity(&group, x))
    }

    /// `D_I(X)` through the intersected relations of `I`.
    pub fn dk(&self, group: &BTreeSet<String>, x: u64) -> Result<u64> {
        for a in group {
            self.check_agent(a)?;
        }
        Ok(self.necessity(group, x))
    }

    fn necessity(&self, group: &BTreeSet<String>, x: u64) -> u64 {
        (0..self.points.len())
            .filter(|&p| self.group_successors(group, p) & !x == 0)
            .fold(0, |m, p| m | 1 << p)
    }

    /// Set semantics of `f` over the pointed states.
    pub fn eval(&self, f: &Formula) -> Result<u64> {
        sets::eval(self, f)
    }

    /// The induced spatial constraint system: subsets of pointed states under
    /// reverse inclusion with `K_i` as agent functions.
    pub fn to_scs(&self, limits: &Limits) -> Result<KripkeScs<'_>> {
        if self.len() > limits.max_universe {
            return Err(Error::too_large(
                "pointed-state universe",
                self.len() as u128,
                limits.max_universe as u128,
            ));
        }
        let lattice = Arc::new(FiniteLattice::powerset(&self.labels, true, limits.max_universe)?);
        let mut agents = Vec::new();
        for a in &self.agents {
            let f = SpaceFunction::from_fn(lattice.clone(), |c| {
                Elem(self.box_op(a, c.0 as u64).expect("known agent") as u32)
            })?;
            agents.push((a.clone(), f));
        }
        Ok(KripkeScs {
            universe: self,
            scs: Scs::new(lattice, agents)?,
            cap: limits.max_enum,
        })
    }
}

impl SetSemantics for KripkeUniverse {
    fn full(&self) -> u64 {
        KripkeUniverse::full(self)
    }

    fn atom(&self, p: &str) -> Result<u64> {
        if !self.props.iter().any(|q| q == p) {
            return Err(Error::UnknownProp(p.to_string()));
        }
        Ok(self
            .points
            .iter()
            .enumerate()
            .filter(|(_, &(mi, si))| {
                let m = &self.models[mi];
                m.props
                    .iter()
                    .position(|q| q == p)
                    .is_some_and(|k| m.truth[si] >> k & 1 == 1)
            })
            .fold(0, |acc, (i, _)| acc | 1 << i))
    }

    fn boxed(&self, agent: &str, x: u64) -> Result<u64> {
        self.box_op(agent, x)
    }

    fn dk(&self, group: &BTreeSet<String>, x: u64) -> Result<u64> {
        KripkeUniverse::dk(self, group, x)
    }
}

/// A Kripke universe together with its induced scs.
pub struct KripkeScs<'a> {
    universe: &'a KripkeUniverse,
    scs: Scs,
    cap: u64,
}

impl KripkeScs<'_> {
    pub fn scs(&self) -> &Scs {
        &self.scs
    }

    pub fn element(&self, x: u64) -> Elem {
        Elem(x as u32)
    }

    /// Interpretation inside the scs: conjunction is join, `□_i` applies the
    /// agent function and `D_I` applies `Δ_I` computed by `method`.
    pub fn evaluate(&self, f: &Formula, method: Method) -> Result<Elem> {
        let lattice = self.scs.lattice();
        Ok(match f {
            Formula::True => lattice.bottom(),
            Formula::False => lattice.top(),
            Formula::Atom(p) => Elem(self.universe.atom(p)? as u32),
            Formula::Not(a) => {
                let x = self.evaluate(a, method)?;
                Elem(self.universe.full() as u32 & !x.0)
            }
            Formula::And(a, b) => lattice.join(self.evaluate(a, method)?, self.evaluate(b, method)?),
            Formula::Or(a, b) => lattice.meet(self.evaluate(a, method)?, self.evaluate(b, method)?),
            Formula::Implies(a, b) => {
                let x = self.evaluate(a, method)?;
                let y = self.evaluate(b, method)?;
                lattice.meet(Elem(self.universe.full() as u32 & !x.0), y)
            }
            Formula::Box(i, a) => self.scs.agent(i)?.apply(self.evaluate(a, method)?),
            Formula::Dk(group, a) => {
                let names: Vec<&str> = group.iter().map(String::as_str).collect();
                let delta = delta_group(&self.scs, &names, method, self.cap)?;
                delta.apply(self.evaluate(a, method)?)
            }
        })
    }
}
