use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::sets;
use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};
use crate::limits::Limits;
use crate::space::{Scs, SpaceFunction};

/// States with one partition per agent. Events are state bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AumannStructure {
    states: Vec<String>,
    /// `cells[agent][s]` is the block containing `s`.
    cells: BTreeMap<String, Vec<u64>>,
}

impl AumannStructure {
    /// Validates that every agent's blocks are nonempty, disjoint and cover
    /// the states.
    pub fn new(states: Vec<String>, partitions: BTreeMap<String, Vec<u64>>) -> Result<Self> {
        sets::check_points(states.len())?;
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(Error::DuplicateLabel(s.clone()));
            }
        }
        let full = sets::full_mask(states.len());
        let mut cells = BTreeMap::new();
        for (agent, blocks) in partitions {
            let bad = |detail: String| Error::InvalidPartition {
                agent: agent.clone(),
                detail,
            };
            let mut covered = 0u64;
            let mut row = vec![0u64; states.len()];
            for &b in &blocks {
                if b == 0 {
                    return Err(bad("empty block".into()));
                }
                if b & !full != 0 {
                    return Err(bad("block mentions an unknown state".into()));
                }
                if b & covered != 0 {
                    let s = sets::names(&states, b & covered);
                    return Err(bad(format!("`{}` lies in two blocks", s[0])));
                }
                covered |= b;
                for (s, cell) in row.iter_mut().enumerate() {
                    if b >> s & 1 == 1 {
                        *cell = b;
                    }
                }
            }
            if covered != full {
                let s = sets::names(&states, full & !covered);
                return Err(bad(format!("`{}` is in no block", s[0])));
            }
            cells.insert(agent, row);
        }
        Ok(AumannStructure { states, cells })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn agents(&self) -> impl Iterator<Item = &str> {
        self.cells.keys().map(String::as_str)
    }

    pub fn full(&self) -> u64 {
        sets::full_mask(self.states.len())
    }

    pub fn event<S: AsRef<str>>(&self, states: &[S]) -> Result<u64> {
        sets::mask_of(&self.states, states)
    }

    pub fn names(&self, e: u64) -> Vec<String> {
        sets::names(&self.states, e)
    }

    /// Blocks of an agent's partition, in order of first state.
    pub fn partition(&self, agent: &str) -> Result<Vec<u64>> {
        let row = self.row(agent)?;
        let mut blocks: Vec<u64> = Vec::new();
        for &b in row {
            if !blocks.contains(&b) {
                blocks.push(b);
            }
        }
        Ok(blocks)
    }

    fn row(&self, agent: &str) -> Result<&[u64]> {
        self.cells
            .get(agent)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::UnknownAgent(agent.to_string()))
    }

    fn check_event(&self, e: u64) -> Result<()> {
        if e & !self.full() != 0 {
            return Err(Error::UnknownState(format!("event {e:#b} exceeds {} states", self.states.len())));
        }
        Ok(())
    }

    /// `K_i(e) = { s | P_i(s) ⊆ e }`.
    pub fn know(&self, agent: &str, e: u64) -> Result<u64> {
        self.check_event(e)?;
        let row = self.row(agent)?;
        Ok(row
            .iter()
            .enumerate()
            .filter(|(_, &b)| b & !e == 0)
            .fold(0, |m, (s, _)| m | 1 << s))
    }

    /// `G_I(e)`: states whose intersected block lies in `e`. The empty group
    /// intersects nothing, so its block is every state.
    pub fn dk<S: AsRef<str>>(&self, group: &[S], e: u64) -> Result<u64> {
        self.check_event(e)?;
        let rows = group
            .iter()
            .map(|a| self.row(a.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok((0..self.states.len())
            .filter(|&s| rows.iter().fold(self.full(), |acc, r| acc & r[s]) & !e == 0)
            .fold(0, |m, s| m | 1 << s))
    }

    /// Events under reverse inclusion with `K_i` as agent functions.
    pub fn to_scs(&self, limits: &Limits) -> Result<Scs> {
        if self.states.len() > limits.max_universe {
            return Err(Error::too_large(
                "state universe",
                self.states.len() as u128,
                limits.max_universe as u128,
            ));
        }
        let lattice = Arc::new(FiniteLattice::powerset(&self.states, true, limits.max_universe)?);
        let mut agents = Vec::new();
        for a in self.cells.keys() {
            let f = SpaceFunction::from_fn(lattice.clone(), |c| {
                Elem(self.know(a, c.0 as u64).expect("known agent") as u32)
            })?;
            agents.push((a.clone(), f));
        }
        Scs::new(lattice, agents)
    }

    pub fn to_file(&self) -> AumannFile {
        AumannFile {
            states: self.states.clone(),
            partitions: self
                .cells
                .keys()
                .map(|a| {
                    let blocks = self
                        .partition(a)
                        .expect("own agent")
                        .into_iter()
                        .map(|b| self.names(b))
                        .collect();
                    (a.clone(), blocks)
                })
                .collect(),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<AumannFile>(text)?.build()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AumannFile {
    pub states: Vec<String>,
    pub partitions: BTreeMap<String, Vec<Vec<String>>>,
}

impl AumannFile {
    pub fn build(&self) -> Result<AumannStructure> {
        sets::check_points(self.states.len())?;
        let mut partitions = BTreeMap::new();
        for (agent, blocks) in &self.partitions {
            let mut masks = Vec::with_capacity(blocks.len());
            for block in blocks {
                let distinct: BTreeSet<&String> = block.iter().collect();
                if distinct.len() != block.len() {
                    return Err(Error::InvalidPartition {
                        agent: agent.clone(),
                        detail: "a block repeats a state".into(),
                    });
                }
                masks.push(sets::mask_of(&self.states, block)?);
            }
            partitions.insert(agent.clone(), masks);
        }
        AumannStructure::new(self.states.clone(), partitions)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributed::{delta_group, Method};

    fn structure(json: &str) -> AumannStructure {
        AumannStructure::from_json(json).unwrap()
    }

    const FOUR: &str = r#"{"states":["1","2","3","4"],
        "partitions":{"1":[["1","2"],["3","4"]],"2":[["1","3"],["2","4"]]}}"#;

    #[test]
    fn know_examples() {
        let a = structure(r#"{"states":["1","2","3"],"partitions":{"1":[["1","2"],["3"]]}}"#);
        let e = a.event(&["1", "2"]).unwrap();
        assert_eq!(a.know("1", e).unwrap(), e);
        assert_eq!(a.know("1", a.full()).unwrap(), a.full());
        assert_eq!(a.names(a.know("1", a.event(&["1", "3"]).unwrap()).unwrap()), ["3"]);
        assert!(matches!(a.know("2", e), Err(Error::UnknownAgent(_))));
    }

    #[test]
    fn crossing_partitions_pool_to_perfect_knowledge() {
        let a = structure(FOUR);
        for e in 0..16 {
            assert_eq!(a.dk(&["1", "2"], e).unwrap(), e);
            assert_eq!(a.dk(&["1"], e).unwrap(), a.know("1", e).unwrap());
        }
    }

    #[test]
    fn induced_scs_matches_group_knowledge() {
        let a = structure(FOUR);
        let scs = a.to_scs(&Limits::default()).unwrap();
        for f in scs.agents().values() {
            let c = f.classify();
            assert!(c.idempotent && c.extensive);
        }
        for group in [vec![], vec!["1"], vec!["2"], vec!["1", "2"]] {
            let delta = delta_group(&scs, &group, Method::Tuple, 1_000_000).unwrap();
            for e in scs.lattice().elements() {
                assert_eq!(delta.apply(e).0 as u64, a.dk(&group, e.0 as u64).unwrap());
            }
        }
    }

    #[test]
    fn discrete_and_trivial_partitions() {
        let a = structure(r#"{"states":["x","y"],"partitions":{"d":[["x"],["y"]],"t":[["x","y"]]}}"#);
        let scs = a.to_scs(&Limits::default()).unwrap();
        assert_eq!(scs.agent("d").unwrap(), &SpaceFunction::identity(scs.lattice().clone()));
        for e in 0..4u64 {
            let expected = if e == a.full() { a.full() } else { 0 };
            assert_eq!(a.know("t", e).unwrap(), expected);
        }
    }

    #[test]
    fn invalid_partitions() {
        for (json, needle) in [
            (r#"{"states":["x","y"],"partitions":{"1":[["x"]]}}"#, "no block"),
            (r#"{"states":["x","y"],"partitions":{"1":[["x","y"],["y"]]}}"#, "two blocks"),
            (r#"{"states":["x","y"],"partitions":{"1":[["x","y"],[]]}}"#, "empty"),
        ] {
            match AumannStructure::from_json(json) {
                Err(Error::InvalidPartition { detail, .. }) => assert!(detail.contains(needle), "{detail}"),
                other => panic!("{other:?}"),
            }
        }
        let unknown = r#"{"states":["x"],"partitions":{"1":[["x","z"]]}}"#;
        assert!(matches!(AumannStructure::from_json(unknown), Err(Error::UnknownState(_))));
    }

    #[test]
    fn file_round_trip() {
        let a = structure(FOUR);
        assert_eq!(a.to_file().build().unwrap(), a);
    }
}
