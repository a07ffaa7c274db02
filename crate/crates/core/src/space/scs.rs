use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{same_lattice, SpaceFunction};
use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice, LatticeFile};

/// A lattice with one space function per agent. Agents iterate in
/// lexicographic name order.
#[derive(Clone, Debug)]
pub struct Scs {
    lattice: Arc<FiniteLattice>,
    agents: BTreeMap<String, SpaceFunction>,
}

impl Scs {
    pub fn new(
        lattice: Arc<FiniteLattice>,
        agents: impl IntoIterator<Item = (String, SpaceFunction)>,
    ) -> Result<Self> {
        let agents: BTreeMap<String, SpaceFunction> = agents.into_iter().collect();
        if agents.values().any(|f| !same_lattice(f.lattice(), &lattice)) {
            return Err(Error::LatticeMismatch);
        }
        Ok(Scs { lattice, agents })
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    pub fn agents(&self) -> &BTreeMap<String, SpaceFunction> {
        &self.agents
    }

    pub fn agent_names(&self) -> impl Iterator<Item = &str> {
        self.agents.keys().map(String::as_str)
    }

    pub fn agent(&self, name: &str) -> Result<&SpaceFunction> {
        self.agents
            .get(name)
            .ok_or_else(|| Error::UnknownAgent(name.to_string()))
    }

    /// Resolves a group given by name into its functions, in canonical order.
    pub fn group<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<(&str, &SpaceFunction)>> {
        let mut out: Vec<(&str, &SpaceFunction)> = Vec::with_capacity(names.len());
        for n in names {
            let (k, f) = self
                .agents
                .get_key_value(n.as_ref())
                .ok_or_else(|| Error::UnknownAgent(n.as_ref().to_string()))?;
            out.push((k.as_str(), f));
        }
        out.sort_by(|a, b| a.0.cmp(b.0));
        out.dedup_by(|a, b| a.0 == b.0);
        Ok(out)
    }

    pub fn elem(&self, label: &str) -> Result<Elem> {
        self.lattice.elem(label)
    }

    pub fn to_file(&self) -> ScsFile {
        ScsFile {
            lattice: LatticeSource::Inline(self.lattice.to_file()),
            agents: self
                .agents
                .iter()
                .map(|(k, f)| (k.clone(), AgentImages(f.image_labels())))
                .collect(),
        }
    }

    pub fn load(path: impl AsRef<Path>, max_elements: usize) -> Result<Scs> {
        let path = path.as_ref();
        let file: ScsFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        file.build(path.parent(), max_elements)
    }
}

/// Lattice given inline or as a path to a lattice file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeSource {
    Inline(LatticeFile),
    Path(String),
}

/// Agent images: either `"x→y"` arrows (any order, every element once) or
/// image labels in element order.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AgentImages(pub Vec<String>);

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScsFile {
    pub lattice: LatticeSource,
    pub agents: BTreeMap<String, AgentImages>,
}

impl ScsFile {
    /// Resolves relative lattice paths against `base`.
    pub fn build(&self, base: Option<&Path>, max_elements: usize) -> Result<Scs> {
        let lattice = match &self.lattice {
            LatticeSource::Inline(f) => f.build(max_elements)?,
            LatticeSource::Path(p) => {
                let p = Path::new(p);
                let full = match base {
                    Some(b) if p.is_relative() => b.join(p),
                    _ => p.to_path_buf(),
                };
                FiniteLattice::load(full, max_elements)?
            }
        };
        let lattice = Arc::new(lattice);
        let mut agents = BTreeMap::new();
        for (name, images) in &self.agents {
            let f = images.resolve(&lattice).map_err(|e| match e {
                Error::NotASpaceFunction(m) => Error::NotASpaceFunction(format!("agent `{name}`: {m}")),
                other => other,
            })?;
            agents.insert(name.clone(), f);
        }
        Scs::new(lattice, agents)
    }

    pub fn from_json(text: &str, base: Option<&Path>, max_elements: usize) -> Result<Scs> {
        let file: ScsFile = serde_json::from_str(text)?;
        file.build(base, max_elements)
    }
}

impl AgentImages {
    fn resolve(&self, lattice: &Arc<FiniteLattice>) -> Result<SpaceFunction> {
        let arrows: Vec<Option<(&str, &str)>> = self.0.iter().map(|s| split_arrow(s)).collect();
        if !self.0.is_empty() && arrows.iter().all(Option::is_some) {
            let mut images: Vec<Option<Elem>> = vec![None; lattice.len()];
            for (from, to) in arrows.into_iter().flatten() {
                let (from, to) = (lattice.elem(from)?, lattice.elem(to)?);
                if images[from.index()].replace(to).is_some() {
                    return Err(Error::Parse(format!(
                        "element `{}` mapped twice",
                        lattice.label(from)
                    )));
                }
            }
            let images = images
                .into_iter()
                .enumerate()
                .map(|(i, e)| {
                    e.ok_or_else(|| {
                        Error::Parse(format!("no image for `{}`", lattice.label(Elem::from(i))))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            SpaceFunction::new(lattice.clone(), images)
        } else {
            SpaceFunction::from_labels(lattice.clone(), &self.0)
        }
    }
}

fn split_arrow(s: &str) -> Option<(&str, &str)> {
    s.split_once('→')
        .or_else(|| s.split_once("->"))
        .map(|(a, b)| (a.trim(), b.trim()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const M2_SCS: &str = r#"{
        "lattice": {"elements": ["p∨¬p", "p", "¬p", "p∧¬p"],
                    "covers": [["p∨¬p","p"],["p∨¬p","¬p"],["p","p∧¬p"],["¬p","p∧¬p"]]},
        "agents": {
            "1": ["p∨¬p→p∨¬p", "p→¬p", "¬p→p", "p∧¬p→p∧¬p"],
            "2": ["p∨¬p", "p∧¬p", "¬p", "p∧¬p"]
        }
    }"#;

    #[test]
    fn both_agent_forms_parse() {
        let scs = ScsFile::from_json(M2_SCS, None, 4096).unwrap();
        let l = scs.lattice();
        let s1 = scs.agent("1").unwrap();
        assert_eq!(l.label(s1.apply(l.elem("p").unwrap())), "¬p");
        let s2 = scs.agent("2").unwrap();
        assert_eq!(s2.apply(l.elem("p").unwrap()), l.top());
        assert!(matches!(scs.agent("3"), Err(Error::UnknownAgent(_))));
    }

    #[test]
    fn invalid_agent_is_reported_with_name() {
        let text = M2_SCS.replace(r#""p∨¬p→p∨¬p""#, r#""p∨¬p→p""#);
        let err = ScsFile::from_json(&text, None, 4096).unwrap_err();
        assert!(matches!(&err, Error::NotASpaceFunction(m) if m.contains("agent `1`") && m.contains("S.1")));
    }

    #[test]
    fn round_trip() {
        let scs = ScsFile::from_json(M2_SCS, None, 4096).unwrap();
        let json = serde_json::to_string(&scs.to_file()).unwrap();
        let back = ScsFile::from_json(&json, None, 4096).unwrap();
        assert_eq!(back.agents(), scs.agents());
    }

    #[test]
    fn group_is_canonical_and_deduplicated() {
        let scs = ScsFile::from_json(M2_SCS, None, 4096).unwrap();
        let g = scs.group(&["2", "1", "2"]).unwrap();
        let names: Vec<&str> = g.iter().map(|(n, _)| *n).collect();
        assert_eq!(names, ["1", "2"]);
    }
}
