use std::collections::BTreeSet;
use std::sync::Arc;

use super::sets::{self, SetSemantics};
use super::Formula;
use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};

pub const MAX_PROPS: usize = 4;

/// Sets of truth assignments ordered by reverse inclusion: a formula denotes
/// the assignments satisfying it, conjunction is join and `T` is bottom.
#[derive(Clone, Debug)]
pub struct BooleanCs {
    props: Vec<String>,
    lattice: Arc<FiniteLattice>,
}

/// Builds the constraint system of `props`. Assignment `a` gives proposition
/// `k` the value of bit `k` of `a`.
pub fn boolean_cs<S: AsRef<str>>(props: &[S]) -> Result<BooleanCs> {
    if props.len() > MAX_PROPS {
        return Err(Error::too_large("proposition set", props.len() as u128, MAX_PROPS as u128));
    }
    let props: Vec<String> = props.iter().map(|p| p.as_ref().to_string()).collect();
    let ground: Vec<String> = (0..1usize << props.len())
        .map(|a| assignment_label(&props, a))
        .collect();
    let lattice = FiniteLattice::powerset(&ground, true, 1 << MAX_PROPS)?;
    Ok(BooleanCs {
        props,
        lattice: Arc::new(lattice),
    })
}

fn assignment_label(props: &[String], a: usize) -> String {
    if props.is_empty() {
        return "·".to_string();
    }
    props
        .iter()
        .enumerate()
        .map(|(k, p)| if a >> k & 1 == 1 { p.clone() } else { format!("~{p}") })
        .collect::<Vec<_>>()
        .join("&")
}

impl BooleanCs {
    pub fn props(&self) -> &[String] {
        &self.props
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    /// The element denoted by a propositional formula.
    pub fn eval(&self, f: &Formula) -> Result<Elem> {
        Ok(Elem(sets::eval(self, f)? as u32))
    }

    /// Satisfying assignments of an element, as `p&~q` style labels.
    pub fn models(&self, e: Elem) -> Result<Vec<String>> {
        let e = self.lattice.check(e)?;
        Ok(sets::names(self.lattice.ground(), e.0 as u64))
    }
}

impl SetSemantics for BooleanCs {
    fn full(&self) -> u64 {
        sets::full_mask(1 << self.props.len())
    }

    fn atom(&self, p: &str) -> Result<u64> {
        let k = self
            .props
            .iter()
            .position(|q| q == p)
            .ok_or_else(|| Error::UnknownProp(p.to_string()))?;
        Ok((0..1usize << self.props.len())
            .filter(|a| a >> k & 1 == 1)
            .fold(0, |m, a| m | 1 << a))
    }

    fn boxed(&self, agent: &str, _: u64) -> Result<u64> {
        Err(Error::UnknownAgent(agent.to_string()))
    }

    fn dk(&self, group: &BTreeSet<String>, _: u64) -> Result<u64> {
        Err(match group.iter().next() {
            Some(a) => Error::UnknownAgent(a.clone()),
            None => Error::Unsupported("distributed knowledge in a constraint system without agents".into()),
        })
    }
}
