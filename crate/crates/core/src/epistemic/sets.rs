//! Set-valued semantics shared by the propositional, Kripke and Aumann
//! evaluators. Sets are bitmasks over a universe of at most 64 points.

use std::collections::BTreeSet;

use super::Formula;
use crate::error::{Error, Result};

pub(crate) const MAX_POINTS: usize = 64;

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn check_points(n: usize) -> Result<()> {
    if n > MAX_POINTS {
        return Err(Error::too_large("state universe", n as u128, MAX_POINTS as u128));
    }
    Ok(())
}

pub(crate) trait SetSemantics {
    fn full(&self) -> u64;
    fn atom(&self, p: &str) -> Result<u64>;
    fn boxed(&self, agent: &str, x: u64) -> Result<u64>;
    fn dk(&self, group: &BTreeSet<String>, x: u64) -> Result<u64>;
}

pub(crate) fn eval<S: SetSemantics + ?Sized>(s: &S, f: &Formula) -> Result<u64> {
    Ok(match f {
        Formula::True => s.full(),
        Formula::False => 0,
        Formula::Atom(p) => s.atom(p)?,
        Formula::Not(a) => s.full() & !eval(s, a)?,
        Formula::And(a, b) => eval(s, a)? & eval(s, b)?,
        Formula::Or(a, b) => eval(s, a)? | eval(s, b)?,
        Formula::Implies(a, b) => (s.full() & !eval(s, a)?) | eval(s, b)?,
        Formula::Box(i, a) => {
            let x = eval(s, a)?;
            s.boxed(i, x)?
        }
        Formula::Dk(group, a) => {
            let x = eval(s, a)?;
            s.dk(group, x)?
        }
    })
}

pub(crate) fn names(labels: &[String], mask: u64) -> Vec<String> {
    labels
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, l)| l.clone())
        .collect()
}

pub(crate) fn mask_of<S: AsRef<str>>(labels: &[String], items: &[S]) -> Result<u64> {
    let mut mask = 0;
    for item in items {
        let item = item.as_ref();
        let i = labels
            .iter()
            .position(|l| l == item)
            .ok_or_else(|| Error::UnknownState(item.to_string()))?;
        mask |= 1 << i;
    }
    Ok(mask)
}
