use std::path::Path;

use serde::{Deserialize, Serialize};

use super::FiniteLattice;
use crate::error::Result;

/// On-disk lattice: element labels plus `[lower, upper]` cover pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

impl LatticeFile {
    pub fn build(&self, max_elements: usize) -> Result<FiniteLattice> {
        FiniteLattice::from_covers_capped(
            self.elements.iter().cloned(),
            self.covers.iter().map(|[lo, hi]| (lo, hi)),
            max_elements,
        )
    }
}

impl FiniteLattice {
    /// Cover-relation form of this lattice, labels in element order.
    pub fn to_file(&self) -> LatticeFile {
        LatticeFile {
            elements: self.labels().to_vec(),
            covers: self
                .covers()
                .into_iter()
                .map(|(lo, hi)| [self.label(lo).to_string(), self.label(hi).to_string()])
                .collect(),
        }
    }

    pub fn from_json(text: &str, max_elements: usize) -> Result<FiniteLattice> {
        let file: LatticeFile = serde_json::from_str(text)?;
        file.build(max_elements)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("lattice file serializes")
    }

    pub fn load(path: impl AsRef<Path>, max_elements: usize) -> Result<FiniteLattice> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text, max_elements)
    }
}
