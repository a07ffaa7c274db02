//! Size caps shared by the constructions that grow exponentially.

/// Environment variable overriding [`Limits::max_enum`].
pub const MAX_ENUM_ENV: &str = "LATSPACE_MAX_ENUM";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest lattice accepted from an explicit cover relation.
    pub max_elements: usize,
    /// Largest ground set for materialized powersets.
    pub max_powerset_ground: usize,
    /// Cap on enumerated candidates (space functions, tuples).
    pub max_enum: u64,
    /// Largest state universe for epistemic models.
    pub max_universe: usize,
    /// Largest point set whose subsets are enumerated.
    pub max_subset_base: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 4096,
            max_powerset_ground: 16,
            max_enum: 10_000_000,
            max_universe: 4,
            max_subset_base: 20,
        }
    }
}

impl Limits {
    /// Defaults, with `LATSPACE_MAX_ENUM` applied when it parses.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = std::env::var(MAX_ENUM_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
        {
            limits.max_enum = v;
        }
        limits
    }
}
