//! Acceptance gate. Runs every criterion serially (timings stay meaningful)
//! and prints one PASS/FAIL line per criterion before asserting.

use std::sync::Arc;
use std::time::{Duration, Instant};

use latspace::checks::{self, CheckResult};
use latspace::distributed::{delta_group, Method};
use latspace::random;
use latspace::{FiniteLattice, Scs};

const SEED: u64 = 0x5eed;

const AC1_LIMIT: Duration = Duration::from_secs(1);
const AC2_LIMIT: Duration = Duration::from_secs(1);
const AC3_RANDOM_LATTICES: usize = 100;
const AC3_LIMIT: Duration = Duration::from_secs(60);
const AC4_SYSTEMS: usize = 25;
const AC4_LIMIT: Duration = Duration::from_secs(60);
const AC5_GROUP_SAMPLES: usize = 200;
const AC5_EROSION_PER_DIM: usize = 200;
const AC6_MODELS: usize = 100;
const AC6_LIMIT: Duration = Duration::from_secs(120);
const AC7_INSTANCES: usize = 100;
const AC8_LIMIT: Duration = Duration::from_secs(120);
const AC9_AGENTS: usize = 4;
const AC9_BASE_GROUND: usize = 8;
const AC9_BASE_LIMIT: Duration = Duration::from_secs(10);
const AC9_MAX_RATIO: f64 = 10.0;
const AC9_RUNS: usize = 3;

struct Gate {
    lines: Vec<(String, bool)>,
}

impl Gate {
    fn record(&mut self, id: &str, passed: bool, detail: String) {
        let tag = if passed { "PASS" } else { "FAIL" };
        let line = format!("[{tag}] {id} {detail}");
        println!("{line}");
        self.lines.push((line, passed));
    }

    fn check(&mut self, id: &str, limit: Option<Duration>, run: impl FnOnce() -> Vec<CheckResult>) {
        let start = Instant::now();
        let results = run();
        let elapsed = start.elapsed();
        let ok = results.iter().all(|r| r.passed);
        let in_time = limit.is_none_or(|l| elapsed < l);
        let details: Vec<String> = results.iter().map(|r| r.to_string()).collect();
        let budget = match limit {
            Some(l) => format!("{elapsed:.2?} (limit {l:?})"),
            None => format!("{elapsed:.2?}"),
        };
        self.record(id, ok && in_time, format!("{budget} :: {}", details.join(" ;; ")));
    }
}

fn complexity_system(ground: usize) -> Scs {
    let names: Vec<String> = (0..ground).map(|i| format!("g{i}")).collect();
    let lattice = Arc::new(FiniteLattice::powerset(&names, false, 16).unwrap());
    let mut rng = random::rng(SEED ^ ground as u64);
    random::scs(&mut rng, &lattice, AC9_AGENTS)
}

fn time_delta(scs: &Scs) -> Duration {
    let group: Vec<&str> = scs.agent_names().collect();
    (0..AC9_RUNS)
        .map(|_| {
            let start = Instant::now();
            let delta = delta_group(scs, &group, Method::Tuple, u64::MAX).unwrap();
            let elapsed = start.elapsed();
            std::hint::black_box(delta);
            elapsed
        })
        .min()
        .unwrap()
}

#[test]
fn acceptance() {
    let mut gate = Gate { lines: Vec::new() };

    gate.check("AC1 worked-example Δ, four routes", Some(AC1_LIMIT), || vec![checks::worked_example_delta()]);
    gate.check("AC2 point-wise meet witness", Some(AC2_LIMIT), || vec![checks::worked_example_raw_meet()]);
    gate.check("AC3 oracle equivalence", Some(AC3_LIMIT), || {
        vec![checks::oracle_equivalence(SEED, AC3_RANDOM_LATTICES)]
    });
    gate.check("AC4 gdc suite", Some(AC4_LIMIT), || vec![checks::gdc_suite(SEED, AC4_SYSTEMS)]);
    gate.check("AC5 Galois suites", None, || {
        vec![
            checks::agent_galois(SEED),
            checks::group_galois(SEED, AC5_GROUP_SAMPLES),
            checks::erosion_galois(SEED, AC5_EROSION_PER_DIM),
        ]
    });
    gate.check("AC6 epistemic equivalence", Some(AC6_LIMIT), || {
        vec![
            checks::kripke_distributed(SEED, AC6_MODELS),
            checks::aumann_distributed(SEED, AC6_MODELS),
        ]
    });
    gate.check("AC7 subset law", None, || vec![checks::oplus_law(SEED, AC7_INSTANCES)]);
    gate.check("AC8 small-module bridge", Some(AC8_LIMIT), || vec![checks::small_module_bridge()]);

    let base = complexity_system(AC9_BASE_GROUND);
    let doubled = complexity_system(AC9_BASE_GROUND + 1);
    let t_base = time_delta(&base);
    let t_doubled = time_delta(&doubled);
    let ratio = t_doubled.as_secs_f64() / t_base.as_secs_f64();
    gate.record(
        "AC9 complexity smoke",
        t_base < AC9_BASE_LIMIT && ratio <= AC9_MAX_RATIO,
        format!(
            "m={AC9_AGENTS}, n={}: {t_base:.2?} (limit {AC9_BASE_LIMIT:?}); n={}: {t_doubled:.2?}; ratio {ratio:.2} (limit {AC9_MAX_RATIO})",
            base.lattice().len(),
            doubled.lattice().len()
        ),
    );

    gate.check("AC10 non-distributive investigation", None, || vec![checks::non_distributive_investigation()]);

    let failed: Vec<&String> = gate.lines.iter().filter(|(_, ok)| !ok).map(|(l, _)| l).collect();
    assert!(failed.is_empty(), "failing criteria:\n{}", failed.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("\n"));
}
