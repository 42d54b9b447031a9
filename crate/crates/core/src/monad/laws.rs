use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{show_table, Lab, Report};
use crate::semifilter::SemifilterTable;
use crate::{Error, Result};

pub type LawReport = Report;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawConfig {
    pub scenarios: u64,
    /// Largest `|X|`, `|Y|`, `|Z|`; sizes are drawn from `1..=max_size`.
    pub max_size: usize,
    pub seed: u64,
    /// Random tables on `X` per scenario, on top of one unit.
    pub samples: usize,
    /// Cap on Kleisli extensions computed over the whole run.
    pub budget: Option<u64>,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig { scenarios: 200, max_size: 2, seed: 1, samples: 2, budget: None }
    }
}

/// `f: X -> T(Y)`, `g: Y -> T(Z)` and tables on `X` to test with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KleisliScenario {
    pub id: u64,
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub f: Vec<SemifilterTable>,
    pub g: Vec<SemifilterTable>,
    pub samples: Vec<SemifilterTable>,
}

impl KleisliScenario {
    /// Scenario `id` of the run seeded with `seed`; independent of every
    /// other scenario, so scenarios can be generated in any order.
    pub fn generate(lab: &Lab, seed: u64, id: u64, max_size: usize, samples: usize) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(id);
        let (x, y, z) = (
            rng.gen_range(1..=max_size),
            rng.gen_range(1..=max_size),
            rng.gen_range(1..=max_size),
        );
        let f = (0..x).map(|_| lab.sample(y, &mut rng)).collect::<Result<Vec<_>>>()?;
        let g = (0..y).map(|_| lab.sample(z, &mut rng)).collect::<Result<Vec<_>>>()?;
        let mut tables = (0..samples).map(|_| lab.sample(x, &mut rng)).collect::<Result<Vec<_>>>()?;
        let d = lab.build_d(x)?;
        tables.push(d[rng.gen_range(0..x)].clone());
        Ok(KleisliScenario { id, x, y, z, f, g, samples: tables })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScenarioOutcome {
    pub id: u64,
    pub report: Report,
    pub evaluations: u64,
}

fn validate(lab: &Lab, tables: &[SemifilterTable], arity: usize) -> Result<()> {
    for (index, t) in tables.iter().enumerate() {
        if t.arity() != arity || !lab.admissible(t)? {
            return Err(Error::NotAdmissible { index, required: "an object of the monad" });
        }
    }
    Ok(())
}

/// Checks `d♯ = id`, `f♯ ∘ d = f` and `g♯ ∘ f♯ = (g♯ ∘ f)♯` on one scenario.
pub fn run_scenario(lab: &Lab, s: &KleisliScenario) -> Result<ScenarioOutcome> {
    if s.f.len() != s.x || s.g.len() != s.y {
        return Err(Error::DomainMismatch { expected: s.x, found: s.f.len() });
    }
    validate(lab, &s.f, s.y)?;
    validate(lab, &s.g, s.z)?;
    validate(lab, &s.samples, s.x)?;
    let q = lab.quantale();
    let mut report = Report::default();
    let mut evaluations = 0u64;
    let dx = lab.build_d(s.x)?;

    for t in &s.samples {
        let back = lab.kleisli_extend(&dx, s.x, t)?;
        evaluations += 1;
        report.check_mut("left unit").record(back == *t, || {
            format!("scenario {}: T = {}, d#(T) = {}", s.id, show_table(q, t), show_table(q, &back))
        });
    }
    for (x, d) in dx.iter().enumerate() {
        let v = lab.kleisli_extend(&s.f, s.y, d)?;
        evaluations += 1;
        report.check_mut("right unit").record(v == s.f[x], || {
            format!("scenario {}: x = {x}, f#(d(x)) = {}, f(x) = {}", s.id, show_table(q, &v), show_table(q, &s.f[x]))
        });
    }
    let gf = s
        .f
        .iter()
        .map(|v| lab.kleisli_extend(&s.g, s.z, v))
        .collect::<Result<Vec<_>>>()?;
    evaluations += gf.len() as u64;
    for t in &s.samples {
        let lhs = lab.kleisli_extend(&s.g, s.z, &lab.kleisli_extend(&s.f, s.y, t)?)?;
        let rhs = lab.kleisli_extend(&gf, s.z, t)?;
        evaluations += 3;
        report.check_mut("associativity").record(lhs == rhs, || {
            format!(
                "scenario {}: T = {}, g#(f#(T)) = {}, (g# f)#(T) = {}",
                s.id,
                show_table(q, t),
                show_table(q, &lhs),
                show_table(q, &rhs)
            )
        });
    }
    Ok(ScenarioOutcome { id: s.id, report, evaluations })
}

/// Generates and runs one scenario by id.
pub fn scenario_outcome(lab: &Lab, config: &LawConfig, id: u64) -> Result<ScenarioOutcome> {
    let s = KleisliScenario::generate(lab, config.seed, id, config.max_size, config.samples)?;
    run_scenario(lab, &s)
}

/// Merges outcomes in id order, stopping at the evaluation budget or at the
/// first scenario that ran out of room.
pub fn merge_outcomes(lab: &Lab, config: &LawConfig, mut outcomes: Vec<(u64, Result<ScenarioOutcome>)>) -> Result<LawReport> {
    outcomes.sort_by_key(|(id, _)| *id);
    let mut report = Report::default();
    for name in ["left unit", "right unit", "associativity"] {
        report.check_mut(name);
    }
    report.fact("quantale size", lab.quantale().size().to_string());
    report.fact("variant", lab.variant().name());
    report.fact("seed", config.seed.to_string());
    let mut spent = 0u64;
    let mut completed = 0u64;
    for (id, outcome) in outcomes {
        let outcome = match outcome {
            Ok(o) => o,
            Err(Error::Budget { what, needed, budget }) => {
                report.incomplete = Some(format!("scenario {id}: {what} needs {needed}, budget {budget}"));
                break;
            }
            Err(e) => return Err(e),
        };
        if let Some(b) = config.budget {
            if spent + outcome.evaluations > b {
                report.incomplete = Some(format!("evaluation budget {b} exhausted after {completed} scenarios"));
                break;
            }
        }
        spent += outcome.evaluations;
        completed += 1;
        report.absorb(&outcome.report);
    }
    report.fact("scenarios", completed.to_string());
    report.fact("kleisli extensions", spent.to_string());
    Ok(report)
}

/// Runs `config.scenarios` seeded scenarios one after another.
pub fn check_monad_laws(lab: &Lab, config: &LawConfig) -> Result<LawReport> {
    let mut outcomes = Vec::new();
    let mut spent = 0u64;
    for id in 0..config.scenarios {
        let o = scenario_outcome(lab, config, id);
        let stop = match &o {
            Ok(o) => {
                spent += o.evaluations;
                config.budget.is_some_and(|b| spent > b)
            }
            Err(_) => true,
        };
        outcomes.push((id, o));
        if stop {
            break;
        }
    }
    merge_outcomes(lab, config, outcomes)
}
