//! The three subcommands. Each returns a finished [`Document`] whose exit
//! code is 0 when expectations are met and 1 on a mathematical failure;
//! input and budget problems surface as [`CliError`].

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use qfilter_core::counterexample::{run_counterexample, CounterexampleConfig, Verdict};
use qfilter_core::monad::{
    check_naturality, classical_check, merge_outcomes, run_scenario, scenario_outcome, KleisliScenario,
    Lab, LawConfig, NaturalityConfig, Report, Variant,
};
use qfilter_core::quantale::{check_quantale_axioms, ConditionS, FiniteQuantale, Quantale as _, QuantaleTable};
use qfilter_core::{Rational, TNorm};

use crate::error::{CliError, Result};
use crate::format::{
    kind_name, load_quantale, load_scenario, parse_rational, parse_variant, show_rational, Loaded, MapValue,
    Quantale, Scenario, TableDef,
};
use crate::report::Document;

pub const DEFAULT_SEED: u64 = 1;

fn finish(mut d: Document) -> Document {
    if d.all_passed() {
        d.finish("all checks passed", 0);
    } else {
        d.finish("check failed", 1);
    }
    d
}

fn describe_tnorm(t: &TNorm) -> String {
    if t.blocks().is_empty() {
        return "minimum (Gödel)".into();
    }
    t.blocks()
        .iter()
        .map(|b| format!("{} on [{}, {}]", kind_name(b.kind), show_rational(b.lo), show_rational(b.hi)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn grid_points(step: Rational) -> Result<Vec<Rational>> {
    if *step.numer() != 1 || *step.denom() > 256 {
        return Err(CliError::input(format!("grid step {step} must be 1/n with n <= 256")));
    }
    Ok((0..=*step.denom()).map(|k| Rational::new(k, *step.denom())).collect())
}

/// Adjunction, commutativity, associativity and unit on a grid.
fn tnorm_axioms(d: &mut Document, t: &TNorm, step: Rational) -> Result<()> {
    let g = grid_points(step)?;
    let mut adj = qfilter_core::monad::Check::new("adjunction on the grid");
    let mut laws = qfilter_core::monad::Check::new("commutative monoid on the grid");
    let tensor: Vec<Vec<Rational>> = g.iter().map(|x| g.iter().map(|z| t.tensor_in(x, z)).collect()).collect();
    let resid: Vec<Vec<Rational>> = g.iter().map(|x| g.iter().map(|y| t.residuum_in(x, y)).collect()).collect();
    for i in 0..g.len() {
        for j in 0..g.len() {
            laws.record(tensor[i][j] == tensor[j][i] && (j + 1 < g.len() || tensor[i][j] == g[i]), || {
                format!("x = {}, y = {}", g[i], g[j])
            });
            for k in 0..g.len() {
                adj.record((tensor[i][k] <= g[j]) == (g[k] <= resid[i][j]), || {
                    format!("x = {}, y = {}, z = {}", g[i], g[j], g[k])
                });
                let lhs = t.tensor_in(&tensor[i][j], &g[k]);
                let rhs = t.tensor_in(&g[i], &tensor[j][k]);
                laws.record(lhs == rhs, || format!("associativity at {}, {}, {}", g[i], g[j], g[k]));
            }
        }
    }
    d.check(&adj);
    d.check(&laws);
    Ok(())
}

fn finite_adjunction(d: &mut Document, q: &FiniteQuantale) {
    let mut c = qfilter_core::monad::Check::new("adjunction");
    for x in q.levels() {
        for y in q.levels() {
            let r = q.residuum(&x, &y);
            for z in q.levels() {
                c.record(q.leq(&q.tensor(&x, &z), &y) == q.leq(&z, &r), || {
                    format!("x = {}, y = {}, z = {}", q.label(x), q.label(y), q.label(z))
                });
            }
        }
    }
    d.check(&c);
}

fn table_of(q: &FiniteQuantale) -> QuantaleTable {
    QuantaleTable {
        carrier: q.labels().to_vec(),
        tensor: q.tensor_table(),
        unit: q.unit_index(),
        lattice: q.lattice_tables(),
    }
}

pub fn cmd_quantale(arg: &str, checks: &[String], step: Rational) -> Result<Document> {
    let loaded = load_quantale(arg)?;
    let mut d = Document::new("quantale");
    d.fact("quantale", arg);
    let checks: Vec<String> = checks.iter().map(|c| c.to_ascii_lowercase()).collect();
    let wants = |name: &str, default: bool| if checks.is_empty() { default } else { checks.iter().any(|c| c == name) };
    for c in &checks {
        if !["axioms", "adjunction", "s", "grid"].contains(&c.as_str()) {
            return Err(CliError::input(format!("unknown check {c:?}; expected axioms, adjunction, s or grid")));
        }
    }
    match loaded {
        Loaded::TNorm(t) => {
            d.fact("t-norm", describe_tnorm(&t));
            d.fact("grid step", step);
            if wants("axioms", true) || wants("adjunction", true) {
                tnorm_axioms(&mut d, &t, step)?;
            }
            if wants("s", true) {
                match t.condition_s() {
                    ConditionS::Satisfied => {
                        d.fact("condition (S)", "satisfied");
                        d.verdict("condition (S)", true, None);
                    }
                    ConditionS::Violated(b) => {
                        let w = format!("{} block ({}, {})", kind_name(b.kind), b.lo, b.hi);
                        d.fact("condition (S)", format!("violated by the {w}"));
                        d.verdict("condition (S)", false, Some(w));
                    }
                }
            }
            if wants("grid", true) {
                d.fact("sup over p > 0 of p -> 0", t.sup_residuum_to_zero());
                d.fact("same sup over the grid", t.grid_sup_residuum_to_zero(step)?);
                let jump = t.continuity_probe(step)?;
                let w = jump.as_ref().map(|j| {
                    format!(
                        "residuum moves by {} from ({}, {}) to ({}, {}), slope allows {}",
                        j.jump, j.from.0, j.from.1, j.to.0, j.to.1, j.bound
                    )
                });
                d.verdict("residuum continuous off the diagonal", jump.is_none(), w);
            }
        }
        Loaded::Table(_) | Loaded::Finite(_) => {
            if wants("s", false) || wants("grid", false) {
                return Err(CliError::input("checks s and grid apply to t-norms on [0, 1] only"));
            }
            let table = match &loaded {
                Loaded::Table(t) => t.clone(),
                Loaded::Finite(q) => table_of(q),
                Loaded::TNorm(_) => unreachable!(),
            };
            d.fact("carrier", table.carrier.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "));
            let report = check_quantale_axioms(&table)?;
            if wants("axioms", true) {
                let mut c = qfilter_core::monad::Check::new("quantale axioms");
                if report.is_clean() {
                    c.record(true, String::new);
                }
                for v in &report.violations {
                    c.record(false, || v.to_string());
                }
                d.check(&c);
            }
            if report.is_clean() && wants("adjunction", true) {
                let Quantale::Finite(q) = loaded.build()? else { unreachable!() };
                d.fact("chain", q.is_chain());
                d.fact("integral", q.is_integral());
                finite_adjunction(&mut d, &q);
            }
        }
    }
    Ok(finish(d))
}

/// Options shared by `laws` and `counterexample`; command-line values win
/// over the scenario file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub quantale: Option<String>,
    pub scenario: Option<String>,
    pub seed: Option<u64>,
    pub budget: Option<u64>,
    pub variant: Option<String>,
    pub truncation: Option<u64>,
    pub t: Option<String>,
    pub s: Option<String>,
    pub epsilon: Option<String>,
    pub workers: Option<usize>,
}

fn scenario(o: &Overrides) -> Result<Option<Scenario>> {
    o.scenario.as_deref().map(|p| load_scenario(Path::new(p))).transpose()
}

fn quantale_for(o: &Overrides, sc: Option<&Scenario>) -> Result<(String, Quantale)> {
    let loaded = match (&o.quantale, sc) {
        (Some(q), _) => (q.clone(), load_quantale(q)?),
        (None, Some(sc)) => ("from scenario".to_string(), sc.def.quantale.load(&sc.dir)?),
        (None, None) => return Err(CliError::input("give --quantale or --scenario")),
    };
    Ok((loaded.0, loaded.1.build()?))
}

fn variant_for(o: &Overrides, sc: Option<&Scenario>) -> Result<Variant> {
    match (&o.variant, sc.and_then(|s| s.def.variant.as_ref())) {
        (Some(v), _) | (None, Some(v)) => parse_variant(v),
        (None, None) => Ok(Variant::Plain),
    }
}

fn pool(workers: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::input(format!("cannot start workers: {e}")))
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Runs the law suite on the maps given in the scenario file.
fn explicit_maps(d: &mut Document, q: &FiniteQuantale, variant: Variant, sc: &Scenario, seed: u64, samples: usize) -> Result<bool> {
    let Some(maps) = &sc.def.maps else { return Ok(true) };
    let sets = &sc.def.sets;
    let y_labels = sets.y.clone().unwrap_or_else(|| labels("y", maps.g.len()));
    let x_labels = sets.x.clone().unwrap_or_else(|| labels("x", maps.f.len()));
    let z_len = match (&sets.z, maps.g.first()) {
        (Some(z), _) => z.len(),
        (None, Some(MapValue::Table(t))) => t.domain.len(),
        (None, Some(MapValue::Prefilter(p))) => p.domain.len(),
        (None, None) => 0,
    };
    let z_labels = sets.z.clone().unwrap_or_else(|| match maps.g.first() {
        Some(MapValue::Table(t)) => t.domain.clone(),
        Some(MapValue::Prefilter(p)) => p.domain.clone(),
        None => labels("z", z_len),
    });
    if maps.f.len() != x_labels.len() || maps.g.len() != y_labels.len() {
        return Err(CliError::input("maps f and g need one value per point of X and Y"));
    }
    let arity = x_labels.len().max(y_labels.len()).max(z_labels.len());
    let lab = Lab::new(q, variant, arity)?;
    let load = |values: &[MapValue], domain: &[String], name: &str| -> Result<Vec<_>> {
        let space = lab.space(domain.len())?;
        values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let t = v.to_table(space, domain)?;
                let problem = if !space.is_semifilter(&t)? {
                    Some("is not a semifilter")
                } else if !lab.admissible(&t)? {
                    Some(match variant {
                        Variant::Plain => "is not conical",
                        Variant::Filter => "is not a conical filter",
                        Variant::Bounded => "is not conical and bounded",
                    })
                } else {
                    None
                };
                if let Some(problem) = problem {
                    let shown = serde_json::to_string(&TableDef::from_table(space, domain, &t)).unwrap_or_default();
                    return Err(CliError::input(format!("map value {name}({i}) {problem}: {shown}")));
                }
                Ok(t)
            })
            .collect()
    };
    let f = load(&maps.f, &y_labels, "f")?;
    let g = load(&maps.g, &z_labels, "g")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tables = (0..samples).map(|_| lab.sample(x_labels.len(), &mut rng)).collect::<Result<Vec<_>, _>>()?;
    tables.extend(lab.build_d(x_labels.len())?);
    let s = KleisliScenario { id: 0, x: x_labels.len(), y: y_labels.len(), z: z_labels.len(), f, g, samples: tables };
    let outcome = run_scenario(&lab, &s)?;
    d.section("declared maps");
    d.fact("X", x_labels.join(", "));
    d.fact("Y", y_labels.join(", "));
    d.fact("Z", z_labels.join(", "));
    d.report(&outcome.report);
    Ok(outcome.report.passed())
}

pub fn cmd_laws(o: &Overrides) -> Result<Document> {
    let sc = scenario(o)?;
    let (name, q) = quantale_for(o, sc.as_ref())?;
    let Quantale::Finite(q) = q else {
        return Err(CliError::input("the law suite needs a finite quantale"));
    };
    let variant = variant_for(o, sc.as_ref())?;
    let def = sc.as_ref().map(|s| &s.def);
    let seeds: Vec<u64> = match (o.seed, def.map(|d| d.seeds.clone())) {
        (Some(s), _) => vec![s],
        (None, Some(v)) if !v.is_empty() => v,
        _ => vec![DEFAULT_SEED],
    };
    let budgets = def.map(|d| d.budgets.clone()).unwrap_or_default();
    let max_size = def.and_then(|d| d.sets.max_size).unwrap_or(2);
    let scenarios = budgets.scenarios.unwrap_or(200);
    let samples = budgets.samples.unwrap_or(2);
    let extension_budget = o.budget.or(budgets.extensions);
    if extension_budget == Some(0) || scenarios == 0 {
        return Err(CliError::input("budgets must be positive"));
    }

    let mut d = Document::new("laws");
    d.fact("quantale", &name);
    d.fact("carrier", q.labels().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "));
    d.fact("variant", variant.name());
    d.fact("seeds", seeds.iter().map(u64::to_string).collect::<Vec<_>>().join(", "));
    d.fact("max size", max_size);
    d.fact("scenarios", scenarios);
    if let Some(b) = extension_budget {
        d.fact("extension budget", b);
    }
    let lab = Lab::new(&q, variant, max_size)?;
    let workers = pool(o.workers)?;
    let mut incomplete = None;
    for &seed in &seeds {
        let config = LawConfig { scenarios, max_size, seed, samples, budget: extension_budget };
        let outcomes: Vec<_> =
            workers.install(|| (0..scenarios).into_par_iter().map(|id| (id, scenario_outcome(&lab, &config, id))).collect());
        let report = merge_outcomes(&lab, &config, outcomes)?;
        d.section(format!("monad laws, seed {seed}"));
        d.report(&report);
        if let Some(why) = &report.incomplete {
            incomplete = Some(why.clone());
            break;
        }
        d.section(format!("naturality, seed {seed}"));
        let nat = NaturalityConfig { samples: budgets.naturality_samples.unwrap_or(200) as u64, max_size, seed };
        let report: Report = check_naturality(&q, &nat)?;
        d.report(&report);
    }
    if let Some(why) = incomplete {
        d.finish(format!("incomplete: {why}"), 3);
        return Ok(d);
    }
    if let Some(sc) = &sc {
        explicit_maps(&mut d, &q, variant, sc, seeds[0], samples)?;
        if sc.def.classical_oracle {
            if q.size() != 2 || !q.is_chain() {
                return Err(CliError::input("the classical oracle needs the 2-chain"));
            }
            let n = max_size.max(3);
            let report = classical_check(n)?;
            d.section("classical filter oracle");
            d.report(&report);
            d.fact("classical oracle", if report.passed() { "match" } else { "mismatch" });
        }
    }
    Ok(finish(d))
}

pub fn cmd_counterexample(o: &Overrides) -> Result<Document> {
    let sc = scenario(o)?;
    let (name, q) = quantale_for(o, sc.as_ref())?;
    let Quantale::TNorm(t) = q else {
        return Err(CliError::input("the counterexample needs a t-norm on [0, 1]"));
    };
    let def = sc.as_ref().map(|s| &s.def);
    let pick = |flag: &Option<String>, file: Option<&Option<String>>| -> Result<Option<Rational>> {
        match (flag, file.and_then(|f| f.as_ref())) {
            (Some(v), _) | (None, Some(v)) => parse_rational(v).map(Some),
            (None, None) => Ok(None),
        }
    };
    let mut config = CounterexampleConfig {
        variant: variant_for(o, sc.as_ref())?,
        t: pick(&o.t, def.map(|d| &d.t))?,
        s: pick(&o.s, def.map(|d| &d.s))?,
        epsilon: pick(&o.epsilon, def.map(|d| &d.epsilon))?,
        ..CounterexampleConfig::default()
    };
    if let Some(n) = o.truncation.or(def.and_then(|d| d.truncation)) {
        if n == 0 {
            return Err(CliError::input("truncation must be positive"));
        }
        config.truncation = n;
    }
    if let Some(c) = def.and_then(|d| d.witness_catalog.as_ref()) {
        c.apply(&mut config.catalog);
    }
    if let Some(cap) = o.budget.map(|b| b as usize).or(def.and_then(|d| d.budgets.catalog)) {
        if cap == 0 {
            return Err(CliError::input("budgets must be positive"));
        }
        config.catalog.cap = cap;
    }
    let r = run_counterexample(&t, &config)?;

    let mut d = Document::new("counterexample");
    d.fact("quantale", &name);
    d.fact("t-norm", describe_tnorm(&t));
    d.fact(
        "condition (S)",
        match &r.condition_s {
            ConditionS::Satisfied => "satisfied".to_string(),
            ConditionS::Violated(b) => format!("violated by the {} block ({}, {})", kind_name(b.kind), b.lo, b.hi),
        },
    );
    d.fact("variant", r.requested.name());
    if r.evaluated_as != r.requested {
        d.fact("evaluated as", format!("{} (t-norm isomorphic to Łukasiewicz)", r.evaluated_as.name()));
    }
    d.fact("t", r.t);
    d.fact("s", r.s);
    d.fact("p = t ⊗ s", r.p);
    if let Some(e) = r.epsilon {
        d.fact("epsilon", e);
    }
    d.fact("truncation", r.truncation);
    d.fact("catalog size", r.catalog_size);
    d.fact("catalog truncated", r.catalog_truncated);
    d.fact("catalog infima known only within bounds", r.inexact_infima);
    for c in &r.claims {
        d.verdict(c.name, c.holds, (!c.holds).then(|| c.detail.clone()));
        d.fact(c.name, &c.detail);
    }
    if let Some(c) = &r.certificate {
        d.fact("collapse: p idempotent", c.idempotent);
        d.fact("collapse: t and s above p", c.strictly_above);
        d.fact("collapse: points checked", c.points_checked);
        d.verdict("collapse v -> gamma(1/m) = gamma(1/m) for v >= p", c.failures.is_empty(), c.failures.first().cloned());
    }
    d.fact("step1_value", r.step1);
    d.fact("step2 on the catalog", r.step2);
    d.fact("step2_bound", r.step2_bound);
    d.fact("verdict", r.verdict);
    let expected = match r.condition_s {
        ConditionS::Satisfied => Verdict::NoViolationExpected,
        ConditionS::Violated(_) => Verdict::Violation,
    };
    d.verdict("verdict matches the classification", r.verdict == expected, Some(format!("got {}", r.verdict)));
    Ok(finish(d))
}
