//! Acceptance gate: one line per criterion, non-zero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use qfilter_core::counterexample::{run_counterexample, CounterexampleConfig, Verdict};
use qfilter_core::monad::{check_monad_laws, check_naturality, classical_check, LawConfig, NaturalityConfig, Variant, Lab};
use qfilter_core::prefilter::{is_bounded_function, PrefilterBasis};
use qfilter_core::qfun::{sub, QFunction};
use qfilter_core::quantale::{Block, BlockKind, ConditionS, FiniteQuantale, Level, Quantale};
use qfilter_core::semifilter::{ConicalMode, Require, SemifilterTable, Space};
use qfilter_core::{rat, Rational, TNorm};

type Outcome = Result<String, String>;

fn quarter_half_block() -> TNorm {
    TNorm::ordinal_sum(vec![Block::new(rat(1, 4), rat(1, 2), BlockKind::Lukasiewicz)]).unwrap()
}

fn chains() -> Vec<(&'static str, FiniteQuantale)> {
    ["bool2", "godel3", "mv3", "chain5"].into_iter().map(|n| (n, FiniteQuantale::builtin(n).unwrap())).collect()
}

fn grid(den: i128) -> Vec<Rational> {
    (0..=den).map(|k| rat(k, den)).collect()
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let e = start.elapsed();
    if e < limit {
        Ok(())
    } else {
        Err(format!("{what} took {e:.2?}, limit {limit:?}"))
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_adjunction() -> Outcome {
    let start = Instant::now();
    let mut triples = 0u64;
    for (name, q) in chains() {
        let ls: Vec<Level> = q.levels().collect();
        for x in &ls {
            for y in &ls {
                let r = q.residuum(x, y);
                for z in &ls {
                    triples += 1;
                    let lhs = q.leq(&q.tensor(x, z), y);
                    ensure(lhs == q.leq(z, &r), || format!("{name}: x={x:?} y={y:?} z={z:?}"))?;
                }
            }
        }
    }
    let block = quarter_half_block();
    let c5 = FiniteQuantale::chain5();
    for x in c5.levels() {
        for y in c5.levels() {
            let want = block.tensor_in(&c5.label(x), &c5.label(y));
            ensure(c5.label(c5.tensor(&x, &y)) == want, || format!("chain5 not closed at {x:?}, {y:?}"))?;
        }
    }
    let g = grid(64);
    for (name, t) in [("godel", TNorm::godel()), ("product", TNorm::product()), ("lukasiewicz", TNorm::lukasiewicz())] {
        let tensor: Vec<Vec<Rational>> = g.iter().map(|x| g.iter().map(|z| t.tensor_in(x, z)).collect()).collect();
        let resid: Vec<Vec<Rational>> = g.iter().map(|x| g.iter().map(|y| t.residuum_in(x, y)).collect()).collect();
        for i in 0..g.len() {
            for j in 0..g.len() {
                for k in 0..g.len() {
                    triples += 1;
                    let lhs = tensor[i][k] <= g[j];
                    ensure(lhs == (g[k] <= resid[i][j]), || format!("{name}: x={} y={} z={}", g[i], g[j], g[k]))?;
                }
            }
        }
    }
    within(start, Duration::from_secs(5), "adjunction")?;
    Ok(format!("{triples} triples, 0 violations"))
}

fn c2_idempotents() -> Outcome {
    let t = quarter_half_block();
    let g = grid(64);
    let mut pairs = 0;
    for p in [rat(1, 4), rat(1, 2)] {
        ensure(t.is_idempotent(p), || format!("{p} not idempotent"))?;
        for x in g.iter().filter(|x| **x <= p) {
            for y in g.iter().filter(|y| **y >= p) {
                pairs += 2;
                ensure(t.tensor_in(x, y) == *x && t.tensor_in(y, x) == *x, || format!("{x} ⊗ {y}"))?;
            }
        }
    }
    Ok(format!("{pairs} ordered pairs, 0 violations"))
}

fn c3_condition_s() -> Outcome {
    let q = rat(1, 4);
    let h = rat(1, 2);
    let cases: Vec<(&str, TNorm, Option<Block>)> = vec![
        ("godel", TNorm::godel(), None),
        ("product", TNorm::product(), None),
        ("lukasiewicz", TNorm::lukasiewicz(), None),
        ("luk (1/4,1/2)", quarter_half_block(), Some(Block::new(q, h, BlockKind::Lukasiewicz))),
        (
            "prod (1/4,1/2) + luk (1/2,1)",
            TNorm::ordinal_sum(vec![
                Block::new(q, h, BlockKind::Product),
                Block::new(h, rat(1, 1), BlockKind::Lukasiewicz),
            ])
            .unwrap(),
            Some(Block::new(h, rat(1, 1), BlockKind::Lukasiewicz)),
        ),
        (
            "luk (0,1/2) + prod (1/2,1)",
            TNorm::ordinal_sum(vec![
                Block::new(rat(0, 1), h, BlockKind::Lukasiewicz),
                Block::new(h, rat(1, 1), BlockKind::Product),
            ])
            .unwrap(),
            None,
        ),
    ];
    for (name, t, witness) in &cases {
        let got = t.condition_s();
        let want = match witness {
            None => ConditionS::Satisfied,
            Some(b) => ConditionS::Violated(b.clone()),
        };
        ensure(got == want, || format!("{name}: {got:?}"))?;
        // Independent check: the residuum jumps off the diagonal exactly
        // when (S) fails.
        let jump = t.continuity_probe(rat(1, 64)).map_err(|e| e.to_string())?;
        ensure(jump.is_some() == witness.is_some(), || format!("{name}: continuity probe {jump:?}"))?;
    }
    Ok(format!("{} t-norms classified, continuity probe agrees", cases.len()))
}

fn c4_enumeration() -> Outcome {
    let start = Instant::now();
    let q = FiniteQuantale::godel3();
    let s = Space::new(&q, 1).map_err(|e| e.to_string())?;
    let enumerated: Vec<Vec<Level>> =
        s.enumerate(Require::All).map_err(|e| e.to_string())?.iter().map(|t| t.values().to_vec()).collect();
    let brute: Vec<Vec<Level>> = s
        .enumerate_brute_force(Require::All, 1 << 20)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|t| t.values().to_vec())
        .collect();
    let mut oracle = common::semifilters(&q, 1);
    oracle.sort();
    ensure(enumerated == brute, || "enumeration differs from brute force".into())?;
    ensure(enumerated == oracle, || "enumeration differs from the constraint filter".into())?;
    ensure(enumerated.len() == 5, || format!("{} semifilters, expected 5", enumerated.len()))?;
    let conical = common::conical_tables(&q, 1);
    for t in &enumerated {
        let table = s.table(t.clone()).map_err(|e| e.to_string())?;
        let c = s.conical_coreflection(&table).map_err(|e| e.to_string())?;
        let want = common::largest_conical_below(&q, &conical, t).ok_or("no conical table below")?;
        ensure(c.values() == want.as_slice(), || format!("coreflection of {t:?}"))?;
    }
    within(start, Duration::from_secs(1), "enumeration")?;
    Ok(format!("27 maps, {} semifilters, coreflections match", enumerated.len()))
}

fn c5_conical_modes() -> Outcome {
    let mut tables = 0;
    for (name, q) in chains() {
        for n in 0..=2 {
            let s = Space::new(&q, n).map_err(|e| e.to_string())?;
            for t in s.enumerate(Require::All).map_err(|e| e.to_string())? {
                tables += 1;
                let verdicts: Vec<bool> = ConicalMode::ALL
                    .iter()
                    .map(|m| s.is_conical(&t, *m))
                    .collect::<Result<_, _>>()
                    .map_err(|e| e.to_string())?;
                ensure(verdicts.iter().all(|v| *v == verdicts[0]), || format!("{name} |X|={n}: {verdicts:?}"))?;
            }
        }
    }
    Ok(format!("{tables} semifilters, {} modes agree on all", ConicalMode::ALL.len()))
}

fn c6_closure() -> Outcome {
    let mut checked = 0u64;
    for (name, q) in chains() {
        let top = q.top();
        for n in 1..=2 {
            let s = Space::new(&q, n).map_err(|e| e.to_string())?;
            let conical = s.enumerate(Require::Conical).map_err(|e| e.to_string())?;
            let is_con = |t: &SemifilterTable| s.is_conical(t, ConicalMode::Definition).map_err(|e| e.to_string());
            // Deterministic subsample of pairs for the larger spaces.
            let stride = (conical.len() / 24).max(1);
            let picked: Vec<&SemifilterTable> = conical.iter().step_by(stride).collect();
            let unary = Space::new(&q, 1).map_err(|e| e.to_string())?;
            let binary = Space::new(&q, 2).map_err(|e| e.to_string())?;
            let meet_outer = binary.lambda_of_set(&[QFunction::new(vec![top, top])]).map_err(|e| e.to_string())?;
            let outers = binary.enumerate(Require::Conical).map_err(|e| e.to_string())?;
            let outers: Vec<&SemifilterTable> = outers.iter().step_by((outers.len() / 6).max(1)).collect();
            for a in &picked {
                for p in q.levels() {
                    let r = s.residuate(p, a).map_err(|e| e.to_string())?;
                    ensure(is_con(&r)?, || format!("{name}: residuation by {p:?} not conical"))?;
                    // p -> F as the sum of the outer table generated by {ξ : ξ(F) >= p}.
                    let outer = unary.lambda_of_set(&[QFunction::new(vec![p])]).map_err(|e| e.to_string())?;
                    let sum = s.kowalsky_sum(std::slice::from_ref(*a), &outer).map_err(|e| e.to_string())?;
                    ensure(sum == r, || format!("{name}: sum differs from {p:?} -> F"))?;
                    checked += 2;
                }
                for b in &picked {
                    let m = s.meet(&[(*a).clone(), (*b).clone()]).map_err(|e| e.to_string())?;
                    ensure(is_con(&m)?, || format!("{name}: meet not conical"))?;
                    let universe = [(*a).clone(), (*b).clone()];
                    let sum = s.kowalsky_sum(&universe, &meet_outer).map_err(|e| e.to_string())?;
                    ensure(sum == m, || format!("{name}: sum differs from the meet"))?;
                    // Any conical outer table over conical data gives a conical sum.
                    for o in &outers {
                        let sum = s.kowalsky_sum(&universe, o).map_err(|e| e.to_string())?;
                        ensure(is_con(&sum)?, || format!("{name}: Kowalsky sum not conical"))?;
                        checked += 1;
                    }
                    checked += 2;
                }
            }
        }
    }
    Ok(format!("{checked} constructions conical, sums reproduce meets and residuations"))
}

fn c7_laws() -> Outcome {
    let mut lines = Vec::new();
    for name in ["godel3", "mv3", "chain5"] {
        let q = FiniteQuantale::builtin(name).unwrap();
        for variant in [Variant::Plain, Variant::Filter, Variant::Bounded] {
            let start = Instant::now();
            let lab = Lab::new(&q, variant, 2).map_err(|e| e.to_string())?;
            let config = LawConfig { scenarios: 200, max_size: 2, ..LawConfig::default() };
            let report = check_monad_laws(&lab, &config).map_err(|e| e.to_string())?;
            ensure(report.incomplete.is_none(), || format!("{name}: incomplete"))?;
            for c in &report.checks {
                ensure(c.passed(), || format!("{name} {variant:?} {}: {:?}", c.name, c.witnesses))?;
            }
            within(start, Duration::from_secs(60), name)?;
            let assoc = report.checks.iter().find(|c| c.name == "associativity").map_or(0, |c| c.cases);
            lines.push(format!("{name}/{}: {assoc}", variant.name()));
        }
    }
    Ok(format!("200 scenarios each, associativity cases {}", lines.join(", ")))
}

fn c8_classical() -> Outcome {
    let report = classical_check(3).map_err(|e| e.to_string())?;
    for c in &report.checks {
        ensure(c.passed(), || format!("{}: {:?}", c.name, c.witnesses))?;
    }
    let q = FiniteQuantale::boolean();
    let lab = Lab::new(&q, Variant::Plain, 3).map_err(|e| e.to_string())?;
    let laws = check_monad_laws(&lab, &LawConfig { scenarios: 200, max_size: 3, ..LawConfig::default() })
        .map_err(|e| e.to_string())?;
    ensure(laws.passed(), || "law suite fails on the 2-chain".into())?;
    let cases: u64 = report.checks.iter().map(|c| c.cases).sum();
    Ok(format!("{cases} classical comparisons, law suite passes on |X| <= 3"))
}

fn c9_counterexample() -> Outcome {
    let t = quarter_half_block();
    let mut parts = Vec::new();
    for variant in [Variant::Plain, Variant::Filter, Variant::Bounded] {
        let start = Instant::now();
        let config = CounterexampleConfig {
            variant,
            t: Some(rat(3, 8)),
            s: Some(rat(3, 8)),
            epsilon: (variant == Variant::Bounded).then(|| rat(1, 8)),
            truncation: 1000,
            ..CounterexampleConfig::default()
        };
        let r = run_counterexample(&t, &config).map_err(|e| e.to_string())?;
        ensure(r.step1.value() == Some(rat(1, 1)), || format!("{variant:?}: step1 = {}", r.step1))?;
        ensure(r.step2_bound <= rat(1, 4), || format!("{variant:?}: step2 bound = {}", r.step2_bound))?;
        ensure(r.verdict == Verdict::Violation, || format!("{variant:?}: {}", r.verdict))?;
        within(start, Duration::from_secs(10), variant.name())?;
        parts.push(format!("{} {:.1?}", variant.name(), start.elapsed()));
    }
    Ok(format!("step1 = 1, step2 <= 1/4, VIOLATION ({})", parts.join(", ")))
}

fn c10_boundedness() -> Outcome {
    ensure(TNorm::lukasiewicz().sup_residuum_to_zero() == rat(1, 1), || "lukasiewicz".into())?;
    ensure(TNorm::godel().sup_residuum_to_zero() == rat(0, 1), || "godel".into())?;
    ensure(TNorm::product().sup_residuum_to_zero() == rat(0, 1), || "product".into())?;
    let mut bounded_prefilters = 0;
    let mut prefilters = 0;
    for (name, q) in chains() {
        for n in 1..=2 {
            let funcs: Vec<QFunction<Level>> =
                common::functions(&q, n).into_iter().map(QFunction::new).collect();
            // On a finite carrier every prefilter is principal.
            for b in &funcs {
                prefilters += 1;
                let f = PrefilterBasis::normalize(&q, n, vec![b.clone()]).map_err(|e| e.to_string())?;
                let members: Vec<&QFunction<Level>> =
                    funcs.iter().filter(|l| f.member(&q, l).unwrap()).collect();
                let bounded: Vec<&QFunction<Level>> =
                    members.iter().copied().filter(|l| is_bounded_function(&q, l)).collect();
                let saturation: Vec<&QFunction<Level>> = funcs
                    .iter()
                    .filter(|l| bounded.iter().any(|m| sub(&q, m, l).unwrap() == q.top()))
                    .collect();
                if saturation != members {
                    continue;
                }
                bounded_prefilters += 1;
                for l in &members {
                    ensure(l.inf(&q) != q.bottom(), || format!("{name}: unbounded member {l:?}"))?;
                }
            }
        }
    }
    Ok(format!(
        "sup p->0: luk 1, godel 0, product 0; {bounded_prefilters} of {prefilters} prefilters bounded, all members bounded"
    ))
}

fn c11_naturality() -> Outcome {
    let mut cases = 0;
    let required = [
        "gamma of d is the principal prefilter",
        "n formula matches gamma of n",
        "coreflection fixes conical tables",
        "tilde n square commutes",
    ];
    for (name, q) in chains() {
        let report = check_naturality(&q, &NaturalityConfig::default()).map_err(|e| e.to_string())?;
        for r in required {
            let c = report.checks.iter().find(|c| c.name == r).ok_or_else(|| format!("{name}: no check {r}"))?;
            ensure(c.cases > 0, || format!("{name}: {r} has no cases"))?;
        }
        for c in &report.checks {
            ensure(c.passed(), || format!("{name} {}: {:?}", c.name, c.witnesses))?;
            cases += c.cases;
        }
    }
    Ok(format!("{cases} instances over 4 chains, all commute"))
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "residuation adjunction", c1_adjunction),
        (2, "idempotents act as minimum", c2_idempotents),
        (3, "condition (S) classifier", c3_condition_s),
        (4, "enumeration oracle", c4_enumeration),
        (5, "conicality modes agree", c5_conical_modes),
        (6, "closure criterion", c6_closure),
        (7, "monad laws", c7_laws),
        (8, "classical correspondence", c8_classical),
        (9, "counterexample replication", c9_counterexample),
        (10, "Łukasiewicz boundedness", c10_boundedness),
        (11, "naturality", c11_naturality),
    ];
    let mut failed = 0;
    for (n, name, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail} [{elapsed:.2?}]"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {why} [{elapsed:.2?}]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
