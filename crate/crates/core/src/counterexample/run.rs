use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::descriptor::FunctionDescriptor;
use super::expr::FnExpr;
use super::symbolic::{Evaluator, SymbolicSemifilter};
use super::{CatalogConfig, Claim, CollapseCertificate, CounterexampleConfig, CounterexampleReport, Verdict};
use crate::error::{Error, Result};
use crate::monad::Variant;
use crate::quantale::{Block, BlockKind, ConditionS, TNorm};
use crate::rational::Rational;

/// Functions used as witnesses and evaluation points. `γ` comes first.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub members: Vec<FunctionDescriptor>,
    pub truncated: bool,
}

struct Params {
    p: Rational,
    q: Rational,
    t: Rational,
    s: Rational,
    epsilon: Option<Rational>,
    pinned: bool,
}

fn gamma(params: &Params) -> FnExpr {
    FnExpr::Gamma { p: params.p, floor: params.epsilon.unwrap_or_else(Rational::zero) }
}

fn build(t: &TNorm, params: &Params, config: &CatalogConfig, truncation: u64) -> Catalog {
    let zero = Rational::zero();
    let one = Rational::one();
    let half = Rational::new(1, 2);
    let mut deltas = Vec::new();
    match params.epsilon {
        Some(e) => deltas.push(e),
        None => deltas.push(zero),
    }
    deltas.extend([params.p, params.t]);
    deltas.sort();
    deltas.dedup();

    let mut atoms = alloc::vec![gamma(params)];
    for &n in &config.tail_indices {
        for &delta in &deltas {
            atoms.push(FnExpr::Tail { n, delta });
        }
    }
    let mut consts = alloc::vec![zero, params.p, params.s, params.t, (params.p + params.q) * half, params.q, one];
    consts.extend(params.epsilon);
    consts.sort();
    consts.dedup();
    atoms.extend(consts.into_iter().map(FnExpr::Const));

    let mut seen = BTreeSet::new();
    let mut exprs = Vec::new();
    let mut truncated = false;
    let mut push = |e: FnExpr, exprs: &mut Vec<FnExpr>| -> bool {
        if exprs.len() >= config.cap {
            truncated = true;
            return false;
        }
        let e = e.simplify(t);
        if seen.insert(e.clone()) {
            exprs.push(e);
        }
        true
    };
    for e in atoms.iter().chain(&config.extra) {
        push(e.clone(), &mut exprs);
    }
    let combine = |a: &FnExpr, b: &FnExpr| {
        [FnExpr::join(a.clone(), b.clone()), FnExpr::meet(a.clone(), b.clone()), FnExpr::imp(a.clone(), b.clone()), FnExpr::imp(b.clone(), a.clone())]
    };
    // Combinations with γ first, then the remaining pairs of atoms, then
    // one more operation with an atom.
    let g = &atoms[0];
    let mut level1 = Vec::new();
    'outer: for depth in 1..=config.depth.max(1) {
        let pairs: Vec<(FnExpr, FnExpr)> = if depth == 1 {
            let mut v: Vec<(FnExpr, FnExpr)> = atoms[1..].iter().map(|a| (g.clone(), a.clone())).collect();
            for i in 1..atoms.len() {
                for j in i + 1..atoms.len() {
                    v.push((atoms[i].clone(), atoms[j].clone()));
                }
            }
            v
        } else {
            level1.iter().flat_map(|l: &FnExpr| atoms.iter().map(move |a| (l.clone(), a.clone()))).collect()
        };
        for (a, b) in pairs {
            if a.is_const().is_some() && b.is_const().is_some() {
                continue;
            }
            for e in combine(&a, &b) {
                let before = exprs.len();
                if !push(e, &mut exprs) {
                    break 'outer;
                }
                if depth == 1 && exprs.len() > before {
                    level1.push(exprs[before].clone());
                }
            }
        }
    }
    let members = exprs.into_iter().map(|e| FunctionDescriptor::new(t, e, params.pinned, truncation)).collect();
    Catalog { members, truncated }
}

/// Builds the catalog for a run without evaluating anything.
pub fn build_catalog(t: &TNorm, config: &CounterexampleConfig) -> Result<Catalog> {
    let setup = setup(t, config)?;
    Ok(build(t, &setup.params, &config.catalog, config.truncation))
}

struct Setup {
    params: Params,
    block: Option<Block>,
    evaluated_as: Variant,
    condition_s: ConditionS,
}

fn is_lukasiewicz_like(t: &TNorm) -> bool {
    matches!(t.blocks(), [b] if b.lo.is_zero() && b.hi.is_one() && b.kind == BlockKind::Lukasiewicz)
}

fn setup(tn: &TNorm, config: &CounterexampleConfig) -> Result<Setup> {
    let zero = Rational::zero();
    let one = Rational::one();
    let condition_s = tn.condition_s();
    let evaluated_as = if config.variant == Variant::Bounded && is_lukasiewicz_like(tn) {
        Variant::Plain
    } else {
        config.variant
    };
    let in_unit = |name: &str, v: Rational| {
        if v > zero && v < one {
            Ok(v)
        } else {
            Err(Error::Precondition(format!("{name} = {v} must lie strictly between 0 and 1")))
        }
    };
    let (block, t, s, p, q) = match &condition_s {
        ConditionS::Violated(witness) => {
            let mid = (witness.lo + witness.hi) * Rational::new(1, 2);
            let t = in_unit("t", config.t.unwrap_or(mid))?;
            let s = in_unit("s", config.s.unwrap_or(t))?;
            let block = tn
                .blocks()
                .iter()
                .find(|b| b.kind == BlockKind::Lukasiewicz && b.lo > zero && [t, s].iter().all(|v| b.lo < *v && *v < b.hi))
                .cloned()
                .ok_or_else(|| {
                    Error::Precondition(format!(
                        "t = {t} and s = {s} must lie strictly inside one Łukasiewicz block (p, q) with p > 0"
                    ))
                })?;
            let ts = tn.tensor_in(&t, &s);
            if ts != block.lo {
                return Err(Error::Precondition(format!("t ⊗ s = {ts}, expected the block's lower end {}", block.lo)));
            }
            (Some(block.clone()), t, s, block.lo, block.hi)
        }
        ConditionS::Satisfied => {
            let t = in_unit("t", config.t.unwrap_or(Rational::new(1, 2)))?;
            let s = in_unit("s", config.s.unwrap_or(t))?;
            (None, t, s, tn.tensor_in(&t, &s), one)
        }
    };
    let epsilon = match evaluated_as {
        Variant::Bounded => {
            let e = config.epsilon.unwrap_or(p * Rational::new(1, 2));
            if !(e > zero && e < p) {
                return Err(Error::Precondition(format!("epsilon = {e} must satisfy 0 < epsilon < p = {p}")));
            }
            Some(e)
        }
        _ => None,
    };
    let params = Params { p, q, t, s, epsilon, pinned: evaluated_as == Variant::Filter };
    Ok(Setup { params, block, evaluated_as, condition_s })
}

fn certify(tn: &TNorm, params: &Params, catalog: &[FunctionDescriptor], truncation: u64) -> CollapseCertificate {
    let p = params.p;
    let gamma = &catalog[0];
    let mut points = 0u64;
    let mut failures = Vec::new();
    for mu in catalog {
        for m in 1..=truncation {
            let y = gamma.sample(m);
            let v = mu.sample(m);
            if y >= p || v < p {
                continue;
            }
            points += 1;
            let r = tn.residuum_in(&v, &y);
            if r != y && failures.len() < 5 {
                failures.push(format!("{:?} at 1/{m}: {v} -> {y} = {r}", mu.expr));
            }
        }
    }
    CollapseCertificate {
        p,
        idempotent: tn.is_idempotent(p),
        strictly_above: params.t > p && params.s > p,
        points_checked: points,
        failures,
    }
}

/// Evaluates both sides of the associativity law at `γ`.
pub fn run_counterexample(tn: &TNorm, config: &CounterexampleConfig) -> Result<CounterexampleReport> {
    let setup = setup(tn, config)?;
    let params = &setup.params;
    let catalog = build(tn, params, &config.catalog, config.truncation);
    let members = &catalog.members;
    let bounded = setup.evaluated_as == Variant::Bounded;
    let mut ev = Evaluator::new(tn, members, bounded);
    let one = Rational::one();
    let (t, s, p) = (params.t, params.s, params.p);

    use SymbolicSemifilter as F;
    let mut claims = Vec::new();
    let composed = F::residuated(s, F::Threshold(t));
    let mismatch = (0..members.len()).find(|&i| ev.eval(&composed, i) != ev.eval(&F::Threshold(p), i));
    claims.push(Claim {
        name: "s -> threshold(t) equals threshold(t ⊗ s)",
        holds: mismatch.is_none(),
        detail: match mismatch {
            None => format!("on {} catalog functions", members.len()),
            Some(i) => format!("differs at {:?}", members[i].expr),
        },
    });
    let upper = F::residuated(p, F::Tail);
    let g_in = ev.eval(&upper, 0);
    claims.push(Claim {
        name: "gamma lies in p -> tail",
        holds: g_in.lo == one,
        detail: format!("liminf gamma(1/m) = {}", members[0].tail_liminf),
    });
    if bounded {
        claims.push(Claim {
            name: "gamma is bounded",
            holds: members[0].bounded() == Some(true),
            detail: format!("inf gamma = {}", members[0].global_inf),
        });
    }

    let step1 = ev.eval(&F::coreflected(upper), 0);
    let inner = F::coreflected(F::residuated(t, F::Tail));
    let step2 = ev.eval(&F::coreflected(F::residuated(s, inner)), 0);

    let certificate = match setup.condition_s {
        ConditionS::Violated(_) => Some(certify(tn, params, members, config.truncation)),
        ConditionS::Satisfied => None,
    };
    let step2_bound = match &certificate {
        Some(c) if c.is_valid() => core::cmp::min(p, step2.hi),
        _ => step2.hi,
    };
    claims.push(Claim {
        name: "catalog witnesses respect the bound",
        holds: step2.lo <= step2_bound,
        detail: format!("best catalog value {} against bound {}", step2.lo, step2_bound),
    });

    let verdict = match setup.condition_s {
        ConditionS::Satisfied => Verdict::NoViolationExpected,
        ConditionS::Violated(_) if step1.lo > step2_bound => Verdict::Violation,
        ConditionS::Violated(_) => Verdict::NoViolationFound,
    };
    let inexact_infima = members.iter().filter(|d| !d.global_inf.is_exact()).count();
    Ok(CounterexampleReport {
        requested: config.variant,
        evaluated_as: setup.evaluated_as,
        condition_s: setup.condition_s,
        block: setup.block,
        t,
        s,
        p,
        epsilon: params.epsilon,
        truncation: config.truncation,
        catalog_size: members.len(),
        catalog_truncated: catalog.truncated,
        inexact_infima,
        claims,
        step1,
        step2,
        step2_bound,
        certificate,
        verdict,
    })
}
