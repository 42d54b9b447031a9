//! Agreement of the prefilter-side formulas with the semifilter-side
//! constructions, and commuting squares for images.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{show_levels, show_table, Lab, Report, Variant};
use crate::prefilter::{bounded_coreflection, is_bounded_function, PrefilterBasis};
use crate::qfun::{precompose, sub, FiniteMap, QFunction};
use crate::quantale::{FiniteQuantale, Level, Quantale};
use crate::semifilter::{image_semifilter, Require, SemifilterTable, Space};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalityConfig {
    pub samples: u64,
    pub max_size: usize,
    pub seed: u64,
}

impl Default for NaturalityConfig {
    fn default() -> Self {
        NaturalityConfig { samples: 200, max_size: 2, seed: 1 }
    }
}

fn random_basis<R: Rng>(q: &FiniteQuantale, arity: usize, rng: &mut R) -> Result<PrefilterBasis<Level>> {
    let count = rng.gen_range(1..=3);
    let raw = (0..count)
        .map(|_| QFunction::new((0..arity).map(|_| Level(rng.gen_range(0..q.size()) as u8)).collect()))
        .collect();
    PrefilterBasis::normalize(q, arity, raw)
}

fn random_map<R: Rng>(from: usize, to: usize, rng: &mut R) -> Result<FiniteMap> {
    FiniteMap::new((0..from).map(|_| rng.gen_range(0..to)).collect(), to)
}

fn gamma_set(s: &Space, t: &SemifilterTable) -> Result<Vec<QFunction<Level>>> {
    s.gamma(t)
}

/// Runs every naturality check. The bounded checks need an integral chain
/// and are skipped otherwise.
pub fn check_naturality(q: &FiniteQuantale, config: &NaturalityConfig) -> Result<Report> {
    let plain = Lab::new(q, Variant::Plain, config.max_size)?;
    let bounded = if q.is_integral() && q.is_chain() {
        Some(Lab::new(q, Variant::Bounded, config.max_size)?)
    } else {
        None
    };
    let k = q.unit();
    let mut report = Report::default();
    report.fact("seed", config.seed.to_string());
    report.fact("samples", config.samples.to_string());

    // Exhaustive parts.
    for a in 0..=config.max_size {
        let s = plain.space(a)?;
        for x in 0..a {
            let expect: Vec<QFunction<Level>> =
                s.functions().iter().filter(|l| q.leq(&k, l.at(x))).cloned().collect();
            let got = gamma_set(s, &plain.build_d(a)?[x])?;
            report.check_mut("gamma of d is the principal prefilter").record(got == expect, || {
                format!("|X| = {a}, x = {x}")
            });
            if let Some(b) = &bounded {
                let expect: Vec<QFunction<Level>> =
                    expect.iter().filter(|l| is_bounded_function(q, l)).cloned().collect();
                let got = gamma_set(s, &b.build_d(a)?[x])?;
                report
                    .check_mut("gamma of bounded d is the bounded principal prefilter")
                    .record(got == expect, || format!("|X| = {a}, x = {x}"));
            }
        }
        for t in s.enumerate(Require::Conical)? {
            let c = s.conical_coreflection(&t)?;
            report.check_mut("coreflection fixes conical tables").record(c == t, || {
                format!("|X| = {a}: {} goes to {}", show_table(q, &t), show_table(q, &c))
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.samples {
        let a = rng.gen_range(1..=config.max_size);
        let b = rng.gen_range(1..=config.max_size);
        let m = rng.gen_range(1..=config.max_size);
        let sa = plain.space(a)?;
        let sb = plain.space(b)?;
        let sm = plain.space(m)?;
        let f = random_map(a, b, &mut rng)?;

        // n by the membership formula against Γ ∘ n ∘ (Λ * Λ).
        let fs = (0..m).map(|_| random_basis(q, a, &mut rng)).collect::<Result<Vec<_>>>()?;
        let cf = random_basis(q, m, &mut rng)?;
        let universe = fs.iter().map(|fi| sa.lambda_of(fi)).collect::<Result<Vec<_>>>()?;
        let n_table = plain.build_n(a, &universe, &sm.lambda_of(&cf)?)?;
        let mut formula = Vec::new();
        for l in sa.functions() {
            let tilde = QFunction::new(fs.iter().map(|fi| fi.lambda_eval(q, l)).collect::<Result<Vec<_>>>()?);
            if cf.saturation_member(q, &tilde)? {
                formula.push(l.clone());
            }
        }
        let got = gamma_set(sa, &n_table)?;
        report.check_mut("n formula matches gamma of n").record(got == formula, || {
            format!("|X| = {a}, family of {m}: formula gives {} functions, gamma gives {}", formula.len(), got.len())
        });

        if let Some(bl) = &bounded {
            let fs_b = fs.iter().map(|fi| bounded_coreflection(q, fi)).collect::<Result<Vec<_>>>()?;
            let cf_b = bounded_coreflection(q, &cf)?;
            let universe_b = fs_b.iter().map(|fi| sa.lambda_of(fi)).collect::<Result<Vec<_>>>()?;
            let nb = bl.build_n(a, &universe_b, &sm.lambda_of(&cf_b)?)?;
            let mut formula = Vec::new();
            for l in sa.functions() {
                if !is_bounded_function(q, l) {
                    continue;
                }
                let tilde =
                    QFunction::new(fs_b.iter().map(|fi| fi.lambda_eval(q, l)).collect::<Result<Vec<_>>>()?);
                if cf_b.saturation_member(q, &tilde)? {
                    formula.push(l.clone());
                }
            }
            let got = gamma_set(sa, &nb)?;
            report.check_mut("bounded n formula matches gamma of bounded n").record(got == formula, || {
                format!("|X| = {a}, family of {m}: formula gives {} functions, gamma gives {}", formula.len(), got.len())
            });
        }

        // Λ commutes with images of prefilters.
        let fb = random_basis(q, a, &mut rng)?;
        let img = fb.image(&f)?;
        let members: Vec<&QFunction<Level>> =
            sb.functions().iter().filter(|nu| img.member(q, nu).unwrap_or(false)).collect();
        for mu in sb.functions() {
            let direct = fb.lambda_eval(q, &precompose(&f, mu)?)?;
            let mut via = q.bottom();
            for nu in &members {
                via = q.join(&via, &sub(q, nu, mu)?);
            }
            report.check_mut("lambda commutes with images").record(direct == via, || {
                format!("f = {:?}, mu = {}", f.targets(), show_levels(q, mu.values()))
            });
        }

        // Squares for n and the units.
        let u_len = rng.gen_range(1..=config.max_size);
        for (lab, bounded_image, name) in [
            (Some(&plain), false, "n square commutes"),
            (bounded.as_ref(), true, "tilde n square commutes"),
        ] {
            let Some(lab) = lab else { continue };
            let universe = (0..u_len).map(|_| lab.sample(a, &mut rng)).collect::<Result<Vec<_>>>()?;
            let outer = lab.sample(u_len, &mut rng)?;
            let lhs = image_semifilter(sa, sb, &f, &lab.build_n(a, &universe, &outer)?, bounded_image)?;
            let pushed = universe
                .iter()
                .map(|u| image_semifilter(sa, sb, &f, u, bounded_image))
                .collect::<Result<Vec<_>>>()?;
            let rhs = lab.build_n(b, &pushed, &outer)?;
            report.check_mut(name).record(lhs == rhs, || {
                format!(
                    "f = {:?}, outer = {}: {} vs {}",
                    f.targets(),
                    show_table(q, &outer),
                    show_table(q, &lhs),
                    show_table(q, &rhs)
                )
            });
            let dx = lab.build_d(a)?;
            let dy = lab.build_d(b)?;
            for x in 0..a {
                let pushed = image_semifilter(sa, sb, &f, &dx[x], bounded_image)?;
                report
                    .check_mut(if bounded_image { "bounded d is natural" } else { "d is natural" })
                    .record(pushed == dy[f.apply(x)], || format!("f = {:?}, x = {x}", f.targets()));
            }
        }

        if bounded.is_some() {
            let t = plain.sample(a, &mut rng)?;
            let lhs = image_semifilter(sa, sb, &f, &sa.theta(&t)?, true)?;
            let rhs = sb.theta(&image_semifilter(sa, sb, &f, &t, false)?)?;
            report.check_mut("theta square commutes").record(lhs == rhs, || {
                format!("f = {:?}, T = {}", f.targets(), show_table(q, &t))
            });
        }
    }
    if bounded.is_none() {
        report.fact("bounded checks", "skipped: carrier is not an integral chain");
    }
    Ok(report)
}
