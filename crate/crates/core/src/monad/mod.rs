//! The conical semifilter monad over a finite quantale, in three variants,
//! and the checks run against it.
//!
//! Second-level semifilters are never tabulated over all conical
//! semifilters. [`Lab::build_n`] takes a declared finite family of inner
//! tables (the universe) and an outer table on functions from the family's
//! index set to `Q`; [`Lab::kleisli_extend`] uses the family of values of
//! the map being extended, which is all the Kowalsky sum ever evaluates.

mod classical;
mod laws;
mod naturality;
mod report;

use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

pub use classical::{classical_check, ClassicalReport, ProperFilter};
pub use laws::{
    check_monad_laws, merge_outcomes, run_scenario, scenario_outcome, KleisliScenario, LawConfig, LawReport,
    ScenarioOutcome,
};
pub use naturality::{check_naturality, NaturalityConfig};
pub use report::{show_levels, show_table, Check, Report};

use crate::prefilter::PrefilterBasis;
use crate::qfun::{FiniteMap, QFunction};
use crate::quantale::{FiniteQuantale, Level, Quantale};
use crate::semifilter::{image_semifilter, ConicalMode, SemifilterTable, Space};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Conical semifilters.
    Plain,
    /// Conical semifilters that also satisfy F4.
    Filter,
    /// Conical bounded semifilters.
    Bounded,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::Filter => "filter",
            Variant::Bounded => "bounded",
        }
    }

    fn requirement(self) -> &'static str {
        match self {
            Variant::Plain => "conical",
            Variant::Filter => "a conical filter",
            Variant::Bounded => "conical and bounded",
        }
    }
}

/// A finite quantale, a variant and the function spaces up to some `|X|`.
#[derive(Clone, Debug)]
pub struct Lab {
    q: FiniteQuantale,
    variant: Variant,
    spaces: Vec<Space>,
}

impl Lab {
    pub fn new(q: &FiniteQuantale, variant: Variant, max_arity: usize) -> Result<Self> {
        if variant != Variant::Plain && !q.is_integral() {
            return Err(Error::NotIntegral);
        }
        let spaces = (0..=max_arity).map(|a| Space::new(q, a)).collect::<Result<Vec<_>>>()?;
        Ok(Lab { q: q.clone(), variant, spaces })
    }

    pub fn quantale(&self) -> &FiniteQuantale {
        &self.q
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn max_arity(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn space(&self, arity: usize) -> Result<&Space> {
        self.spaces.get(arity).ok_or(Error::Budget {
            what: "function space arity",
            needed: arity as u128,
            budget: self.max_arity() as u128,
        })
    }

    /// Whether `t` is an object of the variant's monad.
    pub fn admissible(&self, t: &SemifilterTable) -> Result<bool> {
        let s = self.space(t.arity())?;
        if !s.is_semifilter(t)? || !s.is_conical(t, ConicalMode::Definition)? {
            return Ok(false);
        }
        Ok(match self.variant {
            Variant::Plain => true,
            Variant::Filter => s.is_filter(t)?,
            Variant::Bounded => s.is_bounded(t)?,
        })
    }

    /// The coreflection onto the variant's objects.
    pub fn coreflect(&self, t: &SemifilterTable) -> Result<SemifilterTable> {
        let s = self.space(t.arity())?;
        match self.variant {
            Variant::Plain | Variant::Filter => s.conical_coreflection(t),
            Variant::Bounded => s.theta(t),
        }
    }

    /// The unit at every point of an `arity`-element set.
    pub fn build_d(&self, arity: usize) -> Result<Vec<SemifilterTable>> {
        let s = self.space(arity)?;
        (0..arity)
            .map(|x| {
                let e = s.unit_e(x)?;
                match self.variant {
                    Variant::Bounded => s.theta(&e),
                    _ => Ok(e),
                }
            })
            .collect()
    }

    /// The multiplication at `universe`: coreflection of the Kowalsky sum.
    pub fn build_n(&self, arity: usize, universe: &[SemifilterTable], outer: &SemifilterTable) -> Result<SemifilterTable> {
        let s = self.space(arity)?;
        for (index, u) in universe.iter().enumerate() {
            if u.arity() != arity || !self.admissible(u)? {
                return Err(Error::NotAdmissible { index, required: self.variant.requirement() });
            }
        }
        self.coreflect(&s.kowalsky_sum(universe, outer)?)
    }

    /// `h♯(T)` for `h: X -> (objects on Y)` given as one table per point of X.
    pub fn kleisli_extend(&self, h: &[SemifilterTable], to_arity: usize, t: &SemifilterTable) -> Result<SemifilterTable> {
        let from = self.space(h.len())?;
        from.check(t)?;
        let mut universe: Vec<SemifilterTable> = Vec::new();
        let mut targets = Vec::with_capacity(h.len());
        for v in h {
            let i = match universe.iter().position(|u| u == v) {
                Some(i) => i,
                None => {
                    universe.push(v.clone());
                    universe.len() - 1
                }
            };
            targets.push(i);
        }
        let pi = FiniteMap::new(targets, universe.len())?;
        let outer = image_semifilter(from, self.space(universe.len())?, &pi, t, false)?;
        self.build_n(to_arity, &universe, &outer)
    }

    /// `Λ` of a random meet-closed basis, coreflected into the variant.
    /// FILTER bases are resampled until every member reaches the top.
    pub fn sample<R: Rng>(&self, arity: usize, rng: &mut R) -> Result<SemifilterTable> {
        let s = self.space(arity)?;
        let q = &self.q;
        let random_fn = |rng: &mut R| -> QFunction<Level> {
            QFunction::new((0..arity).map(|_| Level(rng.gen_range(0..q.size()) as u8)).collect())
        };
        for _ in 0..32 {
            let count = rng.gen_range(1..=3);
            let mut raw: Vec<QFunction<Level>> = (0..count).map(|_| random_fn(rng)).collect();
            if self.variant == Variant::Filter && arity > 0 {
                let x = rng.gen_range(0..arity);
                for b in &mut raw {
                    *b = QFunction::new(
                        b.values().iter().enumerate().map(|(i, &v)| if i == x { q.top() } else { v }).collect(),
                    );
                }
            }
            let basis = PrefilterBasis::normalize(q, arity, raw)?;
            if self.variant == Variant::Filter && !basis.is_top_filter(q)? {
                continue;
            }
            let t = self.coreflect(&s.lambda_of(&basis)?)?;
            if self.admissible(&t)? {
                return Ok(t);
            }
        }
        Err(Error::Precondition(String::from("could not sample an admissible table")))
    }
}
