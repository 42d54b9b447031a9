//! Q-semifilters over a finite quantale, stored as full tables on `Q^X`.
//!
//! A [`Space`] fixes the carrier and `|X|` and owns the list of all
//! functions `X -> Q` in canonical order: lexicographic in carrier index,
//! first point most significant. A [`SemifilterTable`] holds one value per
//! function in that order.

mod axioms;
mod enumerate;
mod ops;

use alloc::vec::Vec;

pub use axioms::{SemifilterReport, SemifilterViolation};
pub use enumerate::{Require, DEFAULT_BRUTE_FORCE_BUDGET, DEFAULT_NODE_BUDGET};
pub use ops::{image_semifilter, ConicalMode};

use crate::qfun::{sub_unchecked, QFunction};
use crate::quantale::{FiniteQuantale, Level, Quantale};
use crate::{Error, Result};

/// Default cap on `|Q|^|X|`.
pub const DEFAULT_SPACE_BUDGET: usize = 19_683;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemifilterTable {
    arity: usize,
    values: Vec<Level>,
}

impl SemifilterTable {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[Level] {
        &self.values
    }

    pub fn get(&self, index: usize) -> Level {
        self.values[index]
    }
}

/// Tri-state flag for [`Kind`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flag {
    Yes,
    No,
    Unknown,
}

impl From<bool> for Flag {
    fn from(b: bool) -> Self {
        if b {
            Flag::Yes
        } else {
            Flag::No
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Kind {
    pub filter: Flag,
    pub conical: Flag,
    pub bounded: Flag,
}

/// All functions `X -> Q` for a fixed finite quantale and `|X|`.
#[derive(Clone, Debug)]
pub struct Space {
    q: FiniteQuantale,
    arity: usize,
    funcs: Vec<QFunction<Level>>,
}

impl Space {
    pub fn new(q: &FiniteQuantale, arity: usize) -> Result<Self> {
        Self::with_budget(q, arity, DEFAULT_SPACE_BUDGET)
    }

    pub fn with_budget(q: &FiniteQuantale, arity: usize, budget: usize) -> Result<Self> {
        let n = q.size() as u128;
        let size = u32::try_from(arity).ok().and_then(|a| n.checked_pow(a)).unwrap_or(u128::MAX);
        if size > budget as u128 {
            return Err(Error::Budget { what: "function space Q^X", needed: size, budget: budget as u128 });
        }
        let size = size as usize;
        let funcs = (0..size).map(|i| decode(q.size(), arity, i)).collect();
        Ok(Space { q: q.clone(), arity, funcs })
    }

    pub fn quantale(&self) -> &FiniteQuantale {
        &self.q
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `|Q|^|X|`.
    pub fn size(&self) -> usize {
        self.funcs.len()
    }

    pub fn functions(&self) -> &[QFunction<Level>] {
        &self.funcs
    }

    pub fn function(&self, index: usize) -> &QFunction<Level> {
        &self.funcs[index]
    }

    pub fn index_of(&self, lambda: &QFunction<Level>) -> Result<usize> {
        if lambda.len() != self.arity {
            return Err(Error::DomainMismatch { expected: self.arity, found: lambda.len() });
        }
        Ok(self.index_of_values(lambda.values()))
    }

    pub(crate) fn index_of_values(&self, values: &[Level]) -> usize {
        let n = self.q.size();
        values.iter().fold(0, |acc, v| acc * n + v.index())
    }

    pub fn constant_index(&self, c: Level) -> usize {
        let n = self.q.size();
        (0..self.arity).fold(0, |acc, _| acc * n + c.index())
    }

    pub(crate) fn sub_idx(&self, a: usize, b: usize) -> Level {
        sub_unchecked(&self.q, self.funcs[a].values(), self.funcs[b].values())
    }

    pub(crate) fn meet_idx(&self, a: usize, b: usize) -> usize {
        let n = self.q.size();
        self.funcs[a]
            .values()
            .iter()
            .zip(self.funcs[b].values())
            .fold(0, |acc, (x, y)| acc * n + self.q.meet(x, y).index())
    }

    /// Index of `p -> λ`.
    pub(crate) fn residuate_idx(&self, p: Level, a: usize) -> usize {
        let n = self.q.size();
        self.funcs[a].values().iter().fold(0, |acc, x| acc * n + self.q.residuum(&p, x).index())
    }

    pub fn table(&self, values: Vec<Level>) -> Result<SemifilterTable> {
        if values.len() != self.size() {
            return Err(Error::TableSize { expected: self.size(), found: values.len() });
        }
        if let Some(v) = values.iter().find(|v| v.index() >= self.q.size()) {
            return Err(Error::Structural(alloc::format!("table value index {} is outside the carrier", v.0)));
        }
        Ok(SemifilterTable { arity: self.arity, values })
    }

    pub fn table_from_fn(&self, mut f: impl FnMut(&QFunction<Level>) -> Level) -> SemifilterTable {
        SemifilterTable { arity: self.arity, values: self.funcs.iter().map(&mut f).collect() }
    }

    pub fn eval(&self, t: &SemifilterTable, lambda: &QFunction<Level>) -> Result<Level> {
        self.check(t)?;
        Ok(t.values[self.index_of(lambda)?])
    }

    pub(crate) fn check(&self, t: &SemifilterTable) -> Result<()> {
        if t.arity != self.arity {
            return Err(Error::DomainMismatch { expected: self.arity, found: t.arity });
        }
        if t.values.len() != self.size() {
            return Err(Error::TableSize { expected: self.size(), found: t.values.len() });
        }
        Ok(())
    }

    /// Pointwise order of tables.
    pub fn table_leq(&self, a: &SemifilterTable, b: &SemifilterTable) -> bool {
        a.values.len() == b.values.len() && a.values.iter().zip(&b.values).all(|(x, y)| self.q.leq(x, y))
    }

    pub fn classify(&self, t: &SemifilterTable) -> Result<Kind> {
        let report = self.check_axioms(t, true)?;
        let filter = report.is_clean().into();
        let conical = self.is_conical(t, ConicalMode::Definition)?.into();
        let bounded = if self.q.is_integral() { self.is_bounded(t)?.into() } else { Flag::Unknown };
        Ok(Kind { filter, conical, bounded })
    }
}

fn decode(n: usize, arity: usize, mut index: usize) -> QFunction<Level> {
    let mut values = alloc::vec![Level(0); arity];
    for slot in values.iter_mut().rev() {
        *slot = Level((index % n) as u8);
        index /= n;
    }
    QFunction::new(values)
}
