//! Semifilters on `[0, 1]` given by formulas, evaluated on a catalog of
//! functions.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::{max, min};
use core::fmt;

use num_traits::{One, Zero};

use super::descriptor::{sub_bounds, Bounds, FunctionDescriptor};
use super::expr::Region;
use crate::quantale::TNorm;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolicSemifilter {
    /// `μ ↦ c → inf μ`, the semifilter generated by the constant `c`.
    Threshold(Rational),
    /// `μ ↦ liminf_m μ(1/m)`, generated by the tail sets `A_n`.
    Tail,
    /// `μ ↦ μ(x)`.
    Point(Rational),
    /// `μ ↦ c → F(μ)`.
    Residuated(Rational, Box<SymbolicSemifilter>),
    /// Largest conical semifilter below `F`:
    /// `μ ↦ sup { sub(ν, μ) : F(ν) = 1 }`.
    Coreflected(Box<SymbolicSemifilter>),
}

impl SymbolicSemifilter {
    pub fn residuated(c: Rational, inner: SymbolicSemifilter) -> Self {
        SymbolicSemifilter::Residuated(c, Box::new(inner))
    }

    pub fn coreflected(inner: SymbolicSemifilter) -> Self {
        SymbolicSemifilter::Coreflected(Box::new(inner))
    }
}

impl fmt::Display for SymbolicSemifilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicSemifilter::Threshold(c) => write!(f, "threshold({c})"),
            SymbolicSemifilter::Tail => write!(f, "tail"),
            SymbolicSemifilter::Point(x) => write!(f, "point({x})"),
            SymbolicSemifilter::Residuated(c, inner) => write!(f, "{c} -> {inner}"),
            SymbolicSemifilter::Coreflected(inner) => write!(f, "coreflect({inner})"),
        }
    }
}

/// Evaluates symbolic semifilters at catalog members.
///
/// Suprema over witnesses range over the catalog, so a coreflection is only
/// bounded below by the best witness found; above, it is bounded by the
/// semifilter it coreflects. In the bounded variant the tail semifilter is
/// generated by `1_{A_n} ∨ δ` with `δ > 0` and coreflection only admits
/// witnesses with a positive infimum.
pub struct Evaluator<'a> {
    t: &'a TNorm,
    bounded: bool,
    catalog: &'a [FunctionDescriptor],
    subs: BTreeMap<(usize, usize), Bounds>,
    memo: BTreeMap<(SymbolicSemifilter, usize), Bounds>,
    qualifying: BTreeMap<SymbolicSemifilter, Vec<usize>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(t: &'a TNorm, catalog: &'a [FunctionDescriptor], bounded: bool) -> Self {
        Evaluator { t, bounded, catalog, subs: BTreeMap::new(), memo: BTreeMap::new(), qualifying: BTreeMap::new() }
    }

    pub fn catalog(&self) -> &'a [FunctionDescriptor] {
        self.catalog
    }

    pub fn sub(&mut self, nu: usize, mu: usize) -> Bounds {
        if let Some(b) = self.subs.get(&(nu, mu)) {
            return *b;
        }
        let b = sub_bounds(self.t, &self.catalog[nu], &self.catalog[mu]);
        self.subs.insert((nu, mu), b);
        b
    }

    /// Catalog members certainly sent to 1 by `f` (and bounded, in the
    /// bounded variant).
    pub fn witnesses(&mut self, f: &SymbolicSemifilter) -> Vec<usize> {
        if let Some(w) = self.qualifying.get(f) {
            return w.clone();
        }
        let catalog = self.catalog;
        let bounded = self.bounded;
        let w: Vec<usize> = (0..catalog.len())
            .filter(|&i| !bounded || catalog[i].bounded() == Some(true))
            .filter(|&i| self.eval(f, i).lo == Rational::one())
            .collect();
        self.qualifying.insert(f.clone(), w.clone());
        w
    }

    pub fn eval(&mut self, f: &SymbolicSemifilter, i: usize) -> Bounds {
        let key = (f.clone(), i);
        if let Some(b) = self.memo.get(&key) {
            return *b;
        }
        let d = &self.catalog[i];
        let t = self.t;
        let b = match f {
            SymbolicSemifilter::Threshold(c) => d.global_inf.map(|v| t.residuum_in(c, &v)),
            SymbolicSemifilter::Tail => {
                if !self.bounded || d.bounded() == Some(true) {
                    Bounds::exact(d.tail_liminf)
                } else {
                    Bounds { lo: Rational::zero(), hi: d.tail_liminf }
                }
            }
            SymbolicSemifilter::Point(x) => {
                let v = if d.pinned && *x == Rational::one() {
                    Rational::one()
                } else if *x.numer() == 1 {
                    d.expr.eval(t, x, Region::Reciprocal(*x.denom() as u64))
                } else {
                    d.expr.eval(t, x, Region::Generic)
                };
                Bounds::exact(v)
            }
            SymbolicSemifilter::Residuated(c, inner) => self.eval(inner, i).map(|v| t.residuum_in(c, &v)),
            SymbolicSemifilter::Coreflected(inner) => {
                let above = self.eval(inner, i);
                let mut lo = Rational::zero();
                for nu in self.witnesses(inner) {
                    lo = max(lo, self.sub(nu, i).lo);
                    if lo == above.hi {
                        break;
                    }
                }
                Bounds { lo: min(lo, above.hi), hi: above.hi }
            }
        };
        self.memo.insert(key, b);
        b
    }
}
