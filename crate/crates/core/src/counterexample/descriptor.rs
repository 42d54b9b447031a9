//! Finite summaries of functions on `[0, 1]`.

use alloc::vec::Vec;
use core::cmp::min;
use core::fmt;

use num_traits::{One, Zero};

use super::expr::{FnExpr, Region};
use crate::quantale::TNorm;
use crate::rational::{Rational, Series};

/// Number of pieces used when enclosing a function on an interval.
const PIECES: i128 = 16;

/// A value known to lie in `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub lo: Rational,
    pub hi: Rational,
}

impl Bounds {
    pub fn exact(v: Rational) -> Self {
        Bounds { lo: v, hi: v }
    }

    pub fn value(&self) -> Option<Rational> {
        (self.lo == self.hi).then_some(self.lo)
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Image under a monotone map.
    pub fn map(self, f: impl Fn(Rational) -> Rational) -> Self {
        Bounds { lo: f(self.lo), hi: f(self.hi) }
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "[{}, {}]", self.lo, self.hi),
        }
    }
}

/// A function together with its values at `1/m` for `m = 1..=N`, its exact
/// liminf along `1/m` and bounds on its infimum over `[0, 1]`.
///
/// A pinned function takes the value 1 at `x = 1` whatever its expression.
#[derive(Clone, Debug)]
pub struct FunctionDescriptor {
    pub expr: FnExpr,
    pub pinned: bool,
    samples: Vec<Rational>,
    pub tail_liminf: Rational,
    pub global_inf: Bounds,
}

impl FunctionDescriptor {
    pub fn new(t: &TNorm, expr: FnExpr, pinned: bool, truncation: u64) -> Self {
        let samples = (1..=truncation.max(1)).map(|m| reciprocal_value(t, &expr, pinned, m)).collect();
        let tail_liminf = tail_liminf(t, &expr);
        let global_inf = infimum(t, &expr, pinned);
        FunctionDescriptor { expr, pinned, samples, tail_liminf, global_inf }
    }

    /// Value at `1/m`, for `1 <= m <= N`.
    pub fn sample(&self, m: u64) -> Rational {
        self.samples[(m - 1) as usize]
    }

    pub fn truncation(&self) -> u64 {
        self.samples.len() as u64
    }

    /// `Some(true)` when the infimum is certainly positive, `Some(false)`
    /// when it is certainly 0.
    pub fn bounded(&self) -> Option<bool> {
        if self.global_inf.lo > Rational::zero() {
            Some(true)
        } else if self.global_inf.hi.is_zero() {
            Some(false)
        } else {
            None
        }
    }
}

fn reciprocal_value(t: &TNorm, expr: &FnExpr, pinned: bool, m: u64) -> Rational {
    if pinned && m == 1 {
        return Rational::one();
    }
    expr.eval(t, &Rational::new(1, m as i128), Region::Reciprocal(m))
}

/// `liminf_{m -> ∞} f(1/m)`, which is a limit for these shapes.
pub fn tail_liminf(t: &TNorm, expr: &FnExpr) -> Rational {
    let h = Series::linear(Rational::zero(), Rational::one());
    expr.eval(t, &h, Region::DeepTail).standard_part()
}

/// Bounds on `inf_{x ∈ [0, 1]} f(x)`.
///
/// The upper end is the least of exact values and one-sided limits at
/// candidate points; the lower end comes from interval enclosures over the
/// non-reciprocal points and the far tail, plus exact values at the
/// remaining reciprocals.
pub fn infimum(t: &TNorm, expr: &FnExpr, pinned: bool) -> Bounds {
    let one = Rational::one();
    let zero = Rational::zero();
    let last = expr.max_tail().max(2) as u64;

    let mut hi = one;
    let mut lo = one;
    for m in 1..=last {
        let v = reciprocal_value(t, expr, pinned, m);
        hi = min(hi, v);
        lo = min(lo, v);
    }

    let far = Rational::new(1, (last + 1) as i128);
    lo = min(lo, enclosure_min(t, expr, zero, far, Region::DeepTail));
    hi = min(hi, reciprocal_value(t, expr, pinned, last + 1));
    hi = min(hi, tail_liminf(t, expr));

    lo = min(lo, enclosure_min(t, expr, zero, one, Region::Generic));
    let at = |x: Rational| expr.eval(t, &x, Region::Generic);
    let limit = |c0: Rational, c1: Rational| expr.eval(t, &Series::linear(c0, c1), Region::Generic).standard_part();
    hi = min(hi, at(zero));
    hi = min(hi, limit(zero, one));
    hi = min(hi, limit(one, -one));
    for j in 1..=last as i128 {
        hi = min(hi, at(Rational::new(2, 2 * j + 1)));
    }
    for x in breakpoints(t, expr) {
        if x > zero && x < one {
            hi = min(hi, limit(x, one));
            hi = min(hi, limit(x, -one));
            if !is_reciprocal(x) {
                hi = min(hi, at(x));
            }
        }
    }
    Bounds { lo: min(lo, hi), hi }
}

fn enclosure_min(t: &TNorm, expr: &FnExpr, a: Rational, b: Rational, region: Region) -> Rational {
    let width = (b - a) / Rational::from_integer(PIECES);
    (0..PIECES)
        .map(|k| {
            let x0 = a + width * Rational::from_integer(k);
            expr.enclose(t, x0, x0 + width, region).0
        })
        .min()
        .unwrap_or_else(Rational::one)
}

/// Points where a `Gamma` in the expression crosses a constant of the
/// expression or a block endpoint.
fn breakpoints(t: &TNorm, expr: &FnExpr) -> Vec<Rational> {
    let mut levels = Vec::new();
    expr.constants(&mut levels);
    for b in t.blocks() {
        levels.extend([b.lo, b.hi]);
    }
    let mut ps = Vec::new();
    gammas(expr, &mut ps);
    let mut out = Vec::new();
    for p in ps.into_iter().filter(|p| !p.is_zero()) {
        for c in &levels {
            out.push(Rational::one() - *c / p);
        }
    }
    out.sort();
    out.dedup();
    out
}

fn gammas(expr: &FnExpr, out: &mut Vec<Rational>) {
    match expr {
        FnExpr::Gamma { p, .. } => out.push(*p),
        FnExpr::Join(a, b) | FnExpr::Meet(a, b) | FnExpr::Imp(a, b) => {
            gammas(a, out);
            gammas(b, out);
        }
        _ => {}
    }
}

fn is_reciprocal(x: Rational) -> bool {
    *x.numer() == 1 && *x.denom() >= 1
}

/// Bounds on `sub(ν, μ) = inf_x ν(x) → μ(x)`. Both descriptors must agree
/// on pinning.
pub fn sub_bounds(t: &TNorm, nu: &FunctionDescriptor, mu: &FunctionDescriptor) -> Bounds {
    debug_assert_eq!(nu.pinned, mu.pinned);
    if nu.expr == mu.expr {
        return Bounds::exact(Rational::one());
    }
    infimum(t, &FnExpr::imp(nu.expr.clone(), mu.expr.clone()), nu.pinned)
}
