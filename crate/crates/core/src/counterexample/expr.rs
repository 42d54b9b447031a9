//! Functions `[0, 1] -> [0, 1]` built from a few shapes.
//!
//! The value at `x` depends on `x` only through `max(floor, p (1 - x))` and
//! on whether `x` is a reciprocal `1/m` lying in some tail set
//! `A_n = {1/m : m >= n}`. [`Region`] says which tail sets contain the
//! points being evaluated.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::cmp::{max, min};

use num_traits::One;

use crate::quantale::TNorm;
use crate::rational::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FnExpr {
    Const(Rational),
    /// `x ↦ max(floor, p (1 - x))`.
    Gamma { p: Rational, floor: Rational },
    /// 1 on `A_n`, `delta` elsewhere.
    Tail { n: u32, delta: Rational },
    Join(Box<FnExpr>, Box<FnExpr>),
    Meet(Box<FnExpr>, Box<FnExpr>),
    /// Pointwise residuum.
    Imp(Box<FnExpr>, Box<FnExpr>),
}

/// Which points an evaluation is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// Exactly `x = 1/m`.
    Reciprocal(u64),
    /// Points that are not reciprocals: every tail takes its `delta`.
    Generic,
    /// Reciprocals `1/m` with `m` beyond every tail index: every tail is 1.
    DeepTail,
}

impl FnExpr {
    pub fn join(a: FnExpr, b: FnExpr) -> FnExpr {
        FnExpr::Join(Box::new(a), Box::new(b))
    }

    pub fn meet(a: FnExpr, b: FnExpr) -> FnExpr {
        FnExpr::Meet(Box::new(a), Box::new(b))
    }

    pub fn imp(a: FnExpr, b: FnExpr) -> FnExpr {
        FnExpr::Imp(Box::new(a), Box::new(b))
    }

    /// Largest tail index used, 0 without tails.
    pub fn max_tail(&self) -> u32 {
        match self {
            FnExpr::Tail { n, .. } => *n,
            FnExpr::Join(a, b) | FnExpr::Meet(a, b) | FnExpr::Imp(a, b) => a.max_tail().max(b.max_tail()),
            _ => 0,
        }
    }

    /// Rationals appearing in the expression.
    pub fn constants(&self, out: &mut Vec<Rational>) {
        match self {
            FnExpr::Const(c) => out.push(*c),
            FnExpr::Gamma { p, floor } => out.extend([*p, *floor]),
            FnExpr::Tail { delta, .. } => out.push(*delta),
            FnExpr::Join(a, b) | FnExpr::Meet(a, b) | FnExpr::Imp(a, b) => {
                a.constants(out);
                b.constants(out);
            }
        }
    }

    pub fn is_const(&self) -> Option<Rational> {
        match self {
            FnExpr::Const(c) => Some(*c),
            _ => None,
        }
    }

    fn tail_value(n: u32, delta: Rational, region: Region) -> Rational {
        match region {
            Region::Reciprocal(m) if m >= n as u64 => Rational::one(),
            Region::Reciprocal(_) | Region::Generic => delta,
            Region::DeepTail => Rational::one(),
        }
    }

    /// Value at `x` (or along `x` when `S` is a series), for points in
    /// `region`.
    pub fn eval<S: Scalar>(&self, t: &TNorm, x: &S, region: Region) -> S {
        match self {
            FnExpr::Const(c) => S::constant(*c),
            FnExpr::Gamma { p, floor } => {
                let v = S::constant(*p) - S::constant(*p) * x.clone();
                max(S::constant(*floor), v)
            }
            FnExpr::Tail { n, delta } => S::constant(Self::tail_value(*n, *delta, region)),
            FnExpr::Join(a, b) => max(a.eval(t, x, region), b.eval(t, x, region)),
            FnExpr::Meet(a, b) => min(a.eval(t, x, region), b.eval(t, x, region)),
            FnExpr::Imp(a, b) => t.residuum_in(&a.eval(t, x, region), &b.eval(t, x, region)),
        }
    }

    /// Encloses the values on `[x0, x1]` within `region`: every value lies in
    /// the returned interval.
    pub fn enclose(&self, t: &TNorm, x0: Rational, x1: Rational, region: Region) -> (Rational, Rational) {
        match self {
            FnExpr::Const(c) => (*c, *c),
            FnExpr::Gamma { p, floor } => {
                let at = |x: Rational| max(*floor, *p - *p * x);
                (at(x1), at(x0))
            }
            FnExpr::Tail { n, delta } => {
                let v = Self::tail_value(*n, *delta, region);
                (v, v)
            }
            FnExpr::Join(a, b) => {
                let (al, ah) = a.enclose(t, x0, x1, region);
                let (bl, bh) = b.enclose(t, x0, x1, region);
                (max(al, bl), max(ah, bh))
            }
            FnExpr::Meet(a, b) => {
                let (al, ah) = a.enclose(t, x0, x1, region);
                let (bl, bh) = b.enclose(t, x0, x1, region);
                (min(al, bl), min(ah, bh))
            }
            FnExpr::Imp(a, b) => {
                let (al, ah) = a.enclose(t, x0, x1, region);
                let (bl, bh) = b.enclose(t, x0, x1, region);
                (t.residuum_in(&ah, &bl), t.residuum_in(&al, &bh))
            }
        }
    }

    /// Folds operations on two constants into a constant.
    pub fn simplify(self, t: &TNorm) -> FnExpr {
        let fold = |a: &FnExpr, b: &FnExpr, f: &dyn Fn(Rational, Rational) -> Rational| match (a.is_const(), b.is_const()) {
            (Some(x), Some(y)) => Some(FnExpr::Const(f(x, y))),
            _ => None,
        };
        let folded = match &self {
            FnExpr::Join(a, b) => fold(a, b, &|x, y| max(x, y)),
            FnExpr::Meet(a, b) => fold(a, b, &|x, y| min(x, y)),
            FnExpr::Imp(a, b) => fold(a, b, &|x, y| t.residuum_in(&x, &y)),
            _ => None,
        };
        folded.unwrap_or(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use crate::rational::Series;

    #[test]
    fn gamma_and_tail_values() {
        let t = TNorm::lukasiewicz();
        let g = FnExpr::Gamma { p: rat(1, 4), floor: rat(0, 1) };
        assert_eq!(g.eval(&t, &rat(1, 2), Region::Reciprocal(2)), rat(1, 8));
        let tail = FnExpr::Tail { n: 3, delta: rat(1, 8) };
        assert_eq!(tail.eval(&t, &rat(1, 2), Region::Reciprocal(2)), rat(1, 8));
        assert_eq!(tail.eval(&t, &rat(1, 3), Region::Reciprocal(3)), rat(1, 1));
        let h = Series::linear(rat(0, 1), rat(1, 1));
        assert_eq!(g.eval(&t, &h, Region::DeepTail).standard_part(), rat(1, 4));
    }

    #[test]
    fn enclosure_contains_values() {
        let t = TNorm::lukasiewicz();
        let e = FnExpr::imp(FnExpr::Gamma { p: rat(1, 2), floor: rat(0, 1) }, FnExpr::Const(rat(1, 4)));
        let (lo, hi) = e.enclose(&t, rat(0, 1), rat(1, 2), Region::Generic);
        for k in 0..=8 {
            let x = rat(k, 16);
            let v = e.eval(&t, &x, Region::Generic);
            assert!(lo <= v && v <= hi);
        }
    }
}
