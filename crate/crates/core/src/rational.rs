//! Exact scalars.
//!
//! [`Rational`] is the value type on `[0, 1]`. [`Series`] is a truncated power
//! series `c0 + c1 h + c2 h^2 + ...` in a positive infinitesimal `h`; the
//! t-norm formulas are written once against [`Scalar`] so they can be
//! evaluated both at ordinary points and along sequences tending to a point
//! from one side.

use core::cmp::Ordering;
use core::ops::{Add, Div, Mul, Sub};

use num_traits::Zero;

pub type Rational = num_rational::Ratio<i128>;

/// Shorthand for `num / den`.
pub fn rat(num: i128, den: i128) -> Rational {
    Rational::new(num, den)
}

/// Ordered field operations used by the closed-form t-norm formulas.
pub trait Scalar:
    Clone
    + Ord
    + core::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn constant(value: Rational) -> Self;
}

impl Scalar for Rational {
    fn constant(value: Rational) -> Self {
        value
    }
}

const TERMS: usize = 4;

/// Truncated series in a positive infinitesimal. Comparison is lexicographic
/// on the coefficients that are still known exactly (`prec` of them);
/// series that agree on all known coefficients compare equal.
#[derive(Clone, Debug)]
pub struct Series {
    coeffs: [Rational; TERMS],
    prec: usize,
}

impl Series {
    pub fn new(coeffs: &[Rational]) -> Self {
        let mut c = [Rational::zero(); TERMS];
        for (slot, value) in c.iter_mut().zip(coeffs) {
            *slot = *value;
        }
        Series { coeffs: c, prec: TERMS }
    }

    /// `c0 + c1 h`.
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        Series::new(&[c0, c1])
    }

    /// The limit as `h -> 0+`.
    pub fn standard_part(&self) -> Rational {
        self.coeffs[0]
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs[i]
    }

    /// Number of coefficients known exactly.
    pub fn precision(&self) -> usize {
        self.prec
    }

    fn valuation(&self) -> Option<usize> {
        (0..self.prec).find(|&i| !self.coeffs[i].is_zero())
    }
}

impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Series {}

impl PartialOrd for Series {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Series {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.prec.min(other.prec);
        for i in 0..n {
            match self.coeffs[i].cmp(&other.coeffs[i]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl Add for Series {
    type Output = Series;
    fn add(self, rhs: Series) -> Series {
        let mut c = self.coeffs;
        for (a, b) in c.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
        Series { coeffs: c, prec: self.prec.min(rhs.prec) }
    }
}

impl Sub for Series {
    type Output = Series;
    fn sub(self, rhs: Series) -> Series {
        let mut c = self.coeffs;
        for (a, b) in c.iter_mut().zip(rhs.coeffs) {
            *a -= b;
        }
        Series { coeffs: c, prec: self.prec.min(rhs.prec) }
    }
}

impl Mul for Series {
    type Output = Series;
    fn mul(self, rhs: Series) -> Series {
        let mut c = [Rational::zero(); TERMS];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate().take(TERMS - i) {
                c[i + j] += a * b;
            }
        }
        Series { coeffs: c, prec: self.prec.min(rhs.prec) }
    }
}

impl Div for Series {
    type Output = Series;
    fn div(self, rhs: Series) -> Series {
        let vd = rhs.valuation().expect("series division by zero");
        let prec = self.prec.min(rhs.prec) - vd;
        let vn = match self.valuation() {
            None => return Series { coeffs: [Rational::zero(); TERMS], prec },
            Some(v) => v,
        };
        assert!(vn >= vd, "series quotient is unbounded");
        let a: [Rational; TERMS] =
            core::array::from_fn(|i| self.coeffs.get(i + vd).copied().unwrap_or_else(Rational::zero));
        let b: [Rational; TERMS] =
            core::array::from_fn(|i| rhs.coeffs.get(i + vd).copied().unwrap_or_else(Rational::zero));
        let mut q = [Rational::zero(); TERMS];
        for k in 0..TERMS {
            let mut acc = a[k];
            for j in 1..=k {
                acc -= b[j] * q[k - j];
            }
            q[k] = acc / b[0];
        }
        Series { coeffs: q, prec }
    }
}

impl Scalar for Series {
    fn constant(value: Rational) -> Self {
        Series::new(&[value])
    }
}
