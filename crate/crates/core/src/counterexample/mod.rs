//! Symbolic refutation of associativity for conical Kleisli extension over
//! continuous t-norms on `[0, 1]`.
//!
//! Take `X = [0, 1]` and `Y = Z = {*}` collapsed into `[0, 1]`-valued
//! evaluation at functions. When the t-norm has a Łukasiewicz block `(p, q)`
//! with `p > 0` and `t ⊗ s = p` for `t, s` inside it, extending along
//! `f = threshold(t)` and `g = tail` in two orders gives different values
//! at `γ(x) = p (1 - x)`:
//!
//! * `g♯(f♯(threshold(s)))(γ) = 1`, witnessed by `γ` itself;
//! * `(g♯ ∘ f)♯(threshold(s))(γ) <= p`, because every admissible witness
//!   is eventually at least `p` along `1/m`, where the residuum into `γ`
//!   collapses to `γ(1/m) < p`.
//!
//! The first value is computed on a catalog of functions; the second is
//! bounded by a certificate for the collapse checked on the catalog.

mod descriptor;
mod expr;
mod run;
mod symbolic;

pub use descriptor::{infimum, sub_bounds, tail_liminf, Bounds, FunctionDescriptor};
pub use expr::{FnExpr, Region};
pub use run::{build_catalog, run_counterexample, Catalog};
pub use symbolic::{Evaluator, SymbolicSemifilter};

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::monad::Variant;
use crate::quantale::{Block, ConditionS};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    /// The two values were separated.
    Violation,
    /// The run could not separate them.
    NoViolationFound,
    /// The t-norm satisfies condition (S), under which the extension is
    /// associative.
    NoViolationExpected,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Violation => "VIOLATION",
            Verdict::NoViolationFound => "NO_VIOLATION_FOUND",
            Verdict::NoViolationExpected => "NO_VIOLATION_EXPECTED",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogConfig {
    /// Indices `n` of the tail functions `1_{A_n} ∨ δ`.
    pub tail_indices: Vec<u32>,
    /// 1: atoms and one operation; 2: one more operation on top.
    pub depth: u8,
    pub cap: usize,
    /// Added after the atoms, before any combination.
    pub extra: Vec<FnExpr>,
}

impl Default for CatalogConfig {
    fn default() -> Self {
        CatalogConfig { tail_indices: vec![1, 2, 3, 10], depth: 2, cap: 300, extra: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleConfig {
    pub variant: Variant,
    /// Defaults to the midpoint of the Łukasiewicz block, or 1/2.
    pub t: Option<Rational>,
    pub s: Option<Rational>,
    /// Floor of `γ` in the bounded variant; defaults to `p / 2`.
    pub epsilon: Option<Rational>,
    /// Functions are sampled at `1/m` for `m = 1..=truncation`.
    pub truncation: u64,
    pub catalog: CatalogConfig,
}

impl Default for CounterexampleConfig {
    fn default() -> Self {
        CounterexampleConfig {
            variant: Variant::Plain,
            t: None,
            s: None,
            epsilon: None,
            truncation: 1000,
            catalog: CatalogConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

/// Evidence that `v → γ(1/m) = γ(1/m)` whenever `v >= p > γ(1/m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseCertificate {
    pub p: Rational,
    pub idempotent: bool,
    /// `t > p` and `s > p`.
    pub strictly_above: bool,
    pub points_checked: u64,
    pub failures: Vec<String>,
}

impl CollapseCertificate {
    pub fn is_valid(&self) -> bool {
        self.idempotent && self.strictly_above && self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    pub requested: Variant,
    /// Differs from `requested` when the bounded variant is routed to the
    /// plain one for a t-norm isomorphic to Łukasiewicz.
    pub evaluated_as: Variant,
    pub condition_s: ConditionS,
    pub block: Option<Block>,
    pub t: Rational,
    pub s: Rational,
    pub p: Rational,
    pub epsilon: Option<Rational>,
    pub truncation: u64,
    pub catalog_size: usize,
    pub catalog_truncated: bool,
    /// Catalog members whose infimum is only known within bounds.
    pub inexact_infima: usize,
    pub claims: Vec<Claim>,
    /// `g♯(f♯(threshold(s)))(γ)`.
    pub step1: Bounds,
    /// `(g♯ ∘ f)♯(threshold(s))(γ)` on the catalog.
    pub step2: Bounds,
    /// Certified upper bound for the second value.
    pub step2_bound: Rational,
    pub certificate: Option<CollapseCertificate>,
    pub verdict: Verdict,
}
