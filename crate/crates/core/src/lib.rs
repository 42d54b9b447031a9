#![no_std]
//! Exact computation with quantale-valued filters.
//!
//! The crate covers three layers:
//!
//! * [`quantale`]: continuous t-norms on `[0, 1]` given as ordinal sums with
//!   rational block endpoints, and finite quantales given by tables. Both
//!   implement the [`Quantale`] trait, with exact residuation.
//! * [`qfun`], [`prefilter`] and [`semifilter`]: Q-valued functions on finite
//!   sets, prefilters with finite bases, and Q-semifilters stored as full
//!   tables over a finite quantale.
//! * [`monad`] and [`counterexample`]: the conical (filter, bounded) Kleisli
//!   structure, law checking against brute-force and classical oracles, and
//!   the symbolic evaluation used to refute associativity over `[0, 1]`.
//!
//! Everything is exact: values are rationals (or carrier indices for finite
//! quantales) and there is no floating point anywhere.

extern crate alloc;

pub mod counterexample;
mod error;
pub mod monad;
pub mod prefilter;
pub mod qfun;
pub mod quantale;
pub mod rational;
pub mod semifilter;

pub use error::{Error, Result};
pub use quantale::{FiniteQuantale, Level, Quantale, TNorm};
pub use rational::{rat, Rational};
