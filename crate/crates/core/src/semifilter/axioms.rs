use alloc::vec::Vec;
use core::fmt;

use super::{SemifilterTable, Space};
use crate::qfun::QFunction;
use crate::quantale::{Level, Quantale};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemifilterViolation {
    /// `T(k_X)` is not above `k`.
    F1 { value: Level },
    /// `T(λ) ∧ T(μ)` is not below `T(λ ∧ μ)`.
    F2 { lambda: QFunction<Level>, mu: QFunction<Level> },
    /// `sub(λ, μ)` is not below `T(λ) -> T(μ)`.
    F3 { lambda: QFunction<Level>, mu: QFunction<Level> },
    /// `T(p_X)` is not below `p`.
    F4 { p: Level },
}

impl fmt::Display for SemifilterViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemifilterViolation::F1 { value } => write!(f, "F1: T(k) = level {}", value.0),
            SemifilterViolation::F2 { lambda, mu } => {
                write!(f, "F2 at {:?}, {:?}", levels(lambda), levels(mu))
            }
            SemifilterViolation::F3 { lambda, mu } => {
                write!(f, "F3 at {:?}, {:?}", levels(lambda), levels(mu))
            }
            SemifilterViolation::F4 { p } => write!(f, "F4 at constant level {}", p.0),
        }
    }
}

fn levels(l: &QFunction<Level>) -> Vec<u8> {
    l.values().iter().map(|v| v.0).collect()
}

/// One witness per failed axiom.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SemifilterReport {
    pub violations: Vec<SemifilterViolation>,
}

impl SemifilterReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_f1_to_f3(&self) -> bool {
        !self.violations.iter().any(|v| !matches!(v, SemifilterViolation::F4 { .. }))
    }
}

impl Space {
    /// Checks F1 to F3, and F4 over the carrier when `require_filter`.
    pub fn check_axioms(&self, t: &SemifilterTable, require_filter: bool) -> Result<SemifilterReport> {
        self.check(t)?;
        let q = &self.q;
        let k = q.unit();
        let mut report = SemifilterReport::default();
        let v = &t.values;
        let ki = self.constant_index(k);
        if !q.leq(&k, &v[ki]) {
            report.violations.push(SemifilterViolation::F1 { value: v[ki] });
        }
        let n = self.size();
        'f2: for a in 0..n {
            for b in a + 1..n {
                if !q.leq(&q.meet(&v[a], &v[b]), &v[self.meet_idx(a, b)]) {
                    report.violations.push(SemifilterViolation::F2 {
                        lambda: self.funcs[a].clone(),
                        mu: self.funcs[b].clone(),
                    });
                    break 'f2;
                }
            }
        }
        'f3: for a in 0..n {
            for b in 0..n {
                if !q.leq(&self.sub_idx(a, b), &q.residuum(&v[a], &v[b])) {
                    report.violations.push(SemifilterViolation::F3 {
                        lambda: self.funcs[a].clone(),
                        mu: self.funcs[b].clone(),
                    });
                    break 'f3;
                }
            }
        }
        if require_filter {
            if let Some(p) = q.levels().find(|&p| !q.leq(&v[self.constant_index(p)], &p)) {
                report.violations.push(SemifilterViolation::F4 { p });
            }
        }
        Ok(report)
    }

    pub fn is_semifilter(&self, t: &SemifilterTable) -> Result<bool> {
        Ok(self.check_axioms(t, false)?.is_clean())
    }

    pub fn is_filter(&self, t: &SemifilterTable) -> Result<bool> {
        Ok(self.check_axioms(t, true)?.is_clean())
    }
}
