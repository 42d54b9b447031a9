//! Proper filters on small finite sets, implemented directly on families of
//! subsets, and their comparison with Boolean-valued conical filters.

use alloc::format;
use alloc::vec::Vec;

use super::{Lab, Report, Variant};
use crate::quantale::{FiniteQuantale, Level, Quantale};
use crate::semifilter::{Require, SemifilterTable, Space};
use crate::{Error, Result};

pub type ClassicalReport = Report;

/// Largest set size the bit-set encoding supports.
const MAX_POINTS: usize = 4;

/// A proper filter on `{0, ..., n-1}`: bit `A` of `members` is set iff the
/// subset with bit mask `A` belongs to the filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProperFilter {
    pub n: usize,
    pub members: u32,
}

impl ProperFilter {
    pub fn contains(&self, subset: usize) -> bool {
        self.members & (1 << subset) != 0
    }

    /// `{A : x ∈ A}`.
    pub fn principal(n: usize, x: usize) -> Self {
        let members = (0..1usize << n).filter(|a| a & (1 << x) != 0).fold(0, |m, a| m | 1 << a);
        ProperFilter { n, members }
    }

    fn is_proper_filter(n: usize, members: u32) -> bool {
        let subsets = 1usize << n;
        let full = subsets - 1;
        let has = |a: usize| members & (1 << a) != 0;
        has(full)
            && !has(0)
            && (0..subsets).all(|a| {
                !has(a) || (0..subsets).all(|b| (a & b != a || has(b)) && (!has(b) || has(a & b)))
            })
    }

    /// Every proper filter, by checking every family of subsets.
    pub fn all(n: usize) -> Result<Vec<Self>> {
        if n > MAX_POINTS {
            return Err(Error::Budget { what: "classical filter set size", needed: n as u128, budget: MAX_POINTS as u128 });
        }
        let families = 1u64 << (1usize << n);
        Ok((0..families)
            .map(|m| m as u32)
            .filter(|&m| Self::is_proper_filter(n, m))
            .map(|members| ProperFilter { n, members })
            .collect())
    }

    /// `h♯(F) = {B : {x : B ∈ h(x)} ∈ F}` for `h: X -> filters on Y`.
    pub fn extend(h: &[ProperFilter], m: usize, f: &ProperFilter) -> Self {
        let members = (0..1usize << m)
            .filter(|&b| {
                let pre = (0..h.len()).filter(|&x| h[x].contains(b)).fold(0, |acc, x| acc | 1 << x);
                f.contains(pre)
            })
            .fold(0, |acc, b| acc | 1 << b);
        ProperFilter { n: m, members }
    }
}

fn support(s: &Space, index: usize) -> usize {
    let top = s.quantale().top();
    s.function(index)
        .values()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == top)
        .fold(0, |acc, (x, _)| acc | 1 << x)
}

/// The family `{support(λ) : T(λ) = 1}`.
pub fn table_to_family(s: &Space, t: &SemifilterTable) -> ProperFilter {
    let top = s.quantale().top();
    let members = (0..s.size())
        .filter(|&i| t.get(i) == top)
        .fold(0, |acc, i| acc | 1 << support(s, i));
    ProperFilter { n: s.arity(), members }
}

pub fn family_to_table(s: &Space, f: &ProperFilter) -> SemifilterTable {
    let q = s.quantale();
    let values: Vec<Level> = (0..s.size())
        .map(|i| if f.contains(support(s, i)) { q.top() } else { q.bottom() })
        .collect();
    s.table(values).expect("one value per function")
}

/// Compares the Boolean filter monad with the classical one on sets of size
/// at most `max_n`: the filters themselves, the units and every Kleisli
/// extension.
pub fn classical_check(max_n: usize) -> Result<ClassicalReport> {
    let q = FiniteQuantale::boolean();
    let lab = Lab::new(&q, Variant::Filter, max_n)?;
    let mut report = Report::default();
    let mut filters = Vec::new();
    for n in 0..=max_n {
        let s = lab.space(n)?;
        let classical = ProperFilter::all(n)?;
        let mut ours: Vec<ProperFilter> = s.enumerate(Require::Filter)?.iter().map(|t| table_to_family(s, t)).collect();
        ours.sort();
        report.check_mut("filters match proper filters").record(ours == classical, || {
            format!("|X| = {n}: {} tables vs {} proper filters", ours.len(), classical.len())
        });
        let all = s.enumerate(Require::All)?;
        for t in &all {
            let conical = s.is_conical(t, crate::semifilter::ConicalMode::Definition)?;
            report.check_mut("every Boolean semifilter is conical").record(conical, || format!("|X| = {n}: {:?}", t.values()));
        }
        for (x, d) in lab.build_d(n)?.iter().enumerate() {
            let ok = table_to_family(s, d) == ProperFilter::principal(n, x);
            report.check_mut("unit is the principal filter").record(ok, || format!("|X| = {n}, x = {x}"));
        }
        filters.push(classical);
    }
    for n in 1..=max_n {
        for m in 1..=max_n {
            let (fx, fy) = (&filters[n], &filters[m]);
            let (sx, sy) = (lab.space(n)?, lab.space(m)?);
            let mut choice = alloc::vec![0usize; n];
            loop {
                let h: Vec<ProperFilter> = choice.iter().map(|&c| fy[c]).collect();
                let ht: Vec<SemifilterTable> = h.iter().map(|f| family_to_table(sy, f)).collect();
                for f in fx {
                    let ours = table_to_family(sy, &lab.kleisli_extend(&ht, m, &family_to_table(sx, f))?);
                    let theirs = ProperFilter::extend(&h, m, f);
                    report.check_mut("Kleisli extension matches").record(ours == theirs, || {
                        format!("|X| = {n}, |Y| = {m}, h = {:?}, F = {:#b}", choice, f.members)
                    });
                }
                let mut i = 0;
                while i < n {
                    choice[i] += 1;
                    if choice[i] < fy.len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proper_filters_on_small_sets_are_principal() {
        assert_eq!(ProperFilter::all(0).unwrap().len(), 0);
        assert_eq!(ProperFilter::all(2).unwrap().len(), 3);
        assert_eq!(ProperFilter::all(3).unwrap().len(), 7);
    }

    #[test]
    fn classical_extension_of_units() {
        let units: Vec<ProperFilter> = (0..2).map(|x| ProperFilter::principal(2, x)).collect();
        for f in ProperFilter::all(2).unwrap() {
            assert_eq!(ProperFilter::extend(&units, 2, &f), f);
        }
    }
}
