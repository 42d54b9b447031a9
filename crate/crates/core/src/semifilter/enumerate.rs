//! Exhaustive enumeration of semifilter tables.
//!
//! [`Space::enumerate`] assigns table values one function at a time, top
//! function first, and prunes with every F2/F3/F4 constraint whose
//! functions are all assigned. [`Space::enumerate_brute_force`] walks all
//! `|Q|^(|Q|^|X|)` maps and checks the axioms on each; it is the reference
//! the pruned search is tested against.

use alloc::vec::Vec;

use super::{ConicalMode, SemifilterTable, Space};
use crate::quantale::{Level, Quantale};
use crate::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;
pub const DEFAULT_BRUTE_FORCE_BUDGET: u128 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Require {
    /// F1 to F3.
    All,
    /// F1 to F4.
    Filter,
    /// F1 to F3 and conical.
    Conical,
}

struct Search<'a> {
    space: &'a Space,
    order: Vec<usize>,
    /// `sub[a * n + b]`.
    sub: Vec<Level>,
    /// F2 triples `(a, b, meet)` keyed by the position completing them.
    meets_at: Vec<Vec<(usize, usize, usize)>>,
    /// F4 bound for the function at a position, when it is constant.
    f4_at: Vec<Option<Level>>,
    f1_at: usize,
    require: Require,
    budget: u64,
    nodes: u64,
    values: Vec<Level>,
    out: Vec<SemifilterTable>,
}

impl Search<'_> {
    fn admissible(&self, t: usize, v: Level) -> bool {
        let q = &self.space.q;
        let n = self.space.size();
        let a = self.order[t];
        if t == self.f1_at && !q.leq(&q.unit(), &v) {
            return false;
        }
        if let Some(p) = self.f4_at[t] {
            if !q.leq(&v, &p) {
                return false;
            }
        }
        for &b in &self.order[..t] {
            let w = self.values[b];
            // sub(a, b) ⊗ T(a) <= T(b) and sub(b, a) ⊗ T(b) <= T(a)
            if !q.leq(&q.tensor(&self.sub[a * n + b], &v), &w) || !q.leq(&q.tensor(&self.sub[b * n + a], &w), &v) {
                return false;
            }
        }
        let val = |i: usize| if i == a { v } else { self.values[i] };
        self.meets_at[t]
            .iter()
            .all(|&(x, y, m)| q.leq(&q.meet(&val(x), &val(y)), &val(m)))
    }

    fn run(&mut self, t: usize) -> Result<()> {
        if t == self.order.len() {
            let table = SemifilterTable { arity: self.space.arity, values: self.values.clone() };
            if self.require != Require::Conical || self.space.is_conical(&table, ConicalMode::Definition)? {
                self.out.push(table);
            }
            return Ok(());
        }
        let a = self.order[t];
        for v in self.space.q.levels() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::Budget {
                    what: "semifilter search nodes",
                    needed: self.nodes as u128,
                    budget: self.budget as u128,
                });
            }
            if self.admissible(t, v) {
                self.values[a] = v;
                self.run(t + 1)?;
            }
        }
        Ok(())
    }
}

impl Space {
    pub fn enumerate(&self, require: Require) -> Result<Vec<SemifilterTable>> {
        self.enumerate_with_budget(require, DEFAULT_NODE_BUDGET)
    }

    /// All tables meeting `require`, in canonical order. Fails once more than
    /// `node_budget` partial assignments have been tried.
    pub fn enumerate_with_budget(&self, require: Require, node_budget: u64) -> Result<Vec<SemifilterTable>> {
        let q = &self.q;
        let n = self.size();
        let rank: Vec<usize> = {
            let asc = q.ascending();
            let mut r = alloc::vec![0; q.size()];
            for (i, l) in asc.iter().enumerate() {
                r[l.index()] = i;
            }
            r
        };
        let height = |i: usize| self.funcs[i].values().iter().map(|v| rank[v.index()]).sum::<usize>();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (core::cmp::Reverse(height(i)), i));
        let mut pos = alloc::vec![0; n];
        for (p, &i) in order.iter().enumerate() {
            pos[i] = p;
        }
        let mut sub = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                sub.push(self.sub_idx(a, b));
            }
        }
        let mut meets_at = alloc::vec![Vec::new(); n];
        for a in 0..n {
            for b in a + 1..n {
                let m = self.meet_idx(a, b);
                if m != a && m != b {
                    meets_at[pos[a].max(pos[b]).max(pos[m])].push((a, b, m));
                }
            }
        }
        let mut f4_at = alloc::vec![None; n];
        if require == Require::Filter {
            for p in q.levels() {
                let i = self.constant_index(p);
                // On the empty domain every constant is the same function.
                f4_at[pos[i]] = Some(match f4_at[pos[i]] {
                    Some(prev) => q.meet(&prev, &p),
                    None => p,
                });
            }
        }
        let mut search = Search {
            space: self,
            order,
            sub,
            meets_at,
            f4_at,
            f1_at: pos[self.constant_index(q.unit())],
            require,
            budget: node_budget,
            nodes: 0,
            values: alloc::vec![q.bottom(); n],
            out: Vec::new(),
        };
        search.run(0)?;
        let mut out = search.out;
        out.sort();
        Ok(out)
    }

    /// Reference enumeration over every map `Q^X -> Q`.
    pub fn enumerate_brute_force(&self, require: Require, candidate_budget: u128) -> Result<Vec<SemifilterTable>> {
        let q = &self.q;
        let n = self.size();
        let base = q.size() as u128;
        let total = u32::try_from(n).ok().and_then(|e| base.checked_pow(e)).unwrap_or(u128::MAX);
        if total > candidate_budget {
            return Err(Error::Budget { what: "brute-force candidate maps", needed: total, budget: candidate_budget });
        }
        let mut out = Vec::new();
        let mut digits = alloc::vec![0usize; n];
        for _ in 0..total {
            let t = SemifilterTable { arity: self.arity, values: digits.iter().map(|&d| Level(d as u8)).collect() };
            let ok = self.check_axioms(&t, require == Require::Filter)?.is_clean()
                && (require != Require::Conical || self.is_conical(&t, ConicalMode::Definition)?);
            if ok {
                out.push(t);
            }
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < q.size() {
                    break;
                }
                *d = 0;
            }
        }
        out.sort();
        Ok(out)
    }
}
