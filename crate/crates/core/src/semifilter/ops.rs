use alloc::vec::Vec;

use super::{SemifilterTable, Space};
use crate::prefilter::{is_bounded_function, PrefilterBasis};
use crate::qfun::{FiniteMap, QFunction};
use crate::quantale::{Level, Quantale};
use crate::{Error, Result};

/// How [`Space::is_conical`] decides conicality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConicalMode {
    /// `T` is a fixed point of `Λ ∘ Γ`.
    Definition,
    /// `T(λ) = ⋁ { p : T(p -> λ) >= k }` for all `λ`.
    SupCriterion,
    /// `T(p -> λ) = p -> T(λ)` for all `p`, `λ`. Needs every `p -> (-)` to
    /// preserve directed joins.
    ResiduumCriterion,
    /// `T(p -> λ) >= k` whenever `p << T(λ)`.
    WayBelowCriterion,
}

impl ConicalMode {
    pub const ALL: [ConicalMode; 4] =
        [ConicalMode::Definition, ConicalMode::SupCriterion, ConicalMode::ResiduumCriterion, ConicalMode::WayBelowCriterion];
}

/// Carriers up to this size get the directed-join hypothesis checked
/// subset by subset; larger finite ones satisfy it because a finite directed
/// set contains its join.
const DIRECTED_CHECK_LIMIT: usize = 12;

impl Space {
    /// `e(x)(λ) = λ(x)`.
    pub fn unit_e(&self, x: usize) -> Result<SemifilterTable> {
        if x >= self.arity {
            return Err(Error::Precondition(alloc::format!(
                "point {x} is not in a domain of size {}",
                self.arity
            )));
        }
        Ok(self.table_from_fn(|l| *l.at(x)))
    }

    pub(crate) fn gamma_indices(&self, t: &SemifilterTable) -> Vec<usize> {
        let k = self.q.unit();
        (0..self.size()).filter(|&i| self.q.leq(&k, &t.values[i])).collect()
    }

    /// `Γ(T) = {λ : T(λ) >= k}`.
    pub fn gamma(&self, t: &SemifilterTable) -> Result<Vec<QFunction<Level>>> {
        self.check(t)?;
        Ok(self.gamma_indices(t).into_iter().map(|i| self.funcs[i].clone()).collect())
    }

    /// Minimal elements of a set of function indices.
    fn minimal_indices(&self, set: &[usize]) -> Vec<usize> {
        set.iter()
            .copied()
            .filter(|&a| {
                !set.iter().any(|&b| b != a && self.funcs[b].leq(&self.q, &self.funcs[a]))
            })
            .collect()
    }

    /// `λ ↦ ⋁_{μ ∈ set} sub(μ, λ)`.
    pub(crate) fn lambda_of_indices(&self, set: &[usize]) -> SemifilterTable {
        let gens = self.minimal_indices(set);
        let q = &self.q;
        let values = (0..self.size())
            .map(|l| gens.iter().fold(q.bottom(), |acc, &m| q.join(&acc, &self.sub_idx(m, l))))
            .collect();
        SemifilterTable { arity: self.arity, values }
    }

    pub fn lambda_of(&self, f: &PrefilterBasis<Level>) -> Result<SemifilterTable> {
        if f.domain() != self.arity {
            return Err(Error::DomainMismatch { expected: self.arity, found: f.domain() });
        }
        let idx: Vec<usize> = f.basis().iter().map(|b| self.index_of_values(b.values())).collect();
        Ok(self.lambda_of_indices(&idx))
    }

    /// The join formula over an arbitrary set of functions.
    pub fn lambda_of_set(&self, set: &[QFunction<Level>]) -> Result<SemifilterTable> {
        let idx = set.iter().map(|b| self.index_of(b)).collect::<Result<Vec<_>>>()?;
        Ok(self.lambda_of_indices(&idx))
    }

    /// Largest conical semifilter below `T`: `Λ(Γ(T))`.
    pub fn conical_coreflection(&self, t: &SemifilterTable) -> Result<SemifilterTable> {
        self.check(t)?;
        Ok(self.lambda_of_indices(&self.gamma_indices(t)))
    }

    pub fn is_conical(&self, t: &SemifilterTable, mode: ConicalMode) -> Result<bool> {
        self.check(t)?;
        let q = &self.q;
        let k = q.unit();
        let v = &t.values;
        Ok(match mode {
            ConicalMode::Definition => self.conical_coreflection(t)? == *t,
            ConicalMode::SupCriterion => (0..self.size()).all(|l| {
                let sup = q
                    .levels()
                    .filter(|&p| q.leq(&k, &v[self.residuate_idx(p, l)]))
                    .fold(q.bottom(), |acc, p| q.join(&acc, &p));
                sup == v[l]
            }),
            ConicalMode::ResiduumCriterion => {
                if q.size() <= DIRECTED_CHECK_LIMIT {
                    for p in q.levels() {
                        if !q.residuum_preserves_directed_joins(p)? {
                            return Err(Error::ModeUnavailable(
                                "some p -> (-) does not preserve directed joins on this carrier",
                            ));
                        }
                    }
                }
                (0..self.size()).all(|l| {
                    q.levels().all(|p| v[self.residuate_idx(p, l)] == q.residuum(&p, &v[l]))
                })
            }
            ConicalMode::WayBelowCriterion => {
                for l in 0..self.size() {
                    for p in q.levels() {
                        if q.way_below(p, v[l])? && !q.leq(&k, &v[self.residuate_idx(p, l)]) {
                            return Ok(false);
                        }
                    }
                }
                true
            }
        })
    }

    /// Pointwise meet; the top table for an empty list.
    pub fn meet(&self, tables: &[SemifilterTable]) -> Result<SemifilterTable> {
        for t in tables {
            self.check(t)?;
        }
        let q = &self.q;
        Ok(SemifilterTable {
            arity: self.arity,
            values: (0..self.size())
                .map(|i| tables.iter().fold(q.top(), |acc, t| q.meet(&acc, &t.values[i])))
                .collect(),
        })
    }

    /// `λ ↦ p -> T(λ)`.
    pub fn residuate(&self, p: Level, t: &SemifilterTable) -> Result<SemifilterTable> {
        self.check(t)?;
        Ok(SemifilterTable {
            arity: self.arity,
            values: t.values.iter().map(|v| self.q.residuum(&p, v)).collect(),
        })
    }

    /// `λ ↦ outer(i ↦ U_i(λ))`, where `outer` is a table on functions from
    /// the index set of `universe` to `Q`.
    pub fn kowalsky_sum(&self, universe: &[SemifilterTable], outer: &SemifilterTable) -> Result<SemifilterTable> {
        for u in universe {
            self.check(u)?;
        }
        let n = self.q.size();
        let outer_size = u32::try_from(universe.len()).ok().and_then(|m| n.checked_pow(m));
        if outer.arity != universe.len() || Some(outer.values.len()) != outer_size {
            return Err(Error::DomainMismatch { expected: universe.len(), found: outer.arity });
        }
        Ok(SemifilterTable {
            arity: self.arity,
            values: (0..self.size())
                .map(|l| {
                    let idx = universe.iter().fold(0, |acc, u| acc * n + u.values[l].index());
                    outer.values[idx]
                })
                .collect(),
        })
    }

    pub(crate) fn bounded_index(&self, i: usize) -> bool {
        is_bounded_function(&self.q, &self.funcs[i])
    }

    /// `T(μ) < 1` for every unbounded `μ`.
    pub fn is_bounded(&self, t: &SemifilterTable) -> Result<bool> {
        self.check(t)?;
        if !self.q.is_integral() {
            return Err(Error::NotIntegral);
        }
        let top = self.q.top();
        Ok((0..self.size()).all(|i| self.bounded_index(i) || t.values[i] != top))
    }

    /// Largest conical bounded semifilter below `T`: `Λ` of the bounded
    /// members of `Γ(T)`.
    pub fn theta(&self, t: &SemifilterTable) -> Result<SemifilterTable> {
        self.check(t)?;
        let bounded: Vec<usize> = self.gamma_indices(t).into_iter().filter(|&i| self.bounded_index(i)).collect();
        Ok(self.lambda_of_indices(&bounded))
    }
}

/// `f(T)(μ) = T(μ ∘ f)`, followed by `θ` when `bounded`.
pub fn image_semifilter(
    from: &Space,
    to: &Space,
    f: &FiniteMap,
    t: &SemifilterTable,
    bounded: bool,
) -> Result<SemifilterTable> {
    from.check(t)?;
    if f.domain() != from.arity || f.codomain() != to.arity {
        return Err(Error::DomainMismatch { expected: from.arity, found: f.domain() });
    }
    let n = from.q.size();
    let plain = SemifilterTable {
        arity: to.arity,
        values: to
            .funcs
            .iter()
            .map(|mu| {
                let idx = f.targets().iter().fold(0, |acc, &y| acc * n + mu.at(y).index());
                t.values[idx]
            })
            .collect(),
    };
    if bounded {
        to.theta(&plain)
    } else {
        Ok(plain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, FiniteQuantale};

    fn lv(q: &FiniteQuantale, vals: &[(i128, i128)]) -> QFunction<Level> {
        QFunction::new(vals.iter().map(|&(n, d)| q.level_of(rat(n, d)).unwrap()).collect())
    }

    fn g3() -> (FiniteQuantale, Level) {
        let q = FiniteQuantale::godel3();
        let h = q.level_of(rat(1, 2)).unwrap();
        (q, h)
    }

    #[test]
    fn unit_e_examples() {
        let (q, _) = g3();
        let s1 = Space::new(&q, 1).unwrap();
        let e = s1.unit_e(0).unwrap();
        assert_eq!(e.values(), &[Level(0), Level(1), Level(2)]);
        let s2 = Space::new(&q, 2).unwrap();
        let e = s2.unit_e(0).unwrap();
        assert_eq!(q.label(s2.eval(&e, &lv(&q, &[(1, 2), (1, 1)])).unwrap()), rat(1, 2));
        assert!(s2.is_filter(&e).unwrap());
        assert!(s2.unit_e(2).is_err());
    }

    #[test]
    fn gamma_and_lambda_examples() {
        let (q, h) = g3();
        let s1 = Space::new(&q, 1).unwrap();
        let e = s1.unit_e(0).unwrap();
        assert_eq!(s1.gamma(&e).unwrap(), alloc::vec![lv(&q, &[(1, 1)])]);
        let top = s1.table_from_fn(|_| q.top());
        assert_eq!(s1.gamma(&top).unwrap().len(), 3);
        let b = PrefilterBasis::normalize(&q, 1, alloc::vec![QFunction::new(alloc::vec![h])]).unwrap();
        assert_eq!(s1.lambda_of(&b).unwrap().values(), &[Level(0), Level(2), Level(2)]);
        let s2 = Space::new(&q, 2).unwrap();
        let e = s2.unit_e(1).unwrap();
        assert_eq!(s2.lambda_of_set(&s2.gamma(&e).unwrap()).unwrap(), e);
    }

    #[test]
    fn coreflection_example() {
        let (q, h) = g3();
        let s1 = Space::new(&q, 1).unwrap();
        let t = s1.table(alloc::vec![h, h, q.top()]).unwrap();
        assert!(s1.is_semifilter(&t).unwrap());
        let c = s1.conical_coreflection(&t).unwrap();
        assert_eq!(c.values(), &[Level(0), Level(1), Level(2)]);
        for mode in ConicalMode::ALL {
            assert!(!s1.is_conical(&t, mode).unwrap());
            assert!(s1.is_conical(&c, mode).unwrap());
        }
    }

    #[test]
    fn meet_and_residuate_examples() {
        let (q, h) = g3();
        let s = Space::new(&q, 2).unwrap();
        let (ea, eb) = (s.unit_e(0).unwrap(), s.unit_e(1).unwrap());
        let m = s.meet(&[ea.clone(), eb]).unwrap();
        for l in s.functions() {
            assert_eq!(s.eval(&m, l).unwrap(), q.meet(l.at(0), l.at(1)));
        }
        assert_eq!(s.meet(core::slice::from_ref(&ea)).unwrap(), ea);
        assert_eq!(s.residuate(q.unit(), &ea).unwrap(), ea);
        assert!(s.residuate(q.bottom(), &ea).unwrap().values().iter().all(|&v| v == q.top()));
        let r = s.residuate(h, &ea).unwrap();
        assert_eq!(s.eval(&r, &lv(&q, &[(0, 1), (1, 1)])).unwrap(), q.bottom());
    }

    #[test]
    fn kowalsky_sum_of_unit_is_inner() {
        let (q, _) = g3();
        let s = Space::new(&q, 2).unwrap();
        let g = s.meet(&[s.unit_e(0).unwrap(), s.unit_e(1).unwrap()]).unwrap();
        let outer_space = Space::new(&q, 1).unwrap();
        let outer = outer_space.unit_e(0).unwrap();
        assert_eq!(s.kowalsky_sum(core::slice::from_ref(&g), &outer).unwrap(), g);
    }

    #[test]
    fn boundedness_examples() {
        let (q, h) = g3();
        let s = Space::new(&q, 2).unwrap();
        assert!(!s.is_bounded(&s.unit_e(0).unwrap()).unwrap());
        let b = PrefilterBasis::normalize(&q, 2, alloc::vec![QFunction::new(alloc::vec![h, h])]).unwrap();
        assert!(s.is_bounded(&s.lambda_of(&b).unwrap()).unwrap());
        let s1 = Space::new(&q, 1).unwrap();
        let t = s1.table(alloc::vec![h, h, q.top()]).unwrap();
        assert!(s1.is_bounded(&t).unwrap());
    }

    #[test]
    fn theta_example() {
        let (q, h) = g3();
        let s = Space::new(&q, 2).unwrap();
        let a = PrefilterBasis::normalize(&q, 2, alloc::vec![QFunction::new(alloc::vec![h, q.bottom()])]).unwrap();
        let b = PrefilterBasis::normalize(&q, 2, alloc::vec![QFunction::new(alloc::vec![h, h])]).unwrap();
        let th = s.theta(&s.lambda_of(&a).unwrap()).unwrap();
        assert_eq!(th, s.lambda_of(&b).unwrap());
        assert_eq!(s.theta(&th).unwrap(), th);
    }

    #[test]
    fn image_examples() {
        let (q, _) = g3();
        let s2 = Space::new(&q, 2).unwrap();
        let s1 = Space::new(&q, 1).unwrap();
        let e = s2.unit_e(0).unwrap();
        let id = FiniteMap::identity(2);
        assert_eq!(image_semifilter(&s2, &s2, &id, &e, false).unwrap(), e);
        let f = FiniteMap::constant(2, 0, 1).unwrap();
        let img = image_semifilter(&s2, &s1, &f, &e, false).unwrap();
        assert_eq!(img, s1.unit_e(0).unwrap());
        assert!(s1.is_conical(&img, ConicalMode::Definition).unwrap());
    }
}
