//! Prefilters given by finite bases.
//!
//! A basis stands for the upper set it generates. Bases are kept
//! meet-closed and antichain-reduced, and always generate `k_X`.
//! Saturations are exposed only as a membership test and a degree.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::qfun::{precompose, sub_unchecked, FiniteMap, QFunction};
use crate::quantale::{FiniteQuantale, Level, Quantale, TNorm};
use crate::{Error, Rational, Result};

pub const DEFAULT_BASIS_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefilterBasis<E> {
    domain: usize,
    basis: Vec<QFunction<E>>,
}

/// Keeps the minimal elements, dropping duplicates.
fn minimal<Q: Quantale>(q: &Q, items: Vec<QFunction<Q::Elem>>) -> Vec<QFunction<Q::Elem>> {
    let mut out: Vec<QFunction<Q::Elem>> = Vec::with_capacity(items.len());
    for (i, b) in items.iter().enumerate() {
        let dominated = items.iter().enumerate().any(|(j, c)| {
            c.leq(q, b) && (c != b || j < i)
        });
        if !dominated {
            out.push(b.clone());
        }
    }
    out
}

impl<E: Clone + Eq + core::fmt::Debug> PrefilterBasis<E> {
    /// The prefilter generated by `raw` together with `k_X`.
    pub fn normalize<Q: Quantale<Elem = E>>(q: &Q, domain: usize, raw: Vec<QFunction<E>>) -> Result<Self> {
        Self::normalize_with_cap(q, domain, raw, DEFAULT_BASIS_CAP)
    }

    pub fn normalize_with_cap<Q: Quantale<Elem = E>>(
        q: &Q,
        domain: usize,
        mut raw: Vec<QFunction<E>>,
        cap: usize,
    ) -> Result<Self> {
        if let Some(bad) = raw.iter().find(|b| b.len() != domain) {
            return Err(Error::DomainMismatch { expected: domain, found: bad.len() });
        }
        raw.push(QFunction::constant(domain, q.unit()));
        let mut basis = minimal(q, raw);
        loop {
            let mut added = Vec::new();
            for i in 0..basis.len() {
                for j in i + 1..basis.len() {
                    let m = basis[i].meet(q, &basis[j])?;
                    if !basis.iter().chain(&added).any(|b: &QFunction<E>| b.leq(q, &m)) {
                        added.push(m);
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            basis.extend(added);
            basis = minimal(q, basis);
            if basis.len() > cap {
                return Err(Error::Budget {
                    what: "meet-closed prefilter basis",
                    needed: basis.len() as u128,
                    budget: cap as u128,
                });
            }
        }
        Ok(PrefilterBasis { domain, basis })
    }

    /// `{μ : μ >= k_X}`.
    pub fn smallest<Q: Quantale<Elem = E>>(q: &Q, domain: usize) -> Self {
        PrefilterBasis { domain, basis: alloc::vec![QFunction::constant(domain, q.unit())] }
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn basis(&self) -> &[QFunction<E>] {
        &self.basis
    }

    fn check(&self, lambda: &QFunction<E>) -> Result<()> {
        if lambda.len() != self.domain {
            return Err(Error::DomainMismatch { expected: self.domain, found: lambda.len() });
        }
        Ok(())
    }

    pub fn member<Q: Quantale<Elem = E>>(&self, q: &Q, lambda: &QFunction<E>) -> Result<bool> {
        self.check(lambda)?;
        Ok(self.basis.iter().any(|b| b.leq(q, lambda)))
    }

    /// `Λ(F)(λ) = ⋁_{μ ∈ F} sub(μ, λ)`, attained on the basis.
    pub fn lambda_eval<Q: Quantale<Elem = E>>(&self, q: &Q, lambda: &QFunction<E>) -> Result<E> {
        self.check(lambda)?;
        Ok(self
            .basis
            .iter()
            .fold(q.bottom(), |acc, b| q.join(&acc, &sub_unchecked(q, b.values(), lambda.values()))))
    }

    /// Membership in the saturation: `Λ(F)(λ) >= k`.
    pub fn saturation_member<Q: Quantale<Elem = E>>(&self, q: &Q, lambda: &QFunction<E>) -> Result<bool> {
        Ok(q.leq(&q.unit(), &self.lambda_eval(q, lambda)?))
    }

    /// Every member has join at least `k`.
    pub fn is_top_filter<Q: Quantale<Elem = E>>(&self, q: &Q) -> Result<bool> {
        if !q.is_integral() {
            return Err(Error::NotIntegral);
        }
        Ok(self.basis.iter().all(|b| q.leq(&q.unit(), &b.sup(q))))
    }

    /// Image along `f: X -> Y`.
    pub fn image(&self, f: &FiniteMap) -> Result<ImagePrefilter<'_, E>> {
        if f.domain() != self.domain {
            return Err(Error::DomainMismatch { expected: self.domain, found: f.domain() });
        }
        Ok(ImagePrefilter { f: f.clone(), inner: self })
    }
}

/// `f(F) = {λ : λ ∘ f ∈ F}`, as a predicate.
#[derive(Clone, Debug)]
pub struct ImagePrefilter<'a, E> {
    f: FiniteMap,
    inner: &'a PrefilterBasis<E>,
}

impl<E: Clone + Eq + core::fmt::Debug> ImagePrefilter<'_, E> {
    pub fn member<Q: Quantale<Elem = E>>(&self, q: &Q, lambda: &QFunction<E>) -> Result<bool> {
        self.inner.member(q, &precompose(&self.f, lambda)?)
    }

    pub fn lambda_eval<Q: Quantale<Elem = E>>(&self, q: &Q, lambda: &QFunction<E>) -> Result<E> {
        self.inner.lambda_eval(q, &precompose(&self.f, lambda)?)
    }

    pub fn saturation_member<Q: Quantale<Elem = E>>(&self, q: &Q, lambda: &QFunction<E>) -> Result<bool> {
        self.inner.saturation_member(q, &precompose(&self.f, lambda)?)
    }
}

/// Bounded below by a positive constant. On the empty set every function is.
pub fn is_bounded_function<Q: Quantale>(q: &Q, lambda: &QFunction<Q::Elem>) -> bool {
    lambda.inf(q) != q.bottom()
}

/// Basis of the largest bounded prefilter inside `F`: each basis element
/// joined with the least positive constant.
pub fn bounded_coreflection(q: &FiniteQuantale, f: &PrefilterBasis<Level>) -> Result<PrefilterBasis<Level>> {
    if !q.is_chain() {
        return Err(Error::Precondition(alloc::string::String::from(
            "bounded coreflection needs a chain carrier",
        )));
    }
    let eps = q
        .least_positive()
        .ok_or_else(|| Error::Precondition(alloc::string::String::from("carrier has no positive element")))?;
    let raw = f.basis().iter().map(|b| b.map(|v| q.join(v, &eps))).collect();
    PrefilterBasis::normalize(q, f.domain(), raw)
}

/// `1/2, 1/4, ..., 1/2^20`.
pub fn default_epsilon_schedule() -> Vec<Rational> {
    (1..=20).map(|n| Rational::new(1, 1i128 << n)).collect()
}

/// The bounded coreflection over `[0, 1]` as a union of the prefilters
/// generated by `{b ∨ ε_X}`, one per `ε` of the schedule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedFamily {
    pub members: Vec<(Rational, PrefilterBasis<Rational>)>,
}

impl BoundedFamily {
    pub fn member(&self, q: &TNorm, lambda: &QFunction<Rational>) -> Result<bool> {
        for (_, b) in &self.members {
            if b.member(q, lambda)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

pub fn bounded_coreflection_tnorm(
    q: &TNorm,
    f: &PrefilterBasis<Rational>,
    schedule: &[Rational],
) -> Result<BoundedFamily> {
    let mut members = Vec::with_capacity(schedule.len());
    for &eps in schedule {
        if eps <= Rational::zero() || eps > Rational::one() {
            return Err(Error::Precondition(alloc::format!("epsilon {eps} is not in (0, 1]")));
        }
        let raw = f.basis().iter().map(|b| b.map(|v| q.join(v, &eps))).collect();
        members.push((eps, PrefilterBasis::normalize(q, f.domain(), raw)?));
    }
    Ok(BoundedFamily { members })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn lv(q: &FiniteQuantale, vals: &[(i128, i128)]) -> QFunction<Level> {
        QFunction::new(vals.iter().map(|&(n, d)| q.level_of(rat(n, d)).unwrap()).collect())
    }

    #[test]
    fn normalize_examples() {
        let g = FiniteQuantale::godel3();
        let empty = PrefilterBasis::normalize(&g, 2, Vec::new()).unwrap();
        assert_eq!(empty.basis(), &[lv(&g, &[(1, 1), (1, 1)])]);
        let f = PrefilterBasis::normalize(&g, 2, alloc::vec![lv(&g, &[(1, 1), (1, 2)]), lv(&g, &[(1, 2), (1, 1)])]).unwrap();
        assert_eq!(f.basis(), &[lv(&g, &[(1, 2), (1, 2)])]);
        let f = PrefilterBasis::normalize(&g, 2, alloc::vec![lv(&g, &[(1, 2), (1, 2)]), lv(&g, &[(1, 1), (1, 1)])]).unwrap();
        assert_eq!(f.basis(), &[lv(&g, &[(1, 2), (1, 2)])]);
        assert!(PrefilterBasis::normalize(&g, 2, alloc::vec![lv(&g, &[(1, 2)])]).is_err());
    }

    #[test]
    fn membership_examples() {
        let g = FiniteQuantale::godel3();
        let f = PrefilterBasis::normalize(&g, 2, alloc::vec![lv(&g, &[(1, 2), (1, 2)])]).unwrap();
        assert!(f.member(&g, &lv(&g, &[(1, 1), (1, 1)])).unwrap());
        assert!(f.member(&g, &lv(&g, &[(1, 1), (1, 2)])).unwrap());
        assert!(!f.member(&g, &lv(&g, &[(1, 2), (0, 1)])).unwrap());
    }

    #[test]
    fn lambda_eval_examples() {
        let g = FiniteQuantale::godel3();
        let m = FiniteQuantale::mv3();
        let fg = PrefilterBasis::normalize(&g, 1, alloc::vec![lv(&g, &[(1, 2)])]).unwrap();
        let fm = PrefilterBasis::normalize(&m, 1, alloc::vec![lv(&m, &[(1, 2)])]).unwrap();
        assert_eq!(fg.lambda_eval(&g, &lv(&g, &[(0, 1)])).unwrap(), g.bottom());
        assert_eq!(m.label(fm.lambda_eval(&m, &lv(&m, &[(0, 1)])).unwrap()), rat(1, 2));
        assert!(fm.saturation_member(&m, &lv(&m, &[(1, 2)])).unwrap());
        assert!(!fg.saturation_member(&g, &lv(&g, &[(0, 1)])).unwrap());
    }

    #[test]
    fn top_filter_examples() {
        let g = FiniteQuantale::godel3();
        assert!(PrefilterBasis::smallest(&g, 2).is_top_filter(&g).unwrap());
        let a = PrefilterBasis::normalize(&g, 2, alloc::vec![lv(&g, &[(1, 1), (0, 1)])]).unwrap();
        assert!(a.is_top_filter(&g).unwrap());
        let b = PrefilterBasis::normalize(&g, 2, alloc::vec![lv(&g, &[(1, 2), (0, 1)])]).unwrap();
        assert!(!b.is_top_filter(&g).unwrap());
    }

    #[test]
    fn bounded_coreflection_examples() {
        let g = FiniteQuantale::godel3();
        let a = PrefilterBasis::normalize(&g, 2, alloc::vec![lv(&g, &[(1, 1), (0, 1)])]).unwrap();
        let r = bounded_coreflection(&g, &a).unwrap();
        assert_eq!(r.basis(), &[lv(&g, &[(1, 1), (1, 2)])]);
        let k = PrefilterBasis::smallest(&g, 2);
        assert_eq!(bounded_coreflection(&g, &k).unwrap(), k);
    }

    #[test]
    fn bounded_family_over_unit_interval() {
        let t = TNorm::lukasiewicz();
        let f = PrefilterBasis::normalize(&t, 2, alloc::vec![QFunction::new(alloc::vec![rat(1, 1), rat(0, 1)])]).unwrap();
        let fam = bounded_coreflection_tnorm(&t, &f, &default_epsilon_schedule()).unwrap();
        assert_eq!(fam.members.len(), 20);
        assert!(fam.member(&t, &QFunction::new(alloc::vec![rat(1, 1), rat(1, 1000)])).unwrap());
        assert!(!fam.member(&t, &QFunction::new(alloc::vec![rat(1, 1), rat(0, 1)])).unwrap());
    }

    #[test]
    fn image_prefilter_example() {
        let g = FiniteQuantale::godel3();
        let f = FiniteMap::constant(2, 0, 1).unwrap();
        let b = PrefilterBasis::normalize(&g, 2, alloc::vec![lv(&g, &[(1, 2), (1, 2)])]).unwrap();
        assert!(b.image(&f).unwrap().member(&g, &lv(&g, &[(1, 2)])).unwrap());
        let zero = PrefilterBasis::normalize(&g, 2, alloc::vec![lv(&g, &[(0, 1), (0, 1)])]).unwrap();
        assert!(zero.image(&f).unwrap().member(&g, &lv(&g, &[(0, 1)])).unwrap());
    }
}
