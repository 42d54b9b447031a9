//! Q-valued functions on finite sets, graded inclusion `sub`, images and
//! precomposition.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::quantale::Quantale;
use crate::{Error, Result};

/// An ordered set of distinct labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSet {
    labels: Vec<String>,
}

impl FiniteSet {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Structural(alloc::format!("label {l:?} appears twice")));
            }
        }
        Ok(FiniteSet { labels })
    }

    /// `{"0", "1", ..., "n-1"}`.
    pub fn range(n: usize) -> Self {
        FiniteSet { labels: (0..n).map(|i| i.to_string()).collect() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// A total map between finite sets, stored as target indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteMap {
    targets: Vec<usize>,
    codomain: usize,
}

impl FiniteMap {
    pub fn new(targets: Vec<usize>, codomain: usize) -> Result<Self> {
        if let Some((point, &target)) = targets.iter().enumerate().find(|(_, &t)| t >= codomain) {
            return Err(Error::MapOutOfRange { point, target, codomain });
        }
        Ok(FiniteMap { targets, codomain })
    }

    pub fn identity(n: usize) -> Self {
        FiniteMap { targets: (0..n).collect(), codomain: n }
    }

    pub fn constant(domain: usize, target: usize, codomain: usize) -> Result<Self> {
        FiniteMap::new(alloc::vec![target; domain], codomain)
    }

    pub fn domain(&self) -> usize {
        self.targets.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn apply(&self, x: usize) -> usize {
        self.targets[x]
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &FiniteMap) -> Result<FiniteMap> {
        if g.domain() != self.codomain {
            return Err(Error::DomainMismatch { expected: self.codomain, found: g.domain() });
        }
        FiniteMap::new(self.targets.iter().map(|&y| g.apply(y)).collect(), g.codomain)
    }
}

/// A map `X -> Q`; the domain is `0..values.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QFunction<E> {
    values: Vec<E>,
}

impl<E: Clone + Eq> QFunction<E> {
    pub fn new(values: Vec<E>) -> Self {
        QFunction { values }
    }

    pub fn constant(n: usize, c: E) -> Self {
        QFunction { values: alloc::vec![c; n] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[E] {
        &self.values
    }

    pub fn into_values(self) -> Vec<E> {
        self.values
    }

    pub fn at(&self, x: usize) -> &E {
        &self.values[x]
    }

    pub fn map(&self, mut f: impl FnMut(&E) -> E) -> Self {
        QFunction { values: self.values.iter().map(&mut f).collect() }
    }

    fn zip(&self, other: &Self, mut f: impl FnMut(&E, &E) -> E) -> Result<Self> {
        same_domain(self, other)?;
        Ok(QFunction { values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect() })
    }

    pub fn meet<Q: Quantale<Elem = E>>(&self, q: &Q, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| q.meet(a, b))
    }

    pub fn join<Q: Quantale<Elem = E>>(&self, q: &Q, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| q.join(a, b))
    }

    /// Pointwise `p -> self(x)`.
    pub fn residuate_by<Q: Quantale<Elem = E>>(&self, q: &Q, p: &E) -> Self {
        self.map(|v| q.residuum(p, v))
    }

    /// Pointwise order.
    pub fn leq<Q: Quantale<Elem = E>>(&self, q: &Q, other: &Self) -> bool {
        self.values.len() == other.values.len()
            && self.values.iter().zip(&other.values).all(|(a, b)| q.leq(a, b))
    }

    /// Join of all values (bottom on the empty set).
    pub fn sup<Q: Quantale<Elem = E>>(&self, q: &Q) -> E {
        q.join_all(&self.values)
    }

    /// Meet of all values (top on the empty set).
    pub fn inf<Q: Quantale<Elem = E>>(&self, q: &Q) -> E {
        q.meet_all(&self.values)
    }
}

fn same_domain<E>(a: &QFunction<E>, b: &QFunction<E>) -> Result<()> {
    if a.values.len() != b.values.len() {
        return Err(Error::DomainMismatch { expected: a.values.len(), found: b.values.len() });
    }
    Ok(())
}

/// `sub(λ, μ) = ⋀_x λ(x) -> μ(x)`; top on the empty set.
pub fn sub<Q: Quantale>(q: &Q, lambda: &QFunction<Q::Elem>, mu: &QFunction<Q::Elem>) -> Result<Q::Elem> {
    same_domain(lambda, mu)?;
    Ok(sub_unchecked(q, lambda.values(), mu.values()))
}

pub(crate) fn sub_unchecked<Q: Quantale>(q: &Q, lambda: &[Q::Elem], mu: &[Q::Elem]) -> Q::Elem {
    let mut acc = q.top();
    for (a, b) in lambda.iter().zip(mu) {
        acc = q.meet(&acc, &q.residuum(a, b));
    }
    acc
}

/// `f(λ)(y) = ⋁_{f(x) = y} λ(x)`; bottom on empty fibres.
pub fn image<Q: Quantale>(q: &Q, f: &FiniteMap, lambda: &QFunction<Q::Elem>) -> Result<QFunction<Q::Elem>> {
    if lambda.len() != f.domain() {
        return Err(Error::DomainMismatch { expected: f.domain(), found: lambda.len() });
    }
    let mut out = alloc::vec![q.bottom(); f.codomain()];
    for (x, v) in lambda.values().iter().enumerate() {
        let y = f.apply(x);
        out[y] = q.join(&out[y], v);
    }
    Ok(QFunction::new(out))
}

/// `μ ∘ f`.
pub fn precompose<E: Clone + Eq>(f: &FiniteMap, mu: &QFunction<E>) -> Result<QFunction<E>> {
    if mu.len() != f.codomain() {
        return Err(Error::DomainMismatch { expected: f.codomain(), found: mu.len() });
    }
    Ok(QFunction::new(f.targets().iter().map(|&y| mu.at(y).clone()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, FiniteQuantale, Level};

    fn lv(q: &FiniteQuantale, vals: &[(i128, i128)]) -> QFunction<Level> {
        QFunction::new(vals.iter().map(|&(n, d)| q.level_of(rat(n, d)).unwrap()).collect())
    }

    #[test]
    fn sub_examples() {
        let g = FiniteQuantale::godel3();
        let l = lv(&g, &[(1, 1), (1, 2)]);
        let m = lv(&g, &[(1, 2), (1, 1)]);
        assert_eq!(g.label(sub(&g, &l, &m).unwrap()), rat(1, 2));
        assert_eq!(sub(&g, &l, &l).unwrap(), g.top());
        let empty = QFunction::new(Vec::new());
        assert_eq!(sub(&g, &empty, &empty).unwrap(), g.top());
        assert!(matches!(sub(&g, &l, &empty), Err(Error::DomainMismatch { .. })));
    }

    #[test]
    fn image_and_precompose_examples() {
        let g = FiniteQuantale::godel3();
        let f = FiniteMap::constant(2, 0, 1).unwrap();
        let l = lv(&g, &[(1, 2), (1, 1)]);
        assert_eq!(image(&g, &f, &l).unwrap(), lv(&g, &[(1, 1)]));
        let f2 = FiniteMap::new(alloc::vec![0], 2).unwrap();
        assert_eq!(image(&g, &f2, &lv(&g, &[(1, 1)])).unwrap(), lv(&g, &[(1, 1), (0, 1)]));
        let f3 = FiniteMap::new(alloc::vec![0, 0], 2).unwrap();
        assert_eq!(precompose(&f3, &lv(&g, &[(1, 2), (1, 1)])).unwrap(), lv(&g, &[(1, 2), (1, 2)]));
        assert!(matches!(FiniteMap::new(alloc::vec![0, 3], 2), Err(Error::MapOutOfRange { point: 1, .. })));
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(FiniteSet::new(alloc::vec!["a".into(), "a".into()]).is_err());
        assert_eq!(FiniteSet::range(3).position("2"), Some(2));
    }
}
