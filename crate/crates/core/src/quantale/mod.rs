//! Commutative unital quantales: continuous t-norms on `[0, 1]` and finite
//! quantales given by tables.

mod finite;
mod tnorm;

pub use finite::{
    check_quantale_axioms, AxiomReport, AxiomViolation, FiniteQuantale, LatticeTables, Level,
    QuantaleTable,
};
pub use tnorm::{Block, BlockKind, ConditionS, Jump, TNorm};

/// Lattice and monoid operations of a commutative unital quantale.
///
/// `residuum(x, y)` is the largest `z` with `tensor(x, z) <= y`.
pub trait Quantale {
    type Elem: Clone + Eq + core::fmt::Debug;

    fn tensor(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn residuum(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool;
    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn meet(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn bottom(&self) -> Self::Elem;
    fn top(&self) -> Self::Elem;
    fn unit(&self) -> Self::Elem;

    fn is_integral(&self) -> bool {
        self.unit() == self.top()
    }

    /// Join of a finite family; bottom when empty.
    fn join_all<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.bottom(), |acc, x| self.join(&acc, x))
    }

    /// Meet of a finite family; top when empty.
    fn meet_all<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.top(), |acc, x| self.meet(&acc, x))
    }
}
