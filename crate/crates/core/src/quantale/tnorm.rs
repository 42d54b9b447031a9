//! Continuous t-norms presented as ordinal sums of Łukasiewicz and product
//! blocks with rational endpoints. Outside every block the t-norm is `min`.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::Quantale;
use crate::rational::{Rational, Scalar, Series};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Lukasiewicz,
    Product,
}

/// A summand on `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub lo: Rational,
    pub hi: Rational,
    pub kind: BlockKind,
}

impl Block {
    pub fn new(lo: Rational, hi: Rational, kind: BlockKind) -> Self {
        Block { lo, hi, kind }
    }
}

/// Whether every summand that does not start at 0 is a product block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionS {
    Satisfied,
    /// A Łukasiewicz block starting above 0.
    Violated(Block),
}

/// Two neighbouring grid points where the residuum jumps by more than its
/// local slope allows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jump {
    pub from: (Rational, Rational),
    pub to: (Rational, Rational),
    pub jump: Rational,
    pub bound: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TNorm {
    blocks: Vec<Block>,
}

impl TNorm {
    /// `min`.
    pub fn godel() -> Self {
        TNorm { blocks: Vec::new() }
    }

    pub fn lukasiewicz() -> Self {
        TNorm { blocks: alloc::vec![Block::new(Rational::zero(), Rational::one(), BlockKind::Lukasiewicz)] }
    }

    pub fn product() -> Self {
        TNorm { blocks: alloc::vec![Block::new(Rational::zero(), Rational::one(), BlockKind::Product)] }
    }

    /// Blocks must lie in `[0, 1]`, be non-degenerate, and have disjoint
    /// interiors. They are stored sorted by left endpoint.
    pub fn ordinal_sum(mut blocks: Vec<Block>) -> Result<Self> {
        for b in &blocks {
            if b.lo >= b.hi {
                return Err(Error::InvalidBlocks(format!("block [{}, {}] is empty or reversed", b.lo, b.hi)));
            }
            if b.lo < Rational::zero() || b.hi > Rational::one() {
                return Err(Error::InvalidBlocks(format!("block [{}, {}] leaves [0, 1]", b.lo, b.hi)));
            }
        }
        blocks.sort_by_key(|b| b.lo);
        for w in blocks.windows(2) {
            if w[0].hi > w[1].lo {
                return Err(Error::InvalidBlocks(format!(
                    "blocks [{}, {}] and [{}, {}] overlap",
                    w[0].lo, w[0].hi, w[1].lo, w[1].hi
                )));
            }
        }
        Ok(TNorm { blocks })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Checks that a value lies in `[0, 1]`.
    pub fn value(&self, x: Rational) -> Result<Rational> {
        if x < Rational::zero() || x > Rational::one() {
            Err(Error::NotInCarrier(x))
        } else {
            Ok(x)
        }
    }

    /// The block with `lo <= a` and `b <= hi`, if any.
    fn block_containing<S: Scalar>(&self, a: &S, b: &S) -> Option<&Block> {
        self.blocks
            .iter()
            .find(|blk| S::constant(blk.lo) <= *a && *b <= S::constant(blk.hi))
    }

    /// Block whose interior contains `x`.
    pub fn block_of(&self, x: Rational) -> Option<&Block> {
        self.blocks.iter().find(|b| b.lo < x && x < b.hi)
    }

    pub fn tensor_in<S: Scalar>(&self, x: &S, y: &S) -> S {
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        match self.block_containing(lo, hi) {
            Some(b) => {
                let a = S::constant(b.lo);
                let top = S::constant(b.hi);
                match b.kind {
                    BlockKind::Lukasiewicz => {
                        let s = x.clone() + y.clone() - top;
                        if s > a {
                            s
                        } else {
                            a
                        }
                    }
                    BlockKind::Product => {
                        a.clone() + (x.clone() - a.clone()) * (y.clone() - a.clone()) / (top - a)
                    }
                }
            }
            None => lo.clone(),
        }
    }

    pub fn residuum_in<S: Scalar>(&self, x: &S, y: &S) -> S {
        if x <= y {
            return S::constant(Rational::one());
        }
        match self.block_containing(y, x) {
            Some(b) => {
                let a = S::constant(b.lo);
                let top = S::constant(b.hi);
                match b.kind {
                    BlockKind::Lukasiewicz => top - x.clone() + y.clone(),
                    BlockKind::Product => {
                        a.clone() + (top - a.clone()) * (y.clone() - a.clone()) / (x.clone() - a)
                    }
                }
            }
            None => y.clone(),
        }
    }

    pub fn is_idempotent(&self, x: Rational) -> bool {
        self.tensor(&x, &x) == x
    }

    /// On `[0, 1]`: `x << y` iff `x = 0` or `x < y`.
    pub fn way_below(&self, x: Rational, y: Rational) -> bool {
        x.is_zero() || x < y
    }

    pub fn condition_s(&self) -> ConditionS {
        match self
            .blocks
            .iter()
            .find(|b| b.lo > Rational::zero() && b.kind == BlockKind::Lukasiewicz)
        {
            Some(b) => ConditionS::Violated(b.clone()),
            None => ConditionS::Satisfied,
        }
    }

    /// `sup { z on the grid : x ⊗ z <= y }` for a grid of width
    /// `step = 1/2^k`, scanning from the top.
    pub fn grid_residuum(&self, x: Rational, y: Rational, step: Rational) -> Result<Rational> {
        let n = grid_size(step)?;
        for k in (0..=n).rev() {
            let z = step * Rational::from_integer(k as i128);
            if self.tensor(&x, &z) <= y {
                return Ok(z);
            }
        }
        Ok(Rational::zero())
    }

    /// Bound on how fast the residuum moves near `(x, y)`.
    fn residuum_slope(&self, x: Rational, y: Rational) -> Rational {
        if x <= y {
            return Rational::zero();
        }
        match self.block_containing(&y, &x) {
            Some(b) if b.kind == BlockKind::Product => {
                let w = b.hi - b.lo;
                let d = x - b.lo;
                let s1 = w / d;
                let s2 = w * (y - b.lo) / (d * d);
                s1.max(s2)
            }
            _ => Rational::one(),
        }
    }

    /// Scans the off-diagonal part of the grid for a jump of `x -> y` larger
    /// than the local slope times the step. Returns the first one found.
    pub fn continuity_probe(&self, step: Rational) -> Result<Option<Jump>> {
        let n = grid_size(step)?;
        let at = |i: usize| step * Rational::from_integer(i as i128);
        for i in 0..=n {
            for j in 0..i {
                let (x, y) = (at(i), at(j));
                let here = self.residuum(&x, &y);
                let mut moves = Vec::with_capacity(2);
                if j + 1 < i {
                    moves.push((x, at(j + 1)));
                }
                if i < n {
                    moves.push((at(i + 1), y));
                }
                for (x2, y2) in moves {
                    let there = self.residuum(&x2, &y2);
                    let jump = if here > there { here - there } else { there - here };
                    let bound = step * self.residuum_slope(x, y).max(self.residuum_slope(x2, y2));
                    if jump > bound {
                        return Ok(Some(Jump { from: (x, y), to: (x2, y2), jump, bound }));
                    }
                }
            }
        }
        Ok(None)
    }

    /// `sup { p -> 0 : p > 0 }`. The map `p -> (p -> 0)` is antitone, so the
    /// supremum is its limit as `p -> 0+`.
    pub fn sup_residuum_to_zero(&self) -> Rational {
        let p = Series::linear(Rational::zero(), Rational::one());
        self.residuum_in(&p, &Series::constant(Rational::zero())).standard_part()
    }

    /// Largest value of `p -> 0` over grid points `p > 0`.
    pub fn grid_sup_residuum_to_zero(&self, step: Rational) -> Result<Rational> {
        let n = grid_size(step)?;
        Ok((1..=n)
            .map(|k| self.residuum(&(step * Rational::from_integer(k as i128)), &Rational::zero()))
            .max()
            .unwrap_or_else(Rational::zero))
    }
}

fn grid_size(step: Rational) -> Result<usize> {
    if step <= Rational::zero() || !step.numer().is_one() {
        return Err(Error::Precondition(format!("grid step {step} is not 1/n")));
    }
    let n = *step.denom();
    if !(n as u128).is_power_of_two() || n > 1 << 20 {
        return Err(Error::Precondition(format!("grid step {step} is not 1/2^k with k <= 20")));
    }
    Ok(n as usize)
}

impl Quantale for TNorm {
    type Elem = Rational;

    fn tensor(&self, x: &Rational, y: &Rational) -> Rational {
        self.tensor_in(x, y)
    }

    fn residuum(&self, x: &Rational, y: &Rational) -> Rational {
        self.residuum_in(x, y)
    }

    fn leq(&self, x: &Rational, y: &Rational) -> bool {
        x <= y
    }

    fn join(&self, x: &Rational, y: &Rational) -> Rational {
        *x.max(y)
    }

    fn meet(&self, x: &Rational, y: &Rational) -> Rational {
        *x.min(y)
    }

    fn bottom(&self) -> Rational {
        Rational::zero()
    }

    fn top(&self) -> Rational {
        Rational::one()
    }

    fn unit(&self) -> Rational {
        Rational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn luk_sum() -> TNorm {
        TNorm::ordinal_sum(alloc::vec![Block::new(rat(1, 4), rat(1, 2), BlockKind::Lukasiewicz)]).unwrap()
    }

    #[test]
    fn basic_tensors() {
        assert_eq!(TNorm::lukasiewicz().tensor(&rat(1, 2), &rat(3, 4)), rat(1, 4));
        assert_eq!(TNorm::lukasiewicz().tensor(&rat(1, 4), &rat(1, 2)), rat(0, 1));
        assert_eq!(TNorm::product().tensor(&rat(1, 2), &rat(1, 3)), rat(1, 6));
        assert_eq!(TNorm::godel().tensor(&rat(1, 2), &rat(1, 3)), rat(1, 3));
    }

    #[test]
    fn ordinal_sum_tensor_and_residuum() {
        let t = luk_sum();
        assert_eq!(t.tensor(&rat(3, 8), &rat(3, 8)), rat(1, 4));
        assert_eq!(t.tensor(&rat(7, 16), &rat(3, 8)), rat(5, 16));
        assert_eq!(t.residuum(&rat(3, 8), &rat(1, 4)), rat(3, 8));
        assert_eq!(t.residuum(&rat(1, 2), &rat(1, 4)), rat(1, 4));
        assert_eq!(t.residuum(&rat(3, 4), &rat(1, 4)), rat(1, 4));
        assert_eq!(t.residuum(&rat(1, 8), &rat(1, 4)), rat(1, 1));
    }

    #[test]
    fn product_block_residuum() {
        let t = TNorm::ordinal_sum(alloc::vec![Block::new(rat(1, 2), rat(1, 1), BlockKind::Product)]).unwrap();
        // x = 3/4, y = 5/8: 1/2 + (1/2)(1/8)/(1/4) = 3/4
        assert_eq!(t.residuum(&rat(3, 4), &rat(5, 8)), rat(3, 4));
        assert_eq!(t.tensor(&rat(3, 4), &rat(3, 4)), rat(5, 8));
    }

    #[test]
    fn overlapping_blocks_rejected() {
        let r = TNorm::ordinal_sum(alloc::vec![
            Block::new(rat(0, 1), rat(1, 2), BlockKind::Product),
            Block::new(rat(1, 4), rat(1, 1), BlockKind::Product),
        ]);
        assert!(matches!(r, Err(Error::InvalidBlocks(_))));
        assert!(TNorm::ordinal_sum(alloc::vec![Block::new(rat(1, 2), rat(1, 2), BlockKind::Product)]).is_err());
    }

    #[test]
    fn adjacent_blocks_accepted() {
        let t = TNorm::ordinal_sum(alloc::vec![
            Block::new(rat(1, 2), rat(1, 1), BlockKind::Product),
            Block::new(rat(0, 1), rat(1, 2), BlockKind::Lukasiewicz),
        ])
        .unwrap();
        assert_eq!(t.blocks()[0].lo, rat(0, 1));
        assert_eq!(t.tensor(&rat(1, 2), &rat(1, 2)), rat(1, 2));
    }

    #[test]
    fn condition_s() {
        assert_eq!(TNorm::lukasiewicz().condition_s(), ConditionS::Satisfied);
        assert_eq!(TNorm::godel().condition_s(), ConditionS::Satisfied);
        assert!(matches!(luk_sum().condition_s(), ConditionS::Violated(b) if b.lo == rat(1, 4)));
    }

    #[test]
    fn sup_of_residuum_to_zero() {
        assert_eq!(TNorm::lukasiewicz().sup_residuum_to_zero(), rat(1, 1));
        assert_eq!(TNorm::godel().sup_residuum_to_zero(), rat(0, 1));
        assert_eq!(TNorm::product().sup_residuum_to_zero(), rat(0, 1));
        assert_eq!(TNorm::lukasiewicz().grid_sup_residuum_to_zero(rat(1, 64)).unwrap(), rat(63, 64));
    }

    #[test]
    fn probe_finds_jump_only_off_condition_s() {
        assert!(luk_sum().continuity_probe(rat(1, 64)).unwrap().is_some());
        assert!(TNorm::lukasiewicz().continuity_probe(rat(1, 64)).unwrap().is_none());
        assert!(TNorm::product().continuity_probe(rat(1, 64)).unwrap().is_none());
        assert!(TNorm::godel().continuity_probe(rat(1, 64)).unwrap().is_none());
    }
}
