//! Finite quantales given by operation tables.
//!
//! Elements are addressed by [`Level`], an index into the carrier; each
//! index carries a rational label used for display and (for chains) for the
//! order.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::{Quantale, TNorm};
use crate::rational::Rational;
use crate::{rat, Error, Result};

/// Index of an element of a finite carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Level(pub u8);

impl Level {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Join and meet tables for a non-chain carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeTables {
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
}

/// Unvalidated description of a finite quantale. Without lattice tables the
/// carrier is a chain ordered by label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantaleTable {
    pub carrier: Vec<Rational>,
    pub tensor: Vec<Vec<usize>>,
    pub unit: usize,
    pub lattice: Option<LatticeTables>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    Commutativity { a: Rational, b: Rational },
    Associativity { a: Rational, b: Rational, c: Rational },
    Unit { a: Rational },
    /// `b <= c` but `a ⊗ b` is not below `a ⊗ c`.
    Monotonicity { a: Rational, b: Rational, c: Rational },
    /// `a ⊗ (b ∨ c) != (a ⊗ b) ∨ (a ⊗ c)`.
    JoinDistributivity { a: Rational, b: Rational, c: Rational },
    BottomAbsorbing { a: Rational },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Commutativity { a, b } => write!(f, "commutativity fails at ({a}, {b})"),
            AxiomViolation::Associativity { a, b, c } => write!(f, "associativity fails at ({a}, {b}, {c})"),
            AxiomViolation::Unit { a } => write!(f, "unit law fails at {a}"),
            AxiomViolation::Monotonicity { a, b, c } => {
                write!(f, "monotonicity fails: {b} <= {c} but {a}*{b} is not below {a}*{c}")
            }
            AxiomViolation::JoinDistributivity { a, b, c } => {
                write!(f, "join distributivity fails at ({a}, {b}, {c})")
            }
            AxiomViolation::BottomAbsorbing { a } => write!(f, "{a} * 0 is not 0"),
        }
    }
}

/// One witness per failed law.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Validated lattice structure: order plus join/meet tables, flat `n * n`.
struct Lattice {
    n: usize,
    leq: Vec<bool>,
    join: Vec<u8>,
    meet: Vec<u8>,
    bottom: usize,
    top: usize,
}

fn square(name: &str, t: &[Vec<usize>], n: usize) -> Result<Vec<u8>> {
    if t.len() != n || t.iter().any(|r| r.len() != n) {
        return Err(Error::Structural(format!("{name} table is not {n}x{n}")));
    }
    let mut out = Vec::with_capacity(n * n);
    for row in t {
        for &v in row {
            if v >= n {
                return Err(Error::Structural(format!("{name} table entry {v} is outside the carrier")));
            }
            out.push(v as u8);
        }
    }
    Ok(out)
}

fn build_lattice(table: &QuantaleTable) -> Result<Lattice> {
    let n = table.carrier.len();
    if n == 0 {
        return Err(Error::Structural(String::from("carrier is empty")));
    }
    if n > u8::MAX as usize {
        return Err(Error::Structural(format!("carrier has {n} elements, at most 255 supported")));
    }
    for i in 0..n {
        for j in 0..i {
            if table.carrier[i] == table.carrier[j] {
                return Err(Error::Structural(format!("label {} appears twice", table.carrier[i])));
            }
        }
    }
    let lat = match &table.lattice {
        None => {
            let c = &table.carrier;
            let mut leq = Vec::with_capacity(n * n);
            let mut join = Vec::with_capacity(n * n);
            let mut meet = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    leq.push(c[i] <= c[j]);
                    join.push(if c[i] >= c[j] { i } else { j } as u8);
                    meet.push(if c[i] <= c[j] { i } else { j } as u8);
                }
            }
            let bottom = (0..n).min_by_key(|&i| c[i]).unwrap_or(0);
            let top = (0..n).max_by_key(|&i| c[i]).unwrap_or(0);
            Lattice { n, leq, join, meet, bottom, top }
        }
        Some(l) => {
            let join = square("join", &l.join, n)?;
            let meet = square("meet", &l.meet, n)?;
            let at = |t: &[u8], a: usize, b: usize| t[a * n + b] as usize;
            for a in 0..n {
                if at(&join, a, a) != a || at(&meet, a, a) != a {
                    return Err(Error::Structural(format!("join/meet not idempotent at {}", table.carrier[a])));
                }
                for b in 0..n {
                    if at(&join, a, b) != at(&join, b, a) || at(&meet, a, b) != at(&meet, b, a) {
                        return Err(Error::Structural(format!(
                            "join/meet not commutative at ({}, {})",
                            table.carrier[a], table.carrier[b]
                        )));
                    }
                    if at(&join, a, at(&meet, a, b)) != a || at(&meet, a, at(&join, a, b)) != a {
                        return Err(Error::Structural(format!(
                            "absorption fails at ({}, {})",
                            table.carrier[a], table.carrier[b]
                        )));
                    }
                    for c in 0..n {
                        if at(&join, a, at(&join, b, c)) != at(&join, at(&join, a, b), c)
                            || at(&meet, a, at(&meet, b, c)) != at(&meet, at(&meet, a, b), c)
                        {
                            return Err(Error::Structural(format!(
                                "join/meet not associative at ({}, {}, {})",
                                table.carrier[a], table.carrier[b], table.carrier[c]
                            )));
                        }
                    }
                }
            }
            let leq: Vec<bool> = (0..n * n).map(|k| join[k] as usize == k % n).collect();
            let bottom = (0..n).find(|&a| (0..n).all(|b| leq[a * n + b])).unwrap_or(0);
            let top = (0..n).find(|&a| (0..n).all(|b| leq[b * n + a])).unwrap_or(0);
            Lattice { n, leq, join, meet, bottom, top }
        }
    };
    if !table.carrier[lat.bottom].is_zero() || !table.carrier[lat.top].is_one() {
        return Err(Error::Structural(format!(
            "bottom is labelled {} and top {}; expected 0 and 1",
            table.carrier[lat.bottom], table.carrier[lat.top]
        )));
    }
    Ok(lat)
}

/// Validates the table shapes and checks the quantale laws. Shape problems are
/// errors; failed laws are listed in the report.
pub fn check_quantale_axioms(table: &QuantaleTable) -> Result<AxiomReport> {
    let lat = build_lattice(table)?;
    let n = lat.n;
    let t = square("tensor", &table.tensor, n)?;
    if table.unit >= n {
        return Err(Error::Structural(format!("unit index {} is outside the carrier", table.unit)));
    }
    Ok(axiom_report(&table.carrier, &lat, &t, table.unit))
}

fn axiom_report(labels: &[Rational], lat: &Lattice, t: &[u8], unit: usize) -> AxiomReport {
    let n = lat.n;
    let m = |a: usize, b: usize| t[a * n + b] as usize;
    let j = |a: usize, b: usize| lat.join[a * n + b] as usize;
    let le = |a: usize, b: usize| lat.leq[a * n + b];
    let l = |a: usize| labels[a];
    let mut report = AxiomReport::default();
    let v = &mut report.violations;

    if let Some((a, b)) = pairs(n).find(|&(a, b)| m(a, b) != m(b, a)) {
        v.push(AxiomViolation::Commutativity { a: l(a), b: l(b) });
    }
    if let Some((a, b, c)) = triples(n).find(|&(a, b, c)| m(a, m(b, c)) != m(m(a, b), c)) {
        v.push(AxiomViolation::Associativity { a: l(a), b: l(b), c: l(c) });
    }
    if let Some(a) = (0..n).find(|&a| m(a, unit) != a || m(unit, a) != a) {
        v.push(AxiomViolation::Unit { a: l(a) });
    }
    if let Some((a, b, c)) = triples(n).find(|&(a, b, c)| le(b, c) && !le(m(a, b), m(a, c))) {
        v.push(AxiomViolation::Monotonicity { a: l(a), b: l(b), c: l(c) });
    }
    if let Some((a, b, c)) = triples(n).find(|&(a, b, c)| m(a, j(b, c)) != j(m(a, b), m(a, c))) {
        v.push(AxiomViolation::JoinDistributivity { a: l(a), b: l(b), c: l(c) });
    }
    if let Some(a) = (0..n).find(|&a| m(a, lat.bottom) != lat.bottom) {
        v.push(AxiomViolation::BottomAbsorbing { a: l(a) });
    }
    report
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    pairs(n).flat_map(move |(a, b)| (0..n).map(move |c| (a, b, c)))
}

/// A validated finite commutative unital quantale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuantale {
    n: usize,
    labels: Vec<Rational>,
    chain: bool,
    tensor: Vec<u8>,
    imp: Vec<u8>,
    leq: Vec<bool>,
    join: Vec<u8>,
    meet: Vec<u8>,
    unit: u8,
    bottom: u8,
    top: u8,
}

impl FiniteQuantale {
    /// Validates `table`; any failed law is reported as [`Error::Axioms`].
    pub fn new(table: &QuantaleTable) -> Result<Self> {
        let lat = build_lattice(table)?;
        let n = lat.n;
        let tensor = square("tensor", &table.tensor, n)?;
        if table.unit >= n {
            return Err(Error::Structural(format!("unit index {} is outside the carrier", table.unit)));
        }
        let report = axiom_report(&table.carrier, &lat, &tensor, table.unit);
        if !report.is_clean() {
            return Err(Error::Axioms(format!("{report}")));
        }
        // x -> y = join { z : x ⊗ z <= y }
        let mut imp = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let mut acc = lat.bottom;
                for z in 0..n {
                    if lat.leq[tensor[x * n + z] as usize * n + y] {
                        acc = lat.join[acc * n + z] as usize;
                    }
                }
                imp.push(acc as u8);
            }
        }
        Ok(FiniteQuantale {
            n,
            labels: table.carrier.clone(),
            chain: table.lattice.is_none(),
            tensor,
            imp,
            leq: lat.leq,
            join: lat.join,
            meet: lat.meet,
            unit: table.unit as u8,
            bottom: lat.bottom as u8,
            top: lat.top as u8,
        })
    }

    /// The restriction of a t-norm to a finite subset of `[0, 1]` closed
    /// under it. Carrier indices follow the sorted labels.
    pub fn from_tnorm(t: &TNorm, labels: &[Rational]) -> Result<Self> {
        let mut carrier: Vec<Rational> = labels.to_vec();
        carrier.sort();
        carrier.dedup();
        let find = |v: Rational| carrier.iter().position(|&c| c == v);
        let mut tensor = Vec::with_capacity(carrier.len());
        for &x in &carrier {
            let mut row = Vec::with_capacity(carrier.len());
            for &y in &carrier {
                let v = t.tensor(&x, &y);
                row.push(find(v).ok_or_else(|| {
                    Error::Structural(format!("carrier is not closed: {x} * {y} = {v}"))
                })?);
            }
            tensor.push(row);
        }
        let unit = find(Rational::one()).ok_or_else(|| Error::Structural(String::from("carrier lacks 1")))?;
        FiniteQuantale::new(&QuantaleTable { carrier, tensor, unit, lattice: None })
    }

    /// `{0, 1}` with `min`.
    pub fn boolean() -> Self {
        Self::from_tnorm(&TNorm::godel(), &[rat(0, 1), rat(1, 1)]).expect("boolean chain")
    }

    /// `{0, 1/2, 1}` with `min`.
    pub fn godel3() -> Self {
        Self::from_tnorm(&TNorm::godel(), &[rat(0, 1), rat(1, 2), rat(1, 1)]).expect("three-element Gödel chain")
    }

    /// `{0, 1/2, 1}` with the Łukasiewicz tensor (`1/2 ⊗ 1/2 = 0`).
    pub fn mv3() -> Self {
        Self::from_tnorm(&TNorm::lukasiewicz(), &[rat(0, 1), rat(1, 2), rat(1, 1)]).expect("three-element MV chain")
    }

    /// `{0, 1/4, 3/8, 1/2, 1}` cut from the ordinal sum with one Łukasiewicz
    /// block on `[1/4, 1/2]`.
    pub fn chain5() -> Self {
        let t = TNorm::ordinal_sum(alloc::vec![super::Block::new(
            rat(1, 4),
            rat(1, 2),
            super::BlockKind::Lukasiewicz
        )])
        .expect("valid block");
        Self::from_tnorm(&t, &[rat(0, 1), rat(1, 4), rat(3, 8), rat(1, 2), rat(1, 1)]).expect("five-element chain")
    }

    /// Looks up one of the shipped quantales by name.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "bool2" | "boolean" => Some(Self::boolean()),
            "godel3" => Some(Self::godel3()),
            "mv3" => Some(Self::mv3()),
            "chain5" => Some(Self::chain5()),
            _ => None,
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_chain(&self) -> bool {
        self.chain
    }

    pub fn levels(&self) -> impl DoubleEndedIterator<Item = Level> + Clone {
        (0..self.n as u8).map(Level)
    }

    pub fn label(&self, l: Level) -> Rational {
        self.labels[l.index()]
    }

    pub fn labels(&self) -> &[Rational] {
        &self.labels
    }

    pub fn level_of(&self, value: Rational) -> Result<Level> {
        self.labels
            .iter()
            .position(|&c| c == value)
            .map(|i| Level(i as u8))
            .ok_or(Error::NotInCarrier(value))
    }

    /// Levels sorted so that every element comes after everything below it.
    pub fn ascending(&self) -> Vec<Level> {
        let mut v: Vec<Level> = self.levels().collect();
        v.sort_by_key(|&l| (self.levels().filter(|&m| self.leq(&m, &l)).count(), l));
        v
    }

    /// Least element above bottom, when there is exactly one atom.
    pub fn least_positive(&self) -> Option<Level> {
        let bottom = self.bottom();
        let atoms: Vec<Level> = self
            .levels()
            .filter(|&a| {
                a != bottom && self.levels().all(|b| b == bottom || b == a || !self.leq(&b, &a))
            })
            .collect();
        match atoms.as_slice() {
            [a] if self.levels().all(|b| b == bottom || self.leq(a, &b)) => Some(*a),
            _ => None,
        }
    }

    pub fn tensor_table(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.tensor[i * self.n + j] as usize).collect())
            .collect()
    }

    pub fn unit_index(&self) -> usize {
        self.unit as usize
    }

    /// Join and meet tables for non-chains.
    pub fn lattice_tables(&self) -> Option<LatticeTables> {
        if self.chain {
            return None;
        }
        let t = |v: &[u8]| {
            (0..self.n)
                .map(|i| (0..self.n).map(|j| v[i * self.n + j] as usize).collect())
                .collect()
        };
        Some(LatticeTables { join: t(&self.join), meet: t(&self.meet) })
    }

    /// Directed subsets of the carrier, as bit masks. Carriers above 16
    /// elements are refused.
    fn directed_subsets(&self) -> Result<Vec<u32>> {
        if self.n > 16 {
            return Err(Error::Budget { what: "directed subset enumeration", needed: 1 << self.n, budget: 1 << 16 });
        }
        let mut out = Vec::new();
        for mask in 1u32..(1 << self.n) {
            let members: Vec<Level> = self.levels().filter(|l| mask & (1 << l.0) != 0).collect();
            let directed = members.iter().all(|a| {
                members
                    .iter()
                    .all(|b| members.iter().any(|c| self.leq(a, c) && self.leq(b, c)))
            });
            if directed {
                out.push(mask);
            }
        }
        Ok(out)
    }

    fn join_mask(&self, mask: u32) -> Level {
        self.levels()
            .filter(|l| mask & (1 << l.0) != 0)
            .fold(self.bottom(), |acc, l| self.join(&acc, &l))
    }

    /// `x << y`: every directed set whose join is above `y` has a member
    /// above `x`.
    pub fn way_below(&self, x: Level, y: Level) -> Result<bool> {
        Ok(self.directed_subsets()?.into_iter().all(|mask| {
            !self.leq(&y, &self.join_mask(mask))
                || self.levels().any(|d| mask & (1 << d.0) != 0 && self.leq(&x, &d))
        }))
    }

    /// Whether `p -> (-)` sends directed joins to joins, checked over every
    /// directed subset.
    pub fn residuum_preserves_directed_joins(&self, p: Level) -> Result<bool> {
        Ok(self.directed_subsets()?.into_iter().all(|mask| {
            let lhs = self.residuum(&p, &self.join_mask(mask));
            let rhs = self
                .levels()
                .filter(|d| mask & (1 << d.0) != 0)
                .fold(self.bottom(), |acc, d| self.join(&acc, &self.residuum(&p, &d)));
            lhs == rhs
        }))
    }
}

impl Quantale for FiniteQuantale {
    type Elem = Level;

    fn tensor(&self, x: &Level, y: &Level) -> Level {
        Level(self.tensor[x.index() * self.n + y.index()])
    }

    fn residuum(&self, x: &Level, y: &Level) -> Level {
        Level(self.imp[x.index() * self.n + y.index()])
    }

    fn leq(&self, x: &Level, y: &Level) -> bool {
        self.leq[x.index() * self.n + y.index()]
    }

    fn join(&self, x: &Level, y: &Level) -> Level {
        Level(self.join[x.index() * self.n + y.index()])
    }

    fn meet(&self, x: &Level, y: &Level) -> Level {
        Level(self.meet[x.index() * self.n + y.index()])
    }

    fn bottom(&self) -> Level {
        Level(self.bottom)
    }

    fn top(&self) -> Level {
        Level(self.top)
    }

    fn unit(&self) -> Level {
        Level(self.unit)
    }
}
