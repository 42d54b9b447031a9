//! JSON definition files: rationals, quantales, Q-functions, semifilter
//! tables and scenarios.
//!
//! Rationals are strings `"n/d"` (or `"n"`); they are always written in
//! lowest terms.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use qfilter_core::counterexample::CatalogConfig;
use qfilter_core::monad::Variant;
use qfilter_core::qfun::QFunction;
use qfilter_core::quantale::{Block, BlockKind, FiniteQuantale, LatticeTables, Level, QuantaleTable};
use qfilter_core::semifilter::{SemifilterTable, Space};
use qfilter_core::{Rational, TNorm};

use crate::error::{CliError, Result};

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || CliError::input(format!("malformed rational {s:?}"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i128 = n.parse().map_err(|_| bad())?;
    let d: i128 = d.parse().map_err(|_| bad())?;
    if d <= 0 {
        return Err(CliError::input(format!("malformed rational {s:?}: denominator must be positive")));
    }
    Ok(Rational::new(n, d))
}

pub fn show_rational(r: Rational) -> String {
    r.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDef {
    pub lo: String,
    pub hi: String,
    pub kind: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum QuantaleDef {
    Tnorm {
        blocks: Vec<BlockDef>,
    },
    Finite {
        carrier: Vec<String>,
        tensor: Vec<Vec<String>>,
        unit: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        join: Option<Vec<Vec<String>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        meet: Option<Vec<Vec<String>>>,
    },
    Builtin {
        name: String,
    },
}

#[derive(Clone, Debug)]
pub enum Quantale {
    TNorm(TNorm),
    Finite(FiniteQuantale),
}

/// A finite quantale definition that has been parsed but not validated, so
/// that axiom failures can be reported instead of rejected.
#[derive(Clone, Debug)]
pub enum Loaded {
    TNorm(TNorm),
    Table(QuantaleTable),
    Finite(FiniteQuantale),
}

impl Loaded {
    pub fn build(self) -> Result<Quantale> {
        Ok(match self {
            Loaded::TNorm(t) => Quantale::TNorm(t),
            Loaded::Finite(q) => Quantale::Finite(q),
            Loaded::Table(t) => Quantale::Finite(FiniteQuantale::new(&t)?),
        })
    }
}

fn builtin(name: &str) -> Option<Loaded> {
    match name {
        "godel" => Some(Loaded::TNorm(TNorm::godel())),
        "product" => Some(Loaded::TNorm(TNorm::product())),
        "lukasiewicz" => Some(Loaded::TNorm(TNorm::lukasiewicz())),
        _ => FiniteQuantale::builtin(name).map(Loaded::Finite),
    }
}

pub fn parse_kind(kind: &str) -> Result<BlockKind> {
    match kind.to_ascii_lowercase().as_str() {
        "lukasiewicz" | "łukasiewicz" | "luk" => Ok(BlockKind::Lukasiewicz),
        "product" | "prod" => Ok(BlockKind::Product),
        other => Err(CliError::input(format!("unknown block kind {other:?}"))),
    }
}

pub fn kind_name(kind: BlockKind) -> &'static str {
    match kind {
        BlockKind::Lukasiewicz => "lukasiewicz",
        BlockKind::Product => "product",
    }
}

impl QuantaleDef {
    pub fn load(&self) -> Result<Loaded> {
        match self {
            QuantaleDef::Builtin { name } => {
                builtin(name).ok_or_else(|| CliError::input(format!("unknown builtin quantale {name:?}")))
            }
            QuantaleDef::Tnorm { blocks } => {
                let blocks = blocks
                    .iter()
                    .map(|b| Ok(Block::new(parse_rational(&b.lo)?, parse_rational(&b.hi)?, parse_kind(&b.kind)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Loaded::TNorm(TNorm::ordinal_sum(blocks)?))
            }
            QuantaleDef::Finite { carrier, tensor, unit, join, meet } => {
                let carrier = carrier.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
                let index = |s: &String| -> Result<usize> {
                    let v = parse_rational(s)?;
                    carrier.iter().position(|c| *c == v).ok_or_else(|| CliError::input(format!("{s} is not in the carrier")))
                };
                let grid = |rows: &Vec<Vec<String>>| -> Result<Vec<Vec<usize>>> {
                    rows.iter().map(|r| r.iter().map(index).collect()).collect()
                };
                let lattice = match (join, meet) {
                    (Some(j), Some(m)) => Some(LatticeTables { join: grid(j)?, meet: grid(m)? }),
                    (None, None) => None,
                    _ => return Err(CliError::input("give both join and meet tables, or neither")),
                };
                Ok(Loaded::Table(QuantaleTable { carrier: carrier.clone(), tensor: grid(tensor)?, unit: index(unit)?, lattice }))
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, path: &Path) -> Result<T> {
    serde_json::from_str(text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// A builtin name (when no such file exists) or a definition file.
pub fn load_quantale(arg: &str) -> Result<Loaded> {
    let path = Path::new(arg);
    if !path.exists() {
        if let Some(q) = builtin(arg) {
            return Ok(q);
        }
    }
    let def: QuantaleDef = parse_json(&read(path)?, path)?;
    def.load()
}

/// A quantale inside a scenario: a builtin name, a path relative to the
/// scenario file, or an inline definition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuantaleRef {
    Named(String),
    Inline(QuantaleDef),
}

impl QuantaleRef {
    pub fn load(&self, base: &Path) -> Result<Loaded> {
        match self {
            QuantaleRef::Inline(def) => def.load(),
            QuantaleRef::Named(name) => match builtin(name) {
                Some(q) if !base.join(name).exists() => Ok(q),
                _ => load_quantale(&base.join(name).to_string_lossy()),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QFunctionDef {
    pub domain: Vec<String>,
    pub values: Vec<String>,
}

impl QFunctionDef {
    pub fn from_levels(q: &FiniteQuantale, domain: &[String], f: &QFunction<Level>) -> Self {
        QFunctionDef { domain: domain.to_vec(), values: f.values().iter().map(|l| show_rational(q.label(*l))).collect() }
    }

    pub fn to_levels(&self, q: &FiniteQuantale, domain: &[String]) -> Result<QFunction<Level>> {
        if self.domain != domain {
            return Err(CliError::input(format!("function domain {:?} differs from {:?}", self.domain, domain)));
        }
        if self.values.len() != domain.len() {
            return Err(CliError::input(format!("function has {} values on a domain of {}", self.values.len(), domain.len())));
        }
        let values = self.values.iter().map(|v| Ok(q.level_of(parse_rational(v)?)?)).collect::<Result<Vec<_>>>()?;
        Ok(QFunction::new(values))
    }
}

/// Entries in canonical order: the first coordinate is the most
/// significant, levels ordered by index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDef {
    pub domain: Vec<String>,
    pub entries: Vec<(QFunctionDef, String)>,
}

impl TableDef {
    pub fn from_table(s: &Space, domain: &[String], t: &SemifilterTable) -> Self {
        let q = s.quantale();
        let entries = s
            .functions()
            .iter()
            .zip(t.values())
            .map(|(f, v)| (QFunctionDef::from_levels(q, domain, f), show_rational(q.label(*v))))
            .collect();
        TableDef { domain: domain.to_vec(), entries }
    }

    /// Any order is accepted, but every function must appear exactly once.
    pub fn to_table(&self, s: &Space, domain: &[String]) -> Result<SemifilterTable> {
        let q = s.quantale();
        let mut values: Vec<Option<Level>> = vec![None; s.size()];
        for (f, v) in &self.entries {
            let i = s.index_of(&f.to_levels(q, domain)?)?;
            if values[i].replace(q.level_of(parse_rational(v)?)?).is_some() {
                return Err(CliError::input(format!("function {:?} listed twice", f.values)));
            }
        }
        let values = values
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| CliError::input(format!("table lists {} of {} functions", self.entries.len(), s.size())))?;
        Ok(s.table(values)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrefilterDef {
    pub domain: Vec<String>,
    pub basis: Vec<QFunctionDef>,
}

/// A value of a Kleisli map: a full table, or the table `Λ` of a prefilter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapValue {
    Table(TableDef),
    Prefilter(PrefilterDef),
}

impl MapValue {
    pub fn to_table(&self, s: &Space, domain: &[String]) -> Result<SemifilterTable> {
        match self {
            MapValue::Table(t) => t.to_table(s, domain),
            MapValue::Prefilter(p) => {
                let basis = p.basis.iter().map(|f| f.to_levels(s.quantale(), domain)).collect::<Result<Vec<_>>>()?;
                if p.domain != domain {
                    return Err(CliError::input(format!("prefilter domain {:?} differs from {:?}", p.domain, domain)));
                }
                Ok(s.lambda_of_set(&basis)?)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetsDef {
    /// Largest `|X|`, `|Y|`, `|Z|` for random scenarios.
    pub max_size: Option<usize>,
    #[serde(rename = "X")]
    pub x: Option<Vec<String>>,
    #[serde(rename = "Y")]
    pub y: Option<Vec<String>>,
    #[serde(rename = "Z")]
    pub z: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapsDef {
    pub f: Vec<MapValue>,
    pub g: Vec<MapValue>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetsDef {
    pub scenarios: Option<u64>,
    pub samples: Option<usize>,
    /// Kleisli extensions over the whole law run.
    pub extensions: Option<u64>,
    pub naturality_samples: Option<usize>,
    /// Catalog size for the counterexample.
    pub catalog: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogDef {
    pub tail_indices: Option<Vec<u32>>,
    pub depth: Option<u8>,
    pub cap: Option<usize>,
}

impl CatalogDef {
    pub fn apply(&self, c: &mut CatalogConfig) {
        if let Some(t) = &self.tail_indices {
            c.tail_indices = t.clone();
        }
        if let Some(d) = self.depth {
            c.depth = d;
        }
        if let Some(cap) = self.cap {
            c.cap = cap;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDef {
    pub quantale: QuantaleRef,
    pub variant: Option<String>,
    #[serde(default)]
    pub sets: SetsDef,
    pub maps: Option<MapsDef>,
    #[serde(default)]
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub budgets: BudgetsDef,
    pub witness_catalog: Option<CatalogDef>,
    #[serde(default)]
    pub classical_oracle: bool,
    pub t: Option<String>,
    pub s: Option<String>,
    pub epsilon: Option<String>,
    pub truncation: Option<u64>,
    /// Free-form notes, ignored.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, String>,
}

pub struct Scenario {
    pub def: ScenarioDef,
    pub dir: PathBuf,
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let def = parse_json(&read(path)?, path)?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(Scenario { def, dir })
}

pub fn parse_variant(s: &str) -> Result<Variant> {
    match s.to_ascii_lowercase().as_str() {
        "plain" => Ok(Variant::Plain),
        "filter" => Ok(Variant::Filter),
        "bounded" => Ok(Variant::Bounded),
        other => Err(CliError::input(format!("unknown variant {other:?}"))),
    }
}
