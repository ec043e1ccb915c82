use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::json::{big_number, parse_big};
use crate::label::LabelShape;

/// `φ(λ[n])` with multiplicity, for every concrete label in one shape class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionEntry {
    /// Stable coordinates: the `ι`-partition is the tail after the padded row.
    pub shape: LabelShape,
    pub multiplicity: BigUint,
    pub class_size: BigUint,
    /// Dimension of each `φ(λ[n])` in the class.
    pub degree: BigUint,
}

impl DecompositionEntry {
    /// The padded shape `λ[n]`.
    pub fn full_shape(&self, n: u32) -> Result<LabelShape> {
        let first = (n as u64)
            .checked_sub(self.shape.norm())
            .ok_or_else(|| Error::PadUndefined {
                n: n as u64,
                needed: self.shape.norm(),
            })?;
        let iota = self.shape.iota.with_first_row(first as u32).map_err(|_| Error::PadUndefined {
            n: n as u64,
            needed: self.shape.norm() + self.shape.iota.first() as u64,
        })?;
        LabelShape::new(iota, self.shape.others.clone())
    }
}

/// Irreducible decomposition of `k[G_n/G_{n−m}]` over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub n: u32,
    pub m: u32,
    pub q: u64,
    /// Sorted by shape.
    pub entries: Vec<DecompositionEntry>,
}

impl Decomposition {
    pub fn new(n: u32, m: u32, q: u64, mut entries: Vec<DecompositionEntry>) -> Self {
        entries.sort_by(|a, b| a.shape.cmp(&b.shape));
        Decomposition { n, m, q, entries }
    }

    /// `Σ c²·class`, which counts `G_{n−m}\G_n/G_{n−m}`.
    pub fn sum_sq(&self) -> BigUint {
        self.entries
            .iter()
            .map(|e| &e.multiplicity * &e.multiplicity * &e.class_size)
            .sum()
    }

    /// `Σ c·degree·class = dim k[G_n/G_{n−m}]`.
    pub fn dim(&self) -> BigUint {
        self.entries
            .iter()
            .map(|e| &e.multiplicity * &e.degree * &e.class_size)
            .sum()
    }

    pub fn multiplicity_of(&self, shape: &LabelShape) -> BigUint {
        self.entries
            .iter()
            .find(|e| &e.shape == shape)
            .map(|e| e.multiplicity.clone())
            .unwrap_or_else(BigUint::zero)
    }

    /// shape → (multiplicity, class size), the data compared across `n`.
    pub fn stable_map(&self) -> BTreeMap<LabelShape, (BigUint, BigUint)> {
        self.entries
            .iter()
            .map(|e| {
                (
                    e.shape.clone(),
                    (e.multiplicity.clone(), e.class_size.clone()),
                )
            })
            .collect()
    }

    pub fn same_stable(&self, other: &Decomposition) -> bool {
        self.q == other.q && self.stable_map() == other.stable_map()
    }

    pub fn to_json(&self) -> Value {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let mut o = Map::new();
                o.insert("shape".into(), e.shape.to_json());
                o.insert("mult".into(), big_number(&e.multiplicity));
                o.insert("class_size".into(), big_number(&e.class_size));
                o.insert("degree".into(), Value::String(e.degree.to_string()));
                Value::Object(o)
            })
            .collect();
        let mut checks = Map::new();
        checks.insert("sum_sq".into(), big_number(&self.sum_sq()));
        checks.insert("dim".into(), Value::String(self.dim().to_string()));
        let mut o = Map::new();
        o.insert("n".into(), self.n.into());
        o.insert("m".into(), self.m.into());
        o.insert("q".into(), self.q.into());
        o.insert("entries".into(), Value::Array(entries));
        o.insert("checks".into(), Value::Object(checks));
        Value::Object(o)
    }

    /// Reads the JSON form back; recomputes and verifies the `checks` block
    /// when present.
    pub fn from_json(v: &Value) -> Result<Decomposition> {
        let small = |k: &str| -> Result<u64> {
            v.get(k)
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse(format!("decomposition needs integer {k:?}")))
        };
        let n = u32::try_from(small("n")?).map_err(|_| Error::Parse("n out of range".into()))?;
        let m = u32::try_from(small("m")?).map_err(|_| Error::Parse("m out of range".into()))?;
        let q = small("q")?;
        let list = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("decomposition needs \"entries\"".into()))?;
        let mut entries = Vec::with_capacity(list.len());
        for e in list {
            let field = |k: &str| {
                e.get(k)
                    .ok_or_else(|| Error::Parse(format!("entry missing {k:?}")))
                    .and_then(parse_big)
            };
            entries.push(DecompositionEntry {
                shape: LabelShape::from_json(
                    e.get("shape")
                        .ok_or_else(|| Error::Parse("entry missing \"shape\"".into()))?,
                )?,
                multiplicity: field("mult")?,
                class_size: field("class_size")?,
                degree: field("degree")?,
            });
        }
        let mut seen = std::collections::BTreeSet::new();
        if !entries.iter().all(|e| seen.insert(e.shape.clone())) {
            return Err(Error::Parse("duplicate shape in decomposition".into()));
        }
        let dec = Decomposition::new(n, m, q, entries);
        if let Some(checks) = v.get("checks") {
            if let Some(s) = checks.get("sum_sq") {
                if parse_big(s)? != dec.sum_sq() {
                    return Err(Error::Parse("checks.sum_sq does not match entries".into()));
                }
            }
            if let Some(d) = checks.get("dim") {
                if parse_big(d)? != dec.dim() {
                    return Err(Error::Parse("checks.dim does not match entries".into()));
                }
            }
        }
        Ok(dec)
    }
}
