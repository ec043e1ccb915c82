//! Finitely supported functions from cuspidal representations to partitions.
//!
//! Concrete cuspidals are never materialized. A [`LabelFunction`] keys its
//! partitions by [`CuspidalKey`]: the distinguished degree-1 cuspidal `ι`,
//! anonymous slots that are only known to be pairwise distinct, or named
//! tokens for cuspidals whose identity has to be tracked across several
//! labels. A [`LabelShape`] forgets identities entirely; multiplicities and
//! degrees only depend on the shape.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::degrees::cuspidal_count;
use crate::error::{Error, Result};
use crate::partition::{arrow_up, partitions_of, Partition};

/// Default bound on `n` for [`enumerate_labels`].
pub const DEFAULT_CENSUS_BOUND: u32 = 8;

// Parser guards.
const MAX_PARSED_DEGREE: u32 = 1 << 12;
const MAX_PARSED_COUNT: u64 = 256;
const MAX_PARSED_ENTRIES: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CuspidalKind {
    /// The trivial character of `GL_1`; degree 1 only.
    Iota,
    Anon(u32),
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CuspidalKey {
    pub degree: u32,
    pub kind: CuspidalKind,
}

impl CuspidalKey {
    pub const IOTA: CuspidalKey = CuspidalKey {
        degree: 1,
        kind: CuspidalKind::Iota,
    };

    pub fn anon(degree: u32, slot: u32) -> Self {
        CuspidalKey {
            degree,
            kind: CuspidalKind::Anon(slot),
        }
    }

    pub fn named(degree: u32, token: impl Into<String>) -> Self {
        CuspidalKey {
            degree,
            kind: CuspidalKind::Named(token.into()),
        }
    }

    pub fn is_iota(&self) -> bool {
        self.kind == CuspidalKind::Iota
    }
}

impl fmt::Display for CuspidalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            CuspidalKind::Iota => write!(f, "ι"),
            CuspidalKind::Anon(_) => write!(f, "{}", self.degree),
            CuspidalKind::Named(t) => write!(f, "{}.{}", self.degree, t),
        }
    }
}

/// `µ: C → P` with finite support. Empty partitions are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LabelFunction {
    entries: BTreeMap<CuspidalKey, Partition>,
}

/// A label read as the `λ` of `λ[n]`: its `ι`-partition is the stable tail.
pub type StableLabel = LabelFunction;

impl LabelFunction {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `key ↦ part`; an empty partition removes the key.
    pub fn insert(&mut self, key: CuspidalKey, part: Partition) -> Result<()> {
        if key.degree == 0 {
            return Err(Error::Parse("cuspidal degree must be positive".into()));
        }
        if key.is_iota() && key.degree != 1 {
            return Err(Error::Parse("ι has degree 1".into()));
        }
        if part.is_empty() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, part);
        }
        Ok(())
    }

    pub fn with(mut self, key: CuspidalKey, part: Partition) -> Self {
        self.insert(key, part).expect("valid cuspidal key");
        self
    }

    /// `{ι: (n)}`, empty for `n = 0`.
    pub fn trivial(n: u32) -> Self {
        LabelFunction::new().with(CuspidalKey::IOTA, Partition::row(n))
    }

    pub fn get(&self, key: &CuspidalKey) -> Partition {
        self.entries.get(key).cloned().unwrap_or_default()
    }

    pub fn iota(&self) -> Partition {
        self.get(&CuspidalKey::IOTA)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&CuspidalKey, &Partition)> {
        self.entries.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &CuspidalKey> {
        self.entries.keys()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `‖µ‖ = Σ d(ρ)·|µ(ρ)|`.
    pub fn norm(&self) -> u64 {
        self.entries
            .iter()
            .map(|(k, p)| k.degree as u64 * p.size() as u64)
            .sum()
    }

    /// Renumbers anonymous slots so that, within each degree, slot order
    /// follows the partition order. Named keys and `ι` are untouched.
    pub fn canonicalize(&self) -> LabelFunction {
        let mut out = LabelFunction::new();
        let mut anon: BTreeMap<u32, Vec<Partition>> = BTreeMap::new();
        for (k, p) in &self.entries {
            match k.kind {
                CuspidalKind::Anon(_) => anon.entry(k.degree).or_default().push(p.clone()),
                _ => {
                    out.entries.insert(k.clone(), p.clone());
                }
            }
        }
        for (d, mut parts) in anon {
            parts.sort();
            for (slot, p) in parts.into_iter().enumerate() {
                out.entries.insert(CuspidalKey::anon(d, slot as u32), p);
            }
        }
        out
    }

    /// Forgets cuspidal identities (other than `ι`).
    pub fn shape(&self) -> LabelShape {
        let mut others: Vec<(u32, Partition)> = self
            .entries
            .iter()
            .filter(|(k, _)| !k.is_iota())
            .map(|(k, p)| (k.degree, p.clone()))
            .collect();
        others.sort();
        LabelShape {
            iota: self.iota(),
            others,
        }
    }

    /// Number of keys of each degree, `ι` included.
    pub fn degree_counts(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for k in self.entries.keys() {
            *out.entry(k.degree).or_insert(0) += 1;
        }
        out
    }

    /// Parses the human syntax, e.g. `ι:(3,2); 2:(1)x2; 3.s:(1)`.
    ///
    /// `ι`, `iota` or `i` is the trivial degree-1 cuspidal; a bare number `d`
    /// is a fresh anonymous cuspidal of degree `d` (`xk` repeats it `k` times
    /// with pairwise distinct cuspidals); `d.name` is a named cuspidal.
    pub fn parse(s: &str) -> Result<LabelFunction> {
        let mut out = LabelFunction::new();
        let mut next_slot: BTreeMap<u32, u32> = BTreeMap::new();
        for item in split_items(s)? {
            let (key, part, count) = parse_item(item)?;
            match key {
                ParsedKey::Iota => {
                    if count != 1 {
                        return Err(Error::Parse("ι cannot be repeated".into()));
                    }
                    insert_fresh(&mut out, CuspidalKey::IOTA, part)?;
                }
                ParsedKey::Named(d, t) => {
                    if count != 1 {
                        return Err(Error::Parse(format!("named cuspidal {d}.{t} repeated")));
                    }
                    insert_fresh(&mut out, CuspidalKey::named(d, t), part)?;
                }
                ParsedKey::Anon(d) => {
                    for _ in 0..count {
                        let slot = next_slot.entry(d).or_insert(0);
                        insert_fresh(&mut out, CuspidalKey::anon(d, *slot), part.clone())?;
                        *slot += 1;
                    }
                }
            }
        }
        Ok(out)
    }
}

fn insert_fresh(out: &mut LabelFunction, key: CuspidalKey, part: Partition) -> Result<()> {
    if out.entries.contains_key(&key) {
        return Err(Error::Parse(format!("cuspidal {key} given twice")));
    }
    if part.is_empty() && !key.is_iota() {
        return Err(Error::Parse(format!("cuspidal {key} given an empty partition")));
    }
    out.insert(key, part)
}

enum ParsedKey {
    Iota,
    Anon(u32),
    Named(u32, String),
}

fn split_items(s: &str) -> Result<Vec<&str>> {
    let items: Vec<&str> = s
        .split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .collect();
    if items.len() > MAX_PARSED_ENTRIES {
        return Err(Error::Parse("too many label entries".into()));
    }
    Ok(items)
}

fn parse_item(item: &str) -> Result<(ParsedKey, Partition, u64)> {
    let (key, rest) = item
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("expected key:partition in {item:?}")))?;
    let key = key.trim();
    let rest = rest.trim();
    let (part, count) = match rest.rfind([')', ']']) {
        Some(close) => {
            let tail = rest[close + 1..].trim();
            let count = if tail.is_empty() {
                1
            } else {
                let digits = tail
                    .strip_prefix('x')
                    .or_else(|| tail.strip_prefix('×'))
                    .ok_or_else(|| Error::Parse(format!("unexpected {tail:?} in {item:?}")))?;
                digits
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad count in {item:?}")))?
            };
            (Partition::parse(&rest[..=close])?, count)
        }
        None => (Partition::parse(rest)?, 1),
    };
    if count == 0 || count > MAX_PARSED_COUNT {
        return Err(Error::Parse(format!("count out of range in {item:?}")));
    }
    let parsed = match key {
        "ι" | "iota" | "i" => ParsedKey::Iota,
        _ => {
            let (d, name) = match key.split_once('.') {
                Some((d, n)) => (d, Some(n.trim())),
                None => (key, None),
            };
            let d: u32 = d
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad cuspidal key {key:?}")))?;
            if d == 0 || d > MAX_PARSED_DEGREE {
                return Err(Error::Parse(format!("degree out of range in {key:?}")));
            }
            match name {
                Some(n) if !n.is_empty() && n.chars().all(|c| c.is_alphanumeric() || c == '_') => {
                    ParsedKey::Named(d, n.to_string())
                }
                Some(_) => return Err(Error::Parse(format!("bad cuspidal name in {key:?}"))),
                None => ParsedKey::Anon(d),
            }
        }
    };
    Ok((parsed, part, count))
}

impl fmt::Display for LabelFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items = vec![format!("ι:{}", self.iota())];
        for (k, p) in &self.entries {
            if let CuspidalKind::Named(_) = k.kind {
                items.push(format!("{k}:{p}"));
            }
        }
        let anon = LabelShape {
            iota: Partition::empty(),
            others: self
                .entries
                .iter()
                .filter(|(k, _)| matches!(k.kind, CuspidalKind::Anon(_)))
                .map(|(k, p)| (k.degree, p.clone()))
                .collect::<Vec<_>>(),
        }
        .normalized();
        for (d, p, c) in anon.grouped() {
            items.push(format!("{d}:{p}x{c}"));
        }
        f.write_str(&items.join("; "))
    }
}

impl fmt::Debug for LabelFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `α +→ β` keywise.
pub fn label_arrow_up(alpha: &LabelFunction, beta: &LabelFunction) -> bool {
    alpha
        .support()
        .chain(beta.support())
        .all(|k| arrow_up(&alpha.get(k), &beta.get(k)))
}

/// `β −→ α` keywise.
pub fn label_arrow_down(beta: &LabelFunction, alpha: &LabelFunction) -> bool {
    label_arrow_up(alpha, beta)
}

/// `λ[n]`: prepends the row `n − ‖λ‖` to the `ι`-partition.
pub fn pad(lambda: &StableLabel, n: u64) -> Result<LabelFunction> {
    let norm = lambda.norm();
    let needed = norm + lambda.iota().first() as u64;
    if n < needed {
        return Err(Error::PadUndefined { n, needed });
    }
    let first = u32::try_from(n - norm)
        .map_err(|_| Error::BadParameters(format!("n = {n} too large")))?;
    let mut out = lambda.clone();
    let iota = lambda.iota().with_first_row(first)?;
    out.insert(CuspidalKey::IOTA, iota)?;
    Ok(out)
}

/// The unique `(λ, n)` with `λ[n] = µ`.
pub fn stabilize(mu: &LabelFunction) -> Result<(StableLabel, u64)> {
    let n = mu.norm();
    let mut lambda = mu.clone();
    lambda.insert(CuspidalKey::IOTA, mu.iota().tail())?;
    match pad(&lambda, n) {
        Ok(back) if &back == mu => Ok((lambda, n)),
        _ => Err(Error::NotPadded(mu.to_string())),
    }
}

/// Adds one box to the first row of the `ι`-partition.
pub fn tilde(mu: &LabelFunction) -> LabelFunction {
    let mut out = mu.clone();
    out.insert(CuspidalKey::IOTA, mu.iota().bump_first_row())
        .expect("ι key is valid");
    out
}

/// `{ι: (n)}`; the label of the trivial representation of `G_n`.
pub fn trivial_label(n: u32) -> LabelFunction {
    LabelFunction::trivial(n)
}

/// A label up to permutations of same-degree cuspidals other than `ι`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LabelShape {
    pub iota: Partition,
    /// Sorted multiset of `(degree, partition)`, partitions nonempty.
    pub others: Vec<(u32, Partition)>,
}

impl LabelShape {
    pub fn new(iota: Partition, others: Vec<(u32, Partition)>) -> Result<Self> {
        if others.iter().any(|(d, p)| *d == 0 || p.is_empty()) {
            return Err(Error::Parse(
                "anonymous parts need positive degree and a nonempty partition".into(),
            ));
        }
        Ok(LabelShape { iota, others }.normalized())
    }

    pub fn iota_only(iota: Partition) -> Self {
        LabelShape {
            iota,
            others: Vec::new(),
        }
    }

    fn normalized(mut self) -> Self {
        self.others.sort();
        self
    }

    pub fn norm(&self) -> u64 {
        self.iota.size() as u64
            + self
                .others
                .iter()
                .map(|(d, p)| *d as u64 * p.size() as u64)
                .sum::<u64>()
    }

    /// `(degree, partition, count)` runs of the multiset.
    pub fn grouped(&self) -> Vec<(u32, Partition, usize)> {
        let mut out: Vec<(u32, Partition, usize)> = Vec::new();
        for (d, p) in &self.others {
            match out.last_mut() {
                Some((ld, lp, c)) if ld == d && lp == p => *c += 1,
                _ => out.push((*d, p.clone(), 1)),
            }
        }
        out
    }

    /// Number of anonymous parts of each degree.
    pub fn degree_counts(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for (d, _) in &self.others {
            *out.entry(*d).or_insert(0) += 1;
        }
        out
    }

    /// A label function with this shape, using anonymous slots.
    pub fn representative(&self) -> LabelFunction {
        let mut out = LabelFunction::new().with(CuspidalKey::IOTA, self.iota.clone());
        let mut slot: BTreeMap<u32, u32> = BTreeMap::new();
        for (d, p) in &self.others {
            let s = slot.entry(*d).or_insert(0);
            out.entries.insert(CuspidalKey::anon(*d, *s), p.clone());
            *s += 1;
        }
        out
    }

    /// `{"iota":[...], "others":[{"degree":d, "partition":[...], "count":k}]}`
    pub fn to_json(&self) -> Value {
        let others = self
            .grouped()
            .into_iter()
            .map(|(d, p, c)| {
                let mut o = Map::new();
                o.insert("degree".into(), d.into());
                o.insert("partition".into(), p.to_json());
                o.insert("count".into(), c.into());
                Value::Object(o)
            })
            .collect();
        let mut o = Map::new();
        o.insert("iota".into(), self.iota.to_json());
        o.insert("others".into(), Value::Array(others));
        Value::Object(o)
    }

    pub fn from_json(v: &Value) -> Result<LabelShape> {
        let iota = match v.get("iota") {
            Some(x) => Partition::from_json(x)?,
            None => return Err(Error::Parse("shape needs \"iota\"".into())),
        };
        let mut others = Vec::new();
        if let Some(list) = v.get("others") {
            let list = list
                .as_array()
                .ok_or_else(|| Error::Parse("\"others\" must be an array".into()))?;
            if list.len() > MAX_PARSED_ENTRIES {
                return Err(Error::Parse("too many shape entries".into()));
            }
            for o in list {
                let d = o
                    .get("degree")
                    .and_then(Value::as_u64)
                    .filter(|&d| d >= 1 && d <= MAX_PARSED_DEGREE as u64)
                    .ok_or_else(|| Error::Parse(format!("bad degree in {o}")))?;
                let p = Partition::from_json(
                    o.get("partition")
                        .ok_or_else(|| Error::Parse(format!("missing partition in {o}")))?,
                )?;
                let c = match o.get("count") {
                    None => 1,
                    Some(c) => c
                        .as_u64()
                        .filter(|&c| (1..=MAX_PARSED_COUNT).contains(&c))
                        .ok_or_else(|| Error::Parse(format!("bad count in {o}")))?,
                };
                for _ in 0..c {
                    others.push((d as u32, p.clone()));
                }
                if others.len() > MAX_PARSED_ENTRIES {
                    return Err(Error::Parse("too many shape entries".into()));
                }
            }
        }
        LabelShape::new(iota, others)
    }

    /// Same human syntax as [`LabelFunction::parse`]; named keys become anonymous.
    pub fn parse(s: &str) -> Result<LabelShape> {
        Ok(LabelFunction::parse(s)?.shape())
    }
}

impl fmt::Display for LabelShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ι:{}", self.iota)?;
        for (d, p, c) in self.grouped() {
            write!(f, "; {d}:{p}x{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LabelShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Cuspidals of degree `d` other than `ι`, over `F_q`.
pub fn non_iota_pool(d: u32, q: u64) -> BigUint {
    let c = cuspidal_count(d, q);
    if d == 1 {
        if c.is_zero() {
            c
        } else {
            c - 1u32
        }
    } else {
        c
    }
}

/// `a·(a−1)···(a−k+1)`; zero when `k > a`.
pub fn falling(a: &BigUint, k: usize) -> BigUint {
    let mut out = BigUint::one();
    for i in 0..k {
        if &BigUint::from(i) >= a {
            return BigUint::zero();
        }
        out *= a - BigUint::from(i);
    }
    out
}

pub(crate) fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Ways to place a multiset of anonymous parts on distinct cuspidals, given
/// how many cuspidals of each degree are free.
pub(crate) fn anon_placements(
    others: &[(u32, Partition)],
    free: impl Fn(u32) -> BigUint,
) -> BigUint {
    let shape = LabelShape {
        iota: Partition::empty(),
        others: others.to_vec(),
    }
    .normalized();
    let mut total = BigUint::one();
    for (d, k) in shape.degree_counts() {
        total *= falling(&free(d), k);
        if total.is_zero() {
            return total;
        }
    }
    for (_, _, c) in shape.grouped() {
        total /= factorial(c);
    }
    total
}

/// Number of concrete label functions over `F_q` with the given shape.
pub fn class_size(shape: &LabelShape, q: u64) -> BigUint {
    anon_placements(&shape.others, |d| non_iota_pool(d, q))
}

/// All label shapes of norm `n` realized over `F_q`, with their class sizes.
pub fn enumerate_labels(n: u32, q: u64) -> Result<Vec<(LabelShape, BigUint)>> {
    enumerate_labels_bounded(n, q, DEFAULT_CENSUS_BOUND)
}

pub fn enumerate_labels_bounded(
    n: u32,
    q: u64,
    bound: u32,
) -> Result<Vec<(LabelShape, BigUint)>> {
    if n > bound {
        return Err(Error::BoundExceeded(format!(
            "enumerate_labels({n}) exceeds bound {bound}"
        )));
    }
    if q < 2 {
        return Err(Error::BadParameters(format!("q = {q} < 2")));
    }
    let mut items = Vec::new();
    for d in 1..=n {
        for s in 1..=n / d {
            for p in partitions_of(s)? {
                items.push((d, p));
            }
        }
    }
    let mut out = Vec::new();
    for a in 0..=n {
        for iota in partitions_of(a)? {
            let mut chosen = Vec::new();
            census_rec(&items, 0, (n - a) as u64, &mut chosen, &mut |others| {
                let shape = LabelShape::new(iota.clone(), others.to_vec()).expect("valid parts");
                let c = class_size(&shape, q);
                if !c.is_zero() {
                    out.push((shape, c));
                }
            });
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn census_rec(
    items: &[(u32, Partition)],
    start: usize,
    rem: u64,
    chosen: &mut Vec<(u32, Partition)>,
    emit: &mut dyn FnMut(&[(u32, Partition)]),
) {
    if rem == 0 {
        emit(chosen);
        return;
    }
    for i in start..items.len() {
        let (d, p) = &items[i];
        let w = *d as u64 * p.size() as u64;
        if w <= rem {
            chosen.push((*d, p.clone()));
            census_rec(items, i, rem - w, chosen, emit);
            chosen.pop();
        }
    }
}
