//! Reference zigzag counting over fully materialized cuspidal pools.
//!
//! Every cuspidal of degree `d` over `F_q` is an index `(d, j)` with
//! `j < |C_d|`; `ι` is `(1, 0)`. Paths are counted by the plain recursion
//! `|Z(ν, µ)| = Σ_{µ'} step(µ', µ)·|Z(ν, µ')|` over every concrete `µ'` of norm
//! one less, where `step` is obtained by testing every candidate `λ` against
//! the two arrow predicates. Nothing here shares code with the class-based
//! counter in the parent module; it only scales to small `n` and `q`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::degrees::cuspidal_count;
use crate::error::{Error, Result};
use crate::label::LabelShape;
use crate::partition::{arrow_down, arrow_up, partitions_of, Partition};

/// `(degree, index)`; `(1, 0)` is `ι`.
pub type Cuspidal = (u32, u32);

/// A label over concrete cuspidals, empty partitions omitted.
pub type ConcreteLabel = BTreeMap<Cuspidal, Partition>;

const IOTA: Cuspidal = (1, 0);

/// Largest `Σ_d |C_d|` a pool may hold.
const POOL_GUARD: usize = 4096;

pub struct ConcretePool {
    q: u64,
    sizes: Vec<u32>,
}

impl ConcretePool {
    /// Materializes cuspidals of every degree up to `max_degree`.
    pub fn new(q: u64, max_degree: u32) -> Result<Self> {
        let mut sizes = vec![0];
        let mut total = 0usize;
        for d in 1..=max_degree {
            let c = cuspidal_count(d, q)
                .to_usize()
                .filter(|&c| c <= POOL_GUARD)
                .ok_or_else(|| Error::GuardExceeded(format!("|C_{d}| over F_{q} too large")))?;
            total += c;
            if total > POOL_GUARD {
                return Err(Error::GuardExceeded(format!(
                    "cuspidal pool for q = {q} up to degree {max_degree} exceeds {POOL_GUARD}"
                )));
            }
            sizes.push(c as u32);
        }
        Ok(ConcretePool { q, sizes })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn size(&self, d: u32) -> u32 {
        self.sizes.get(d as usize).copied().unwrap_or(0)
    }

    /// Every concrete label of norm exactly `n`.
    pub fn labels_of_norm(&self, n: u32) -> Vec<ConcreteLabel> {
        let cusps: Vec<Cuspidal> = (1..self.sizes.len() as u32)
            .flat_map(|d| (0..self.size(d)).map(move |j| (d, j)))
            .collect();
        let mut out = Vec::new();
        let mut cur = ConcreteLabel::new();
        labels_rec(&cusps, 0, n, &mut cur, &mut out);
        out
    }

    /// A concrete label of the given shape: anonymous parts go to the lowest
    /// free indices in order.
    pub fn realize(&self, shape: &LabelShape) -> Result<ConcreteLabel> {
        let mut out = ConcreteLabel::new();
        if !shape.iota.is_empty() {
            out.insert(IOTA, shape.iota.clone());
        }
        let mut next: BTreeMap<u32, u32> = BTreeMap::new();
        for (d, p) in &shape.others {
            let j = next.entry(*d).or_insert(u32::from(*d == 1));
            if *j >= self.size(*d) {
                return Err(Error::PoolExhausted {
                    degree: *d,
                    needed: *j as usize + 1,
                    available: self.size(*d).to_string(),
                });
            }
            out.insert((*d, *j), p.clone());
            *j += 1;
        }
        Ok(out)
    }
}

fn labels_rec(
    cusps: &[Cuspidal],
    i: usize,
    rem: u32,
    cur: &mut ConcreteLabel,
    out: &mut Vec<ConcreteLabel>,
) {
    if rem == 0 {
        out.push(cur.clone());
        return;
    }
    if i == cusps.len() {
        return;
    }
    let c = cusps[i];
    labels_rec(cusps, i + 1, rem, cur, out);
    for s in 1..=rem / c.0 {
        for p in partitions_of(s).expect("small sizes") {
            cur.insert(c, p);
            labels_rec(cusps, i + 1, rem - s * c.0, cur, out);
        }
        cur.remove(&c);
    }
}

pub fn concrete_norm(l: &ConcreteLabel) -> u32 {
    l.iter().map(|((d, _), p)| d * p.size()).sum()
}

/// Shape of a concrete label.
pub fn concrete_shape(l: &ConcreteLabel) -> LabelShape {
    let iota = l.get(&IOTA).cloned().unwrap_or_default();
    let others = l
        .iter()
        .filter(|(c, _)| **c != IOTA)
        .map(|((d, _), p)| (*d, p.clone()))
        .collect();
    LabelShape::new(iota, others).expect("concrete parts are nonempty")
}

/// `#{λ : a −→ λ, λ +→ b}` for single partitions, by testing every `λ` that
/// fits inside both.
fn pair_count(a: &Partition, b: &Partition) -> u64 {
    let cap = a.size().min(b.size());
    (0..=cap)
        .flat_map(|s| partitions_of(s).expect("small sizes"))
        .filter(|lam| arrow_down(a, lam) && arrow_up(lam, b))
        .count() as u64
}

/// One-step branching multiplicity `#{λ : µ' −→ λ +→ µ}` for concrete labels.
pub fn step_count(lower: &ConcreteLabel, upper: &ConcreteLabel) -> u64 {
    let empty = Partition::empty();
    let mut keys: Vec<&Cuspidal> = lower.keys().chain(upper.keys()).collect();
    keys.sort();
    keys.dedup();
    let mut total = 1u64;
    for k in keys {
        let a = lower.get(k).unwrap_or(&empty);
        let b = upper.get(k).unwrap_or(&empty);
        total *= pair_count(a, b);
        if total == 0 {
            break;
        }
    }
    total
}

/// Memoized `|Z(ν, ·)|` for a fixed source `ν`.
pub struct ConcreteZigzag<'a> {
    pool: &'a ConcretePool,
    source: ConcreteLabel,
    source_norm: u32,
    by_norm: HashMap<u32, Vec<ConcreteLabel>>,
    memo: HashMap<ConcreteLabel, BigUint>,
}

impl<'a> ConcreteZigzag<'a> {
    pub fn new(pool: &'a ConcretePool, source: ConcreteLabel) -> Self {
        let source_norm = concrete_norm(&source);
        ConcreteZigzag {
            pool,
            source,
            source_norm,
            by_norm: HashMap::new(),
            memo: HashMap::new(),
        }
    }

    fn layer(&mut self, n: u32) -> Vec<ConcreteLabel> {
        let pool = self.pool;
        self.by_norm
            .entry(n)
            .or_insert_with(|| pool.labels_of_norm(n))
            .clone()
    }

    /// `|Z(ν, µ)|`.
    pub fn count(&mut self, target: &ConcreteLabel) -> BigUint {
        let n = concrete_norm(target);
        if n < self.source_norm {
            return BigUint::zero();
        }
        if n == self.source_norm {
            return BigUint::from(u8::from(*target == self.source));
        }
        if let Some(v) = self.memo.get(target) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for lower in self.layer(n - 1) {
            let s = step_count(&lower, target);
            if s > 0 {
                let z = self.count(&lower);
                total += z * s;
            }
        }
        self.memo.insert(target.clone(), total.clone());
        total
    }
}

/// Decomposition of `k[G_n/G_{n−m}]` computed over every concrete label of
/// norm `n`: full shape → (multiplicity, number of concrete labels realizing
/// it with that multiplicity). Fails if one class carries two multiplicities.
pub fn concrete_decomposition(
    n: u32,
    m: u32,
    q: u64,
) -> Result<BTreeMap<LabelShape, (BigUint, BigUint)>> {
    if m > n {
        return Err(Error::BadParameters(format!("m = {m} > n = {n}")));
    }
    let pool = ConcretePool::new(q, n.max(1))?;
    let mut source = ConcreteLabel::new();
    if n > m {
        source.insert(IOTA, Partition::row(n - m));
    }
    let mut z = ConcreteZigzag::new(&pool, source);
    let mut out: BTreeMap<LabelShape, (BigUint, BigUint)> = BTreeMap::new();
    for target in pool.labels_of_norm(n) {
        let c = z.count(&target);
        if c.is_zero() {
            continue;
        }
        let shape = concrete_shape(&target);
        match out.get_mut(&shape) {
            Some((mult, count)) => {
                if *mult != c {
                    return Err(Error::InexactDivision(format!(
                        "class {shape} carries multiplicities {mult} and {c}"
                    )));
                }
                *count += 1u32;
            }
            None => {
                out.insert(shape, (c, 1u32.into()));
            }
        }
    }
    Ok(out)
}
