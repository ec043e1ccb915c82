//! Symmetry-reduced path counting over label functions.
//!
//! A [`State`] records the partitions on a fixed list of tracked cuspidals
//! (always `ι` first) and a sorted multiset of `(degree, partition)` parts on
//! untracked cuspidals, which are only known to be distinct from each other
//! and from the tracked ones. The weight attached to a state is the number of
//! concrete paths ending anywhere in its class.
//!
//! One zigzag step (`µ −→ λ +→ µ'` read in either direction) acts on every
//! cuspidal independently, so the successors of a class are generated from a
//! single representative. Cuspidals that are empty in the representative can
//! only be switched on with a column `(1^k)`; those activations are weighted by
//! the number of ways to pick distinct free cuspidals for them.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::label::{anon_placements, falling, factorial, non_iota_pool, CuspidalKey};
use crate::partition::{down_set, up_set, Partition};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct State {
    pub named: Vec<Partition>,
    pub anon: Vec<(u32, Partition)>,
}

impl State {
    pub fn norm(&self, ctx: &Context) -> u64 {
        let named: u64 = self
            .named
            .iter()
            .zip(&ctx.named_degrees)
            .map(|(p, &d)| d as u64 * p.size() as u64)
            .sum();
        named
            + self
                .anon
                .iter()
                .map(|(d, p)| *d as u64 * p.size() as u64)
                .sum::<u64>()
    }

    fn anon_counts(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for (d, _) in &self.anon {
            *out.entry(*d).or_insert(0) += 1;
        }
        out
    }
}

/// Field size and the tracked cuspidals.
pub(crate) struct Context {
    pub named_keys: Vec<CuspidalKey>,
    pub named_degrees: Vec<u32>,
    q: u64,
    free: std::cell::RefCell<BTreeMap<u32, BigUint>>,
}

impl Context {
    /// `named_keys[0]` must be `ι`.
    pub fn new(q: u64, named_keys: Vec<CuspidalKey>) -> Self {
        debug_assert!(named_keys.first().is_some_and(CuspidalKey::is_iota));
        let named_degrees = named_keys.iter().map(|k| k.degree).collect();
        Context {
            named_keys,
            named_degrees,
            q,
            free: Default::default(),
        }
    }

    /// Cuspidals of degree `d` that are neither `ι` nor tracked.
    pub fn free_pool(&self, d: u32) -> BigUint {
        if let Some(v) = self.free.borrow().get(&d) {
            return v.clone();
        }
        let tracked = self
            .named_keys
            .iter()
            .filter(|k| k.degree == d && !k.is_iota())
            .count();
        let pool = non_iota_pool(d, self.q);
        let v = if pool < BigUint::from(tracked) {
            BigUint::zero()
        } else {
            pool - BigUint::from(tracked)
        };
        self.free.borrow_mut().insert(d, v.clone());
        v
    }

    /// Number of concrete labels in the class of `state`.
    pub fn class_size(&self, state: &State) -> BigUint {
        anon_placements(&state.anon, |d| self.free_pool(d))
    }
}

/// One way to move a single cuspidal through a step.
#[derive(Clone, Debug)]
struct KeyOption {
    part: Partition,
    count: u64,
    delta: i64,
    /// Every intermediate `λ` counted here has `λ1 − 1 ≥ λ2`.
    margin_ok: bool,
}

/// Optional checks gathered while stepping.
#[derive(Default, Clone, Debug)]
pub(crate) struct MarginProbe {
    pub enabled: bool,
    pub violations: usize,
}

fn margin(p: &Partition) -> bool {
    p.first() > p.get(1)
}

/// Options for one cuspidal of degree `d` currently carrying `part`, whose
/// norm may rise by at most `max_up`.
fn key_options(part: &Partition, d: u32, max_up: i64, split_margin: bool) -> Vec<KeyOption> {
    let mut acc: HashMap<(Partition, bool), u64> = HashMap::new();
    let base = part.size() as i64;
    let max_size = base + max_up.div_euclid(d as i64);
    for lam in down_set(part) {
        let ok = !split_margin || margin(&lam);
        let lo = lam.size() as i64;
        for s in lo..=max_size.max(lo - 1) {
            for mu in up_set(&lam, s as u32) {
                *acc.entry((mu, ok)).or_insert(0) += 1;
            }
        }
    }
    let mut out: Vec<KeyOption> = acc
        .into_iter()
        .map(|((p, ok), count)| KeyOption {
            delta: d as i64 * (p.size() as i64 - base),
            part: p,
            count,
            margin_ok: ok,
        })
        .collect();
    out.sort_by(|a, b| (a.delta, &a.part, a.margin_ok).cmp(&(b.delta, &b.part, b.margin_ok)));
    out
}

/// Multisets of fresh columns `(d, 1^k)` of total weight `r`, with the number
/// of ways to place each on distinct free cuspidals.
fn fresh_options(
    r: i64,
    ctx: &Context,
    active: &BTreeMap<u32, usize>,
) -> Vec<(Vec<(u32, Partition)>, BigUint)> {
    let mut items = Vec::new();
    for d in 1..=r.max(0) as u32 {
        for k in 1..=(r as u32 / d) {
            items.push((d, k));
        }
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fresh_rec(&items, 0, r, &mut chosen, &mut |sel: &[(u32, u32)]| {
        let mut per_degree: BTreeMap<u32, usize> = BTreeMap::new();
        let mut runs: BTreeMap<(u32, u32), usize> = BTreeMap::new();
        for &(d, k) in sel {
            *per_degree.entry(d).or_insert(0) += 1;
            *runs.entry((d, k)).or_insert(0) += 1;
        }
        let mut w = BigUint::one();
        for (d, f) in per_degree {
            let pool = ctx.free_pool(d);
            let used = BigUint::from(active.get(&d).copied().unwrap_or(0));
            let avail = if pool < used { BigUint::zero() } else { pool - used };
            w *= falling(&avail, f);
            if w.is_zero() {
                return;
            }
        }
        for (_, c) in runs {
            w /= factorial(c);
        }
        let parts = sel
            .iter()
            .map(|&(d, k)| (d, Partition::column(k as usize)))
            .collect();
        out.push((parts, w));
    });
    out
}

fn fresh_rec(
    items: &[(u32, u32)],
    start: usize,
    rem: i64,
    chosen: &mut Vec<(u32, u32)>,
    emit: &mut dyn FnMut(&[(u32, u32)]),
) {
    if rem == 0 {
        emit(chosen);
        return;
    }
    for i in start..items.len() {
        let (d, k) = items[i];
        let w = (d * k) as i64;
        if w <= rem {
            chosen.push((d, k));
            fresh_rec(items, i, rem - w, chosen, emit);
            chosen.pop();
        }
    }
}

/// All classes reachable from `state` by one step changing the norm by
/// `delta`, each with the number of concrete (λ, successor) pairs starting from
/// one fixed representative of `state`.
pub(crate) fn successors(
    ctx: &Context,
    state: &State,
    delta: i64,
    probe: &mut MarginProbe,
) -> Vec<(State, BigUint)> {
    let degrees: Vec<u32> = ctx
        .named_degrees
        .iter()
        .copied()
        .chain(state.anon.iter().map(|(d, _)| *d))
        .collect();
    let parts: Vec<&Partition> = state
        .named
        .iter()
        .chain(state.anon.iter().map(|(_, p)| p))
        .collect();
    let removable: i64 = parts
        .iter()
        .zip(&degrees)
        .map(|(p, &d)| d as i64 * p.len() as i64)
        .sum();
    let max_up = (delta + removable).max(0);
    let options: Vec<Vec<KeyOption>> = parts
        .iter()
        .zip(&degrees)
        .enumerate()
        .map(|(i, (p, &d))| key_options(p, d, max_up, probe.enabled && i == 0))
        .collect();
    // suffix_min[i] = least total delta achievable by keys i..
    let mut suffix_min = vec![0i64; options.len() + 1];
    for i in (0..options.len()).rev() {
        let m = options[i].iter().map(|o| o.delta).min().unwrap_or(0);
        suffix_min[i] = suffix_min[i + 1] + m;
    }
    let active = state.anon_counts();
    let mut fresh_cache: HashMap<i64, Vec<(Vec<(u32, Partition)>, BigUint)>> = HashMap::new();
    let mut out: HashMap<State, BigUint> = HashMap::new();
    let mut pick: Vec<usize> = Vec::with_capacity(options.len());
    let n_named = state.named.len();

    let mut visit = |pick: &[usize], sum: i64| {
        let r = delta - sum;
        let fresh = fresh_cache
            .entry(r)
            .or_insert_with(|| fresh_options(r, ctx, &active));
        if fresh.is_empty() {
            return;
        }
        let mut w = BigUint::one();
        let mut named = Vec::with_capacity(n_named);
        let mut anon = Vec::new();
        let mut ok = true;
        for (i, &j) in pick.iter().enumerate() {
            let o = &options[i][j];
            w *= o.count;
            if i == 0 {
                ok &= o.margin_ok;
            }
            if i < n_named {
                named.push(o.part.clone());
            } else if !o.part.is_empty() {
                anon.push((degrees[i], o.part.clone()));
            }
        }
        if probe.enabled && (!ok || !margin(&named[0])) {
            probe.violations += 1;
        }
        for (extra, fw) in fresh.iter() {
            let mut a = anon.clone();
            a.extend(extra.iter().cloned());
            a.sort();
            let next = State {
                named: named.clone(),
                anon: a,
            };
            *out.entry(next).or_insert_with(BigUint::zero) += &w * fw;
        }
    };
    choose_rec(&options, &suffix_min, 0, 0, delta, &mut pick, &mut visit);
    let mut v: Vec<(State, BigUint)> = out.into_iter().collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v
}

fn choose_rec(
    options: &[Vec<KeyOption>],
    suffix_min: &[i64],
    i: usize,
    sum: i64,
    delta: i64,
    pick: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize], i64),
) {
    if sum + suffix_min[i] > delta {
        return;
    }
    if i == options.len() {
        visit(pick, sum);
        return;
    }
    for (j, o) in options[i].iter().enumerate() {
        pick.push(j);
        choose_rec(options, suffix_min, i + 1, sum + o.delta, delta, pick, visit);
        pick.pop();
    }
}

/// Propagates weights for `steps` steps of size `delta` from `start`.
/// Returns the final layer.
pub(crate) fn propagate(
    ctx: &Context,
    start: State,
    steps: u32,
    delta: i64,
    probe: &mut MarginProbe,
) -> HashMap<State, BigUint> {
    let mut layer: HashMap<State, BigUint> = HashMap::new();
    layer.insert(start, BigUint::one());
    for _ in 0..steps {
        let mut next: HashMap<State, BigUint> = HashMap::new();
        let mut keys: Vec<&State> = layer.keys().collect();
        keys.sort();
        for s in keys {
            let w = &layer[s];
            for (t, tw) in successors(ctx, s, delta, probe) {
                debug_assert_eq!(t.norm(ctx) as i64, s.norm(ctx) as i64 + delta);
                *next.entry(t).or_insert_with(BigUint::zero) += w * tw;
            }
        }
        layer = next;
    }
    layer
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(rows: &[u32]) -> Partition {
        Partition::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn key_options_cover_the_single_partition_step() {
        // (1) → λ ∈ {(1), ()} → partitions of size 2 reachable: (2), (1,1) from (1); (1,1) from ().
        let opts = key_options(&p(&[1]), 1, 1, false);
        let find = |q: &[u32]| opts.iter().find(|o| o.part == p(q)).map(|o| o.count);
        assert_eq!(find(&[2]), Some(1));
        assert_eq!(find(&[1, 1]), Some(2));
        assert_eq!(find(&[1]), Some(2));
        assert_eq!(find(&[]), Some(1));
    }

    #[test]
    fn fresh_weights() {
        let ctx = Context::new(5, vec![CuspidalKey::IOTA]);
        // Over F_5 there are 3 free degree-1 cuspidals and 10 of degree 2.
        let f = fresh_options(2, &ctx, &BTreeMap::new());
        let w = |want: &[(u32, Partition)]| {
            f.iter()
                .find(|(parts, _)| parts.as_slice() == want)
                .map(|(_, w)| w.clone())
        };
        assert_eq!(w(&[(1, p(&[1])), (1, p(&[1]))]), Some(3u32.into()));
        assert_eq!(w(&[(1, p(&[1, 1]))]), Some(3u32.into()));
        assert_eq!(w(&[(2, p(&[1]))]), Some(10u32.into()));
    }
}
