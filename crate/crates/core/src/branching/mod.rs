//! The Thoma–Zelevinsky branching rule for `G_n = GL_n(F_q)`.
//!
//! The multiplicity of `φ(ν)` in the restriction of `φ(µ)` from `G_n` to
//! `G_{n−m}` is the number of zigzag paths
//! `ν −→ λ¹ +→ µ¹ −→ λ² +→ … +→ µ^m = µ`.
//! Counting is done class by class (see [`dp`]), with an explicit field size:
//! intermediate labels may switch on cuspidals outside the support of both
//! endpoints, and how many of those exist depends on `q`.

pub mod concrete;
mod decomposition;
pub(crate) mod dp;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

pub use decomposition::{Decomposition, DecompositionEntry};

use crate::degrees::{degree_at, prime_power};
use crate::error::{Error, Result};
use crate::label::{
    enumerate_labels_bounded, pad, trivial_label, CuspidalKey, CuspidalKind, LabelFunction,
    LabelShape,
};
use dp::{propagate, Context, MarginProbe, State};

pub(crate) fn check_q(q: u64) -> Result<()> {
    if prime_power(q).is_none() {
        return Err(Error::BadParameters(format!("q = {q} is not a prime power")));
    }
    Ok(())
}

/// Tracks `ι` plus every key in the given labels.
fn context_for(q: u64, labels: &[&LabelFunction]) -> Result<Context> {
    let mut keys: BTreeSet<CuspidalKey> = BTreeSet::new();
    for l in labels {
        keys.extend(l.support().filter(|k| !k.is_iota()).cloned());
    }
    let mut named = vec![CuspidalKey::IOTA];
    named.extend(keys);
    let ctx = Context::new(q, named);
    // every tracked cuspidal must exist over F_q
    let mut per_degree: std::collections::BTreeMap<u32, usize> = Default::default();
    for k in ctx.named_keys.iter().filter(|k| !k.is_iota()) {
        *per_degree.entry(k.degree).or_insert(0) += 1;
    }
    for (d, needed) in per_degree {
        let pool = crate::label::non_iota_pool(d, q);
        if pool < BigUint::from(needed) {
            return Err(Error::PoolExhausted {
                degree: d,
                needed: needed + usize::from(d == 1),
                available: (pool + BigUint::from(u8::from(d == 1))).to_string(),
            });
        }
    }
    Ok(ctx)
}

fn state_of(ctx: &Context, label: &LabelFunction) -> State {
    State {
        named: ctx.named_keys.iter().map(|k| label.get(k)).collect(),
        anon: Vec::new(),
    }
}

fn label_of(ctx: &Context, state: &State) -> LabelFunction {
    let mut out = LabelFunction::new();
    for (k, p) in ctx.named_keys.iter().zip(&state.named) {
        out.insert(k.clone(), p.clone()).expect("tracked keys are valid");
    }
    let mut slots: std::collections::BTreeMap<u32, u32> = Default::default();
    // fresh anonymous slots are numbered after any anonymous keys already tracked
    for k in &ctx.named_keys {
        if let CuspidalKind::Anon(s) = k.kind {
            let e = slots.entry(k.degree).or_insert(0);
            *e = (*e).max(s + 1);
        }
    }
    for (d, p) in &state.anon {
        let s = slots.entry(*d).or_insert(0);
        out.insert(CuspidalKey::anon(*d, *s), p.clone())
            .expect("anonymous keys are valid");
        *s += 1;
    }
    out
}

/// One summand of a one-step restriction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionEntry {
    /// A representative `ν`; keys of `µ` keep their identity, fresh cuspidals
    /// are anonymous.
    pub label: LabelFunction,
    pub shape: LabelShape,
    /// Multiplicity of each concrete `φ(ν)` in the class.
    pub multiplicity: BigUint,
    /// Number of concrete `ν` in the class.
    pub class_size: BigUint,
}

/// Restriction of `φ(µ)` from `G_n` to `G_{n−1}`, grouped by class of `ν`.
pub fn restrict_step(mu: &LabelFunction, q: u64) -> Result<Vec<RestrictionEntry>> {
    check_q(q)?;
    if mu.norm() == 0 {
        return Err(Error::BadParameters("cannot restrict a label of norm 0".into()));
    }
    let ctx = context_for(q, &[mu])?;
    let layer = propagate(&ctx, state_of(&ctx, mu), 1, -1, &mut MarginProbe::default());
    let mut out = Vec::new();
    for (state, weight) in layer {
        let class = ctx.class_size(&state);
        let (mult, rem) = weight.div_rem(&class);
        debug_assert!(rem.is_zero());
        let label = label_of(&ctx, &state);
        out.push(RestrictionEntry {
            shape: label.shape(),
            label,
            multiplicity: mult,
            class_size: class,
        });
    }
    out.sort_by_key(|a| a.label.to_string());
    Ok(out)
}

/// `|Z(ν, µ)|`, the multiplicity of `φ(ν)` in `φ(µ)` restricted to `G_{‖ν‖}`.
///
/// All non-`ι` keys of `ν` and `µ` denote distinct concrete cuspidals; a key
/// present in both denotes the same cuspidal.
pub fn count_zigzag(nu: &LabelFunction, mu: &LabelFunction, m: u32, q: u64) -> Result<BigUint> {
    check_q(q)?;
    if mu.norm() != nu.norm() + m as u64 {
        return Err(Error::SizeMismatch(format!(
            "‖µ‖ − ‖ν‖ = {} − {} ≠ m = {m}",
            mu.norm(),
            nu.norm()
        )));
    }
    let ctx = context_for(q, &[nu, mu])?;
    let layer = propagate(&ctx, state_of(&ctx, mu), m, -1, &mut MarginProbe::default());
    Ok(layer
        .get(&state_of(&ctx, nu))
        .cloned()
        .unwrap_or_else(BigUint::zero))
}

fn validate_nm(n: u32, m: u32, q: u64) -> Result<()> {
    check_q(q)?;
    if m > n {
        return Err(Error::BadParameters(format!("m = {m} > n = {n}")));
    }
    Ok(())
}

/// Irreducible decomposition of `k[G_n/G_{n−m}] = Ind_{G_{n−m}}^{G_n}(1)`.
///
/// By Frobenius reciprocity the multiplicity of `φ(µ)` is `|Z(ν_{n−m}, µ)|`;
/// paths are propagated forward from `ν_{n−m} = {ι: (n−m)}` so that every
/// target is reached in one pass.
pub fn decompose_perm_module(n: u32, m: u32, q: u64) -> Result<Decomposition> {
    validate_nm(n, m, q)?;
    let ctx = Context::new(q, vec![CuspidalKey::IOTA]);
    let start = state_of(&ctx, &trivial_label(n - m));
    let layer = propagate(&ctx, start, m, 1, &mut MarginProbe::default());
    let mut entries = Vec::with_capacity(layer.len());
    for (state, weight) in layer {
        let class = ctx.class_size(&state);
        let (mult, rem) = weight.div_rem(&class);
        if !rem.is_zero() {
            return Err(Error::InexactDivision(format!(
                "path count {weight} not divisible by class size {class}"
            )));
        }
        let full = LabelShape::new(state.named[0].clone(), state.anon.clone())?;
        let degree = degree_at(&full, q)?;
        let stable = LabelShape {
            iota: full.iota.tail(),
            others: full.others.clone(),
        };
        entries.push(DecompositionEntry {
            shape: stable,
            multiplicity: mult,
            class_size: class,
            degree,
        });
    }
    Ok(Decomposition::new(n, m, q, entries))
}

/// Same decomposition, computed target by target: every stable shape within
/// the support bounds `‖λ‖ ≤ 2m`, `λ1 ≤ m` is padded to `λ[n]` and its
/// multiplicity obtained from [`count_zigzag`] run backwards from it.
pub fn decompose_by_candidates(n: u32, m: u32, q: u64) -> Result<Decomposition> {
    validate_nm(n, m, q)?;
    let nu = trivial_label(n - m);
    let mut entries = Vec::new();
    for t in 0..=2 * m {
        for (shape, class) in enumerate_labels_bounded(t, q, u32::MAX)? {
            if shape.iota.first() > m {
                continue;
            }
            let rep = shape.representative();
            let mu = match pad(&rep, n as u64) {
                Ok(mu) => mu,
                Err(Error::PadUndefined { .. }) => continue,
                Err(e) => return Err(e),
            };
            let mult = count_zigzag(&nu, &mu, m, q)?;
            if mult.is_zero() {
                continue;
            }
            let degree = degree_at(&mu.shape(), q)?;
            entries.push(DecompositionEntry {
                shape,
                multiplicity: mult,
                class_size: class,
                degree,
            });
        }
    }
    Ok(Decomposition::new(n, m, q, entries))
}

/// Walks every zigzag path from `ν_{L−m}` of length `m` and counts the steps
/// whose intermediate `ι`-partitions (both `λ^(r)` and `µ^(s)`) violate
/// `row1 − 1 ≥ row2`. Zero whenever `L ≥ 3m + 1`.
pub fn first_row_margin_violations(m: u32, total: u32, q: u64) -> Result<usize> {
    validate_nm(total, m, q)?;
    let ctx = Context::new(q, vec![CuspidalKey::IOTA]);
    let start = state_of(&ctx, &trivial_label(total - m));
    let mut probe = MarginProbe {
        enabled: true,
        violations: 0,
    };
    propagate(&ctx, start, m, 1, &mut probe);
    Ok(probe.violations)
}

#[cfg(test)]
mod tests;
