//! Dense arithmetic tables for `F_q`, `q ≤ 9`.
//!
//! An element is encoded as `Σ c_i p^i` where `c_i` is the coefficient of
//! `x^i` in its residue modulo the fixed irreducible polynomial:
//!
//! | q | modulus       |
//! |---|---------------|
//! | 4 | x² + x + 1    |
//! | 8 | x³ + x + 1    |
//! | 9 | x² + 1        |
//!
//! Prime fields use plain residues.

use crate::degrees::prime_power;
use crate::error::{Error, Result};

pub const MAX_Q: u64 = 9;

#[derive(Clone, Debug)]
pub struct FieldTable {
    q: usize,
    p: usize,
    k: u32,
    /// Monic modulus, lowest coefficient first.
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    generator: u8,
}

fn modulus_for(p: u64, k: u32) -> Vec<u8> {
    match (p, k) {
        (_, 1) => vec![0, 1],
        (2, 2) => vec![1, 1, 1],
        (2, 3) => vec![1, 1, 0, 1],
        (3, 2) => vec![1, 0, 1],
        _ => unreachable!("q ≤ 9 leaves no other prime powers"),
    }
}

impl FieldTable {
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q)
            .filter(|_| q <= MAX_Q)
            .ok_or_else(|| {
                Error::BadParameters(format!("oracle fields need a prime power q ≤ {MAX_Q}, got {q}"))
            })?;
        let modulus = modulus_for(p, k);
        let (q, p) = (q as usize, p as usize);
        let digits = |x: usize| -> Vec<usize> {
            (0..k).scan(x, |r, _| {
                let d = *r % p;
                *r /= p;
                Some(d)
            })
            .collect()
        };
        let encode = |c: &[usize]| c.iter().rev().fold(0, |acc, &d| acc * p + d);
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum) as u8;
                let mut prod = vec![0usize; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // reduce by the monic modulus from the top down
                for top in (k as usize..prod.len()).rev() {
                    let c = prod[top];
                    if c == 0 {
                        continue;
                    }
                    for (i, &mc) in modulus.iter().enumerate() {
                        let idx = top - k as usize + i;
                        prod[idx] = (prod[idx] + (p - c) * mc as usize) % p;
                    }
                }
                mul[a * q + b] = encode(&prod[..k as usize]) as u8;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u8
                }
            })
            .collect();
        let mut f = FieldTable {
            q,
            p,
            k,
            modulus,
            add,
            mul,
            neg,
            inv,
            generator: 1,
        };
        f.generator = (1..q as u8)
            .find(|&g| f.multiplicative_order(g) == q - 1)
            .expect("F_q^× is cyclic");
        Ok(f)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: u8, mut e: u64) -> u8 {
        let (mut base, mut acc) = (a, 1u8);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn frobenius(&self, a: u8) -> u8 {
        self.pow(a, self.p as u64)
    }

    /// A generator of the multiplicative group.
    pub fn generator(&self) -> u8 {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q as u8
    }

    fn multiplicative_order(&self, a: u8) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
            if k > self.q {
                return 0;
            }
        }
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const QS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

    #[test]
    fn axioms_hold_exhaustively() {
        for q in QS {
            let f = FieldTable::new(q).unwrap();
            let els: Vec<u8> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.mul(a, 0), 0);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive_and_generator_has_full_order() {
        for q in QS {
            let f = FieldTable::new(q).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                }
                assert_eq!(f.pow(a, q), a);
            }
            let g = f.generator();
            let powers: std::collections::BTreeSet<u8> =
                (0..q - 1).map(|e| f.pow(g, e)).collect();
            assert_eq!(powers.len() as u64, q - 1);
        }
    }

    #[test]
    fn rejects_out_of_range() {
        for q in [0, 1, 6, 10, 11, 16] {
            assert!(FieldTable::new(q).is_err(), "{q}");
        }
    }
}
