//! Group orders, cuspidal counts and Green's degree polynomials, all exact.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::label::{enumerate_labels, LabelShape};
use crate::qpoly::QPolynomial;

/// `|GL_n(F_q)| = ∏_{i<n} (q^n − q^i)` as a polynomial in `q`.
pub fn gl_order_poly(n: u32) -> QPolynomial {
    (0..n).fold(QPolynomial::one(), |acc, i| {
        let f = &QPolynomial::monomial(n, BigRational::one())
            - &QPolynomial::monomial(i, BigRational::one());
        &acc * &f
    })
}

/// `|GL_n(F_q)|` for a concrete `q`.
pub fn gl_order(n: u32, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let qn = q.pow(n);
    (0..n).fold(BigUint::one(), |acc, i| acc * (&qn - q.pow(i)))
}

/// `ψ_n = ∏_{i=1}^{n} (q^i − 1)`.
fn psi_poly(n: u64) -> QPolynomial {
    (1..=n as u32).fold(QPolynomial::one(), |acc, i| {
        &acc * &QPolynomial::binomial(i, 1)
    })
}

pub fn mobius(n: u32) -> i32 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `|C_d|`, the number of cuspidal irreducibles of `GL_d(F_q)`:
/// `(1/d) Σ_{e | d} μ(d/e) (q^e − 1)`.
pub fn cuspidal_count(d: u32, q: u64) -> BigUint {
    assert!(d >= 1, "cuspidal degree must be positive");
    let q = BigInt::from(q);
    let mut sum = BigInt::zero();
    for e in (1..=d).filter(|e| d.is_multiple_of(*e)) {
        let mu = mobius(d / e);
        if mu != 0 {
            sum += BigInt::from(mu) * (q.pow(e) - 1);
        }
    }
    let (quot, rem) = sum.div_rem(&BigInt::from(d));
    assert!(rem.is_zero() && !quot.is_negative(), "Möbius sum not divisible");
    quot.to_biguint().expect("non-negative")
}

/// Green's degree polynomial of `φ(µ)` for a full label shape `µ`:
/// `ψ_n · ∏ q_d^{n(π)} / ∏_{h ∈ hooks(π)} (q_d^h − 1)` over every carried
/// partition `π` at degree `d`, with `q_d = q^d` and `n = ‖µ‖`.
pub fn degree_poly(shape: &LabelShape) -> QPolynomial {
    let parts = std::iter::once((1u32, &shape.iota)).chain(shape.others.iter().map(|(d, p)| (*d, p)));
    let mut num_exp = 0u64;
    let mut denominators = Vec::new();
    for (d, p) in parts {
        num_exp += d as u64 * p.n_stat();
        for h in p.hooks() {
            denominators.push(QPolynomial::binomial(d * h, 1));
        }
    }
    let exp = u32::try_from(num_exp).expect("degree exponent fits in u32");
    let mut acc = &psi_poly(shape.norm()) * &QPolynomial::monomial(exp, BigRational::one());
    for den in &denominators {
        acc = acc
            .div_exact(den)
            .expect("Green degree formula divides exactly");
    }
    acc
}

/// Degree of `φ(µ)` at a concrete `q`.
pub fn degree_at(shape: &LabelShape, q: u64) -> Result<BigUint> {
    let v = degree_poly(shape).eval_integer(&BigInt::from(q))?;
    v.to_biguint()
        .ok_or_else(|| Error::InexactDivision(format!("negative degree for {shape}")))
}

/// `Σ class_size · deg² = |G_n|` over the label census of `G_n`.
pub fn sum_degree_squares_check(n: u32, q: u64) -> Result<bool> {
    if n > 5 || q > 5 {
        return Err(Error::GuardExceeded(format!(
            "sum_degree_squares_check({n}, {q}) needs n ≤ 5 and q ≤ 5"
        )));
    }
    let mut total = BigUint::zero();
    for (shape, class) in enumerate_labels(n, q)? {
        let d = degree_at(&shape, q)?;
        total += class * &d * &d;
    }
    Ok(total == gl_order(n, q))
}

/// `|Hom_VIC(F_q^m, F_q^n)| = q^{m(n−m)} ∏_{i<m} (q^n − q^i)`.
pub fn vic_hom_count(m: u32, n: u32, q: u64) -> Result<BigUint> {
    if m > n {
        return Err(Error::BadParameters(format!("m = {m} > n = {n}")));
    }
    if q < 2 {
        return Err(Error::BadParameters(format!("q = {q} < 2")));
    }
    let qb = BigUint::from(q);
    let qn = qb.pow(n);
    let inj = (0..m).fold(BigUint::one(), |acc, i| acc * (&qn - qb.pow(i)));
    Ok(qb.pow(m * (n - m)) * inj)
}

/// `P(T) = T^m · q^{−m²} · ∏_{i<m} (T − q^i)`, so that `P(q^n)` counts
/// VIC morphisms `F_q^m → F_q^n` for every `n ≥ m`.
pub fn p_polynomial(m: u32, q: u64) -> QPolynomial {
    let qr = BigRational::from_integer(BigInt::from(q));
    let mut acc = QPolynomial::monomial(m, BigRational::one());
    for i in 0..m {
        let root = QPolynomial::monomial(0, num_traits::pow(qr.clone(), i as usize));
        acc = &acc * &(&QPolynomial::var() - &root);
    }
    let scale = num_traits::pow(qr, (m * m) as usize);
    acc.scale(&scale.recip())
}

/// `P(q^n)` as an integer.
pub fn p_polynomial_at(m: u32, q: u64, n: u32) -> Result<BigUint> {
    let t = BigInt::from(q).pow(n);
    p_polynomial(m, q)
        .eval_integer(&t)?
        .to_biguint()
        .ok_or_else(|| Error::InexactDivision("negative dimension".into()))
}

/// `Some((p, k))` when `q = p^k` with `p` prime and `k ≥ 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    for k in (1..=63u32).rev() {
        let r = integer_root(q, k);
        if r >= 2 && r.checked_pow(k) == Some(q) && is_prime(r) {
            return Some((r, k));
        }
    }
    None
}

fn integer_root(x: u64, k: u32) -> u64 {
    if k == 1 {
        return x;
    }
    let mut r = (x as f64).powf(1.0 / k as f64) as u64;
    while r > 0 && r.checked_pow(k).is_none_or(|v| v > x) {
        r -= 1;
    }
    while (r + 1).checked_pow(k).is_some_and(|v| v <= x) {
        r += 1;
    }
    r
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Convenience for tests and reports.
pub fn to_u64(x: &BigUint) -> Option<u64> {
    x.to_u64()
}
