//! Exact univariate polynomials with rational coefficients.
//!
//! The indeterminate usually stands for the field size `q`; [`p_polynomial`]
//! reuses the same type with the indeterminate read as `T = q^n`.
//!
//! [`p_polynomial`]: crate::degrees::p_polynomial

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Exponents above this are rejected when parsing, to keep hostile inputs cheap.
const MAX_PARSED_EXPONENT: u32 = 4096;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct QPolynomial {
    /// exponent → nonzero coefficient
    coeffs: BTreeMap<u32, BigRational>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, BigRational::from_integer(c.into()))
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        Self::monomial(1, BigRational::one())
    }

    pub fn monomial(exp: u32, coeff: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        QPolynomial { coeffs }
    }

    /// `x^e − c` for an integer `c`.
    pub fn binomial(exp: u32, c: i64) -> Self {
        &Self::monomial(exp, BigRational::one()) - &Self::constant(c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: u32) -> BigRational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    fn add_term(&mut self, exp: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (&e, a) in &self.coeffs {
            out.add_term(e, a * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        // Horner over the sparse exponents.
        let mut acc = BigRational::zero();
        let mut last = match self.degree() {
            Some(d) => d,
            None => return acc,
        };
        for (&e, c) in self.coeffs.iter().rev() {
            acc *= pow_rat(x, last - e);
            acc += c;
            last = e;
        }
        acc * pow_rat(x, last)
    }

    /// Evaluates at an integer and requires an integer result.
    pub fn eval_integer(&self, x: &BigInt) -> Result<BigInt> {
        let v = self.eval(&BigRational::from_integer(x.clone()));
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::InexactDivision(format!(
                "{self} at {x} is {v}, not an integer"
            )))
        }
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, divisor: &QPolynomial) -> (QPolynomial, QPolynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeff(dd);
        let mut quot = QPolynomial::zero();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.coeff(rd) / &lead;
            let shift = rd - dd;
            for (&e, a) in &divisor.coeffs {
                rem.add_term(e + shift, -(a * &c));
            }
            quot.add_term(shift, c);
        }
        (quot, rem)
    }

    /// Division that must leave no remainder.
    pub fn div_exact(&self, divisor: &QPolynomial) -> Result<QPolynomial> {
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision(format!("({self}) / ({divisor})")))
        }
    }

    /// `{"coeffs": {"<exp>": "<a/b>"}}`
    pub fn to_json(&self) -> Value {
        let coeffs: Map<String, Value> = self
            .coeffs
            .iter()
            .map(|(e, c)| (e.to_string(), Value::String(c.to_string())))
            .collect();
        let mut obj = Map::new();
        obj.insert("coeffs".into(), Value::Object(coeffs));
        Value::Object(obj)
    }

    pub fn from_json(v: &Value) -> Result<QPolynomial> {
        let coeffs = v
            .get("coeffs")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("polynomial needs a \"coeffs\" object".into()))?;
        let mut out = QPolynomial::zero();
        for (k, c) in coeffs {
            let e: u32 = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent {k:?}")))?;
            if e > MAX_PARSED_EXPONENT {
                return Err(Error::Parse(format!("exponent {e} too large")));
            }
            let c = c
                .as_str()
                .ok_or_else(|| Error::Parse(format!("coefficient for {k} must be a string")))?;
            out.add_term(e, parse_rational(c)?);
        }
        Ok(out)
    }

    /// Renders with a chosen variable name.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                s.push_str(&mag.to_string());
            } else if mag.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{mag}*{mono}"));
            }
        }
        s
    }
}

fn pow_rat(x: &BigRational, k: u32) -> BigRational {
    num_traits::pow(x.clone(), k as usize)
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    if n.len() > 4096 || d.len() > 4096 {
        return Err(bad());
    }
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("q"))
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;

    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &rhs.coeffs {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;

    fn neg(self) -> QPolynomial {
        self.scale(&-BigRational::one())
    }
}
