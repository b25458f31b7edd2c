//! Truncated formal power series over the rationals.
//!
//! An [`Fps`] stores the coefficients of `x^0 ..= x^N` where `N` is its
//! truncation order; everything above `x^N` is unknown, not zero. Binary
//! operations on series of different orders work modulo the smaller one.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

/// Order of a series: the index of its first non-zero stored coefficient.
///
/// `Infinite` stands for a series whose stored coefficients all vanish and
/// sorts above every finite order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(usize),
    Infinite,
}

impl Order {
    pub fn is_at_least(self, k: usize) -> bool {
        self >= Order::Finite(k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fps {
    // Always `trunc + 1` entries.
    coeffs: Vec<Rational>,
}

impl Fps {
    /// Builds a series at truncation order `trunc`, padding with zeros.
    /// Coefficients past `x^trunc` are dropped.
    pub fn new(mut coeffs: Vec<Rational>, trunc: usize) -> Self {
        coeffs.resize(trunc + 1, Rational::zero());
        Fps { coeffs }
    }

    /// Same as [`Fps::new`] but validates a signed truncation order, as
    /// received from JSON or the command line.
    pub fn from_signed(coeffs: Vec<Rational>, trunc: i64) -> Result<Self> {
        let trunc = usize::try_from(trunc).map_err(|_| Error::InvalidTruncation(trunc))?;
        Ok(Fps::new(coeffs, trunc))
    }

    pub fn from_ints(coeffs: &[i64], trunc: usize) -> Self {
        Fps::new(coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect(), trunc)
    }

    pub fn zero(trunc: usize) -> Self {
        Fps::new(Vec::new(), trunc)
    }

    pub fn one(trunc: usize) -> Self {
        Fps::constant(Rational::one(), trunc)
    }

    pub fn constant(c: Rational, trunc: usize) -> Self {
        Fps::new(vec![c], trunc)
    }

    /// `c * x^k`.
    pub fn monomial(c: Rational, k: usize, trunc: usize) -> Self {
        let mut s = Fps::zero(trunc);
        if k <= trunc {
            s.coeffs[k] = c;
        }
        s
    }

    /// The identity series `x`.
    pub fn x(trunc: usize) -> Self {
        Fps::monomial(Rational::one(), 1, trunc)
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// Drops every coefficient above `x^n`. `n` larger than the current
    /// order is clamped.
    pub fn truncate(&self, n: usize) -> Fps {
        let n = n.min(self.trunc());
        Fps { coeffs: self.coeffs[..=n].to_vec() }
    }

    pub fn order(&self) -> Order {
        self.coeffs.iter().position(|c| !c.is_zero()).map_or(Order::Infinite, Order::Finite)
    }

    pub fn is_zero(&self) -> bool {
        self.order() == Order::Infinite
    }

    pub fn scale(&self, c: &Rational) -> Fps {
        Fps { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplies by `x^k`. The result is known to one more order per shift.
    pub fn mul_x_pow(&self, k: usize) -> Fps {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Fps { coeffs }
    }

    /// Divides by `x^k`, or `None` when one of the first `k` coefficients is
    /// non-zero or nothing would be left.
    pub fn div_x_pow(&self, k: usize) -> Option<Fps> {
        if k > self.trunc() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Fps { coeffs: self.coeffs[k..].to_vec() })
    }

    /// Formal derivative. Loses one order of truncation, except at order 0
    /// where the zero constant is returned.
    pub fn derivative(&self) -> Fps {
        if self.trunc() == 0 {
            return Fps::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
            .collect();
        Fps { coeffs }
    }

    pub fn reciprocal(&self) -> Result<Fps> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let inv0 = c0.recip();
        let n = self.trunc();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out.push(-acc * &inv0);
        }
        Ok(Fps { coeffs: out })
    }

    pub fn div(&self, other: &Fps) -> Result<Fps> {
        Ok(self * &other.reciprocal()?)
    }

    /// `self(inner(x))`, by Horner's rule. Needs `inner(0) = 0`.
    pub fn compose(&self, inner: &Fps) -> Result<Fps> {
        if !inner.order().is_at_least(1) {
            return Err(Error::CompositionNeedsPositiveOrder);
        }
        let n = self.trunc().min(inner.trunc());
        let inner = inner.truncate(n);
        let mut acc = Fps::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// The series `h` with `self(h(x)) = h(self(x)) = x`, by Lagrange
    /// inversion: writing `self = x u(x)`, `[x^k] h = [x^(k-1)] u^(-k) / k`.
    pub fn compositional_inverse(&self) -> Result<Fps> {
        if self.order() != Order::Finite(1) {
            return Err(Error::NotInvertibleUnderComposition);
        }
        let n = self.trunc();
        let u = self.div_x_pow(1).ok_or(Error::NotInvertibleUnderComposition)?;
        let v = u.reciprocal()?;
        let mut out = vec![Rational::zero(); n + 1];
        let mut power = v.clone();
        for (k, slot) in out.iter_mut().enumerate().skip(1) {
            *slot = &power.coeffs[k - 1] / Rational::from_integer(BigInt::from(k));
            if k < n {
                power = &power * &v;
            }
        }
        Ok(Fps { coeffs: out })
    }

    /// `exp(self)` for a series without constant term, from `E' = f' E`.
    pub fn exp(&self) -> Result<Fps> {
        if !self.constant_term().is_zero() {
            return Err(Error::ExpNeedsZeroConstantTerm);
        }
        let n = self.trunc();
        let weighted: Vec<Rational> =
            self.coeffs.iter().enumerate().map(|(j, c)| c * Rational::from_integer(BigInt::from(j))).collect();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(Rational::one());
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &weighted[j] * &out[k - j];
            }
            out.push(acc / Rational::from_integer(BigInt::from(k)));
        }
        Ok(Fps { coeffs: out })
    }

    /// `self^r` for `self(0) = 1`, solving `f p' = r f' p` with `p(0) = 1`.
    pub fn pow_rational(&self, r: &Rational) -> Result<Fps> {
        if !self.constant_term().is_one() {
            return Err(Error::PowNeedsUnitConstantOne);
        }
        let n = self.trunc();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(Rational::one());
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                let weight = r * Rational::from_integer(BigInt::from(j)) - Rational::from_integer(BigInt::from(k - j));
                acc += weight * &self.coeffs[j] * &out[k - j];
            }
            out.push(acc / Rational::from_integer(BigInt::from(k)));
        }
        Ok(Fps { coeffs: out })
    }

    /// Integer power by repeated multiplication.
    pub fn pow(&self, k: usize) -> Fps {
        let mut acc = Fps::one(self.trunc());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        json!({
            "coeffs": self.coeffs.iter().map(format_rational).collect::<Vec<_>>(),
            "trunc": self.trunc(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Fps> {
        let bad = |what: &str| Error::Parse(format!("series JSON: {what}"));
        let coeffs = value.get("coeffs").and_then(Value::as_array).ok_or_else(|| bad("missing \"coeffs\" array"))?;
        let trunc = value.get("trunc").and_then(Value::as_i64).ok_or_else(|| bad("missing integer \"trunc\""))?;
        let coeffs = coeffs
            .iter()
            .map(|c| c.as_str().ok_or_else(|| bad("coefficients must be strings")).and_then(parse_rational))
            .collect::<Result<Vec<_>>>()?;
        if trunc >= 0 && coeffs.len() as i64 > trunc + 1 {
            return Err(bad("more coefficients than trunc + 1"));
        }
        Fps::from_signed(coeffs, trunc)
    }
}

impl Index<usize> for Fps {
    type Output = Rational;

    fn index(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }
}

impl Add for &Fps {
    type Output = Fps;

    fn add(self, rhs: &Fps) -> Fps {
        let n = self.trunc().min(rhs.trunc());
        Fps { coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect() }
    }
}

impl Sub for &Fps {
    type Output = Fps;

    fn sub(self, rhs: &Fps) -> Fps {
        let n = self.trunc().min(rhs.trunc());
        Fps { coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect() }
    }
}

impl Neg for &Fps {
    type Output = Fps;

    fn neg(self) -> Fps {
        Fps { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Fps {
    type Output = Fps;

    fn mul(self, rhs: &Fps) -> Fps {
        let n = self.trunc().min(rhs.trunc());
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Fps { coeffs }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Fps {
            type Output = Fps;
            fn $method(self, rhs: Fps) -> Fps {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Fps {
    type Output = Fps;

    fn neg(self) -> Fps {
        -&self
    }
}

impl fmt::Display for Fps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(" + ")?;
            }
            wrote = true;
            match k {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "({})x", format_rational(c))?,
                _ => write!(f, "({})x^{k}", format_rational(c))?,
            }
        }
        if !wrote {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.trunc() + 1)
    }
}
