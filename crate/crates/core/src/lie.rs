//! The Lie algebra of the Riordan group and the exponential map into it.
//!
//! An element `L(chi, alpha)` is the lower-triangular matrix with entries
//! `chi_{i-j} + j alpha_{i-j}`; as an operator on series it sends `h` to
//! `chi h + x alpha h'`. The one-parameter subgroup `e^{tL}` solves the
//! transport equation `u_t = chi u + x alpha u_x` with `u(x, 0) = h`.
//!
//! For the monomial generators `L(a x^n, b x^n)` the exponential has a closed
//! form ([`exp_monomial`]) obtained by integrating along characteristics.
//! [`exp_truncated_oracle`] computes the same matrices independently from the
//! finite projections, and [`exp_to_riordan`] recovers `(f, g)` from the
//! solutions for `h = 1` and `h = x`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fps::Fps;
use crate::matrix::{FMatrix, QMatrix};
use crate::rational::{format_rational, from_f64, parse_rational, to_f64, Rational};
use crate::riordan::RiordanMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    chi: Fps,
    alpha: Fps,
}

impl LieElement {
    pub fn new(chi: Fps, alpha: Fps) -> Self {
        let n = chi.trunc().min(alpha.trunc());
        LieElement { chi: chi.truncate(n), alpha: alpha.truncate(n) }
    }

    pub fn zero(trunc: usize) -> Self {
        LieElement::new(Fps::zero(trunc), Fps::zero(trunc))
    }

    /// The creation matrix `L(x, x)`, subdiagonal `1, 2, 3, ...`.
    pub fn creation(trunc: usize) -> Self {
        LieElement::new(Fps::x(trunc), Fps::x(trunc))
    }

    pub fn chi(&self) -> &Fps {
        &self.chi
    }

    pub fn alpha(&self) -> &Fps {
        &self.alpha
    }

    pub fn trunc(&self) -> usize {
        self.chi.trunc()
    }

    pub fn truncate(&self, n: usize) -> Self {
        LieElement { chi: self.chi.truncate(n), alpha: self.alpha.truncate(n) }
    }

    pub fn has_zero_diagonal(&self) -> bool {
        self.chi.constant_term().is_zero() && self.alpha.constant_term().is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LieElement { chi: self.chi.scale(c), alpha: self.alpha.scale(c) }
    }

    pub fn add(&self, other: &LieElement) -> Self {
        LieElement::new(&self.chi + &other.chi, &self.alpha + &other.alpha)
    }

    /// Rows and columns `0..=n` of the matrix form.
    pub fn to_matrix(&self, n: usize) -> Result<QMatrix> {
        if n > self.trunc() {
            return Err(Error::InsufficientTruncation { requested: n, available: self.trunc() });
        }
        Ok(QMatrix::from_fn(n + 1, |i, j| {
            let k = i - j;
            &self.chi[k] + &self.alpha[k] * Rational::from_integer(BigInt::from(j))
        }))
    }

    /// `chi h + x alpha h'`.
    pub fn act(&self, h: &Fps) -> Fps {
        let transport = (&self.alpha * &h.derivative()).mul_x_pow(1);
        &(&self.chi * h) + &transport
    }

    /// `[L1, L2] = L1 L2 - L2 L1`.
    ///
    /// The commutator of the projections is fitted back to the
    /// `L(chi, alpha)` pattern. An `(N+1)`-row matrix does not see
    /// `alpha_N`, so that last coefficient comes from the operator identity
    /// `[L1, L2] = L(x(a1 c2' - a2 c1'), x(a1 a2' - a2 a1'))`, which the
    /// fitted coefficients must agree with.
    pub fn bracket(&self, other: &LieElement) -> Result<LieElement> {
        let n = self.trunc().min(other.trunc());
        let (a, b) = (self.truncate(n), other.truncate(n));
        let chi = (&(&a.alpha * &b.chi.derivative()) - &(&b.alpha * &a.chi.derivative())).mul_x_pow(1);
        let alpha = (&(&a.alpha * &b.alpha.derivative()) - &(&b.alpha * &a.alpha.derivative())).mul_x_pow(1);
        let closed = LieElement::new(chi, alpha);
        if n < 2 {
            return Ok(closed);
        }
        let commutator = a.to_matrix(n)?.commutator(&b.to_matrix(n)?)?;
        let fitted = extract_generator(&commutator)?;
        if fitted != closed.truncate(n - 1) || commutator.get(n, 0) != closed.chi[n] {
            let (row, col) = closed.to_matrix(n)?.first_difference(&commutator, 0.0).unwrap_or((n, 0));
            return Err(Error::PatternFitFailure { row, col });
        }
        Ok(closed)
    }

    pub fn to_json(&self) -> Value {
        json!({"chi": self.chi.to_json(), "alpha": self.alpha.to_json()})
    }
}

/// Reads `L(chi, alpha)` back off a matrix with at least three rows.
///
/// `chi_k = A[k][0]` and `alpha_k = A[k+1][1] - chi_k`; every other entry must
/// then match the pattern. An `(n+1)`-row matrix determines `alpha` only up
/// to `alpha_{n-1}`, so the result has truncation order `n - 1`.
pub fn extract_generator(a: &QMatrix) -> Result<LieElement> {
    let dim = a.dim();
    if dim < 3 {
        return Err(Error::MatrixTooSmall { min: 3, got: dim });
    }
    let n = dim - 1;
    let chi: Vec<Rational> = (0..=n).map(|k| a.get(k, 0)).collect();
    let alpha: Vec<Rational> = (0..n).map(|k| a.get(k + 1, 1) - &chi[k]).collect();
    for i in 0..=n {
        for j in 0..=i {
            let k = i - j;
            let expected = if j == 0 {
                chi[k].clone()
            } else {
                &chi[k] + &alpha[k] * Rational::from_integer(BigInt::from(j))
            };
            if a.get(i, j) != expected {
                return Err(Error::PatternFitFailure { row: i, col: j });
            }
        }
    }
    Ok(LieElement::new(Fps::new(chi, n - 1), Fps::new(alpha, n - 1)))
}

/// The element `L~` with `T(f|g) L = L~ T(f|g)`:
///
/// ```text
/// chi~   = [chi(x/g) (g - x g') f - x alpha(x/g) (f' g - g' f)] / [f (g - x g')]
/// alpha~ = g alpha(x/g) / (g - x g')
/// ```
pub fn conj_transport(r: &RiordanMatrix, l: &LieElement) -> LieElement {
    let n = r.trunc().min(l.trunc());
    let (f, g) = (r.f().truncate(n), r.g().truncate(n));
    let xg = r.x_over_g();
    let chi_at = l.chi().compose(&xg).expect("x/g has order 1");
    let alpha_at = l.alpha().compose(&xg).expect("x/g has order 1");
    let (df, dg) = (f.derivative(), g.derivative());
    let g_minus_xdg = &g - &dg.mul_x_pow(1);
    let wronskian = &(&df * &g) - &(&dg * &f);
    let numerator = &(&(&chi_at * &g_minus_xdg) * &f) - &(&alpha_at * &wronskian).mul_x_pow(1);
    let chi = numerator.div(&(&f * &g_minus_xdg)).expect("f(0) g(0) != 0");
    let alpha = (&g * &alpha_at).div(&g_minus_xdg).expect("g(0) != 0");
    LieElement::new(chi, alpha)
}

/// `L(a x^n, b x^n)`: entries `a + j b` on the `n`-th subdiagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialGenerator {
    pub a: Rational,
    pub b: Rational,
    pub n: usize,
}

impl MonomialGenerator {
    pub fn new(a: Rational, b: Rational, n: usize) -> Self {
        MonomialGenerator { a, b, n }
    }

    /// `L(x, x)`, whose exponential at `t = 1` is Pascal's triangle.
    pub fn creation() -> Self {
        MonomialGenerator::new(Rational::one(), Rational::one(), 1)
    }

    pub fn to_element(&self, trunc: usize) -> LieElement {
        LieElement::new(Fps::monomial(self.a.clone(), self.n, trunc), Fps::monomial(self.b.clone(), self.n, trunc))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        self.n >= 1 || (self.a.is_zero() && self.b.is_zero())
    }

    pub fn is_creation(&self) -> bool {
        self.n == 1 && self.a.is_one() && self.b.is_one()
    }

    /// `1 - b n t x^n`, the base of the closed forms for `b != 0`.
    fn characteristic_base(&self, t: &Rational, trunc: usize) -> Fps {
        let c = &self.b * Rational::from_integer(BigInt::from(self.n)) * t;
        &Fps::one(trunc) - &Fps::monomial(c, self.n, trunc)
    }

    pub fn to_json(&self) -> Value {
        json!({"a": format_rational(&self.a), "b": format_rational(&self.b), "n": self.n})
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("generator JSON: {what}"));
        let field = |k: &str| -> Result<Rational> {
            let s = value.get(k).and_then(Value::as_str).ok_or_else(|| bad(&format!("missing string {k:?}")))?;
            parse_rational(s)
        };
        let n = value.get("n").and_then(Value::as_u64).ok_or_else(|| bad("missing non-negative integer \"n\""))?;
        Ok(MonomialGenerator::new(field("a")?, field("b")?, n as usize))
    }
}

/// `e^{t L(a x^n, b x^n)}` in closed form:
///
/// * `b != 0`, `n >= 1`: `T((1 - bnt x^n)^((b-a)/(nb)) | (1 - bnt x^n)^(1/n))`
/// * `b = 0`, `n >= 1`: `T(e^{a t x^n} | 1)`
/// * `n = 0`: `T(e^{(a-b)t} | e^{-bt})`, which is irrational unless it is the
///   identity, so exact mode rejects it with [`Error::ExactModeIrrational`].
pub fn exp_monomial(genr: &MonomialGenerator, t: &Rational, trunc: usize) -> Result<RiordanMatrix> {
    if genr.n == 0 {
        if t.is_zero() || (genr.a.is_zero() && genr.b.is_zero()) {
            return Ok(RiordanMatrix::identity(trunc));
        }
        return Err(Error::ExactModeIrrational);
    }
    if genr.b.is_zero() {
        let exponent = Fps::monomial(&genr.a * t, genr.n, trunc);
        return RiordanMatrix::new(exponent.exp()?, Fps::one(trunc));
    }
    let base = genr.characteristic_base(t, trunc);
    let n = Rational::from_integer(BigInt::from(genr.n));
    let f = base.pow_rational(&((&genr.b - &genr.a) / (&n * &genr.b)))?;
    let g = base.pow_rational(&n.recip())?;
    RiordanMatrix::new(f, g)
}

/// Float evaluation of the closed form, rows `0..=n`.
///
/// `n = 0` generators give the diagonal `e^{t(a + jb)}`; for `n >= 1` the
/// exact closed form is evaluated at the binary value of `t` and rounded.
pub fn exp_monomial_f64(genr: &MonomialGenerator, t: f64, n: usize) -> Result<FMatrix> {
    if genr.n == 0 {
        let (a, b) = (to_f64(&genr.a), to_f64(&genr.b));
        return Ok(FMatrix::diagonal((0..=n).map(|j| (t * (a + j as f64 * b)).exp()).collect()));
    }
    let t = from_f64(t).ok_or_else(|| Error::Parse(format!("time must be finite, got {t}")))?;
    Ok(exp_monomial(genr, &t, n)?.to_matrix(n)?.to_f64())
}

/// A matrix exponential computed from a finite projection: exact when the
/// projection is nilpotent, floating point otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum ExpMatrix {
    Exact(QMatrix),
    Float(FMatrix),
}

impl ExpMatrix {
    pub fn to_f64(&self) -> FMatrix {
        match self {
            ExpMatrix::Exact(m) => m.to_f64(),
            ExpMatrix::Float(m) => m.clone(),
        }
    }

    pub fn exact(&self) -> Option<&QMatrix> {
        match self {
            ExpMatrix::Exact(m) => Some(m),
            ExpMatrix::Float(_) => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ExpMatrix::Exact(m) => m.to_json(),
            ExpMatrix::Float(m) => m.to_json(),
        }
    }
}

/// `exp(t A)` on rows `0..=n` of `L`, computed without the closed form.
///
/// With zero diagonal the projection `A` is nilpotent (`A^(n+1) = 0`), so the
/// exponential is the finite sum `sum_{k<=n} (tA)^k / k!` in exact
/// arithmetic. Otherwise the float route [`expm_f64`] is used.
pub fn exp_truncated_oracle(l: &LieElement, t: &Rational, n: usize) -> Result<ExpMatrix> {
    if l.has_zero_diagonal() {
        Ok(ExpMatrix::Exact(exp_nilpotent(l, t, n)?))
    } else {
        Ok(ExpMatrix::Float(expm_f64(&l.to_matrix(n)?.to_f64().scale(&to_f64(t)))))
    }
}

/// The exact finite sum for a zero-diagonal generator.
pub fn exp_nilpotent(l: &LieElement, t: &Rational, n: usize) -> Result<QMatrix> {
    if !l.has_zero_diagonal() {
        return Err(Error::RequiresZeroDiagonal);
    }
    let a = l.to_matrix(n)?.scale(t);
    exp_nilpotent_matrix(&a)
}

/// `sum_k A^k / k!` for a strictly lower-triangular `A`.
pub fn exp_nilpotent_matrix(a: &QMatrix) -> Result<QMatrix> {
    if !a.has_zero_diagonal() {
        return Err(Error::RequiresZeroDiagonal);
    }
    let dim = a.dim();
    let mut sum = QMatrix::identity(dim);
    let mut term = QMatrix::identity(dim);
    for k in 1..dim {
        term = term.mul(a)?.scale(&Rational::new(BigInt::one(), BigInt::from(k)));
        if term.is_zero(0.0) {
            break;
        }
        sum = sum.add(&term)?;
    }
    Ok(sum)
}

/// The exact logarithm `sum_k (-1)^(k+1) N^k / k` of a unipotent
/// lower-triangular `U = I + N`.
pub fn log_unipotent(u: &QMatrix) -> Result<QMatrix> {
    let dim = u.dim();
    if u.diagonal_entries().iter().any(|d| !d.is_one()) {
        return Err(Error::NotUnipotent);
    }
    let nil = u.sub(&QMatrix::identity(dim))?;
    let mut sum = QMatrix::zeros(dim);
    let mut power = QMatrix::identity(dim);
    for k in 1..dim {
        power = power.mul(&nil)?;
        let sign = if k % 2 == 1 { 1 } else { -1 };
        sum = sum.add(&power.scale(&Rational::new(BigInt::from(sign), BigInt::from(k))))?;
    }
    Ok(sum)
}

const TAYLOR_ORDER: usize = 20;

/// Scaling and squaring: scale by `2^-s` until the infinity norm is at most
/// 1/2, sum the Taylor series to order 20, then square `s` times.
pub fn expm_f64(a: &FMatrix) -> FMatrix {
    let dim = a.dim();
    let norm = a.rows().iter().map(|r| r.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max);
    let mut squarings = 0u32;
    let mut scaled_norm = norm;
    while scaled_norm > 0.5 {
        scaled_norm /= 2.0;
        squarings += 1;
    }
    let scaled = a.scale(&0.5f64.powi(squarings as i32));
    let mut sum = FMatrix::identity(dim);
    let mut term = FMatrix::identity(dim);
    for k in 1..=TAYLOR_ORDER {
        term = term.mul(&scaled).expect("same dimension").scale(&(1.0 / k as f64));
        sum = sum.add(&term).expect("same dimension");
    }
    for _ in 0..squarings {
        sum = sum.mul(&sum).expect("same dimension");
    }
    sum
}

/// Recovers `e^{tL} = T(f|g)` from its first two columns: `f/g` is the
/// solution for `h = 1` and `x f / g^2` the one for `h = x`.
///
/// Needs a zero-diagonal `L` known to order at least `trunc + 1`, since
/// dividing column 1 by `x` costs one order.
pub fn exp_to_riordan(l: &LieElement, t: &Rational, trunc: usize) -> Result<RiordanMatrix> {
    if !l.has_zero_diagonal() {
        return Err(Error::RequiresZeroDiagonal);
    }
    let n = trunc + 1;
    let e = exp_nilpotent(l, t, n)?;
    let c0 = Fps::new(e.column(0), n);
    let c1 = Fps::new((0..=n).map(|i| e.get(i, 1)).collect(), n);
    if c1.order() != crate::fps::Order::Finite(1) {
        return Err(Error::DegenerateColumn);
    }
    let c1_over_x = c1.div_x_pow(1).ok_or(Error::DegenerateColumn)?;
    let g = c0.truncate(trunc).div(&c1_over_x)?;
    let f = &g * &c0;
    RiordanMatrix::new(f, g)
}

/// The solution of `u_t = a x^n u + b x^(n+1) u_x`, `u(x, 0) = h`, obtained
/// by integrating along characteristics:
///
/// * `b != 0`: `u = (1 - nbt x^n)^(-a/(nb)) h(x (1 - nbt x^n)^(-1/n))`
/// * `b = 0`: `u = e^{a t x^n} h`
pub fn characteristic_solution(genr: &MonomialGenerator, h: &Fps, t: &Rational) -> Result<Fps> {
    let trunc = h.trunc();
    if t.is_zero() || (genr.a.is_zero() && genr.b.is_zero()) {
        return Ok(h.clone());
    }
    if genr.n == 0 {
        return Err(Error::ExactModeIrrational);
    }
    if genr.b.is_zero() {
        return Ok(&Fps::monomial(&genr.a * t, genr.n, trunc).exp()? * h);
    }
    let n = Rational::from_integer(BigInt::from(genr.n));
    let base = genr.characteristic_base(t, trunc);
    let prefactor = base.pow_rational(&(-&genr.a / (&n * &genr.b)))?;
    let foot = base.pow_rational(&-n.recip())?.mul_x_pow(1);
    Ok(&prefactor * &h.compose(&foot)?)
}

/// Largest absolute coefficient of `u_t - (chi u + x alpha u_x)` over the
/// first `k` coefficients, with `u_t` taken as the central difference at
/// step `delta`. Each evaluation of `u` is exact; only the final residual is
/// rounded.
pub fn pde_residual(genr: &MonomialGenerator, h: &Fps, t: &Rational, delta: &Rational, k: usize) -> Result<PdeResidual> {
    let plus = characteristic_solution(genr, h, &(t + delta))?;
    let minus = characteristic_solution(genr, h, &(t - delta))?;
    let here = characteristic_solution(genr, h, t)?;
    let difference = (&plus - &minus).scale(&(Rational::from_integer(BigInt::from(2)) * delta).recip());
    let rhs = genr.to_element(h.trunc()).act(&here);
    let mut abs = 0.0f64;
    let mut rel = 0.0f64;
    for i in 0..k.min(difference.trunc() + 1).min(rhs.trunc() + 1) {
        let err = to_f64(&(&difference[i] - &rhs[i]).abs());
        abs = abs.max(err);
        rel = rel.max(err / to_f64(&rhs[i].abs()).max(1.0));
    }
    Ok(PdeResidual { abs, rel })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PdeResidual {
    /// Largest `|difference - rhs|` over the checked coefficients.
    pub abs: f64,
    /// Same, divided by `max(1, |rhs|)` coefficientwise.
    pub rel: f64,
}
