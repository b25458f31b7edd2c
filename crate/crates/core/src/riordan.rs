//! The Riordan group.
//!
//! `T(f|g)` is the lower-triangular matrix whose `j`-th column has generating
//! function `x^j f / g^(j+1)`, for `f(0) != 0` and `g(0) != 0`. Group
//! operations work on the pair `(f, g)` directly; [`RiordanMatrix::to_matrix`]
//! gives the finite projection used to cross-check them.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fps::Fps;
use crate::matrix::{QMatrix, Scalar, TriMatrix};
use crate::rational::{int, Rational};

/// Number of top coefficients of a result that may be unreliable relative
/// to the truncation order of the inputs. Every operation here only
/// substitutes order-1 series into series, so coefficient `k` of a result
/// depends on coefficients `<= k` of the inputs and nothing is lost.
pub const TRUNCATION_GUARD: usize = 0;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiordanMatrix {
    f: Fps,
    g: Fps,
}

/// The two involutions `M = T(-1|-1)` and `-M = T(1|-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Involution {
    M,
    MinusM,
}

impl Involution {
    /// `+1` is `M`, `-1` is `-M`.
    pub fn from_sign(sign: i32) -> Option<Self> {
        match sign {
            1 => Some(Involution::M),
            -1 => Some(Involution::MinusM),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Involution::M => "M",
            Involution::MinusM => "-M",
        }
    }

    pub fn riordan(self, trunc: usize) -> RiordanMatrix {
        RiordanMatrix::involution(self, trunc)
    }

    /// The projection of the involution to `dim` rows:
    /// `diag(1, -1, 1, ...)` for `M`, `diag(-1, 1, -1, ...)` for `-M`.
    pub fn projection(self, dim: usize) -> QMatrix {
        let first = match self {
            Involution::M => 1,
            Involution::MinusM => -1,
        };
        QMatrix::diagonal((0..dim).map(|i| int(if i % 2 == 0 { first } else { -first })).collect())
    }
}

impl RiordanMatrix {
    pub fn new(f: Fps, g: Fps) -> Result<Self> {
        if f.constant_term().is_zero() || g.constant_term().is_zero() {
            return Err(Error::NotRiordan);
        }
        let n = f.trunc().min(g.trunc());
        Ok(RiordanMatrix { f: f.truncate(n), g: g.truncate(n) })
    }

    pub fn identity(trunc: usize) -> Self {
        RiordanMatrix { f: Fps::one(trunc), g: Fps::one(trunc) }
    }

    /// Pascal's triangle, `T(1|1-x)`.
    pub fn pascal(trunc: usize) -> Self {
        RiordanMatrix { f: Fps::one(trunc), g: Fps::from_ints(&[1, -1], trunc) }
    }

    pub fn involution(which: Involution, trunc: usize) -> Self {
        let f = match which {
            Involution::M => -1,
            Involution::MinusM => 1,
        };
        RiordanMatrix { f: Fps::from_ints(&[f], trunc), g: Fps::from_ints(&[-1], trunc) }
    }

    pub fn m(trunc: usize) -> Self {
        Self::involution(Involution::M, trunc)
    }

    pub fn f(&self) -> &Fps {
        &self.f
    }

    pub fn g(&self) -> &Fps {
        &self.g
    }

    pub fn trunc(&self) -> usize {
        self.f.trunc()
    }

    pub fn truncate(&self, n: usize) -> Self {
        RiordanMatrix { f: self.f.truncate(n), g: self.g.truncate(n) }
    }

    /// `x / g`, known to one order more than `g` itself.
    pub fn x_over_g(&self) -> Fps {
        self.g.reciprocal().expect("g(0) != 0").mul_x_pow(1)
    }

    /// The first column, `f / g`.
    pub fn first_column(&self) -> Fps {
        self.f.div(&self.g).expect("g(0) != 0")
    }

    /// `d_{i,j} = [x^i] x^j f / g^(j+1)` for `0 <= j <= i <= n`.
    pub fn to_matrix(&self, n: usize) -> Result<QMatrix> {
        if n > self.trunc() {
            return Err(Error::InsufficientTruncation { requested: n, available: self.trunc() });
        }
        let ratio = self.g.reciprocal().expect("g(0) != 0").truncate(n);
        let mut column = self.first_column().truncate(n);
        let mut m = QMatrix::zeros(n + 1);
        for j in 0..=n {
            for i in j..=n {
                m.set(i, j, column[i - j].clone());
            }
            column = &column * &ratio;
        }
        Ok(m)
    }

    /// `T(f|g) T(l|m) = T(f l(x/g) | g m(x/g))`.
    pub fn product(&self, rhs: &RiordanMatrix) -> RiordanMatrix {
        let xg = self.x_over_g();
        let f = &self.f * &rhs.f.compose(&xg).expect("x/g has order 1");
        let g = &self.g * &rhs.g.compose(&xg).expect("x/g has order 1");
        RiordanMatrix { f, g }
    }

    /// `T(f|g)^(-1) = T(1 / f(x/A) | A)` where `x/A` inverts `x/g` under
    /// composition.
    pub fn inverse(&self) -> RiordanMatrix {
        let x_over_a = self.x_over_g().compositional_inverse().expect("x/g has order 1");
        let a = self.a_sequence_from(&x_over_a);
        let f = self.f.compose(&x_over_a).expect("x/A has order 1").reciprocal().expect("f(0) != 0");
        RiordanMatrix::new(f, a).expect("inverse of a Riordan matrix is Riordan")
    }

    /// The image of `gamma` under the matrix: `(f/g) gamma(x/g)`.
    pub fn apply(&self, gamma: &Fps) -> Fps {
        &self.first_column() * &gamma.compose(&self.x_over_g()).expect("x/g has order 1")
    }

    /// The A-sequence: the series `A` with `x/A` the compositional inverse
    /// of `x/g`.
    pub fn a_sequence(&self) -> Fps {
        let x_over_a = self.x_over_g().compositional_inverse().expect("x/g has order 1");
        self.a_sequence_from(&x_over_a)
    }

    fn a_sequence_from(&self, x_over_a: &Fps) -> Fps {
        x_over_a.div_x_pow(1).expect("order 1").reciprocal().expect("unit").truncate(self.trunc())
    }

    /// Whether the projection of `R^2` to `depth + 1` rows is the identity.
    pub fn is_involution(&self, depth: usize) -> Result<bool> {
        self.check_depth(depth)?;
        Ok(self.product(self).to_matrix(depth)?.is_identity(0.0))
    }

    /// Whether `R M` is an involution, with `M = T(-1|-1)`.
    pub fn is_pseudo_involution(&self, depth: usize) -> Result<bool> {
        self.check_depth(depth)?;
        self.product(&RiordanMatrix::m(self.trunc())).is_involution(depth)
    }

    /// `S R S^(-1)` for an involution `S` (its own inverse).
    pub fn conjugate_by(&self, s: Involution) -> RiordanMatrix {
        let s = s.riordan(self.trunc());
        s.product(self).product(&s)
    }

    pub fn to_json(&self) -> Value {
        json!({"f": self.f.to_json(), "g": self.g.to_json()})
    }

    fn check_depth(&self, depth: usize) -> Result<()> {
        let available = self.trunc().saturating_sub(TRUNCATION_GUARD);
        if depth > available {
            return Err(Error::InsufficientTruncation { requested: depth, available });
        }
        Ok(())
    }
}

/// `(R M)^2 = I` for a bare projected matrix, used in float mode where no
/// exact `(f, g)` pair is available. `M` is applied as its projection.
pub fn matrix_is_pseudo_involution<T: Scalar>(r: &TriMatrix<T>, tol: f64) -> bool {
    let n = r.dim();
    let m = TriMatrix::<T>::diagonal((0..n).map(|i| if i % 2 == 0 { T::one() } else { -T::one() }).collect());
    let rm = r.mul(&m).expect("same dimension");
    rm.mul(&rm).expect("same dimension").is_identity(tol)
}

/// The diagonal of `T(f|g)` as a geometric progression `f(0) / g(0)^(j+1)`.
pub fn diagonal_progression(f0: &Rational, g0: &Rational, len: usize) -> Vec<Rational> {
    let ratio = num_rational::Ratio::recip(g0);
    let mut cur = f0 * &ratio;
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(cur.clone());
        cur *= &ratio;
    }
    out
}
