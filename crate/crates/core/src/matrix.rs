//! Dense lower-triangular matrices, the finite projections of everything in
//! this crate.
//!
//! Only the lower triangle is stored: row `i` holds `i + 1` entries. Entries
//! are either exact rationals ([`QMatrix`]) or `f64` ([`FMatrix`]); equality
//! in the two regimes is literal and tolerance based respectively, see
//! [`Scalar::close_to`].

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{format_rational, to_f64, Rational};

/// Entry type of a [`TriMatrix`].
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Exact scalars ignore `tol` and compare literally.
    fn close_to(&self, other: &Self, tol: f64) -> bool;
    fn recip(&self) -> Option<Self>;
    fn from_usize(k: usize) -> Self;
    fn to_json(&self) -> Value;
    fn to_text(&self) -> String;
    fn magnitude(&self) -> f64;
}

impl Scalar for Rational {
    fn close_to(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| num_rational::Ratio::recip(self))
    }

    fn from_usize(k: usize) -> Self {
        Rational::from_integer(BigInt::from(k))
    }

    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn to_text(&self) -> String {
        format_rational(self)
    }

    fn magnitude(&self) -> f64 {
        to_f64(self).abs()
    }
}

impl Scalar for f64 {
    fn close_to(&self, other: &Self, tol: f64) -> bool {
        (self - other).abs() <= tol
    }

    fn recip(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }

    fn from_usize(k: usize) -> Self {
        k as f64
    }

    fn to_json(&self) -> Value {
        json!(self)
    }

    fn to_text(&self) -> String {
        format!("{self:e}")
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TriMatrix<T> {
    rows: Vec<Vec<T>>,
}

pub type QMatrix = TriMatrix<Rational>;
pub type FMatrix = TriMatrix<f64>;

impl<T: Scalar> TriMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        TriMatrix { rows: (0..dim).map(|i| vec![T::zero(); i + 1]).collect() }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal((0..dim).map(|_| T::one()).collect())
    }

    pub fn diagonal(diag: Vec<T>) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.into_iter().enumerate() {
            m.rows[i][i] = d;
        }
        m
    }

    /// Builds a matrix from `entry(i, j)` for `j <= i`.
    pub fn from_fn(dim: usize, mut entry: impl FnMut(usize, usize) -> T) -> Self {
        TriMatrix { rows: (0..dim).map(|i| (0..=i).map(|j| entry(i, j)).collect()).collect() }
    }

    /// Accepts ragged lower-triangular rows or full square rows whose upper
    /// part is zero.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        let mut out = Vec::with_capacity(dim);
        for (i, mut row) in rows.into_iter().enumerate() {
            if row.len() == dim && row[i + 1..].iter().any(|v| !v.is_zero()) {
                return Err(Error::Parse(format!("row {i} has non-zero entries above the diagonal")));
            }
            if row.len() != i + 1 && row.len() != dim {
                return Err(Error::DimensionMismatch { expected: i + 1, got: row.len() });
            }
            row.truncate(i + 1);
            out.push(row);
        }
        Ok(TriMatrix { rows: out })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Entry `(i, j)`; zero above the diagonal.
    pub fn get(&self, i: usize, j: usize) -> T {
        if j > i {
            T::zero()
        } else {
            self.rows[i][j].clone()
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> &T {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        assert!(j <= i, "entry ({i}, {j}) is above the diagonal");
        self.rows[i][j] = value;
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (j..self.dim()).map(|i| self.rows[i][j].clone()).collect()
    }

    pub fn diagonal_entries(&self) -> Vec<T> {
        (0..self.dim()).map(|i| self.rows[i][i].clone()).collect()
    }

    /// The leading `dim x dim` block; deleting trailing rows and columns
    /// commutes with every product of lower-triangular matrices.
    pub fn leading(&self, dim: usize) -> Self {
        TriMatrix { rows: self.rows[..dim.min(self.dim())].to_vec() }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.same_dim(rhs)?;
        let n = self.dim();
        Ok(Self::from_fn(n, |i, j| {
            let mut acc = T::zero();
            for k in j..=i {
                acc = acc + self.rows[i][k].clone() * rhs.rows[k][j].clone();
            }
            acc
        }))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.same_dim(rhs)?;
        Ok(Self::from_fn(self.dim(), |i, j| self.rows[i][j].clone() + rhs.rows[i][j].clone()))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.same_dim(rhs)?;
        Ok(Self::from_fn(self.dim(), |i, j| self.rows[i][j].clone() - rhs.rows[i][j].clone()))
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_fn(self.dim(), |i, j| c.clone() * self.rows[i][j].clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.dim(), |i, j| -self.rows[i][j].clone())
    }

    /// `AB - BA`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        self.mul(rhs)?.sub(&rhs.mul(self)?)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::identity(self.dim());
        for _ in 0..k {
            acc = acc.mul(self).expect("same dimension");
        }
        acc
    }

    /// Inverse by forward substitution; fails on a zero diagonal entry.
    #[allow(clippy::needless_range_loop)]
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim();
        let inv_diag: Vec<T> =
            (0..n).map(|i| self.rows[i][i].recip().ok_or(Error::Singular)).collect::<Result<_>>()?;
        let mut out = Self::zeros(n);
        for j in 0..n {
            out.rows[j][j] = inv_diag[j].clone();
            for i in j + 1..n {
                let mut acc = T::zero();
                for k in j..i {
                    acc = acc + self.rows[i][k].clone() * out.rows[k][j].clone();
                }
                out.rows[i][j] = -(acc * inv_diag[i].clone());
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| row.iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect())
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.close_to(&Self::identity(self.dim()), tol)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.close_to(&Self::zeros(self.dim()), tol)
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.dim()).all(|i| self.rows[i][i].is_zero())
    }

    /// Entrywise comparison: literal for exact entries, `|a - b| <= tol` for
    /// floats.
    pub fn close_to(&self, other: &Self, tol: f64) -> bool {
        self.first_difference(other, tol).is_none()
    }

    /// First `(row, col)` where the matrices differ, scanning row by row.
    /// Matrices of different dimension differ at their first extra row.
    pub fn first_difference(&self, other: &Self, tol: f64) -> Option<(usize, usize)> {
        let n = self.dim().min(other.dim());
        for i in 0..n {
            for j in 0..=i {
                if !self.rows[i][j].close_to(&other.rows[i][j], tol) {
                    return Some((i, j));
                }
            }
        }
        (self.dim() != other.dim()).then_some((n, 0))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.rows
            .iter()
            .zip(&other.rows)
            .flat_map(|(a, b)| a.iter().zip(b))
            .map(|(a, b)| (a.clone() - b.clone()).magnitude())
            .fold(0.0, f64::max)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> TriMatrix<U> {
        TriMatrix { rows: self.rows.iter().map(|row| row.iter().map(&f).collect()).collect() }
    }

    /// `{"dim": n, "rows": [[...], ...]}` with lower-triangular rows.
    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim(),
            "rows": self.rows.iter().map(|row| row.iter().map(Scalar::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    /// One line per row, lower-triangular entries only.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        for row in &self.rows {
            w.write_record(row.iter().map(Scalar::to_text)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8 output")
    }

    fn same_dim(&self, rhs: &Self) -> Result<()> {
        if self.dim() == rhs.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), got: rhs.dim() })
        }
    }
}

impl QMatrix {
    pub fn to_f64(&self) -> FMatrix {
        self.map(to_f64)
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect()).collect())
    }
}

/// Pretty, column-aligned rendering for humans.
pub fn render_aligned<T: Scalar>(m: &TriMatrix<T>) -> String {
    let cells: Vec<Vec<String>> = m.rows().iter().map(|r| r.iter().map(Scalar::to_text).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(line.join(" ").trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn q(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_int_rows(rows).unwrap()
    }

    #[test]
    fn product_and_inverse() {
        let p = q(&[&[1], &[1, 1], &[1, 2, 1]]);
        let pinv = p.inverse().unwrap();
        assert_eq!(pinv, q(&[&[1], &[-1, 1], &[1, -2, 1]]));
        assert!(p.mul(&pinv).unwrap().is_identity(0.0));
        assert_eq!(QMatrix::diagonal(vec![int(0), int(1)]).inverse(), Err(Error::Singular));
    }

    #[test]
    fn square_rows_are_accepted_when_upper_part_vanishes() {
        let m = QMatrix::from_rows(vec![vec![int(1), int(0)], vec![int(2), int(3)]]).unwrap();
        assert_eq!(m, q(&[&[1], &[2, 3]]));
        assert!(QMatrix::from_rows(vec![vec![int(1), int(5)], vec![int(2), int(3)]]).is_err());
    }

    #[test]
    fn float_regime_uses_tolerance() {
        let a = FMatrix::identity(3);
        let mut b = a.clone();
        b.set(2, 1, 1e-13);
        assert!(a.close_to(&b, 1e-12));
        assert!(!a.close_to(&b, 1e-14));
        assert_eq!(a.first_difference(&b, 0.0), Some((2, 1)));
    }

    #[test]
    fn serializes() {
        let m = q(&[&[1], &[-1, 1]]);
        assert_eq!(m.to_json(), json!({"dim": 2, "rows": [["1"], ["-1", "1"]]}));
        assert_eq!(m.to_csv(), "1\n-1,1\n");
        assert_eq!(render_aligned(&m), " 1\n-1  1\n");
    }

    #[test]
    fn leading_block_commutes_with_products() {
        let a = q(&[&[1], &[2, 3], &[4, 5, 6]]);
        let b = q(&[&[7], &[8, 9], &[1, 2, 3]]);
        assert_eq!(a.mul(&b).unwrap().leading(2), a.leading(2).mul(&b.leading(2)).unwrap());
    }
}
