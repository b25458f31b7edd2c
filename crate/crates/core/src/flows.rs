//! Finite approximating problems `x' = A x` in `R^(n+1)`, where `A` is the
//! projection of a Lie algebra element to its first `n + 1` rows.
//!
//! For a zero-diagonal generator the flow `Phi^t = exp(tA)` is a polynomial
//! in `t` and is evaluated exactly. The involutions `M` and `-M` enter as the
//! sign matrices `diag(+-1, -+1, ...)`: a symmetry commutes with `A`, a
//! time-reversal symmetry anticommutes with it.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lie::{exp_nilpotent_matrix, expm_f64, LieElement, MonomialGenerator};
use crate::matrix::{QMatrix, Scalar, TriMatrix};
use crate::rational::{rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Monomial(MonomialGenerator),
    Element(LieElement),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApproachingProblem {
    generator: Generator,
    matrix: QMatrix,
}

impl ApproachingProblem {
    pub fn from_monomial(genr: MonomialGenerator, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::MatrixTooSmall { min: 1, got: 0 });
        }
        let matrix = genr.to_element(dim - 1).to_matrix(dim - 1)?;
        Ok(ApproachingProblem { generator: Generator::Monomial(genr), matrix })
    }

    pub fn from_element(l: LieElement, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::MatrixTooSmall { min: 1, got: 0 });
        }
        let matrix = l.to_matrix(dim - 1)?;
        Ok(ApproachingProblem { generator: Generator::Element(l), matrix })
    }

    /// The problem of the creation matrix `L(x, x)`, whose time-one map is
    /// Pascal's triangle.
    pub fn creation(dim: usize) -> Result<Self> {
        Self::from_monomial(MonomialGenerator::creation(), dim)
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.matrix.has_zero_diagonal()
    }

    pub fn is_creation_family(&self) -> bool {
        let n = self.dim() - 1;
        LieElement::creation(n).to_matrix(n).map(|c| c == self.matrix).unwrap_or(false)
    }

    /// `Phi^t = exp(tA)`, exact. Needs a zero diagonal.
    pub fn flow_matrix(&self, t: &Rational) -> Result<QMatrix> {
        exp_nilpotent_matrix(&self.matrix.scale(t))
    }

    fn check_state<T: Scalar>(&self, x: &StateVector<T>) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T> {
    components: Vec<T>,
}

impl<T: Scalar> StateVector<T> {
    pub fn new(components: Vec<T>) -> Self {
        StateVector { components }
    }

    /// The basis vector `e_k` in `dim` dimensions.
    pub fn basis(dim: usize, k: usize) -> Self {
        StateVector { components: (0..dim).map(|i| if i == k { T::one() } else { T::zero() }).collect() }
    }

    pub fn components(&self) -> &[T] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn apply(&self, m: &TriMatrix<T>) -> Result<Self> {
        Ok(StateVector { components: m.mul_vec(&self.components)? })
    }

    pub fn sup_norm(&self) -> f64 {
        self.components.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> StateVector<U> {
        StateVector { components: self.components.iter().map(f).collect() }
    }
}

/// `Phi^t(x0) = exp(tA) x0`, exact.
pub fn project_flow(p: &ApproachingProblem, x0: &StateVector<Rational>, t: &Rational) -> Result<StateVector<Rational>> {
    p.check_state(x0)?;
    x0.apply(&p.flow_matrix(t)?)
}

/// `Phi^t(x0)` in floating point; any generator.
pub fn project_flow_f64(p: &ApproachingProblem, x0: &StateVector<f64>, t: f64) -> Result<StateVector<f64>> {
    p.check_state(x0)?;
    x0.apply(&expm_f64(&p.matrix.to_f64().scale(&t)))
}

/// Classical fourth-order Runge-Kutta for `x' = A x` with `steps` equal
/// steps of size `t / steps`.
pub fn rk4_integrate(p: &ApproachingProblem, x0: &StateVector<f64>, t: f64, steps: usize) -> Result<StateVector<f64>> {
    p.check_state(x0)?;
    if steps == 0 {
        return Err(Error::InvalidSteps);
    }
    let a = p.matrix.to_f64();
    let h = t / steps as f64;
    let field = |x: &[f64]| a.mul_vec(x).expect("dimension checked");
    let axpy = |x: &[f64], k: &[f64], s: f64| -> Vec<f64> { x.iter().zip(k).map(|(xi, ki)| xi + s * ki).collect() };
    let mut x = x0.components.clone();
    for _ in 0..steps {
        let k1 = field(&x);
        let k2 = field(&axpy(&x, &k1, h / 2.0));
        let k3 = field(&axpy(&x, &k2, h / 2.0));
        let k4 = field(&axpy(&x, &k3, h));
        for i in 0..x.len() {
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    Ok(StateVector::new(x))
}

/// Whether `A x = 0`.
pub fn equilibria_check(p: &ApproachingProblem, x: &StateVector<Rational>) -> Result<bool> {
    p.check_state(x)?;
    Ok(x.apply(&p.matrix)?.components.iter().all(Zero::is_zero))
}

/// Whether `S A S^(-1) = A`, i.e. `S` commutes with every `Phi^t`.
pub fn check_symmetry(s: &QMatrix, p: &ApproachingProblem) -> Result<bool> {
    Ok(conjugate(s, p)? == *p.matrix())
}

/// The flow-level times at which a time-reversal symmetry is cross-checked.
pub fn reversal_sample_times() -> [Rational; 3] {
    [rat(1, 2), rat(1, 1), rat(2, 1)]
}

/// Whether `S A S^(-1) = -A`, cross-checked as `S Phi^t S^(-1) = Phi^(-t)` for
/// `t` in `{1/2, 1, 2}`.
pub fn check_time_reversal(s: &QMatrix, p: &ApproachingProblem) -> Result<bool> {
    if conjugate(s, p)? != p.matrix().neg() {
        return Ok(false);
    }
    // S A S^-1 = -A forces a zero diagonal, so the flow is exact here.
    let s_inv = s.inverse()?;
    for t in reversal_sample_times() {
        let forward = s.mul(&p.flow_matrix(&t)?)?.mul(&s_inv)?;
        if forward != p.flow_matrix(&-t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn conjugate(s: &QMatrix, p: &ApproachingProblem) -> Result<QMatrix> {
    if s.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), got: s.dim() });
    }
    s.mul(p.matrix())?.mul(&s.inverse()?)
}

/// A complete label for the orbit through a point of a creation-family
/// problem in at most three dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitKey {
    /// An equilibrium is its own orbit.
    Point(Vec<Rational>),
    /// In two dimensions, the line `x_0 = a`.
    Line(Rational),
    /// In three dimensions with `a = 0`, the line `x_0 = 0, x_1 = b`.
    PlaneLine(Rational),
    /// In three dimensions with `a != 0`, the parabola through
    /// `(a, at + b, at^2 + 2bt + c)`, labelled by `(a, c - b^2/a)`.
    Parabola(Rational, Rational),
}

pub fn orbit_key(p: &ApproachingProblem, x: &StateVector<Rational>) -> Result<OrbitKey> {
    if !p.is_creation_family() || p.dim() > 3 {
        return Err(Error::UnsupportedGenerator(format!(
            "orbit labels exist for the creation matrix in at most 3 dimensions, got dim {}",
            p.dim()
        )));
    }
    if equilibria_check(p, x)? {
        return Ok(OrbitKey::Point(x.components.clone()));
    }
    let c = &x.components;
    Ok(match p.dim() {
        2 => OrbitKey::Line(c[0].clone()),
        _ if c[0].is_zero() => OrbitKey::PlaneLine(c[1].clone()),
        _ => OrbitKey::Parabola(c[0].clone(), &c[2] - &c[1] * &c[1] / &c[0]),
    })
}

/// Whether `S` maps the orbit through `x0` onto itself.
///
/// For every sample `t` (and `t = 0`) the point `S Phi^t(x0)` must carry the
/// same [`OrbitKey`] as `x0`. Only the creation family in at most three
/// dimensions is supported.
pub fn orbit_symmetric_under(
    s: &QMatrix,
    p: &ApproachingProblem,
    x0: &StateVector<Rational>,
    samples: &[Rational],
) -> Result<bool> {
    let key = orbit_key(p, x0)?;
    if !check_time_reversal(s, p)? {
        return Err(Error::NotTimeReversal);
    }
    let zero = Rational::zero();
    for t in std::iter::once(&zero).chain(samples) {
        let image = project_flow(p, x0, t)?.apply(s)?;
        if orbit_key(p, &image)? != key {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sampled states of one orbit, exported as `t,x0,...,xn`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowTrace<T> {
    pub times: Vec<T>,
    pub states: Vec<StateVector<T>>,
}

impl<T: Scalar> FlowTrace<T> {
    pub fn header(&self) -> Vec<String> {
        let dim = self.states.first().map_or(0, StateVector::len);
        std::iter::once("t".to_string()).chain((0..dim).map(|i| format!("x{i}"))).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.header()).expect("in-memory write");
        for (t, x) in self.times.iter().zip(&self.states) {
            w.write_record(std::iter::once(t.to_text()).chain(x.components.iter().map(Scalar::to_text)))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8 output")
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<Value>> = self
            .times
            .iter()
            .zip(&self.states)
            .map(|(t, x)| std::iter::once(t.to_json()).chain(x.components.iter().map(Scalar::to_json)).collect())
            .collect();
        json!({"columns": self.header(), "rows": rows})
    }
}

pub fn trace(p: &ApproachingProblem, x0: &StateVector<Rational>, times: &[Rational]) -> Result<FlowTrace<Rational>> {
    let states = times.iter().map(|t| project_flow(p, x0, t)).collect::<Result<Vec<_>>>()?;
    Ok(FlowTrace { times: times.to_vec(), states })
}

pub fn trace_f64(p: &ApproachingProblem, x0: &StateVector<f64>, times: &[f64]) -> Result<FlowTrace<f64>> {
    let states = times.iter().map(|&t| project_flow_f64(p, x0, t)).collect::<Result<Vec<_>>>()?;
    Ok(FlowTrace { times: times.to_vec(), states })
}
