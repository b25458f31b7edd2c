use serde_json::{json, Value};

use riordan::flows::{self, ApproachingProblem, FlowTrace, StateVector};
use riordan::lie::{exp_monomial, exp_monomial_f64, exp_truncated_oracle};
use riordan::matrix::{render_aligned as matrix_render, Scalar};
use riordan::rational::{format_rational, to_f64};
use riordan::riordan::matrix_is_pseudo_involution;
use riordan::sample;
use riordan::{Error, FMatrix, Fps, Involution, MonomialGenerator, QMatrix, Rational, RiordanMatrix, TriMatrix};

use crate::args::{
    ApplyArgs, CheckArgs, CheckName, ExpArgs, FlowArgs, Format, GeneratorArgs, Mode, OutputSpec, TriangleArgs,
    TriangleName,
};

/// What a command produced and whether its check passed.
pub struct Outcome {
    pub text: String,
    pub pass: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, pass: true }
    }
}

fn json_text(out: &OutputSpec, value: &Value) -> String {
    let mut s = if out.pretty {
        serde_json::to_string_pretty(value).expect("serializable")
    } else {
        serde_json::to_string(value).expect("serializable")
    };
    s.push('\n');
    s
}

fn matrix_text<T: Scalar>(out: &OutputSpec, m: &TriMatrix<T>) -> String {
    match (out.format, out.pretty) {
        (_, true) => matrix_render(m),
        (Format::Csv, false) => m.to_csv(),
        (Format::Json, false) => json_text(out, &m.to_json()),
    }
}

fn csv_line(fields: impl IntoIterator<Item = String>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(fields).expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8 output")
}

fn generator(g: &GeneratorArgs) -> MonomialGenerator {
    MonomialGenerator::new(g.a.clone(), g.b.clone(), g.n)
}

pub fn triangle(out: &OutputSpec, args: &TriangleArgs) -> Result<Outcome, Error> {
    let trunc = args.rows as usize - 1;
    let r = match (args.name, &args.f, &args.g) {
        (Some(TriangleName::Pascal), _, _) => RiordanMatrix::pascal(trunc),
        (Some(TriangleName::Identity), _, _) => RiordanMatrix::identity(trunc),
        (Some(TriangleName::M), _, _) => RiordanMatrix::involution(Involution::M, trunc),
        (Some(TriangleName::MinusM), _, _) => RiordanMatrix::involution(Involution::MinusM, trunc),
        (None, Some(f), Some(g)) => RiordanMatrix::new(Fps::new(f.0.clone(), trunc), Fps::new(g.0.clone(), trunc))?,
        _ => return Err(Error::Parse("give a triangle name or both --f and --g".into())),
    };
    let m = r.to_matrix(trunc)?;
    Ok(Outcome::ok(match out.mode {
        Mode::Exact => matrix_text(out, &m),
        Mode::Float => matrix_text(out, &m.to_f64()),
    }))
}

pub fn exp(out: &OutputSpec, args: &ExpArgs) -> Result<Outcome, Error> {
    let genr = generator(&args.generator);
    let trunc = out.trunc;
    match out.mode {
        Mode::Exact => {
            let e = exp_monomial(&genr, &args.t, trunc)?;
            let m = e.to_matrix(trunc)?;
            let oracle = exp_truncated_oracle(&genr.to_element(trunc), &args.t, trunc)?;
            let pass = oracle.exact() == Some(&m);
            let text = match out.format {
                Format::Json if !out.pretty => json_text(
                    out,
                    &json!({
                        "generator": genr.to_json(),
                        "t": format_rational(&args.t),
                        "f": e.f().to_json(),
                        "g": e.g().to_json(),
                        "matrix": m.to_json(),
                        "oracle": if pass { "pass" } else { "fail" },
                    }),
                ),
                _ => matrix_text(out, &m),
            };
            Ok(Outcome { text, pass })
        }
        Mode::Float => {
            let t = to_f64(&args.t);
            let m = exp_monomial_f64(&genr, t, trunc)?;
            let text = match out.format {
                Format::Json if !out.pretty => json_text(
                    out,
                    &json!({
                        "generator": genr.to_json(),
                        "t": t,
                        "matrix": m.to_json(),
                    }),
                ),
                _ => matrix_text(out, &m),
            };
            Ok(Outcome::ok(text))
        }
    }
}

pub fn apply(out: &OutputSpec, args: &ApplyArgs) -> Result<Outcome, Error> {
    let trunc = out.trunc;
    let r = RiordanMatrix::new(Fps::new(args.f.0.clone(), trunc), Fps::new(args.g.0.clone(), trunc))?;
    let image = r.apply(&Fps::new(args.h.0.clone(), trunc));
    let text = match (out.format, out.mode) {
        (Format::Json, Mode::Exact) => json_text(out, &image.to_json()),
        (Format::Json, Mode::Float) => {
            let coeffs: Vec<f64> = image.coeffs().iter().map(to_f64).collect();
            json_text(out, &json!({"coeffs": coeffs, "trunc": trunc}))
        }
        (Format::Csv, Mode::Exact) => csv_line(image.coeffs().iter().map(format_rational)),
        (Format::Csv, Mode::Float) => csv_line(image.coeffs().iter().map(|c| to_f64(c).to_text())),
    };
    Ok(Outcome::ok(text))
}

pub fn flow(out: &OutputSpec, args: &FlowArgs) -> Result<Outcome, Error> {
    let dim = args.dim as usize;
    let p = ApproachingProblem::from_monomial(generator(&args.generator), dim)?;
    let x0 = match &args.x0 {
        Some(x) => StateVector::new(x.0.clone()),
        None => StateVector::basis(dim, 0),
    };
    let times = &args.t.0;
    let (mut value, reference) = match out.mode {
        Mode::Exact => {
            if !p.is_nilpotent() {
                return Err(Error::ExactModeIrrational);
            }
            let tr = flows::trace(&p, &x0, times)?;
            (tr.to_json(), to_float_trace(&tr))
        }
        Mode::Float => {
            let ft: Vec<f64> = times.iter().map(to_f64).collect();
            let tr = flows::trace_f64(&p, &x0.map(to_f64), &ft)?;
            (tr.to_json(), tr)
        }
    };
    let x0f = x0.map(to_f64);
    let mut max_error = None;
    if let Some(steps) = args.rk4 {
        let mut worst = 0.0f64;
        let rows = value["rows"].as_array_mut().expect("trace rows");
        for (row, (t, exact)) in rows.iter_mut().zip(reference.times.iter().zip(&reference.states)) {
            let numeric = flows::rk4_integrate(&p, &x0f, *t, steps)?;
            for (xn, xe) in numeric.components().iter().zip(exact.components()) {
                worst = worst.max((xn - xe).abs());
            }
            row.as_array_mut().expect("trace row").extend(numeric.components().iter().map(|v| json!(v)));
        }
        let columns = value["columns"].as_array_mut().expect("trace columns");
        columns.extend((0..dim).map(|i| json!(format!("rk4_x{i}"))));
        value["rk4"] = json!({"steps": steps, "max_error": worst});
        max_error = Some(worst);
    }
    let text = match out.format {
        Format::Json => json_text(out, &value),
        Format::Csv => {
            let mut s = csv_line(value["columns"].as_array().expect("columns").iter().map(cell));
            for row in value["rows"].as_array().expect("rows") {
                s.push_str(&csv_line(row.as_array().expect("row").iter().map(cell)));
            }
            if let Some(e) = max_error {
                eprintln!("rk4 max error: {e:e}");
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(x) => x.as_f64().map_or_else(|| x.to_string(), |f| f.to_text()),
        other => other.to_string(),
    }
}

fn to_float_trace(tr: &FlowTrace<Rational>) -> FlowTrace<f64> {
    FlowTrace { times: tr.times.iter().map(to_f64).collect(), states: tr.states.iter().map(|x| x.map(to_f64)).collect() }
}

pub fn check(out: &OutputSpec, args: &CheckArgs) -> Result<Outcome, Error> {
    let genr = generator(&args.generator);
    let dim = args.dim as usize;
    let name = match args.what {
        CheckName::PseudoInvolution => "pseudo-involution",
        CheckName::Symmetry => "symmetry",
        CheckName::TimeReversal => "time-reversal",
        CheckName::OracleExp => "oracle-exp",
        CheckName::Ftrm => "ftrm",
        CheckName::ASequence => "a-sequence",
    };
    let counterexample = match args.what {
        CheckName::Symmetry => involution_check(&genr, dim, false)?,
        CheckName::TimeReversal => involution_check(&genr, dim, true)?,
        CheckName::PseudoInvolution => pseudo_involution_check(out, &genr, &args.t, dim)?,
        CheckName::OracleExp => oracle_check(out, &genr, &args.t, dim)?,
        CheckName::Ftrm => ftrm_check(out.seed, args.cases, dim)?,
        CheckName::ASequence => a_sequence_check(out.seed, args.cases, dim)?,
    };
    let mut report = json!({"check": name, "dim": dim, "pass": counterexample.is_none()});
    match args.what {
        CheckName::Ftrm | CheckName::ASequence => {
            report["seed"] = json!(out.seed);
            report["cases"] = json!(args.cases);
        }
        CheckName::Symmetry | CheckName::TimeReversal => report["generator"] = genr.to_json(),
        _ => {
            report["generator"] = genr.to_json();
            report["t"] = json!(format_rational(&args.t));
        }
    }
    report["counterexample"] = counterexample.clone().unwrap_or(Value::Null);
    let text = match out.format {
        Format::Json => json_text(out, &report),
        Format::Csv => {
            let detail = counterexample.map_or(String::new(), |c| c.to_string());
            let mut s = csv_line(["check", "pass", "counterexample"].map(String::from));
            s.push_str(&csv_line([name.to_string(), report["pass"].to_string(), detail]));
            s
        }
    };
    Ok(Outcome { text, pass: report["pass"] == json!(true) })
}

fn mismatch<T: Scalar>(got: &TriMatrix<T>, expected: &TriMatrix<T>, tol: f64) -> Option<Value> {
    got.first_difference(expected, tol).map(|(i, j)| {
        json!({"row": i, "col": j, "expected": expected.get(i, j).to_json(), "got": got.get(i, j).to_json()})
    })
}

/// `S A S^-1 = A` (symmetry) or `= -A` (time reversal) for `S = M` and `-M`.
fn involution_check(genr: &MonomialGenerator, dim: usize, reversal: bool) -> Result<Option<Value>, Error> {
    let p = ApproachingProblem::from_monomial(genr.clone(), dim)?;
    let target = if reversal { p.matrix().neg() } else { p.matrix().clone() };
    for s in [Involution::M, Involution::MinusM] {
        let sm = s.projection(dim);
        let ok = if reversal { flows::check_time_reversal(&sm, &p)? } else { flows::check_symmetry(&sm, &p)? };
        if ok {
            continue;
        }
        let conj = sm.mul(p.matrix())?.mul(&sm.inverse()?)?;
        let mut c = mismatch(&conj, &target, 0.0).unwrap_or_else(|| json!({"level": "flow"}));
        c["involution"] = json!(s.name());
        return Ok(Some(c));
    }
    Ok(None)
}

fn pseudo_involution_check(
    out: &OutputSpec,
    genr: &MonomialGenerator,
    t: &Rational,
    dim: usize,
) -> Result<Option<Value>, Error> {
    let n = dim - 1;
    fn squared<T: Scalar>(e: &TriMatrix<T>) -> Result<TriMatrix<T>, Error> {
        let m = TriMatrix::<T>::diagonal(
            (0..e.dim()).map(|i| if i % 2 == 0 { T::one() } else { -T::one() }).collect(),
        );
        let em = e.mul(&m)?;
        em.mul(&em)
    }
    Ok(match out.mode {
        Mode::Exact => {
            let e: QMatrix = exp_monomial(genr, t, n)?.to_matrix(n)?;
            (!matrix_is_pseudo_involution(&e, 0.0)).then(|| squared(&e)).transpose()?.and_then(|sq| {
                mismatch(&sq, &QMatrix::identity(dim), 0.0)
            })
        }
        Mode::Float => {
            let e: FMatrix = exp_monomial_f64(genr, to_f64(t), n)?;
            (!matrix_is_pseudo_involution(&e, out.tol)).then(|| squared(&e)).transpose()?.and_then(|sq| {
                mismatch(&sq, &FMatrix::identity(dim), out.tol)
            })
        }
    })
}

fn oracle_check(out: &OutputSpec, genr: &MonomialGenerator, t: &Rational, dim: usize) -> Result<Option<Value>, Error> {
    let n = dim - 1;
    let oracle = exp_truncated_oracle(&genr.to_element(n), t, n)?;
    Ok(match out.mode {
        Mode::Exact => {
            let closed = exp_monomial(genr, t, n)?.to_matrix(n)?;
            let oracle = oracle.exact().ok_or(Error::ExactModeIrrational)?;
            mismatch(&closed, oracle, 0.0)
        }
        Mode::Float => mismatch(&exp_monomial_f64(genr, to_f64(t), n)?, &oracle.to_f64(), out.tol),
    })
}

/// `T(f|g) h` as series against the matrix-vector product, on seeded cases.
fn ftrm_check(seed: u64, cases: usize, dim: usize) -> Result<Option<Value>, Error> {
    let n = dim - 1;
    let mut rng = sample::rng(seed);
    for case in 0..cases {
        let r = sample::riordan(&mut rng, n);
        let h = sample::series(&mut rng, dim, n);
        let series = r.apply(&h);
        let product = r.to_matrix(n)?.mul_vec(h.coeffs())?;
        if let Some(i) = (0..dim).find(|&i| series[i] != product[i]) {
            return Ok(Some(json!({
                "case": case,
                "f": r.f().to_json(),
                "g": r.g().to_json(),
                "h": h.to_json(),
                "coefficient": i,
                "series": format_rational(&series[i]),
                "matrix": format_rational(&product[i]),
            })));
        }
    }
    Ok(None)
}

/// `d_{i,j} = sum_k a_k d_{i-1,j-1+k}` for `1 <= j <= i < dim`, on seeded cases.
fn a_sequence_check(seed: u64, cases: usize, dim: usize) -> Result<Option<Value>, Error> {
    let n = dim - 1;
    let mut rng = sample::rng(seed);
    for case in 0..cases {
        let r = sample::riordan(&mut rng, n);
        let a = r.a_sequence();
        let d = r.to_matrix(n)?;
        for i in 1..dim {
            for j in 1..=i {
                let rhs: Rational = (0..=i - j).map(|k| &a[k] * d.entry(i - 1, j - 1 + k)).sum();
                if &rhs != d.entry(i, j) {
                    return Ok(Some(json!({
                        "case": case,
                        "f": r.f().to_json(),
                        "g": r.g().to_json(),
                        "row": i,
                        "col": j,
                        "expected": format_rational(d.entry(i, j)),
                        "got": format_rational(&rhs),
                    })));
                }
            }
        }
    }
    Ok(None)
}
