//! Acceptance criteria, one line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the report is printed by
//! `cargo test`. Criteria listed in `KNOWN_RED` cannot be met as stated; the
//! run still evaluates them in full and fails if one of them unexpectedly
//! passes, so the list cannot drift.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde_json::Value;

use riordan::flows::{check_symmetry, check_time_reversal, project_flow, rk4_integrate};
use riordan::lie::{conj_transport, exp_monomial, exp_truncated_oracle, pde_residual};
use riordan::matrix::QMatrix;
use riordan::rational::{int, rat};
use riordan::sample;
use riordan::{ApproachingProblem, Fps, Involution, MonomialGenerator, Rational, RiordanMatrix, StateVector};

const KNOWN_RED: &[u32] = &[8];

struct Verdict {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn grid_values() -> Vec<Rational> {
    [-2, -1, 1, 2, 3].iter().map(|&v| int(v)).collect()
}

fn grid_times() -> Vec<Rational> {
    vec![int(-1), rat(1, 2), int(1), int(2)]
}

/// The 300 cells with `b != 0`, then the 15 cells `b = 0`, `t = 1`.
fn grid() -> Vec<(MonomialGenerator, Rational)> {
    let mut cells = Vec::new();
    for a in grid_values() {
        for b in grid_values() {
            for n in 1..=3 {
                for t in grid_times() {
                    cells.push((MonomialGenerator::new(a.clone(), b.clone(), n), t));
                }
            }
        }
    }
    for a in grid_values() {
        for n in 1..=3 {
            cells.push((MonomialGenerator::new(a.clone(), Rational::zero(), n), int(1)));
        }
    }
    cells
}

/// The 90 distinct generators of the grid.
fn grid_generators() -> Vec<MonomialGenerator> {
    let mut gens: Vec<MonomialGenerator> = Vec::new();
    for (genr, _) in grid() {
        if !gens.contains(&genr) {
            gens.push(genr);
        }
    }
    gens
}

fn binomial_rows(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let row = (0..=i)
            .map(|j| {
                let left = if j > 0 { prev[j - 1].clone() } else { BigInt::zero() };
                let up = prev.get(j).cloned().unwrap_or_else(BigInt::zero);
                left + up
            })
            .collect();
        rows.push(row);
    }
    rows
}

fn ac1_pascal() -> Verdict {
    let start = Instant::now();
    let m = exp_monomial(&MonomialGenerator::creation(), &int(1), 32).unwrap().to_matrix(32).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let binomials = binomial_rows(32);
    let mismatch = (0..=32usize)
        .flat_map(|i| (0..=i).map(move |j| (i, j)))
        .find(|&(i, j)| m.entry(i, j) != &Rational::from_integer(binomials[i][j].clone()));
    Verdict {
        id: 1,
        name: "Pascal identity at size 33",
        pass: mismatch.is_none() && elapsed < 1.0,
        detail: match mismatch {
            Some((i, j)) => format!("entry ({i},{j}) differs"),
            None => format!("{elapsed:.3} s"),
        },
    }
}

fn ac2_oracle() -> Verdict {
    let start = Instant::now();
    let cells = grid();
    let mut failures = Vec::new();
    for (genr, t) in &cells {
        let closed = exp_monomial(genr, t, 12).unwrap().to_matrix(12).unwrap();
        let oracle = exp_truncated_oracle(&genr.to_element(12), t, 12).unwrap();
        if oracle.exact() != Some(&closed) {
            failures.push(format!("{} t={t}", genr.to_json()));
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    Verdict {
        id: 2,
        name: "closed-form exponential equals truncated oracle",
        pass: failures.is_empty() && elapsed < 20.0,
        detail: format!("{} cells, {} mismatches, {elapsed:.2} s {}", cells.len(), failures.len(), failures.join("; ")).trim_end().to_string(),
    }
}

fn ac3_group_law() -> Verdict {
    let mut rng = sample::rng(3);
    let mut failures = 0;
    for _ in 0..50 {
        let genr = MonomialGenerator::new(sample::rational(&mut rng), sample::rational(&mut rng), rng.gen_range(1..=3));
        let (s, t) = (sample::rational(&mut rng), sample::rational(&mut rng));
        let lhs = exp_monomial(&genr, &s, 16).unwrap().product(&exp_monomial(&genr, &t, 16).unwrap());
        if lhs != exp_monomial(&genr, &(&s + &t), 16).unwrap() {
            failures += 1;
        }
    }
    Verdict { id: 3, name: "one-parameter group law", pass: failures == 0, detail: format!("50 cases, {failures} failures") }
}

fn ac4_group_axioms() -> Verdict {
    const N: usize = 8;
    let mut rng = sample::rng(4);
    let mut failures = Vec::new();
    let identity = QMatrix::identity(N + 1);
    for case in 0..100 {
        let r1 = sample::riordan(&mut rng, N);
        let r2 = sample::riordan(&mut rng, N);
        let (m1, m2) = (r1.to_matrix(N).unwrap(), r2.to_matrix(N).unwrap());
        if r1.product(&r2).to_matrix(N).unwrap() != m1.mul(&m2).unwrap() {
            failures.push(format!("product #{case}"));
        }
        if r1.product(&r1.inverse()).to_matrix(N).unwrap() != identity || r1.inverse().to_matrix(N).unwrap().mul(&m1).unwrap() != identity {
            failures.push(format!("inverse #{case}"));
        }
        let gamma = sample::series(&mut rng, N + 1, N);
        if r2.apply(&gamma).coeffs() != &m2.mul_vec(gamma.coeffs()).unwrap()[..] {
            failures.push(format!("ftrm #{case}"));
        }
    }
    for case in 0..100 {
        let r = sample::riordan(&mut rng, 10);
        let a = r.a_sequence();
        let d = r.to_matrix(10).unwrap();
        let holds = (1..=10).all(|i| {
            (1..=i).all(|j| (0..=i - j).map(|k| &a[k] * d.entry(i - 1, j - 1 + k)).sum::<Rational>() == *d.entry(i, j))
        });
        if !holds {
            failures.push(format!("a-sequence #{case}"));
        }
    }
    Verdict {
        id: 4,
        name: "Riordan group axioms and A-sequence",
        pass: failures.is_empty(),
        detail: format!("100 pairs at n=8, 100 A-sequences at depth 10, {} failures {}", failures.len(), failures.join("; ")).trim_end().to_string(),
    }
}

fn ac5_conjugation() -> Verdict {
    let mut rng = sample::rng(5);
    let mut failures = Vec::new();
    for case in 0..50 {
        let r = sample::riordan(&mut rng, 12);
        let l = sample::lie_element(&mut rng, 12);
        let rm = r.to_matrix(10).unwrap();
        let lhs = rm.mul(&l.to_matrix(10).unwrap()).unwrap();
        let rhs = conj_transport(&r, &l).to_matrix(10).unwrap().mul(&rm).unwrap();
        if lhs != rhs {
            failures.push(format!("transport #{case}"));
        }
    }
    let m = RiordanMatrix::m(12);
    for genr in grid_generators() {
        let l = genr.to_element(12);
        let sign = if genr.n % 2 == 0 { int(1) } else { int(-1) };
        if conj_transport(&m, &l) != l.scale(&sign) {
            failures.push(format!("eigenvector {}", genr.to_json()));
        }
    }
    Verdict {
        id: 5,
        name: "conjugation transport and M-eigenvectors",
        pass: failures.is_empty(),
        detail: format!("50 transports, {} generators, {} failures {}", grid_generators().len(), failures.len(), failures.join("; ")).trim_end().to_string(),
    }
}

fn ac6_symmetries() -> Verdict {
    let mut failures = Vec::new();
    let gens = grid_generators();
    for genr in &gens {
        for dim in 1..=10 {
            let p = ApproachingProblem::from_monomial(genr.clone(), dim).unwrap();
            for s in [Involution::M, Involution::MinusM] {
                let sm = s.projection(dim);
                let ok = if genr.n % 2 == 0 {
                    check_symmetry(&sm, &p).unwrap()
                } else {
                    check_time_reversal(&sm, &p).unwrap()
                };
                if !ok {
                    failures.push(format!("{} dim {dim} {}", genr.to_json(), s.name()));
                }
            }
        }
    }
    for (genr, t) in grid().iter().filter(|(g, _)| g.n % 2 == 1) {
        if !exp_monomial(genr, t, 12).unwrap().is_pseudo_involution(12).unwrap() {
            failures.push(format!("pseudo-involution {} t={t}", genr.to_json()));
        }
    }
    Verdict {
        id: 6,
        name: "M and -M as symmetries (even n) and time reversals (odd n)",
        pass: failures.is_empty(),
        detail: format!("{} generators, dims 1..10, {} failures {}", gens.len(), failures.len(), failures.join("; ")).trim_end().to_string(),
    }
}

fn ac7_flows() -> Verdict {
    let mut failures = Vec::new();
    for n in 0..=10 {
        let p = ApproachingProblem::creation(n + 1).unwrap();
        for t in [int(-2), rat(-1, 3), rat(1, 2), int(3)] {
            let x = project_flow(&p, &StateVector::basis(n + 1, 0), &t).unwrap();
            let powers: Vec<Rational> = (0..=n).map(|k| num_traits::pow(t.clone(), k)).collect();
            if x.components() != &powers[..] {
                failures.push(format!("moment curve n={n} t={t}"));
            }
        }
    }
    let mut rng = sample::rng(7);
    let mut worst = 0.0f64;
    let times = [-2.0, -1.5, -1.0, -0.5, 0.5, 1.0, 1.5, 2.0];
    for dim in 1..=8 {
        let p = ApproachingProblem::creation(dim).unwrap();
        for &t in &times {
            let x0: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect();
            let numeric = rk4_integrate(&p, &StateVector::new(x0.clone()), t, 2000).unwrap();
            let exact = p.flow_matrix(&riordan::rational::from_f64(t).unwrap()).unwrap().to_f64().mul_vec(&x0).unwrap();
            for (a, b) in numeric.components().iter().zip(&exact) {
                worst = worst.max((a - b).abs());
            }
        }
    }
    if worst > 1e-9 {
        failures.push(format!("rk4 error {worst:e}"));
    }
    for (genr, t) in grid().iter().step_by(7) {
        for dim in 1..=8 {
            let p = ApproachingProblem::from_monomial(genr.clone(), dim).unwrap();
            let x0 = StateVector::new((0..dim).map(|_| sample::rational(&mut rng)).collect());
            let x = project_flow(&p, &x0, t).unwrap();
            if x.components()[0] != x0.components()[0] {
                failures.push(format!("hyperplane {} dim {dim}", genr.to_json()));
            }
        }
    }
    Verdict {
        id: 7,
        name: "moment curve, RK4 agreement, hyperplane confinement",
        pass: failures.is_empty(),
        detail: format!("rk4 max error {worst:.2e}, {} failures {}", failures.len(), failures.join("; ")).trim_end().to_string(),
    }
}

fn ac8_pde_residual() -> Verdict {
    let h = Fps::from_ints(&[1, 1, 1], 11);
    let delta = rat(1, 100_000);
    let (mut worst_abs, mut worst_rel, mut over) = (0.0f64, 0.0f64, 0);
    let mut worst_cell = String::new();
    let cells = grid();
    for (genr, t) in &cells {
        let r = pde_residual(genr, &h, t, &delta, 12).unwrap();
        if r.abs > 1e-6 {
            over += 1;
        }
        if r.abs > worst_abs {
            worst_abs = r.abs;
            worst_cell = format!("{} t={t}", genr.to_json());
        }
        worst_rel = worst_rel.max(r.rel);
    }
    Verdict {
        id: 8,
        name: "PDE residual of the characteristic solution",
        pass: over == 0,
        detail: format!(
            "{over}/{} cells above 1e-6, worst abs {worst_abs:.3e} at {worst_cell}, worst rel {worst_rel:.3e}",
            cells.len()
        ),
    }
}

fn ac9_golden() -> Verdict {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases: [(&[&str], &str); 3] = [
        (&["triangle", "pascal", "--rows", "8"], "triangle_pascal_rows8.json"),
        (&["exp", "--a", "1", "--b", "1", "--n", "1", "--t", "1", "--trunc", "8"], "exp_creation_trunc8.json"),
        (&["check", "time-reversal", "--a", "1", "--b", "1", "--n", "1", "--dim", "6"], "check_time_reversal_dim6.json"),
    ];
    let mut failures = Vec::new();
    for (args, file) in cases {
        let expected = std::fs::read(golden.join(file)).unwrap();
        let first = Command::new(env!("CARGO_BIN_EXE_riordan")).args(args).output().unwrap();
        let second = Command::new(env!("CARGO_BIN_EXE_riordan")).args(args).output().unwrap();
        if !first.status.success() || first.stdout != expected || second.stdout != first.stdout {
            failures.push(file.to_string());
        }
    }
    // the committed files themselves against independent values
    let binomials = binomial_rows(8);
    let as_rows = |v: &Value| -> Vec<Vec<String>> { serde_json::from_value(v["rows"].clone()).unwrap() };
    let pascal: Value = serde_json::from_slice(&std::fs::read(golden.join(cases[0].1)).unwrap()).unwrap();
    let exp: Value = serde_json::from_slice(&std::fs::read(golden.join(cases[1].1)).unwrap()).unwrap();
    let check: Value = serde_json::from_slice(&std::fs::read(golden.join(cases[2].1)).unwrap()).unwrap();
    let expect_rows = |n: usize| -> Vec<Vec<String>> {
        binomials[..n].iter().map(|r| r.iter().map(BigInt::to_string).collect()).collect()
    };
    if as_rows(&pascal) != expect_rows(8) || as_rows(&exp["matrix"]) != expect_rows(9) {
        failures.push("golden matrix is not the binomial triangle".into());
    }
    if exp["g"]["coeffs"][0] != "1" || exp["g"]["coeffs"][1] != "-1" || exp["oracle"] != "pass" || check["pass"] != true {
        failures.push("golden content".into());
    }
    let detail = if failures.is_empty() { "3 commands byte-identical and deterministic".into() } else { failures.join("; ") };
    Verdict { id: 9, name: "CLI golden files", pass: failures.is_empty(), detail }
}

fn main() {
    let criteria: [fn() -> Verdict; 9] = [
        ac1_pascal,
        ac2_oracle,
        ac3_group_law,
        ac4_group_axioms,
        ac5_conjugation,
        ac6_symmetries,
        ac7_flows,
        ac8_pde_residual,
        ac9_golden,
    ];
    let mut unexpected = Vec::new();
    println!();
    for criterion in criteria {
        let v = criterion();
        let red = KNOWN_RED.contains(&v.id);
        let tag = match (v.pass, red) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("AC{} {tag:<12} {}: {}", v.id, v.name, v.detail);
        if v.pass == red {
            unexpected.push(v.id);
        }
    }
    if !unexpected.is_empty() {
        println!("acceptance: unexpected outcome for {unexpected:?}");
        std::process::exit(1);
    }
    println!("acceptance: all criteria as expected ({} known red)", KNOWN_RED.len());
}
