//! Golden cases from the published tables, rerun from scratch.

use std::fmt::Display;
use std::fmt::Write as _;
use std::time::Instant;

use serde_json::{json, Value};

use equimirror_core::algebra::{rat, Rational, UniPoly};
use equimirror_core::combinatorics::{hg, phi, stilde};
use equimirror_core::groups::MatrixGroup;
use equimirror_core::hypersurface::{alpha, e_stringy_reflexive, euler_characteristics, hodge_diamond, mirror_check, Diamond, ReflexivePair};
use equimirror_core::polytope::AbstractCone;

use crate::builtins::Builtin;
use crate::config::ModelConfig;
use crate::report::{self, element_order};
use crate::CliError;

pub struct Check {
    pub label: String,
    pub expected: String,
    pub got: String,
    pub passed: bool,
}

#[derive(Default)]
pub struct Checks(Vec<Check>);

impl Checks {
    pub fn eq<T: PartialEq + Display>(&mut self, label: &str, expected: T, got: T) {
        self.0.push(Check { label: label.to_string(), passed: expected == got, expected: expected.to_string(), got: got.to_string() });
    }

    pub fn truth(&mut self, label: &str, got: bool) {
        self.eq(label, true, got);
    }

    pub fn all(&self) -> &[Check] {
        &self.0
    }
}

pub struct CaseResult {
    pub name: &'static str,
    pub checks: Vec<Check>,
    pub seconds: f64,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub struct Summary {
    pub cases: Vec<CaseResult>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(CaseResult::passed)
    }

    /// Per-case lines with timings.
    pub fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let _ = writeln!(out, "{} {:<28} {:>3} checks  {:>8.3}s", if c.passed() { "PASS" } else { "FAIL" }, c.name, c.checks.len(), c.seconds);
            for k in c.checks.iter().filter(|k| !k.passed) {
                let _ = writeln!(out, "    {}: expected {}, got {}", k.label, k.expected, k.got);
            }
        }
        let n = self.cases.iter().filter(|c| c.passed()).count();
        let _ = writeln!(out, "{n}/{} cases passed", self.cases.len());
        out
    }

    /// Report without timings, so that repeated runs compare equal.
    pub fn json(&self) -> Value {
        json!({
            "schema": report::SCHEMA,
            "command": "selftest",
            "passed": self.passed(),
            "cases": self.cases.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed(),
                "checks": c.checks.iter().map(|k| json!({
                    "label": k.label, "expected": k.expected, "got": k.got, "passed": k.passed,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

type CaseFn = fn(&mut Checks) -> Result<(), CliError>;

pub const CASES: &[(&str, CaseFn)] = &[
    ("cube4 trivial group", cube4_trivial),
    ("cube4 central involution", cube4_central),
    ("cube3 central involution", cube3_central),
    ("simplex H and G", simplices),
    ("quintic A5", quintic_a5),
    ("quintic Sym5", quintic_sym5),
    ("quintic subgroups of A5", quintic_subgroups),
];

pub fn selftest() -> Summary {
    let cases = CASES
        .iter()
        .map(|&(name, f)| {
            let start = Instant::now();
            let mut checks = Checks::default();
            if let Err(e) = f(&mut checks) {
                checks.0.push(Check { label: "error".into(), expected: "no error".into(), got: e.to_string(), passed: false });
            }
            CaseResult { name, checks: checks.0, seconds: start.elapsed().as_secs_f64() }
        })
        .collect();
    Summary { cases }
}

pub fn pair(kind: Builtin, d: usize, gens: &[&str]) -> Result<ReflexivePair, CliError> {
    let k = ModelConfig::builtin(kind, d, gens).build()?;
    ReflexivePair::new(k).map_err(CliError::from_model)
}

fn m(e: equimirror_core::Error) -> CliError {
    CliError::from_model(e)
}

/// Index of the first class whose elements have the given order.
pub fn class_of_order(g: &MatrixGroup, order: usize) -> Option<usize> {
    g.class_reps().iter().position(|&r| element_order(g, r) == order)
}

/// Hodge diamonds of X and its mirror.
pub fn diamonds(p: &ReflexivePair) -> Result<(Diamond, Diamond), CliError> {
    let x = hodge_diamond(&e_stringy_reflexive(p.x()).map_err(m)?).map_err(m)?;
    let y = hodge_diamond(&e_stringy_reflexive(p.mirror()).map_err(m)?).map_err(m)?;
    Ok((x, y))
}

fn poly(c: &[i64]) -> UniPoly {
    UniPoly::from_ints(c)
}

fn cube4_trivial(ck: &mut Checks) -> Result<(), CliError> {
    let p = pair(Builtin::Cube, 4, &[])?;
    let k = p.primal();
    let kd = p.dual();
    let top = k.top();
    ck.eq("phi of the cone", poly(&[1, 76, 230, 76, 1]), phi(k, top).map_err(m)?.values()[0].clone());
    ck.eq("phi of the dual cone", poly(&[1, 1]).pow(4), phi(kd, kd.top()).map_err(m)?.values()[0].clone());
    let (h, g) = hg(k, AbstractCone::quotient(0, top)).map_err(m)?;
    ck.eq("h of the cone", poly(&[1, 12, 14, 12, 1]), h.values()[0].clone());
    ck.eq("g of the cone", poly(&[1, 11, 2]), g.values()[0].clone());
    let (_, gd) = hg(kd, AbstractCone::quotient(0, kd.top())).map_err(m)?;
    ck.eq("g of the dual cone", poly(&[1, 3, 2]), gd.values()[0].clone());
    ck.eq("S-tilde of the cone", poly(&[0, 1, 68, 68, 1]), stilde(k, top).map_err(m)?.values()[0].clone());
    ck.eq("S-tilde of the dual cone", poly(&[0, 1, 4, 4, 1]), stilde(kd, kd.top()).map_err(m)?.values()[0].clone());
    let mut nonzero = 0;
    for f in 1..kd.faces().len() {
        if f != kd.top() && !stilde(kd, f).map_err(m)?.values()[0].is_zero() {
            nonzero += 1;
        }
    }
    ck.eq("proper dual faces with nonzero S-tilde", 0, nonzero);
    let (x, y) = diamonds(&p)?;
    ck.eq("h11 of X", rat(4), x.quotient(1, 1).clone());
    ck.eq("h21 of X", rat(68), x.quotient(2, 1).clone());
    ck.eq("h11 of the mirror", rat(68), y.quotient(1, 1).clone());
    ck.eq("h21 of the mirror", rat(4), y.quotient(2, 1).clone());
    let ex = euler_characteristics(&e_stringy_reflexive(p.x()).map_err(m)?).map_err(m)?;
    let ey = euler_characteristics(&e_stringy_reflexive(p.mirror()).map_err(m)?).map_err(m)?;
    ck.eq("Euler characteristic of X", rat(-128), ex.per_class[0].clone());
    ck.eq("Euler characteristic of the mirror", rat(128), ey.per_class[0].clone());
    Ok(())
}

fn cube4_central(ck: &mut Checks) -> Result<(), CliError> {
    let p = pair(Builtin::Cube, 4, &["central"])?;
    let k = p.primal();
    let eps = class_of_order(k.group(), 2).expect("involution");
    let top = k.top();
    let (h, _) = hg(k, AbstractCone::quotient(0, top)).map_err(m)?;
    ck.eq("H at the involution", poly(&[1, 1]).pow(4), h.values()[eps].clone());
    ck.eq("phi at the involution", poly(&[1, 1]).pow(4), phi(k, top).map_err(m)?.values()[eps].clone());
    let ex = e_stringy_reflexive(p.x()).map_err(m)?;
    let a = alpha(4);
    ck.eq("stringy E at the involution", &a.at_uv() - &a.at_uinv_v().shift(3, 0), ex.values()[eps].clone());
    let eux = euler_characteristics(&ex).map_err(m)?;
    let euy = euler_characteristics(&e_stringy_reflexive(p.mirror()).map_err(m)?).map_err(m)?;
    ck.eq("Euler characteristic at the involution", rat(0), eux.per_class[eps].clone());
    ck.eq("Euler characteristic of X/Z2", rat(-64), eux.quotient);
    ck.eq("Euler characteristic of the mirror quotient", rat(64), euy.quotient);
    let (x, y) = diamonds(&p)?;
    ck.eq("h11 of X/Z2", rat(4), x.quotient(1, 1).clone());
    ck.eq("h21 of X/Z2", rat(36), x.quotient(2, 1).clone());
    ck.eq("h11 of the mirror quotient", rat(36), y.quotient(1, 1).clone());
    ck.eq("h21 of the mirror quotient", rat(4), y.quotient(2, 1).clone());
    ck.truth("mirror identity", mirror_check(&p).map_err(m)?.verdict);
    Ok(())
}

fn cube3_central(ck: &mut Checks) -> Result<(), CliError> {
    let p = pair(Builtin::Cube, 3, &["central"])?;
    let (x, _) = diamonds(&p)?;
    ck.eq("h11 of the Enriques quotient", rat(10), x.quotient(1, 1).clone());
    ck.eq("h20 of the Enriques quotient", rat(0), x.quotient(2, 0).clone());
    ck.truth("mirror identity", mirror_check(&p).map_err(m)?.verdict);
    Ok(())
}

fn simplices(ck: &mut Checks) -> Result<(), CliError> {
    for d in 2..=5usize {
        let k = ModelConfig::builtin(Builtin::Simplex, d, &[]).build()?;
        let (h, g) = hg(&k, AbstractCone::quotient(0, k.top())).map_err(m)?;
        ck.eq(&format!("H of the {d}-simplex"), UniPoly::from_ints(&vec![1; d + 1]), h.values()[0].clone());
        ck.eq(&format!("G of the {d}-simplex"), UniPoly::one(), g.values()[0].clone());
    }
    Ok(())
}

/// Values of 1 + 2 Ind_{Z2} 1 + 2 Ind_{Z3} 1 on A5, by element order.
pub fn mu_by_order(order: usize) -> i64 {
    match order {
        1 => 101,
        2 | 3 => 5,
        _ => 1,
    }
}

fn quintic_a5(ck: &mut Checks) -> Result<(), CliError> {
    let p = pair(Builtin::Fermat, 4, &["(12)(34)", "(12345)"])?;
    let g = p.primal().group().clone();
    ck.eq("group order", 60, g.order());
    let (x, y) = diamonds(&p)?;
    for (c, &r) in g.class_reps().iter().enumerate() {
        let o = element_order(&g, r);
        ck.eq(&format!("h11 of X at order {o}"), rat(1), x.entry(1, 1).at_class(c).clone());
        ck.eq(&format!("h21 of X at order {o}"), rat(mu_by_order(o)), x.entry(2, 1).at_class(c).clone());
        ck.eq(&format!("h11 of the mirror at order {o}"), rat(mu_by_order(o)), y.entry(1, 1).at_class(c).clone());
        ck.eq(&format!("h21 of the mirror at order {o}"), rat(1), y.entry(2, 1).at_class(c).clone());
    }
    ck.eq("h11 of X/A5", rat(1), x.quotient(1, 1).clone());
    ck.eq("h21 of X/A5", rat(5), x.quotient(2, 1).clone());
    ck.eq("h11 of the mirror quotient", rat(5), y.quotient(1, 1).clone());
    ck.eq("h21 of the mirror quotient", rat(1), y.quotient(2, 1).clone());
    ck.truth("mirror identity", mirror_check(&p).map_err(m)?.verdict);
    let id = g.class_of(g.identity());
    let s = stilde(p.primal(), p.primal().top()).map_err(m)?;
    ck.eq("t^2 coefficient of S-tilde at the identity", rat(101), s.values()[id].coeff(2));
    Ok(())
}

fn quintic_sym5(ck: &mut Checks) -> Result<(), CliError> {
    let p = pair(Builtin::Fermat, 4, &["(12)", "(12345)"])?;
    let g = p.primal().group().clone();
    ck.eq("group order", 120, g.order());
    let (x, y) = diamonds(&p)?;
    for (c, &r) in g.class_reps().iter().enumerate() {
        if g.det(r) != 1 {
            continue;
        }
        let o = element_order(&g, r);
        ck.eq(&format!("h21 of X at even order {o}"), rat(mu_by_order(o)), x.entry(2, 1).at_class(c).clone());
        ck.eq(&format!("h11 of the mirror at even order {o}"), rat(mu_by_order(o)), y.entry(1, 1).at_class(c).clone());
    }
    ck.truth("mirror identity", mirror_check(&p).map_err(m)?.verdict);
    Ok(())
}

/// Subgroups of A5 acting on the quintic, by generators in cycle notation.
pub const A5_SUBGROUPS: &[(&str, &[&str])] = &[
    ("Z2", &["(12)(34)"]),
    ("Z2xZ2", &["(12)(34)", "(13)(24)"]),
    ("Z3", &["(123)"]),
    ("Z5", &["(12345)"]),
    ("A4", &["(12)(34)", "(123)"]),
    ("Sym3", &["(12)(45)", "(23)(45)"]),
    ("D5", &["(12)(35)", "(12345)"]),
    ("A5", &["(12)(34)", "(12345)"]),
];

fn quintic_subgroups(ck: &mut Checks) -> Result<(), CliError> {
    for (name, gens) in A5_SUBGROUPS {
        let p = pair(Builtin::Fermat, 4, gens)?;
        ck.truth(&format!("mirror identity for {name}"), mirror_check(&p).map_err(m)?.verdict);
        let (x, y) = diamonds(&p)?;
        let swap: (Rational, Rational) = (y.quotient(2, 1).clone(), y.quotient(1, 1).clone());
        ck.eq(&format!("quotient diamonds of {name} are mirror"), format!("{:?}", (x.quotient(1, 1), x.quotient(2, 1))), format!("{:?}", (&swap.0, &swap.1)));
    }
    Ok(())
}
