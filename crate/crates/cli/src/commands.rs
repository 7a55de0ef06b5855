//! Command dispatch. Every command renders a text report and a JSON value.

use std::fmt::Write as _;

use serde_json::{json, Value};

use equimirror_core::algebra::{BiLaurent, ClassPoly, Rational, UniPoly};
use equimirror_core::combinatorics::{per_class_in, verify_identities_in, Fault, GammaCtx, IdentityCheck};
use equimirror_core::hypersurface::{
    gamma_e_affine, gamma_e_stringy, gamma_e_torus, hodge_diamond, hodge_table, mirror_transform, verify_hypersurface_identities_in, EPoly, Formula, ReflexivePair,
    Side,
};
use equimirror_core::polytope::{AbstractCone, ConeComplex};

use crate::config::ModelConfig;
use crate::report::{self, ClassInfo};
use crate::CliError;

pub const COMMANDS: &[&str] = &["faces", "phi", "hg", "stilde", "ehodge", "stringy", "mirror-check", "diamond", "euler", "identities"];

pub struct Model {
    pub config: ModelConfig,
    pub complex: ConeComplex,
    pair: Option<ReflexivePair>,
}

impl Model {
    pub fn new(config: ModelConfig) -> Result<Model, CliError> {
        let complex = config.build()?;
        Ok(Model { config, complex, pair: None })
    }

    pub fn is_reflexive(&self) -> bool {
        self.complex.polytope().is_reflexive()
    }

    pub fn pair(&mut self) -> Result<&ReflexivePair, CliError> {
        if self.pair.is_none() {
            self.pair = Some(ReflexivePair::new(self.complex.clone()).map_err(CliError::from_model)?);
        }
        Ok(self.pair.as_ref().expect("set"))
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Report invariant parts only (diamond).
    pub quotient: bool,
    /// Restrict per-class work to one conjugacy class.
    pub class: Option<usize>,
    /// Corrupt φ of this face (negative control for `identities`).
    pub fault_phi: Option<usize>,
}

pub struct Outcome {
    pub text: String,
    pub json: Value,
    /// An identity or mirror check failed.
    pub failed: bool,
}

struct Ctx<'a> {
    classes: Vec<usize>,
    info: Vec<ClassInfo>,
    all: bool,
    opts: &'a RunOptions,
}

pub fn run(model: &mut Model, command: &str, opts: &RunOptions) -> Result<Outcome, CliError> {
    let group = model.complex.group().clone();
    let classes: Vec<usize> = match opts.class {
        Some(c) if c >= group.num_classes() => {
            return Err(CliError::Config(format!("--class {c} out of range; the group has {} classes", group.num_classes())))
        }
        Some(c) => vec![c],
        None => (0..group.num_classes()).collect(),
    };
    let ctx = Ctx { all: classes.len() == group.num_classes(), classes, info: report::classes(&group), opts };
    let (text, result, failed) = match command {
        "faces" => faces(model)?,
        "phi" => phi(model, &ctx)?,
        "hg" => hg(model, &ctx)?,
        "stilde" => stilde(model, &ctx)?,
        "ehodge" => ehodge(model, &ctx)?,
        "stringy" => stringy(model, &ctx)?,
        "mirror-check" => mirror(model, &ctx)?,
        "diamond" => diamond(model, &ctx)?,
        "euler" => euler(model, &ctx)?,
        "identities" => identities(model, &ctx)?,
        other => return Err(CliError::Config(format!("unknown command {other:?}"))),
    };
    let mut header = format!("{}: {}\n", command, model.config.name);
    let _ = writeln!(header, "group order {}, {} classes", group.order(), group.num_classes());
    let json = json!({
        "schema": report::SCHEMA,
        "command": command,
        "model": report::model(&model.config.name, &model.complex),
        "classes": ctx.classes,
        "result": result,
    });
    Ok(Outcome { text: header + &text, json, failed })
}

type Rendered = (String, Value, bool);

fn per_class<T: Send>(k: &ConeComplex, ctx: &Ctx, f: impl Fn(&mut GammaCtx) -> equimirror_core::Result<T> + Sync + Send) -> Result<Vec<T>, CliError> {
    per_class_in(k.group(), &ctx.classes, |g| f(&mut GammaCtx::new(k, g))).map_err(CliError::from_model)
}

fn side_per_class<T: Send>(
    side: Side,
    ctx: &Ctx,
    f: impl Fn(&mut GammaCtx, &mut GammaCtx, &[usize]) -> equimirror_core::Result<T> + Sync + Send,
) -> Result<Vec<T>, CliError> {
    per_class_in(side.k.group(), &ctx.classes, |g| f(&mut GammaCtx::new(side.k, g), &mut GammaCtx::new(side.kd, g), side.map)).map_err(CliError::from_model)
}

fn uni_section(title: &str, ctx: &Ctx, values: &[UniPoly]) -> (String, Value) {
    let mut text = format!("{title}\n");
    let mut arr = Vec::new();
    for (&c, v) in ctx.classes.iter().zip(values) {
        let _ = writeln!(text, "  {}: {v}", ctx.info[c].label());
        arr.push(json!({"class": c, "poly": report::unipoly(v), "text": v.to_string()}));
    }
    (text, Value::Array(arr))
}

fn bi_section(title: &str, ctx: &Ctx, values: &[BiLaurent]) -> (String, Value) {
    let mut text = format!("{title}\n");
    let mut arr = Vec::new();
    for (&c, v) in ctx.classes.iter().zip(values) {
        let _ = writeln!(text, "  {}: {v}", ctx.info[c].label());
        arr.push(json!({"class": c, "poly": report::bilaurent(v), "text": v.to_string()}));
    }
    (text, Value::Array(arr))
}

fn faces(model: &Model) -> Result<Rendered, CliError> {
    let k = &model.complex;
    let mut fvec = vec![0usize; k.dim() + 1];
    for f in k.faces() {
        fvec[f.dim] += 1;
    }
    let orbits = k.face_orbits().map_err(CliError::from_model)?;
    let mut text = format!("f-vector (by cone dimension) {fvec:?}\n{} orbits of faces\n", orbits.len());
    let mut arr = Vec::new();
    for f in k.faces() {
        let stab = k.stabilizer(f.id).order();
        let _ = writeln!(text, "  face {:>3}  dim {}  vertices {:?}  stabilizer {}", f.id, f.dim, f.vertex_indices(), stab);
        arr.push(json!({"id": f.id, "dim": f.dim, "vertices": f.vertex_indices(), "stabilizer": stab}));
    }
    Ok((text, json!({"f_vector": fvec, "orbits": orbits, "faces": arr}), false))
}

fn phi(model: &Model, ctx: &Ctx) -> Result<Rendered, CliError> {
    let k = &model.complex;
    let top = k.top();
    let v = per_class(k, ctx, |c| c.phi(top))?;
    let (text, json) = uni_section("phi of the cone (Ehrhart numerator)", ctx, &v);
    Ok((text, json!({"face": top, "values": json}), false))
}

fn hg(model: &Model, ctx: &Ctx) -> Result<Rendered, CliError> {
    let k = &model.complex;
    let top = k.top();
    let mut text = String::new();
    let mut out = serde_json::Map::new();
    for (name, cone) in [("primal", AbstractCone::quotient(0, top)), ("dual", AbstractCone::dual(0, top))] {
        let v = per_class(k, ctx, |c| c.hg(cone))?;
        let (h, g): (Vec<UniPoly>, Vec<UniPoly>) = v.into_iter().unzip();
        let (th, jh) = uni_section(&format!("H of the {name} cone"), ctx, &h);
        let (tg, jg) = uni_section(&format!("G of the {name} cone"), ctx, &g);
        text += &th;
        text += &tg;
        out.insert(name.to_string(), json!({"h": jh, "g": jg}));
    }
    Ok((text, Value::Object(out), false))
}

fn stilde(model: &mut Model, ctx: &Ctx) -> Result<Rendered, CliError> {
    let top = model.complex.top();
    let v = per_class(&model.complex, ctx, |c| c.stilde(top))?;
    let (mut text, j) = uni_section("S-tilde of the cone", ctx, &v);
    let mut out = json!({"primal": j});
    if model.is_reflexive() {
        let pair = model.pair()?;
        let kd = pair.dual();
        let dtop = kd.top();
        let v = per_class(kd, ctx, |c| c.stilde(dtop))?;
        let (t, j) = uni_section("S-tilde of the dual cone", ctx, &v);
        text += &t;
        out["dual"] = j;
    }
    Ok((text, out, false))
}

fn ehodge(model: &Model, ctx: &Ctx) -> Result<Rendered, CliError> {
    let k = &model.complex;
    let top = k.top();
    let torus = per_class(k, ctx, |c| gamma_e_torus(c, top))?;
    let affine = per_class(k, ctx, |c| gamma_e_affine(c, top))?;
    let (t1, j1) = bi_section("E of the torus", ctx, &torus);
    let (t2, j2) = bi_section("E of the hypersurface in the torus", ctx, &affine);
    Ok((t1 + &t2, json!({"torus": j1, "hypersurface": j2}), false))
}

fn stringy_values(model: &mut Model, ctx: &Ctx) -> Result<(Vec<BiLaurent>, Vec<BiLaurent>), CliError> {
    let pair = model.pair()?;
    Ok((side_per_class(pair.x(), ctx, gamma_e_stringy)?, side_per_class(pair.mirror(), ctx, gamma_e_stringy)?))
}

fn stringy(model: &mut Model, ctx: &Ctx) -> Result<Rendered, CliError> {
    let (x, xd) = stringy_values(model, ctx)?;
    let (t1, j1) = bi_section("stringy E of X", ctx, &x);
    let (t2, j2) = bi_section("stringy E of the mirror", ctx, &xd);
    Ok((t1 + &t2, json!({"x": j1, "mirror": j2}), false))
}

fn mirror(model: &mut Model, ctx: &Ctx) -> Result<Rendered, CliError> {
    let d = model.complex.polytope().dim();
    let (x, xd) = stringy_values(model, ctx)?;
    let mut text = String::new();
    let mut arr = Vec::new();
    let mut verdict = true;
    for ((&c, left), e) in ctx.classes.iter().zip(&x).zip(&xd) {
        let right = mirror_transform(e, d, ctx.info[c].det);
        let residual = left - &right;
        let ok = residual.is_zero();
        verdict &= ok;
        let _ = writeln!(text, "  {}: {}  residual {}", ctx.info[c].label(), if ok { "ok" } else { "MISMATCH" }, if ok { "0".to_string() } else { residual.to_string() });
        arr.push(json!({"class": c, "left": report::bilaurent(left), "right": report::bilaurent(&right), "residual": report::bilaurent(&residual)}));
    }
    let _ = writeln!(text, "verdict: {verdict}");
    Ok((text, json!({"verdict": verdict, "classes": arr}), !verdict))
}

fn epoly(model: &Model, values: Vec<BiLaurent>) -> EPoly {
    EPoly { dim: model.complex.polytope().dim(), formula: Formula::StringyReflexive, poly: ClassPoly::new(model.complex.group().clone(), values) }
}

fn diamond(model: &mut Model, ctx: &Ctx) -> Result<Rendered, CliError> {
    let d = model.complex.polytope().dim();
    let (x, xd) = stringy_values(model, ctx)?;
    let mut text = String::new();
    let mut out = serde_json::Map::new();
    for (name, values) in [("x", x), ("mirror", xd)] {
        let mut side = serde_json::Map::new();
        let _ = writeln!(text, "{}", if name == "x" { "X" } else { "mirror" });
        if ctx.opts.quotient && ctx.all {
            let dia = hodge_diamond(&epoly(model, values)).map_err(CliError::from_model)?;
            let _ = writeln!(text, "  quotient (invariant dimensions)");
            text += &indent(&report::diamond(&dia.invariant));
            side.insert("quotient".into(), report::table(&dia.invariant));
        } else {
            if ctx.opts.quotient {
                let _ = writeln!(text, "  quotient needs every class; showing class values");
            }
            let mut arr = Vec::new();
            for (&c, v) in ctx.classes.iter().zip(&values) {
                let t = hodge_table(v, d).map_err(|e| CliError::from_model(e.with_context(&format!("class {c}"))))?;
                let _ = writeln!(text, "  {}", ctx.info[c].label());
                text += &indent(&report::diamond(&t));
                arr.push(json!({"class": c, "table": report::table(&t)}));
            }
            side.insert("classes".into(), Value::Array(arr));
        }
        out.insert(name.into(), Value::Object(side));
    }
    Ok((text, Value::Object(out), false))
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("    {l}\n")).collect()
}

fn euler(model: &mut Model, ctx: &Ctx) -> Result<Rendered, CliError> {
    let one = equimirror_core::algebra::rat(1);
    let k_top = model.complex.top();
    let sides: Vec<(&str, Vec<BiLaurent>)> = if model.is_reflexive() {
        let (x, xd) = stringy_values(model, ctx)?;
        vec![("x", x), ("mirror", xd)]
    } else {
        vec![("hypersurface", per_class(&model.complex, ctx, |c| gamma_e_affine(c, k_top))?)]
    };
    let group = model.complex.group().clone();
    let mut text = String::new();
    let mut out = serde_json::Map::new();
    for (name, values) in sides {
        let chi: Vec<Rational> = values.iter().map(|v| v.eval(&one, &one)).collect::<Result<_, _>>().map_err(CliError::from_model)?;
        let _ = writeln!(text, "{name}");
        let mut arr = Vec::new();
        for (&c, x) in ctx.classes.iter().zip(&chi) {
            let _ = writeln!(text, "  {}: {x}", ctx.info[c].label());
            arr.push(json!({"class": c, "euler": report::rational(x)}));
        }
        let mut side = json!({"classes": arr});
        if ctx.all {
            let q = equimirror_core::algebra::invariant_dim(&equimirror_core::algebra::ClassFun::new(group.clone(), chi));
            let _ = writeln!(text, "  quotient: {q}");
            side["quotient"] = report::rational(&q);
        }
        out.insert(name.into(), side);
    }
    Ok((text, Value::Object(out), false))
}

fn identities(model: &mut Model, ctx: &Ctx) -> Result<Rendered, CliError> {
    let fault = ctx.opts.fault_phi.map(|face| Fault::CorruptPhi { face });
    let mut checks: Vec<(String, IdentityCheck)> = Vec::new();
    for c in verify_identities_in(&model.complex, fault, &ctx.classes).map_err(CliError::from_model)? {
        checks.push(("primal".into(), c));
    }
    if model.is_reflexive() {
        let classes = ctx.classes.clone();
        let pair = model.pair()?;
        for c in verify_identities_in(pair.dual(), None, &classes).map_err(CliError::from_model)? {
            checks.push(("dual".into(), c));
        }
        for c in verify_hypersurface_identities_in(pair.primal(), Some(pair), &classes).map_err(CliError::from_model)? {
            checks.push(("hypersurface".into(), c));
        }
    } else {
        for c in verify_hypersurface_identities_in(&model.complex, None, &ctx.classes).map_err(CliError::from_model)? {
            checks.push(("hypersurface".into(), c));
        }
    }
    let mut text = String::new();
    let mut arr = Vec::new();
    let mut failed = false;
    for (scope, c) in &checks {
        failed |= !c.passed();
        let _ = writeln!(text, "  {} {}/{} ({} cases)", if c.passed() { "PASS" } else { "FAIL" }, scope, c.name, c.cases);
        for f in c.failures.iter().take(5) {
            let _ = writeln!(text, "      {f}");
        }
        arr.push(json!({"scope": scope, "name": c.name, "cases": c.cases, "passed": c.passed(), "failures": c.failures}));
    }
    Ok((text, json!({"checks": arr, "passed": !failed}), failed))
}
