//! Per-element recursions: φ_F, H and G of abstract cones, Möbius values and
//! S̃, together with a harness that checks the identities relating them.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{rat, ClassPoly, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::groups::MatrixGroup;
use crate::polytope::{AbstractCone, ConeComplex, Orientation, PointCounts};

/// Deliberate corruption used as a negative control for the identity checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Add t to φ of the given face.
    CorruptPhi { face: usize },
}

/// Memoized computations for one group element on one cone complex.
pub struct GammaCtx<'a> {
    k: &'a ConeComplex,
    g: usize,
    invariant: Vec<bool>,
    cp: Vec<Option<UniPoly>>,
    sg: Vec<Option<i32>>,
    counts: Option<PointCounts>,
    phi: HashMap<usize, UniPoly>,
    hg: HashMap<AbstractCone, (UniPoly, UniPoly)>,
    stilde: HashMap<usize, UniPoly>,
    fault: Option<Fault>,
}

impl<'a> GammaCtx<'a> {
    pub fn new(k: &'a ConeComplex, g: usize) -> Self {
        let n = k.faces().len();
        GammaCtx {
            k,
            g,
            invariant: (0..n).map(|f| k.is_invariant(g, f)).collect(),
            cp: vec![None; n],
            sg: vec![None; n],
            counts: None,
            phi: HashMap::new(),
            hg: HashMap::new(),
            stilde: HashMap::new(),
            fault: None,
        }
    }

    pub fn with_fault(mut self, fault: Option<Fault>) -> Self {
        self.fault = fault;
        self
    }

    pub fn complex(&self) -> &'a ConeComplex {
        self.k
    }

    pub fn element(&self) -> usize {
        self.g
    }

    pub fn class(&self) -> usize {
        self.k.group().class_of(self.g)
    }

    pub fn is_invariant(&self, f: usize) -> bool {
        self.invariant[f]
    }

    /// γ-invariant faces contained in f.
    pub fn invariant_below(&self, f: usize) -> Vec<usize> {
        self.k.below(f).iter().copied().filter(|&h| self.invariant[h]).collect()
    }

    pub fn dim(&self, f: usize) -> usize {
        self.k.face(f).dim
    }

    /// det(tI - ρ_F(γ))
    pub fn cp(&mut self, f: usize) -> UniPoly {
        if self.cp[f].is_none() {
            self.cp[f] = Some(self.k.charpoly(f, self.g));
        }
        self.cp[f].clone().expect("set")
    }

    /// det ρ_F(γ)
    pub fn sg(&mut self, f: usize) -> i32 {
        if self.sg[f].is_none() {
            self.sg[f] = Some(self.k.detsign(f, self.g));
        }
        self.sg[f].expect("set")
    }

    /// det(I - ρ_F(γ) t)
    pub fn cp_reversed(&mut self, f: usize) -> UniPoly {
        let n = self.dim(f);
        self.cp(f).reflect(n).expect("degree equals dimension")
    }

    pub fn counts(&mut self, max_m: usize) -> &PointCounts {
        if self.counts.as_ref().is_none_or(|c| c.max_m() < max_m) {
            self.counts = Some(self.k.point_counts(self.g, max_m));
        }
        self.counts.as_ref().expect("set")
    }

    /// Characteristic polynomial of the element h of an abstract cone.
    pub fn cone_cp(&mut self, a: &AbstractCone, h: usize) -> Result<UniPoly> {
        let (num, den) = match a.orient {
            Orientation::Quotient => (self.cp(h), self.cp(a.lo)),
            Orientation::Dual => (self.cp(a.hi), self.cp(h)),
        };
        num.exact_div(&den).map_err(|e| e.with_context(&self.where_(h)))
    }

    pub fn cone_sg(&mut self, a: &AbstractCone, h: usize) -> i32 {
        match a.orient {
            Orientation::Quotient => self.sg(h) * self.sg(a.lo),
            Orientation::Dual => self.sg(a.hi) * self.sg(h),
        }
    }

    fn where_(&self, f: usize) -> String {
        format!("face {f}, class {}, element {}", self.class(), self.g)
    }

    /// H and G of an abstract cone whose zero and top are γ-invariant.
    pub fn hg(&mut self, a: AbstractCone) -> Result<(UniPoly, UniPoly)> {
        if let Some(v) = self.hg.get(&a) {
            return Ok(v.clone());
        }
        let n = a.dim(self.k);
        let out = if n == 0 {
            (UniPoly::one(), UniPoly::one())
        } else {
            let top = a.top();
            let t_minus_1 = UniPoly::from_ints(&[-1, 1]);
            let elems: Vec<usize> = a.elements(self.k).filter(|&e| self.invariant[e] && e != top).collect();
            let mut h = UniPoly::zero();
            for e in elems {
                let (num, den) = match a.orient {
                    Orientation::Quotient => (self.cp(a.hi), &t_minus_1 * &self.cp(e)),
                    Orientation::Dual => (self.cp(e), &t_minus_1 * &self.cp(a.lo)),
                };
                let ratio = num.exact_div(&den).map_err(|err| err.with_context(&self.where_(e)))?;
                let (_, g_e) = self.hg(a.face_cone(e))?;
                h = &h + &(&ratio * &g_e);
            }
            let g = (&UniPoly::from_ints(&[1, -1]) * &h).truncate_tau(&crate::algebra::frac(n as i64 - 1, 2));
            (h, g)
        };
        self.hg.insert(a, out.clone());
        Ok(out)
    }

    /// Möbius function of the γ-invariant part of an abstract cone, between
    /// elements a <= b in the cone's own order.
    pub fn mobius(&self, cone: &AbstractCone, a: usize, b: usize) -> Rational {
        let k = self.k;
        if !cone.le(k, a, b) {
            return rat(0);
        }
        let mut chain: Vec<usize> = cone
            .elements(k)
            .filter(|&c| self.invariant[c] && cone.le(k, a, c) && cone.le(k, c, b))
            .collect();
        chain.sort_by_key(|&c| cone.element_dim(k, c));
        let mut mu: HashMap<usize, Rational> = HashMap::new();
        for &c in &chain {
            let v = if c == a {
                rat(1)
            } else {
                -chain
                    .iter()
                    .filter(|&&x| x != c && cone.le(k, x, c))
                    .map(|x| mu.get(x).cloned().unwrap_or_else(|| rat(0)))
                    .sum::<Rational>()
            };
            mu.insert(c, v);
        }
        mu.get(&b).cloned().unwrap_or_else(|| rat(0))
    }

    /// φ_F[t](γ); the face must be γ-invariant.
    pub fn phi(&mut self, f: usize) -> Result<UniPoly> {
        if let Some(p) = self.phi.get(&f) {
            return Ok(p.clone());
        }
        let n = self.dim(f);
        let mut out = if n == 0 {
            UniPoly::one()
        } else {
            let max_m = self.k.dim() + 1;
            let k = self.k;
            let counts = self.counts(max_m);
            let series = UniPoly::from_coeffs((0..=n + 1).map(|m| rat(counts.closed(k, f, m) as i64)).collect());
            let prod = self.cp_reversed(f).mul_trunc(&series, n + 1);
            if !prod.coeff(n + 1).is_zero_rat() {
                return Err(Error::PhiNotPolynomial { face: f, element: self.g });
            }
            prod.truncate(n)
        };
        if self.fault == Some(Fault::CorruptPhi { face: f }) {
            out = &out + &UniPoly::t();
        }
        self.phi.insert(f, out.clone());
        Ok(out)
    }

    /// S̃ of the face f viewed as a cone over the polytope f ∩ P; 1 for the zero face.
    pub fn stilde(&mut self, f: usize) -> Result<UniPoly> {
        if let Some(p) = self.stilde.get(&f) {
            return Ok(p.clone());
        }
        let n = self.dim(f);
        let out = if n == 0 {
            UniPoly::one()
        } else {
            let mut acc = UniPoly::zero();
            for fp in self.invariant_below(f) {
                let sign = if (n - self.dim(fp)) % 2 == 0 { 1 } else { -1 } * self.sg(fp);
                let phi = self.phi(fp)?;
                let (_, g) = self.hg(AbstractCone::dual(fp, f))?;
                acc = &acc + &(&phi * &g).scale(&rat(i64::from(sign)));
            }
            acc
        };
        self.stilde.insert(f, out.clone());
        Ok(out)
    }
}

trait IsZeroRat {
    fn is_zero_rat(&self) -> bool;
}

impl IsZeroRat for Rational {
    fn is_zero_rat(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

/// Run `f` for each conjugacy class representative, in class order.
pub fn per_class<T: Send>(group: &MatrixGroup, f: impl Fn(usize) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    group.class_reps().into_par_iter().map(f).collect()
}

/// Like [`per_class`] for a subset of the classes, given by index.
pub fn per_class_in<T: Send>(group: &MatrixGroup, classes: &[usize], f: impl Fn(usize) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    let reps = group.class_reps();
    classes.par_iter().map(|&c| f(reps[c])).collect()
}

/// Group of elements fixing each of the given faces, its elements' indices in
/// the parent group, and its class representatives as parent indices.
pub fn stabilizer_group(k: &ConeComplex, faces: &[usize]) -> (Arc<MatrixGroup>, Vec<usize>) {
    let members: Vec<usize> = (0..k.group().order()).filter(|&g| faces.iter().all(|&f| k.is_invariant(g, f))).collect();
    let sub = crate::groups::Subgroup::from_members(k.group().clone(), members).expect("stabilizer");
    let (grp, emb) = sub.as_group();
    let reps = grp.class_reps().into_iter().map(|r| emb[r]).collect();
    (grp, reps)
}

fn over_stabilizer(
    k: &ConeComplex,
    faces: &[usize],
    f: impl Fn(&mut GammaCtx) -> Result<UniPoly> + Sync,
) -> Result<ClassPoly<UniPoly>> {
    let (grp, reps) = stabilizer_group(k, faces);
    let values: Vec<UniPoly> = reps
        .into_par_iter()
        .map(|g| f(&mut GammaCtx::new(k, g)))
        .collect::<Result<_>>()?;
    Ok(ClassPoly::new(grp, values))
}

/// φ_F[t] as a class function on the stabilizer of F.
pub fn phi(k: &ConeComplex, f: usize) -> Result<ClassPoly<UniPoly>> {
    over_stabilizer(k, &[f], |c| c.phi(f))
}

/// H and G of an abstract cone, as class functions on the stabilizer of its interval.
pub fn hg(k: &ConeComplex, a: AbstractCone) -> Result<(ClassPoly<UniPoly>, ClassPoly<UniPoly>)> {
    let h = over_stabilizer(k, &[a.lo, a.hi], |c| Ok(c.hg(a)?.0))?;
    let g = over_stabilizer(k, &[a.lo, a.hi], |c| Ok(c.hg(a)?.1))?;
    Ok((h, g))
}

/// S̃ of a nonzero face as a class function on its stabilizer.
pub fn stilde(k: &ConeComplex, f: usize) -> Result<ClassPoly<UniPoly>> {
    over_stabilizer(k, &[f], |c| c.stilde(f))
}

pub fn mobius_gamma(k: &ConeComplex, cone: &AbstractCone, a: usize, b: usize, g: usize) -> Rational {
    GammaCtx::new(k, g).mobius(cone, a, b)
}

/// S̃ of the whole cone through the orbit sum with induction from face
/// stabilizers, for comparison with the per-element form.
pub fn stilde_induced(k: &ConeComplex) -> Result<ClassPoly<UniPoly>> {
    let top = k.top();
    let n = k.dim();
    let group = k.group().clone();
    let mut acc: Vec<UniPoly> = vec![UniPoly::zero(); group.num_classes()];
    for orbit in k.face_orbits()? {
        let f = orbit[0];
        let (sub, emb) = k.stabilizer(f).as_group();
        let values: Vec<UniPoly> = sub
            .class_reps()
            .into_iter()
            .map(|r| {
                let mut c = GammaCtx::new(k, emb[r]);
                let sign = if (n - c.dim(f)) % 2 == 0 { 1 } else { -1 } * c.sg(f);
                let (_, g) = c.hg(AbstractCone::dual(f, top))?;
                Ok((&c.phi(f)? * &g).scale(&rat(i64::from(sign))))
            })
            .collect::<Result<_>>()?;
        let ind = crate::algebra::induce_poly(&ClassPoly::new(sub, values), &group)?;
        for (a, v) in acc.iter_mut().zip(ind.values()) {
            *a = &*a + v;
        }
    }
    Ok(ClassPoly::new(group, acc))
}

/// Outcome of one identity over all faces and classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl IdentityCheck {
    pub fn new(name: &str) -> Self {
        IdentityCheck { name: name.to_string(), cases: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn merge(&mut self, other: IdentityCheck) {
        self.cases += other.cases;
        self.failures.extend(other.failures);
    }
}

pub(crate) fn merge_checks(parts: Vec<Vec<IdentityCheck>>) -> Vec<IdentityCheck> {
    let mut out: Vec<IdentityCheck> = Vec::new();
    for part in parts {
        for c in part {
            match out.iter_mut().find(|o| o.name == c.name) {
                Some(o) => o.merge(c),
                None => out.push(c),
            }
        }
    }
    out
}

/// Evaluate the face-level identities for every class on every invariant face.
pub fn verify_identities(k: &ConeComplex, fault: Option<Fault>) -> Result<Vec<IdentityCheck>> {
    let all: Vec<usize> = (0..k.group().num_classes()).collect();
    verify_identities_in(k, fault, &all)
}

pub fn verify_identities_in(k: &ConeComplex, fault: Option<Fault>, classes: &[usize]) -> Result<Vec<IdentityCheck>> {
    let reflexive = k.polytope().is_reflexive();
    let parts = per_class_in(k.group(), classes, |g| {
        let mut c = GammaCtx::new(k, g).with_fault(fault);
        check_element(&mut c, reflexive)
    })?;
    Ok(merge_checks(parts))
}

fn series_inverse(p: &UniPoly, order: usize) -> UniPoly {
    // p(0) = 1
    let mut inv = vec![rat(0); order + 1];
    inv[0] = rat(1);
    for i in 1..=order {
        let mut s = rat(0);
        for j in 1..=i {
            s += p.coeff(j) * &inv[i - j];
        }
        inv[i] = -s;
    }
    UniPoly::from_coeffs(inv)
}

fn check_element(c: &mut GammaCtx, reflexive: bool) -> Result<Vec<IdentityCheck>> {
    let k = c.complex();
    let top = k.top();
    let class = c.class();
    let el = c.element();
    let at = |f: usize| format!("face {f}, class {class}, element {el}");
    let inv: Vec<usize> = c.invariant_below(top);

    let mut h_sym = IdentityCheck::new("H palindromic");
    let mut s_sym = IdentityCheck::new("S-tilde palindromic");
    let mut conv = IdentityCheck::new("G convolution");
    let mut tech = IdentityCheck::new("phi reconstruction");
    let mut recip = IdentityCheck::new("Ehrhart reciprocity");
    let mut mob = IdentityCheck::new("Mobius function");
    let mut refl = IdentityCheck::new("reflexivity palindrome");
    let mut classical = IdentityCheck::new("classical h/g at identity");
    let mut nonneg = IdentityCheck::new("S-tilde nonnegative at identity");

    for &f in &inv {
        let n = c.dim(f);
        for cone in [AbstractCone::quotient(0, f), AbstractCone::quotient(f, top), AbstractCone::dual(f, top), AbstractCone::dual(0, f)] {
            let d = cone.dim(k).saturating_sub(1);
            let (h, _) = c.hg(cone)?;
            h_sym.record(h.is_palindromic(d) && h.coeff(0) == rat(1) && h.degree() == Some(d), || {
                format!("{} {:?} [{}, {}]: H = {h}", at(f), cone.orient, cone.lo, cone.hi)
            });
        }
        if n == 0 {
            continue;
        }
        let s = c.stilde(f)?;
        s_sym.record(s.is_palindromic(n) && s.coeff(0) == rat(0), || format!("{}: S-tilde = {s}", at(f)));

        let mut sum = UniPoly::zero();
        for fp in c.invariant_below(f) {
            let sign = if c.dim(fp) % 2 == 0 { 1 } else { -1 } * c.sg(fp);
            let (_, g1) = c.hg(AbstractCone::quotient(fp, f))?;
            let (_, g2) = c.hg(AbstractCone::dual(0, fp))?;
            sum = &sum + &(&g1 * &g2).scale(&rat(i64::from(sign)));
        }
        conv.record(sum.is_zero(), || format!("{}: convolution sum = {sum}", at(f)));

        let phi = c.phi(f)?;
        let rev_f = c.cp_reversed(f);
        let mut rebuilt = UniPoly::zero();
        for fp in c.invariant_below(f) {
            let df = c.dim(fp);
            let refl_phi = c.phi(fp)?.reflect(df).unwrap_or_else(|_| UniPoly::zero());
            let ratio = rev_f.exact_div(&c.cp_reversed(fp)).map_err(|e| e.with_context(&at(fp)))?;
            rebuilt = &rebuilt + &(&refl_phi * &ratio);
        }
        tech.record(rebuilt == phi, || format!("{}: phi = {phi}, reconstructed {rebuilt}", at(f)));

        let order = n + 3;
        let counts = c.counts(order).clone();
        let lhs = UniPoly::from_coeffs((0..=order).map(|m| if m == 0 { rat(0) } else { rat(counts.interior(f, m) as i64) }).collect());
        let rhs = match phi.reflect(n) {
            Ok(r) => r.mul_trunc(&series_inverse(&rev_f, order), order),
            Err(_) => UniPoly::zero(),
        };
        recip.record(lhs == rhs, || format!("{}: interior series {lhs} vs {rhs}", at(f)));

        if f == top {
            let d = k.polytope().dim();
            let pal = phi.is_palindromic(d);
            if reflexive {
                refl.record(pal, || format!("{}: reflexive but phi = {phi}", at(f)));
            } else if k.group().element(el).is_identity() {
                refl.record(!pal, || format!("{}: not reflexive but phi = {phi} is palindromic", at(f)));
            }
            if reflexive && k.group().element(el).is_identity() {
                nonneg.record(s.coeffs().iter().all(|x| *x >= rat(0)), || format!("{}: S-tilde = {s}", at(f)));
            }
        }

        if k.group().element(el).is_identity() {
            let (h, g) = c.hg(AbstractCone::quotient(0, f))?;
            let (hc, gc) = classical_hg(k, f);
            classical.record(h == hc && g == gc, || format!("{}: H = {h}, classical {hc}", at(f)));
        }
    }

    // Möbius values on the whole γ-invariant face poset
    for &a in &inv {
        let lower = AbstractCone::quotient(a, top);
        let mu = mobius_row(c, &lower, a);
        for &b in &inv {
            if !k.le(a, b) {
                continue;
            }
            let expect_sign = if (c.dim(b) - c.dim(a)) % 2 == 0 { 1 } else { -1 } * c.sg(a) * c.sg(b);
            let got = mu.get(&b).cloned().unwrap_or_else(|| rat(0));
            mob.record(got == rat(i64::from(expect_sign)), || format!("{}: mu({a}, {b}) = {got}", at(a)));
        }
    }

    Ok(vec![h_sym, s_sym, conv, tech, recip, mob, refl, classical, nonneg])
}

/// μ(a, ·) over the invariant elements above a.
fn mobius_row(c: &GammaCtx, cone: &AbstractCone, a: usize) -> HashMap<usize, Rational> {
    let k = c.complex();
    let mut elems: Vec<usize> = cone.elements(k).filter(|&x| c.is_invariant(x)).collect();
    elems.sort_by_key(|&x| k.face(x).dim);
    let mut mu: HashMap<usize, Rational> = HashMap::new();
    for &x in &elems {
        let v = if x == a {
            rat(1)
        } else {
            -elems.iter().filter(|&&y| y != x && k.le(y, x)).map(|y| mu[y].clone()).sum::<Rational>()
        };
        mu.insert(x, v);
    }
    mu
}

/// Stanley's recursion on the face poset below f, without group data.
fn classical_hg(k: &ConeComplex, f: usize) -> (UniPoly, UniPoly) {
    fn go(k: &ConeComplex, f: usize, memo: &mut HashMap<usize, (UniPoly, UniPoly)>) -> (UniPoly, UniPoly) {
        if let Some(v) = memo.get(&f) {
            return v.clone();
        }
        let n = k.face(f).dim;
        let out = if n == 0 {
            (UniPoly::one(), UniPoly::one())
        } else {
            let mut h = UniPoly::zero();
            for &e in k.below(f) {
                if e == f {
                    continue;
                }
                let (_, g) = go(k, e, memo);
                let e_dim = k.face(e).dim;
                h = &h + &(&UniPoly::from_ints(&[-1, 1]).pow((n - e_dim - 1) as u32) * &g);
            }
            let g = (&UniPoly::from_ints(&[1, -1]) * &h).truncate_tau(&crate::algebra::frac(n as i64 - 1, 2));
            (h, g)
        };
        memo.insert(f, out.clone());
        out
    }
    go(k, f, &mut HashMap::new())
}
