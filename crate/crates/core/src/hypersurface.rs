//! Equivariant Hodge–Deligne polynomials of torus hypersurfaces, stringy
//! invariants of Calabi–Yau hypersurfaces in reflexive toric varieties, the
//! mirror identity, diamonds and Euler characteristics.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{binomial, char_poly, invariant_dim, rat, sign_rat, BiLaurent, CharForm, ClassFun, ClassPoly, Rational, UniPoly};
use crate::combinatorics::{merge_checks, per_class, per_class_in, GammaCtx, IdentityCheck};
use crate::error::{Error, Result};
use crate::groups::MatrixGroup;
use crate::polytope::{AbstractCone, ConeComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formula {
    Torus,
    AffineHypersurface,
    StringyReflexive,
    StringyStrata,
}

/// A class function with values in Laurent polynomials in u, v.
#[derive(Debug, Clone, PartialEq)]
pub struct EPoly {
    /// Dimension d of the ambient torus.
    pub dim: usize,
    pub formula: Formula,
    pub poly: ClassPoly<BiLaurent>,
}

impl EPoly {
    pub fn group(&self) -> &Arc<MatrixGroup> {
        self.poly.group()
    }

    pub fn values(&self) -> &[BiLaurent] {
        self.poly.values()
    }
}

/// det(uvI - ρ′(γ)) for a group of rank-d matrices.
pub fn e_torus(group: &Arc<MatrixGroup>) -> EPoly {
    let values = group.class_reps().into_iter().map(|g| char_poly(group.element(g), CharForm::TIMinusA).at_uv()).collect();
    EPoly { dim: group.rank(), formula: Formula::Torus, poly: ClassPoly::new(group.clone(), values) }
}

fn div_uv(x: &BiLaurent, what: &str) -> Result<BiLaurent> {
    let out = x.shift(-1, -1);
    match out.min_exponents() {
        Some((p, q)) if p < 0 || q < 0 => Err(Error::inexact(what)),
        _ => Ok(out),
    }
}

/// E of the torus of the face cone F: det(uvI - ρ_F)/(uv - 1).
pub fn gamma_e_torus(c: &mut GammaCtx, f: usize) -> Result<BiLaurent> {
    let cp = c.cp(f).exact_div(&UniPoly::from_ints(&[-1, 1]))?;
    Ok(cp.at_uv())
}

/// E of the non-degenerate hypersurface in the torus of the face F, with
/// Newton polytope F ∩ P, at the element of the context.
pub fn gamma_e_affine(c: &mut GammaCtx, f: usize) -> Result<BiLaurent> {
    let n = c.dim(f);
    let mut sum = BiLaurent::zero();
    for fp in c.invariant_below(f) {
        let s = c.stilde(fp)?.at_uinv_v().shift(c.dim(fp) as i64, 0);
        let (_, g) = c.hg(AbstractCone::quotient(fp, f))?;
        sum = &sum + &(&s * &g.at_uv()).scale(&sign_rat(c.sg(fp)));
    }
    let sign = if n % 2 == 0 { 1 } else { -1 } * c.sg(f);
    let total = &gamma_e_torus(c, f)? + &sum.scale(&sign_rat(sign));
    div_uv(&total, &format!("affine hypersurface at face {f}, class {}, element {}", c.class(), c.element()))
}

pub fn e_affine_hypersurface(k: &ConeComplex) -> Result<EPoly> {
    let top = k.top();
    let values = per_class(k.group(), |g| gamma_e_affine(&mut GammaCtx::new(k, g), top))?;
    Ok(EPoly { dim: k.polytope().dim(), formula: Formula::AffineHypersurface, poly: ClassPoly::new(k.group().clone(), values) })
}

/// A cone over a reflexive polytope together with the cone over its dual,
/// the dual group acting by inverse transpose with the same element indices.
pub struct ReflexivePair {
    primal: ConeComplex,
    dual: ConeComplex,
    to_dual: Vec<usize>,
    to_primal: Vec<usize>,
}

/// One side of a reflexive pair: the hypersurface lives on `k`, dual faces on `kd`.
#[derive(Clone, Copy)]
pub struct Side<'a> {
    pub k: &'a ConeComplex,
    pub kd: &'a ConeComplex,
    pub map: &'a [usize],
}

impl ReflexivePair {
    pub fn new(primal: ConeComplex) -> Result<ReflexivePair> {
        if !primal.polytope().is_reflexive() {
            return Err(Error::NotReflexive);
        }
        let dual = primal.dual_complex()?;
        let to_dual: Vec<usize> = (0..primal.faces().len()).map(|f| primal.dual_face(f, &dual)).collect();
        let mut to_primal = vec![0; dual.faces().len()];
        for (f, &fd) in to_dual.iter().enumerate() {
            to_primal[fd] = f;
        }
        Ok(ReflexivePair { primal, dual, to_dual, to_primal })
    }

    pub fn primal(&self) -> &ConeComplex {
        &self.primal
    }

    pub fn dual(&self) -> &ConeComplex {
        &self.dual
    }

    pub fn dual_face(&self, f: usize) -> usize {
        self.to_dual[f]
    }

    /// The hypersurface X in the toric variety of the primal polytope.
    pub fn x(&self) -> Side<'_> {
        Side { k: &self.primal, kd: &self.dual, map: &self.to_dual }
    }

    /// The mirror X*.
    pub fn mirror(&self) -> Side<'_> {
        Side { k: &self.dual, kd: &self.primal, map: &self.to_primal }
    }
}

/// Stringy E-function of X at one element, as a sum over invariant faces.
pub fn gamma_e_stringy(c: &mut GammaCtx, cd: &mut GammaCtx, map: &[usize]) -> Result<BiLaurent> {
    let top = c.complex().top();
    let mut sum = BiLaurent::zero();
    for f in c.invariant_below(top) {
        let n = c.dim(f);
        let s = c.stilde(f)?.at_uinv_v();
        let sd = cd.stilde(map[f])?.at_uv();
        let coeff = if n % 2 == 0 { 1 } else { -1 } * c.sg(f);
        sum = &sum + &(&s * &sd).shift(n as i64, 0).scale(&sign_rat(coeff));
    }
    let sg = c.sg(top);
    div_uv(&sum.scale(&sign_rat(sg)), &format!("stringy sum, class {}, element {}", c.class(), c.element()))
}

/// Same invariant through the stratification by torus orbits.
pub fn gamma_e_strata(c: &mut GammaCtx, cd: &mut GammaCtx, map: &[usize]) -> Result<BiLaurent> {
    let top = c.complex().top();
    let mut sum = BiLaurent::zero();
    for f in c.invariant_below(top) {
        if f == 0 {
            continue;
        }
        let e = gamma_e_affine(c, f)?;
        let phi = cd.phi(map[f])?.at_uv();
        sum = &sum + &(&e * &phi);
    }
    Ok(sum)
}

fn side_values(side: Side, f: fn(&mut GammaCtx, &mut GammaCtx, &[usize]) -> Result<BiLaurent>) -> Result<Vec<BiLaurent>> {
    per_class(side.k.group(), |g| f(&mut GammaCtx::new(side.k, g), &mut GammaCtx::new(side.kd, g), side.map))
}

pub fn e_stringy_reflexive(side: Side) -> Result<EPoly> {
    let values = side_values(side, gamma_e_stringy)?;
    Ok(EPoly { dim: side.k.polytope().dim(), formula: Formula::StringyReflexive, poly: ClassPoly::new(side.k.group().clone(), values) })
}

pub fn e_stringy_strata(side: Side) -> Result<EPoly> {
    let values = side_values(side, gamma_e_strata)?;
    Ok(EPoly { dim: side.k.polytope().dim(), formula: Formula::StringyStrata, poly: ClassPoly::new(side.k.group().clone(), values) })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MirrorReport {
    pub left: ClassPoly<BiLaurent>,
    pub right: ClassPoly<BiLaurent>,
    pub residual: ClassPoly<BiLaurent>,
    pub verdict: bool,
}

/// (-u)^{d-1} det ρ(γ) E(u^{-1}, v)
pub fn mirror_transform(e: &BiLaurent, d: usize, det: i64) -> BiLaurent {
    let sign = if (d - 1) % 2 == 0 { det } else { -det };
    e.invert_u().shift(d as i64 - 1, 0).scale(&rat(sign))
}

pub fn mirror_check(pair: &ReflexivePair) -> Result<MirrorReport> {
    let x = e_stringy_reflexive(pair.x())?;
    let xd = e_stringy_reflexive(pair.mirror())?;
    Ok(mirror_report(&x, &xd, pair.primal()))
}

fn mirror_report(x: &EPoly, xd: &EPoly, k: &ConeComplex) -> MirrorReport {
    let group = x.group().clone();
    let d = x.dim;
    let reps = group.class_reps();
    let right: Vec<BiLaurent> = xd.values().iter().zip(&reps).map(|(e, &g)| mirror_transform(e, d, k.detsign(k.top(), g).into())).collect();
    let residual: Vec<BiLaurent> = x.values().iter().zip(&right).map(|(a, b)| a - b).collect();
    let verdict = residual.iter().all(BiLaurent::is_zero);
    MirrorReport {
        left: x.poly.clone(),
        right: ClassPoly::new(group.clone(), right),
        residual: ClassPoly::new(group, residual),
        verdict,
    }
}

/// Hodge numbers as class functions; entry [p][q] is H^{p,q}.
#[derive(Debug, Clone, PartialEq)]
pub struct Diamond {
    pub size: usize,
    pub entries: Vec<Vec<ClassFun>>,
    pub invariant: Vec<Vec<Rational>>,
}

impl Diamond {
    pub fn entry(&self, p: usize, q: usize) -> &ClassFun {
        &self.entries[p][q]
    }

    /// Dimension of the invariant part, i.e. the Hodge number of the quotient.
    pub fn quotient(&self, p: usize, q: usize) -> &Rational {
        &self.invariant[p][q]
    }

    /// Values at one class.
    pub fn at_class(&self, c: usize) -> Vec<Vec<Rational>> {
        self.entries.iter().map(|row| row.iter().map(|x| x.at_class(c).clone()).collect()).collect()
    }
}

/// H^{p,q} = (-1)^{p+q} [u^p v^q] E at a single class, for 0 <= p, q < d.
pub fn hodge_table(e: &BiLaurent, d: usize) -> Result<Vec<Vec<Rational>>> {
    if let Some((p, q)) = e.min_exponents() {
        if p < 0 || q < 0 {
            return Err(Error::NegativeExponent { context: e.to_string() });
        }
    }
    if let Some((p, q)) = e.max_exponents() {
        let bound = d.saturating_sub(1);
        if p.max(q) as usize > bound {
            return Err(Error::DegreeTooLarge { exponent: p.max(q) as usize, bound });
        }
    }
    Ok((0..d)
        .map(|p| {
            (0..d)
                .map(|q| {
                    let c = e.coeff(p as i64, q as i64);
                    if (p + q) % 2 == 0 { c } else { -c }
                })
                .collect()
        })
        .collect())
}

/// Hodge numbers of every class, and of the quotient.
pub fn hodge_diamond(e: &EPoly) -> Result<Diamond> {
    let n = e.dim;
    let tables: Vec<Vec<Vec<Rational>>> = e
        .values()
        .iter()
        .enumerate()
        .map(|(c, v)| hodge_table(v, n).map_err(|err| err.with_context(&format!("class {c}"))))
        .collect::<Result<_>>()?;
    let group = e.group().clone();
    let mut entries = Vec::with_capacity(n);
    let mut invariant = Vec::with_capacity(n);
    for p in 0..n {
        let mut row = Vec::with_capacity(n);
        let mut inv = Vec::with_capacity(n);
        for q in 0..n {
            let cf = ClassFun::new(group.clone(), tables.iter().map(|t| t[p][q].clone()).collect());
            inv.push(invariant_dim(&cf));
            row.push(cf);
        }
        entries.push(row);
        invariant.push(inv);
    }
    Ok(Diamond { size: n, entries, invariant })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EulerReport {
    pub per_class: Vec<Rational>,
    pub quotient: Rational,
}

pub fn euler_characteristics(e: &EPoly) -> Result<EulerReport> {
    let per_class: Vec<Rational> = e.values().iter().map(|v| v.eval(&rat(1), &rat(1))).collect::<Result<_>>()?;
    let chi = ClassFun::new(e.group().clone(), per_class.clone());
    Ok(EulerReport { quotient: invariant_dim(&chi), per_class })
}

/// The palindromic polynomial of degree d-1 agreeing with (1+t)^d up to
/// degree floor((d-1)/2).
pub fn alpha(d: usize) -> UniPoly {
    let half = (d - 1) / 2;
    let coeffs = (0..d).map(|i| Rational::from_integer(binomial(d as i64, i.min(d - 1 - i).min(half) as i64))).collect();
    UniPoly::from_coeffs(coeffs)
}

/// Hodge numbers of the quotient by the free central involution, from those
/// of X. The involution contributes α_d(uv) - u^{d-1} α_d(u^{-1}v).
pub fn cs_quotient_table(d: usize, h: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let n = d - 1;
    let a = alpha(d);
    (0..h.len())
        .map(|p| {
            (0..h[p].len())
                .map(|q| {
                    let mut trace = rat(0);
                    if p == q {
                        trace += a.coeff(p);
                    }
                    if p + q == n {
                        let sign = if d % 2 == 0 { rat(1) } else { rat(-1) };
                        trace += a.coeff(p) * sign;
                    }
                    if p == q && p + q == n {
                        // the two contributions cancel in the middle
                        trace = rat(0);
                    }
                    (rat(h[p][q]) + trace) / rat(2)
                })
                .collect()
        })
        .collect()
}

/// Checks relating the hypersurface formulas, per class.
pub fn verify_hypersurface_identities(k: &ConeComplex, pair: Option<&ReflexivePair>) -> Result<Vec<IdentityCheck>> {
    let all: Vec<usize> = (0..k.group().num_classes()).collect();
    verify_hypersurface_identities_in(k, pair, &all)
}

pub fn verify_hypersurface_identities_in(k: &ConeComplex, pair: Option<&ReflexivePair>, classes: &[usize]) -> Result<Vec<IdentityCheck>> {
    let d = k.polytope().dim();
    let top = k.top();
    let parts = per_class_in(k.group(), classes, |g| {
        let mut c = GammaCtx::new(k, g);
        let class = c.class();
        let at = format!("class {class}, element {g}");
        let e = gamma_e_affine(&mut c, top)?;
        let torus = gamma_e_torus(&mut c, top)?.shift(-1, -1);

        let mut step1 = IdentityCheck::new("affine hypersurface step 1");
        let bad: Vec<(i64, i64)> = e
            .terms()
            .map(|(k, _)| *k)
            .chain(torus.terms().map(|(k, _)| *k))
            .filter(|&(p, q)| p + q > d as i64 - 1 && e.coeff(p, q) != torus.coeff(p, q))
            .collect();
        step1.record(bad.is_empty(), || format!("{at}: coefficients differ at {bad:?}"));

        let mut step2 = IdentityCheck::new("affine hypersurface step 2");
        let phi = c.phi(top)?.substitute_monomial(1, 0);
        let torus_u = gamma_e_torus(&mut c, top)?.at_v_one();
        let sign = if (d + 1) % 2 == 0 { 1 } else { -1 } * c.sg(top);
        let rhs = (&torus_u + &phi.scale(&sign_rat(sign))).shift(-1, 0);
        let lhs = e.at_v_one();
        step2.record(lhs == rhs, || format!("{at}: E(u,1) = {lhs}, expected {rhs}"));

        let mut out = vec![step1, step2];
        if let Some(pair) = pair {
            let mut self_dual = IdentityCheck::new("stringy self-duality");
            let mut strata = IdentityCheck::new("stringy sum equals strata sum");
            let mut mirror = IdentityCheck::new("mirror identity");
            let mut symmetry = IdentityCheck::new("diamond symmetry");
            let mut es = Vec::new();
            for side in [pair.x(), pair.mirror()] {
                let mut c = GammaCtx::new(side.k, g);
                let mut cd = GammaCtx::new(side.kd, g);
                let st = gamma_e_stringy(&mut c, &mut cd, side.map)?;
                let sr = gamma_e_strata(&mut c, &mut cd, side.map)?;
                strata.record(st == sr, || format!("{at}: {st} vs {sr}"));
                let flipped = st.invert_u().invert_v().shift(d as i64 - 1, d as i64 - 1);
                self_dual.record(flipped == st, || format!("{at}: {st}"));
                symmetry.record(st.swap() == st, || format!("{at}: {st}"));
                es.push(st);
            }
            let rhs = mirror_transform(&es[1], d, k.group().det(g));
            mirror.record(rhs == es[0], || format!("{at}: residual {}", &es[0] - &rhs));
            out.extend([self_dual, strata, mirror, symmetry]);
        }
        Ok(out)
    })?;
    Ok(merge_checks(parts))
}

/// True when every coefficient is an integer.
pub fn is_integral(e: &BiLaurent) -> bool {
    e.terms().all(|(_, c)| c.denom().is_one())
}

/// Constant term check used for connected outputs.
pub fn h00_is_one(d: &Diamond) -> bool {
    d.quotient(0, 0) == &rat(1) && !d.quotient(0, 0).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{IntMatrix, DEFAULT_CAP};
    use crate::polytope::LatticePolytope;

    fn complex(pts: &[Vec<i64>]) -> ConeComplex {
        let p = LatticePolytope::from_points(pts).unwrap();
        let d = p.dim();
        ConeComplex::build(p, MatrixGroup::trivial(d + 1)).unwrap()
    }

    fn bi(terms: &[(i64, i64, i64)]) -> BiLaurent {
        BiLaurent::from_terms(terms.iter().map(|&(p, q, c)| ((p, q), rat(c))))
    }

    #[test]
    fn torus_polynomials() {
        let eps = Arc::new(MatrixGroup::generate(4, &[IntMatrix::identity(4).scaled(-1)], DEFAULT_CAP).unwrap());
        let e = e_torus(&eps);
        let uv1 = UniPoly::from_ints(&[1, 1]).pow(4).at_uv();
        let uvm = UniPoly::from_ints(&[-1, 1]).pow(4).at_uv();
        for (c, cls) in eps.classes().iter().enumerate() {
            let want = if eps.element(cls[0]).is_identity() { &uvm } else { &uv1 };
            assert_eq!(&e.values()[c], want);
        }
    }

    #[test]
    fn point_in_one_torus() {
        let k = complex(&[vec![0], vec![1]]);
        assert_eq!(e_affine_hypersurface(&k).unwrap().values()[0], BiLaurent::one());
    }

    #[test]
    fn cubic_curve_in_torus() {
        let k = complex(&[vec![0, 0], vec![3, 0], vec![0, 3]]);
        let e = e_affine_hypersurface(&k).unwrap();
        assert_eq!(e.values()[0], bi(&[(1, 1, 1), (1, 0, -1), (0, 1, -1), (0, 0, -8)]));
    }

    #[test]
    fn elliptic_curve_from_square() {
        let k = complex(&[vec![-1, -1], vec![1, -1], vec![-1, 1], vec![1, 1]]);
        let pair = ReflexivePair::new(k).unwrap();
        let want = bi(&[(0, 0, 1), (1, 0, -1), (0, 1, -1), (1, 1, 1)]);
        assert_eq!(e_stringy_reflexive(pair.x()).unwrap().values()[0], want);
        assert_eq!(e_stringy_strata(pair.x()).unwrap().values()[0], want);
        assert!(mirror_check(&pair).unwrap().verdict);
    }

    #[test]
    fn alpha_and_closed_forms() {
        assert_eq!(alpha(4), UniPoly::from_ints(&[1, 4, 4, 1]));
        assert_eq!(alpha(5), UniPoly::from_ints(&[1, 5, 10, 5, 1]));
        let h = vec![vec![1, 0, 0, 1], vec![0, 4, 68, 0], vec![0, 68, 4, 0], vec![1, 0, 0, 1]];
        let q = cs_quotient_table(4, &h);
        assert_eq!(q[1][1], rat(4));
        assert_eq!(q[1][2], rat(36));
        assert_eq!(q[0][0], rat(1));
        assert_eq!(q[0][3], rat(1));
        assert_eq!(q[3][3], rat(1));
        assert_eq!(q[2][1], rat(36));
    }

    #[test]
    fn diamond_rejects_negative_exponents() {
        let g = MatrixGroup::trivial(1);
        let e = EPoly { dim: 2, formula: Formula::Torus, poly: ClassPoly::new(g, vec![bi(&[(-1, 0, 1)])]) };
        assert!(matches!(hodge_diamond(&e), Err(Error::NegativeExponent { .. })));
    }
}
