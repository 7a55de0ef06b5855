use std::collections::HashMap;
use std::sync::Arc;

use super::lattice::{coordinates, rank, saturated_span};
use super::points::{self, PointCounts};
use super::LatticePolytope;
use crate::algebra::{char_poly, CharForm, UniPoly};
use crate::error::{Error, Result};
use crate::groups::{IntMatrix, MatrixGroup, Subgroup};

/// A face of the cone over P×{1}; the zero face has no vertices.
#[derive(Clone, Debug)]
pub struct Face {
    pub id: usize,
    pub verts: u64,
    pub facets: u128,
    pub dim: usize,
    /// HNF basis of lin(F) ∩ Z^{d+1}.
    pub span_basis: Vec<Vec<i64>>,
}

impl Face {
    pub fn vertex_indices(&self) -> Vec<usize> {
        (0..64).filter(|i| self.verts >> i & 1 == 1).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.verts == 0
    }
}

/// Face lattice of the cone C over a lattice polytope with a finite group
/// acting by height-preserving matrices of rank d+1.
#[derive(Clone, Debug)]
pub struct ConeComplex {
    polytope: LatticePolytope,
    group: Arc<MatrixGroup>,
    faces: Vec<Face>,
    by_verts: HashMap<u64, usize>,
    by_facets: HashMap<u128, usize>,
    below: Vec<Vec<usize>>,
    vperm: Vec<Vec<usize>>,
}

impl ConeComplex {
    pub fn build(polytope: LatticePolytope, group: Arc<MatrixGroup>) -> Result<ConeComplex> {
        let d = polytope.dim();
        if d > super::DIM_CAP {
            return Err(Error::DimensionCap { dim: d, cap: super::DIM_CAP });
        }
        if group.rank() != d + 1 {
            return Err(Error::RankMismatch { expected: d + 1, got: group.rank() });
        }
        for (k, &g) in group.generators().iter().enumerate() {
            if polytope.vertex_permutation(group.element(g)).is_none() {
                return Err(Error::NotInvariant { index: k });
            }
        }
        let vperm: Vec<Vec<usize>> = group
            .elements()
            .iter()
            .map(|a| polytope.vertex_permutation(a).expect("group preserves vertices"))
            .collect();

        let nv = polytope.vertices().len();
        let all: u64 = if nv == 64 { u64::MAX } else { (1u64 << nv) - 1 };
        let mut sets = vec![all];
        let mut seen: HashMap<u64, ()> = HashMap::from([(all, ())]);
        let mut k = 0;
        while k < sets.len() {
            let s = sets[k];
            k += 1;
            for f in polytope.facets() {
                let t = s & f.vertices;
                if !seen.contains_key(&t) {
                    seen.insert(t, ());
                    sets.push(t);
                }
            }
        }
        let key = |s: u64| -> Vec<usize> { (0..64).filter(|i| s >> i & 1 == 1).collect() };
        sets.sort_by_key(|&s| key(s));
        let homog: Vec<Vec<i64>> = polytope
            .vertices()
            .iter()
            .map(|v| {
                let mut h = v.clone();
                h.push(1);
                h
            })
            .collect();
        let faces: Vec<Face> = sets
            .iter()
            .enumerate()
            .map(|(id, &s)| {
                let vs: Vec<Vec<i64>> = key(s).into_iter().map(|i| homog[i].clone()).collect();
                let facets = polytope
                    .facets()
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| f.vertices & s == s)
                    .fold(0u128, |m, (i, _)| m | (1 << i));
                Face { id, verts: s, facets, dim: rank(&vs, d + 1), span_basis: saturated_span(&vs, d + 1) }
            })
            .collect();
        let by_verts = faces.iter().map(|f| (f.verts, f.id)).collect();
        let by_facets = faces.iter().map(|f| (f.facets, f.id)).collect();
        let below = faces
            .iter()
            .map(|f| faces.iter().filter(|g| g.verts & f.verts == g.verts).map(|g| g.id).collect())
            .collect();
        Ok(ConeComplex { polytope, group, faces, by_verts, by_facets, below, vperm })
    }

    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn group(&self) -> &Arc<MatrixGroup> {
        &self.group
    }

    /// d + 1
    pub fn dim(&self) -> usize {
        self.polytope.dim() + 1
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    pub fn zero_face(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.by_verts[&self.faces.iter().map(|f| f.verts).fold(0, |a, b| a | b)]
    }

    pub fn face_by_verts(&self, verts: u64) -> Option<usize> {
        self.by_verts.get(&verts).copied()
    }

    pub fn face_by_facets(&self, facets: u128) -> Option<usize> {
        self.by_facets.get(&facets).copied()
    }

    /// Faces contained in `f`, in face order.
    pub fn below(&self, f: usize) -> &[usize] {
        &self.below[f]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        let (x, y) = (self.faces[a].verts, self.faces[b].verts);
        x & y == x
    }

    pub fn vertex_perm(&self, g: usize) -> &[usize] {
        &self.vperm[g]
    }

    pub fn act(&self, g: usize, f: usize) -> usize {
        let p = &self.vperm[g];
        let s = self.faces[f].verts;
        let img = (0..64).filter(|i| s >> i & 1 == 1).fold(0u64, |m, i| m | (1 << p[i]));
        self.by_verts[&img]
    }

    pub fn is_invariant(&self, g: usize, f: usize) -> bool {
        self.act(g, f) == f
    }

    pub fn stabilizer(&self, f: usize) -> Subgroup {
        let members = (0..self.group.order()).filter(|&g| self.is_invariant(g, f)).collect();
        Subgroup::from_members(self.group.clone(), members).expect("stabilizer is a subgroup")
    }

    /// Orbits of the group on faces.
    pub fn face_orbits(&self) -> Result<Vec<Vec<usize>>> {
        self.group.orbits(self.faces.len(), |g, f| self.act(g, f))
    }

    /// ρ_F(γ) in the span basis: column j holds the coordinates of ρ(γ) b_j.
    pub fn rho_face(&self, f: usize, g: usize) -> IntMatrix {
        let basis = &self.faces[f].span_basis;
        let a = self.group.element(g);
        let k = basis.len();
        let mut rows = vec![vec![0i64; k]; k];
        for (j, b) in basis.iter().enumerate() {
            let c = coordinates(basis, &a.apply(b)).expect("face span is invariant");
            for i in 0..k {
                rows[i][j] = c[i];
            }
        }
        IntMatrix::from_rows(&rows)
    }

    /// det(tI - ρ_F(γ)); 1 for the zero face.
    pub fn charpoly(&self, f: usize, g: usize) -> UniPoly {
        if self.faces[f].dim == 0 {
            return UniPoly::one();
        }
        char_poly(&self.rho_face(f, g), CharForm::TIMinusA)
    }

    pub fn detsign(&self, f: usize, g: usize) -> i32 {
        if self.faces[f].dim == 0 {
            return 1;
        }
        self.rho_face(f, g).det() as i32
    }

    pub fn point_counts(&self, g: usize, max_m: usize) -> PointCounts {
        PointCounts::compute(self, g, max_m)
    }

    /// γ-fixed lattice points of F ∩ mP.
    pub fn lattice_points_fixed(&self, f: usize, m: usize, g: usize) -> u64 {
        self.fixed_in_face(f, m, g, false)
    }

    /// γ-fixed lattice points of Int(F) ∩ mP.
    pub fn interior_lattice_points_fixed(&self, f: usize, m: usize, g: usize) -> u64 {
        self.fixed_in_face(f, m, g, true)
    }

    fn fixed_in_face(&self, f: usize, m: usize, g: usize, interior: bool) -> u64 {
        if m == 0 {
            return u64::from(!interior || self.faces[f].dim == 0);
        }
        let face = &self.faces[f];
        let a = self.group.element(g);
        let d = self.polytope.dim();
        let mi = m as i64;
        let mut count = 0;
        let mut h = vec![0i64; d + 1];
        points::enumerate(&self.polytope, mi, false, &mut |x| {
            let mut tight = 0u128;
            for (i, fc) in self.polytope.facets().iter().enumerate() {
                if super::lattice::dot(&fc.normal, x) == mi * fc.offset {
                    tight |= 1 << i;
                }
            }
            let inside = if interior { tight == face.facets } else { tight & face.facets == face.facets };
            if inside {
                h[..d].copy_from_slice(x);
                h[d] = mi;
                if a.apply(&h) == h {
                    count += 1;
                }
            }
            true
        });
        count
    }

    /// Cone over the reflexive dual, with the contragredient group indexed
    /// like this one. Face F of this cone corresponds to the dual face whose
    /// vertex set is F's facet set.
    pub fn dual_complex(&self) -> Result<ConeComplex> {
        let dual = self.polytope.dual_reflexive()?;
        if self.group.elements().iter().any(|a| a.linear_part().is_none()) {
            return Err(Error::AffineAction);
        }
        let contra = self
            .group
            .map_elements(|a| a.linear_part().expect("linear").inverse_unimodular().expect("unimodular").transpose().extend_affine())?;
        ConeComplex::build(dual, Arc::new(contra))
    }

    /// The face of the dual cone paired with `f`, looked up in `dual`.
    pub fn dual_face(&self, f: usize, dual: &ConeComplex) -> usize {
        let fs = self.faces[f].facets;
        let verts = fs as u64;
        debug_assert_eq!(u128::from(verts), fs);
        dual.face_by_verts(verts).expect("dual face exists")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::DEFAULT_CAP;

    fn cube(d: usize) -> LatticePolytope {
        let pts: Vec<Vec<i64>> = (0..1u32 << d).map(|m| (0..d).map(|i| if m >> i & 1 == 1 { 1 } else { -1 }).collect()).collect();
        LatticePolytope::from_points(&pts).unwrap()
    }

    fn central(d: usize) -> Arc<MatrixGroup> {
        let e = IntMatrix::identity(d).scaled(-1).extend_affine();
        Arc::new(MatrixGroup::generate(d + 1, &[e], DEFAULT_CAP).unwrap())
    }

    #[test]
    fn simplex_faces() {
        let mut pts = vec![vec![0; 4]];
        for i in 0..4 {
            let mut v = vec![0; 4];
            v[i] = 1;
            pts.push(v);
        }
        let k = ConeComplex::build(LatticePolytope::from_points(&pts).unwrap(), MatrixGroup::trivial(5)).unwrap();
        assert_eq!(k.faces().len(), 32);
        assert!(k.face(0).is_zero());
        assert_eq!(k.face(k.top()).dim, 5);
    }

    #[test]
    fn cube_faces_and_central_invariants() {
        let k3 = ConeComplex::build(cube(3), MatrixGroup::trivial(4)).unwrap();
        assert_eq!(k3.faces().len(), 28);
        let k = ConeComplex::build(cube(4), central(4)).unwrap();
        assert_eq!(k.faces().len(), 82);
        let eps = k.group().index_of(&IntMatrix::identity(4).scaled(-1).extend_affine()).unwrap();
        let inv: Vec<usize> = (0..82).filter(|&f| k.is_invariant(eps, f)).collect();
        assert_eq!(inv, vec![0, k.top()]);
        assert_eq!(k.detsign(k.top(), eps), 1);
        assert_eq!(k.charpoly(k.top(), eps), &UniPoly::from_ints(&[1, 1]).pow(4) * &UniPoly::from_ints(&[-1, 1]));
        // every vertex has trivial stabilizer
        for f in k.faces().iter().filter(|f| f.dim == 1) {
            assert_eq!(k.stabilizer(f.id).order(), 1);
        }
        assert_eq!(k.stabilizer(k.top()).order(), 2);
    }

    #[test]
    fn lattice_point_examples() {
        let k = ConeComplex::build(cube(4), central(4)).unwrap();
        let eps = k.group().index_of(&IntMatrix::identity(4).scaled(-1).extend_affine()).unwrap();
        let id = k.group().identity();
        assert_eq!(k.lattice_points_fixed(k.top(), 1, id), 81);
        assert_eq!(k.lattice_points_fixed(k.top(), 1, eps), 1);
        assert_eq!(k.lattice_points_fixed(k.top(), 2, eps), 1);
        assert_eq!(k.interior_lattice_points_fixed(k.top(), 1, eps), 1);
        let counts = k.point_counts(id, 3);
        for m in 0..=3 {
            assert_eq!(counts.closed(&k, k.top(), m), (2 * m as u64 + 1).pow(4));
        }
    }

    #[test]
    fn dual_pairing_reverses_dimension() {
        let k = ConeComplex::build(cube(3), central(3)).unwrap();
        let kd = k.dual_complex().unwrap();
        assert_eq!(kd.faces().len(), k.faces().len());
        for f in k.faces() {
            let g = k.dual_face(f.id, &kd);
            assert_eq!(f.dim + kd.face(g).dim, 4);
        }
    }
}
