//! Lattice polytopes, the face lattice of the cone over them, reflexive
//! duality and lattice point counts.

mod abstract_cone;
mod cone;
mod hull;
pub mod lattice;
mod points;

pub use abstract_cone::{abstract_dual_face, abstract_primal, abstract_quotient, AbstractCone, Orientation};
pub use cone::{ConeComplex, Face};
pub use points::PointCounts;

use lattice::{dot, rank};

use crate::error::{Error, Result};
use crate::groups::IntMatrix;

pub const DIM_CAP: usize = 6;
pub const VERTEX_CAP: usize = 64;

/// Facet inequality normal·x <= offset, with the vertices on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
    pub vertices: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Vec<i64>>,
    facets: Vec<Facet>,
}

impl LatticePolytope {
    /// Convex hull of the given points, which must span Z^d affinely over Q.
    /// Non-vertex points are dropped; vertex order follows the input.
    pub fn from_points(points: &[Vec<i64>]) -> Result<LatticePolytope> {
        let d = points.first().map_or(0, Vec::len);
        if points.iter().any(|p| p.len() != d) || d == 0 {
            return Err(Error::NotFullDimensional);
        }
        if d > DIM_CAP {
            return Err(Error::DimensionCap { dim: d, cap: DIM_CAP });
        }
        let mut pts: Vec<Vec<i64>> = Vec::new();
        for p in points {
            if !pts.contains(p) {
                pts.push(p.clone());
            }
        }
        if pts.len() > VERTEX_CAP {
            return Err(Error::VertexCap { count: pts.len(), cap: VERTEX_CAP });
        }
        let rays = hull::facet_rays(&pts, d)?;
        // a point is a vertex iff the normals of the facets through it have rank d
        let keep: Vec<usize> = (0..pts.len())
            .filter(|&i| {
                let normals: Vec<Vec<i64>> = rays.iter().filter(|(_, z)| z >> i & 1 == 1).map(|(r, _)| r[..d].to_vec()).collect();
                rank(&normals, d) == d
            })
            .collect();
        let vertices: Vec<Vec<i64>> = keep.iter().map(|&i| pts[i].clone()).collect();
        let mut facets: Vec<Facet> = rays
            .iter()
            .map(|(r, z)| {
                let normal: Vec<i64> = lattice::primitive(&r[..d].iter().map(|x| -x).collect::<Vec<_>>());
                let mut vmask = 0u64;
                for (k, &i) in keep.iter().enumerate() {
                    if z >> i & 1 == 1 {
                        vmask |= 1 << k;
                    }
                }
                let first = vmask.trailing_zeros() as usize;
                let offset = dot(&normal, &vertices[first]);
                Facet { normal, offset, vertices: vmask }
            })
            .collect();
        facets.sort_by(|a, b| (&a.normal, a.offset).cmp(&(&b.normal, b.offset)));
        if facets.len() > 128 {
            return Err(Error::VertexCap { count: facets.len(), cap: 128 });
        }
        Ok(LatticePolytope { dim: d, vertices, facets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| dot(&f.normal, x) <= f.offset)
    }

    pub fn translate(&self, v: &[i64]) -> LatticePolytope {
        let vertices = self.vertices.iter().map(|p| p.iter().zip(v).map(|(a, b)| a + b).collect()).collect();
        let facets = self
            .facets
            .iter()
            .map(|f| Facet { normal: f.normal.clone(), offset: f.offset + dot(&f.normal, v), vertices: f.vertices })
            .collect();
        LatticePolytope { dim: self.dim, vertices, facets }
    }

    /// Interior lattice points, stopping once `limit` are found.
    pub fn interior_points(&self, limit: usize) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        points::enumerate(self, 1, true, &mut |x| {
            out.push(x.to_vec());
            out.len() < limit
        });
        out
    }

    /// Unique interior lattice point with all facet offsets equal to 1
    /// after moving it to the origin.
    pub fn is_reflexive(&self) -> bool {
        self.reflexive_center().is_some()
    }

    pub fn reflexive_center(&self) -> Option<Vec<i64>> {
        let inner = self.interior_points(2);
        if inner.len() != 1 {
            return None;
        }
        let v = &inner[0];
        self.facets.iter().all(|f| f.offset - dot(&f.normal, v) == 1).then(|| v.clone())
    }

    /// Polar dual of a reflexive polytope centred at the origin: its vertices
    /// are the facet normals, in facet order.
    pub fn dual_reflexive(&self) -> Result<LatticePolytope> {
        match self.reflexive_center() {
            Some(c) if c.iter().all(|&x| x == 0) => {}
            Some(_) => return Err(Error::AffineAction),
            None => return Err(Error::NotReflexive),
        }
        let normals: Vec<Vec<i64>> = self.facets.iter().map(|f| f.normal.clone()).collect();
        let dual = LatticePolytope::from_points(&normals)?;
        // keep vertex order aligned with facet order
        let perm: Vec<usize> = normals.iter().map(|n| dual.vertices.iter().position(|v| v == n).expect("normal is vertex")).collect();
        let facets = dual
            .facets
            .iter()
            .map(|f| {
                let mut m = 0u64;
                for (i, &p) in perm.iter().enumerate() {
                    if f.vertices >> p & 1 == 1 {
                        m |= 1 << i;
                    }
                }
                Facet { normal: f.normal.clone(), offset: f.offset, vertices: m }
            })
            .collect();
        Ok(LatticePolytope { dim: self.dim, vertices: normals, facets })
    }

    /// Vertex permutation induced by a cone matrix (rank d+1, height
    /// preserving), or None if the vertex set is not preserved.
    pub fn vertex_permutation(&self, a: &IntMatrix) -> Option<Vec<usize>> {
        if a.rank() != self.dim + 1 {
            return None;
        }
        let mut perm = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            let mut h = v.clone();
            h.push(1);
            let img = a.apply(&h);
            if img[self.dim] != 1 {
                return None;
            }
            perm.push(self.vertices.iter().position(|w| w[..] == img[..self.dim])?);
        }
        Some(perm)
    }
}
