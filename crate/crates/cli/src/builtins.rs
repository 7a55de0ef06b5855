//! Built-in polytopes and the translation of group generators into cone
//! matrices on them.

use equimirror_core::groups::{parse_cycles, perm_matrix, IntMatrix};
use equimirror_core::polytope::LatticePolytope;
use equimirror_core::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Cube,
    Cross,
    Fermat,
    Simplex,
}

impl Builtin {
    pub fn parse(name: &str) -> Option<Builtin> {
        match name {
            "cube" => Some(Builtin::Cube),
            "cross" => Some(Builtin::Cross),
            "fermat" => Some(Builtin::Fermat),
            "simplex" => Some(Builtin::Simplex),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Cube => "cube",
            Builtin::Cross => "cross",
            Builtin::Fermat => "fermat",
            Builtin::Simplex => "simplex",
        }
    }

    /// Number of letters permutation shorthand acts on.
    pub fn letters(self, d: usize) -> usize {
        match self {
            Builtin::Cube | Builtin::Cross => d,
            Builtin::Fermat | Builtin::Simplex => d + 1,
        }
    }

    pub fn polytope(self, d: usize) -> Result<LatticePolytope> {
        match self {
            Builtin::Cube => cube(d),
            Builtin::Cross => cross(d),
            Builtin::Fermat => build_fermat(d),
            Builtin::Simplex => simplex(d),
        }
    }

    /// Cone matrix (rank d+1) of a permutation given in cycle notation.
    pub fn permutation(self, d: usize, text: &str) -> Result<IntMatrix> {
        let perm = parse_cycles(text, self.letters(d))?;
        Ok(match self {
            Builtin::Cube | Builtin::Cross => perm_matrix(&perm).extend_affine(),
            Builtin::Fermat => fermat_perm_matrix(d, &perm).extend_affine(),
            Builtin::Simplex => simplex_perm_matrix(d, &perm),
        })
    }
}

pub fn cube(d: usize) -> Result<LatticePolytope> {
    let pts: Vec<Vec<i64>> = (0..1u64 << d.min(7)).map(|m| (0..d).map(|i| if m >> i & 1 == 1 { 1 } else { -1 }).collect()).collect();
    LatticePolytope::from_points(&pts)
}

pub fn cross(d: usize) -> Result<LatticePolytope> {
    let mut pts = Vec::with_capacity(2 * d);
    for i in 0..d {
        for s in [1, -1] {
            let mut v = vec![0; d];
            v[i] = s;
            pts.push(v);
        }
    }
    LatticePolytope::from_points(&pts)
}

pub fn simplex(d: usize) -> Result<LatticePolytope> {
    let mut pts = vec![vec![0; d]];
    for i in 0..d {
        let mut v = vec![0; d];
        v[i] = 1;
        pts.push(v);
    }
    LatticePolytope::from_points(&pts)
}

/// (d+1)Δ_d, the Newton polytope of x_0^{d+1} + ... + x_d^{d+1}, in the
/// lattice {x ∈ Z^{d+1} : Σ x = 0} with basis e_i - e_d (i < d), centred at
/// the interior point (1, ..., 1).
pub fn build_fermat(d: usize) -> Result<LatticePolytope> {
    if !(2..=5).contains(&d) {
        return Err(Error::DimensionCap { dim: d, cap: 5 });
    }
    let n = d as i64 + 1;
    let mut pts: Vec<Vec<i64>> = (0..d)
        .map(|j| (0..d).map(|i| if i == j { n - 1 } else { -1 }).collect())
        .collect();
    pts.push(vec![-1; d]);
    LatticePolytope::from_points(&pts)
}

/// Permutation of x_0..x_d written in the reduced basis of [`build_fermat`].
pub fn fermat_perm_matrix(d: usize, perm: &[usize]) -> IntMatrix {
    let mut rows = vec![vec![0i64; d]; d];
    for i in 0..d {
        // image of e_i - e_d
        let mut full = vec![0i64; d + 1];
        full[perm[i]] += 1;
        full[perm[d]] -= 1;
        for (r, row) in rows.iter_mut().enumerate() {
            row[i] = full[r];
        }
    }
    IntMatrix::from_rows(&rows)
}

/// Affine cone matrix permuting the vertices 0, e_1, ..., e_d of the standard
/// simplex; label 1 is the origin.
pub fn simplex_perm_matrix(d: usize, perm: &[usize]) -> IntMatrix {
    // W has the homogenized vertices as columns; the result is W P W^{-1}
    let mut w = vec![vec![0i64; d + 1]; d + 1];
    for j in 0..=d {
        if j > 0 {
            w[j - 1][j] = 1;
        }
        w[d][j] = 1;
    }
    let w = IntMatrix::from_rows(&w);
    let winv = w.inverse_unimodular().expect("unimodular");
    w.mul(&perm_matrix(perm)).mul(&winv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fermat_models() {
        for d in 2..=5 {
            let p = build_fermat(d).unwrap();
            assert!(p.is_reflexive(), "d = {d}");
            assert_eq!(p.facets().len(), d + 1);
            assert_eq!(p.reflexive_center().unwrap(), vec![0; d]);
        }
        let dual = build_fermat(4).unwrap().dual_reflexive().unwrap();
        assert_eq!(dual.vertices().len(), 5);
        assert!(dual.is_reflexive());
    }

    #[test]
    fn fermat_permutations_preserve_polytope() {
        let d = 4;
        let p = build_fermat(d).unwrap();
        for text in ["(12)", "(12345)", "(15)(23)"] {
            let m = Builtin::Fermat.permutation(d, text).unwrap();
            assert!(p.vertex_permutation(&m).is_some(), "{text}");
        }
        let m = Builtin::Fermat.permutation(d, "(12)").unwrap();
        assert_eq!(m.det(), -1);
    }

    #[test]
    fn simplex_permutations() {
        let p = simplex(3).unwrap();
        let m = Builtin::Simplex.permutation(3, "(12)").unwrap();
        assert_eq!(p.vertex_permutation(&m).unwrap(), vec![1, 0, 2, 3]);
        assert_eq!(m.get(3, 3), 1);
    }

    #[test]
    fn cube_and_cross_are_dual() {
        assert!(cube(3).unwrap().is_reflexive());
        assert_eq!(cross(3).unwrap().facets().len(), 8);
    }
}
