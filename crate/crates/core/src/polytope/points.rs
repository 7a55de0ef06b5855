use super::lattice::dot;
use super::{ConeComplex, LatticePolytope};

/// Visit the lattice points of mP (or of its interior when `strict`).
/// The callback returns false to stop.
pub(crate) fn enumerate(p: &LatticePolytope, m: i64, strict: bool, f: &mut dyn FnMut(&[i64]) -> bool) {
    let d = p.dim();
    let lo: Vec<i64> = (0..d).map(|j| m * p.vertices().iter().map(|v| v[j]).min().unwrap_or(0)).collect();
    let hi: Vec<i64> = (0..d).map(|j| m * p.vertices().iter().map(|v| v[j]).max().unwrap_or(0)).collect();
    let facets: Vec<(&[i64], i64)> = p.facets().iter().map(|fc| (&fc.normal[..], m * fc.offset - i64::from(strict))).collect();
    // rest[k][j]: minimum of Σ_{i>=j} a_i x_i over the box
    let rest: Vec<Vec<i64>> = facets
        .iter()
        .map(|(a, _)| {
            let mut r = vec![0; d + 1];
            for j in (0..d).rev() {
                r[j] = r[j + 1] + (a[j] * lo[j]).min(a[j] * hi[j]);
            }
            r
        })
        .collect();
    let mut x = vec![0i64; d];
    let mut partial = vec![0i64; facets.len()];
    dfs(0, &mut x, &mut partial, &facets, &rest, &lo, &hi, f);
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    j: usize,
    x: &mut Vec<i64>,
    partial: &mut Vec<i64>,
    facets: &[(&[i64], i64)],
    rest: &[Vec<i64>],
    lo: &[i64],
    hi: &[i64],
    f: &mut dyn FnMut(&[i64]) -> bool,
) -> bool {
    let d = x.len();
    if j == d {
        return f(x);
    }
    let (mut l, mut h) = (lo[j], hi[j]);
    for (k, (a, lim)) in facets.iter().enumerate() {
        let slack = lim - partial[k] - rest[k][j + 1];
        let c = a[j];
        if c > 0 {
            h = h.min(slack.div_euclid(c));
        } else if c < 0 {
            // c x <= slack  <=>  x >= ceil(slack / c)
            l = l.max(-(slack.div_euclid(-c)));
        } else if slack < 0 {
            return true;
        }
    }
    for v in l..=h {
        x[j] = v;
        for (k, (a, _)) in facets.iter().enumerate() {
            partial[k] += a[j] * v;
        }
        let go = dfs(j + 1, x, partial, facets, rest, lo, hi, f);
        for (k, (a, _)) in facets.iter().enumerate() {
            partial[k] -= a[j] * v;
        }
        if !go {
            return false;
        }
    }
    true
}

/// Numbers of lattice points fixed by one group element in the relative
/// interiors of the faces of the cone, per height m.
#[derive(Clone, Debug)]
pub struct PointCounts {
    relint: Vec<Vec<u64>>,
}

impl PointCounts {
    pub(crate) fn compute(k: &ConeComplex, g: usize, max_m: usize) -> PointCounts {
        let nf = k.faces().len();
        let a = k.group().element(g);
        let p = k.polytope();
        let d = p.dim();
        let mut relint = vec![vec![0u64; nf]; max_m + 1];
        relint[0][k.zero_face()] = 1;
        let mut h = vec![0i64; d + 1];
        for (m, row) in relint.iter_mut().enumerate().skip(1) {
            let mi = m as i64;
            enumerate(p, mi, false, &mut |x| {
                h[..d].copy_from_slice(x);
                h[d] = mi;
                if a.apply(&h) == h {
                    let mut tight = 0u128;
                    for (i, fc) in p.facets().iter().enumerate() {
                        if dot(&fc.normal, x) == mi * fc.offset {
                            tight |= 1 << i;
                        }
                    }
                    row[k.face_by_facets(tight).expect("tight set is a face")] += 1;
                }
                true
            });
        }
        PointCounts { relint }
    }

    pub fn max_m(&self) -> usize {
        self.relint.len() - 1
    }

    /// γ-fixed lattice points in the relative interior of F at height m.
    pub fn interior(&self, face: usize, m: usize) -> u64 {
        self.relint[m][face]
    }

    /// γ-fixed lattice points of F ∩ mP.
    pub fn closed(&self, k: &ConeComplex, face: usize, m: usize) -> u64 {
        k.below(face).iter().map(|&g| self.relint[m][g]).sum()
    }
}
