//! Integer linear algebra: kernels, saturation and Hermite normal form.

use num_integer::Integer;

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    // returns (g, x, y) with a x + b y = g >= 0
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

fn to_i64(v: &[i128]) -> Vec<i64> {
    v.iter().map(|&x| i64::try_from(x).expect("lattice entry overflow")).collect()
}

pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g <= 1 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Basis of {x ∈ Z^n : r·x = 0 for every row r}, by unimodular column operations.
pub fn integer_kernel(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    // u holds the column transform; column j of u is u[..][j]
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    let mut k = 0;
    for row in 0..a.len() {
        if k == n {
            break;
        }
        // clear entries in columns k+1.. of this row into column k
        for j in k + 1..n {
            if a[row][j] == 0 {
                continue;
            }
            let (x, y) = (a[row][k], a[row][j]);
            let (g, s, t) = ext_gcd(x, y);
            let (p, q) = (x / g, y / g);
            // [col_k, col_j] <- [s col_k + t col_j, -q col_k + p col_j]
            for m in [&mut a, &mut u] {
                for r in m.iter_mut() {
                    let (ck, cj) = (r[k], r[j]);
                    r[k] = s * ck + t * cj;
                    r[j] = -q * ck + p * cj;
                }
            }
        }
        if a[row][k] != 0 {
            k += 1;
        }
    }
    (k..n).map(|j| to_i64(&u.iter().map(|r| r[j]).collect::<Vec<_>>())).collect()
}

/// Row-style Hermite normal form with zero rows removed: echelon form with
/// positive pivots and entries above each pivot reduced into [0, pivot).
pub fn hnf_rows(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    let mut r = 0;
    for c in 0..n {
        if r == m.len() {
            break;
        }
        for i in r + 1..m.len() {
            if m[i][c] == 0 {
                continue;
            }
            let (x, y) = (m[r][c], m[i][c]);
            let (g, s, t) = ext_gcd(x, y);
            let (p, q) = (x / g, y / g);
            let (rr, ri) = (m[r].clone(), m[i].clone());
            for j in 0..n {
                m[r][j] = s * rr[j] + t * ri[j];
                m[i][j] = -q * rr[j] + p * ri[j];
            }
        }
        if m[r][c] == 0 {
            continue;
        }
        if m[r][c] < 0 {
            for x in m[r].iter_mut() {
                *x = -*x;
            }
        }
        let piv = m[r][c];
        for i in 0..r {
            let f = m[i][c].div_euclid(piv);
            if f != 0 {
                let pr = m[r].clone();
                for j in 0..n {
                    m[i][j] -= f * pr[j];
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m.iter().map(|row| to_i64(row)).collect()
}

/// HNF basis of lin(vectors) ∩ Z^n.
pub fn saturated_span(vectors: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let normals = integer_kernel(vectors, n);
    let basis = integer_kernel(&normals, n);
    hnf_rows(&basis, n)
}

pub fn rank(vectors: &[Vec<i64>], n: usize) -> usize {
    n - integer_kernel(vectors, n).len()
}

/// Coordinates of `v` in an HNF basis, or None if v is not in its Z-span.
pub fn coordinates(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    let mut w: Vec<i128> = v.iter().map(|&x| i128::from(x)).collect();
    let mut out = Vec::with_capacity(basis.len());
    for b in basis {
        let p = b.iter().position(|&x| x != 0)?;
        let piv = i128::from(b[p]);
        if w[p] % piv != 0 {
            return None;
        }
        let c = w[p] / piv;
        for (wj, &bj) in w.iter_mut().zip(b) {
            *wj -= c * i128::from(bj);
        }
        out.push(i64::try_from(c).ok()?);
    }
    w.iter().all(|&x| x == 0).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat_vec(rows: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
        rows.iter().map(|r| dot(r, x)).collect()
    }

    #[test]
    fn kernel_of_single_row() {
        let k = integer_kernel(&[vec![2, 4, 6]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(dot(&[2, 4, 6], v), 0);
        }
        // The kernel lattice has determinant 1 inside the plane x + 2y + 3z = 0
        let h = hnf_rows(&k, 3);
        assert_eq!(h, vec![vec![1, 1, -1], vec![0, 3, -2]]);
    }

    #[test]
    fn saturation_adds_missing_points() {
        // (2,0,1),(0,2,1) span a plane whose lattice contains (1,-1,0)
        let s = saturated_span(&[vec![2, 0, 1], vec![0, 2, 1]], 3);
        assert_eq!(s.len(), 2);
        assert!(coordinates(&s, &[1, -1, 0]).is_some());
        assert!(coordinates(&s, &[2, 0, 1]).is_some());
        assert!(coordinates(&s, &[1, 0, 0]).is_none());
    }

    #[test]
    fn hnf_is_canonical() {
        let a = hnf_rows(&[vec![1, 2, 3], vec![4, 5, 6]], 3);
        let b = hnf_rows(&[vec![5, 7, 9], vec![-1, -2, -3]], 3);
        assert_eq!(a, b);
        assert_eq!(a, vec![vec![1, 2, 3], vec![0, 3, 6]]);
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(
            rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 4), 0..4)
        ) {
            let k = integer_kernel(&rows, 4);
            for v in &k {
                prop_assert!(mat_vec(&rows, v).iter().all(|&x| x == 0));
            }
            prop_assert_eq!(rank(&rows, 4) + k.len(), 4);
            // saturation: the kernel is saturated, so its HNF has unit gcd minors
            let sat = saturated_span(&k, 4);
            prop_assert_eq!(hnf_rows(&k, 4), sat);
        }
    }
}
