//! Facets of the convex hull of lattice points by the double description
//! method, run on the homogenized cone.

use super::lattice::{dot, integer_kernel, primitive, rank};
use crate::error::{Error, Result};

/// Facet normals `(c, c0)` with c·p + c0 >= 0 on all points, and the set of
/// points on each facet as a bitset.
pub(crate) fn facet_rays(points: &[Vec<i64>], d: usize) -> Result<Vec<(Vec<i64>, u64)>> {
    let n = d + 1;
    let rows: Vec<Vec<i64>> = points
        .iter()
        .map(|p| {
            let mut r = p.clone();
            r.push(1);
            r
        })
        .collect();
    if rows.len() > 64 {
        return Err(Error::VertexCap { count: rows.len(), cap: 64 });
    }
    // greedy independent rows
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let mut trial: Vec<Vec<i64>> = basis.iter().map(|&b| rows[b].clone()).collect();
        trial.push(rows[i].clone());
        if rank(&trial, n) == trial.len() {
            basis.push(i);
            if basis.len() == n {
                break;
            }
        }
    }
    if basis.len() < n {
        return Err(Error::NotFullDimensional);
    }
    let mut rays: Vec<(Vec<i64>, u64)> = Vec::new();
    for j in 0..n {
        let others: Vec<Vec<i64>> = basis.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &b)| rows[b].clone()).collect();
        let mut ray = integer_kernel(&others, n).pop().expect("one-dimensional kernel");
        if dot(&rows[basis[j]], &ray) < 0 {
            ray.iter_mut().for_each(|x| *x = -*x);
        }
        let zero = basis.iter().enumerate().filter(|&(k, _)| k != j).fold(0u64, |z, (_, &b)| z | (1 << b));
        rays.push((primitive(&ray), zero));
    }
    let in_basis: u64 = basis.iter().fold(0, |z, &b| z | (1 << b));
    for (i, row) in rows.iter().enumerate() {
        if in_basis >> i & 1 == 1 {
            continue;
        }
        let s: Vec<i128> = rays.iter().map(|(r, _)| i128::from(dot(row, r))).collect();
        let mut next: Vec<(Vec<i64>, u64)> = Vec::new();
        for (k, (r, z)) in rays.iter().enumerate() {
            if s[k] > 0 {
                next.push((r.clone(), *z));
            } else if s[k] == 0 {
                next.push((r.clone(), *z | (1 << i)));
            }
        }
        for p in 0..rays.len() {
            if s[p] <= 0 {
                continue;
            }
            for q in 0..rays.len() {
                if s[q] >= 0 {
                    continue;
                }
                let common = rays[p].1 & rays[q].1;
                if (common.count_ones() as usize) + 2 < n {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|k| k == p || k == q || rays[k].1 & common != common);
                if !adjacent {
                    continue;
                }
                let combo: Vec<i64> = rays[q]
                    .0
                    .iter()
                    .zip(&rays[p].0)
                    .map(|(&a, &b)| {
                        let v = s[p] * i128::from(a) - s[q] * i128::from(b);
                        i64::try_from(v).expect("facet normal overflow")
                    })
                    .collect();
                next.push((primitive(&combo), common | (1 << i)));
            }
        }
        rays = next;
    }
    rays.sort();
    rays.dedup();
    Ok(rays)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_with_midpoint() {
        let pts = vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2], vec![1, 0], vec![1, 1]];
        let rays = facet_rays(&pts, 2).unwrap();
        assert_eq!(rays.len(), 4);
        for (r, z) in &rays {
            for (i, p) in pts.iter().enumerate() {
                let v = dot(&r[..2], p) + r[2];
                assert!(v >= 0);
                assert_eq!(v == 0, z >> i & 1 == 1);
            }
        }
    }

    #[test]
    fn degenerate_input() {
        assert_eq!(facet_rays(&[vec![0, 0], vec![1, 1], vec![2, 2]], 2), Err(Error::NotFullDimensional));
    }
}
