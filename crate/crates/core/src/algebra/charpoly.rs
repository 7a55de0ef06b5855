use num_traits::{One, Zero};

use super::{rat, Rational, UniPoly};
use crate::groups::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharForm {
    /// det(tI - A)
    TIMinusA,
    /// det(I - At)
    IMinusAT,
}

pub fn char_poly(a: &IntMatrix, form: CharForm) -> UniPoly {
    let m: Vec<Vec<Rational>> = (0..a.rank())
        .map(|i| (0..a.rank()).map(|j| rat(a.get(i, j))).collect())
        .collect();
    char_poly_rational(&m, form)
}

/// Faddeev-LeVerrier over the rationals.
pub fn char_poly_rational(a: &[Vec<Rational>], form: CharForm) -> UniPoly {
    let n = a.len();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        m = next;
        let am = mat_mul(a, &m);
        let tr: Rational = (0..n).map(|i| am[i][i].clone()).sum();
        c[n - k] = -tr / rat(k as i64);
    }
    let p = UniPoly::from_coeffs(c);
    match form {
        CharForm::TIMinusA => p,
        CharForm::IMinusAT => p.reflect(n).expect("degree n"),
    }
}

pub fn det_rational(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let p = char_poly_rational(a, CharForm::TIMinusA);
    // det(tI - A) at t = 0 is (-1)^n det A
    let c0 = p.coeff(0);
    if n % 2 == 0 {
        c0
    } else {
        -c0
    }
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}
