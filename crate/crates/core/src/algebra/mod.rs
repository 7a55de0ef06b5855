//! Exact rationals, polynomials and class functions.

mod bilaurent;
mod charpoly;
mod classfun;
mod unipoly;

pub use bilaurent::BiLaurent;
pub use charpoly::{char_poly, char_poly_rational, det_rational, CharForm};
pub use classfun::{induce, induce_poly, invariant_dim, ClassFun, ClassPoly};
pub use unipoly::UniPoly;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Binomial coefficient as an exact integer; zero outside 0 <= k <= n.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub(crate) fn sign_rat(s: i32) -> Rational {
    rat(i64::from(s))
}
