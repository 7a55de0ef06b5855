use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{BiLaurent, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial in t with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn t() -> Self {
        Self::monomial(1, Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(k: usize, c: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| super::rat(x)).collect())
    }

    /// (t - c)
    pub fn linear_root(c: i64) -> Self {
        Self::from_ints(&[-c, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiply by t^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn div_rem(&self, b: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let lead = b.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![Rational::zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = &r[i + db] / &lead;
            if !c.is_zero() {
                for (j, bj) in b.coeffs.iter().enumerate() {
                    r[i + j] -= &c * bj;
                }
            }
            q[i] = c;
        }
        Ok((Self::from_coeffs(q), Self::from_coeffs(r)))
    }

    /// Quotient a / b, only when the remainder vanishes.
    pub fn exact_div(&self, b: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.div_rem(b)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::inexact(format!("({self}) / ({b})")))
        }
    }

    /// Keep the terms of degree at most `k`.
    pub fn truncate(&self, k: usize) -> UniPoly {
        Self::from_coeffs(self.coeffs.iter().take(k + 1).cloned().collect())
    }

    /// Keep the terms of degree at most floor(bound); a negative bound keeps nothing.
    pub fn truncate_tau(&self, bound: &Rational) -> UniPoly {
        let f = bound.floor().to_integer();
        if f.is_negative() {
            return Self::zero();
        }
        let k: usize = f.try_into().unwrap_or(usize::MAX);
        self.truncate(k)
    }

    /// t^k p(1/t); requires deg p <= k.
    pub fn reflect(&self, k: usize) -> Result<UniPoly> {
        match self.degree() {
            None => Ok(Self::zero()),
            Some(d) if d > k => Err(Error::DegreeTooLarge { exponent: d, bound: k }),
            Some(_) => {
                let mut coeffs = vec![Rational::zero(); k + 1];
                for (i, c) in self.coeffs.iter().enumerate() {
                    coeffs[k - i] = c.clone();
                }
                Ok(Self::from_coeffs(coeffs))
            }
        }
    }

    pub fn is_palindromic(&self, k: usize) -> bool {
        self.reflect(k).is_ok_and(|r| &r == self)
    }

    /// p(uv) as a two-variable polynomial.
    pub fn at_uv(&self) -> BiLaurent {
        self.substitute_monomial(1, 1)
    }

    /// p(u^{-1} v).
    pub fn at_uinv_v(&self) -> BiLaurent {
        self.substitute_monomial(-1, 1)
    }

    /// p(u^a v^b).
    pub fn substitute_monomial(&self, a: i64, b: i64) -> BiLaurent {
        BiLaurent::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| ((a * k as i64, b * k as i64), c.clone())),
        )
    }

    /// Multiply the coefficients of a power series truncated to degree `k`.
    pub fn mul_trunc(&self, other: &UniPoly, k: usize) -> UniPoly {
        let n = (self.coeffs.len() + other.coeffs.len()).min(k + 2);
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(k + 1) {
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > k {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// Content-free check helper: gcd of integer coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(&c.numer().abs()))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}t^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { (&self).$m(&rhs) }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty { (&self).$m(rhs) }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { self.$m(&rhs) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(UniPoly, Add::add, Sub::sub, Mul::mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{frac, rat};

    #[test]
    fn exact_division_examples() {
        let a = UniPoly::from_ints(&[-1, 0, 1]);
        let b = UniPoly::from_ints(&[-1, 1]);
        assert_eq!(a.exact_div(&b).unwrap(), UniPoly::from_ints(&[1, 1]));
        let c = UniPoly::from_ints(&[1, 1, 1, 1]);
        let d = UniPoly::from_ints(&[1, 1]);
        assert_eq!(c.exact_div(&d).unwrap(), UniPoly::from_ints(&[1, 0, 1]));
        assert!(matches!(
            UniPoly::from_ints(&[1, 0, 1]).exact_div(&d),
            Err(Error::InexactDivision { .. })
        ));
        assert_eq!(d.exact_div(&UniPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn truncation() {
        let p = UniPoly::from_ints(&[1, 3, 2]);
        assert_eq!(p.truncate_tau(&frac(3, 2)), UniPoly::from_ints(&[1, 3]));
        assert_eq!(UniPoly::from_ints(&[1, -1]).truncate_tau(&rat(0)), UniPoly::one());
        assert_eq!(p.truncate_tau(&frac(-1, 2)), UniPoly::zero());
        let h = UniPoly::from_ints(&[1, 12, 14, 12, 1]);
        let g = (&UniPoly::from_ints(&[1, -1]) * &h).truncate_tau(&rat(2));
        assert_eq!(g, UniPoly::from_ints(&[1, 11, 2]));
    }

    #[test]
    fn reflection_and_substitution() {
        let h = UniPoly::from_ints(&[1, 12, 14, 12, 1]);
        assert_eq!(h.reflect(4).unwrap(), h);
        assert!(h.is_palindromic(4));
        assert!(!h.is_palindromic(5));
        assert!(h.reflect(3).is_err());
        assert_eq!(UniPoly::t().at_uinv_v(), BiLaurent::monomial(-1, 1, rat(1)));
        let one_plus_t = UniPoly::from_ints(&[1, 1]);
        assert_eq!(
            one_plus_t.at_uv(),
            &BiLaurent::one() + &BiLaurent::monomial(1, 1, rat(1))
        );
    }

    #[test]
    fn display() {
        assert_eq!(UniPoly::from_ints(&[1, -2, 0, 1]).to_string(), "1 - 2*t + t^3");
        assert_eq!(UniPoly::zero().to_string(), "0");
    }
}
