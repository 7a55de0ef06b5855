use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::unipoly::forward_owned;
use super::Rational;
use crate::error::{Error, Result};

/// Sparse Laurent polynomial in u and v: exponent pair (p, q) maps to the
/// coefficient of u^p v^q.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiLaurent {
    terms: BTreeMap<(i64, i64), Rational>,
}

impl BiLaurent {
    pub fn zero() -> Self {
        BiLaurent { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, Rational::one())
    }

    pub fn monomial(p: i64, q: i64, c: Rational) -> Self {
        Self::from_terms([((p, q), c)])
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((i64, i64), Rational)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: (i64, i64), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: i64, q: i64) -> Rational {
        self.terms.get(&(p, q)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiLaurent { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// Multiply by u^a v^b.
    pub fn shift(&self, a: i64, b: i64) -> Self {
        BiLaurent {
            terms: self.terms.iter().map(|(&(p, q), c)| ((p + a, q + b), c.clone())).collect(),
        }
    }

    /// u -> u^{-1}
    pub fn invert_u(&self) -> Self {
        BiLaurent { terms: self.terms.iter().map(|(&(p, q), c)| ((-p, q), c.clone())).collect() }
    }

    /// v -> v^{-1}
    pub fn invert_v(&self) -> Self {
        BiLaurent { terms: self.terms.iter().map(|(&(p, q), c)| ((p, -q), c.clone())).collect() }
    }

    /// Exchange u and v.
    pub fn swap(&self) -> Self {
        BiLaurent { terms: self.terms.iter().map(|(&(p, q), c)| ((q, p), c.clone())).collect() }
    }

    pub fn eval(&self, u: &Rational, v: &Rational) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (&(p, q), c) in &self.terms {
            acc += c * pow_z(u, p)? * pow_z(v, q)?;
        }
        Ok(acc)
    }

    /// Value at v = 1 as a Laurent polynomial in u only (exponents (p, 0)).
    pub fn at_v_one(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(p, _), c)| ((p, 0), c.clone())))
    }

    pub fn min_exponents(&self) -> Option<(i64, i64)> {
        let p = self.terms.keys().map(|e| e.0).min()?;
        let q = self.terms.keys().map(|e| e.1).min()?;
        Some((p, q))
    }

    pub fn max_exponents(&self) -> Option<(i64, i64)> {
        let p = self.terms.keys().map(|e| e.0).max()?;
        let q = self.terms.keys().map(|e| e.1).max()?;
        Some((p, q))
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&(p, q)| p >= 0 && q >= 0)
    }

    /// Quotient in the Laurent ring, only when b divides a exactly.
    pub fn exact_div(&self, b: &BiLaurent) -> Result<BiLaurent> {
        let (blo, bhi) = match (b.min_exponents(), b.max_exponents()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(Error::DivisionByZero),
        };
        let (alo, ahi) = match (self.min_exponents(), self.max_exponents()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Ok(Self::zero()),
        };
        // Newton boxes add under multiplication, so quotient terms live in this box.
        let qlo = (alo.0 - blo.0, alo.1 - blo.1);
        let qhi = (ahi.0 - bhi.0, ahi.1 - bhi.1);
        let (&lead_e, lead_c) = b.terms.iter().next_back().expect("nonzero");
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while let Some((&e, c)) = rem.terms.iter().next_back() {
            let qe = (e.0 - lead_e.0, e.1 - lead_e.1);
            if qe.0 < qlo.0 || qe.0 > qhi.0 || qe.1 < qlo.1 || qe.1 > qhi.1 {
                return Err(Error::inexact(format!("({self}) / ({b})")));
            }
            let qc = c / lead_c;
            let term = Self::monomial(qe.0, qe.1, qc.clone());
            rem = &rem - &(&term * b);
            quo.add_term(qe, qc);
        }
        Ok(quo)
    }

    /// Total degree of the highest term.
    pub fn max_total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|&(p, q)| p + q).max()
    }
}

fn pow_z(x: &Rational, e: i64) -> Result<Rational> {
    if e >= 0 {
        Ok(num_traits::pow(x.clone(), e as usize))
    } else if x.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(num_traits::pow(x.recip(), (-e) as usize))
    }
}

impl fmt::Display for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(p, q), c) in &self.terms {
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
            let mut parts = Vec::new();
            if !a.is_one() || (p == 0 && q == 0) {
                parts.push(a.to_string());
            }
            for (name, e) in [("u", p), ("v", q)] {
                match e {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiLaurent({self})")
    }
}

impl Add<&BiLaurent> for &BiLaurent {
    type Output = BiLaurent;
    fn add(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Neg for &BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        BiLaurent { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        -&self
    }
}

impl Sub<&BiLaurent> for &BiLaurent {
    type Output = BiLaurent;
    fn sub(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul<&BiLaurent> for &BiLaurent {
    type Output = BiLaurent;
    fn mul(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = BiLaurent::zero();
        for (&(p1, q1), c1) in &self.terms {
            for (&(p2, q2), c2) in &rhs.terms {
                out.add_term((p1 + p2, q1 + q2), c1 * c2);
            }
        }
        out
    }
}

forward_owned!(BiLaurent, Add::add, Sub::sub, Mul::mul);
