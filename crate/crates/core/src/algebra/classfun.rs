use std::sync::Arc;

use num_traits::Zero;

use super::{rat, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::groups::MatrixGroup;

/// Rational class function, one value per conjugacy class.
#[derive(Clone, Debug)]
pub struct ClassFun {
    group: Arc<MatrixGroup>,
    values: Vec<Rational>,
}

impl PartialEq for ClassFun {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.values == other.values
    }
}

impl ClassFun {
    pub fn new(group: Arc<MatrixGroup>, values: Vec<Rational>) -> Self {
        assert_eq!(values.len(), group.num_classes(), "one value per class");
        ClassFun { group, values }
    }

    pub fn trivial(group: &Arc<MatrixGroup>) -> Self {
        Self::new(group.clone(), vec![rat(1); group.num_classes()])
    }

    pub fn group(&self) -> &Arc<MatrixGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn at_class(&self, c: usize) -> &Rational {
        &self.values[c]
    }

    pub fn at_element(&self, g: usize) -> &Rational {
        &self.values[self.group.class_of(g)]
    }

    pub fn add(&self, other: &ClassFun) -> ClassFun {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        ClassFun::new(self.group.clone(), values)
    }

    pub fn scale(&self, c: &Rational) -> ClassFun {
        ClassFun::new(self.group.clone(), self.values.iter().map(|x| x * c).collect())
    }
}

/// Class function with polynomial values (UniPoly or BiLaurent).
#[derive(Clone, Debug)]
pub struct ClassPoly<P> {
    group: Arc<MatrixGroup>,
    values: Vec<P>,
}

impl<P: PartialEq> PartialEq for ClassPoly<P> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.values == other.values
    }
}

impl<P: Clone> ClassPoly<P> {
    pub fn new(group: Arc<MatrixGroup>, values: Vec<P>) -> Self {
        assert_eq!(values.len(), group.num_classes(), "one value per class");
        ClassPoly { group, values }
    }

    pub fn group(&self) -> &Arc<MatrixGroup> {
        &self.group
    }

    pub fn values(&self) -> &[P] {
        &self.values
    }

    pub fn at_class(&self, c: usize) -> &P {
        &self.values[c]
    }

    pub fn at_element(&self, g: usize) -> &P {
        &self.values[self.group.class_of(g)]
    }

    pub fn map<Q: Clone>(&self, f: impl Fn(&P) -> Q) -> ClassPoly<Q> {
        ClassPoly { group: self.group.clone(), values: self.values.iter().map(f).collect() }
    }

    pub fn try_map<Q: Clone>(&self, f: impl Fn(&P) -> Result<Q>) -> Result<ClassPoly<Q>> {
        Ok(ClassPoly { group: self.group.clone(), values: self.values.iter().map(f).collect::<Result<_>>()? })
    }
}

impl ClassPoly<UniPoly> {
    /// Class function of the coefficient of t^k.
    pub fn coefficient(&self, k: usize) -> ClassFun {
        ClassFun::new(self.group.clone(), self.values.iter().map(|p| p.coeff(k)).collect())
    }
}

/// (1/|G|) Σ_γ χ(γ), weighted by class sizes.
pub fn invariant_dim(chi: &ClassFun) -> Rational {
    let g = chi.group();
    let total: Rational = chi
        .values()
        .iter()
        .enumerate()
        .map(|(c, v)| v * rat(g.class_size(c) as i64))
        .sum();
    total / rat(g.order() as i64)
}

/// Elements of `h` located in `g`; SubgroupMismatch if any is missing.
fn embedding(h: &MatrixGroup, g: &MatrixGroup) -> Result<Vec<usize>> {
    if h.rank() != g.rank() {
        return Err(Error::SubgroupMismatch);
    }
    h.elements().iter().map(|m| g.index_of(m).ok_or(Error::SubgroupMismatch)).collect()
}

/// Ind_H^G χ(g) = (1/|H|) Σ_{x ∈ G, x^{-1}gx ∈ H} χ(x^{-1}gx).
pub fn induce(chi: &ClassFun, g: &Arc<MatrixGroup>) -> Result<ClassFun> {
    let values = induce_values(chi.group(), g, |h_elem| chi.at_element(h_elem).clone(), Rational::zero, |a, b| a + b, |a, c| a * c)?;
    Ok(ClassFun::new(g.clone(), values))
}

/// Coefficientwise induction of a polynomial-valued class function.
pub fn induce_poly(chi: &ClassPoly<UniPoly>, g: &Arc<MatrixGroup>) -> Result<ClassPoly<UniPoly>> {
    let values = induce_values(
        chi.group(),
        g,
        |h_elem| chi.at_element(h_elem).clone(),
        UniPoly::zero,
        |a, b| &a + &b,
        |a, c| a.scale(c),
    )?;
    Ok(ClassPoly::new(g.clone(), values))
}

fn induce_values<T: Clone>(
    h: &Arc<MatrixGroup>,
    g: &Arc<MatrixGroup>,
    value: impl Fn(usize) -> T,
    zero: impl Fn() -> T,
    add: impl Fn(T, T) -> T,
    scale: impl Fn(T, &Rational) -> T,
) -> Result<Vec<T>> {
    let emb = embedding(h, g)?;
    let mut back = vec![usize::MAX; g.order()];
    for (i, &e) in emb.iter().enumerate() {
        back[e] = i;
    }
    let inv_h = Rational::new(1.into(), (h.order() as i64).into());
    Ok(g
        .class_reps()
        .into_iter()
        .map(|rep| {
            let mut acc = zero();
            for x in 0..g.order() {
                let y = g.conj(x, rep);
                if back[y] != usize::MAX {
                    acc = add(acc, value(back[y]));
                }
            }
            scale(acc, &inv_h)
        })
        .collect())
}
