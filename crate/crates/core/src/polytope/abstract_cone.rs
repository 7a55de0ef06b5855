use super::ConeComplex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    /// hi / lo: the element H has dimension dim H - dim lo.
    Quotient,
    /// lo* inside the dual of hi: the element H has dimension dim hi - dim H.
    Dual,
}

/// A cone known only through an interval [lo, hi] of a face lattice, either
/// as the quotient hi/lo or as the dual face lo*/hi*. Characteristic
/// polynomials come from ratios of those of the concrete faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbstractCone {
    pub lo: usize,
    pub hi: usize,
    pub orient: Orientation,
}

impl AbstractCone {
    pub fn quotient(lo: usize, hi: usize) -> Self {
        AbstractCone { lo, hi, orient: Orientation::Quotient }
    }

    pub fn dual(lo: usize, hi: usize) -> Self {
        AbstractCone { lo, hi, orient: Orientation::Dual }
    }

    pub fn dim(&self, k: &ConeComplex) -> usize {
        k.face(self.hi).dim - k.face(self.lo).dim
    }

    /// Concrete face playing the role of the zero face.
    pub fn zero(&self) -> usize {
        match self.orient {
            Orientation::Quotient => self.lo,
            Orientation::Dual => self.hi,
        }
    }

    /// Concrete face playing the role of the whole cone.
    pub fn top(&self) -> usize {
        match self.orient {
            Orientation::Quotient => self.hi,
            Orientation::Dual => self.lo,
        }
    }

    pub fn elements<'a>(&self, k: &'a ConeComplex) -> impl Iterator<Item = usize> + 'a {
        let lo = self.lo;
        k.below(self.hi).iter().copied().filter(move |&h| k.le(lo, h))
    }

    pub fn element_dim(&self, k: &ConeComplex, h: usize) -> usize {
        match self.orient {
            Orientation::Quotient => k.face(h).dim - k.face(self.lo).dim,
            Orientation::Dual => k.face(self.hi).dim - k.face(h).dim,
        }
    }

    /// The face of this cone corresponding to the element h, as a cone.
    pub fn face_cone(&self, h: usize) -> AbstractCone {
        match self.orient {
            Orientation::Quotient => AbstractCone::quotient(self.lo, h),
            Orientation::Dual => AbstractCone::dual(h, self.hi),
        }
    }

    /// The cone's own order: a <= b in the abstract cone.
    pub fn le(&self, k: &ConeComplex, a: usize, b: usize) -> bool {
        match self.orient {
            Orientation::Quotient => k.le(a, b),
            Orientation::Dual => k.le(b, a),
        }
    }

    pub fn face_count(&self, k: &ConeComplex) -> usize {
        self.elements(k).count()
    }
}

/// The face F viewed as a cone.
pub fn abstract_primal(_k: &ConeComplex, f: usize) -> AbstractCone {
    AbstractCone::quotient(0, f)
}

/// The dual face F* inside the dual cone.
pub fn abstract_dual_face(k: &ConeComplex, f: usize) -> AbstractCone {
    AbstractCone::dual(f, k.top())
}

/// The quotient C/F.
pub fn abstract_quotient(k: &ConeComplex, f: usize) -> AbstractCone {
    AbstractCone::quotient(f, k.top())
}
