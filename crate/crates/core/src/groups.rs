//! Finite groups of integer matrices.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::algebra::{rat, ClassFun};
use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 10080;

/// Square integer matrix, row-major. Entries are machine integers; products
/// are overflow-checked.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        IntMatrix { n, entries }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix { n, entries: rows.concat() }
    }

    pub fn try_from_rows(rows: &[Vec<i64>]) -> Option<Self> {
        let n = rows.len();
        rows.iter().all(|r| r.len() == n).then(|| IntMatrix { n, entries: rows.concat() })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n.max(1)).map(<[i64]>::to_vec).take(self.n).collect()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn scaled(&self, c: i64) -> Self {
        IntMatrix { n: self.n, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        IntMatrix { n, entries }
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        let n = self.n;
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc: i128 = 0;
                for k in 0..n {
                    acc += i128::from(self.entries[i * n + k]) * i128::from(other.entries[k * n + j]);
                }
                entries[i * n + j] = i64::try_from(acc).ok()?;
            }
        }
        Some(IntMatrix { n, entries })
    }

    /// Product of two matrices known to lie in a finite group.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        self.checked_mul(other).expect("overflow in group product")
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entries[i * self.n + j] * v[j]).sum())
            .collect()
    }

    /// Exact determinant via fraction-free elimination.
    pub fn det(&self) -> i64 {
        let n = self.n;
        let mut m: Vec<Vec<i128>> = self.rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if m[k][k] == 0 {
                match (k + 1..n).find(|&r| m[r][k] != 0) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        if n == 0 {
            return 1;
        }
        (sign * m[n - 1][n - 1]) as i64
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        let n = self.n;
        let d = self.det();
        if d.abs() != 1 {
            return None;
        }
        // adjugate / det
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(j, i);
                let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                entries[i * n + j] = s * minor.det() * d;
            }
        }
        Some(IntMatrix { n, entries })
    }

    fn minor(&self, r: usize, c: usize) -> IntMatrix {
        let rows: Vec<Vec<i64>> = (0..self.n)
            .filter(|&i| i != r)
            .map(|i| (0..self.n).filter(|&j| j != c).map(|j| self.get(i, j)).collect())
            .collect();
        IntMatrix { n: self.n - 1, entries: rows.concat() }
    }

    /// A ⊕ 1, acting on Z^{n+1} with the extra coordinate fixed.
    pub fn extend_affine(&self) -> IntMatrix {
        let n = self.n;
        let mut rows = self.rows();
        for r in rows.iter_mut() {
            r.push(0);
        }
        let mut last = vec![0; n + 1];
        last[n] = 1;
        rows.push(last);
        IntMatrix::from_rows(&rows)
    }

    /// Upper-left (n-1)x(n-1) block if the matrix is of the form A ⊕ 1.
    pub fn linear_part(&self) -> Option<IntMatrix> {
        let n = self.n;
        if n == 0 {
            return None;
        }
        let last = n - 1;
        let ok = (0..last).all(|j| self.get(last, j) == 0 && self.get(j, last) == 0) && self.get(last, last) == 1;
        ok.then(|| self.minor(last, last))
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.n)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

/// Permutation matrix with M e_j = e_{perm[j]}.
pub fn perm_matrix(perm: &[usize]) -> IntMatrix {
    let n = perm.len();
    let mut entries = vec![0; n * n];
    for (j, &i) in perm.iter().enumerate() {
        entries[i * n + j] = 1;
    }
    IntMatrix { n, entries }
}

/// Parse cycle notation such as "(12)(34)" or "(1,10)(2,3)" into a 0-based
/// permutation of {0..n-1}; labels are 1-based.
pub fn parse_cycles(text: &str, n: usize) -> Result<Vec<usize>> {
    let bad = |reason: &str| Error::BadPermutation { text: text.to_string(), reason: reason.to_string() };
    let mut perm: Vec<usize> = (0..n).collect();
    let mut seen = vec![false; n];
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() || s == "()" || s == "e" || s == "id" {
        return Ok(perm);
    }
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
        let close = body.find(')').ok_or_else(|| bad("unclosed cycle"))?;
        let inner = &body[..close];
        rest = &body[close + 1..];
        let labels: Vec<usize> = if inner.contains(',') {
            inner.split(',').map(|x| x.parse::<usize>().map_err(|_| bad("bad label"))).collect::<Result<_>>()?
        } else {
            inner
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| bad("bad label")))
                .collect::<Result<_>>()?
        };
        for &l in &labels {
            if l == 0 || l > n {
                return Err(bad(&format!("label {l} out of range 1..={n}")));
            }
            if seen[l - 1] {
                return Err(bad(&format!("label {l} repeated")));
            }
            seen[l - 1] = true;
        }
        for (k, &l) in labels.iter().enumerate() {
            perm[l - 1] = labels[(k + 1) % labels.len()] - 1;
        }
    }
    Ok(perm)
}

/// Finite matrix group with canonically ordered elements and conjugacy classes.
#[derive(Clone)]
pub struct MatrixGroup {
    rank: usize,
    elements: Vec<IntMatrix>,
    index: HashMap<IntMatrix, usize>,
    identity: usize,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    table: Option<Vec<u32>>,
}

const TABLE_LIMIT: usize = 1500;

impl fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatrixGroup")
            .field("rank", &self.rank)
            .field("order", &self.order())
            .field("classes", &self.classes.len())
            .finish()
    }
}

impl MatrixGroup {
    pub fn trivial(rank: usize) -> Arc<MatrixGroup> {
        Arc::new(Self::generate(rank, &[], DEFAULT_CAP).expect("trivial group"))
    }

    /// Breadth-first closure of the generators, elements sorted lexicographically.
    pub fn generate(rank: usize, gens: &[IntMatrix], cap: usize) -> Result<MatrixGroup> {
        for (i, g) in gens.iter().enumerate() {
            if g.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, got: g.rank() });
            }
            if g.det().abs() != 1 {
                return Err(Error::NonInvertible { index: i });
            }
        }
        let id = IntMatrix::identity(rank);
        let mut seen: HashMap<IntMatrix, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = x.checked_mul(g).ok_or(Error::CapExceeded { cap })?;
                if !seen.contains_key(&y) {
                    if seen.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<IntMatrix> = seen.into_keys().collect();
        elements.sort();
        Ok(Self::from_ordered(rank, elements, gens))
    }

    /// Build from a closed element list kept in the given order.
    fn from_ordered(rank: usize, elements: Vec<IntMatrix>, gens: &[IntMatrix]) -> MatrixGroup {
        let index: HashMap<IntMatrix, usize> = elements.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let identity = index[&IntMatrix::identity(rank)];
        let n = elements.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    t[i * n + j] = index[&elements[i].mul(&elements[j])] as u32;
                }
            }
            t
        });
        let mut g = MatrixGroup {
            rank,
            elements,
            index,
            identity,
            inverse: Vec::new(),
            generators: Vec::new(),
            classes: Vec::new(),
            class_of: Vec::new(),
            table,
        };
        g.generators = gens.iter().map(|m| g.index[m]).collect();
        g.inverse = (0..n)
            .map(|i| {
                if let Some(t) = &g.table {
                    (0..n).find(|&j| t[i * n + j] as usize == identity).expect("inverse")
                } else {
                    let inv = g.elements[i].inverse_unimodular().expect("unimodular");
                    g.index[&inv]
                }
            })
            .collect();
        g.compute_classes();
        g
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        // Closure under conjugation by the generators gives the full class.
        let conj_gens = self.generators.clone();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut members = vec![start];
            class_of[start] = c;
            let mut k = 0;
            while k < members.len() {
                let x = members[k];
                k += 1;
                for &g in &conj_gens {
                    let y = self.conj(g, x);
                    if class_of[y] == usize::MAX {
                        class_of[y] = c;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &IntMatrix {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &IntMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        match &self.table {
            Some(t) => t[i * self.order() + j] as usize,
            None => self.index[&self.elements[i].mul(&self.elements[j])],
        }
    }

    /// x^{-1} g x
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inverse[x], g), x)
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    /// Minimal element index of each class.
    pub fn class_reps(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn det(&self, i: usize) -> i64 {
        self.elements[i].det()
    }

    pub fn det_character(self: &Arc<Self>) -> ClassFun {
        ClassFun::new(self.clone(), self.class_reps().into_iter().map(|r| rat(self.det(r))).collect())
    }

    /// The group acting by inverse transposes, with the same element indexing.
    pub fn contragredient(&self) -> MatrixGroup {
        let elements: Vec<IntMatrix> = self
            .elements
            .iter()
            .map(|m| m.inverse_unimodular().expect("unimodular").transpose())
            .collect();
        let gens: Vec<IntMatrix> = self.generators.iter().map(|&g| elements[g].clone()).collect();
        Self::from_ordered(self.rank, elements, &gens)
    }

    /// Apply `f` to every element; the images must form a group of the same
    /// order (used for change of basis). Indexing is preserved.
    pub fn map_elements(&self, f: impl Fn(&IntMatrix) -> IntMatrix) -> Result<MatrixGroup> {
        let elements: Vec<IntMatrix> = self.elements.iter().map(f).collect();
        let rank = elements.first().map_or(self.rank, IntMatrix::rank);
        let distinct: std::collections::HashSet<&IntMatrix> = elements.iter().collect();
        if distinct.len() != elements.len() || !distinct.contains(&IntMatrix::identity(rank)) {
            return Err(Error::SubgroupMismatch);
        }
        let gens: Vec<IntMatrix> = self.generators.iter().map(|&g| elements[g].clone()).collect();
        Ok(Self::from_ordered(rank, elements, &gens))
    }

    pub fn subgroup(self: &Arc<Self>, gens: &[usize]) -> Subgroup {
        let mut members = vec![self.identity];
        let mut inside = vec![false; self.order()];
        inside[self.identity] = true;
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            k += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup { parent: self.clone(), members }
    }

    pub fn whole(self: &Arc<Self>) -> Subgroup {
        Subgroup { parent: self.clone(), members: (0..self.order()).collect() }
    }

    /// Orbits of the group on `0..n_items` under `act(element, item)`.
    /// Bijectivity of the generator actions is checked.
    pub fn orbits(&self, n_items: usize, act: impl Fn(usize, usize) -> usize) -> Result<Vec<Vec<usize>>> {
        let gen_images: Vec<Vec<usize>> = self
            .generators
            .iter()
            .map(|&g| (0..n_items).map(|i| act(g, i)).collect())
            .collect();
        for (k, img) in gen_images.iter().enumerate() {
            let mut hit = vec![false; n_items];
            for &j in img {
                if j >= n_items || hit[j] {
                    return Err(Error::NotAnAction { index: k });
                }
                hit[j] = true;
            }
        }
        let mut orbit_of = vec![usize::MAX; n_items];
        let mut orbits = Vec::new();
        for start in 0..n_items {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let o = orbits.len();
            orbit_of[start] = o;
            let mut members = vec![start];
            let mut k = 0;
            while k < members.len() {
                let x = members[k];
                k += 1;
                for img in &gen_images {
                    let y = img[x];
                    if orbit_of[y] == usize::MAX {
                        orbit_of[y] = o;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            orbits.push(members);
        }
        Ok(orbits)
    }
}

/// Subgroup stored as a sorted index set into its parent.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: Arc<MatrixGroup>,
    members: Vec<usize>,
}

impl Subgroup {
    pub fn from_members(parent: Arc<MatrixGroup>, mut members: Vec<usize>) -> Result<Subgroup> {
        members.sort_unstable();
        members.dedup();
        let set: std::collections::HashSet<usize> = members.iter().copied().collect();
        let closed = set.contains(&parent.identity())
            && members.iter().all(|&a| members.iter().all(|&b| set.contains(&parent.mul(a, b))));
        if !closed {
            return Err(Error::SubgroupMismatch);
        }
        Ok(Subgroup { parent, members })
    }

    pub fn parent(&self) -> &Arc<MatrixGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    /// The subgroup as a standalone group (canonical order) and the parent
    /// index of each of its elements.
    pub fn as_group(&self) -> (Arc<MatrixGroup>, Vec<usize>) {
        if self.members.len() == self.parent.order() {
            return (self.parent.clone(), self.members.clone());
        }
        let gens: Vec<IntMatrix> = self.members.iter().map(|&m| self.parent.element(m).clone()).collect();
        let g = MatrixGroup::generate(self.parent.rank(), &gens, usize::MAX).expect("closed subgroup");
        let emb = g.elements().iter().map(|m| self.parent.index_of(m).expect("member")).collect();
        (Arc::new(g), emb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, n: usize) -> IntMatrix {
        perm_matrix(&parse_cycles(s, n).unwrap())
    }

    #[test]
    fn generation_examples() {
        assert_eq!(MatrixGroup::generate(3, &[], 10).unwrap().order(), 1);
        let minus = IntMatrix::identity(4).scaled(-1);
        assert_eq!(MatrixGroup::generate(4, &[minus], 10).unwrap().order(), 2);
        let a5 = MatrixGroup::generate(5, &[perm("(12)(34)", 5), perm("(12345)", 5)], DEFAULT_CAP).unwrap();
        assert_eq!(a5.order(), 60);
        let mut sizes: Vec<usize> = (0..a5.num_classes()).map(|c| a5.class_size(c)).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
    }

    #[test]
    fn cap_and_invertibility() {
        let s5 = [perm("(12)", 5), perm("(12345)", 5)];
        assert_eq!(MatrixGroup::generate(5, &s5, 100).unwrap_err(), Error::CapExceeded { cap: 100 });
        let two = IntMatrix::identity(2).scaled(2);
        assert_eq!(MatrixGroup::generate(2, &[two], 10).unwrap_err(), Error::NonInvertible { index: 0 });
        let shear = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        assert!(matches!(MatrixGroup::generate(2, &[shear], 50), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn sym3_classes() {
        let s3 = MatrixGroup::generate(3, &[perm("(12)", 3), perm("(123)", 3)], 100).unwrap();
        let mut sizes: Vec<usize> = (0..s3.num_classes()).map(|c| s3.class_size(c)).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        for (c, class) in s3.classes().iter().enumerate() {
            assert_eq!(s3.class_reps()[c], class[0]);
        }
    }

    #[test]
    fn cycles_parse() {
        assert_eq!(parse_cycles("(12)(34)", 5).unwrap(), vec![1, 0, 3, 2, 4]);
        assert_eq!(parse_cycles("(1,3,2)", 3).unwrap(), vec![2, 0, 1]);
        assert!(parse_cycles("(16)", 5).is_err());
        assert!(parse_cycles("(11)", 5).is_err());
        assert!(parse_cycles("12", 5).is_err());
    }

    #[test]
    fn determinants_and_inverse() {
        let m = IntMatrix::from_rows(&[vec![2, 1, 0], vec![1, 1, 0], vec![0, 0, -1]]);
        assert_eq!(m.det(), -1);
        let inv = m.inverse_unimodular().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(perm("(12)", 5).det(), -1);
    }

    #[test]
    fn orbits_of_negation_on_cube_vertices() {
        let g = MatrixGroup::generate(4, &[IntMatrix::identity(4).scaled(-1)], 10).unwrap();
        // vertex i <-> bit pattern; negation flips all bits
        let orbits = g.orbits(16, |e, v| if g.element(e).is_identity() { v } else { 15 - v }).unwrap();
        assert_eq!(orbits.len(), 8);
        assert!(orbits.iter().all(|o| o.len() == 2));
        assert!(matches!(g.orbits(3, |_, _| 0), Err(Error::NotAnAction { .. })));
    }

    #[test]
    fn contragredient_preserves_indexing() {
        let s3 = MatrixGroup::generate(3, &[perm("(12)", 3), perm("(123)", 3)], 100).unwrap();
        let d = s3.contragredient();
        for i in 0..s3.order() {
            for j in 0..s3.order() {
                assert_eq!(s3.mul(i, j), d.mul(i, j));
            }
            assert_eq!(s3.class_of(i), d.class_of(i));
        }
    }
}
