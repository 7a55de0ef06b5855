//! JSON encoding and plain-text rendering of results.

use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use equimirror_core::algebra::{BiLaurent, Rational, UniPoly};
use equimirror_core::groups::MatrixGroup;
use equimirror_core::polytope::ConeComplex;

pub const SCHEMA: u32 = 1;

/// [num, den], as integers when they fit and as decimal strings otherwise.
pub fn rational(r: &Rational) -> Value {
    let part = |x: &num_bigint::BigInt| x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from);
    json!([part(r.numer()), part(r.denom())])
}

pub fn unipoly(p: &UniPoly) -> Value {
    let mut m = Map::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if !num_traits::Zero::is_zero(c) {
            m.insert(k.to_string(), rational(c));
        }
    }
    Value::Object(m)
}

pub fn bilaurent(p: &BiLaurent) -> Value {
    let mut m = Map::new();
    for ((a, b), c) in p.terms() {
        m.insert(format!("{a},{b}"), rational(c));
    }
    Value::Object(m)
}

pub fn table(t: &[Vec<Rational>]) -> Value {
    Value::Array(t.iter().map(|row| Value::Array(row.iter().map(rational).collect())).collect())
}

pub fn element_order(g: &MatrixGroup, x: usize) -> usize {
    let mut y = x;
    let mut n = 1;
    while y != g.identity() {
        y = g.mul(y, x);
        n += 1;
    }
    n
}

pub struct ClassInfo {
    pub index: usize,
    pub size: usize,
    pub order: usize,
    pub det: i64,
    pub representative: usize,
}

pub fn classes(g: &MatrixGroup) -> Vec<ClassInfo> {
    g.class_reps()
        .into_iter()
        .enumerate()
        .map(|(index, r)| ClassInfo { index, size: g.class_size(index), order: element_order(g, r), det: g.det(r), representative: r })
        .collect()
}

impl ClassInfo {
    pub fn label(&self) -> String {
        format!("class {} (size {}, order {}, det {})", self.index, self.size, self.order, self.det)
    }

    pub fn json(&self, g: &MatrixGroup) -> Value {
        json!({
            "index": self.index,
            "size": self.size,
            "order": self.order,
            "det": self.det,
            "representative": g.element(self.representative).rows(),
        })
    }
}

pub fn model(name: &str, k: &ConeComplex) -> Value {
    let g = k.group();
    let p = k.polytope();
    json!({
        "name": name,
        "dim": p.dim(),
        "vertices": p.vertices(),
        "facets": p.facets().len(),
        "faces": k.faces().len(),
        "reflexive": p.is_reflexive(),
        "group_order": g.order(),
        "classes": classes(g).iter().map(|c| c.json(g)).collect::<Vec<_>>(),
    })
}

/// Diamond layout, h^{n,n} on top and h^{0,0} at the bottom, h^{p,0} on the left.
pub fn diamond(t: &[Vec<Rational>]) -> String {
    let n = t.len();
    if n == 0 {
        return String::new();
    }
    let w = t.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    let mut out = String::new();
    for s in (0..2 * n - 1).rev() {
        let cells: Vec<String> = (0..n)
            .rev()
            .filter(|&p| s >= p && s - p < n)
            .map(|p| format!("{:>w$}", t[p][s - p].to_string()))
            .collect();
        let pad = (n - cells.len()) * (w + 1);
        let line = format!("{}{}", " ".repeat(pad), cells.join(&" ".repeat(w + 2)));
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use equimirror_core::algebra::{frac, rat};

    #[test]
    fn encodes_rationals() {
        assert_eq!(rational(&frac(-3, 6)), json!([-1, 2]));
        assert_eq!(unipoly(&UniPoly::from_ints(&[1, 0, 2])).to_string(), r#"{"0":[1,1],"2":[2,1]}"#);
    }

    #[test]
    fn renders_diamond() {
        let t: Vec<Vec<Rational>> = vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]];
        assert_eq!(diamond(&t), "  1\n0   0\n  1\n");
    }
}
