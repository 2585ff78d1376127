//! Alexander modules of a diagram as presented modules, together with the
//! Crowell maps, Fox-calculus evaluation and longitudes.
//!
//! The multivariate module has one generator per arc and one relation per
//! classical crossing `c`:
//!
//! ```text
//! (1 - t_k(b1)) a + t_k(a) b1 - b2
//! ```
//!
//! where `k(x)` is the component of arc `x`. The reduced module is obtained
//! by sending every `t_i` to `t`.

pub mod zpoly;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::laurent::LaurentPoly;
use crate::linkdiag::{Diagram, DiagramError};
use zpoly::ZPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlexError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("the Alexander polynomial is only computed over the one-variable ring")]
    NotReduced,
    #[error("word letters must have exponent +1 or -1, found {0}")]
    BadExponent(i32),
}

/// A module presented by generators and relation rows over a Laurent ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedModule {
    nvars: usize,
    generators: Vec<String>,
    relation_labels: Vec<String>,
    rows: Vec<Vec<LaurentPoly>>,
}

impl PresentedModule {
    pub fn new(
        nvars: usize,
        generators: Vec<String>,
        relation_labels: Vec<String>,
        rows: Vec<Vec<LaurentPoly>>,
    ) -> Self {
        assert_eq!(relation_labels.len(), rows.len());
        for r in &rows {
            assert_eq!(r.len(), generators.len(), "relation row length must match generator count");
            assert!(r.iter().all(|p| p.num_vars() == nvars));
        }
        PresentedModule {
            nvars,
            generators,
            relation_labels,
            rows,
        }
    }

    /// Number of ring variables; 1 for the reduced module.
    pub fn num_vars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relation_labels(&self) -> &[String] {
        &self.relation_labels
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly>] {
        &self.rows
    }

    /// Applies `t_i -> t` to every coefficient.
    pub fn reduce_tau(&self) -> PresentedModule {
        PresentedModule {
            nvars: 1,
            generators: self.generators.clone(),
            relation_labels: self.relation_labels.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(LaurentPoly::reduce_tau).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Row<'a> {
            relation: &'a str,
            coefficients: Vec<String>,
        }
        let rows: Vec<Row> = self
            .relation_labels
            .iter()
            .zip(&self.rows)
            .map(|(l, r)| Row {
                relation: l,
                coefficients: r.iter().map(|p| p.to_string()).collect(),
            })
            .collect();
        serde_json::json!({
            "schema": 1,
            "ring": if self.nvars == 1 { "Z[t^±1]".to_string() } else { format!("Z[t1^±1..t{}^±1]", self.nvars) },
            "num_vars": self.nvars,
            "generators": self.generators,
            "rows": rows,
        })
    }
}

impl fmt::Display for PresentedModule {
    /// Aligned table, one row per relation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|p| p.to_string()).collect())
            .collect();
        let label_w = self.relation_labels.iter().map(|l| l.len()).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.generators.len())
            .map(|j| {
                cells
                    .iter()
                    .map(|r| r[j].chars().count())
                    .chain(std::iter::once(self.generators[j].chars().count()))
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        write!(f, "{:label_w$} |", "")?;
        for (g, w) in self.generators.iter().zip(&widths) {
            write!(f, " {g:>w$}")?;
        }
        writeln!(f)?;
        for (l, r) in self.relation_labels.iter().zip(&cells) {
            write!(f, "{l:label_w$} |")?;
            for (c, w) in r.iter().zip(&widths) {
                write!(f, " {c:>w$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// An element of the free module on the generators, standing for its class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleElement {
    coeffs: Vec<LaurentPoly>,
}

impl ModuleElement {
    pub fn zero(nvars: usize, rank: usize) -> Self {
        ModuleElement {
            coeffs: vec![LaurentPoly::zero(nvars); rank],
        }
    }

    /// The basis element of generator `index`.
    pub fn basis(nvars: usize, rank: usize, index: usize) -> Self {
        let mut e = Self::zero(nvars, rank);
        e.coeffs[index] = LaurentPoly::one(nvars);
        e
    }

    pub fn from_coeffs(coeffs: Vec<LaurentPoly>) -> Self {
        ModuleElement { coeffs }
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        ModuleElement {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ModuleElement {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        ModuleElement {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, r: &LaurentPoly) -> Self {
        ModuleElement {
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    /// Human-readable form such as `(t - 1)*a - t*b`.
    pub fn display_with(&self, generators: &[String]) -> String {
        let mut out = String::new();
        for (c, g) in self.coeffs.iter().zip(generators).filter(|(c, _)| !c.is_zero()) {
            let negative = c.num_terms() == 1 && c.to_string().starts_with('-');
            let mag = if negative { -c } else { c.clone() };
            let body = if mag.is_one() {
                g.clone()
            } else if mag.num_terms() == 1 {
                format!("{mag}*{g}")
            } else {
                format!("({mag})*{g}")
            };
            out = match (out.is_empty(), negative) {
                (true, false) => body,
                (true, true) => format!("-{body}"),
                (false, false) => format!("{out} + {body}"),
                (false, true) => format!("{out} - {body}"),
            };
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

/// Values of a Crowell map on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrowellData {
    /// `phi(a)`: `t_k(a) - 1` (multivariate) or `1` (reduced).
    pub phi: Vec<LaurentPoly>,
    /// Second coordinate of the tensored Crowell map, in `Z^(mu-1)`.
    pub ztail: Vec<Vec<i64>>,
}

impl CrowellData {
    pub fn eval(&self, x: &ModuleElement) -> LaurentPoly {
        let nvars = self.phi[0].num_vars();
        x.coeffs
            .iter()
            .zip(&self.phi)
            .fold(LaurentPoly::zero(nvars), |acc, (c, p)| acc + c * p)
    }

    /// The trivial-module coordinate: each coefficient acts through its
    /// augmentation.
    pub fn eval_ztail(&self, x: &ModuleElement) -> Vec<i64> {
        let width = self.ztail.first().map_or(0, Vec::len);
        let mut out = vec![0i64; width];
        for (c, z) in x.coeffs.iter().zip(&self.ztail) {
            let e: i64 = c.augment().try_into().expect("augmentation fits in i64");
            for (o, zi) in out.iter_mut().zip(z) {
                *o += e * zi;
            }
        }
        out
    }

    /// True iff every relation row maps to zero.
    pub fn annihilates(&self, m: &PresentedModule) -> bool {
        m.rows()
            .iter()
            .all(|r| self.eval(&ModuleElement::from_coeffs(r.clone())).is_zero())
    }
}

/// Relation rows of the multivariate Alexander module, one per crossing.
pub fn alexander_presentation(d: &Diagram) -> PresentedModule {
    let mu = d.mu();
    let g = d.arcs().len();
    let t = |arc: usize| LaurentPoly::var(mu, d.kappa(arc) - 1);
    let one = LaurentPoly::one(mu);
    let rows = d
        .crossings()
        .iter()
        .map(|c| {
            let mut row = vec![LaurentPoly::zero(mu); g];
            row[c.over] = &row[c.over] + &(&one - &t(c.b1));
            row[c.b1] = &row[c.b1] + &t(c.over);
            row[c.b2] = &row[c.b2] - &one;
            row
        })
        .collect();
    PresentedModule::new(
        mu,
        d.arcs().iter().map(|a| a.id.clone()).collect(),
        d.crossings().iter().map(|c| c.id.clone()).collect(),
        rows,
    )
}

/// The one-variable (reduced) Alexander module.
pub fn reduced_presentation(d: &Diagram) -> PresentedModule {
    alexander_presentation(d).reduce_tau()
}

pub fn crowell_data(d: &Diagram, reduced: bool) -> CrowellData {
    let mu = d.mu();
    let ztail = d
        .arcs()
        .iter()
        .map(|a| {
            let mut z = vec![0i64; mu - 1];
            if a.component > 1 {
                z[a.component - 2] = 1;
            }
            z
        })
        .collect();
    let phi = d
        .arcs()
        .iter()
        .map(|a| {
            if reduced {
                LaurentPoly::one(1)
            } else {
                LaurentPoly::var(mu, a.component - 1) - LaurentPoly::one(mu)
            }
        })
        .collect();
    CrowellData { phi, ztail }
}

/// A letter `g_arc^(±1)` of a word in the arc generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Letter {
    pub arc: usize,
    pub inverse: bool,
}

/// The generator of the reduced module belonging to an arc.
pub fn arc_generator(d: &Diagram, arc: usize) -> ModuleElement {
    ModuleElement::basis(1, d.arcs().len(), arc)
}

/// Evaluates `1 ⊗ (w - 1)` in the free reduced module, using
/// `g·u ↦ ς(g) + t·[u]` and `g⁻¹·u ↦ t⁻¹(−ς(g) + [u])`.
pub fn fox_image_letters(d: &Diagram, word: &[Letter]) -> ModuleElement {
    let g = d.arcs().len();
    let t = LaurentPoly::t();
    let t_inv = LaurentPoly::monomial(vec![-1], 1);
    let mut acc = ModuleElement::zero(1, g);
    for l in word.iter().rev() {
        let s = arc_generator(d, l.arc);
        acc = if l.inverse {
            acc.sub(&s).scale(&t_inv)
        } else {
            s.add(&acc.scale(&t))
        };
    }
    acc
}

/// [`fox_image_letters`] for a word given as `(arc id, ±1)` pairs.
pub fn fox_image(d: &Diagram, word: &[(&str, i32)]) -> Result<ModuleElement, AlexError> {
    let letters = word
        .iter()
        .map(|&(id, e)| {
            let arc = d.arc_index(id)?;
            match e {
                1 => Ok(Letter { arc, inverse: false }),
                -1 => Ok(Letter { arc, inverse: true }),
                other => Err(AlexError::BadExponent(other)),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(fox_image_letters(d, &letters))
}

/// Exponent sum of a word.
pub fn exponent_sum(word: &[Letter]) -> i64 {
    word.iter().map(|l| if l.inverse { -1 } else { 1 }).sum()
}

/// The longitude word of a component: over-arcs of its underpasses raised
/// to the crossing signs, then the base arc to minus their sum.
pub fn longitude_word(d: &Diagram, component: usize) -> Result<Vec<Letter>, AlexError> {
    let unders = d.underpass_signs(component)?;
    let base = d.base_arc(component)?;
    let mut word: Vec<Letter> = unders
        .iter()
        .map(|u| Letter {
            arc: u.over,
            inverse: u.sign.value() < 0,
        })
        .collect();
    let w: i64 = unders.iter().map(|u| u.sign.value()).sum();
    word.extend((0..w.unsigned_abs()).map(|_| Letter { arc: base, inverse: w > 0 }));
    Ok(word)
}

/// The longitude of a component as an element of the reduced module.
pub fn longitude(d: &Diagram, component: usize) -> Result<ModuleElement, AlexError> {
    Ok(fox_image_letters(d, &longitude_word(d, component)?))
}

/// Generator of the first elementary ideal of a one-variable presentation:
/// the gcd of all maximal-minus-one minors, with lowest degree 0 and a
/// positive leading coefficient.
pub fn alexander_polynomial(m: &PresentedModule) -> Result<LaurentPoly, AlexError> {
    if m.num_vars() != 1 {
        return Err(AlexError::NotReduced);
    }
    let g = m.generators().len();
    if g == 0 {
        return Ok(LaurentPoly::zero(1));
    }
    let k = g - 1;
    if k == 0 {
        return Ok(LaurentPoly::one(1));
    }
    let rows: Vec<Vec<ZPoly>> = m
        .rows()
        .iter()
        .map(|r| {
            // multiply the row by a power of t so every entry is a polynomial
            let lo = r
                .iter()
                .filter_map(|p| p.degree_range().map(|(lo, _)| lo))
                .min()
                .unwrap_or(0);
            r.iter().map(|p| to_zpoly(&p.shift(&[-lo]))).collect()
        })
        .collect();
    if rows.len() < k {
        return Ok(LaurentPoly::zero(1));
    }
    let mut acc = ZPoly::zero();
    for row_set in combinations(rows.len(), k) {
        for skip in 0..g {
            let minor: Vec<Vec<ZPoly>> = row_set
                .iter()
                .map(|&i| (0..g).filter(|&j| j != skip).map(|j| rows[i][j].clone()).collect())
                .collect();
            let det = zpoly::determinant(minor);
            acc = acc.gcd(&det);
            if acc == ZPoly::one() {
                return Ok(acc.to_laurent());
            }
        }
    }
    Ok(acc.normalize().to_laurent())
}

/// A one-variable Laurent polynomial with no negative exponents as a `ZPoly`.
fn to_zpoly(p: &LaurentPoly) -> ZPoly {
    let (lo, c) = p.to_dense();
    let mut v = vec![num_bigint::BigInt::from(0); lo.max(0) as usize];
    v.extend(c);
    ZPoly::new(v)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkdiag::catalog;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn lp2(s: &str) -> LaurentPoly {
        LaurentPoly::parse_in(s, 2).unwrap()
    }

    #[test]
    fn hopf_relations() {
        let d = catalog::get("hopf+").unwrap();
        let m = alexander_presentation(&d);
        assert_eq!(m.num_vars(), 2);
        assert_eq!(m.rows()[0], vec![lp2("1 - t2"), lp2("t1 - 1")]);
        assert_eq!(m.rows()[1], vec![lp2("t2 - 1"), lp2("1 - t1")]);
        let r = reduced_presentation(&d);
        assert_eq!(r.rows()[0], vec![lp("1 - t"), lp("t - 1")]);
        assert_eq!(r.rows()[1], vec![lp("t - 1"), lp("1 - t")]);
    }

    #[test]
    fn trefoil_relations() {
        let d = catalog::get("trefoil").unwrap();
        let m = alexander_presentation(&d);
        for i in 0..3 {
            let mut expect = vec![LaurentPoly::zero(1); 3];
            expect[i] = lp("1 - t");
            expect[(i + 1) % 3] = lp("t");
            expect[(i + 2) % 3] = lp("-1");
            assert_eq!(m.rows()[i], expect);
        }
        assert_eq!(reduced_presentation(&d), m);
    }

    #[test]
    fn unknot_is_free() {
        let d = catalog::get("unknot").unwrap();
        let m = reduced_presentation(&d);
        assert_eq!(m.generators().len(), 1);
        assert!(m.rows().is_empty());
        assert!(alexander_polynomial(&m).unwrap().is_one());
    }

    #[test]
    fn crowell_values() {
        let d = catalog::get("hopf+").unwrap();
        let c = crowell_data(&d, false);
        assert_eq!(c.phi, vec![lp2("t1 - 1"), lp2("t2 - 1")]);
        let r = crowell_data(&d, true);
        assert_eq!(r.phi, vec![lp("1"), lp("1")]);
        assert_eq!(r.ztail, vec![vec![0], vec![1]]);
        assert!(c.annihilates(&alexander_presentation(&d)));
        assert!(r.annihilates(&reduced_presentation(&d)));
    }

    #[test]
    fn fox_examples() {
        let d = catalog::get("hopf+").unwrap();
        let a = arc_generator(&d, 0);
        let b = arc_generator(&d, 1);
        assert_eq!(fox_image(&d, &[("a", 1)]).unwrap(), a);
        assert!(fox_image(&d, &[("a", 1), ("a", -1)]).unwrap().is_zero());
        assert_eq!(fox_image(&d, &[("b", 1), ("a", -1)]).unwrap(), b.sub(&a));
        assert!(matches!(fox_image(&d, &[("z", 1)]), Err(AlexError::Diagram(DiagramError::UnknownArc(_)))));
        assert_eq!(fox_image(&d, &[("a", 2)]), Err(AlexError::BadExponent(2)));
    }

    #[test]
    fn hopf_longitudes() {
        let d = catalog::get("hopf+").unwrap();
        let a = arc_generator(&d, 0);
        let b = arc_generator(&d, 1);
        let x1 = longitude(&d, 1).unwrap();
        let x2 = longitude(&d, 2).unwrap();
        assert_eq!(x1, b.sub(&a));
        assert_eq!(x2, a.sub(&b));
        assert!(longitude(&catalog::get("unknot").unwrap(), 1).unwrap().is_zero());
        assert!(longitude(&d, 3).is_err());
    }

    #[test]
    fn multivariate_input_rejected() {
        let d = catalog::get("hopf+").unwrap();
        assert_eq!(alexander_polynomial(&alexander_presentation(&d)), Err(AlexError::NotReduced));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
