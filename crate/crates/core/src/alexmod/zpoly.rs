//! Dense polynomials in `Z[t]`, enough for determinants and gcds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::laurent::LaurentPoly;

/// Coefficients from the constant term upward, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPoly(Vec<BigInt>);

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly(Vec::new())
    }

    pub fn one() -> Self {
        ZPoly(vec![BigInt::one()])
    }

    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZPoly(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &BigInt {
        self.0.last().expect("zero polynomial has no leading coefficient")
    }

    /// A one-variable Laurent polynomial times the power of `t` that makes
    /// its lowest exponent zero.
    pub fn from_laurent_normalized(p: &LaurentPoly) -> Self {
        let (_, c) = p.to_dense();
        ZPoly::new(c)
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_dense(0, &self.0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let z = BigInt::zero();
        ZPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        ZPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        ZPoly::new(self.0.iter().map(|c| c * k).collect())
    }

    /// Quotient `self / d`, provided the division is exact over `Z`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let mut r = self.0.clone();
        let dd = d.0.len() - 1;
        if r.len() < d.0.len() {
            return if self.is_zero() { Some(ZPoly::zero()) } else { None };
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (quo, rem) = top.div_rem(d.lead());
            if !rem.is_zero() {
                return None;
            }
            for (j, c) in d.0.iter().enumerate() {
                r[k + j] -= &quo * c;
            }
            q[k] = quo;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(ZPoly::new(q))
        } else {
            None
        }
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let c = self.content();
        ZPoly::new(self.0.iter().map(|x| x / &c).collect())
    }

    /// Pseudo-remainder of `self` by `d`.
    fn prem(&self, d: &Self) -> Self {
        let mut r = self.clone();
        let dl = d.lead().clone();
        let dd = d.degree().unwrap();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let rl = r.lead().clone();
            let mut shifted = vec![BigInt::zero(); rd - dd];
            shifted.extend(d.0.iter().map(|c| c * &rl));
            r = r.scale(&dl).sub(&ZPoly::new(shifted));
        }
        r
    }

    /// Greatest common divisor, normalized as by [`ZPoly::normalize`].
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.normalize();
        }
        if o.is_zero() {
            return self.normalize();
        }
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive_part(), o.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&c).normalize()
    }

    /// Strips factors of `t` and makes the leading coefficient positive.
    pub fn normalize(&self) -> Self {
        let lo = self.0.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let p = ZPoly::new(self.0[lo..].to_vec());
        if !p.is_zero() && p.lead().is_negative() {
            p.neg()
        } else {
            p
        }
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(mut m: Vec<Vec<ZPoly>>) -> ZPoly {
    let n = m.len();
    if n == 0 {
        return ZPoly::one();
    }
    let mut prev = ZPoly::one();
    let mut negate = false;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return ZPoly::zero();
        };
        if piv != k {
            m.swap(piv, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = ZPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        ZPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn gcd_basics() {
        // (t-1)(t+2) and (t-1)(t-3)
        let a = z(&[-2, 1, 1]);
        let b = z(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), z(&[-1, 1]));
        assert_eq!(z(&[2, 4]).gcd(&z(&[6])), z(&[2]));
        assert_eq!(z(&[0, 0, -1]).gcd(&ZPoly::zero()), z(&[1]));
    }

    #[test]
    fn exact_division() {
        let p = z(&[-1, 0, 1]);
        assert_eq!(p.exact_div(&z(&[-1, 1])), Some(z(&[1, 1])));
        assert_eq!(p.exact_div(&z(&[2, 1])), None);
        assert_eq!(z(&[2, 2]).exact_div(&z(&[2])), Some(z(&[1, 1])));
    }

    #[test]
    fn bareiss_matches_two_by_two() {
        // [[1-t, t], [-1, 1-t]] -> (1-t)^2 + t
        let m = vec![vec![z(&[1, -1]), z(&[0, 1])], vec![z(&[-1]), z(&[1, -1])]];
        assert_eq!(determinant(m), z(&[1, -1, 1]));
    }
}
