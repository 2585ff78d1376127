//! The coefficient rings `F_p[t]/(q)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::linalg::{inv_mod, is_prime, Matrix};
use super::FinquotError;
use crate::laurent::LaurentPoly;

/// Largest accepted characteristic; keeps every product below `2^64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// `F_p[t]/(q)` with `q` monic of positive degree and `q(0) != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteRing {
    p: u64,
    q: Vec<u64>,
}

impl FiniteRing {
    /// `q` lists coefficients from the constant term up.
    pub fn new(p: u64, q: Vec<u64>) -> Result<Self, FinquotError> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(FinquotError::NotPrime(p));
        }
        let mut q: Vec<u64> = q.into_iter().map(|c| c % p).collect();
        while q.last() == Some(&0) {
            q.pop();
        }
        if q.len() < 2 {
            return Err(FinquotError::BadModulus("degree must be at least 1".into()));
        }
        if q.last() != Some(&1) {
            return Err(FinquotError::BadModulus("modulus must be monic".into()));
        }
        if q[0] == 0 {
            return Err(FinquotError::BadModulus(
                "modulus must have nonzero constant term so that t is a unit".into(),
            ));
        }
        Ok(FiniteRing { p, q })
    }

    /// Reads the modulus from a polynomial in `t` (no negative powers).
    pub fn from_poly(p: u64, q: &LaurentPoly) -> Result<Self, FinquotError> {
        if q.num_vars() != 1 {
            return Err(FinquotError::BadModulus("modulus must be a polynomial in t".into()));
        }
        let (lo, coeffs) = q.to_dense();
        if lo < 0 {
            return Err(FinquotError::BadModulus("modulus has negative powers of t".into()));
        }
        let mut v = vec![0u64; lo as usize];
        v.extend(coeffs.iter().map(|c| residue(c, p)));
        Self::new(p, v)
    }

    pub fn parse(p: u64, q: &str) -> Result<Self, FinquotError> {
        let poly = LaurentPoly::parse_in(q, 1).map_err(|e| FinquotError::BadModulus(e.to_string()))?;
        Self::from_poly(p, &poly)
    }

    /// The rings used when none is specified. In each of them `1 - t` is a unit.
    pub fn defaults() -> Vec<FiniteRing> {
        vec![
            FiniteRing::new(2, vec![1, 1, 1]).unwrap(),
            FiniteRing::new(3, vec![1, 1]).unwrap(),
            FiniteRing::new(5, vec![3, 1]).unwrap(),
            FiniteRing::new(7, vec![4, 1]).unwrap(),
        ]
    }

    /// Rings in which `t - 1` divides the modulus, so that trivial-action
    /// structure survives specialization.
    pub fn probes() -> Vec<FiniteRing> {
        vec![
            FiniteRing::new(3, vec![1, 1, 1]).unwrap(),
            FiniteRing::new(2, vec![1, 0, 1]).unwrap(),
            FiniteRing::new(5, vec![4, 1]).unwrap(),
        ]
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.q.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.q
    }

    /// `p^degree`, if it fits.
    pub fn cardinality(&self) -> Option<u64> {
        self.p.checked_pow(self.degree() as u32)
    }

    /// True iff `q(1) = 0`, i.e. `1 - t` is a zero divisor.
    pub fn one_is_root(&self) -> bool {
        self.q.iter().fold(0, |a, c| (a + c) % self.p) == 0
    }

    pub fn modulus_poly(&self) -> LaurentPoly {
        let c: Vec<i64> = self.q.iter().map(|&x| self.symmetric(x)).collect();
        LaurentPoly::from_dense(0, &c)
    }

    fn symmetric(&self, x: u64) -> i64 {
        if x > self.p / 2 {
            x as i64 - self.p as i64
        } else {
            x as i64
        }
    }

    /// Reduces a coefficient list (constant term first) modulo `q`.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let d = self.degree();
        let p = self.p;
        let mut v: Vec<u64> = v.iter().map(|c| c % p).collect();
        while v.len() > d {
            let top = v.pop().unwrap();
            if top != 0 {
                let base = v.len() - d;
                for (j, &qc) in self.q[..d].iter().enumerate() {
                    v[base + j] = (v[base + j] + (p - top) * qc % p) % p;
                }
            }
        }
        v.resize(d, 0);
        v
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }

    pub fn one(&self) -> Vec<u64> {
        self.constant(1)
    }

    pub fn constant(&self, c: u64) -> Vec<u64> {
        self.reduce(&[c])
    }

    pub fn t(&self) -> Vec<u64> {
        self.reduce(&[0, 1])
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        self.reduce(&out)
    }

    /// Multiplication by `t` on coefficient vectors.
    pub fn companion(&self) -> Matrix {
        let d = self.degree();
        let cols: Vec<Vec<u64>> = (0..d)
            .map(|j| {
                let mut v = vec![0u64; j + 2];
                v[j + 1] = 1;
                self.reduce(&v)
            })
            .collect();
        Matrix::from_columns(self.p, d, &cols)
    }

    /// Multiplication by `a` on coefficient vectors.
    pub fn mult_matrix(&self, a: &[u64]) -> Matrix {
        self.companion().eval_poly(a)
    }

    pub fn inverse(&self, a: &[u64]) -> Option<Vec<u64>> {
        let inv = self.mult_matrix(a).inverse()?;
        Some(inv.mul_vec(&self.one()))
    }

    pub fn is_unit(&self, a: &[u64]) -> bool {
        self.mult_matrix(a).inverse().is_some()
    }

    /// `t^-1 = -(q(t) - q0) / (q0 t)`.
    pub fn t_inv(&self) -> Vec<u64> {
        let q0inv = inv_mod(self.q[0], self.p);
        let s: Vec<u64> = self.q[1..].iter().map(|c| (self.p - c * q0inv % self.p) % self.p).collect();
        self.reduce(&s)
    }

    pub fn pow_t(&self, e: i64) -> Vec<u64> {
        let base = if e >= 0 { self.t() } else { self.t_inv() };
        let mut r = self.one();
        for _ in 0..e.unsigned_abs() {
            r = self.mul(&r, &base);
        }
        r
    }

    /// Image of a one-variable Laurent polynomial.
    pub fn from_laurent(&self, f: &LaurentPoly) -> Vec<u64> {
        assert_eq!(f.num_vars(), 1, "only one-variable polynomials specialize");
        let mut acc = self.zero();
        for (e, c) in f.terms() {
            let term = self.pow_t(e[0]);
            let k = residue(c, self.p);
            acc = self.add(&acc, &term.iter().map(|x| x * k % self.p).collect::<Vec<_>>());
        }
        acc
    }

    /// The polynomial with coefficients `a` (symmetric residues).
    pub fn to_laurent(&self, a: &[u64]) -> LaurentPoly {
        let c: Vec<i64> = a.iter().map(|&x| self.symmetric(x)).collect();
        LaurentPoly::from_dense(0, &c)
    }

    /// The ring `F_p[t]/(q*)` with `q*` the monic reciprocal of `q`; sending
    /// `t` to `t^-1` is an isomorphism onto it.
    pub fn reciprocal(&self) -> FiniteRing {
        let q0inv = inv_mod(self.q[0], self.p);
        let r: Vec<u64> = self.q.iter().rev().map(|c| c * q0inv % self.p).collect();
        FiniteRing::new(self.p, r).expect("reciprocal of a valid modulus is valid")
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[t]/({})", self.p, self.modulus_poly())
    }
}

pub(crate) fn residue(c: &BigInt, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let r = ((c % &pb) + &pb) % &pb;
    r.to_u64().expect("residue is below p")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(matches!(FiniteRing::new(4, vec![1, 1]), Err(FinquotError::NotPrime(4))));
        assert!(FiniteRing::new(3, vec![0, 1]).is_err());
        assert!(FiniteRing::new(3, vec![1, 2]).is_err());
        assert!(FiniteRing::new(3, vec![1]).is_err());
        assert!(FiniteRing::parse(2, "t^2 + t + 1").is_ok());
        assert!(FiniteRing::parse(2, "t^-1 + 1").is_err());
    }

    #[test]
    fn defaults_have_invertible_one_minus_t() {
        for r in FiniteRing::defaults() {
            let x = r.sub(&r.one(), &r.t());
            assert!(r.is_unit(&x), "{r}");
            assert!(!r.one_is_root());
        }
        for r in FiniteRing::probes() {
            assert!(r.one_is_root(), "{r}");
        }
    }

    #[test]
    fn t_inverse() {
        for r in FiniteRing::defaults().into_iter().chain(FiniteRing::probes()) {
            assert_eq!(r.mul(&r.t(), &r.t_inv()), r.one(), "{r}");
        }
    }

    #[test]
    fn arithmetic_in_f4() {
        let r = FiniteRing::parse(2, "t^2 + t + 1").unwrap();
        let t = r.t();
        assert_eq!(r.mul(&t, &t), vec![1, 1]);
        assert_eq!(r.pow_t(3), r.one());
        assert_eq!(r.from_laurent(&"t^-1".parse().unwrap()), vec![1, 1]);
        assert_eq!(r.to_string(), "F_2[t]/(t^2 + t + 1)");
        assert_eq!(FiniteRing::parse(5, "t - 2").unwrap().to_string(), "F_5[t]/(t - 2)");
    }
}
