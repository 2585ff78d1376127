//! Exact Laurent polynomials with integer coefficients.
//!
//! A [`LaurentPoly`] lives in `Z[t1^±1, ..., tn^±1]` for a fixed number of
//! variables `n >= 1`. The one-variable ring is printed and parsed with the
//! bare variable name `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),
    #[error("polynomial parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

/// Exponent vector of a monomial; its length is the number of variables.
pub type Exponents = Vec<i64>;

/// A Laurent polynomial in canonical form: no zero coefficients, exponent
/// vectors ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars >= 1, "a Laurent ring needs at least one variable");
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    /// The variable `t_{index+1}` (zero-based index).
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range");
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::monomial(e, 1)
    }

    /// The generator `t` of the one-variable ring.
    pub fn t() -> Self {
        Self::var(1, 0)
    }

    pub fn monomial(exponents: Exponents, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(exponents.len());
        let c = coeff.into();
        if !c.is_zero() {
            p.terms.insert(exponents, c);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated monomials.
    pub fn from_terms<I, C>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector has wrong length");
            p.add_term(e, c.into());
        }
        p
    }

    /// One-variable polynomial `sum coeffs[k] * t^(shift + k)`.
    pub fn from_dense<C: Into<BigInt> + Clone>(shift: i64, coeffs: &[C]) -> Self {
        Self::from_terms(
            1,
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (vec![shift + k as i64], c.clone().into())),
        )
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let remove = {
            let slot = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *slot += c;
            slot.is_zero()
        };
        if remove {
            self.terms.remove(&e);
        }
    }

    pub fn num_vars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponents: &[i64]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    fn check_vars(&self, other: &Self) -> Result<(), LaurentError> {
        if self.nvars != other.nvars {
            Err(LaurentError::VarMismatch(self.nvars, other.nvars))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    fn neg_ref(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Multiplies by the monomial with the given exponents.
    pub fn shift(&self, exponents: &[i64]) -> Self {
        assert_eq!(exponents.len(), self.nvars);
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exponents).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The augmentation: every variable set to 1, i.e. the coefficient sum.
    pub fn augment(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitutes `t` for every variable, giving a one-variable polynomial.
    pub fn reduce_tau(&self) -> Self {
        Self::from_terms(
            1,
            self.terms
                .iter()
                .map(|(e, c)| (vec![e.iter().sum::<i64>()], c.clone())),
        )
    }

    /// True iff the polynomial is `±` a monomial.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    /// Inverse of a unit `±t^e`, or `None` for non-units.
    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Self::monomial(e.iter().map(|x| -x).collect(), c.clone()))
    }

    /// Lowest and highest exponent of a one-variable polynomial.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        assert_eq!(self.nvars, 1, "degree_range needs a one-variable polynomial");
        let lo = self.terms.keys().next()?[0];
        let hi = self.terms.keys().next_back()?[0];
        Some((lo, hi))
    }

    /// Dense coefficients of a one-variable polynomial together with the
    /// exponent of the first entry. Zero gives `(0, [])`.
    pub fn to_dense(&self) -> (i64, Vec<BigInt>) {
        match self.degree_range() {
            None => (0, Vec::new()),
            Some((lo, hi)) => {
                let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
                for (e, c) in &self.terms {
                    v[(e[0] - lo) as usize] = c.clone();
                }
                (lo, v)
            }
        }
    }

    /// Parses a polynomial, inferring the number of variables from the
    /// highest variable index that occurs (at least one).
    pub fn parse(text: &str) -> Result<Self, LaurentError> {
        let raw = parse_terms(text)?;
        let nvars = raw
            .iter()
            .flat_map(|(vars, _)| vars.iter().map(|(i, _)| i + 1))
            .max()
            .unwrap_or(1);
        Ok(build(nvars, raw))
    }

    /// Parses a polynomial in a ring with exactly `nvars` variables.
    pub fn parse_in(text: &str, nvars: usize) -> Result<Self, LaurentError> {
        let raw = parse_terms(text)?;
        if let Some(bad) = raw
            .iter()
            .flat_map(|(vars, _)| vars.iter().map(|(i, _)| i + 1))
            .find(|&i| i > nvars)
        {
            return Err(LaurentError::Parse {
                column: 0,
                message: format!("variable t{bad} outside a ring with {nvars} variables"),
            });
        }
        Ok(build(nvars, raw))
    }
}

type RawTerm = (Vec<(usize, i64)>, BigInt);

fn build(nvars: usize, raw: Vec<RawTerm>) -> LaurentPoly {
    let mut p = LaurentPoly::zero(nvars);
    for (vars, c) in raw {
        let mut e = vec![0; nvars];
        for (i, k) in vars {
            e[i] += k;
        }
        p.add_term(e, c);
    }
    p
}

fn parse_terms(text: &str) -> Result<Vec<RawTerm>, LaurentError> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let err = |column: usize, message: &str| LaurentError::Parse {
        column: column + 1,
        message: message.to_string(),
    };
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let read_int = |pos: &mut usize| -> Option<BigInt> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if *pos == start {
            None
        } else {
            chars[start..*pos].iter().collect::<String>().parse().ok()
        }
    };

    let mut out = Vec::new();
    let mut first = true;
    loop {
        skip_ws(&mut pos);
        if pos >= chars.len() {
            if first {
                return Err(err(pos, "empty polynomial"));
            }
            break;
        }
        let mut negative = false;
        if chars[pos] == '+' || chars[pos] == '-' {
            negative = chars[pos] == '-';
            pos += 1;
        } else if !first {
            return Err(err(pos, "expected '+' or '-'"));
        }
        first = false;

        let mut coeff = BigInt::one();
        let mut vars = Vec::new();
        let mut factors = 0;
        loop {
            skip_ws(&mut pos);
            if pos >= chars.len() {
                break;
            }
            let c = chars[pos];
            if c.is_ascii_digit() {
                let n = read_int(&mut pos).ok_or_else(|| err(pos, "bad integer"))?;
                coeff *= n;
            } else if c == 't' {
                pos += 1;
                let index = match read_int(&mut pos) {
                    None => 0,
                    Some(i) => {
                        let i: usize = i.try_into().map_err(|_| err(pos, "bad variable index"))?;
                        if i == 0 {
                            return Err(err(pos, "variables are numbered from t1"));
                        }
                        i - 1
                    }
                };
                skip_ws(&mut pos);
                let mut exp = 1i64;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    let mut neg = false;
                    if pos < chars.len() && chars[pos] == '-' {
                        neg = true;
                        pos += 1;
                    }
                    let k = read_int(&mut pos).ok_or_else(|| err(pos, "expected exponent"))?;
                    exp = k.try_into().map_err(|_| err(pos, "exponent too large"))?;
                    if neg {
                        exp = -exp;
                    }
                }
                vars.push((index, exp));
            } else {
                break;
            }
            factors += 1;
            skip_ws(&mut pos);
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
                skip_ws(&mut pos);
                if pos >= chars.len() || !(chars[pos].is_ascii_digit() || chars[pos] == 't') {
                    return Err(err(pos, "expected factor after '*'"));
                }
            }
        }
        if factors == 0 {
            return Err(err(pos, "expected a term"));
        }
        if negative {
            coeff = -coeff;
        }
        out.push((vars, coeff));
    }
    Ok(out)
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, nvars: usize, e: &[i64]) -> fmt::Result {
    let mut first = true;
    for (i, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if nvars == 1 {
            write!(f, "t")?;
        } else {
            write!(f, "t{}", i + 1)?;
        }
        if k != 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    /// Highest monomial first, e.g. `t^2 - t + 1` or `-t1*t2^-1 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let constant = e.iter().all(|&x| x == 0);
            if constant {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, self.nvars, e)?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            /// Panics if the operands live in rings with different variable counts.
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$inner(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(p("t1 - 1") * p("t1 + 1"), p("t1^2 - 1"));
    }

    #[test]
    fn additive_inverse() {
        let q = p("3*t1*t2^-1 + 2 - t2^5");
        assert!((&q + &(-&q)).is_zero());
    }

    #[test]
    fn distributivity_example() {
        let lhs = LaurentPoly::parse_in("1 - t2", 2).unwrap() * LaurentPoly::parse_in("t1", 2).unwrap();
        assert_eq!(lhs, p("t1 - t1*t2"));
    }

    #[test]
    fn mismatched_rings() {
        let a = LaurentPoly::t();
        let b = LaurentPoly::var(2, 1);
        assert_eq!(a.try_add(&b), Err(LaurentError::VarMismatch(1, 2)));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn augmentation() {
        assert_eq!(p("t1 - 1").augment(), BigInt::zero());
        assert_eq!(p("3*t1*t2^-1 + 2").augment(), BigInt::from(5));
        assert_eq!(LaurentPoly::one(3).augment(), BigInt::one());
    }

    #[test]
    fn tau() {
        assert_eq!(p("t1*t2 - t3").reduce_tau(), p("t^2 - t"));
        assert_eq!(LaurentPoly::parse_in("1 - t2", 2).unwrap().reduce_tau(), p("1 - t"));
        assert!(p("t1 - t2").reduce_tau().is_zero());
    }

    #[test]
    fn units() {
        assert!(p("t1*t2^-1").is_unit());
        assert!(p("-t^3").is_unit());
        assert!(!p("1 - t").is_unit());
        assert!(!p("2*t").is_unit());
        let u = p("-t1^2*t2^-1");
        assert!((&u * &u.unit_inverse().unwrap()).is_one());
    }

    #[test]
    fn printing() {
        assert_eq!(p("1 - t + t^2").to_string(), "t^2 - t + 1");
        assert_eq!(p("t1^2*t2^-1 - 3").to_string(), "t1^2*t2^-1 - 3");
        assert_eq!(p("-2*t^-1").to_string(), "-2*t^-1");
        assert_eq!(LaurentPoly::zero(2).to_string(), "0");
        assert_eq!(p("t").to_string(), "t");
    }

    #[test]
    fn parser_forms() {
        assert_eq!(p("t^2+t+1"), p("1 + t + t^2"));
        assert_eq!(p("3t"), p("3*t"));
        assert_eq!(p("t*t"), p("t^2"));
        assert_eq!(p("-t^-1 + t^-1"), LaurentPoly::zero(1));
        assert_eq!(p("t2").num_vars(), 2);
        assert!(LaurentPoly::parse_in("t3", 2).is_err());
        assert!(LaurentPoly::parse("").is_err());
        assert!(LaurentPoly::parse("t^").is_err());
        assert!(LaurentPoly::parse("t +* 1").is_err());
        assert!(LaurentPoly::parse("t0").is_err());
    }

    #[test]
    fn dense_round_trip() {
        let q = p("t^-1 - 3 + t^2");
        let (shift, c) = q.to_dense();
        assert_eq!(shift, -1);
        assert_eq!(LaurentPoly::from_dense(shift, &c), q);
    }
}
