//! Metabelian operations on a Crowell-map shadow `phi: M -> R`.
//!
//! Elements are those `x` with `1 + phi(x)` a unit of `R`. Because `R` has
//! many more units than `±t^k`, this set is larger than the image of the
//! link's metabelian group; the formulas are polynomial identities over any
//! commutative ring, so identity checks on it remain exact.

use super::{FiniteQuandle, QuandleError};
use crate::finquot::{FiniteMap, FiniteModule, FiniteRing, LinkShadow};

#[derive(Clone, Debug)]
pub struct UShadow {
    module: FiniteModule,
    phi: FiniteMap,
}

impl UShadow {
    pub fn new(module: FiniteModule, phi: FiniteMap) -> Self {
        assert_eq!(phi.source().dim(), module.dim());
        UShadow { module, phi }
    }

    pub fn of_link(s: &LinkShadow) -> Self {
        UShadow::new(s.module().clone(), s.phi().clone())
    }

    pub fn ring(&self) -> &FiniteRing {
        self.module.ring()
    }

    pub fn module(&self) -> &FiniteModule {
        &self.module
    }

    pub fn phi(&self, x: &[u64]) -> Vec<u64> {
        self.phi.apply(x)
    }

    /// `1 + phi(x)`.
    pub fn unit_of(&self, x: &[u64]) -> Vec<u64> {
        let r = self.ring();
        r.add(&r.one(), &self.phi(x))
    }

    pub fn is_element(&self, x: &[u64]) -> bool {
        self.ring().is_unit(&self.unit_of(x))
    }

    fn unit_inverse(&self, x: &[u64]) -> Result<Vec<u64>, QuandleError> {
        self.ring()
            .inverse(&self.unit_of(x))
            .ok_or_else(|| QuandleError::NonUnit(self.module.format_element(x)))
    }

    fn scale(&self, r: &[u64], v: &[u64]) -> Vec<u64> {
        self.module.act_ring(r, v)
    }

    /// `x ▷ y = (phi(y) + 1) x - phi(x) y`.
    pub fn u_op(&self, x: &[u64], y: &[u64]) -> Result<Vec<u64>, QuandleError> {
        self.unit_inverse(x)?;
        self.unit_inverse(y)?;
        let m = &self.module;
        Ok(m.sub(&self.scale(&self.unit_of(y), x), &self.scale(&self.phi(x), y)))
    }

    /// `x · y = x + (1 + phi(x)) y`.
    pub fn group_op(&self, x: &[u64], y: &[u64]) -> Result<Vec<u64>, QuandleError> {
        self.unit_inverse(x)?;
        self.unit_inverse(y)?;
        Ok(self.module.add(x, &self.scale(&self.unit_of(x), y)))
    }

    /// `x^-1 = -(1 + phi(x))^-1 x`.
    pub fn group_inv(&self, x: &[u64]) -> Result<Vec<u64>, QuandleError> {
        let u = self.unit_inverse(x)?;
        Ok(self.module.neg(&self.scale(&u, x)))
    }

    /// `x ▷ y = y + (1 + phi(y)) x - (1 + phi(y))(1 + phi(x))(1 + phi(y))^-1 y`.
    pub fn conj_op(&self, x: &[u64], y: &[u64]) -> Result<Vec<u64>, QuandleError> {
        self.unit_inverse(x)?;
        let uy_inv = self.unit_inverse(y)?;
        let r = self.ring();
        let uy = self.unit_of(y);
        let ux = self.unit_of(x);
        let coeff = r.mul(&r.mul(&uy, &ux), &uy_inv);
        let m = &self.module;
        Ok(m.sub(&m.add(y, &self.scale(&uy, x)), &self.scale(&coeff, y)))
    }

    /// All elements, in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        self.module.elements().filter(|x| self.is_element(x)).collect()
    }

    /// The quandle `(elements, u_op)`, refusing more than `max_size` elements.
    pub fn quandle(&self, max_size: u64) -> Result<FiniteQuandle, QuandleError> {
        self.module.check_budget("metabelian shadow enumeration", 1 << 20)?;
        let els = self.elements();
        if els.len() as u64 > max_size {
            return Err(QuandleError::budget("metabelian shadow quandle", els.len() as u64, max_size));
        }
        let index: std::collections::HashMap<&[u64], usize> =
            els.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
        let mut table = vec![vec![0; els.len()]; els.len()];
        for (i, x) in els.iter().enumerate() {
            for (j, y) in els.iter().enumerate() {
                let z = self.u_op(x, y)?;
                table[i][j] = *index.get(z.as_slice()).ok_or_else(|| QuandleError::NonUnit(self.module.format_element(&z)))?;
            }
        }
        let labels = els.iter().map(|x| self.module.format_element(x)).collect();
        FiniteQuandle::new(labels, table, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkdiag::catalog;

    fn shadow(name: &str) -> UShadow {
        let r = FiniteRing::parse(3, "t + 1").unwrap();
        UShadow::of_link(&LinkShadow::new(&catalog::get(name).unwrap(), &r).unwrap())
    }

    #[test]
    fn idempotence_and_identity() {
        let u = shadow("trefoil");
        let zero = u.module().zero();
        for x in u.elements() {
            assert_eq!(u.u_op(&x, &x).unwrap(), x);
            assert_eq!(u.conj_op(&x, &x).unwrap(), x);
            assert_eq!(u.group_op(&zero, &x).unwrap(), x);
            assert_eq!(u.group_op(&x, &u.group_inv(&x).unwrap()).unwrap(), zero);
            assert_eq!(u.conj_op(&x, &zero).unwrap(), x);
        }
    }

    #[test]
    fn non_units_are_rejected() {
        let u = shadow("unknot");
        // phi is the identity R -> R, so x = -1 gives 1 + phi(x) = 0
        let bad = u.module().scale(2, &u.module().basis_vector(0));
        assert!(!u.is_element(&bad));
        assert!(matches!(u.group_inv(&bad), Err(QuandleError::NonUnit(_))));
    }

    #[test]
    fn unknot_quandle_is_trivial() {
        let q = shadow("unknot").quandle(512).unwrap();
        assert_eq!(q.size(), 2);
        assert!(q.is_trivial());
    }
}
