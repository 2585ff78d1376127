//! Medial quandles assembled from a module, a submodule `N`, base points
//! `m_i` and submodules `X_i` of `N` killed by `1 - t`:
//!
//! ```text
//! Q = ⊔ N/X_i,   x ▷ y = m_j - m_i + t x + (1 - t) y + X_i   (x ∈ Q_i, y ∈ Q_j)
//! ```
//!
//! Cosets are labeled by their lexicographically least representatives.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FiniteQuandle, QuandleError};
use crate::finquot::linalg::Matrix;
use crate::finquot::{annihilator, generated_submodule, multiply_submodule, FiniteModule, FiniteRing, LinkShadow, Submodule};
use crate::laurent::LaurentPoly;
use crate::linkdiag::Diagram;

#[derive(Clone, Debug)]
pub struct MedialInput {
    pub ambient: FiniteModule,
    /// `N`, a submodule of the ambient module.
    pub n: Submodule,
    /// Base points, one per block.
    pub m: Vec<Vec<u64>>,
    /// `X_i ⊆ N`, one per block.
    pub x: Vec<Submodule>,
}

fn one_minus_t() -> LaurentPoly {
    LaurentPoly::one(1) - LaurentPoly::t()
}

impl MedialInput {
    /// Checks the hypotheses, naming the offending pair of indices.
    pub fn validate(&self) -> Result<(), QuandleError> {
        let amb = &self.ambient;
        let bad = |i, j, message: &str| QuandleError::MedialInput { i, j, message: message.to_string() };
        if self.m.is_empty() || self.m.len() != self.x.len() {
            return Err(bad(0, 0, "need the same positive number of base points and submodules"));
        }
        if !self.n.space().is_stable_under(amb.t_action()) {
            return Err(bad(0, 0, "N is not t-stable"));
        }
        for (i, mi) in self.m.iter().enumerate() {
            for (j, mj) in self.m.iter().enumerate() {
                if !self.n.contains(&amb.sub(mi, mj)) {
                    return Err(bad(i + 1, j + 1, "m_i - m_j is not in N"));
                }
            }
        }
        let omt = amb.poly_matrix(&one_minus_t());
        for (i, xi) in self.x.iter().enumerate() {
            if !xi.is_subset_of(&self.n) {
                return Err(bad(i + 1, i + 1, "X_i is not contained in N"));
            }
            if !xi.space().is_stable_under(amb.t_action()) {
                return Err(bad(i + 1, i + 1, "X_i is not t-stable"));
            }
            if xi.basis().iter().any(|b| omt.mul_vec(b).iter().any(|&c| c != 0)) {
                return Err(bad(i + 1, i + 1, "(1 - t) X_i is not zero"));
            }
        }
        Ok(())
    }

    /// Number of elements of the quandle.
    pub fn size(&self) -> Option<u64> {
        let p = self.ambient.p();
        self.x
            .iter()
            .map(|xi| p.checked_pow((self.n.dim() - xi.dim()) as u32))
            .try_fold(0u64, |acc, s| acc.checked_add(s?))
    }
}

/// The quandle of the given data, refusing more than `max_size` elements.
pub fn build_medial(inp: &MedialInput, max_size: u64) -> Result<FiniteQuandle, QuandleError> {
    inp.validate()?;
    let size = inp.size().unwrap_or(u64::MAX);
    if size > max_size {
        return Err(QuandleError::budget("medial quandle", size, max_size));
    }
    let amb = &inp.ambient;
    let p = amb.p();
    let t = amb.t_action();
    let omt = amb.poly_matrix(&one_minus_t());

    let mut reps: Vec<Vec<Vec<u64>>> = Vec::new();
    for xi in &inp.x {
        let set: BTreeSet<Vec<u64>> = inp.n.elements().map(|v| xi.reduce(&v)).collect();
        reps.push(set.into_iter().collect());
    }
    let mut offset = Vec::new();
    let mut labels = Vec::new();
    let mut blocks = Vec::new();
    let mut index: Vec<HashMap<Vec<u64>, usize>> = Vec::new();
    for (i, rs) in reps.iter().enumerate() {
        offset.push(labels.len());
        let mut h = HashMap::new();
        for r in rs {
            h.insert(r.clone(), labels.len());
            labels.push(format!("{}:{}", i + 1, amb.format_element(r)));
            blocks.push(i);
        }
        index.push(h);
    }
    let n = labels.len();
    let mut table = vec![vec![0usize; n]; n];
    for (i, rs_i) in reps.iter().enumerate() {
        let tx: Vec<Vec<u64>> = rs_i.iter().map(|x| t.mul_vec(x)).collect();
        for (j, rs_j) in reps.iter().enumerate() {
            let shift = amb.sub(&inp.m[j], &inp.m[i]);
            for y_rep in rs_j {
                let base = amb.add(&shift, &omt.mul_vec(y_rep));
                let y = index[j][y_rep];
                for (xi, txv) in tx.iter().enumerate() {
                    let v: Vec<u64> = base.iter().zip(txv).map(|(a, b)| (a + b) % p).collect();
                    let r = inp.x[i].reduce(&v);
                    table[offset[i] + xi][y] = index[i][&r];
                }
            }
        }
    }
    FiniteQuandle::new(labels, table, Some(blocks))
}

/// Medial data of a link shadow: `N = ker phi`, `m_i` the base-arc classes,
/// `X_i` the submodule generated by the `i`-th longitude.
pub fn mq_input(s: &LinkShadow) -> MedialInput {
    let amb = s.module().clone();
    let x = (1..=s.mu())
        .map(|i| generated_submodule(&amb, &[s.longitude(i).to_vec()]))
        .collect();
    MedialInput {
        n: s.kernel().clone(),
        m: (1..=s.mu()).map(|i| s.meridian(i).to_vec()).collect(),
        x,
        ambient: amb,
    }
}

/// Finite shadow of the medial quandle of a link.
pub fn mq_of_link(d: &Diagram, ring: &FiniteRing, max_size: u64) -> Result<FiniteQuandle, QuandleError> {
    let s = LinkShadow::new(d, ring)?;
    build_medial(&mq_input(&s), max_size)
}

/// `ann(1 - t)` inside `N`.
pub fn kernel_annihilator(s: &LinkShadow) -> Submodule {
    let (kmod, incl) = s.kernel_module();
    incl.image_of(&annihilator(&kmod, &one_minus_t()))
}

fn require_two_component_classical(s: &LinkShadow) -> Result<(), QuandleError> {
    if s.mu() != 2 {
        return Err(QuandleError::NotTwoComponents(s.mu()));
    }
    if !s.is_classical() {
        return Err(QuandleError::NotClassical(s.name().to_string()));
    }
    Ok(())
}

/// Data `(N, (d, 0), (X, X))` with `d = m_1 - m_2 + (1 - t) n` and
/// `X = ann(1 - t)` in `N`.
pub fn thm20_input(s: &LinkShadow, n: &[u64]) -> Result<MedialInput, QuandleError> {
    require_two_component_classical(s)?;
    if !s.kernel().contains(n) {
        return Err(QuandleError::NotInKernel);
    }
    let amb = s.module().clone();
    let omt = amb.poly_matrix(&one_minus_t());
    let d = amb.add(&amb.sub(s.meridian(1), s.meridian(2)), &omt.mul_vec(n));
    let x = kernel_annihilator(s);
    Ok(MedialInput {
        n: s.kernel().clone(),
        m: vec![d, amb.zero()],
        x: vec![x.clone(), x],
        ambient: amb,
    })
}

pub fn thm20_quandle(s: &LinkShadow, n: &[u64], max_size: u64) -> Result<FiniteQuandle, QuandleError> {
    build_medial(&thm20_input(s, n)?, max_size)
}

/// The sampled `n`: every element of `N` when `|N| <= 64`, otherwise 32
/// pseudo-random elements drawn from `seed`.
pub fn thm20_candidates(s: &LinkShadow, seed: u64) -> Vec<Vec<u64>> {
    let n = s.kernel();
    let p = s.module().p();
    let all = p.checked_pow(n.dim() as u32).is_some_and(|c| c <= 64);
    if all {
        return n.elements().collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..32)
        .map(|_| {
            let coords: Vec<u64> = (0..n.dim()).map(|_| rng.gen_range(0..p)).collect();
            n.space().combine(&coords)
        })
        .collect()
}

/// `(1 - t) N` as a submodule of the ambient module.
pub fn one_minus_t_kernel(s: &LinkShadow) -> Submodule {
    multiply_submodule(s.module(), &one_minus_t(), s.kernel())
}

/// Matrix of `1 - t` on the ambient module.
pub fn one_minus_t_matrix(m: &FiniteModule) -> Matrix {
    m.poly_matrix(&one_minus_t())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkdiag::catalog;

    fn f4() -> FiniteRing {
        FiniteRing::parse(2, "t^2 + t + 1").unwrap()
    }

    #[test]
    fn zero_module_gives_one_element() {
        let amb = FiniteModule::free(&f4(), &["a".into()]);
        let inp = MedialInput {
            n: amb.zero_submodule(),
            m: vec![amb.basis_vector(0)],
            x: vec![amb.zero_submodule()],
            ambient: amb,
        };
        let q = build_medial(&inp, 512).unwrap();
        assert_eq!(q.size(), 1);
    }

    #[test]
    fn invalid_input_names_pair() {
        let amb = FiniteModule::free(&f4(), &["a".into(), "b".into()]);
        let inp = MedialInput {
            n: amb.zero_submodule(),
            m: vec![amb.basis_vector(0), amb.basis_vector(2)],
            x: vec![amb.zero_submodule(), amb.zero_submodule()],
            ambient: amb,
        };
        assert!(matches!(build_medial(&inp, 512), Err(QuandleError::MedialInput { i: 1, j: 2, .. })));
    }

    #[test]
    fn hopf_and_unknot_shadows() {
        let q = mq_of_link(&catalog::get("hopf+").unwrap(), &f4(), 512).unwrap();
        assert_eq!(q.size(), 2);
        assert!(q.is_trivial());
        let u = mq_of_link(&catalog::get("unknot").unwrap(), &f4(), 512).unwrap();
        assert_eq!(u.size(), 1);
    }

    #[test]
    fn thm20_requires_two_classical_components() {
        let s = LinkShadow::new(&catalog::get("trefoil").unwrap(), &f4()).unwrap();
        assert_eq!(thm20_input(&s, &s.module().zero()).unwrap_err(), QuandleError::NotTwoComponents(1));
        let s = LinkShadow::new(&catalog::get("hopf+").unwrap(), &f4()).unwrap();
        assert!(thm20_quandle(&s, &s.module().zero(), 512).unwrap().is_trivial());
    }

    #[test]
    fn budget_is_reported() {
        let s = LinkShadow::new(&catalog::get("whitehead").unwrap(), &f4()).unwrap();
        let err = build_medial(&mq_input(&s), 0).unwrap_err();
        assert!(err.is_budget());
    }
}
