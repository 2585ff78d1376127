//! Exhaustive isomorphism search between finite modules.
//!
//! The source is split into cyclic blocks `g_k, t g_k, ..., t^(d_k - 1) g_k`
//! whose union is an `F_p`-basis. A homomorphism is fixed by the images of the
//! `g_k`, and the relation expressing `t^(d_k) g_k` in earlier basis vectors
//! becomes an affine linear condition on the image of `g_k`, so candidates
//! are enumerated block by block from affine solution sets.

use super::linalg::{Matrix, Subspace, VectorIter};
use super::{FiniteMap, FiniteModule, FinquotError, Submodule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoConstraint {
    /// The map must send the first element to the second.
    Elements(Vec<u64>, Vec<u64>),
    /// The map must send the first submodule onto the second.
    Submodules(Submodule, Submodule),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoOptions {
    /// Largest module (in elements) the search accepts.
    pub max_elements: u64,
    /// Largest number of candidate block images examined.
    pub max_nodes: u64,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            max_elements: 4096,
            max_nodes: 200_000,
        }
    }
}

struct Block {
    len: usize,
    /// `t^len g = sum coeffs[i] * basis[i]` over all basis vectors so far
    /// (including this block's first `len`).
    relation: Vec<u64>,
}

/// Searches for a `t`-equivariant isomorphism `m -> m2` honoring the
/// constraints. `Ok(None)` means none exists.
pub fn iso_search(
    m: &FiniteModule,
    m2: &FiniteModule,
    constraints: &[IsoConstraint],
    opts: IsoOptions,
) -> Result<Option<FiniteMap>, FinquotError> {
    if m.p() != m2.p() {
        return Err(FinquotError::RingMismatch);
    }
    if m.dim() != m2.dim() {
        return Ok(None);
    }
    m.check_budget("module isomorphism search", opts.max_elements)?;
    for c in constraints {
        if let IsoConstraint::Submodules(a, b) = c {
            if a.dim() != b.dim() {
                return Ok(None);
            }
        }
    }
    if !same_rank_profile(m.t_action(), m2.t_action()) {
        return Ok(None);
    }

    let p = m.p();
    let n = m.dim();
    let (basis, blocks) = cyclic_blocks(m);
    let bmat = Matrix::from_columns(p, n, &basis);
    let binv = bmat.inverse().expect("cyclic blocks form a basis");

    // element constraints, keyed by the last block their coordinates touch
    let mut starts = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for b in &blocks {
        starts.push(acc);
        acc += b.len;
    }
    let mut element_checks: Vec<Vec<(Vec<u64>, Vec<u64>)>> = vec![Vec::new(); blocks.len()];
    for c in constraints {
        if let IsoConstraint::Elements(v, w) = c {
            let coords = binv.mul_vec(v);
            let last = coords.iter().rposition(|&x| x != 0);
            match last {
                None => {
                    if w.iter().any(|&x| x != 0) {
                        return Ok(None);
                    }
                }
                Some(i) => {
                    let k = starts.iter().rposition(|&s| s <= i).unwrap();
                    element_checks[k].push((coords, w.clone()));
                }
            }
        }
    }

    let mut search = Search {
        m2,
        blocks: &blocks,
        starts: &starts,
        element_checks: &element_checks,
        images: Vec::with_capacity(n),
        nodes: 0,
        max_nodes: opts.max_nodes,
    };
    let mut result = None;
    search.run(0, &Subspace::zero(p, n), &mut |images| {
        let fmat = Matrix::from_columns(p, n, images).mul(&binv);
        let f = FiniteMap::new(m.clone(), m2.clone(), fmat).expect("search only builds equivariant maps");
        if constraints_hold(&f, constraints) {
            result = Some(f);
            true
        } else {
            false
        }
    })?;
    Ok(result)
}

fn constraints_hold(f: &FiniteMap, constraints: &[IsoConstraint]) -> bool {
    constraints.iter().all(|c| match c {
        IsoConstraint::Elements(v, w) => f.apply(v) == *w,
        IsoConstraint::Submodules(a, b) => f.image_of(a) == *b,
    })
}

struct Search<'a> {
    m2: &'a FiniteModule,
    blocks: &'a [Block],
    starts: &'a [usize],
    element_checks: &'a [Vec<(Vec<u64>, Vec<u64>)>],
    images: Vec<Vec<u64>>,
    nodes: u64,
    max_nodes: u64,
}

impl Search<'_> {
    /// Depth-first search; `accept` sees each complete image list and stops
    /// the search by returning true.
    fn run(
        &mut self,
        k: usize,
        span: &Subspace,
        accept: &mut dyn FnMut(&[Vec<u64>]) -> bool,
    ) -> Result<bool, FinquotError> {
        if k == self.blocks.len() {
            return Ok(accept(&self.images));
        }
        let p = self.m2.p();
        let t2 = self.m2.t_action();
        let block = &self.blocks[k];
        let start = self.starts[k];

        // (t^len - sum_{j<len} c_j t^j) y = image of the earlier part
        let mut poly = vec![0u64; block.len + 1];
        poly[block.len] = 1;
        for j in 0..block.len {
            poly[j] = (p - block.relation[start + j]) % p;
        }
        let lhs = t2.eval_poly(&poly);
        let mut rhs = vec![0u64; self.m2.dim()];
        for (i, img) in self.images.iter().enumerate() {
            let c = block.relation[i];
            if c != 0 {
                rhs = rhs.iter().zip(img).map(|(a, b)| (a + c * b) % p).collect();
            }
        }
        let Some((particular, null)) = lhs.solve(&rhs) else {
            return Ok(false);
        };
        for combo in VectorIter::new(p, null.len()) {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(FinquotError::BudgetExceeded {
                    what: "module isomorphism search nodes".into(),
                    needed: format!("more than {}", self.max_nodes),
                    budget: self.max_nodes,
                });
            }
            let mut y = particular.clone();
            for (c, v) in combo.iter().zip(&null) {
                for (a, b) in y.iter_mut().zip(v) {
                    *a = (*a + c * b) % p;
                }
            }
            let mut next = span.clone();
            let mut cur = y;
            let mut block_images = Vec::with_capacity(block.len);
            let mut independent = true;
            for _ in 0..block.len {
                if !next.insert(cur.clone()) {
                    independent = false;
                    break;
                }
                block_images.push(cur.clone());
                cur = t2.mul_vec(&cur);
            }
            if !independent {
                continue;
            }
            let before = self.images.len();
            self.images.extend(block_images);
            let ok = self.element_checks[k].iter().all(|(coords, w)| {
                let mut v = vec![0u64; self.m2.dim()];
                for (c, img) in coords.iter().zip(&self.images) {
                    for (a, b) in v.iter_mut().zip(img) {
                        *a = (*a + c * b) % p;
                    }
                }
                v == *w
            });
            if ok && self.run(k + 1, &next, accept)? {
                return Ok(true);
            }
            self.images.truncate(before);
        }
        Ok(false)
    }
}

/// Splits `m` into cyclic blocks generated by standard basis vectors.
fn cyclic_blocks(m: &FiniteModule) -> (Vec<Vec<u64>>, Vec<Block>) {
    let p = m.p();
    let n = m.dim();
    let mut span = Subspace::zero(p, n);
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut blocks = Vec::new();
    for i in 0..n {
        let e = m.basis_vector(i);
        if span.contains(&e) {
            continue;
        }
        let mut cur = e;
        let mut len = 0;
        while span.insert(cur.clone()) {
            basis.push(cur.clone());
            len += 1;
            cur = m.act_t(&cur);
        }
        let a = Matrix::from_columns(p, n, &basis);
        let (coords, _) = a.solve(&cur).expect("t^len g lies in the span");
        blocks.push(Block { len, relation: coords });
    }
    (basis, blocks)
}

/// Compares ranks of `g(A)^k` for every monic `g` of degree at most 2 (only
/// degree 1 for large `p`) and every `k` up to the dimension.
fn same_rank_profile(a: &Matrix, b: &Matrix) -> bool {
    let p = a.p();
    let n = a.num_rows();
    let mut polys: Vec<Vec<u64>> = (0..p).map(|c| vec![c, 1]).collect();
    if p <= 13 {
        for c0 in 0..p {
            for c1 in 0..p {
                polys.push(vec![c0, c1, 1]);
            }
        }
    }
    polys.iter().all(|g| {
        let ga = a.eval_poly(g);
        let gb = b.eval_poly(g);
        let (mut pa, mut pb) = (ga.clone(), gb.clone());
        for _ in 0..n.max(1) {
            let (ra, rb) = (pa.rank(), pb.rank());
            if ra != rb {
                return false;
            }
            if ra == 0 {
                break;
            }
            pa = pa.mul(&ga);
            pb = pb.mul(&gb);
        }
        true
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finquot::{generated_submodule, FiniteRing};

    fn f4() -> FiniteRing {
        FiniteRing::parse(2, "t^2 + t + 1").unwrap()
    }

    #[test]
    fn identity_is_found() {
        let m = FiniteModule::free(&f4(), &["a".into(), "b".into()]);
        let f = iso_search(&m, &m, &[], IsoOptions::default()).unwrap().unwrap();
        assert!(f.is_isomorphism() && f.is_equivariant());
    }

    #[test]
    fn action_mismatch_is_rejected() {
        let r = FiniteRing::parse(3, "t^2 + t + 1").unwrap();
        let free = FiniteModule::free(&r, &["a".into()]);
        let triv = FiniteModule::trivial(&r, 2);
        assert_eq!(iso_search(&free, &triv, &[], IsoOptions::default()).unwrap(), None);
    }

    #[test]
    fn element_constraints_are_honored() {
        let m = FiniteModule::free(&f4(), &["a".into(), "b".into()]);
        let a = m.basis_vector(0);
        let b = m.basis_vector(2);
        let f = iso_search(&m, &m, &[IsoConstraint::Elements(a.clone(), b.clone())], IsoOptions::default())
            .unwrap()
            .unwrap();
        assert_eq!(f.apply(&a), b);
        // the zero element can only go to zero
        let none = iso_search(&m, &m, &[IsoConstraint::Elements(m.zero(), a)], IsoOptions::default()).unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn submodule_constraints_are_honored() {
        let m = FiniteModule::free(&f4(), &["a".into(), "b".into()]);
        let sa = generated_submodule(&m, &[m.basis_vector(0)]);
        let sb = generated_submodule(&m, &[m.basis_vector(2)]);
        let f = iso_search(&m, &m, &[IsoConstraint::Submodules(sa.clone(), sb.clone())], IsoOptions::default())
            .unwrap()
            .unwrap();
        assert_eq!(f.image_of(&sa), sb);
    }

    #[test]
    fn budget_is_reported() {
        let m = FiniteModule::free(&f4(), &["a".into(), "b".into(), "c".into()]);
        let opts = IsoOptions { max_elements: 10, ..IsoOptions::default() };
        assert!(iso_search(&m, &m, &[], opts).unwrap_err().is_budget());
    }
}
