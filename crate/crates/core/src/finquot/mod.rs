//! Finite shadows of one-variable modules: specialization to
//! `R = F_p[t]/(q)` and module linear algebra over `F_p` with a `t`-action.
//!
//! Elements of a [`FiniteModule`] are coordinate vectors over `F_p`; `t`
//! acts by left multiplication with an invertible matrix on column vectors.

pub mod iso;
pub mod linalg;
mod ring;
mod shadow;

use serde_json::json;
use thiserror::Error;

use crate::alexmod::{ModuleElement, PresentedModule};
use crate::laurent::LaurentPoly;
pub use iso::{iso_search, IsoConstraint, IsoOptions};
use linalg::{Matrix, Subspace, VectorIter};
pub use ring::{FiniteRing, MAX_PRIME};
pub use shadow::LinkShadow;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FinquotError {
    #[error("{0} is not a supported prime (must be prime and below 2^31)")]
    NotPrime(u64),
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("presentation has {0} variables; only one-variable modules specialize")]
    NotOneVariable(usize),
    #[error("t-action must be an invertible square matrix")]
    BadAction,
    #[error("submodule is not stable under t")]
    NotTStable,
    #[error("map does not commute with t")]
    NotEquivariant,
    #[error("modules live over different rings")]
    RingMismatch,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded {
        what: String,
        needed: String,
        budget: u64,
    },
}

impl FinquotError {
    pub fn is_budget(&self) -> bool {
        matches!(self, FinquotError::BudgetExceeded { .. })
    }
}

/// A module over `F_p[t]` given by an invertible `t`-action on `F_p^n`,
/// tagged with the ring it was specialized over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModule {
    ring: FiniteRing,
    t_action: Matrix,
    labels: Vec<String>,
}

impl FiniteModule {
    pub fn new(ring: FiniteRing, t_action: Matrix, labels: Vec<String>) -> Result<Self, FinquotError> {
        if !t_action.is_square() || t_action.p() != ring.p() || t_action.inverse().is_none() {
            return Err(FinquotError::BadAction);
        }
        if labels.len() != t_action.num_rows() {
            return Err(FinquotError::Dimension(format!(
                "{} labels for dimension {}",
                labels.len(),
                t_action.num_rows()
            )));
        }
        Ok(FiniteModule { ring, t_action, labels })
    }

    /// `R^rank` with basis `g ⊗ t^j`.
    pub fn free(ring: &FiniteRing, generators: &[String]) -> Self {
        let d = ring.degree();
        let n = generators.len() * d;
        let c = ring.companion();
        let mut t = Matrix::zeros(ring.p(), n, n);
        for k in 0..generators.len() {
            for i in 0..d {
                for j in 0..d {
                    t.set(k * d + i, k * d + j, c.get(i, j));
                }
            }
        }
        let labels = generators
            .iter()
            .flat_map(|g| (0..d).map(move |j| tensor_label(g, j)))
            .collect();
        FiniteModule::new(ring.clone(), t, labels).expect("companion action is invertible")
    }

    /// `R` itself, with basis `1, t, ..., t^(d-1)`.
    pub fn ring_module(ring: &FiniteRing) -> Self {
        let labels = (0..ring.degree())
            .map(|j| match j {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{j}"),
            })
            .collect();
        FiniteModule::new(ring.clone(), ring.companion(), labels).expect("companion action is invertible")
    }

    /// `F_p^n` with `t` acting as the identity.
    pub fn trivial(ring: &FiniteRing, dim: usize) -> Self {
        FiniteModule::new(
            ring.clone(),
            Matrix::identity(ring.p(), dim),
            (1..=dim).map(|i| format!("e{i}")).collect(),
        )
        .unwrap()
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn p(&self) -> u64 {
        self.ring.p()
    }

    pub fn dim(&self) -> usize {
        self.t_action.num_rows()
    }

    pub fn t_action(&self) -> &Matrix {
        &self.t_action
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Number of elements, if it fits in a `u64`.
    pub fn cardinality(&self) -> Option<u64> {
        self.p().checked_pow(self.dim() as u32)
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u64> {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    /// Every element, in lexicographic order of coordinates.
    pub fn elements(&self) -> VectorIter {
        VectorIter::new(self.p(), self.dim())
    }

    /// Fails with a budget error when the module has more than `budget` elements.
    pub fn check_budget(&self, what: &str, budget: u64) -> Result<u64, FinquotError> {
        match self.cardinality() {
            Some(n) if n <= budget => Ok(n),
            n => Err(FinquotError::BudgetExceeded {
                what: what.to_string(),
                needed: n.map_or_else(|| format!("{}^{}", self.p(), self.dim()), |n| n.to_string()),
                budget,
            }),
        }
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        linalg::vec_add(self.p(), a, b)
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        linalg::vec_sub(self.p(), a, b)
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        linalg::vec_sub(self.p(), &self.zero(), a)
    }

    pub fn scale(&self, k: u64, a: &[u64]) -> Vec<u64> {
        linalg::vec_scale(self.p(), k, a)
    }

    pub fn act_t(&self, v: &[u64]) -> Vec<u64> {
        self.t_action.mul_vec(v)
    }

    /// The matrix of multiplication by a one-variable Laurent polynomial.
    pub fn poly_matrix(&self, f: &LaurentPoly) -> Matrix {
        let p = self.p();
        let n = self.dim();
        let Some((lo, _)) = f.degree_range() else {
            return Matrix::zeros(p, n, n);
        };
        let (_, dense) = f.to_dense();
        let coeffs: Vec<u64> = dense.iter().map(|c| ring::residue(c, p)).collect();
        let m = self.t_action.eval_poly(&coeffs);
        let shift = if lo >= 0 {
            self.t_action.pow(lo as u64)
        } else {
            self.t_action.inverse().expect("t acts invertibly").pow(lo.unsigned_abs())
        };
        shift.mul(&m)
    }

    /// Multiplication by an element of the coefficient ring.
    pub fn ring_matrix(&self, r: &[u64]) -> Matrix {
        self.t_action.eval_poly(r)
    }

    pub fn act_poly(&self, f: &LaurentPoly, v: &[u64]) -> Vec<u64> {
        self.poly_matrix(f).mul_vec(v)
    }

    pub fn act_ring(&self, r: &[u64], v: &[u64]) -> Vec<u64> {
        self.ring_matrix(r).mul_vec(v)
    }

    pub fn is_trivial_action(&self) -> bool {
        self.t_action.is_identity()
    }

    /// True iff the modulus kills the module, i.e. it is an `R`-module.
    pub fn is_ring_module(&self) -> bool {
        self.t_action.eval_poly(self.ring.modulus()).is_zero()
    }

    pub fn format_element(&self, v: &[u64]) -> String {
        let parts: Vec<String> = v
            .iter()
            .zip(&self.labels)
            .filter(|(c, _)| **c != 0)
            .map(|(c, l)| if *c == 1 { l.clone() } else { format!("{c}*{l}") })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema": 1,
            "p": self.p(),
            "q": self.ring.modulus_poly().to_string(),
            "dim": self.dim(),
            "labels": self.labels,
            "t_action": self.t_action.to_rows(),
        })
    }

    /// The same space with `t` acting by its inverse, over the reciprocal ring.
    pub fn twisted(&self) -> FiniteModule {
        FiniteModule {
            ring: self.ring.reciprocal(),
            t_action: self.t_action.inverse().expect("t acts invertibly"),
            labels: self.labels.clone(),
        }
    }

    pub fn whole(&self) -> Submodule {
        Submodule {
            space: Subspace::full(self.p(), self.dim()),
        }
    }

    pub fn zero_submodule(&self) -> Submodule {
        Submodule {
            space: Subspace::zero(self.p(), self.dim()),
        }
    }
}

fn tensor_label(g: &str, j: usize) -> String {
    match j {
        0 => g.to_string(),
        1 => format!("t{g}"),
        _ => format!("t^{j}{g}"),
    }
}

/// A `t`-stable subspace of some [`FiniteModule`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    space: Subspace,
}

impl Submodule {
    /// Checks `t`-stability.
    pub fn new(m: &FiniteModule, space: Subspace) -> Result<Self, FinquotError> {
        if space.ambient_dim() != m.dim() {
            return Err(FinquotError::Dimension("subspace ambient dimension".into()));
        }
        if !space.is_stable_under(m.t_action()) {
            return Err(FinquotError::NotTStable);
        }
        Ok(Submodule { space })
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.space.contains(v)
    }

    pub fn is_subset_of(&self, o: &Submodule) -> bool {
        self.space.is_subspace_of(&o.space)
    }

    /// Canonical (lexicographically least) representative of `v + self`.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        self.space.reduce(v)
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        self.space.basis()
    }

    /// Every element, enumerated through coordinates in the echelon basis.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        VectorIter::new(self.space.p(), self.dim()).map(|c| self.space.combine(&c))
    }

    pub fn sum(&self, o: &Submodule) -> Submodule {
        Submodule {
            space: self.space.sum(&o.space),
        }
    }

    /// This submodule as a module in its own right, with the inclusion map.
    pub fn as_module(&self, m: &FiniteModule) -> (FiniteModule, FiniteMap) {
        let cols: Vec<Vec<u64>> = self
            .space
            .basis()
            .iter()
            .map(|b| self.space.coords(&m.act_t(b)).expect("submodule is t-stable"))
            .collect();
        let k = self.dim();
        let t = Matrix::from_columns(m.p(), k, &cols);
        let labels = self.space.basis().iter().map(|b| m.format_element(b)).collect();
        let sub = FiniteModule::new(m.ring().clone(), t, labels).expect("restriction of an invertible action");
        let incl = Matrix::from_columns(m.p(), m.dim(), self.space.basis());
        let map = FiniteMap {
            source: sub.clone(),
            target: m.clone(),
            matrix: incl,
        };
        (sub, map)
    }

    /// Coordinates of an element of this submodule in the basis used by
    /// [`Submodule::as_module`].
    pub fn coords(&self, v: &[u64]) -> Option<Vec<u64>> {
        self.space.coords(v)
    }
}

/// A `t`-equivariant `F_p`-linear map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMap {
    source: FiniteModule,
    target: FiniteModule,
    matrix: Matrix,
}

impl FiniteMap {
    pub fn new(source: FiniteModule, target: FiniteModule, matrix: Matrix) -> Result<Self, FinquotError> {
        if matrix.num_rows() != target.dim() || matrix.num_cols() != source.dim() {
            return Err(FinquotError::Dimension("map matrix shape".into()));
        }
        if source.p() != target.p() {
            return Err(FinquotError::RingMismatch);
        }
        if matrix.mul(source.t_action()) != target.t_action().mul(&matrix) {
            return Err(FinquotError::NotEquivariant);
        }
        Ok(FiniteMap { source, target, matrix })
    }

    pub fn zero(source: &FiniteModule, target: &FiniteModule) -> Self {
        FiniteMap {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(source.p(), target.dim(), source.dim()),
        }
    }

    pub fn identity(m: &FiniteModule) -> Self {
        FiniteMap {
            source: m.clone(),
            target: m.clone(),
            matrix: Matrix::identity(m.p(), m.dim()),
        }
    }

    pub fn source(&self) -> &FiniteModule {
        &self.source
    }

    pub fn target(&self) -> &FiniteModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        self.matrix.mul_vec(v)
    }

    pub fn is_equivariant(&self) -> bool {
        self.matrix.mul(self.source.t_action()) == self.target.t_action().mul(&self.matrix)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.matrix.is_square() && self.matrix.inverse().is_some()
    }

    pub fn compose(&self, after: &FiniteMap) -> FiniteMap {
        FiniteMap {
            source: self.source.clone(),
            target: after.target.clone(),
            matrix: after.matrix.mul(&self.matrix),
        }
    }

    pub fn image(&self) -> Submodule {
        Submodule {
            space: Subspace::new(self.target.p(), self.target.dim(), self.matrix.transpose().to_rows()),
        }
    }

    pub fn image_of(&self, s: &Submodule) -> Submodule {
        Submodule {
            space: s.space.image(&self.matrix),
        }
    }
}

pub fn kernel(f: &FiniteMap) -> Submodule {
    Submodule {
        space: Subspace::new(f.source.p(), f.source.dim(), f.matrix.nullspace()),
    }
}

/// `{x : f(t) x = 0}`.
pub fn annihilator(m: &FiniteModule, f: &LaurentPoly) -> Submodule {
    Submodule {
        space: Subspace::new(m.p(), m.dim(), m.poly_matrix(f).nullspace()),
    }
}

/// `f(t) · N`.
pub fn multiply_submodule(m: &FiniteModule, f: &LaurentPoly, n: &Submodule) -> Submodule {
    Submodule {
        space: n.space.image(&m.poly_matrix(f)),
    }
}

/// Smallest `t`-stable subspace containing `gens`.
pub fn generated_submodule(m: &FiniteModule, gens: &[Vec<u64>]) -> Submodule {
    let mut s = Subspace::zero(m.p(), m.dim());
    let mut queue: Vec<Vec<u64>> = gens.to_vec();
    while let Some(v) = queue.pop() {
        if s.insert(v.clone()) {
            queue.push(m.act_t(&v));
        }
    }
    Submodule { space: s }
}

/// `M / N` with the projection map. Fails unless `N` is `t`-stable.
pub fn quotient(m: &FiniteModule, n: &Submodule) -> Result<(FiniteModule, FiniteMap), FinquotError> {
    if !n.space.is_stable_under(m.t_action()) {
        return Err(FinquotError::NotTStable);
    }
    let keep = n.space.non_pivots();
    let project = |v: &[u64]| -> Vec<u64> {
        let r = n.space.reduce(v);
        keep.iter().map(|&c| r[c]).collect()
    };
    let cols: Vec<Vec<u64>> = keep.iter().map(|&c| project(&m.act_t(&m.basis_vector(c)))).collect();
    let t = Matrix::from_columns(m.p(), keep.len(), &cols);
    let labels = keep.iter().map(|&c| m.labels()[c].clone()).collect();
    let q = FiniteModule::new(m.ring().clone(), t, labels)?;
    let proj_cols: Vec<Vec<u64>> = (0..m.dim()).map(|c| project(&m.basis_vector(c))).collect();
    let proj = FiniteMap {
        source: m.clone(),
        target: q.clone(),
        matrix: Matrix::from_columns(m.p(), keep.len(), &proj_cols),
    };
    Ok((q, proj))
}

/// A one-variable presentation specialized to a finite ring, keeping what is
/// needed to push elements of the free module into the quotient.
#[derive(Clone, Debug)]
pub struct Specialization {
    ring: FiniteRing,
    free: FiniteModule,
    relations: Subspace,
    keep: Vec<usize>,
    module: FiniteModule,
    projection: FiniteMap,
}

/// The cokernel of the relation matrix over `R`.
pub fn specialize(m: &PresentedModule, ring: &FiniteRing) -> Result<Specialization, FinquotError> {
    if m.num_vars() != 1 {
        return Err(FinquotError::NotOneVariable(m.num_vars()));
    }
    let free = FiniteModule::free(ring, m.generators());
    let d = ring.degree();
    let mut rel = Subspace::zero(ring.p(), free.dim());
    for row in m.rows() {
        let entries: Vec<Vec<u64>> = row.iter().map(|c| ring.from_laurent(c)).collect();
        for j in 0..d {
            let tj = ring.pow_t(j as i64);
            let v: Vec<u64> = entries.iter().flat_map(|e| ring.mul(e, &tj)).collect();
            rel.insert(v);
        }
    }
    let sub = Submodule::new(&free, rel.clone())?;
    let (module, projection) = quotient(&free, &sub)?;
    Ok(Specialization {
        ring: ring.clone(),
        free,
        keep: rel.non_pivots(),
        relations: rel,
        module,
        projection,
    })
}

impl Specialization {
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn module(&self) -> &FiniteModule {
        &self.module
    }

    pub fn free_module(&self) -> &FiniteModule {
        &self.free
    }

    /// Rank of the relation span over `F_p`.
    pub fn relation_rank(&self) -> usize {
        self.relations.dim()
    }

    /// The free-module vector of a Laurent combination of generators.
    pub fn free_vector(&self, x: &ModuleElement) -> Vec<u64> {
        x.coeffs().iter().flat_map(|c| self.ring.from_laurent(c)).collect()
    }

    /// True iff the element lies in the span of the specialized relations.
    pub fn is_relation(&self, x: &ModuleElement) -> bool {
        self.relations.contains(&self.free_vector(x))
    }

    /// The class of an element in the specialized module.
    pub fn project(&self, x: &ModuleElement) -> Vec<u64> {
        self.projection.apply(&self.free_vector(x))
    }

    pub fn project_free(&self, v: &[u64]) -> Vec<u64> {
        self.projection.apply(v)
    }

    pub fn projection(&self) -> &FiniteMap {
        &self.projection
    }

    /// The free-module representative of a class with zeros at the
    /// eliminated coordinates.
    pub fn lift(&self, v: &[u64]) -> Vec<u64> {
        let mut out = self.free.zero();
        for (&c, &x) in self.keep.iter().zip(v) {
            out[c] = x;
        }
        out
    }

    /// The map induced on the quotient by a matrix on the free module that
    /// kills every relation. Fails if the result is not `t`-equivariant.
    pub fn induced_map(&self, target: &FiniteModule, on_free: &Matrix) -> Result<FiniteMap, FinquotError> {
        if self.relations.basis().iter().any(|r| on_free.mul_vec(r).iter().any(|&x| x != 0)) {
            return Err(FinquotError::Dimension("map does not kill the relations".into()));
        }
        let cols: Vec<Vec<u64>> = self.keep.iter().map(|&c| on_free.column(c)).collect();
        FiniteMap::new(self.module.clone(), target.clone(), Matrix::from_columns(self.ring.p(), target.dim(), &cols))
    }
}
