//! The finite shadow of a link: its reduced module over `R` together with
//! the Crowell maps, longitudes and meridian classes.

use super::linalg::Matrix;
use super::{kernel, specialize, FiniteMap, FiniteModule, FiniteRing, FinquotError, Specialization, Submodule};
use crate::alexmod::{arc_generator, longitude, reduced_presentation};
use crate::linkdiag::Diagram;

#[derive(Clone, Debug)]
pub struct LinkShadow {
    name: String,
    mu: usize,
    classical: bool,
    spec: Specialization,
    phi: FiniteMap,
    ztail: FiniteMap,
    kernel: Submodule,
    arc_classes: Vec<Vec<u64>>,
    meridians: Vec<Vec<u64>>,
    longitudes: Vec<Vec<u64>>,
}

impl LinkShadow {
    pub fn new(d: &Diagram, ring: &FiniteRing) -> Result<Self, FinquotError> {
        let pres = reduced_presentation(d);
        let spec = specialize(&pres, ring)?;
        let deg = ring.degree();
        let g = d.arcs().len();
        let p = ring.p();
        let free_dim = g * deg;

        // phi sends every generator to 1
        let mut phi_free = Matrix::zeros(p, deg, free_dim);
        for k in 0..g {
            for j in 0..deg {
                phi_free.set(j, k * deg + j, 1);
            }
        }
        let phi = spec.induced_map(&FiniteModule::ring_module(ring), &phi_free)?;

        // the trivial-module coordinate only survives when t = 1 is a root of q
        let tail_dim = if ring.one_is_root() { d.mu() - 1 } else { 0 };
        let mut tail_free = Matrix::zeros(p, tail_dim, free_dim);
        for (k, arc) in d.arcs().iter().enumerate() {
            if arc.component > 1 && tail_dim > 0 {
                for j in 0..deg {
                    tail_free.set(arc.component - 2, k * deg + j, 1);
                }
            }
        }
        let ztail = spec.induced_map(&FiniteModule::trivial(ring, tail_dim), &tail_free)?;

        let kernel = kernel(&phi);
        let arc_classes: Vec<Vec<u64>> = (0..g).map(|a| spec.project(&arc_generator(d, a))).collect();
        let meridians = (1..=d.mu())
            .map(|i| arc_classes[d.base_arc(i).expect("component in range")].clone())
            .collect();
        let longitudes = (1..=d.mu())
            .map(|i| spec.project(&longitude(d, i).expect("component in range")))
            .collect();
        Ok(LinkShadow {
            name: d.name().to_string(),
            mu: d.mu(),
            classical: d.is_classical(),
            spec,
            phi,
            ztail,
            kernel,
            arc_classes,
            meridians,
            longitudes,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn is_classical(&self) -> bool {
        self.classical
    }

    pub fn ring(&self) -> &FiniteRing {
        self.spec.ring()
    }

    pub fn specialization(&self) -> &Specialization {
        &self.spec
    }

    /// The specialized reduced module.
    pub fn module(&self) -> &FiniteModule {
        self.spec.module()
    }

    /// The reduced Crowell map into `R`.
    pub fn phi(&self) -> &FiniteMap {
        &self.phi
    }

    /// The second coordinate of the tensored Crowell map, into
    /// `(R/(t-1))^(mu-1)` with trivial action.
    pub fn ztail(&self) -> &FiniteMap {
        &self.ztail
    }

    /// Kernel of the reduced Crowell map, as a submodule of [`Self::module`].
    pub fn kernel(&self) -> &Submodule {
        &self.kernel
    }

    pub fn kernel_module(&self) -> (FiniteModule, FiniteMap) {
        self.kernel.as_module(self.module())
    }

    pub fn arc_class(&self, arc: usize) -> &[u64] {
        &self.arc_classes[arc]
    }

    /// Class of the base arc of a component (1-based).
    pub fn meridian(&self, component: usize) -> &[u64] {
        &self.meridians[component - 1]
    }

    /// Longitude of a component (1-based).
    pub fn longitude(&self, component: usize) -> &[u64] {
        &self.longitudes[component - 1]
    }

    pub fn longitudes(&self) -> &[Vec<u64>] {
        &self.longitudes
    }

    /// The ring element `phi(x)`.
    pub fn phi_value(&self, x: &[u64]) -> Vec<u64> {
        self.phi.apply(x)
    }
}
