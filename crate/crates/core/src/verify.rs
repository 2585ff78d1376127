//! Named property checks over catalog links and finite rings, plus the
//! module/quandle comparison of two links.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::alexmod::{crowell_data, longitude};
use crate::finquot::{
    annihilator, generated_submodule, iso_search, kernel, quotient, FiniteRing, IsoOptions, LinkShadow,
};
use crate::laurent::LaurentPoly;
use crate::linkdiag::Diagram;
use crate::quandle::medial::{kernel_annihilator, one_minus_t_kernel};
use crate::quandle::{
    build_medial, mq_input, quandle_iso_search, thm20_candidates, thm20_quandle, FiniteQuandle, QuandleError,
    QuandleIsoOptions, UShadow,
};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A finite-shadow artifact: the expected equality degrades to a strict
    /// containment or a degenerate quotient.
    KnownDeviation,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::KnownDeviation => "known-deviation",
            Status::NotApplicable => "n/a",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub check: &'static str,
    pub link: String,
    pub ring: Option<String>,
    pub status: Status,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<18} {:<15} {:<24} {:<15}", self.check, self.link, self.ring.as_deref().unwrap_or("-"), self.status)?;
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub rings: Vec<FiniteRing>,
    pub quandle_budget: u64,
    pub module_budget: u64,
    /// Shadows larger than this are skipped by the element-pair checks.
    pub shadow_limit: u64,
    pub assoc_samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            rings: FiniteRing::defaults(),
            quandle_budget: 512,
            module_budget: 4096,
            shadow_limit: 512,
            assoc_samples: 10_000,
            seed: 1729,
        }
    }
}

type RingCheck = fn(&Diagram, &LinkShadow, &VerifyOptions) -> (Status, String);

pub struct Check {
    pub name: &'static str,
    pub summary: &'static str,
    kind: Kind,
}

enum Kind {
    Symbolic(fn(&Diagram) -> (Status, String)),
    PerRing(RingCheck),
}

pub const CHECKS: &[Check] = &[
    Check {
        name: "def17-axioms",
        summary: "medial-quandle shadows satisfy the quandle axioms and mediality",
        kind: Kind::PerRing(check_def17_axioms),
    },
    Check {
        name: "thm13-group",
        summary: "x·y = x + (1+phi(x))y is a group law with identity 0 and the stated inverse",
        kind: Kind::PerRing(check_group),
    },
    Check {
        name: "cor14-eq-def6",
        summary: "conjugation formula agrees with the metabelian quandle operation and with y·x·y^-1",
        kind: Kind::PerRing(check_cor14),
    },
    Check {
        name: "longitude-phi",
        summary: "the reduced Crowell map kills every longitude (exact, over Z[t^±1])",
        kind: Kind::Symbolic(check_longitude_phi),
    },
    Check {
        name: "longitude-torsion",
        summary: "(1 - t) kills every longitude",
        kind: Kind::PerRing(check_longitude_torsion),
    },
    Check {
        name: "longitude-sum",
        summary: "the longitudes of a classical link sum to zero",
        kind: Kind::PerRing(check_longitude_sum),
    },
    Check {
        name: "prop4-containment",
        summary: "longitudes generate a submodule of ann(1 - t); equality flagged",
        kind: Kind::PerRing(check_prop4),
    },
    Check {
        name: "prop5-containment",
        summary: "(1 - t) ker phi lies in ker phi_tau; equality flagged",
        kind: Kind::PerRing(check_prop5),
    },
    Check {
        name: "lemma18",
        summary: "two-component classical links: chi_1 = -chi_2 and <chi_i> = ann(1 - t)",
        kind: Kind::PerRing(check_lemma18),
    },
    Check {
        name: "lemma19",
        summary: "ker phi / (1 - t) ker phi is trivial and generated by m_1 - m_2",
        kind: Kind::PerRing(check_lemma19),
    },
    Check {
        name: "thm20",
        summary: "Q(ker phi, (d, 0), (X, X)) is isomorphic to the medial-quandle shadow",
        kind: Kind::PerRing(check_thm20),
    },
    Check {
        name: "prop8",
        summary: "shifting every base point by the same element leaves the table unchanged",
        kind: Kind::PerRing(check_prop8),
    },
    Check {
        name: "prop9",
        summary: "shifting base points by (1 - t) N gives an isomorphic quandle",
        kind: Kind::PerRing(check_prop9),
    },
];

pub fn check_names() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|c| c.name)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub outcomes: Vec<Outcome>,
}

impl Report {
    pub fn count(&self, s: Status) -> usize {
        self.outcomes.iter().filter(|o| o.status == s).count()
    }

    /// Failures, and with `strict` also known deviations.
    pub fn is_failure(&self, strict: bool) -> bool {
        self.count(Status::Fail) > 0 || (strict && self.count(Status::KnownDeviation) > 0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema": 1,
            "outcomes": self.outcomes,
            "summary": {
                "pass": self.count(Status::Pass),
                "fail": self.count(Status::Fail),
                "known_deviation": self.count(Status::KnownDeviation),
                "not_applicable": self.count(Status::NotApplicable),
            }
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            writeln!(f, "{o}")?;
        }
        write!(
            f,
            "{} pass, {} fail, {} known deviation, {} not applicable",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::KnownDeviation),
            self.count(Status::NotApplicable)
        )
    }
}

/// Runs the named checks (all when `names` is empty) on every link.
pub fn run(names: &[&str], links: &[Diagram], opts: &VerifyOptions) -> Result<Report, Error> {
    let selected: Vec<&Check> = if names.is_empty() {
        CHECKS.iter().collect()
    } else {
        names
            .iter()
            .map(|n| CHECKS.iter().find(|c| c.name == *n).ok_or_else(|| Error::UnknownCheck(n.to_string())))
            .collect::<Result<_, _>>()?
    };
    let mut report = Report::default();
    for d in links {
        let mut shadows = Vec::new();
        for r in &opts.rings {
            shadows.push(LinkShadow::new(d, r)?);
        }
        for c in &selected {
            match c.kind {
                Kind::Symbolic(f) => {
                    let (status, detail) = f(d);
                    report.outcomes.push(Outcome { check: c.name, link: d.name().into(), ring: None, status, detail });
                }
                Kind::PerRing(f) => {
                    for s in &shadows {
                        let (status, detail) = f(d, s, opts);
                        report.outcomes.push(Outcome {
                            check: c.name,
                            link: d.name().into(),
                            ring: Some(s.ring().to_string()),
                            status,
                            detail,
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

fn omt() -> LaurentPoly {
    LaurentPoly::one(1) - LaurentPoly::t()
}

fn pass(detail: impl Into<String>) -> (Status, String) {
    (Status::Pass, detail.into())
}

fn fail(detail: impl Into<String>) -> (Status, String) {
    (Status::Fail, detail.into())
}

fn na(detail: impl Into<String>) -> (Status, String) {
    (Status::NotApplicable, detail.into())
}

fn deviation(detail: impl Into<String>) -> (Status, String) {
    (Status::KnownDeviation, detail.into())
}

fn two_component_classical(s: &LinkShadow) -> Option<(Status, String)> {
    if s.mu() != 2 {
        Some(na(format!("{} component(s)", s.mu())))
    } else if !s.is_classical() {
        Some(na("not classical"))
    } else {
        None
    }
}

fn quandle_laws(q: &FiniteQuandle, seed: u64) -> Result<&'static str, QuandleError> {
    q.check_axioms()?;
    if q.size() <= 96 {
        q.check_medial()?;
        Ok("exhaustive")
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = q.size();
        for _ in 0..1_000_000 {
            let [w, x, y, z] = [0; 4].map(|_| rng.gen_range(0..n));
            if q.op(q.op(w, x), q.op(y, z)) != q.op(q.op(w, y), q.op(x, z)) {
                return Err(QuandleError::Axiom { law: "mediality", witness: vec![w, x, y, z] });
            }
        }
        Ok("mediality sampled")
    }
}

fn check_def17_axioms(_: &Diagram, s: &LinkShadow, o: &VerifyOptions) -> (Status, String) {
    let mut quandles = Vec::new();
    match build_medial(&mq_input(s), o.quandle_budget) {
        Ok(q) => quandles.push(q),
        Err(e) if e.is_budget() => return na(e.to_string()),
        Err(e) => return fail(e.to_string()),
    }
    if two_component_classical(s).is_none() {
        for n in thm20_candidates(s, o.seed) {
            match thm20_quandle(s, &n, o.quandle_budget) {
                Ok(q) => quandles.push(q),
                Err(e) if e.is_budget() => return na(e.to_string()),
                Err(e) => return fail(e.to_string()),
            }
        }
    }
    let mut mode = "exhaustive";
    for q in &quandles {
        match quandle_laws(q, o.seed) {
            Ok(m) if m != "exhaustive" => mode = m,
            Ok(_) => {}
            Err(e) => return fail(e.to_string()),
        }
    }
    pass(format!("{} quandle(s), sizes up to {}, {mode}", quandles.len(), quandles.iter().map(|q| q.size()).max().unwrap_or(0)))
}

fn small_u_shadow(s: &LinkShadow, o: &VerifyOptions) -> Result<UShadow, (Status, String)> {
    match s.module().cardinality() {
        Some(n) if n <= o.shadow_limit => Ok(UShadow::of_link(s)),
        _ => Err(na(format!("shadow has more than {} elements", o.shadow_limit))),
    }
}

fn check_group(_: &Diagram, s: &LinkShadow, o: &VerifyOptions) -> (Status, String) {
    let u = match small_u_shadow(s, o) {
        Ok(u) => u,
        Err(r) => return r,
    };
    let r = u.ring();
    let els = u.elements();
    let zero = u.module().zero();
    for x in &els {
        let inv = u.group_inv(x).unwrap();
        if u.group_op(&zero, x).unwrap() != *x || u.group_op(x, &zero).unwrap() != *x {
            return fail(format!("identity fails at {}", u.module().format_element(x)));
        }
        if u.group_op(x, &inv).unwrap() != zero || u.group_op(&inv, x).unwrap() != zero {
            return fail(format!("inverse fails at {}", u.module().format_element(x)));
        }
    }
    let n = els.len();
    let exhaustive = n.pow(3) <= o.assoc_samples;
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let triples: Box<dyn Iterator<Item = (usize, usize, usize)>> = if exhaustive {
        Box::new((0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))))
    } else {
        let v: Vec<_> = (0..o.assoc_samples)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect();
        Box::new(v.into_iter())
    };
    let mut count = 0;
    for (a, b, c) in triples {
        let (x, y, z) = (&els[a], &els[b], &els[c]);
        let xy = u.group_op(x, y).unwrap();
        if !u.is_element(&xy) || r.mul(&u.unit_of(x), &u.unit_of(y)) != u.unit_of(&xy) {
            return fail("1 + phi is not multiplicative");
        }
        let lhs = u.group_op(&xy, z).unwrap();
        let rhs = u.group_op(x, &u.group_op(y, z).unwrap()).unwrap();
        if lhs != rhs {
            return fail("associativity fails");
        }
        count += 1;
    }
    pass(format!("{n} elements, {count} triples ({})", if exhaustive { "all" } else { "sampled" }))
}

fn check_cor14(_: &Diagram, s: &LinkShadow, o: &VerifyOptions) -> (Status, String) {
    let u = match small_u_shadow(s, o) {
        Ok(u) => u,
        Err(r) => return r,
    };
    let els = u.elements();
    for x in &els {
        for y in &els {
            let c = u.conj_op(x, y).unwrap();
            if c != u.u_op(x, y).unwrap() {
                return fail(format!("conjugation and quandle operation differ at ({}, {})", u.module().format_element(x), u.module().format_element(y)));
            }
            let yxy = u.group_op(y, &u.group_op(x, &u.group_inv(y).unwrap()).unwrap()).unwrap();
            if c != yxy {
                return fail("conjugation formula differs from y·x·y^-1");
            }
        }
    }
    pass(format!("{} pairs", els.len() * els.len()))
}

fn check_longitude_phi(d: &Diagram) -> (Status, String) {
    let phi = crowell_data(d, true);
    for i in 1..=d.mu() {
        let chi = longitude(d, i).expect("component in range");
        let v = phi.eval(&chi);
        if !v.is_zero() {
            return fail(format!("phi(chi_{i}) = {v}"));
        }
    }
    pass(format!("{} longitude(s)", d.mu()))
}

fn check_longitude_torsion(d: &Diagram, s: &LinkShadow, _: &VerifyOptions) -> (Status, String) {
    let f = omt();
    for i in 1..=d.mu() {
        let chi = longitude(d, i).expect("component in range");
        if !s.specialization().is_relation(&chi.scale(&f)) {
            return fail(format!("(1 - t) chi_{i} is not a relation"));
        }
    }
    pass("")
}

fn check_longitude_sum(d: &Diagram, s: &LinkShadow, _: &VerifyOptions) -> (Status, String) {
    if !d.is_classical() {
        return na("virtual link; the sum is only asserted for classical links");
    }
    let m = s.module();
    let sum = s.longitudes().iter().fold(m.zero(), |a, b| m.add(&a, b));
    if sum.iter().all(|&c| c == 0) {
        pass("")
    } else {
        fail(format!("sum = {}", m.format_element(&sum)))
    }
}

fn check_prop4(_: &Diagram, s: &LinkShadow, _: &VerifyOptions) -> (Status, String) {
    let m = s.module();
    let gen = generated_submodule(m, s.longitudes());
    let ann = annihilator(m, &omt());
    if !gen.is_subset_of(&ann) {
        return fail("a longitude is not killed by 1 - t");
    }
    if gen.dim() == ann.dim() {
        pass(format!("dim {}", gen.dim()))
    } else {
        deviation(format!("strict containment: dim <chi> = {}, dim ann(1 - t) = {}", gen.dim(), ann.dim()))
    }
}

fn check_prop5(_: &Diagram, s: &LinkShadow, _: &VerifyOptions) -> (Status, String) {
    let image = one_minus_t_kernel(s);
    let (kmod, incl) = s.kernel_module();
    let _ = kmod;
    let ker_tau = incl.image_of(&kernel(&incl.compose(s.ztail())));
    if !image.is_subset_of(&ker_tau) {
        return fail("(1 - t) ker phi is not inside ker phi_tau");
    }
    if image.dim() == ker_tau.dim() {
        pass(format!("dim {}", image.dim()))
    } else {
        deviation(format!("strict containment: dim (1 - t)N = {}, dim ker phi_tau = {}", image.dim(), ker_tau.dim()))
    }
}

fn check_lemma18(_: &Diagram, s: &LinkShadow, _: &VerifyOptions) -> (Status, String) {
    if let Some(r) = two_component_classical(s) {
        return r;
    }
    let m = s.module();
    if m.add(s.longitude(1), s.longitude(2)).iter().any(|&c| c != 0) {
        return fail("chi_1 != -chi_2");
    }
    let x1 = generated_submodule(m, &[s.longitude(1).to_vec()]);
    let x2 = generated_submodule(m, &[s.longitude(2).to_vec()]);
    let ann = annihilator(m, &omt());
    if x1 != x2 || !x1.is_subset_of(&ann) {
        return fail("longitude submodules differ or are not killed by 1 - t");
    }
    if x1 == ann {
        pass(format!("dim {}", ann.dim()))
    } else {
        deviation(format!("strict containment: dim <chi_1> = {}, dim ann(1 - t) = {}", x1.dim(), ann.dim()))
    }
}

fn check_lemma19(_: &Diagram, s: &LinkShadow, _: &VerifyOptions) -> (Status, String) {
    if let Some(r) = two_component_classical(s) {
        return r;
    }
    let (kmod, incl) = s.kernel_module();
    let image = crate::finquot::multiply_submodule(&kmod, &omt(), &kmod.whole());
    let (q, proj) = quotient(&kmod, &image).expect("(1 - t) N is t-stable");
    let _ = incl;
    if q.dim() == 0 {
        return if s.ring().one_is_root() {
            deviation("quotient vanishes although t - 1 divides q")
        } else {
            na("quotient vanishes: 1 - t is a unit in this ring")
        };
    }
    let m = s.module();
    let diff = m.sub(s.meridian(1), s.meridian(2));
    let coords = s.kernel().coords(&diff).expect("m_1 - m_2 lies in ker phi");
    let class = proj.apply(&coords);
    let trivial = q.is_trivial_action();
    let generated = generated_submodule(&q, &[class]).dim() == q.dim();
    if trivial && generated {
        pass(format!("quotient dim {}", q.dim()))
    } else {
        deviation(format!("quotient dim {}, trivial action {trivial}, generated by m_1 - m_2 {generated}", q.dim()))
    }
}

fn check_thm20(_: &Diagram, s: &LinkShadow, o: &VerifyOptions) -> (Status, String) {
    if let Some(r) = two_component_classical(s) {
        return r;
    }
    let mq = match build_medial(&mq_input(s), o.quandle_budget) {
        Ok(q) => q,
        Err(e) if e.is_budget() => return na(e.to_string()),
        Err(e) => return fail(e.to_string()),
    };
    let x_ann = kernel_annihilator(s);
    let x_chi = generated_submodule(s.module(), &[s.longitude(1).to_vec()]);
    let candidates = thm20_candidates(s, o.seed);
    let iso_opts = QuandleIsoOptions { max_size: o.quandle_budget as usize, ..Default::default() };
    for n in &candidates {
        let q = match thm20_quandle(s, n, o.quandle_budget) {
            Ok(q) => q,
            Err(e) if e.is_budget() => return na(e.to_string()),
            Err(e) => return fail(e.to_string()),
        };
        match quandle_iso_search(&q, &mq, iso_opts) {
            Ok(Some(_)) => {}
            Ok(None) if x_ann != x_chi => {
                return deviation(format!(
                    "no isomorphism; ann(1 - t) in N has dim {} but the longitude generates dim {}",
                    x_ann.dim(),
                    x_chi.dim()
                ))
            }
            Ok(None) => return fail(format!("no isomorphism for n = {}", s.module().format_element(n))),
            Err(e) if e.is_budget() => return na(e.to_string()),
            Err(e) => return fail(e.to_string()),
        }
    }
    pass(format!("{} candidate(s), quandle size {}", candidates.len(), mq.size()))
}

fn random_elements(s: &LinkShadow, count: usize, seed: u64) -> Vec<Vec<u64>> {
    let m = s.module();
    if m.cardinality().is_some_and(|c| c <= count as u64) {
        return m.elements().collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..m.dim()).map(|_| rng.gen_range(0..m.p())).collect()).collect()
}

fn check_prop8(_: &Diagram, s: &LinkShadow, o: &VerifyOptions) -> (Status, String) {
    let inp = mq_input(s);
    let base = match build_medial(&inp, o.quandle_budget) {
        Ok(q) => q,
        Err(e) if e.is_budget() => return na(e.to_string()),
        Err(e) => return fail(e.to_string()),
    };
    let shifts = random_elements(s, 16, o.seed);
    for m in &shifts {
        let mut shifted = inp.clone();
        shifted.m = inp.m.iter().map(|mi| inp.ambient.sub(mi, m)).collect();
        match build_medial(&shifted, o.quandle_budget) {
            Ok(q) if q.table() == base.table() => {}
            Ok(_) => return fail(format!("table changes for m = {}", inp.ambient.format_element(m))),
            Err(e) => return fail(e.to_string()),
        }
    }
    pass(format!("{} shift(s)", shifts.len()))
}

fn check_prop9(_: &Diagram, s: &LinkShadow, o: &VerifyOptions) -> (Status, String) {
    let inp = mq_input(s);
    let base = match build_medial(&inp, o.quandle_budget) {
        Ok(q) => q,
        Err(e) if e.is_budget() => return na(e.to_string()),
        Err(e) => return fail(e.to_string()),
    };
    let omt_m = inp.ambient.poly_matrix(&omt());
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed ^ 0x9e37);
    let nd = inp.n.dim();
    let iso_opts = QuandleIsoOptions { max_size: o.quandle_budget as usize, ..Default::default() };
    let trials = 4;
    for _ in 0..trials {
        let mut shifted = inp.clone();
        shifted.m = inp
            .m
            .iter()
            .map(|mi| {
                let coords: Vec<u64> = (0..nd).map(|_| rng.gen_range(0..inp.ambient.p())).collect();
                let ni = inp.n.space().combine(&coords);
                inp.ambient.add(mi, &omt_m.mul_vec(&ni))
            })
            .collect();
        let q = match build_medial(&shifted, o.quandle_budget) {
            Ok(q) => q,
            Err(e) => return fail(e.to_string()),
        };
        match quandle_iso_search(&base, &q, iso_opts) {
            Ok(Some(_)) => {}
            Ok(None) => return fail("shifted quandle is not isomorphic"),
            Err(e) if e.is_budget() => return na(e.to_string()),
            Err(e) => return fail(e.to_string()),
        }
    }
    pass(format!("{trials} shift(s)"))
}

/// Outcome of comparing two links over one ring.
#[derive(Clone, Debug, Serialize)]
pub struct RingVerdict {
    pub ring: String,
    pub module_dims: (usize, usize),
    pub kernel_dims: (usize, usize),
    /// Whether the kernel shadows are isomorphic; `None` when over budget.
    pub modules_isomorphic: Option<bool>,
    pub quandles_isomorphic: Option<bool>,
    pub consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub first: String,
    pub second: String,
    /// True when the biconditional is asserted for this pair (both classical
    /// with the same number of components, at most two).
    pub asserted: bool,
    pub rings: Vec<RingVerdict>,
}

impl Comparison {
    pub fn consistent(&self) -> bool {
        self.rings.iter().all(|r| r.consistent)
    }

    pub fn any_budget_exceeded(&self) -> bool {
        self.rings.iter().any(|r| r.modules_isomorphic.is_none() || r.quandles_isomorphic.is_none())
    }

    /// Rings whose shadows tell the two links apart.
    pub fn distinguishing_rings(&self) -> Vec<&str> {
        self.rings
            .iter()
            .filter(|r| r.modules_isomorphic == Some(false) || r.quandles_isomorphic == Some(false))
            .map(|r| r.ring.as_str())
            .collect()
    }
}

/// Compares reduced-invariant shadows and medial-quandle shadows ring by ring.
pub fn compare(
    d1: &Diagram,
    d2: &Diagram,
    rings: &[FiniteRing],
    module_opts: IsoOptions,
    quandle_budget: u64,
) -> Result<Comparison, Error> {
    let asserted = d1.is_classical() && d2.is_classical() && d1.mu() == d2.mu() && d1.mu() <= 2;
    let mut out = Vec::new();
    for r in rings {
        let s1 = LinkShadow::new(d1, r)?;
        let s2 = LinkShadow::new(d2, r)?;
        let (k1, _) = s1.kernel_module();
        let (k2, _) = s2.kernel_module();
        let modules_isomorphic = match iso_search(&k1, &k2, &[], module_opts) {
            Ok(f) => Some(f.is_some()),
            Err(e) if e.is_budget() => None,
            Err(e) => return Err(e.into()),
        };
        let q1 = build_medial(&mq_input(&s1), quandle_budget);
        let q2 = build_medial(&mq_input(&s2), quandle_budget);
        let quandles_isomorphic = match (q1, q2) {
            (Ok(a), Ok(b)) => {
                let opts = QuandleIsoOptions { max_size: quandle_budget as usize, ..Default::default() };
                match quandle_iso_search(&a, &b, opts) {
                    Ok(f) => Some(f.is_some()),
                    Err(e) if e.is_budget() => None,
                    Err(e) => return Err(e.into()),
                }
            }
            (Err(e), _) | (_, Err(e)) if e.is_budget() => None,
            (Err(e), _) | (_, Err(e)) => return Err(e.into()),
        };
        let consistent = !asserted || modules_isomorphic != Some(true) || quandles_isomorphic != Some(false);
        out.push(RingVerdict {
            ring: r.to_string(),
            module_dims: (s1.module().dim(), s2.module().dim()),
            kernel_dims: (k1.dim(), k2.dim()),
            modules_isomorphic,
            quandles_isomorphic,
            consistent,
        });
    }
    Ok(Comparison {
        first: d1.name().into(),
        second: d2.name().into(),
        asserted,
        rings: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkdiag::catalog;

    #[test]
    fn unknown_check_is_an_error() {
        let err = run(&["nope"], &[], &VerifyOptions::default()).unwrap_err();
        assert!(matches!(err, Error::UnknownCheck(_)));
    }

    #[test]
    fn longitude_sum_not_applicable_for_virtual() {
        let r = run(&["longitude-sum"], &[catalog::get("vtrefoil").unwrap()], &VerifyOptions::default()).unwrap();
        assert!(r.outcomes.iter().all(|o| o.status == Status::NotApplicable));
    }

    #[test]
    fn hopf_mirror_pair_compares_isomorphic() {
        let c = compare(
            &catalog::get("hopf+").unwrap(),
            &catalog::get("hopf-").unwrap(),
            &FiniteRing::defaults(),
            IsoOptions::default(),
            512,
        )
        .unwrap();
        assert!(c.consistent());
        assert!(c.distinguishing_rings().is_empty());
    }
}
