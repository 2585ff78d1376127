use proptest::prelude::*;

use quandlekit::alexmod::{alexander_polynomial, exponent_sum, fox_image_letters, reduced_presentation, Letter};
use quandlekit::finquot::linalg::Matrix;
use quandlekit::finquot::{iso_search, FiniteModule, FiniteRing, IsoOptions, LinkShadow};
use quandlekit::laurent::LaurentPoly;
use quandlekit::linkdiag::catalog;
use quandlekit::quandle::iso::is_isomorphism;
use quandlekit::quandle::{mq_of_link, quandle_iso_search, FiniteQuandle, QuandleIsoOptions};

fn poly(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, nvars), -5i64..=5), 0..5)
        .prop_map(move |terms| LaurentPoly::from_terms(nvars, terms))
}

fn ring() -> impl Strategy<Value = FiniteRing> {
    let mut all = FiniteRing::defaults();
    all.extend(FiniteRing::probes());
    prop::sample::select(all)
}

fn ring_and_elements() -> impl Strategy<Value = (FiniteRing, Vec<u64>, Vec<u64>, Vec<u64>)> {
    ring().prop_flat_map(|r| {
        let el = prop::collection::vec(0..r.p(), r.degree());
        (Just(r), el.clone(), el.clone(), el)
    })
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in poly(2), b in poly(2), c in poly(2)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(2), a.clone());
    }

    #[test]
    fn augmentation_and_tau_are_homomorphisms(a in poly(2), b in poly(2)) {
        prop_assert_eq!((&a * &b).augment(), a.augment() * b.augment());
        prop_assert_eq!((&a + &b).augment(), a.augment() + b.augment());
        prop_assert_eq!((&a * &b).reduce_tau(), &a.reduce_tau() * &b.reduce_tau());
        prop_assert_eq!((&a + &b).reduce_tau(), &a.reduce_tau() + &b.reduce_tau());
        prop_assert_eq!(a.reduce_tau().augment(), a.augment());
    }

    #[test]
    fn laurent_text_round_trips(a in poly(2), b in poly(1)) {
        prop_assert_eq!(LaurentPoly::parse_in(&a.to_string(), 2).unwrap(), a);
        prop_assert_eq!(LaurentPoly::parse_in(&b.to_string(), 1).unwrap(), b);
    }

    #[test]
    fn finite_ring_axioms((r, a, b, c) in ring_and_elements()) {
        prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        prop_assert_eq!(r.add(&a, &r.neg(&a)), r.zero());
        match r.inverse(&a) {
            Some(i) => prop_assert_eq!(r.mul(&a, &i), r.one()),
            None => prop_assert!(!r.is_unit(&a)),
        }
    }

    #[test]
    fn specialization_is_a_ring_map(r in ring(), a in poly(1), b in poly(1)) {
        prop_assert_eq!(r.from_laurent(&(&a * &b)), r.mul(&r.from_laurent(&a), &r.from_laurent(&b)));
        prop_assert_eq!(r.from_laurent(&(&a + &b)), r.add(&r.from_laurent(&a), &r.from_laurent(&b)));
    }

    /// `F(uv) = F(u) + t^e(u) F(v)` and `F(u u^-1) = 0` on the trefoil's arcs.
    #[test]
    fn fox_image_is_a_cocycle(
        u in prop::collection::vec((0usize..3, any::<bool>()), 0..6),
        v in prop::collection::vec((0usize..3, any::<bool>()), 0..6),
    ) {
        let d = catalog::get("trefoil").unwrap();
        let word = |w: &[(usize, bool)]| -> Vec<Letter> { w.iter().map(|&(arc, inverse)| Letter { arc, inverse }).collect() };
        let (u, v) = (word(&u), word(&v));
        let uv: Vec<Letter> = u.iter().chain(&v).copied().collect();
        let shift = LaurentPoly::from_dense(exponent_sum(&u), &[1]);
        let lhs = fox_image_letters(&d, &uv);
        let rhs = fox_image_letters(&d, &u).add(&fox_image_letters(&d, &v).scale(&shift));
        prop_assert_eq!(lhs, rhs);
        let inv: Vec<Letter> = u.iter().rev().map(|l| Letter { arc: l.arc, inverse: !l.inverse }).collect();
        let uu: Vec<Letter> = u.iter().chain(&inv).copied().collect();
        prop_assert!(fox_image_letters(&d, &uu).is_zero());
    }

    /// A module and its conjugate by a random change of basis are isomorphic.
    #[test]
    fn module_iso_finds_change_of_basis(link in 0usize..10, r in ring(), seed in prop::collection::vec(0u64..1000, 64)) {
        let d = &catalog::all()[link];
        let s = LinkShadow::new(d, &r).unwrap();
        let m = s.module();
        let n = m.dim();
        prop_assume!(n > 0 && m.cardinality().is_some_and(|c| c <= 4096));
        let rows: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| seed[(i * n + j) % 64] % m.p()).collect()).collect();
        let basis = Matrix::from_rows(m.p(), n, &rows);
        let Some(inv) = basis.inverse() else { return Ok(()) };
        let conj = basis.mul(m.t_action()).mul(&inv);
        let m2 = FiniteModule::new(r.clone(), conj, m.labels().to_vec()).unwrap();
        let f = iso_search(m, &m2, &[], IsoOptions::default()).unwrap();
        prop_assert!(f.as_ref().is_some_and(|f| f.is_isomorphism()));
    }

    #[test]
    fn quandle_iso_finds_relabeling(link in 0usize..10, r in ring(), keys in prop::collection::vec(any::<u32>(), 512)) {
        let d = &catalog::all()[link];
        let Ok(q) = mq_of_link(d, &r, 128) else { return Ok(()) };
        let n = q.size();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&i| (keys[i], i));
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let table = (0..n).map(|a| (0..n).map(|b| perm[q.op(inv[a], inv[b])]).collect()).collect();
        let q2 = FiniteQuandle::new(q.elements().to_vec(), table, None).unwrap();
        let f = quandle_iso_search(&q, &q2, QuandleIsoOptions::default()).unwrap();
        prop_assert!(f.is_some_and(|f| is_isomorphism(&q, &q2, &f)));
    }
}

#[test]
fn mirror_reverses_t() {
    for (a, b) in [("trefoil", "trefoil-mirror"), ("hopf+", "hopf-")] {
        let d = catalog::get(a).unwrap();
        let m = catalog::get(b).unwrap();
        let delta = alexander_polynomial(&reduced_presentation(&d)).unwrap();
        assert_eq!(alexander_polynomial(&reduced_presentation(&m)).unwrap(), delta);
        for r in FiniteRing::defaults().into_iter().chain(FiniteRing::probes()) {
            let mirror = LinkShadow::new(&m, &r).unwrap();
            let plain = LinkShadow::new(&d, &r.reciprocal()).unwrap();
            let twisted = plain.module().twisted();
            assert_eq!(twisted.ring(), &r);
            let f = iso_search(mirror.module(), &twisted, &[], IsoOptions::default()).unwrap();
            assert!(f.is_some(), "{a} and {b} over {r}");
        }
    }
}

#[test]
fn reidemeister_one_in_probe_rings() {
    let a = catalog::get("unknot").unwrap();
    let b = catalog::get("unknot-kink").unwrap();
    for r in FiniteRing::probes() {
        let sa = LinkShadow::new(&a, &r).unwrap();
        let sb = LinkShadow::new(&b, &r).unwrap();
        assert!(iso_search(sa.module(), sb.module(), &[], IsoOptions::default()).unwrap().is_some());
        let qa = mq_of_link(&a, &r, 512).unwrap();
        let qb = mq_of_link(&b, &r, 512).unwrap();
        assert!(quandle_iso_search(&qa, &qb, QuandleIsoOptions::default()).unwrap().is_some());
    }
}
