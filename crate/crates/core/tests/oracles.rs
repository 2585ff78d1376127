//! Library results against brute-force computations written independently
//! of the library's linear algebra.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use quandlekit::alexmod::reduced_presentation;
use quandlekit::finquot::{annihilator, FiniteRing, LinkShadow};
use quandlekit::laurent::LaurentPoly;
use quandlekit::linkdiag::{catalog, Diagram};
use quandlekit::quandle::iso::is_isomorphism;
use quandlekit::quandle::{build_medial, mq_input, mq_of_link, quandle_iso_search, FiniteQuandle, QuandleIsoOptions};

fn all_rings() -> Vec<FiniteRing> {
    let mut r = FiniteRing::defaults();
    r.extend(FiniteRing::probes());
    r
}

/// `F_p[t]/(q)` with schoolbook arithmetic on coefficient vectors.
struct Naive {
    p: u64,
    q: Vec<u64>,
}

impl Naive {
    fn of(r: &FiniteRing) -> Self {
        Naive { p: r.p(), q: r.modulus().to_vec() }
    }

    fn d(&self) -> usize {
        self.q.len() - 1
    }

    fn reduce(&self, mut a: Vec<u64>) -> Vec<u64> {
        let d = self.d();
        while a.len() > d {
            let c = a.pop().unwrap();
            let shift = a.len() - d;
            for i in 0..d {
                a[shift + i] = (a[shift + i] + self.p - c * self.q[i] % self.p) % self.p;
            }
        }
        a.resize(d, 0);
        a
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut c = vec![0; a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                c[i + j] = (c[i + j] + x * y) % self.p;
            }
        }
        self.reduce(c)
    }

    fn all(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for _ in 0..self.d() {
            out = out.into_iter().flat_map(|v| (0..self.p).map(move |c| [v.clone(), vec![c]].concat())).collect();
        }
        out
    }

    fn t(&self) -> Vec<u64> {
        self.reduce(vec![0, 1])
    }

    fn t_inv(&self) -> Vec<u64> {
        let one = self.reduce(vec![1]);
        self.all().into_iter().find(|x| self.mul(x, &self.t()) == one).expect("t is a unit")
    }

    fn power(&self, base: &[u64], n: u64) -> Vec<u64> {
        (0..n).fold(self.reduce(vec![1]), |acc, _| self.mul(&acc, base))
    }

    fn eval(&self, f: &LaurentPoly) -> Vec<u64> {
        let mut acc = vec![0; self.d()];
        for (e, c) in f.terms() {
            let k = e[0];
            let m = if k >= 0 { self.power(&self.t(), k as u64) } else { self.power(&self.t_inv(), (-k) as u64) };
            let p = BigInt::from(self.p);
            let c = u64::try_from(((c % &p) + &p) % &p).unwrap();
            for (a, x) in acc.iter_mut().zip(m) {
                *a = (*a + c * x) % self.p;
            }
        }
        acc
    }
}

/// Size of the `F_p`-span of `gens`, by closing a set under addition of
/// multiples. Returns `None` once it exceeds `limit`.
fn span_size(p: u64, gens: &[Vec<u64>], limit: usize) -> Option<usize> {
    let n = gens.first().map_or(0, Vec::len);
    let mut span: HashSet<Vec<u64>> = HashSet::from([vec![0; n]]);
    for g in gens {
        if span.contains(g) {
            continue;
        }
        let mut next = HashSet::new();
        for s in &span {
            for c in 0..p {
                next.insert(s.iter().zip(g).map(|(a, b)| (a + c * b) % p).collect::<Vec<u64>>());
            }
        }
        span = next;
        if span.len() > limit {
            return None;
        }
    }
    Some(span.len())
}

fn log_p(p: u64, mut n: usize) -> usize {
    let mut k = 0;
    while n > 1 {
        assert_eq!(n % p as usize, 0);
        n /= p as usize;
        k += 1;
    }
    k
}

#[test]
fn specialized_dimensions_match_span_enumeration() {
    let mut checked = 0;
    for d in catalog::all() {
        let pres = reduced_presentation(&d);
        let g = pres.generators().len();
        for r in all_rings() {
            let n = Naive::of(&r);
            let mut gens = Vec::new();
            for row in pres.rows() {
                let entries: Vec<Vec<u64>> = row.iter().map(|f| n.eval(f)).collect();
                for k in 0..n.d() {
                    let tk = n.power(&n.t(), k as u64);
                    gens.push(entries.iter().flat_map(|e| n.mul(e, &tk)).collect());
                }
            }
            let Some(size) = span_size(n.p, &gens, 200_000) else { continue };
            let rank = if gens.is_empty() { 0 } else { log_p(n.p, size) };
            let s = LinkShadow::new(&d, &r).unwrap();
            assert_eq!(s.module().dim(), g * n.d() - rank, "{} over {r}", d.name());
            checked += 1;
        }
    }
    assert!(checked >= 60, "only {checked} cases checked");
}

#[test]
fn kernel_and_annihilator_match_enumeration() {
    for d in catalog::all() {
        for r in all_rings() {
            let s = LinkShadow::new(&d, &r).unwrap();
            let m = s.module();
            if m.cardinality().is_none_or(|c| c > 4096) {
                continue;
            }
            let p = m.p();
            let ann = annihilator(m, &(LaurentPoly::one(1) - LaurentPoly::t()));
            let (mut ker_count, mut ann_count) = (0usize, 0usize);
            for x in m.elements() {
                let in_ker = s.phi().apply(&x).iter().all(|&c| c == 0);
                assert_eq!(in_ker, s.kernel().contains(&x), "{} over {r}", d.name());
                ker_count += in_ker as usize;
                let tx = m.act_t(&x);
                let killed = x.iter().zip(&tx).all(|(a, b)| a == b);
                assert_eq!(killed, ann.contains(&x));
                ann_count += killed as usize;
            }
            assert_eq!(ker_count, p.pow(s.kernel().dim() as u32) as usize);
            assert_eq!(ann_count, p.pow(ann.dim() as u32) as usize);
        }
    }
}

#[test]
fn medial_tables_match_direct_formula() {
    for d in catalog::all() {
        for r in all_rings() {
            let s = LinkShadow::new(&d, &r).unwrap();
            let inp = mq_input(&s);
            let Ok(q) = build_medial(&inp, 512) else { continue };
            let amb = &inp.ambient;
            let n_elems: Vec<Vec<u64>> = inp.n.elements().collect();
            let x_elems: Vec<Vec<Vec<u64>>> = inp.x.iter().map(|x| x.elements().collect()).collect();
            let coset_min = |i: usize, v: &[u64]| -> Vec<u64> {
                x_elems[i].iter().map(|x| amb.add(v, x)).min().unwrap()
            };
            // least representatives of N/X_i, in order, per block
            let reps: Vec<Vec<Vec<u64>>> = (0..inp.m.len())
                .map(|i| n_elems.iter().map(|v| coset_min(i, v)).collect::<BTreeSet<_>>().into_iter().collect())
                .collect();
            let flat: Vec<(usize, &Vec<u64>)> =
                reps.iter().enumerate().flat_map(|(i, rs)| rs.iter().map(move |v| (i, v))).collect();
            assert_eq!(flat.len(), q.size());
            for (a, (i, x)) in flat.iter().enumerate() {
                for (b, (j, y)) in flat.iter().enumerate() {
                    let tx = amb.act_t(x);
                    let ty = amb.act_t(y);
                    let omt_y = amb.sub(y, &ty);
                    let v = amb.add(&amb.add(&amb.sub(&inp.m[*j], &inp.m[*i]), &tx), &omt_y);
                    let want = coset_min(*i, &v);
                    let (bi, bv) = flat[q.op(a, b)];
                    assert_eq!((bi, bv), (*i, &want), "{} over {r}", d.name());
                }
            }
        }
    }
}

#[test]
fn solomon_blocks_have_equal_size() {
    let q = mq_of_link(&catalog::get("solomon").unwrap(), &FiniteRing::parse(3, "t + 1").unwrap(), 512).unwrap();
    let sizes = q.block_sizes();
    assert_eq!(sizes.len(), 2);
    assert_eq!(sizes[0], sizes[1]);
}

fn is_quandle(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    (0..n).all(|x| t[x][x] == x)
        && (0..n).all(|y| (0..n).map(|x| t[x][y]).collect::<HashSet<_>>().len() == n)
        && (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| t[t[x][y]][z] == t[t[x][z]][t[y][z]])))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn brute_isomorphic(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let n = a.len();
    permutations(n).iter().any(|f| (0..n).all(|x| (0..n).all(|y| f[a[x][y]] == b[f[x]][f[y]])))
}

#[test]
fn size_three_quandles_by_exhaustive_enumeration() {
    let mut quandles = Vec::new();
    for code in 0..3usize.pow(9) {
        let t: Vec<Vec<usize>> = (0..3).map(|x| (0..3).map(|y| code / 3usize.pow((3 * x + y) as u32) % 3).collect()).collect();
        let q = FiniteQuandle::new((0..3).map(|i| i.to_string()).collect(), t.clone(), None).unwrap();
        assert_eq!(q.check_axioms().is_ok(), is_quandle(&t));
        if is_quandle(&t) {
            quandles.push(q);
        }
    }
    let mut classes: Vec<&FiniteQuandle> = Vec::new();
    for q in &quandles {
        if !classes.iter().any(|c| brute_isomorphic(c.table(), q.table())) {
            classes.push(q);
        }
    }
    // trivial, dihedral, and the one with a fixed point swapping the others
    assert_eq!(classes.len(), 3);
    for a in &quandles {
        for b in &quandles {
            let found = quandle_iso_search(a, b, QuandleIsoOptions::default()).unwrap();
            assert_eq!(found.is_some(), brute_isomorphic(a.table(), b.table()));
            if let Some(f) = found {
                assert!(is_isomorphism(a, b, &f));
            }
        }
    }
}

#[test]
fn catalog_text_round_trips() {
    for d in catalog::all() {
        assert_eq!(Diagram::parse(&d.to_text()).unwrap(), d);
    }
}
