//! Quandle isomorphism by backtracking over images of a generating set.
//!
//! Elements are first sorted into classes by isomorphism invariants (orbit
//! size under the inner group, cycle type of the right translation, number
//! of elements fixing them). A generating set is chosen from the rarest
//! classes, and every other element is recorded as a derivation `x ▷ y` or
//! `x ◁ y` from earlier ones, so a choice of generator images determines the
//! whole map.

use std::collections::HashMap;

use super::{FiniteQuandle, QuandleError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuandleIsoOptions {
    pub max_size: usize,
    /// Largest number of generator-image assignments tried.
    pub max_nodes: u64,
}

impl Default for QuandleIsoOptions {
    fn default() -> Self {
        QuandleIsoOptions {
            max_size: 512,
            max_nodes: 1_000_000,
        }
    }
}

type Signature = (usize, Vec<usize>, usize);

fn signatures(q: &FiniteQuandle) -> Vec<Signature> {
    let n = q.size();
    // orbits of the inner group via union-find on x ~ x ▷ y
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = x;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for x in 0..n {
        for y in 0..n {
            let (a, b) = (find(&mut parent, x), find(&mut parent, q.op(x, y)));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    let mut orbit_size = vec![0usize; n];
    for &r in &roots {
        orbit_size[r] += 1;
    }
    (0..n)
        .map(|x| {
            let mut seen = vec![false; n];
            let mut cycles = Vec::new();
            for s in 0..n {
                if seen[s] {
                    continue;
                }
                let mut len = 0;
                let mut c = s;
                while !seen[c] {
                    seen[c] = true;
                    len += 1;
                    c = q.op(c, x);
                }
                cycles.push(len);
            }
            cycles.sort_unstable();
            let fixers = (0..n).filter(|&y| q.op(x, y) == x).count();
            (orbit_size[roots[x]], cycles, fixers)
        })
        .collect()
}

#[derive(Clone, Copy, Debug)]
enum Step {
    Generator,
    Right(usize, usize),
    RightInverse(usize, usize),
}

/// A straight-line program covering every element: generators are taken
/// from `order` as needed, and every other element is derived from earlier
/// ones by one operation.
fn program(q: &FiniteQuandle, inv: &[Vec<usize>], order: &[usize]) -> Vec<(usize, Step)> {
    let n = q.size();
    let mut have = vec![false; n];
    let mut prog: Vec<(usize, Step)> = Vec::with_capacity(n);
    let mut members: Vec<usize> = Vec::new();
    for &g in order {
        if have[g] {
            continue;
        }
        have[g] = true;
        prog.push((g, Step::Generator));
        members.push(g);
        let mut i = members.len() - 1;
        while i < members.len() {
            let z = members[i];
            let mut j = 0;
            while j <= i {
                let s = members[j];
                for (val, step) in [
                    (q.op(z, s), Step::Right(z, s)),
                    (q.op(s, z), Step::Right(s, z)),
                    (inv[z][s], Step::RightInverse(z, s)),
                    (inv[s][z], Step::RightInverse(s, z)),
                ] {
                    if !have[val] {
                        have[val] = true;
                        prog.push((val, step));
                        members.push(val);
                    }
                }
                j += 1;
            }
            i += 1;
        }
        if members.len() == n {
            break;
        }
    }
    prog
}

/// Searches for an operation-preserving bijection `q1 -> q2`, returned as
/// the image of each element. `Ok(None)` means none exists.
pub fn quandle_iso_search(
    q1: &FiniteQuandle,
    q2: &FiniteQuandle,
    opts: QuandleIsoOptions,
) -> Result<Option<Vec<usize>>, QuandleError> {
    let n = q1.size();
    if n != q2.size() {
        return Ok(None);
    }
    if n > opts.max_size {
        return Err(QuandleError::budget("quandle isomorphism search", n as u64, opts.max_size as u64));
    }
    let (Some(inv1), Some(inv2)) = (q1.right_inverse_table(), q2.right_inverse_table()) else {
        return Err(QuandleError::Shape("right translations must be bijective".into()));
    };
    let s1 = signatures(q1);
    let s2 = signatures(q2);
    let mut c1: HashMap<&Signature, usize> = HashMap::new();
    let mut c2: HashMap<&Signature, usize> = HashMap::new();
    for s in &s1 {
        *c1.entry(s).or_default() += 1;
    }
    for s in &s2 {
        *c2.entry(s).or_default() += 1;
    }
    if c1 != c2 {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (c1[&s1[x]], x));
    let prog = program(q1, &inv1, &order);

    let mut by_sig: HashMap<&Signature, Vec<usize>> = HashMap::new();
    for (y, s) in s2.iter().enumerate() {
        by_sig.entry(s).or_default().push(y);
    }

    let mut st = State {
        q1,
        q2,
        inv2: &inv2,
        s1: &s1,
        s2: &s2,
        prog: &prog,
        by_sig: &by_sig,
        map: vec![usize::MAX; n],
        used: vec![false; n],
        nodes: 0,
        max_nodes: opts.max_nodes,
    };
    if st.extend(0)? {
        Ok(Some(st.map))
    } else {
        Ok(None)
    }
}

struct State<'a> {
    q1: &'a FiniteQuandle,
    q2: &'a FiniteQuandle,
    inv2: &'a [Vec<usize>],
    s1: &'a [Signature],
    s2: &'a [Signature],
    prog: &'a [(usize, Step)],
    by_sig: &'a HashMap<&'a Signature, Vec<usize>>,
    map: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    max_nodes: u64,
}

impl State<'_> {
    /// Assigns the program from position `pos` on.
    fn extend(&mut self, pos: usize) -> Result<bool, QuandleError> {
        if pos == self.prog.len() {
            return Ok(self.is_homomorphism());
        }
        let (x, step) = self.prog[pos];
        match step {
            Step::Generator => {
                let candidates = self.by_sig[&self.s1[x]].clone();
                for y in candidates {
                    if self.used[y] {
                        continue;
                    }
                    self.nodes += 1;
                    if self.nodes > self.max_nodes {
                        return Err(QuandleError::budget(
                            "quandle isomorphism search nodes",
                            self.nodes,
                            self.max_nodes,
                        ));
                    }
                    self.assign(x, y);
                    if self.extend(pos + 1)? {
                        return Ok(true);
                    }
                    self.unassign(x, y);
                }
                Ok(false)
            }
            Step::Right(a, b) | Step::RightInverse(a, b) => {
                let (fa, fb) = (self.map[a], self.map[b]);
                let y = if matches!(step, Step::Right(..)) {
                    self.q2.op(fa, fb)
                } else {
                    self.inv2[fa][fb]
                };
                if self.used[y] || self.s2[y] != self.s1[x] {
                    return Ok(false);
                }
                self.assign(x, y);
                if self.extend(pos + 1)? {
                    return Ok(true);
                }
                self.unassign(x, y);
                Ok(false)
            }
        }
    }

    fn assign(&mut self, x: usize, y: usize) {
        self.map[x] = y;
        self.used[y] = true;
    }

    fn unassign(&mut self, x: usize, y: usize) {
        self.map[x] = usize::MAX;
        self.used[y] = false;
    }

    fn is_homomorphism(&self) -> bool {
        let n = self.q1.size();
        (0..n).all(|x| (0..n).all(|y| self.map[self.q1.op(x, y)] == self.q2.op(self.map[x], self.map[y])))
    }
}

/// True iff `f` is an operation-preserving bijection.
pub fn is_isomorphism(q1: &FiniteQuandle, q2: &FiniteQuandle, f: &[usize]) -> bool {
    let n = q1.size();
    if q2.size() != n || f.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &y in f {
        if y >= n || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    (0..n).all(|x| (0..n).all(|y| f[q1.op(x, y)] == q2.op(f[x], f[y])))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The dihedral quandle `x ▷ y = 2y - x mod n`.
    fn dihedral(n: usize) -> FiniteQuandle {
        let table = (0..n).map(|x| (0..n).map(|y| (2 * y + n - x) % n).collect()).collect();
        FiniteQuandle::new((0..n).map(|i| i.to_string()).collect(), table, None).unwrap()
    }

    #[test]
    fn identical_tables() {
        let q = dihedral(5);
        let f = quandle_iso_search(&q, &q, QuandleIsoOptions::default()).unwrap().unwrap();
        assert!(is_isomorphism(&q, &q, &f));
    }

    #[test]
    fn relabeled_tables() {
        let q = dihedral(7);
        let perm: Vec<usize> = (0..7).map(|i| (3 * i + 2) % 7).collect();
        let mut inv = vec![0; 7];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let table = (0..7)
            .map(|a| (0..7).map(|b| perm[q.op(inv[a], inv[b])]).collect())
            .collect();
        let q2 = FiniteQuandle::new(q.elements().to_vec(), table, None).unwrap();
        let f = quandle_iso_search(&q, &q2, QuandleIsoOptions::default()).unwrap().unwrap();
        assert!(is_isomorphism(&q, &q2, &f));
    }

    #[test]
    fn distinct_size_three_quandles() {
        let triv = FiniteQuandle::trivial(3);
        let d3 = dihedral(3);
        assert_eq!(quandle_iso_search(&triv, &d3, QuandleIsoOptions::default()).unwrap(), None);
    }

    #[test]
    fn size_budget() {
        let q = FiniteQuandle::trivial(4);
        let opts = QuandleIsoOptions { max_size: 3, ..Default::default() };
        assert!(quandle_iso_search(&q, &q, opts).unwrap_err().is_budget());
    }
}
