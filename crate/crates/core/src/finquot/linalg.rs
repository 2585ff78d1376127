//! Dense linear algebra over a prime field `F_p`.

use std::fmt;

/// Modular inverse of a nonzero residue.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Row-major matrix with entries in `0..p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        Matrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn from_rows(p: u64, cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = x % p;
            }
        }
        m
    }

    pub fn from_columns(p: u64, rows: usize, cols: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(p, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = x % p;
            }
        }
        m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = x % self.p;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (a, b)| (acc + a * b) % self.p)
            })
            .collect()
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Matrix::zeros(self.p, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    out.data[idx] = (out.data[idx] + a * o.get(k, j)) % self.p;
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&o.data) {
            *x = (*x + y) % self.p;
        }
        out
    }

    pub fn scale(&self, k: u64) -> Matrix {
        let mut out = self.clone();
        for x in &mut out.data {
            *x = *x * (k % self.p) % self.p;
        }
        out
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.add(&o.scale(self.p - 1))
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.p, self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// `sum c_j A^j` for coefficients listed from the constant term up.
    pub fn eval_poly(&self, coeffs: &[u64]) -> Matrix {
        assert!(self.is_square());
        let mut out = Matrix::zeros(self.p, self.rows, self.rows);
        for &c in coeffs.iter().rev() {
            out = out.mul(self).add(&Matrix::identity(self.p, self.rows).scale(c));
        }
        out
    }

    pub fn pow(&self, e: u64) -> Matrix {
        let mut r = Matrix::identity(self.p, self.rows);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    pub fn rank(&self) -> usize {
        Subspace::new(self.p, self.cols, self.to_rows()).dim()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let p = self.p;
        let mut a: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| u64::from(i == j)));
                r
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r][col] != 0)?;
            a.swap(piv, col);
            let inv = inv_mod(a[col][col], p);
            for x in &mut a[col] {
                *x = *x * inv % p;
            }
            for r in 0..n {
                if r != col && a[r][col] != 0 {
                    let f = a[r][col];
                    for j in 0..2 * n {
                        a[r][j] = (a[r][j] + (p - f) * a[col][j]) % p;
                    }
                }
            }
        }
        let rows: Vec<Vec<u64>> = a.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(Matrix::from_rows(p, n, &rows))
    }

    /// Basis of `{v : A v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let s = Subspace::new(self.p, self.cols, self.to_rows());
        let free: Vec<usize> = s.non_pivots();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; self.cols];
                v[f] = 1;
                for (row, &pc) in s.rows.iter().zip(&s.pivots) {
                    v[pc] = (self.p - row[f]) % self.p;
                }
                v
            })
            .collect()
    }

    /// Solutions of `A x = b` as a particular solution plus a nullspace
    /// basis, or `None` when inconsistent.
    pub fn solve(&self, b: &[u64]) -> Option<(Vec<u64>, Vec<Vec<u64>>)> {
        assert_eq!(b.len(), self.rows);
        let p = self.p;
        let aug: Vec<Vec<u64>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i] % p);
                r
            })
            .collect();
        let s = Subspace::new(p, self.cols + 1, aug);
        if s.pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (row, &pc) in s.rows.iter().zip(&s.pivots) {
            x[pc] = row[self.cols];
        }
        Some((x, self.nullspace()))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix(p={}, {:?})", self.p, self.to_rows())
    }
}

/// A subspace of `F_p^n`, kept as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    p: u64,
    n: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u64, n: usize) -> Self {
        Subspace {
            p,
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: u64, n: usize) -> Self {
        Self::new(p, n, Matrix::identity(p, n).to_rows())
    }

    pub fn new<I>(p: u64, n: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<u64>>,
    {
        let mut s = Self::zero(p, n);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// The echelon basis; row `i` has a leading 1 in column `pivots()[i]`.
    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.n).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Adds a vector; returns false when it was already in the span.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.n);
        let p = self.p;
        let mut v = self.reduce(&v);
        let Some(lead) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[lead], p);
        for x in &mut v {
            *x = *x * inv % p;
        }
        for row in &mut self.rows {
            let f = row[lead];
            if f != 0 {
                for (r, x) in row.iter_mut().zip(&v) {
                    *r = (*r + (p - f) * x) % p;
                }
            }
        }
        let pos = self.pivots.partition_point(|&c| c < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, v);
        true
    }

    /// The coset representative of `v` with zeros at every pivot column,
    /// which is also the lexicographically least element of the coset.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = v[pc];
            if f != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + (p - f) * r) % p;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coords(&self, v: &[u64]) -> Option<Vec<u64>> {
        if self.contains(v) {
            Some(self.pivots.iter().map(|&c| v[c]).collect())
        } else {
            None
        }
    }

    /// Linear combination of the echelon basis.
    pub fn combine(&self, coords: &[u64]) -> Vec<u64> {
        let mut v = vec![0u64; self.n];
        for (row, &c) in self.rows.iter().zip(coords) {
            for (x, r) in v.iter_mut().zip(row) {
                *x = (*x + c * r) % self.p;
            }
        }
        v
    }

    pub fn is_subspace_of(&self, o: &Subspace) -> bool {
        self.rows.iter().all(|r| o.contains(r))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &o.rows {
            s.insert(r.clone());
        }
        s
    }

    /// Image under a matrix acting on column vectors.
    pub fn image(&self, m: &Matrix) -> Subspace {
        Subspace::new(self.p, m.num_rows(), self.rows.iter().map(|r| m.mul_vec(r)))
    }

    pub fn is_stable_under(&self, m: &Matrix) -> bool {
        self.rows.iter().all(|r| self.contains(&m.mul_vec(r)))
    }
}

/// All vectors of `F_p^n` in lexicographic order.
pub struct VectorIter {
    p: u64,
    cur: Option<Vec<u64>>,
}

impl VectorIter {
    pub fn new(p: u64, n: usize) -> Self {
        VectorIter {
            p,
            cur: Some(vec![0; n]),
        }
    }
}

impl Iterator for VectorIter {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.cur.clone()?;
        let mut next = out.clone();
        let mut i = next.len();
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < self.p {
                self.cur = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    }
}

pub fn vec_add(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| (x + y) % p).collect()
}

pub fn vec_sub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| (x + p - y) % p).collect()
}

pub fn vec_scale(p: u64, k: u64, a: &[u64]) -> Vec<u64> {
    a.iter().map(|x| x * (k % p) % p).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(5, 2, &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(Matrix::from_rows(5, 2, &[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn nullspace_and_solve() {
        let m = Matrix::from_rows(3, 3, &[vec![1, 1, 0], vec![0, 1, 1]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(|&x| x == 0));
        let (x, _) = m.solve(&[1, 2]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![1, 2]);
        let z = Matrix::from_rows(3, 1, &[vec![0]]);
        assert!(z.solve(&[1]).is_none());
    }

    #[test]
    fn reduce_gives_least_coset_member() {
        let s = Subspace::new(3, 3, vec![vec![0, 2, 1]]);
        let v = vec![1, 1, 1];
        let r = s.reduce(&v);
        let least = (0..3u64)
            .map(|k| vec_add(3, &v, &vec_scale(3, k, &[0, 2, 1])))
            .min()
            .unwrap();
        assert_eq!(r, least);
    }

    #[test]
    fn vector_iter_counts() {
        assert_eq!(VectorIter::new(3, 2).count(), 9);
        assert_eq!(VectorIter::new(2, 0).count(), 1);
        let v: Vec<_> = VectorIter::new(2, 2).collect();
        assert_eq!(v, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
