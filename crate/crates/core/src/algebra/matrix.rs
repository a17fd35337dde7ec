use std::fmt;

use super::{Field, PolyRing, Polynomial, Ring};

/// Dense row-major matrix over a ring descriptor.
///
/// Shape mismatches in arithmetic are programming errors and panic.
#[derive(Clone, PartialEq)]
pub struct Matrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| self.ring.format(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<R: Ring> Matrix<R> {
    pub fn new(ring: R, rows: usize, cols: usize, data: Vec<R::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        Matrix {
            ring,
            rows,
            cols,
            data,
        }
    }

    pub fn from_fn(
        ring: R,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> R::Elem,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix::new(ring, rows, cols, data)
    }

    /// Panics on ragged input.
    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(ring: R, rows: usize, cols: &[Vec<R::Elem>]) -> Self {
        assert!(cols.iter().all(|c| c.len() == rows));
        Matrix::from_fn(ring, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    /// Integer entries.
    pub fn from_ints(ring: R, rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|row| row.iter().map(|&x| ring.from_int(x)).collect())
            .collect();
        Matrix::from_rows(ring, data)
    }

    pub fn zeros(ring: R, rows: usize, cols: usize) -> Self {
        let z = ring.zero();
        Matrix::new(ring, rows, cols, vec![z; rows * cols])
    }

    pub fn identity(ring: R, n: usize) -> Self {
        Self::scalar(ring.clone(), n, ring.one())
    }

    pub fn scalar(ring: R, n: usize, c: R::Elem) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[R::Elem] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<R::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<S: Ring>(&self, target: S, f: impl Fn(&R::Elem) -> S::Elem) -> Matrix<S> {
        let data = self.data.iter().map(f).collect();
        Matrix::new(target, self.rows, self.cols, data)
    }

    /// Fallible entrywise map.
    pub fn try_map<S: Ring, E>(
        &self,
        target: S,
        f: impl Fn(&R::Elem) -> Result<S::Elem, E>,
    ) -> Result<Matrix<S>, E> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(Matrix::new(target, self.rows, self.cols, data))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.ring.is_zero(x))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.ring.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.ring.sub(a, b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&R::Elem, &R::Elem) -> R::Elem) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f(a, b))
            .collect();
        Matrix::new(self.ring.clone(), self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Self {
        self.map(self.ring.clone(), |a| self.ring.neg(a))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        self.map(self.ring.clone(), |a| self.ring.mul(c, a))
    }

    /// `self + c * I`.
    pub fn add_scalar(&self, c: &R::Elem) -> Self {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = self.ring.add(m.get(i, i), c);
            m.set(i, i, v);
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let r = &self.ring;
        let mut out = vec![r.zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if r.is_zero(b) {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out[idx] = r.add(&out[idx], &r.mul(a, b));
                }
            }
        }
        Matrix::new(r.clone(), self.rows, other.cols, out)
    }

    pub fn mul_vec(&self, v: &[R::Elem]) -> Vec<R::Elem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.ring.zero(), |acc, (a, b)| {
                        self.ring.add(&acc, &self.ring.mul(a, b))
                    })
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.ring.clone(), self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn trace(&self) -> R::Elem {
        assert!(self.is_square());
        (0..self.rows).fold(self.ring.zero(), |acc, i| {
            self.ring.add(&acc, self.get(i, i))
        })
    }

    /// Standard Kronecker product: block `(i, j)` is `self[i][j] * other`.
    pub fn kronecker(&self, other: &Self) -> Self {
        let (p, q) = (other.rows, other.cols);
        Matrix::from_fn(self.ring.clone(), self.rows * p, self.cols * q, |i, j| {
            self.ring
                .mul(self.get(i / p, j / q), other.get(i % p, j % q))
        })
    }

    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        Matrix::from_fn(self.ring.clone(), h, w, |i, j| {
            self.get(r0 + i, c0 + j).clone()
        })
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    /// Evaluates a polynomial at this (square) matrix by Horner's rule.
    pub fn eval_poly(&self, p: &Polynomial<R::Elem>) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        p.coeffs()
            .iter()
            .rev()
            .fold(Self::zeros(self.ring.clone(), n, n), |acc, c| {
                acc.mul(self).add_scalar(c)
            })
    }

    /// Minimal `k >= 1` with `self^k = 0`, or `None` when not nilpotent.
    /// A square matrix of size `n` is nilpotent iff its `n`-th power
    /// vanishes.
    pub fn nilpotency_index(&self) -> Option<usize> {
        assert!(self.is_square());
        let mut power = self.clone();
        for k in 1..=self.rows.max(1) {
            if power.is_zero() {
                return Some(k);
            }
            power = power.mul(self);
        }
        None
    }
}

impl<F: Field> Matrix<F> {
    /// Reduced row echelon form with leftmost-nonzero pivoting, plus the
    /// pivot columns in increasing order.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.ring;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&i| !f.is_zero(m.get(i, col))) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = f.inv(m.get(row, col)).unwrap();
            for j in col..m.cols {
                let v = f.mul(m.get(row, j), &inv);
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row {
                    continue;
                }
                let factor = m.get(i, col).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in col..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(row, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel: one vector per free column (ascending),
    /// with a one in that column.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.ring;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(i, fc));
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> F::Elem {
        assert!(self.is_square());
        let f = &self.ring;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = f.one();
        for col in 0..n {
            let Some(pr) = (col..n).find(|&i| !f.is_zero(m.get(i, col))) else {
                return f.zero();
            };
            if pr != col {
                m.swap_rows(pr, col);
                det = f.neg(&det);
            }
            let pivot = m.get(col, col).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).unwrap();
            for i in col + 1..n {
                let factor = f.mul(m.get(i, col), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in col..n {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(col, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Matrix::zeros(self.ring.clone(), n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Self::identity(self.ring.clone(), n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Characteristic polynomial `det(x I - A)` via Hessenberg reduction.
    pub fn charpoly(&self) -> Polynomial<F::Elem> {
        assert!(self.is_square());
        let f = &self.ring;
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !f.is_zero(h.get(i, m - 1))) else {
                continue;
            };
            if i != m {
                h.swap_rows(i, m);
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let inv = f.inv(h.get(m, m - 1)).unwrap();
            for i in m + 1..n {
                let u = f.mul(h.get(i, m - 1), &inv);
                if f.is_zero(&u) {
                    continue;
                }
                for j in 0..n {
                    let v = f.sub(h.get(i, j), &f.mul(&u, h.get(m, j)));
                    h.set(i, j, v);
                }
                for r in 0..n {
                    let v = f.add(h.get(r, m), &f.mul(&u, h.get(r, i)));
                    h.set(r, m, v);
                }
            }
        }
        let polys = PolyRing::new(f.clone());
        let mut p: Vec<Polynomial<F::Elem>> = vec![polys.one()];
        for m in 1..=n {
            let mut next = polys.mul(&polys.linear(h.get(m - 1, m - 1)), &p[m - 1]);
            let mut sub = f.one();
            for i in (1..m).rev() {
                sub = f.mul(&sub, h.get(i, i - 1));
                let c = f.mul(h.get(i - 1, m - 1), &sub);
                next = polys.sub(&next, &polys.scale(&p[i - 1], &c));
            }
            p.push(next);
        }
        p.pop().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, PrimeField, Rationals};
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Matrix<Rationals> {
        Matrix::from_ints(Rationals, rows)
    }

    #[test]
    fn kernel_examples() {
        // residue of K at t = 0
        let a1 = Matrix::from_rows(
            Rationals,
            vec![vec![rat(0, 1), rat(0, 1)], vec![rat(-1, 2), rat(-1, 2)]],
        );
        let k = a1.kernel_basis();
        assert_eq!(k, vec![vec![rat(-1, 1), rat(1, 1)]]);
        assert!(a1.mul_vec(&k[0]).iter().all(|x| x == &rat(0, 1)));
        assert!(Matrix::identity(Rationals, 3).kernel_basis().is_empty());
        let z = Matrix::zeros(Rationals, 3, 3).kernel_basis();
        assert_eq!(z.len(), 3);
        assert_eq!(z[1], vec![rat(0, 1), rat(1, 1), rat(0, 1)]);
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(Matrix::zeros(Rationals, 3, 3).nilpotency_index(), Some(1));
        assert_eq!(q(&[&[0, 1], &[0, 0]]).nilpotency_index(), Some(2));
        assert_eq!(
            q(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]).nilpotency_index(),
            Some(3)
        );
        assert_eq!(q(&[&[2, 1], &[1, 1]]).nilpotency_index(), None);
        assert_eq!(q(&[&[1, 0], &[0, 0]]).nilpotency_index(), None);
    }

    #[test]
    fn kronecker_examples() {
        let i6 = Matrix::identity(Rationals, 2).kronecker(&Matrix::identity(Rationals, 3));
        assert_eq!(i6, Matrix::identity(Rationals, 6));
        assert_eq!(q(&[&[3]]).kronecker(&q(&[&[-4]])), q(&[&[-12]]));
        let k = q(&[&[1, 2], &[3, 4]]).kronecker(&q(&[&[0, 5], &[6, 7]]));
        assert_eq!(k.get(3, 2), &rat(24, 1));
        assert_eq!(k.get(1, 3), &rat(14, 1));
    }

    #[test]
    fn charpoly_examples() {
        // x^2 - 5x - 2
        let p = q(&[&[1, 2], &[3, 4]]).charpoly();
        assert_eq!(p.coeffs(), &[rat(-2, 1), rat(-5, 1), rat(1, 1)]);
        // needs a row swap during Hessenberg reduction
        let a = q(&[&[1, 2, 3], &[0, 4, 5], &[7, 0, 6]]);
        let p = a.charpoly();
        assert_eq!(p.coeffs()[0], -a.det());
        assert_eq!(p.coeffs()[2], -a.trace());
        assert!(a.eval_poly(&p).is_zero());
    }

    #[test]
    fn inverse_and_det() {
        let a = q(&[&[2, 1], &[7, 4]]);
        assert_eq!(a.det(), rat(1, 1));
        assert_eq!(a.mul(&a.inverse().unwrap()), Matrix::identity(Rationals, 2));
        assert!(q(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(q(&[&[0, 1], &[1, 0]]).det(), rat(-1, 1));
    }

    fn small_matrix(n: usize, m: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(-3i64..4, m), n)
    }

    proptest! {
        #[test]
        fn rank_nullity_rationals(n in 1usize..7, m in 1usize..7, seed in small_matrix(6, 6)) {
            let a = Matrix::from_fn(Rationals, n, m, |i, j| rat(seed[i][j] * (j as i64 % 2 + 1) , 1 + (i as i64 % 3)));
            let kernel = a.kernel_basis();
            prop_assert_eq!(a.rank() + kernel.len(), m);
            for v in &kernel {
                prop_assert!(a.mul_vec(v).iter().all(|x| x == &rat(0, 1)));
            }
        }

        #[test]
        fn rank_nullity_prime_field(n in 1usize..7, m in 1usize..7, seed in small_matrix(6, 6)) {
            let f = PrimeField::new(5);
            let a = Matrix::from_fn(f, n, m, |i, j| f.elem(seed[i][j]));
            let kernel = a.kernel_basis();
            prop_assert_eq!(a.rank() + kernel.len(), m);
            for v in &kernel {
                prop_assert!(a.mul_vec(v).iter().all(|x| *x == 0));
            }
        }

        #[test]
        fn kronecker_mixed_product(a in small_matrix(2, 2), b in small_matrix(2, 2),
                                   c in small_matrix(2, 2), d in small_matrix(2, 2)) {
            let m = |v: &Vec<Vec<i64>>| Matrix::from_fn(Rationals, 2, 2, |i, j| rat(v[i][j], 1));
            let (a, b, c, d) = (m(&a), m(&b), m(&c), m(&d));
            prop_assert_eq!(a.kronecker(&b).mul(&c.kronecker(&d)), a.mul(&c).kronecker(&b.mul(&d)));
        }

        #[test]
        fn cayley_hamilton(a in small_matrix(4, 4)) {
            let m = Matrix::from_fn(Rationals, 4, 4, |i, j| rat(a[i][j], 1));
            let p = m.charpoly();
            prop_assert!(m.eval_poly(&p).is_zero());
            prop_assert_eq!(p.coeffs()[0].clone(), m.det());
        }
    }
}
