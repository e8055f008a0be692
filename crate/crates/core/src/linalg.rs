//! Dense matrices and the exact algorithms the lattice code relies on.
//!
//! Integer routines are generic over [`IntScalar`] (`i64`, `BigInt`), while the
//! symmetric reductions are generic over [`FieldScalar`] (`BigRational`, `f64`).

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_integer::Integer;
use num_traits::{Num, One, Signed, Zero};

/// Exact integer scalars.
pub trait IntScalar: Integer + Signed + Clone + fmt::Debug + fmt::Display {}
impl<T: Integer + Signed + Clone + fmt::Debug + fmt::Display> IntScalar for T {}

/// Scalars with division, exact or floating.
pub trait FieldScalar: Num + Signed + Clone + PartialOrd + fmt::Debug {}
impl<T: Num + Signed + Clone + PartialOrd + fmt::Debug> FieldScalar for T {}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix data has wrong length");
        Matrix { rows, cols, data }
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    /// Empty matrix with a fixed column count.
    pub fn empty(cols: usize) -> Self {
        Matrix { rows: 0, cols, data: Vec::new() }
    }

    pub fn row_vec(&self, i: usize) -> Vec<T> {
        self.row(i).to_vec()
    }

    pub fn col_vec(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    /// Stack the rows of `other` below `self`.
    pub fn vstack(&self, other: &Matrix<T>) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Matrix::from_rows(idx.iter().map(|&i| self.row_vec(i)).collect())
    }

    pub fn push_row(&mut self, row: Vec<T>) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row);
        self.rows += 1;
    }
}

impl<T: Clone + PartialEq> Matrix<T> {
    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Block-diagonal matrix from square blocks.
    pub fn block_diag(blocks: &[&Matrix<T>]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Self::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(off + i, off + j)] = b[(i, j)].clone();
                }
            }
            off += b.rows;
        }
        m
    }
}

impl<T: Clone + Num> Matrix<T> {
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![T::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = o.clone() + vi.clone() * self[(i, j)].clone();
            }
        }
        out
    }

    /// `x^T M y`.
    pub fn bilinear(&self, x: &[T], y: &[T]) -> T {
        dot(x, &self.mul_vec(y))
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// `B M B^T` for a basis given by the rows of `b`.
    pub fn congruent(&self, b: &Matrix<T>) -> Self {
        &(b * self) * &b.transpose()
    }
}

pub fn dot<T: Clone + Num>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Clone + Num> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "incompatible matrix product");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                }
            }
        }
        out
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant<T: IntScalar>(a: &Matrix<T>) -> T {
    assert!(a.is_square());
    let n = a.rows;
    if n == 0 {
        return T::one();
    }
    let mut m = a.clone();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                Some(i) => {
                    m.swap_rows(k, i);
                    sign = -sign;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[(i, j)].clone() * m[(k, k)].clone() - m[(i, k)].clone() * m[(k, j)].clone();
                m[(i, j)] = v / prev.clone();
            }
        }
        prev = m[(k, k)].clone();
    }
    sign * m[(n - 1, n - 1)].clone()
}

/// Smith normal form `left * a * right = diag(diagonal)`, with unimodular
/// transforms and their inverses. Diagonal entries are nonnegative and each
/// divides the next.
#[derive(Clone, Debug)]
pub struct Smith<T> {
    pub diagonal: Vec<T>,
    pub left: Matrix<T>,
    pub left_inv: Matrix<T>,
    pub right: Matrix<T>,
    pub right_inv: Matrix<T>,
}

impl<T: IntScalar> Smith<T> {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith<T: IntScalar>(a: &Matrix<T>) -> Smith<T> {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = Matrix::<T>::identity(m);
    let mut ui = Matrix::<T>::identity(m);
    let mut v = Matrix::<T>::identity(n);
    let mut vi = Matrix::<T>::identity(n);

    // row_i -= q * row_t
    let row_sub = |d: &mut Matrix<T>, u: &mut Matrix<T>, ui: &mut Matrix<T>, i: usize, t: usize, q: &T| {
        for j in 0..d.cols {
            let x = d[(i, j)].clone() - q.clone() * d[(t, j)].clone();
            d[(i, j)] = x;
        }
        for j in 0..u.cols {
            let x = u[(i, j)].clone() - q.clone() * u[(t, j)].clone();
            u[(i, j)] = x;
        }
        for r in 0..ui.rows {
            let x = ui[(r, t)].clone() + q.clone() * ui[(r, i)].clone();
            ui[(r, t)] = x;
        }
    };
    // col_j -= q * col_t
    let col_sub = |d: &mut Matrix<T>, v: &mut Matrix<T>, vi: &mut Matrix<T>, j: usize, t: usize, q: &T| {
        for r in 0..d.rows {
            let x = d[(r, j)].clone() - q.clone() * d[(r, t)].clone();
            d[(r, j)] = x;
        }
        for r in 0..v.rows {
            let x = v[(r, j)].clone() - q.clone() * v[(r, t)].clone();
            v[(r, j)] = x;
        }
        for c in 0..vi.cols {
            let x = vi[(t, c)].clone() + q.clone() * vi[(j, c)].clone();
            vi[(t, c)] = x;
        }
    };

    let mut diagonal = Vec::new();
    for t in 0..m.min(n) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[(i, j)].is_zero()
                    && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        ui.swap_cols(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        vi.swap_rows(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !d[(i, t)].is_zero() {
                    let q = d[(i, t)].div_floor(&d[(t, t)]);
                    row_sub(&mut d, &mut u, &mut ui, i, t, &q);
                    clean &= d[(i, t)].is_zero();
                }
            }
            for j in t + 1..n {
                if !d[(t, j)].is_zero() {
                    let q = d[(t, j)].div_floor(&d[(t, t)]);
                    col_sub(&mut d, &mut v, &mut vi, j, t, &q);
                    clean &= d[(t, j)].is_zero();
                }
            }
            if !clean {
                // bring the smallest remainder in row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..m {
                    if !d[(i, t)].is_zero() && d[(i, t)].abs() < d[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !d[(t, j)].is_zero() && d[(t, j)].abs() < d[best].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    d.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                    ui.swap_cols(t, best.0);
                } else if best.1 != t {
                    d.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                    vi.swap_rows(t, best.1);
                }
                continue;
            }
            // divisibility condition on the trailing block
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)])));
            match bad {
                Some(i) => {
                    // row_t += row_i
                    let neg_one = -T::one();
                    row_sub(&mut d, &mut u, &mut ui, t, i, &neg_one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            for j in 0..n {
                d[(t, j)] = -d[(t, j)].clone();
            }
            for j in 0..m {
                u[(t, j)] = -u[(t, j)].clone();
            }
            for r in 0..m {
                ui[(r, t)] = -ui[(r, t)].clone();
            }
        }
        diagonal.push(d[(t, t)].clone());
    }
    while diagonal.len() < m.min(n) {
        diagonal.push(T::zero());
    }
    Smith { diagonal, left: u, left_inv: ui, right: v, right_inv: vi }
}

/// Row-style Hermite normal form; zero rows are dropped. Pivots are positive
/// and entries above each pivot are reduced into `[0, pivot)`.
pub fn hermite_rows<T: IntScalar>(a: &Matrix<T>) -> Matrix<T> {
    let mut m = a.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if !m[(i, c)].is_zero() && best.is_none_or(|b| m[(i, c)].abs() < m[(b, c)].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap_rows(r, b);
            let mut done = true;
            for i in r + 1..rows {
                if !m[(i, c)].is_zero() {
                    let q = m[(i, c)].div_floor(&m[(r, c)]);
                    for j in c..cols {
                        let x = m[(i, j)].clone() - q.clone() * m[(r, j)].clone();
                        m[(i, j)] = x;
                    }
                    done &= m[(i, c)].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if m[(r, c)].is_zero() {
            continue;
        }
        if m[(r, c)].is_negative() {
            for j in c..cols {
                m[(r, j)] = -m[(r, j)].clone();
            }
        }
        for i in 0..r {
            let q = m[(i, c)].div_floor(&m[(r, c)]);
            if !q.is_zero() {
                for j in c..cols {
                    let x = m[(i, j)].clone() - q.clone() * m[(r, j)].clone();
                    m[(i, j)] = x;
                }
            }
        }
        r += 1;
    }
    m.select_rows(&(0..r).collect::<Vec<_>>())
}

/// Basis (as rows) of the integer right kernel `{x : a x = 0}`.
pub fn kernel<T: IntScalar>(a: &Matrix<T>) -> Matrix<T> {
    let s = smith(a);
    let r = s.rank();
    let n = a.cols;
    let basis = Matrix::from_rows((r..n).map(|j| s.right.col_vec(j)).collect());
    if basis.rows() == 0 {
        return Matrix::empty(n);
    }
    hermite_rows(&basis)
}

pub fn rank<T: IntScalar>(a: &Matrix<T>) -> usize {
    smith(a).rank()
}

pub fn content<T: IntScalar>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |g, x| g.gcd(x))
}

/// Gauss-Jordan inverse over a field.
pub fn inverse<F: FieldScalar>(a: &Matrix<F>) -> Option<Matrix<F>> {
    assert!(a.is_square());
    let n = a.rows;
    let mut m = a.clone();
    let mut inv = Matrix::<F>::identity(n);
    for c in 0..n {
        let mut p: Option<usize> = None;
        for i in c..n {
            if !m[(i, c)].is_zero() && p.is_none_or(|b| m[(i, c)].abs() > m[(b, c)].abs()) {
                p = Some(i);
            }
        }
        let p = p?;
        m.swap_rows(c, p);
        inv.swap_rows(c, p);
        let piv = m[(c, c)].clone();
        for j in 0..n {
            m[(c, j)] = m[(c, j)].clone() / piv.clone();
            inv[(c, j)] = inv[(c, j)].clone() / piv.clone();
        }
        for i in 0..n {
            if i != c && !m[(i, c)].is_zero() {
                let f = m[(i, c)].clone();
                for j in 0..n {
                    m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(c, j)].clone();
                    inv[(i, j)] = inv[(i, j)].clone() - f.clone() * inv[(c, j)].clone();
                }
            }
        }
    }
    Some(inv)
}

/// Counts of positive, negative and zero eigenvalue directions of a
/// symmetric matrix, via symmetric Gaussian elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

pub fn inertia<F: FieldScalar>(a: &Matrix<F>) -> Inertia {
    assert!(a.is_square());
    let n = a.rows;
    let mut m = a.clone();
    let mut out = Inertia { positive: 0, negative: 0, zero: 0 };
    for k in 0..n {
        if m[(k, k)].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !m[(j, j)].is_zero()) {
                m.swap_rows(k, j);
                m.swap_cols(k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !m[(k, j)].is_zero()) {
                for c in 0..n {
                    m[(k, c)] = m[(k, c)].clone() + m[(j, c)].clone();
                }
                for r in 0..n {
                    m[(r, k)] = m[(r, k)].clone() + m[(r, j)].clone();
                }
            } else {
                out.zero += 1;
                continue;
            }
        }
        let p = m[(k, k)].clone();
        for i in k + 1..n {
            let f = m[(i, k)].clone() / p.clone();
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(k, j)].clone();
            }
            for r in k..n {
                m[(r, i)] = m[(r, i)].clone() - f.clone() * m[(r, k)].clone();
            }
        }
        if p.is_positive() {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
    }
    out
}

/// Decomposition `x^T a x = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2` of a
/// positive definite matrix. Returns `None` if `a` is not positive definite.
pub fn ldl_definite<F: FieldScalar>(a: &Matrix<F>) -> Option<(Vec<F>, Matrix<F>)> {
    let n = a.rows;
    let mut d: Vec<F> = Vec::with_capacity(n);
    let mut mu = Matrix::<F>::identity(n);
    for i in 0..n {
        let mut di = a[(i, i)].clone();
        for k in 0..i {
            di = di - d[k].clone() * mu[(k, i)].clone() * mu[(k, i)].clone();
        }
        if !di.is_positive() {
            return None;
        }
        for j in i + 1..n {
            let mut s = a[(i, j)].clone();
            for k in 0..i {
                s = s - d[k].clone() * mu[(k, i)].clone() * mu[(k, j)].clone();
            }
            mu[(i, j)] = s / di.clone();
        }
        d.push(di);
    }
    Some((d, mu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn m(rows: Vec<Vec<i64>>) -> Matrix<i64> {
        Matrix::from_rows(rows)
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let a = m(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(determinant(&a), 4);
        let b = m(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(determinant(&b), -1);
        let big = a.map(|&x| BigInt::from(x));
        assert_eq!(determinant(&big), BigInt::from(4));
    }

    #[test]
    fn smith_transforms_are_consistent() {
        let a = m(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith(&a);
        assert_eq!(s.diagonal, vec![2, 6, 12]);
        let d = &(&s.left * &a) * &s.right;
        assert_eq!(d, Matrix::diagonal(&[2, 6, 12]));
        assert_eq!(&s.left * &s.left_inv, Matrix::identity(3));
        assert_eq!(&s.right * &s.right_inv, Matrix::identity(3));
    }

    #[test]
    fn kernel_and_hermite() {
        let a = m(vec![vec![1, 2, 3], vec![2, 4, 6]]);
        let k = kernel(&a);
        assert_eq!(k.rows(), 2);
        for r in k.row_iter() {
            assert_eq!(a.mul_vec(r), vec![0, 0]);
        }
        let h = hermite_rows(&m(vec![vec![2, 0], vec![0, 2], vec![1, 1]]));
        assert_eq!(h, m(vec![vec![1, 1], vec![0, 2]]));
    }

    #[test]
    fn inertia_of_hyperbolic_plane() {
        let u = Matrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert_eq!(inertia(&u), Inertia { positive: 1, negative: 1, zero: 0 });
        let q = Matrix::from_rows(vec![
            vec![BigRational::from_integer(0.into()), BigRational::from_integer(1.into())],
            vec![BigRational::from_integer(1.into()), BigRational::from_integer(0.into())],
        ]);
        assert_eq!(inertia(&q), Inertia { positive: 1, negative: 1, zero: 0 });
    }

    #[test]
    fn rational_inverse() {
        let a = Matrix::from_rows(vec![vec![2.0, 1.0], vec![1.0, 1.0]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, Matrix::from_rows(vec![vec![1.0, -1.0], vec![-1.0, 2.0]]));
    }
}
