//! Dense matrices and echelon bases over a cyclotomic field.

use std::fmt;

use crate::cyclotomic::{CycloField, CycloNum};
use crate::error::{Error, Result};

pub type Vector = Vec<CycloNum>;

pub fn zero_vector(f: &'static CycloField, n: usize) -> Vector {
    vec![CycloNum::zero(f); n]
}

pub fn unit_vector(f: &'static CycloField, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(f, n);
    v[i] = CycloNum::one(f);
    v
}

pub fn is_zero_vector(v: &[CycloNum]) -> bool {
    v.iter().all(CycloNum::is_zero)
}

/// `y += c x`.
pub fn axpy(y: &mut [CycloNum], c: &CycloNum, x: &[CycloNum]) {
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            yi.add_mul(c, xi);
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: &'static CycloField,
    rows: usize,
    cols: usize,
    data: Vec<CycloNum>,
}

impl Matrix {
    pub fn zeros(f: &'static CycloField, rows: usize, cols: usize) -> Self {
        Matrix {
            field: f,
            rows,
            cols,
            data: vec![CycloNum::zero(f); rows * cols],
        }
    }

    pub fn identity(f: &'static CycloField, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.data[i * n + i] = CycloNum::one(f);
        }
        m
    }

    pub fn from_rows(f: &'static CycloField, rows: Vec<Vec<CycloNum>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput("ragged matrix".into()));
        }
        if rows.iter().flatten().any(|x| x.field().order() != f.order()) {
            return Err(Error::InvalidInput(format!("matrix entries must lie in Q(zeta_{})", f.order())));
        }
        Ok(Matrix {
            field: f,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(f: &'static CycloField, rows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(f, rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m.data[i * cols.len() + j] = x.clone();
            }
        }
        m
    }

    pub fn from_fn(f: &'static CycloField, rows: usize, cols: usize, g: impl Fn(usize, usize) -> CycloNum) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(g(i, j));
            }
        }
        Matrix { field: f, rows, cols, data }
    }

    pub fn field(&self) -> &'static CycloField {
        self.field
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

    pub fn get(&self, i: usize, j: usize) -> &CycloNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: CycloNum) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut CycloNum {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[CycloNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[CycloNum] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycloNum::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not match");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let brow = other.row(k);
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        o.add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[CycloNum]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix and vector shapes do not match");
        (0..self.rows)
            .map(|i| {
                let mut acc = CycloNum::zero(self.field);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_mul(a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { data, ..*self }
    }

    pub fn scale(&self, c: &CycloNum) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Matrix { data, ..*self }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> CycloNum {
        let mut t = CycloNum::zero(self.field);
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inverse().expect("pivot is nonzero");
            for j in c..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            let pivot_row: Vector = m.row(r).to_vec();
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let factor = -m.get(i, c);
                    let row = &mut m.data[i * m.cols..(i + 1) * m.cols];
                    axpy(row, &factor, &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.field, self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i).to_vec());
        }
        e.len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        nullspace_from_rref(&r, &pivots)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::InvalidInput("only square matrices are invertible".into()));
        }
        let n = self.rows;
        let aug = Matrix::from_fn(self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                CycloNum::one(self.field)
            } else {
                CycloNum::zero(self.field)
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::DivisionByZero);
        }
        Ok(Matrix::from_fn(self.field, n, n, |i, j| r.get(i, n + j).clone()))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Some `x` with `A x = b`, if one exists.
    pub fn solve(&self, b: &[CycloNum]) -> Option<Vector> {
        let aug = Matrix::from_fn(self.field, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vector(self.field, self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Rank of all powers up to `n` stabilizes; returns a basis of `ker A^n`.
    pub fn stable_kernel(&self) -> Vec<Vector> {
        let mut p = self.clone();
        let mut dim = p.nullspace().len();
        loop {
            let q = p.mul(self);
            let d = q.nullspace().len();
            if d == dim {
                return p.nullspace();
            }
            p = q;
            dim = d;
        }
    }
}

pub(crate) fn nullspace_from_rref(r: &Matrix, pivots: &[usize]) -> Vec<Vector> {
    let f = r.field;
    let mut is_pivot = vec![false; r.cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..r.cols).filter(|&c| !is_pivot[c]) {
        let mut v = zero_vector(f, r.cols);
        v[free] = CycloNum::one(f);
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(i, free);
        }
        basis.push(v);
    }
    basis
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A growing basis kept in reduced row echelon form (rows need not be sorted by pivot).
#[derive(Clone, Debug)]
pub struct Echelon {
    field: &'static CycloField,
    dim: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(f: &'static CycloField, dim: usize) -> Self {
        Echelon {
            field: f,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection onto the span along the pivot coordinates.
    pub fn reduce(&self, mut v: Vector) -> Vector {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = -&v[p];
                axpy(&mut v, &c, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[CycloNum]) -> bool {
        is_zero_vector(&self.reduce(v.to_vec()))
    }

    /// Adds `v` if it is independent; returns whether the span grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inverse().expect("nonzero");
        for x in v.iter_mut().skip(p) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let c = -&row[p];
                axpy(row, &c, &v);
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// Coordinates of `v` in the current basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[CycloNum]) -> Option<Vector> {
        self.contains(v).then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Basis vectors ordered by pivot.
    pub fn sorted_rows(&self) -> Vec<Vector> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        idx.into_iter().map(|i| self.rows[i].clone()).collect()
    }

    pub fn field(&self) -> &'static CycloField {
        self.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::field;

    fn m(f: &'static CycloField, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(f, rows.iter().map(|r| r.iter().map(|&x| CycloNum::from_int(f, x)).collect()).collect()).unwrap()
    }

    #[test]
    fn inverse_and_rank() {
        let f = field(4).unwrap();
        let a = m(f, &[&[2, 1, 0], &[1, 1, 0], &[0, 0, 3]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert_eq!(a.rank(), 3);
        let s = m(f, &[&[1, 2], &[2, 4]]);
        assert_eq!(s.rank(), 1);
        assert_eq!(s.inverse().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let f = field(4).unwrap();
        let i = CycloNum::i(f).unwrap();
        let one = CycloNum::one(f);
        let a = Matrix::from_rows(f, vec![vec![one.clone(), i.clone(), CycloNum::zero(f)], vec![i.clone(), -&one, one.clone()]]).unwrap();
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(is_zero_vector(&a.mul_vec(&ns[0])));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = field(4).unwrap();
        let a = m(f, &[&[1, 1], &[2, 2]]);
        let b: Vector = [3, 6].iter().map(|&x| CycloNum::from_int(f, x)).collect();
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        let c: Vector = [3, 7].iter().map(|&x| CycloNum::from_int(f, x)).collect();
        assert!(a.solve(&c).is_none());
    }

    #[test]
    fn echelon_coordinates() {
        let f = field(4).unwrap();
        let mut e = Echelon::new(f, 3);
        let v1: Vector = [1, 2, 0].iter().map(|&x| CycloNum::from_int(f, x)).collect();
        let v2: Vector = [0, 1, 1].iter().map(|&x| CycloNum::from_int(f, x)).collect();
        assert!(e.insert(v1.clone()));
        assert!(e.insert(v2.clone()));
        let mut w = v1.clone();
        axpy(&mut w, &CycloNum::from_int(f, 5), &v2);
        assert!(!e.insert(w.clone()));
        let c = e.coordinates(&w).unwrap();
        let mut back = zero_vector(f, 3);
        for (row, ci) in e.rows().iter().zip(&c) {
            axpy(&mut back, ci, row);
        }
        assert_eq!(back, w);
    }

    #[test]
    fn stable_kernel_of_nilpotent() {
        let f = field(4).unwrap();
        let n = m(f, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(n.nullspace().len(), 1);
        assert_eq!(n.stable_kernel().len(), 3);
    }
}
