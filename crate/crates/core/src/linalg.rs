//! Dense linear algebra over a [`FiniteField`].

use crate::ffield::{Fe, FiniteField};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Fe>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Fe>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Matrix { rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, columns: &[Vec<Fe>]) -> Self {
        let mut m = Self::zeros(n, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for i in 0..n {
                m.set(i, j, c[i]);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[Fe] {
        &self.data
    }

    pub fn into_flat(self) -> Vec<Fe> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, f: &FiniteField, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                axpy(f, out_row, a, rhs.row(k));
            }
        }
        out
    }

    pub fn add(&self, f: &FiniteField, rhs: &Matrix) -> Matrix {
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, f: &FiniteField, c: Fe) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(c, a)).collect() }
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, f: &FiniteField, v: &[Fe]) -> Vec<Fe> {
        (0..self.rows).map(|i| dot(f, self.row(i), v)).collect()
    }

    pub fn rank(&self, f: &FiniteField) -> usize {
        let mut s = Subspace::new(self.cols);
        for i in 0..self.rows {
            s.insert(f, self.row(i).to_vec());
        }
        s.dim()
    }

    /// Basis of `{v : self * v = 0}`.
    pub fn nullspace(&self, f: &FiniteField) -> Vec<Vec<Fe>> {
        let columns: Vec<Vec<Fe>> = (0..self.cols).map(|j| self.column(j)).collect();
        kernel_of_images(f, &columns)
    }

    pub fn inverse(&self, f: &FiniteField) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let s = f.inv(a.get(col, col))?;
            for j in 0..n {
                a.set(col, j, f.mul(s, a.get(col, j)));
                inv.set(col, j, f.mul(s, inv.get(col, j)));
            }
            for r in 0..n {
                let c = a.get(r, col);
                if r == col || c.is_zero() {
                    continue;
                }
                let c = f.neg(c);
                for j in 0..n {
                    a.set(r, j, f.mul_add(a.get(r, j), c, a.get(col, j)));
                    inv.set(r, j, f.mul_add(inv.get(r, j), c, inv.get(col, j)));
                }
            }
        }
        Some(inv)
    }
}

/// `y += a * x`.
#[inline]
pub fn axpy(f: &FiniteField, y: &mut [Fe], a: Fe, x: &[Fe]) {
    if a.is_zero() {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = f.mul_add(*yi, a, xi);
        }
    }
}

pub fn dot(f: &FiniteField, a: &[Fe], b: &[Fe]) -> Fe {
    a.iter().zip(b).fold(Fe::ZERO, |acc, (&x, &y)| if x.is_zero() || y.is_zero() { acc } else { f.mul_add(acc, x, y) })
}

pub fn scaled(f: &FiniteField, a: Fe, x: &[Fe]) -> Vec<Fe> {
    x.iter().map(|&v| f.mul(a, v)).collect()
}

pub fn sum(f: &FiniteField, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn difference(f: &FiniteField, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

pub fn is_zero(v: &[Fe]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Fe> {
    let mut v = vec![Fe::ZERO; n];
    v[i] = Fe::ONE;
    v
}

/// Combinations `λ` with `Σ λ_i images[i] = 0`, as a basis of coefficient vectors.
pub fn kernel_of_images(f: &FiniteField, images: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
    let k = images.len();
    // echelon rows: (pivot column, image part, combination part)
    let mut echelon: Vec<(usize, Vec<Fe>, Vec<Fe>)> = Vec::new();
    let mut kernel = Vec::new();
    for (i, img) in images.iter().enumerate() {
        let mut v = img.clone();
        let mut comb = unit_vector(k, i);
        for (p, row, rc) in &echelon {
            let c = v[*p];
            if !c.is_zero() {
                let c = f.neg(c);
                axpy(f, &mut v, c, row);
                axpy(f, &mut comb, c, rc);
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => kernel.push(comb),
            Some(p) => {
                let s = f.inv(v[p]).expect("nonzero pivot");
                let v = scaled(f, s, &v);
                let comb = scaled(f, s, &comb);
                echelon.push((p, v, comb));
            }
        }
    }
    kernel
}

/// A subspace of `k^n` kept in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors<I: IntoIterator<Item = Vec<Fe>>>(f: &FiniteField, ambient: usize, vectors: I) -> Self {
        let mut s = Subspace::new(ambient);
        for v in vectors {
            s.insert(f, v);
        }
        s
    }

    pub fn whole(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: (0..ambient).map(|i| unit_vector(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Fe>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns without a pivot; unit vectors there span a complement.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Residue of `v` after elimination against the basis.
    pub fn reduce(&self, f: &FiniteField, v: &[Fe]) -> Vec<Fe> {
        let mut v = v.to_vec();
        self.reduce_in_place(f, &mut v);
        v
    }

    fn reduce_in_place(&self, f: &FiniteField, v: &mut [Fe]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if !c.is_zero() {
                axpy(f, v, f.neg(c), row);
            }
        }
    }

    pub fn contains(&self, f: &FiniteField, v: &[Fe]) -> bool {
        is_zero(&self.reduce(f, v))
    }

    /// Coordinates with respect to [`basis`](Self::basis), if `v` lies in the subspace.
    pub fn coords(&self, f: &FiniteField, v: &[Fe]) -> Option<Vec<Fe>> {
        let c: Vec<Fe> = self.pivots.iter().map(|&p| v[p]).collect();
        let mut r = v.to_vec();
        for (row, &ci) in self.rows.iter().zip(&c) {
            axpy(f, &mut r, f.neg(ci), row);
        }
        is_zero(&r).then_some(c)
    }

    /// Inserts `v`; returns whether the dimension grew.
    pub fn insert(&mut self, f: &FiniteField, mut v: Vec<Fe>) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        self.reduce_in_place(f, &mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let s = f.inv(v[p]).expect("nonzero pivot");
        let v = scaled(f, s, &v);
        for row in &mut self.rows {
            let c = row[p];
            if !c.is_zero() {
                axpy(f, row, f.neg(c), &v);
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn intersection(&self, f: &FiniteField, other: &Subspace) -> Subspace {
        // λ, μ with Σ λ_i a_i = Σ μ_j b_j
        let mut images: Vec<Vec<Fe>> = self.rows.clone();
        images.extend(other.rows.iter().map(|r| r.iter().map(|&x| f.neg(x)).collect()));
        let ker = kernel_of_images(f, &images);
        let mut out = Subspace::new(self.ambient);
        for comb in ker {
            let mut v = vec![Fe::ZERO; self.ambient];
            for (row, &c) in self.rows.iter().zip(&comb) {
                axpy(f, &mut v, c, row);
            }
            out.insert(f, v);
        }
        out
    }

    pub fn is_subspace_of(&self, f: &FiniteField, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(f, r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;

    #[test]
    fn rank_and_nullspace() {
        let f = make_field(3, 1).unwrap();
        let m = Matrix::from_rows(&[vec![Fe(1), Fe(2), Fe(0)], vec![Fe(2), Fe(1), Fe(0)], vec![Fe(0), Fe(0), Fe(1)]]);
        // row 2 = 2 * row 1 mod 3
        assert_eq!(m.rank(&f), 2);
        let ker = m.nullspace(&f);
        assert_eq!(ker.len(), 1);
        assert!(is_zero(&m.apply(&f, &ker[0])));
    }

    #[test]
    fn inverse_roundtrip() {
        let f = make_field(2, 3).unwrap();
        let m = Matrix::from_rows(&[vec![Fe(3), Fe(1)], vec![Fe(5), Fe(7)]]);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv), Matrix::identity(2));
        let singular = Matrix::from_rows(&[vec![Fe(1), Fe(1)], vec![Fe(1), Fe(1)]]);
        assert!(singular.inverse(&f).is_none());
    }

    #[test]
    fn subspace_coordinates_and_intersection() {
        let f = make_field(2, 1).unwrap();
        let a = Subspace::from_vectors(&f, 3, [vec![Fe(1), Fe(1), Fe(0)], vec![Fe(0), Fe(1), Fe(1)]]);
        let v = vec![Fe(1), Fe(0), Fe(1)];
        let c = a.coords(&f, &v).unwrap();
        let mut back = vec![Fe::ZERO; 3];
        for (row, &ci) in a.basis().iter().zip(&c) {
            axpy(&f, &mut back, ci, row);
        }
        assert_eq!(back, v);
        assert!(a.coords(&f, &[Fe(1), Fe(0), Fe(0)]).is_none());
        let b = Subspace::from_vectors(&f, 3, [vec![Fe(1), Fe(0), Fe(1)], vec![Fe(1), Fe(0), Fe(0)]]);
        assert_eq!(a.intersection(&f, &b).dim(), 1);
        assert_eq!(a.free_columns().len(), 1);
    }
}
