//! Exact dense linear algebra over the scalar field: reduced row
//! echelon form, kernels, solves and subspace arithmetic. Pivoting is
//! deterministic (leftmost nonzero column, topmost row), so "any
//! solution" outputs are reproducible.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactnum::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Arc<FieldSpec>,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: &Arc<FieldSpec>, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &Arc<FieldSpec>, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_rows(field: &Arc<FieldSpec>, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            data.extend(row);
        }
        Ok(Matrix { field: field.clone(), rows: r, cols: c, data })
    }

    pub fn from_i64(field: &Arc<FieldSpec>, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = Matrix::zero(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, Scalar::from_i64(field, v));
            }
        }
        m
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(|a| -a).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zero(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + &(a * other.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(&self.field);
                for j in 0..self.cols {
                    acc = &acc + &(self.get(i, j) * &v[j]);
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Reduced row echelon form with rank and pivot columns.
    pub fn rref(&self) -> (Matrix, usize, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(r * m.cols + j, pr * m.cols + j);
                }
            }
            let inv = m.get(r, col).inverse().expect("pivot invertible");
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, col).is_zero() {
                    continue;
                }
                let f = m.get(i, col).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            r += 1;
        }
        (m, r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Basis of the right kernel, as a [`Subspace`] of the column space
    /// domain.
    pub fn kernel_basis(&self) -> Subspace {
        let (r, _, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec = vec![Scalar::zero(&self.field); self.cols];
            vec[free] = Scalar::one(&self.field);
            for (col, p) in pivot_of_col.iter().enumerate() {
                if let Some(row) = p {
                    vec[col] = -r.get(*row, free);
                }
            }
            basis.push(vec);
        }
        Subspace::from_vectors(&self.field, self.cols, basis)
    }

    /// A solution of `self * x = b`, if one exists (pivot solution:
    /// free variables set to zero).
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Matrix::zero(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, _, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the constants column: inconsistent
        }
        let mut x = vec![Scalar::zero(&self.field); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::SingularMatrix);
        }
        let n = self.rows;
        let mut aug = Matrix::zero(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one(&self.field));
        }
        let (r, rank, _) = aug.rref();
        if rank < n {
            return Err(Error::SingularMatrix);
        }
        let mut out = Matrix::zero(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(out)
    }

    pub fn is_strictly_upper_triangular(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..=i).all(|j| self.get(i, j).is_zero()))
    }

    /// Stacks matrices vertically.
    pub fn vstack(mats: &[&Matrix]) -> Matrix {
        let field = mats[0].field.clone();
        let cols = mats[0].cols;
        let rows = mats.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in mats {
            assert_eq!(m.cols, cols);
            data.extend(m.data.iter().cloned());
        }
        Matrix { field, rows, cols, data }
    }
}

/// A subspace of coordinate space, stored as a reduced-echelon row
/// basis so that equality of subspaces is literal equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Arc<FieldSpec>,
    ambient: usize,
    /// RREF rows, one per basis vector.
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(field: &Arc<FieldSpec>, ambient: usize) -> Self {
        Subspace { field: field.clone(), ambient, basis: Vec::new() }
    }

    pub fn full(field: &Arc<FieldSpec>, ambient: usize) -> Self {
        let mut basis = Vec::new();
        for i in 0..ambient {
            let mut v = vec![Scalar::zero(field); ambient];
            v[i] = Scalar::one(field);
            basis.push(v);
        }
        Subspace { field: field.clone(), ambient, basis }
    }

    /// Span of the given vectors, reduced to echelon form.
    pub fn from_vectors(field: &Arc<FieldSpec>, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let m = Matrix::from_rows(field, vectors).expect("rectangular");
        let (r, rank, _) = m.rref();
        let basis = (0..rank).map(|i| r.row(i)).collect();
        Subspace { field: field.clone(), ambient, basis }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis_matrix(&self) -> Matrix {
        if self.basis.is_empty() {
            Matrix::zero(&self.field, 0, self.ambient)
        } else {
            Matrix::from_rows(&self.field, self.basis.clone()).unwrap()
        }
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.clone());
        Ok(Subspace::from_vectors(&self.field, self.ambient, vs))
    }

    /// Intersection: solve for combinations of the two bases that agree.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(&self.field, self.ambient));
        }
        // columns: coefficients on self.basis, then on other.basis
        let d1 = self.dim();
        let d2 = other.dim();
        let mut m = Matrix::zero(&self.field, self.ambient, d1 + d2);
        for (j, v) in self.basis.iter().enumerate() {
            for i in 0..self.ambient {
                m.set(i, j, v[i].clone());
            }
        }
        for (j, v) in other.basis.iter().enumerate() {
            for i in 0..self.ambient {
                m.set(i, d1 + j, -&v[i]);
            }
        }
        let ker = m.kernel_basis();
        let mut vecs = Vec::new();
        for k in ker.basis() {
            let mut v = vec![Scalar::zero(&self.field); self.ambient];
            for (j, c) in k[..d1].iter().enumerate() {
                for i in 0..self.ambient {
                    v[i] = &v[i] + &(c * &self.basis[j][i]);
                }
            }
            vecs.push(v);
        }
        Ok(Subspace::from_vectors(&self.field, self.ambient, vecs))
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.reduce_vector(v).iter().all(|c| c.is_zero())
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains_vector(v))
    }

    /// Canonical residue of `v` modulo the subspace: eliminates the
    /// pivot coordinates of the echelon basis.
    pub fn reduce_vector(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for b in &self.basis {
            let pivot = b.iter().position(|c| !c.is_zero()).unwrap();
            if out[pivot].is_zero() {
                continue;
            }
            let f = out[pivot].clone();
            for i in 0..self.ambient {
                out[i] = &out[i] - &(&f * &b[i]);
            }
        }
        out
    }

    /// {x : m x in self}.
    pub fn preimage(&self, m: &Matrix) -> Result<Subspace> {
        if m.rows() != self.ambient {
            return Err(Error::DimensionMismatch(
                "preimage: matrix target dimension differs from ambient".into(),
            ));
        }
        // annihilator conditions: rows spanning {y : y . b = 0 for b in basis}
        let ann = self.annihilator_matrix();
        if ann.rows() == 0 {
            return Ok(Subspace::full(&self.field, m.cols()));
        }
        Ok(ann.mul(m).kernel_basis())
    }

    /// Rows spanning the space of linear functionals vanishing on self.
    pub fn annihilator_matrix(&self) -> Matrix {
        if self.is_zero() {
            return Matrix::identity(&self.field, self.ambient);
        }
        let b = self.basis_matrix();
        let ker = b.kernel_basis(); // {x : B x = 0}, i.e. functionals via transpose
        ker.basis_matrix()
    }
}

impl Subspace {
    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch("subspace ambient dimensions differ".into()));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }
}
