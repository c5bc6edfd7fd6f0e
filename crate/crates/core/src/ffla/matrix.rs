use std::fmt;

use super::field::PrimeField;
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Dense row-major matrix over `GF(p)`.
///
/// A square matrix `f` acts on row vectors from the right, `v ↦ v·f`, so the
/// product `f·g` is "apply `f`, then `g`".
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FFMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FFMatrix {
    pub fn new(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::SizeMismatch {
                left: data.len(),
                right: rows * cols,
            });
        }
        for &v in &data {
            field.check(v as u64)?;
        }
        Ok(Self {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from rows of length `cols`. `cols` is explicit so that
    /// an empty row list still has a shape.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::SizeMismatch {
                    left: row.len(),
                    right: cols,
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(field, rows.len(), cols, data)
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn field(&self) -> PrimeField {
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

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn same_field(&self, other: &FFMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        Ok(())
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &FFMatrix) -> Result<FFMatrix> {
        self.same_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::SizeMismatch {
                left: self.cols,
                right: rhs.rows,
            });
        }
        let p = self.field.modulus() as u64;
        let mut data = vec![0u32; self.rows * rhs.cols];
        let mut acc = vec![0u64; rhs.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (slot, &b) in acc.iter_mut().zip(rhs.row(k)) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (j, &a) in acc.iter().enumerate() {
                data[i * rhs.cols + j] = a as u32;
            }
        }
        Ok(FFMatrix {
            field: self.field,
            rows: self.rows,
            cols: rhs.cols,
            data,
        })
    }

    /// Row vector times matrix, `v · self`.
    pub fn vec_mul(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.rows {
            return Err(Error::SizeMismatch {
                left: v.len(),
                right: self.rows,
            });
        }
        let p = self.field.modulus() as u64;
        let mut out = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (slot, &b) in out.iter_mut().zip(self.row(k)) {
                *slot = (*slot + a as u64 * b as u64) % p;
            }
        }
        Ok(out.into_iter().map(|x| x as u32).collect())
    }

    pub fn transpose(&self) -> FFMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        FFMatrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Rows of `self` followed by rows of `below`.
    pub fn stack(&self, below: &FFMatrix) -> Result<FFMatrix> {
        self.same_field(below)?;
        if self.cols != below.cols {
            return Err(Error::SizeMismatch {
                left: self.cols,
                right: below.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        Ok(FFMatrix {
            field: self.field,
            rows: self.rows + below.rows,
            cols: self.cols,
            data,
        })
    }

    /// Reduced row-echelon form and its pivot columns. Zero rows sink to the
    /// bottom; the shape is unchanged.
    pub fn rref(&self) -> (FFMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        (m, pivots)
    }

    /// Gauss-Jordan elimination restricted to pivots in the first
    /// `pivot_cols` columns.
    fn rref_in_place(&mut self, pivot_cols: usize) -> Vec<usize> {
        let k = self.field;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == self.rows {
                break;
            }
            let Some(src) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if src != r {
                for j in 0..cols {
                    self.data.swap(src * cols + j, r * cols + j);
                }
            }
            let inv = k.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in 0..cols {
                self.data[r * cols + j] = k.mul(self.data[r * cols + j], inv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in 0..cols {
                    let sub = k.mul(factor, self.data[r * cols + j]);
                    self.data[i * cols + j] = k.sub(self.data[i * cols + j], sub);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// `{ v : v · self = 0 }`, a subspace of `GF(p)^rows`.
    pub fn nullspace(&self) -> Subspace {
        // v·m = 0  ⇔  mᵀ vᵀ = 0
        let (r, pivots) = self.transpose().rref();
        let n = self.rows;
        let k = self.field;
        let mut basis = Vec::new();
        for free in (0..n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u32; n];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = k.neg(r.get(i, free));
            }
            basis.push(v);
        }
        Subspace::span(k, n, &basis).expect("vectors have ambient length")
    }

    /// The row space, which for a square matrix is the range `R(f)`.
    pub fn row_space(&self) -> Subspace {
        Subspace::span(self.field, self.cols, &self.row_vecs()).expect("rows have length cols")
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<FFMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = FFMatrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            aug.data[i * 2 * n..i * 2 * n + n].copy_from_slice(self.row(i));
            aug.data[i * 2 * n + n + i] = 1;
        }
        let pivots = aug.rref_in_place(n);
        if pivots.len() < n {
            return None;
        }
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            data.extend_from_slice(&aug.row(i)[n..]);
        }
        Some(FFMatrix {
            field: self.field,
            rows: n,
            cols: n,
            data,
        })
    }

    /// Canonical solution of `x · self = b`: free variables are zero.
    pub fn solve_left(&self, b: &[u32]) -> Result<Vec<u32>> {
        if b.len() != self.cols {
            return Err(Error::SizeMismatch {
                left: b.len(),
                right: self.cols,
            });
        }
        // x·m = b  ⇔  mᵀ xᵀ = bᵀ; eliminate the augmented [mᵀ | b]
        let t = self.transpose();
        let unknowns = self.rows;
        let mut aug = FFMatrix::zeros(self.field, t.rows, unknowns + 1);
        for (i, &bi) in b.iter().enumerate() {
            let start = i * (unknowns + 1);
            aug.data[start..start + unknowns].copy_from_slice(t.row(i));
            aug.data[start + unknowns] = bi;
        }
        let pivots = aug.rref_in_place(unknowns);
        if (pivots.len()..aug.rows).any(|i| aug.get(i, unknowns) != 0) {
            return Err(Error::NoSolution);
        }
        let mut x = vec![0u32; unknowns];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(i, unknowns);
        }
        Ok(x)
    }

    /// All `p^(rows·cols)` matrices in lexicographic order of their
    /// row-major entries.
    pub fn enumerate(
        field: PrimeField,
        rows: usize,
        cols: usize,
    ) -> impl Iterator<Item = FFMatrix> {
        let p = field.modulus() as u64;
        let len = rows * cols;
        let total = p
            .checked_pow(len as u32)
            .expect("enumeration size fits in u64");
        (0..total).map(move |mut k| {
            let mut data = vec![0u32; len];
            for slot in data.iter_mut().rev() {
                *slot = (k % p) as u32;
                k /= p;
            }
            FFMatrix {
                field,
                rows,
                cols,
                data,
            }
        })
    }
}

impl fmt::Display for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}
