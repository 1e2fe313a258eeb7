//! Dense matrices over F_q: row reduction, rank, null spaces and
//! normal forms modulo a row space.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::galois::{add_mod, check_field, inv_mod, mul_mod, neg_mod, sub_mod};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    q: u8,
    data: Vec<u8>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, q: u8) -> Self {
        Matrix { rows, cols, q, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, q: u8) -> Self {
        let mut m = Self::zeros(n, n, q);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Rows must all have the same length `cols` (needed when there are no rows).
    pub fn from_rows(q: u32, cols: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let q = check_field(q)?;
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch);
            }
            data.extend(r.iter().map(|&c| c % q));
        }
        Ok(Matrix { rows: rows.len(), cols, q, data })
    }

    /// Parses binary rows such as `"101|000|100|000"`; `|` and spaces are ignored.
    pub fn from_bit_rows(rows: &[&str]) -> Result<Self> {
        let parsed: Result<Vec<Vec<u8>>> = rows.iter().map(|r| crate::galois::parse_coeff_string(r, 2)).collect();
        let parsed = parsed?;
        let cols = parsed.first().map_or(0, |r| r.len());
        Self::from_rows(2, cols, &parsed)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v % self.q;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u8] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[u8]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch);
        }
        let q = self.q;
        self.data.extend(row.iter().map(|&c| c % q));
        self.rows += 1;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.q);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows || self.q != other.q {
            return Err(Error::DimensionMismatch);
        }
        let q = self.q;
        let mut out = Self::zeros(self.rows, other.cols, q);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b != 0 {
                        let idx = r * other.cols + c;
                        out.data[idx] = add_mod(out.data[idx], mul_mod(a, b, q), q);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols || self.q != other.q {
            return Err(Error::DimensionMismatch);
        }
        let q = self.q;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| add_mod(a, b, q)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, q, data })
    }

    /// M * v for a column vector v.
    pub fn mul_vec(&self, v: &[u8]) -> Result<Vec<u8>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch);
        }
        let q = self.q as u32;
        Ok((0..self.rows)
            .map(|r| {
                let s: u32 = self.row(r).iter().zip(v).map(|(&a, &b)| a as u32 * b as u32).sum();
                (s % q) as u8
            })
            .collect())
    }

    /// v * M for a row vector v.
    pub fn vec_mul(&self, v: &[u8]) -> Result<Vec<u8>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch);
        }
        let q = self.q;
        let mut out = vec![0u8; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(r)) {
                *o = add_mod(*o, mul_mod(a, b, q), q);
            }
        }
        Ok(out)
    }

    /// Multiplies every row, read as an ascending polynomial, by X^k mod X^cols - 1.
    pub fn shift_columns(&self, k: usize) -> Matrix {
        let mut out = Self::zeros(self.rows, self.cols, self.q);
        if self.cols == 0 {
            return out;
        }
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[r * self.cols + (c + k) % self.cols] = self.get(r, c);
            }
        }
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols || self.q != other.q {
            return Err(Error::DimensionMismatch);
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, q: self.q, data })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix { rows: idx.len(), cols: self.cols, q: self.q, data }
    }

    /// Reduced row echelon form, scanning columns from index 0 upward, and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let q = m.q;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = inv_mod(m.get(r, c), q).expect("nonzero pivot");
            for j in 0..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = mul_mod(m.data[idx], inv, q);
            }
            for i in 0..m.rows {
                let f = m.get(i, c);
                if i != r && f != 0 {
                    for j in 0..m.cols {
                        let v = m.get(r, j);
                        if v != 0 {
                            let idx = i * m.cols + j;
                            m.data[idx] = sub_mod(m.data[idx], mul_mod(f, v, q), q);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis (as rows) of the right null space { x : M x = 0 }.
    pub fn nullspace(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let q = self.q;
        let mut out = Matrix::zeros(0, self.cols, q);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![0u8; self.cols];
            x[f] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = neg_mod(r.get(i, f), q);
            }
            out.push_row(&x).expect("width matches");
        }
        out
    }

    /// Invertibility of a square matrix.
    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Binary rows, block-separated by `|` every `m` symbols when `m > 0`.
    pub fn to_row_strings(&self, m: usize) -> Vec<String> {
        (0..self.rows).map(|r| blocked(self.row(r), self.q, m)).collect()
    }
}

pub(crate) fn blocked(v: &[u8], q: u8, m: usize) -> String {
    let mut s = String::new();
    for (i, &c) in v.iter().enumerate() {
        if m > 0 && i > 0 && i % m == 0 {
            s.push('|');
        }
        s.push_str(&crate::galois::coeff_string(&[c], q));
    }
    s
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over F_{}", self.rows, self.cols, self.q)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", blocked(self.row(r), self.q, 0))?;
        }
        Ok(())
    }
}

/// A row space kept in reduced echelon form. Its normal form maps every vector
/// to the unique representative of its coset that vanishes on the pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSpace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(generators: &Matrix) -> Self {
        let (r, pivots) = generators.rref();
        let idx: Vec<usize> = (0..pivots.len()).collect();
        RowSpace { basis: r.select_rows(&idx), pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduce(&self, v: &[u8]) -> Result<Vec<u8>> {
        if v.len() != self.basis.cols {
            return Err(Error::LengthMismatch { expected: self.basis.cols, got: v.len() });
        }
        let q = self.basis.q;
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let f = out[p];
            if f != 0 {
                for (o, &b) in out.iter_mut().zip(self.basis.row(i)) {
                    if b != 0 {
                        *o = sub_mod(*o, mul_mod(f, b, q), q);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[u8]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|&c| c == 0))
    }

    /// Adds v to the space, keeping the basis reduced. Returns false if v was already in it.
    pub fn insert(&mut self, v: &[u8]) -> Result<bool> {
        let mut w = self.reduce(v)?;
        let Some(c) = w.iter().position(|&x| x != 0) else { return Ok(false) };
        let q = self.basis.q;
        let inv = inv_mod(w[c], q).expect("nonzero pivot");
        for x in w.iter_mut() {
            *x = mul_mod(*x, inv, q);
        }
        for i in 0..self.basis.rows {
            let f = self.basis.get(i, c);
            if f != 0 {
                for (o, &b) in self.basis.row_mut(i).iter_mut().zip(&w) {
                    if b != 0 {
                        *o = sub_mod(*o, mul_mod(f, b, q), q);
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < c);
        self.pivots.insert(at, c);
        let cols = self.basis.cols;
        self.basis.data.splice(at * cols..at * cols, w);
        self.basis.rows += 1;
        Ok(true)
    }
}
