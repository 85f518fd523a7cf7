//! Dense exact matrices over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::field::{Field, Fp};
use super::rational::Rational;
use super::LinalgError;

/// Row-major dense matrix with exact rational entries.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Row count above which products are split across the thread pool.
const PAR_ROWS: usize = 48;

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Rational::one())
    }

    pub fn scalar(n: usize, value: Rational) -> Self {
        let mut m = Self::zeros(n, n);
        if !value.is_zero() {
            for i in 0..n {
                m.data[i * n + i] = value.clone();
            }
        }
        m
    }

    pub fn diag(values: &[Rational]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.data[i * n + i] = v.clone();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::BadLength { rows, cols, len: data.len() });
        }
        Ok(MatrixQ { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinalgError::RaggedRows);
            }
            data.extend(row);
        }
        Ok(MatrixQ { rows: r, cols: c, data })
    }

    /// Integer entries; panics on ragged input.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rational::from_int(v)).collect()).collect())
            .expect("rectangular integer rows")
    }

    pub fn column(values: Vec<Rational>) -> Self {
        let n = values.len();
        MatrixQ { rows: n, cols: 1, data: values }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero()).count()
    }

    /// `Some(c)` when the matrix equals `c·I`.
    pub fn as_scalar(&self) -> Option<Rational> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Rational::zero());
        }
        let c = self.data[0].clone();
        for i in 0..n {
            for j in 0..n {
                let v = &self.data[i * n + j];
                if (i == j && *v != c) || (i != j && !v.is_zero()) {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Self {
        MatrixQ { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * c).collect() }
    }

    /// `self + c·I`
    pub fn add_scalar(&self, c: &Rational) -> Self {
        assert!(self.is_square(), "add_scalar on non-square matrix");
        let mut m = self.clone();
        for i in 0..self.rows {
            m.data[i * self.cols + i] += c;
        }
        m
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, LinalgError> {
        self.same_shape("add", rhs)?;
        Ok(MatrixQ {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, LinalgError> {
        self.same_shape("sub", rhs)?;
        Ok(MatrixQ {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    fn same_shape(&self, op: &'static str, rhs: &Self) -> Result<(), LinalgError> {
        if self.shape() != rhs.shape() {
            return Err(LinalgError::DimensionMismatch { op, left: self.shape(), right: rhs.shape() });
        }
        Ok(())
    }

    /// Nonzero entries of each row as `(column, value)`.
    pub fn sparse_rows(&self) -> Vec<Vec<(usize, &Rational)>> {
        (0..self.rows).map(|i| self.row(i).iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()).collect()
    }

    /// Row-major flattening, `rows·cols` long.
    pub fn flatten(&self) -> Vec<Rational> {
        self.data.clone()
    }

    /// Entrywise reduction modulo `P`.
    pub fn modular_view<const P: u64>(&self) -> Result<ModMatrix<P>, LinalgError> {
        let mut data = Vec::with_capacity(self.data.len());
        for (idx, v) in self.data.iter().enumerate() {
            match Fp::<P>::from_rational(v) {
                Some(x) => data.push(x),
                None => {
                    return Err(LinalgError::BadPrime {
                        prime: P,
                        row: idx / self.cols,
                        col: idx % self.cols,
                        entry: v.to_string(),
                    })
                }
            }
        }
        Ok(ModMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Matrix power by repeated squaring.
    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

/// Exact product; errors when the inner dimensions disagree.
pub fn mat_mul(a: &MatrixQ, b: &MatrixQ) -> Result<MatrixQ, LinalgError> {
    if a.cols != b.rows {
        return Err(LinalgError::DimensionMismatch { op: "mul", left: a.shape(), right: b.shape() });
    }
    let b_rows = b.sparse_rows();
    let n = b.cols;
    let mut data = vec![Rational::zero(); a.rows * n];
    let row_kernel = |(i, out): (usize, &mut [Rational])| {
        for (k, aik) in a.row(i).iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for &(j, bkj) in &b_rows[k] {
                out[j].add_mul(aik, bkj);
            }
        }
    };
    if a.rows >= PAR_ROWS && n > 0 {
        data.par_chunks_mut(n).enumerate().for_each(row_kernel);
    } else if n > 0 {
        data.chunks_mut(n).enumerate().for_each(row_kernel);
    }
    Ok(MatrixQ { rows: a.rows, cols: n, data })
}

/// Kronecker product; basis index `(i, j)` maps to `i·dim(b) + j`.
pub fn kron(a: &MatrixQ, b: &MatrixQ) -> MatrixQ {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut m = MatrixQ::zeros(ar * br, ac * bc);
    let cols = ac * bc;
    for i in 0..ar {
        for j in 0..ac {
            let aij = a.get(i, j);
            if aij.is_zero() {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    let bkl = b.get(k, l);
                    if !bkl.is_zero() {
                        m.data[(i * br + k) * cols + j * bc + l] = aij * bkl;
                    }
                }
            }
        }
    }
    m
}

fn square_pair(op: &'static str, a: &MatrixQ, b: &MatrixQ) -> Result<(), LinalgError> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(LinalgError::DimensionMismatch { op, left: a.shape(), right: b.shape() });
    }
    Ok(())
}

/// `ab - ba`
pub fn commutator(a: &MatrixQ, b: &MatrixQ) -> Result<MatrixQ, LinalgError> {
    square_pair("commutator", a, b)?;
    Ok(&(a * b) - &(b * a))
}

/// `ab + ba`
pub fn anticommutator(a: &MatrixQ, b: &MatrixQ) -> Result<MatrixQ, LinalgError> {
    square_pair("anticommutator", a, b)?;
    Ok(&(a * b) + &(b * a))
}

impl Mul<&MatrixQ> for &MatrixQ {
    type Output = MatrixQ;
    /// Panics on a shape mismatch; use [`mat_mul`] to get an error instead.
    fn mul(self, rhs: &MatrixQ) -> MatrixQ {
        mat_mul(self, rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul<&Rational> for &MatrixQ {
    type Output = MatrixQ;
    fn mul(self, rhs: &Rational) -> MatrixQ {
        self.scale(rhs)
    }
}

impl Add<&MatrixQ> for &MatrixQ {
    type Output = MatrixQ;
    fn add(self, rhs: &MatrixQ) -> MatrixQ {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub<&MatrixQ> for &MatrixQ {
    type Output = MatrixQ;
    fn sub(self, rhs: &MatrixQ) -> MatrixQ {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &MatrixQ {
    type Output = MatrixQ;
    fn neg(self) -> MatrixQ {
        MatrixQ { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| -v).collect() }
    }
}

impl fmt::Debug for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixQ {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Dense matrix over GF(P).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModMatrix<const P: u64> {
    rows: usize,
    cols: usize,
    data: Vec<Fp<P>>,
}

impl<const P: u64> ModMatrix<P> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Fp<P> {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Fp<P>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<Fp<P>>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        super::rank_of_rows(rows, self.cols)
    }

    pub fn sparse_rows(&self) -> Vec<Vec<(usize, Fp<P>)>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, *v)).collect())
            .collect()
    }
}
