//! Exact linear algebra: rationals, prime fields, dense matrices, elimination,
//! polynomials and minimal polynomials.

pub mod echelon;
pub mod field;
pub mod matrix;
pub mod minpoly;
pub mod poly;
pub mod rational;

pub use echelon::{Echelon, SparseVec};
pub use field::{Field, Fp, FpA, FpB, PRIME_A, PRIME_B};
pub use matrix::{anticommutator, commutator, kron, mat_mul, MatrixQ, ModMatrix};
pub use minpoly::{min_poly, min_poly_seeded, spectrum, spectrum_with_scale, Spectrum};
pub use poly::{integer_roots, PolyQ};
pub use rational::{q, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("matrix data of length {len} cannot be shaped {rows}x{cols}")]
    BadLength { rows: usize, cols: usize, len: usize },
    #[error("ragged rows")]
    RaggedRows,
    #[error("operation requires a square matrix, got {0:?}")]
    NotSquare((usize, usize)),
    #[error("prime {prime} divides the denominator of entry ({row}, {col}) = {entry}")]
    BadPrime { prime: u64, row: usize, col: usize, entry: String },
}

/// Rank of a list of dense rows over any field (first-nonzero pivoting).
pub fn rank_of_rows<F: Field>(mut rows: Vec<Vec<F>>, cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].mul(&inv);
            for j in col..cols {
                if !pivot[j].is_zero() {
                    row[j].sub_mul(&f, &pivot[j]);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Scales a row to a primitive integer vector (content 1, same direction).
fn primitive_integer_row(row: &mut [Rational]) {
    let mut lcm = Rational::one();
    for v in row.iter().filter(|v| !v.is_zero()) {
        let d = Rational::from_bigint(v.denom());
        if !d.is_one() {
            let g = Rational::int_gcd(&lcm, &d);
            lcm = &lcm.int_div_exact(&g) * &d;
        }
    }
    if !lcm.is_one() {
        for v in row.iter_mut() {
            *v *= &lcm;
        }
    }
    remove_content(row);
}

fn remove_content(row: &mut [Rational]) {
    let mut g = Rational::zero();
    for v in row.iter().filter(|v| !v.is_zero()) {
        g = Rational::int_gcd(&g, v);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            if !v.is_zero() {
                *v = v.int_div_exact(&g);
            }
        }
    }
}

/// Exact rank by fraction-free elimination on integer-scaled rows.
pub fn rank(a: &MatrixQ) -> usize {
    let cols = a.cols();
    let mut rows: Vec<Vec<Rational>> =
        (0..a.rows()).map(|i| a.row(i).to_vec()).filter(|r: &Vec<Rational>| r.iter().any(|v| !v.is_zero())).collect();
    for r in rows.iter_mut() {
        primitive_integer_row(r);
    }
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        let pv = pivot[col].clone();
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for j in col..cols {
                let mut v = &row[j] * &pv;
                if !pivot[j].is_zero() {
                    v.sub_mul(&f, &pivot[j]);
                }
                row[j] = v;
            }
            remove_content(row);
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank of a stack of flattened matrices.
pub fn rank_of_stack(mats: &[MatrixQ]) -> usize {
    if mats.is_empty() {
        return 0;
    }
    let width = mats[0].rows() * mats[0].cols();
    let mut ech = Echelon::<Rational>::new(width);
    for m in mats {
        ech.insert(SparseVec::from_dense(m.data()));
    }
    ech.len()
}

/// Reduced row echelon form and the pivot column list.
pub fn rref(a: &MatrixQ) -> (MatrixQ, Vec<usize>) {
    let (nr, nc) = a.shape();
    let mut rows: Vec<Vec<Rational>> = (0..nr).map(|i| a.row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip().expect("nonzero pivot");
        for v in rows[r][col..].iter_mut() {
            *v *= &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for j in col..nc {
                if !pivot[j].is_zero() {
                    row[j].sub_mul(&f, &pivot[j]);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let data = rows.into_iter().flatten().collect();
    (MatrixQ::from_vec(nr, nc, data).expect("shape preserved"), pivots)
}

/// Basis of the right kernel as column vectors: one per free column, with a 1
/// in that column and zeros in the other free columns.
pub fn nullspace_basis(a: &MatrixQ) -> Vec<MatrixQ> {
    let nc = a.cols();
    let (r, pivots) = rref(a);
    let mut is_pivot = vec![false; nc];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..nc)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); nc];
            v[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                let e = r.get(i, free);
                if !e.is_zero() {
                    v[p] = -e;
                }
            }
            MatrixQ::column(v)
        })
        .collect()
}

/// Stacks column vectors side by side.
pub fn hstack_columns(cols: &[MatrixQ], rows: usize) -> MatrixQ {
    let mut m = MatrixQ::zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for i in 0..rows {
            m.set(i, j, c.get(i, 0).clone());
        }
    }
    m
}

/// Vertical concatenation of matrices with equal column counts.
pub fn vstack(mats: &[&MatrixQ]) -> Result<MatrixQ, LinalgError> {
    let cols = mats.first().map_or(0, |m| m.cols());
    let mut data = Vec::new();
    let mut rows = 0;
    for m in mats {
        if m.cols() != cols {
            return Err(LinalgError::DimensionMismatch { op: "vstack", left: (rows, cols), right: m.shape() });
        }
        rows += m.rows();
        data.extend_from_slice(m.data());
    }
    MatrixQ::from_vec(rows, cols, data)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_basics() {
        assert_eq!(rank(&MatrixQ::zeros(3, 4)), 0);
        assert_eq!(rank(&MatrixQ::identity(5)), 5);
        let m = MatrixQ::from_rows(vec![
            vec![q(1, 2), q(1, 3), q(1, 1)],
            vec![q(1, 1), q(2, 3), q(2, 1)],
            vec![q(0, 1), q(1, 7), q(-1, 1)],
        ])
        .unwrap();
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace_basis(&MatrixQ::identity(4)).is_empty());
        let ns = nullspace_basis(&MatrixQ::zeros(2, 2));
        assert_eq!(ns.len(), 2);
        let a = MatrixQ::from_ints(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace_basis(&a);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!((&a * v).is_zero());
        }
    }

    #[test]
    fn modular_rank_never_exceeds_rational_rank() {
        let m = MatrixQ::from_ints(&[&[1, 2], &[3, 6]]);
        assert_eq!(m.modular_view::<PRIME_A>().unwrap().rank(), 1);
        assert_eq!(rank(&m), 1);
    }
}
