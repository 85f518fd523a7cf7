//! Minimal polynomials and rational spectra.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::echelon::{Echelon, SparseVec};
use super::matrix::MatrixQ;
use super::poly::{integer_roots, PolyQ};
use super::rational::Rational;

/// Dimension up to which the minimal polynomial is found from the flattened
/// powers of the matrix; larger matrices use a Krylov candidate.
pub const FLATTENED_MAX_DIM: usize = 64;

/// Finds the first linear dependence in `v_0, v_1, …` and returns the monic
/// polynomial `x^k - Σ c_i x^i` encoding it.
fn first_dependence(width: usize, mut next: impl FnMut(usize) -> SparseVec<Rational>) -> PolyQ {
    let mut ech = Echelon::<Rational>::new(width);
    let mut tracks: Vec<Vec<Rational>> = Vec::new();
    for k in 0.. {
        let v = next(k);
        let red = ech.reduce(&v);
        if red.residual.is_zero() {
            let mut coeffs = vec![Rational::zero(); k + 1];
            for (r, f) in &red.factors {
                for (i, t) in tracks[*r].iter().enumerate() {
                    coeffs[i].sub_mul(f, t);
                }
            }
            coeffs[k] = Rational::one();
            return PolyQ::new(coeffs);
        }
        let mut track = vec![Rational::zero(); k + 1];
        track[k] = Rational::one();
        for (r, f) in &red.factors {
            for (i, t) in tracks[*r].iter().enumerate() {
                track[i].sub_mul(f, t);
            }
        }
        let inv = ech.push_residual(red.residual);
        for t in track.iter_mut() {
            *t *= &inv;
        }
        tracks.push(track);
    }
    unreachable!()
}

fn mat_vec(rows: &[Vec<(usize, &Rational)>], v: &[Rational]) -> Vec<Rational> {
    rows.iter()
        .map(|row| {
            let mut acc = Rational::zero();
            for &(j, a) in row {
                acc.add_mul(a, &v[j]);
            }
            acc
        })
        .collect()
}

/// Minimal polynomial of the sequence `v, Av, A²v, …`.
fn vector_min_poly(rows: &[Vec<(usize, &Rational)>], v: Vec<Rational>) -> PolyQ {
    let n = v.len();
    let mut cur = v;
    first_dependence(n, |k| {
        if k > 0 {
            cur = mat_vec(rows, &cur);
        }
        SparseVec::from_dense(&cur)
    })
}

/// Minimal polynomial with the default Krylov seed.
pub fn min_poly(a: &MatrixQ) -> PolyQ {
    min_poly_seeded(a, 0)
}

/// Least-degree monic `p` with `p(a) = 0`. The seed only picks the Krylov
/// starting vector for large matrices; the result does not depend on it.
pub fn min_poly_seeded(a: &MatrixQ, seed: u64) -> PolyQ {
    assert!(a.is_square(), "min_poly needs a square matrix");
    let n = a.rows();
    if n == 0 {
        return PolyQ::one();
    }
    let p = if n <= FLATTENED_MAX_DIM {
        let mut power = MatrixQ::identity(n);
        first_dependence(n * n, |k| {
            if k > 0 {
                power = &power * a;
            }
            SparseVec::from_dense(power.data())
        })
    } else {
        krylov_min_poly(a, seed)
    };
    assert!(p.eval_matrix(a).is_zero(), "minimal polynomial failed exact verification");
    p
}

fn krylov_min_poly(a: &MatrixQ, seed: u64) -> PolyQ {
    let n = a.rows();
    let rows = a.sparse_rows();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start: Vec<Rational> = (0..n).map(|_| Rational::from_int(rng.gen_range(-9..=9))).collect();
    let mut p = vector_min_poly(&rows, start);
    // p is the lcm of vector minimal polynomials seen so far; extend it with
    // a witness column until it annihilates the whole matrix.
    loop {
        let residual = p.eval_matrix(a);
        if residual.is_zero() {
            return p;
        }
        let col = (0..n)
            .find(|&j| (0..n).any(|i| !residual.get(i, j).is_zero()))
            .expect("nonzero residual has a nonzero column");
        let w: Vec<Rational> = (0..n).map(|i| residual.get(i, col).clone()).collect();
        let extra = vector_min_poly(&rows, w);
        p = p.mul(&extra);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    /// Distinct eigenvalues, ascending.
    pub eigenvalues: Vec<Rational>,
    pub min_poly: PolyQ,
    /// True when the minimal polynomial factors completely over the
    /// eigenvalues found.
    pub split: bool,
    /// True when no eigenvalue is repeated in the minimal polynomial.
    pub squarefree: bool,
}

impl Spectrum {
    pub fn eigenvalues_i64(&self) -> Option<Vec<i64>> {
        self.eigenvalues.iter().map(Rational::to_i64).collect()
    }
}

/// Rational spectrum of a matrix whose eigenvalues lie in `(1/scale)ℤ`.
pub fn spectrum_with_scale(a: &MatrixQ, scale: i64, seed: u64) -> Spectrum {
    let p = min_poly_seeded(a, seed);
    let deg = p.degree().unwrap_or(0);
    // q(y) = scale^deg · p(y / scale) has the roots scale·λ.
    let s = Rational::from_int(scale);
    let scaled = PolyQ::new(p.coeffs().iter().enumerate().map(|(i, c)| c * &s.pow((deg - i) as u32)).collect());
    let roots = integer_roots(&scaled);
    let mut distinct: Vec<i64> = roots.clone();
    distinct.dedup();
    Spectrum {
        eigenvalues: distinct.iter().map(|&r| Rational::new(r, scale)).collect(),
        split: roots.len() == deg,
        squarefree: distinct.len() == roots.len(),
        min_poly: p,
    }
}

/// Spectrum for operators with eigenvalues in `(1/8)ℤ`.
pub fn spectrum(a: &MatrixQ) -> Spectrum {
    spectrum_with_scale(a, 8, 0)
}
