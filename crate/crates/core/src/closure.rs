//! Unital matrix-algebra closures by spanning-set saturation, spectral
//! projectors and commutant dimensions.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::echelon::Scratch;
use crate::linalg::{Echelon, Field, Fp, MatrixQ, Rational, SparseVec, PRIME_A, PRIME_B};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClosureError {
    #[error("generator {index} has shape {shape:?}, expected {dim}x{dim}")]
    DimensionMismatch { index: usize, shape: (usize, usize), dim: usize },
    #[error("span grew to {dimension}, beyond the ambient dimension {ambient}")]
    AmbientExceeded { dimension: usize, ambient: usize },
    #[error("time budget of {budget_ms} ms exhausted at dimension {dimension} after {generations} generations")]
    BudgetExhausted { budget_ms: u128, dimension: usize, generations: usize },
    #[error("prime {prime} divides a denominator of generator {index}")]
    BadPrime { prime: u64, index: usize },
    #[error("eigenvalue {0} is not in the supplied spectrum")]
    NotAnEigenvalue(Rational),
    #[error("spectrum has a repeated value {0}")]
    RepeatedRoot(Rational),
    #[error("commutant needs a diagonal first operator")]
    NotDiagonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    Modular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Right,
    Left,
}

#[derive(Clone, Debug)]
pub struct ClosureOptions {
    pub side: Side,
    pub budget: Option<Duration>,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions { side: Side::Right, budget: None }
    }
}

/// Square sparse matrix over a field, row lists sorted by column.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMat<F> {
    n: usize,
    rows: Vec<Vec<(u32, F)>>,
}

impl<F: Field> SparseMat<F> {
    pub fn identity(n: usize) -> Self {
        SparseMat { n, rows: (0..n).map(|i| vec![(i as u32, F::one())]).collect() }
    }

    pub fn from_matrix(m: &MatrixQ, conv: impl Fn(&Rational) -> Option<F>) -> Option<Self> {
        let n = m.rows();
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::new();
            for (j, v) in m.row(i).iter().enumerate() {
                if !v.is_zero() {
                    row.push((j as u32, conv(v)?));
                }
            }
            rows.push(row);
        }
        Some(SparseMat { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut scratch = Scratch::new(self.n);
        let rows = self
            .rows
            .iter()
            .map(|row| {
                for (k, a) in row {
                    for (j, b) in &rhs.rows[*k as usize] {
                        scratch.add_mul(*j as usize, a, b);
                    }
                }
                scratch.drain().entries
            })
            .collect();
        SparseMat { n: self.n, rows }
    }

    pub fn flatten(&self) -> SparseVec<F> {
        let n = self.n as u32;
        SparseVec {
            entries: self
                .rows
                .iter()
                .enumerate()
                .flat_map(|(i, row)| row.iter().map(move |(j, v)| (i as u32 * n + j, v.clone())))
                .collect(),
        }
    }

    pub fn from_flat(n: usize, v: &SparseVec<F>) -> Self {
        let mut rows = vec![Vec::new(); n];
        for (idx, x) in &v.entries {
            rows[*idx as usize / n].push(((*idx as usize % n) as u32, x.clone()));
        }
        SparseMat { n, rows }
    }
}

impl SparseMat<Rational> {
    pub fn to_matrix(&self) -> MatrixQ {
        let mut m = MatrixQ::zeros(self.n, self.n);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                m.set(i, *j as usize, v.clone());
            }
        }
        m
    }
}

/// A linearly independent family of words together with an echelon form of
/// its span. `tracks[r]` expresses echelon row `r` in terms of the words.
pub struct SpanBasis<F> {
    n: usize,
    echelon: Echelon<F>,
    elements: Vec<SparseMat<F>>,
    tracks: Vec<Vec<F>>,
}

impl<F: Field> SpanBasis<F> {
    fn new(n: usize) -> Self {
        SpanBasis { n, echelon: Echelon::new(n * n), elements: Vec::new(), tracks: Vec::new() }
    }

    pub fn dimension(&self) -> usize {
        self.elements.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n * self.n
    }

    pub fn matrix_size(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[SparseMat<F>] {
        &self.elements
    }

    /// Adds `m` when it is independent of the current span.
    fn offer(&mut self, m: SparseMat<F>) -> bool {
        let red = self.echelon.reduce(&m.flatten());
        if red.residual.is_zero() {
            return false;
        }
        let k = self.elements.len();
        let mut track = vec![F::zero(); k + 1];
        track[k] = F::one();
        for (r, f) in &red.factors {
            for (i, t) in self.tracks[*r].iter().enumerate() {
                track[i].sub_mul(f, t);
            }
        }
        let inv = self.echelon.push_residual(red.residual);
        for t in track.iter_mut() {
            *t = t.mul(&inv);
        }
        self.tracks.push(track);
        self.elements.push(m);
        true
    }

    /// Coordinates of `m` in terms of the words, if it lies in the span.
    pub fn coordinates(&mut self, m: &SparseMat<F>) -> Option<Vec<F>> {
        let red = self.echelon.reduce(&m.flatten());
        if !red.residual.is_zero() {
            return None;
        }
        let mut coords = vec![F::zero(); self.elements.len()];
        for (r, f) in &red.factors {
            for (i, t) in self.tracks[*r].iter().enumerate() {
                coords[i].add_mul(f, t);
            }
        }
        Some(coords)
    }
}

impl SpanBasis<Rational> {
    pub fn element_matrices(&self) -> Vec<MatrixQ> {
        self.elements.iter().map(SparseMat::to_matrix).collect()
    }
}

/// Saturates the unit under multiplication by the generators.
pub fn saturate<F: Field>(
    gens: &[SparseMat<F>],
    n: usize,
    opts: &ClosureOptions,
) -> Result<(SpanBasis<F>, usize), ClosureError> {
    let start = Instant::now();
    let ambient = n * n;
    let mut basis = SpanBasis::new(n);
    basis.offer(SparseMat::identity(n));
    let mut frontier = vec![0usize];
    let mut generations = 0;
    while !frontier.is_empty() {
        generations += 1;
        let pairs: Vec<(usize, usize)> = frontier.iter().flat_map(|&e| (0..gens.len()).map(move |g| (e, g))).collect();
        let candidates: Vec<SparseMat<F>> = pairs
            .par_iter()
            .map(|&(e, g)| match opts.side {
                Side::Right => basis.elements[e].mul(&gens[g]),
                Side::Left => gens[g].mul(&basis.elements[e]),
            })
            .collect();
        let mut next = Vec::new();
        for cand in candidates {
            if basis.offer(cand) {
                next.push(basis.dimension() - 1);
                if basis.dimension() > ambient {
                    return Err(ClosureError::AmbientExceeded { dimension: basis.dimension(), ambient });
                }
            }
            if let Some(budget) = opts.budget {
                if start.elapsed() > budget {
                    return Err(ClosureError::BudgetExhausted {
                        budget_ms: budget.as_millis(),
                        dimension: basis.dimension(),
                        generations,
                    });
                }
            }
        }
        frontier = next;
    }
    Ok((basis, generations))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// Every rank decision was made over the rationals.
    Exact,
    /// Two independent primes agreed.
    DualPrime { primes: [u64; 2] },
    /// The primes disagreed and the exact computation decided.
    ExactFallback { modular: [usize; 2] },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub dimension: usize,
    pub generations: usize,
    pub ambient_dim: usize,
    pub certified: bool,
    pub certificate: Certificate,
}

pub struct Closure {
    /// Present whenever the exact computation ran.
    pub basis: Option<SpanBasis<Rational>>,
    /// The first prime's basis in modular mode.
    pub modular_basis: Option<SpanBasis<Fp<PRIME_A>>>,
    pub report: ClosureReport,
}

fn check_shapes(gens: &[MatrixQ]) -> Result<usize, ClosureError> {
    let n = gens.first().map_or(1, MatrixQ::rows);
    for (index, g) in gens.iter().enumerate() {
        if g.shape() != (n, n) {
            return Err(ClosureError::DimensionMismatch { index, shape: g.shape(), dim: n });
        }
    }
    Ok(n)
}

pub fn to_sparse_q(gens: &[MatrixQ]) -> Vec<SparseMat<Rational>> {
    gens.iter().map(|g| SparseMat::from_matrix(g, |v| Some(v.clone())).expect("rational entries")).collect()
}

pub fn to_sparse_p<const P: u64>(gens: &[MatrixQ]) -> Result<Vec<SparseMat<Fp<P>>>, ClosureError> {
    gens.iter()
        .enumerate()
        .map(|(index, g)| {
            SparseMat::from_matrix(g, Fp::<P>::from_rational).ok_or(ClosureError::BadPrime { prime: P, index })
        })
        .collect()
}

pub fn unital_closure_exact(gens: &[MatrixQ], opts: &ClosureOptions) -> Result<Closure, ClosureError> {
    let n = check_shapes(gens)?;
    let (basis, generations) = saturate(&to_sparse_q(gens), n, opts)?;
    let report = ClosureReport {
        dimension: basis.dimension(),
        generations,
        ambient_dim: n * n,
        certified: true,
        certificate: Certificate::Exact,
    };
    Ok(Closure { basis: Some(basis), modular_basis: None, report })
}

/// Dimension over two primes; the exact computation settles any disagreement.
pub fn unital_closure_modular(gens: &[MatrixQ], opts: &ClosureOptions) -> Result<Closure, ClosureError> {
    let n = check_shapes(gens)?;
    let ga = to_sparse_p::<PRIME_A>(gens)?;
    let gb = to_sparse_p::<PRIME_B>(gens)?;
    let (ra, rb) = rayon::join(|| saturate(&ga, n, opts), || saturate(&gb, n, opts));
    let ((ba, gen_a), (bb, _)) = (ra?, rb?);
    if ba.dimension() == bb.dimension() {
        return Ok(Closure {
            basis: None,
            report: ClosureReport {
                dimension: ba.dimension(),
                generations: gen_a,
                ambient_dim: n * n,
                certified: true,
                certificate: Certificate::DualPrime { primes: [PRIME_A, PRIME_B] },
            },
            modular_basis: Some(ba),
        });
    }
    let modular = [ba.dimension(), bb.dimension()];
    let mut exact = unital_closure_exact(gens, opts)?;
    exact.report.certificate = Certificate::ExactFallback { modular };
    Ok(exact)
}

pub fn unital_closure(gens: &[MatrixQ], mode: Mode, opts: &ClosureOptions) -> Result<Closure, ClosureError> {
    match mode {
        Mode::Exact => unital_closure_exact(gens, opts),
        Mode::Modular => unital_closure_modular(gens, opts),
    }
}

/// True when every element commutes with every operator.
pub fn elements_commute_with<F: Field>(elements: &[SparseMat<F>], ops: &[SparseMat<F>]) -> bool {
    elements.par_iter().all(|m| ops.iter().all(|a| m.mul(a) == a.mul(m)))
}

/// Coordinates of `m` in the words of an exact closure, or `None`.
pub fn membership(m: &MatrixQ, basis: &mut SpanBasis<Rational>) -> Option<Vec<Rational>> {
    if m.shape() != (basis.matrix_size(), basis.matrix_size()) {
        return None;
    }
    let sm = SparseMat::from_matrix(m, |v| Some(v.clone())).expect("rational entries");
    basis.coordinates(&sm)
}

/// `∏_{μ≠λ} (a − μ)/(λ − μ)`.
pub fn spectral_projector(a: &MatrixQ, eigenvalue: &Rational, spectrum: &[Rational]) -> Result<MatrixQ, ClosureError> {
    let mut seen = std::collections::BTreeSet::new();
    for mu in spectrum {
        if !seen.insert(mu.clone()) {
            return Err(ClosureError::RepeatedRoot(mu.clone()));
        }
    }
    if !seen.contains(eigenvalue) {
        return Err(ClosureError::NotAnEigenvalue(eigenvalue.clone()));
    }
    let mut p = MatrixQ::identity(a.rows());
    for mu in spectrum.iter().filter(|mu| *mu != eigenvalue) {
        let denom = (eigenvalue - mu).recip().expect("distinct values");
        p = (&p * &a.add_scalar(&-mu)).scale(&denom);
    }
    Ok(p)
}

/// Dimension of `{M : [A, M] = 0 for all A}` where the first operator is
/// diagonal; `M` is sought inside the block structure it forces.
pub fn commutant_dimension_over<F: Field>(diag: &MatrixQ, others: &[SparseMat<F>]) -> Result<usize, ClosureError> {
    if !diag.is_diagonal() {
        return Err(ClosureError::NotDiagonal);
    }
    let n = diag.rows();
    let mut blocks: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        blocks.entry(diag.get(i, i).clone()).or_default().push(i);
    }
    let mut block_of = vec![0usize; n];
    let block_list: Vec<Vec<usize>> = blocks.into_values().collect();
    for (b, idx) in block_list.iter().enumerate() {
        for &i in idx {
            block_of[i] = b;
        }
    }
    // unknown (k, l) with k, l in one block
    let mut unknown = vec![u32::MAX; n * n];
    let mut count = 0u32;
    for idx in &block_list {
        for &k in idx {
            for &l in idx {
                unknown[k * n + l] = count;
                count += 1;
            }
        }
    }
    let mut ech = Echelon::<F>::new(count as usize);
    for a in others {
        let mut eqs: BTreeMap<(u32, u32), BTreeMap<u32, F>> = BTreeMap::new();
        for (i, row) in a.rows.iter().enumerate() {
            for (k, v) in row {
                let k = *k as usize;
                // (A M)[i][l] gets A[i][k] M[k][l]
                for &l in &block_list[block_of[k]] {
                    let e = eqs.entry((i as u32, l as u32)).or_default().entry(unknown[k * n + l]).or_insert(F::zero());
                    *e = e.add(v);
                }
                // (M A)[i'][k] gets M[i'][i] A[i][k]
                for &ip in &block_list[block_of[i]] {
                    let e =
                        eqs.entry((ip as u32, k as u32)).or_default().entry(unknown[ip * n + i]).or_insert(F::zero());
                    *e = e.sub(v);
                }
            }
        }
        for (_, terms) in eqs {
            let entries: Vec<(u32, F)> = terms.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            if !entries.is_empty() {
                ech.insert(SparseVec { entries });
            }
        }
    }
    Ok(count as usize - ech.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutantReport {
    pub dimension: usize,
    pub certified: bool,
    pub certificate: Certificate,
}

/// Commutant of `diag` together with `others`.
pub fn commutant_dimension(diag: &MatrixQ, others: &[&MatrixQ], mode: Mode) -> Result<CommutantReport, ClosureError> {
    let owned: Vec<MatrixQ> = others.iter().map(|m| (*m).clone()).collect();
    match mode {
        Mode::Exact => Ok(CommutantReport {
            dimension: commutant_dimension_over(diag, &to_sparse_q(&owned))?,
            certified: true,
            certificate: Certificate::Exact,
        }),
        Mode::Modular => {
            let a = commutant_dimension_over(diag, &to_sparse_p::<PRIME_A>(&owned)?)?;
            let b = commutant_dimension_over(diag, &to_sparse_p::<PRIME_B>(&owned)?)?;
            if a == b {
                Ok(CommutantReport {
                    dimension: a,
                    certified: true,
                    certificate: Certificate::DualPrime { primes: [PRIME_A, PRIME_B] },
                })
            } else {
                let mut rep = commutant_dimension(diag, others, Mode::Exact)?;
                rep.certificate = Certificate::ExactFallback { modular: [a, b] };
                Ok(rep)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn opts() -> ClosureOptions {
        ClosureOptions::default()
    }

    #[test]
    fn empty_generators_give_the_unit() {
        let c = unital_closure_exact(&[], &opts()).unwrap();
        assert_eq!(c.report.dimension, 1);
    }

    #[test]
    fn diagonal_generator() {
        let d = MatrixQ::diag(&[q(0, 1), q(2, 1), q(-2, 1)]);
        let c = unital_closure_exact(std::slice::from_ref(&d), &opts()).unwrap();
        assert_eq!(c.report.dimension, 3);
        let m = unital_closure_modular(&[d], &opts()).unwrap();
        assert_eq!(m.report.dimension, 3);
        assert!(matches!(m.report.certificate, Certificate::DualPrime { .. }));
    }

    #[test]
    fn full_matrix_algebra() {
        let e = MatrixQ::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        let d = MatrixQ::diag(&[q(1, 1), q(2, 1), q(3, 1)]);
        let mut c = unital_closure_exact(&[e, d], &opts()).unwrap();
        assert_eq!(c.report.dimension, 9);
        let basis = c.basis.as_mut().unwrap();
        let target = MatrixQ::from_ints(&[&[0, 0, 0], &[7, 0, 0], &[0, 0, 0]]);
        let coords = membership(&target, basis).unwrap();
        let rebuilt =
            basis.element_matrices().iter().zip(&coords).fold(MatrixQ::zeros(3, 3), |acc, (m, c)| &acc + &m.scale(c));
        assert_eq!(rebuilt, target);
    }

    #[test]
    fn rank_one_not_in_scalars() {
        let mut c = unital_closure_exact(&[MatrixQ::identity(2)], &opts()).unwrap();
        let basis = c.basis.as_mut().unwrap();
        assert!(membership(&MatrixQ::identity(2), basis).is_some());
        assert!(membership(&MatrixQ::from_ints(&[&[1, 0], &[0, 0]]), basis).is_none());
    }

    #[test]
    fn projectors() {
        let d = MatrixQ::diag(&[q(0, 1), q(2, 1), q(-2, 1)]);
        let spec = [q(-2, 1), q(0, 1), q(2, 1)];
        assert_eq!(spectral_projector(&d, &q(0, 1), &spec).unwrap(), MatrixQ::diag(&[q(1, 1), q(0, 1), q(0, 1)]));
        let sum = spec
            .iter()
            .map(|l| spectral_projector(&d, l, &spec).unwrap())
            .fold(MatrixQ::zeros(3, 3), |acc, p| &acc + &p);
        assert_eq!(sum, MatrixQ::identity(3));
        assert!(matches!(spectral_projector(&d, &q(0, 1), &[q(0, 1), q(0, 1)]), Err(ClosureError::RepeatedRoot(_))));
    }

    #[test]
    fn budget_and_shape_errors() {
        let bad = [MatrixQ::identity(2), MatrixQ::identity(3)];
        assert!(matches!(unital_closure_exact(&bad, &opts()), Err(ClosureError::DimensionMismatch { index: 1, .. })));
        let e = MatrixQ::from_ints(&[&[0, 1], &[1, 0]]);
        let tight = ClosureOptions { budget: Some(Duration::ZERO), ..opts() };
        assert!(matches!(unital_closure_exact(&[e], &tight), Err(ClosureError::BudgetExhausted { .. })));
    }

    #[test]
    fn commutant_of_diagonal_and_shift() {
        let d = MatrixQ::diag(&[q(1, 1), q(1, 1), q(0, 1)]);
        assert_eq!(commutant_dimension(&d, &[], Mode::Exact).unwrap().dimension, 5);
        let swap = MatrixQ::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(commutant_dimension(&d, &[&swap], Mode::Exact).unwrap().dimension, 3);
        assert_eq!(commutant_dimension(&d, &[&swap], Mode::Modular).unwrap().dimension, 3);
    }
}
