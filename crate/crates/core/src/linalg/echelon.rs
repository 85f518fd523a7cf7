//! Incremental row echelon basis over sparse vectors.
//!
//! Rows are stored with their pivot (first nonzero) normalized to one. A new
//! candidate is reduced by walking pivots in increasing column order against a
//! dense scratch buffer, so each reduction costs at most the total size of the
//! rows it actually touches.

use std::collections::BTreeMap;

use super::field::Field;

/// Sorted `(index, value)` pairs with no explicit zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<F> {
    pub entries: Vec<(u32, F)>,
}

impl<F: Field> SparseVec<F> {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn from_dense(values: &[F]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i as u32, v.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn to_dense(&self, width: usize) -> Vec<F> {
        let mut v = vec![F::zero(); width];
        for (i, x) in &self.entries {
            v[*i as usize] = x.clone();
        }
        v
    }
}

impl<F: Field> Default for SparseVec<F> {
    fn default() -> Self {
        Self::new()
    }
}

/// Dense accumulator that remembers which slots were written.
pub struct Scratch<F> {
    values: Vec<F>,
    mark: Vec<bool>,
    touched: Vec<u32>,
}

impl<F: Field> Scratch<F> {
    pub fn new(width: usize) -> Self {
        Scratch { values: vec![F::zero(); width], mark: vec![false; width], touched: Vec::new() }
    }

    #[inline]
    fn touch(&mut self, i: usize) {
        if !self.mark[i] {
            self.mark[i] = true;
            self.touched.push(i as u32);
        }
    }

    #[inline]
    pub fn add_mul(&mut self, i: usize, a: &F, b: &F) {
        self.touch(i);
        self.values[i].add_mul(a, b);
    }

    #[inline]
    pub fn add(&mut self, i: usize, a: &F) {
        self.touch(i);
        self.values[i] = self.values[i].add(a);
    }

    pub fn load(&mut self, v: &SparseVec<F>) {
        for (i, x) in &v.entries {
            self.add(*i as usize, x);
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> &F {
        &self.values[i]
    }

    /// `self -= f * row`
    fn sub_row(&mut self, f: &F, row: &SparseVec<F>) {
        for (j, v) in &row.entries {
            let j = *j as usize;
            self.touch(j);
            self.values[j].sub_mul(f, v);
        }
    }

    /// Extracts the nonzero contents and resets the buffer.
    pub fn drain(&mut self) -> SparseVec<F> {
        self.touched.sort_unstable();
        let mut entries = Vec::new();
        for &i in &self.touched {
            let i = i as usize;
            self.mark[i] = false;
            let v = std::mem::replace(&mut self.values[i], F::zero());
            if !v.is_zero() {
                entries.push((i as u32, v));
            }
        }
        self.touched.clear();
        SparseVec { entries }
    }

    pub fn clear(&mut self) {
        for &i in &self.touched {
            self.mark[i as usize] = false;
            self.values[i as usize] = F::zero();
        }
        self.touched.clear();
    }
}

pub struct Echelon<F> {
    width: usize,
    rows: Vec<SparseVec<F>>,
    /// pivot column -> row index
    by_pivot: BTreeMap<u32, usize>,
    scratch: Scratch<F>,
}

/// Outcome of reducing a candidate against the basis.
pub struct Reduction<F> {
    /// `(row index, factor)` such that candidate = Σ factor·row + residual.
    pub factors: Vec<(usize, F)>,
    pub residual: SparseVec<F>,
}

impl<F: Field> Echelon<F> {
    pub fn new(width: usize) -> Self {
        Echelon { width, rows: Vec::new(), by_pivot: BTreeMap::new(), scratch: Scratch::new(width) }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.entries[0].0 as usize)
    }

    /// Reduces whatever has been accumulated in the scratch buffer.
    fn reduce_scratch(&mut self, track: bool) -> Reduction<F> {
        let mut factors = Vec::new();
        // Rows only have entries at or after their pivot, so an ascending
        // walk never re-introduces an already cleared pivot column.
        for (&col, &r) in &self.by_pivot {
            let c = col as usize;
            if !self.scratch.mark[c] || self.scratch.get(c).is_zero() {
                continue;
            }
            let f = self.scratch.get(c).clone();
            self.scratch.sub_row(&f, &self.rows[r]);
            if track {
                factors.push((r, f));
            }
        }
        Reduction { factors, residual: self.scratch.drain() }
    }

    /// Reduces `v` without modifying the basis.
    pub fn reduce(&mut self, v: &SparseVec<F>) -> Reduction<F> {
        self.scratch.load(v);
        self.reduce_scratch(true)
    }

    /// Appends a nonzero residual as a new row; returns the inverse of its
    /// leading coefficient (the factor applied during normalization).
    pub fn push_residual(&mut self, mut residual: SparseVec<F>) -> F {
        assert!(!residual.is_zero(), "cannot push a zero residual");
        let inv = residual.entries[0].1.inv().expect("nonzero leading entry");
        for (_, v) in residual.entries.iter_mut() {
            *v = v.mul(&inv);
        }
        let col = residual.entries[0].0;
        self.by_pivot.insert(col, self.rows.len());
        self.rows.push(residual);
        inv
    }

    /// Inserts `v`; returns true when it enlarged the span.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        self.scratch.load(&v);
        self.commit_scratch()
    }

    /// Lets the caller accumulate a candidate directly into the scratch
    /// buffer, then reduces and inserts it.
    pub fn insert_with(&mut self, fill: impl FnOnce(&mut Scratch<F>)) -> bool {
        fill(&mut self.scratch);
        self.commit_scratch()
    }

    fn commit_scratch(&mut self) -> bool {
        let red = self.reduce_scratch(false);
        if red.residual.is_zero() {
            false
        } else {
            self.push_residual(red.residual);
            true
        }
    }

    pub fn contains(&mut self, v: &SparseVec<F>) -> bool {
        self.reduce(v).residual.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{q, Rational};

    fn sv(v: &[Rational]) -> SparseVec<Rational> {
        SparseVec::from_dense(v)
    }

    #[test]
    fn insert_and_reduce() {
        let mut e = Echelon::new(3);
        assert!(e.insert(sv(&[q(0, 1), q(2, 1), q(4, 1)])));
        assert!(e.insert(sv(&[q(1, 1), q(1, 1), q(0, 1)])));
        assert!(!e.insert(sv(&[q(1, 1), q(3, 1), q(4, 1)])));
        assert_eq!(e.len(), 2);
        let target = sv(&[q(2, 1), q(5, 1), q(6, 1)]);
        let red = e.reduce(&target);
        assert!(red.residual.is_zero());
        let mut rebuilt = vec![Rational::zero(); 3];
        for (r, f) in &red.factors {
            for (j, v) in &e.rows()[*r].entries {
                rebuilt[*j as usize] += f * v;
            }
        }
        assert_eq!(rebuilt, target.to_dense(3));
    }

    #[test]
    fn scratch_resets_between_candidates() {
        let mut e = Echelon::<Rational>::new(4);
        assert!(e.insert_with(|s| s.add(3, &q(1, 1))));
        assert!(!e.insert_with(|s| s.add(3, &q(5, 1))));
        assert!(e.insert_with(|s| s.add(0, &q(1, 1))));
        assert_eq!(e.len(), 2);
    }
}
