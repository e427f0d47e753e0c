//! Sparse vectors and an incrementally built echelon basis.
//!
//! The closure computations (invariant subspaces, matrix-algebra spans,
//! intertwiner systems) insert many mostly-zero vectors one at a time; a
//! semi-echelon basis keyed by leading index keeps each insertion
//! proportional to the number of pivots actually hit.

use std::collections::HashMap;

use crate::scalar::Scalar;

use super::subspace::Subspace;

/// Sorted `(index, value)` pairs with no explicit zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn from_dense(v: &[Scalar]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    /// Builds from pairs that are already sorted by index.
    pub fn from_sorted(entries: Vec<(usize, Scalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec {
            entries: entries.into_iter().filter(|(_, x)| !x.is_zero()).collect(),
        }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); dim];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<&(usize, Scalar)> {
        self.entries.first()
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn scale(&mut self, c: &Scalar) {
        for (_, x) in &mut self.entries {
            *x *= c;
        }
    }

    /// `self - c * other`.
    pub fn sub_scaled(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, -(c * y)));
                        b.next();
                    } else {
                        let v = x - &(c * y);
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, -(c * y)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }
}

/// A basis in semi-echelon form: every stored row has leading coefficient one
/// at an index no other row leads at.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis {
            dim,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Eliminates leading entries until the leading index is not a pivot.
    /// The result is zero exactly when `v` lies in the span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        while let Some((lead, c)) = v.leading() {
            match self.pivot_row.get(lead) {
                Some(&r) => {
                    let c = c.clone();
                    v = v.sub_scaled(&c, &self.rows[r]);
                }
                None => break,
            }
        }
        v
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut r = self.reduce(v);
        let Some((lead, c)) = r.leading().cloned() else {
            return false;
        };
        r.scale(&c.recip());
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn insert_dense(&mut self, v: &[Scalar]) -> bool {
        self.insert(SparseVec::from_dense(v))
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Fully reduced rows sorted by pivot: the canonical RREF of the span.
    pub fn to_rref_rows(&self) -> Vec<SparseVec> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r].leading().map(|e| e.0));
        let mut rows: Vec<SparseVec> = order.iter().map(|&r| self.rows[r].clone()).collect();
        let pivots: Vec<usize> = rows.iter().map(|r| r.leading().unwrap().0).collect();
        // Back-substitution from the last pivot upward.
        for k in (0..rows.len()).rev() {
            let pivot_vec = rows[k].clone();
            let p = pivots[k];
            for row in rows.iter_mut().take(k) {
                if let Ok(pos) = row.entries.binary_search_by_key(&p, |e| e.0) {
                    let c = row.entries[pos].1.clone();
                    *row = row.sub_scaled(&c, &pivot_vec);
                }
            }
        }
        rows
    }

    pub fn to_subspace(&self) -> Subspace {
        let rows = self.to_rref_rows();
        Subspace::from_rref_unchecked(
            self.dim,
            rows.iter().map(|r| r.to_dense(self.dim)).collect(),
        )
    }

    /// Canonical basis of the solution space of `row . x = 0` for every
    /// stored row.
    pub fn null_space(&self) -> Subspace {
        let rows = self.to_rref_rows();
        let pivots: Vec<usize> = rows.iter().map(|r| r.leading().unwrap().0).collect();
        let is_pivot: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut vecs = Vec::new();
        for f in (0..self.dim).filter(|c| !is_pivot.contains(c)) {
            let mut v = vec![Scalar::zero(); self.dim];
            v[f] = Scalar::one();
            for (row, &p) in rows.iter().zip(&pivots) {
                if let Ok(pos) = row.entries.binary_search_by_key(&f, |e| e.0) {
                    v[p] = -&row.entries[pos].1;
                }
            }
            vecs.push(v);
        }
        Subspace::from_vectors(self.dim, vecs)
    }
}
