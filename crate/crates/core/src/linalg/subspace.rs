use crate::scalar::Scalar;

use super::sparse::{EchelonBasis, SparseVec};

/// A subspace of `Q^n` stored by its reduced row-echelon basis, so that two
/// equal subspaces compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace {
            ambient_dim: n,
            basis: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        Subspace {
            ambient_dim: n,
            basis: (0..n)
                .map(|i| {
                    let mut v = vec![Scalar::zero(); n];
                    v[i] = Scalar::one();
                    v
                })
                .collect(),
        }
    }

    /// Span of arbitrary vectors of length `n`.
    pub fn from_vectors(n: usize, vectors: impl IntoIterator<Item = Vec<Scalar>>) -> Self {
        let mut e = EchelonBasis::new(n);
        for v in vectors {
            assert_eq!(v.len(), n, "vector length");
            e.insert_dense(&v);
        }
        e.to_subspace()
    }

    pub(crate) fn from_rref_unchecked(n: usize, basis: Vec<Vec<Scalar>>) -> Self {
        Subspace {
            ambient_dim: n,
            basis,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|v| {
                v.iter()
                    .position(|x| !x.is_zero())
                    .expect("nonzero basis vector")
            })
            .collect()
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    /// For an RREF basis these are just the entries of `v` at the pivots.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient_dim, "vector length");
        let coords: Vec<Scalar> = self.pivots().iter().map(|&p| v[p].clone()).collect();
        let mut recon = vec![Scalar::zero(); self.ambient_dim];
        for (c, b) in coords.iter().zip(&self.basis) {
            for (r, x) in recon.iter_mut().zip(b) {
                r.add_mul(c, x);
            }
        }
        (recon == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        Subspace::from_vectors(
            self.ambient_dim,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    pub(crate) fn echelon(&self) -> EchelonBasis {
        let mut e = EchelonBasis::new(self.ambient_dim);
        for v in &self.basis {
            e.insert(SparseVec::from_dense(v));
        }
        e
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<Scalar> {
        x.iter().map(|&a| Scalar::from_int(a)).collect()
    }

    #[test]
    fn equal_spans_compare_equal() {
        let a = Subspace::from_vectors(3, vec![v(&[1, 2, 0]), v(&[0, 1, 1])]);
        let b = Subspace::from_vectors(3, vec![v(&[1, 3, 1]), v(&[2, 3, -1])]);
        assert_eq!(a, b);
        assert_ne!(a, Subspace::full(3));
    }

    #[test]
    fn coordinates_reconstruct() {
        let a = Subspace::from_vectors(3, vec![v(&[1, 2, 0]), v(&[0, 1, 1])]);
        let w = v(&[2, 7, 3]);
        let c = a.coordinates(&w).unwrap();
        assert_eq!(c.len(), 2);
        assert!(a.coordinates(&v(&[0, 0, 1])).is_none());
    }

    #[test]
    fn sum_and_containment() {
        let a = Subspace::from_vectors(3, vec![v(&[1, 0, 0])]);
        let b = Subspace::from_vectors(3, vec![v(&[0, 1, 0])]);
        let s = a.sum(&b);
        assert_eq!(s.dim(), 2);
        assert!(s.contains_subspace(&a));
        assert!(!a.contains_subspace(&s));
    }
}
