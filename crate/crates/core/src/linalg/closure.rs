use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::matrix::Matrix;
use super::sparse::{EchelonBasis, SparseVec};
use super::subspace::Subspace;

fn check_square(n: usize, ops: &[&Matrix]) -> Result<()> {
    match ops.iter().find(|m| m.rows() != n || m.cols() != n) {
        Some(m) => Err(Error::DimensionMismatch(format!(
            "operator {}x{} on a {n}-dimensional space",
            m.rows(),
            m.cols()
        ))),
        None => Ok(()),
    }
}

/// Smallest subspace containing `seed` and invariant under every operator.
pub fn subspace_closure(seed: &Subspace, operators: &[&Matrix]) -> Result<Subspace> {
    let n = seed.ambient_dim();
    check_square(n, operators)?;
    let mut basis = seed.echelon();
    let mut queue: VecDeque<Vec<Scalar>> = seed.basis().iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        if basis.is_full() {
            break;
        }
        for op in operators {
            let w = op.apply(&v);
            if basis.insert_dense(&w) {
                queue.push_back(w);
            }
        }
    }
    Ok(basis.to_subspace())
}

/// Dimension of the unital algebra generated by `operators`.
///
/// When some operators are diagonal, the projections onto their joint
/// eigenspaces are polynomials in them and so lie in the algebra. The algebra
/// then splits into blocks `P_a A P_b`, each grown separately by left
/// multiplication with the blocks `P_c g P_a` of the remaining generators.
pub fn algebra_span_dim(n: usize, operators: &[&Matrix]) -> Result<usize> {
    check_square(n, operators)?;
    if n == 0 {
        return Ok(0);
    }
    let blocks = joint_eigenspaces(n, operators);
    if blocks.len() <= 1 {
        return Ok(dense_span_dim(n, operators));
    }
    Ok(block_span_dim(n, operators, &blocks))
}

/// Index sets on which every diagonal operator acts by a single scalar.
fn joint_eigenspaces(n: usize, operators: &[&Matrix]) -> Vec<Vec<usize>> {
    let diagonal: Vec<&Matrix> = operators
        .iter()
        .copied()
        .filter(|m| m.is_diagonal())
        .collect();
    let mut keys: Vec<Vec<&Scalar>> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let key: Vec<&Scalar> = diagonal.iter().map(|m| m.get(i, i)).collect();
        match keys.iter().position(|k| *k == key) {
            Some(b) => blocks[b].push(i),
            None => {
                keys.push(key);
                blocks.push(vec![i]);
            }
        }
    }
    blocks
}

fn submatrix(m: &Matrix, rows: &[usize], cols: &[usize]) -> Matrix {
    Matrix::from_fn(rows.len(), cols.len(), |i, j| {
        m.get(rows[i], cols[j]).clone()
    })
}

fn block_span_dim(n: usize, operators: &[&Matrix], blocks: &[Vec<usize>]) -> usize {
    let nb = blocks.len();
    // pieces[a] lists (c, P_c g P_a) for every non-diagonal g
    let mut pieces: Vec<Vec<(usize, Matrix)>> = vec![Vec::new(); nb];
    for g in operators.iter().filter(|m| !m.is_diagonal()) {
        for (a, cols) in blocks.iter().enumerate() {
            for (c, rows) in blocks.iter().enumerate() {
                let piece = submatrix(g, rows, cols);
                if !piece.is_zero() {
                    pieces[a].push((c, piece));
                }
            }
        }
    }
    let mut spans: Vec<EchelonBasis> = (0..nb * nb)
        .map(|k| EchelonBasis::new(blocks[k / nb].len() * blocks[k % nb].len()))
        .collect();
    let mut queue: VecDeque<(usize, usize, Matrix)> = VecDeque::new();
    let mut total = 0;
    for (b, idx) in blocks.iter().enumerate() {
        let id = Matrix::identity(idx.len());
        spans[b * nb + b].insert(SparseVec::from_dense(id.as_flat()));
        total += 1;
        queue.push_back((b, b, id));
    }
    while let Some((a, b, m)) = queue.pop_front() {
        if total == n * n {
            break;
        }
        for (c, piece) in &pieces[a] {
            let w = piece * &m;
            if spans[c * nb + b].insert(SparseVec::from_dense(w.as_flat())) {
                total += 1;
                queue.push_back((*c, b, w));
            }
        }
    }
    total
}

/// Left-multiplication closure of the identity in the full matrix space. A
/// generator already in the algebra of the earlier ones is skipped.
fn dense_span_dim(n: usize, operators: &[&Matrix]) -> usize {
    let flatten = |m: &Matrix| SparseVec::from_dense(m.as_flat());
    let mut basis = EchelonBasis::new(n * n);
    let mut elems = vec![Matrix::identity(n)];
    basis.insert(flatten(&elems[0]));
    let mut active: Vec<&Matrix> = Vec::new();
    let mut pending: VecDeque<(usize, usize)> = VecDeque::new();
    for &g in operators {
        if basis.is_full() {
            break;
        }
        if basis.contains(flatten(g)) {
            continue;
        }
        let gi = active.len();
        active.push(g);
        pending.extend((0..elems.len()).map(|e| (e, gi)));
        while let Some((e, gi)) = pending.pop_front() {
            if basis.is_full() {
                break;
            }
            let w = active[gi] * &elems[e];
            if basis.insert(flatten(&w)) {
                let idx = elems.len();
                elems.push(w);
                pending.extend((0..active.len()).map(|k| (idx, k)));
            }
        }
        pending.clear();
    }
    basis.len()
}
