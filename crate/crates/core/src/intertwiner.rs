//! The intertwiner `R: V(l,a) ⊗ V(m) -> V(m) ⊗ V(l,a)`.
//!
//! Both sides split under `<e1±, k1> ≅ U_q(sl_2)` into components `Ṽ(n)`,
//! `n = l + m - 2ν`. Each component is spanned by raising its lowest weight
//! vector with `Δ(e1+)`; `R_n` matches raised bases of the `n` components on
//! the two sides and kills every other component, and
//! `R = Σ_ν α_ν R_{l+m-2ν}` with `α_ν = (-1)^ν q^{-ν(l+m-ν+1)}`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::{coproduct_tensor, Generator, RelationReport, Representation};
use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, Matrix, SparseVec, Subspace};
use crate::modules::evaluation_module;
use crate::scalar::{QContext, Scalar};

/// Which tensor order: `V(l,a) ⊗ V(m)` or `V(m) ⊗ V(l,a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Source,
    Target,
}

fn check_params(l: usize, m: usize, a: &Scalar) -> Result<()> {
    if l < 1 || m < 1 {
        return Err(Error::OutOfRange(format!(
            "need l, m >= 1, got l={l}, m={m}"
        )));
    }
    if a.is_zero() {
        return Err(Error::Zero("evaluation parameter a"));
    }
    Ok(())
}

fn check_nu(l: usize, m: usize, nu: usize) -> Result<()> {
    if nu > l.min(m) {
        return Err(Error::OutOfRange(format!(
            "nu={nu} exceeds min(l, m)={}",
            l.min(m)
        )));
    }
    Ok(())
}

/// `V(l,a) ⊗ V(m)` (source) or `V(m) ⊗ V(l,a)` (target).
pub fn side_module(
    l: usize,
    m: usize,
    a: &Scalar,
    side: Side,
    ctx: &QContext,
) -> Result<Representation> {
    check_params(l, m, a)?;
    let va = evaluation_module(l as i64, a, ctx)?;
    let vm = evaluation_module(m as i64, &Scalar::zero(), ctx)?;
    Ok(match side {
        Side::Source => coproduct_tensor(&va, &vm),
        Side::Target => coproduct_tensor(&vm, &va),
    })
}

/// `x̃_n = Σ_j (-1)^j q^{j(m-j+1)} [l-ν+j]! [m-j]! v_{l-ν+j} ⊗ v'_{m-j}` in
/// `V(l,a) ⊗ V(m)`.
pub fn cg_lowest_weight(
    l: usize,
    m: usize,
    a: &Scalar,
    nu: usize,
    ctx: &QContext,
) -> Result<Vec<Scalar>> {
    check_params(l, m, a)?;
    check_nu(l, m, nu)?;
    lowest_weight(l, m, nu, ctx)
}

/// `x̃'_n = Σ_j (-1)^j q^{j(l-j+1)} [m-ν+j]! [l-j]! v'_{m-ν+j} ⊗ v_{l-j}` in
/// `V(m) ⊗ V(l,a)`.
pub fn cg_lowest_weight_primed(
    l: usize,
    m: usize,
    a: &Scalar,
    nu: usize,
    ctx: &QContext,
) -> Result<Vec<Scalar>> {
    check_params(l, m, a)?;
    check_nu(l, m, nu)?;
    lowest_weight(m, l, nu, ctx)
}

/// Lowest weight vector of the `ν`-th component of `V(first) ⊗ V(second)`.
/// Both explicit formulas are this one with the roles of the factors swapped.
fn lowest_weight(first: usize, second: usize, nu: usize, ctx: &QContext) -> Result<Vec<Scalar>> {
    let dim2 = second + 1;
    let mut v = vec![Scalar::zero(); (first + 1) * dim2];
    for j in 0..=nu {
        let jj = j as i64;
        let sign = if j % 2 == 0 {
            Scalar::one()
        } else {
            Scalar::from_int(-1)
        };
        let coeff = sign
            * ctx.q_pow(jj * (second as i64 - jj + 1))
            * ctx.q_fact((first - nu + j) as i64)?
            * ctx.q_fact((second - j) as i64)?;
        v[(first - nu + j) * dim2 + (second - j)] = coeff;
    }
    Ok(v)
}

/// One `U_q(sl_2)` component: its lowest weight vector raised `n` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CgComponent {
    pub nu: usize,
    pub n: usize,
    pub lowest: Vec<Scalar>,
    /// `(Δe1+)^k x̃_n` for `k = 0..=n`.
    pub basis: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CgDecomposition {
    pub l: usize,
    pub m: usize,
    pub side: Side,
    pub nu_max: usize,
    pub components: Vec<CgComponent>,
}

impl CgDecomposition {
    /// All component bases side by side, ordered by `ν` then raising step.
    pub fn basis_matrix(&self) -> Matrix {
        let dim = (self.l + 1) * (self.m + 1);
        let cols: Vec<Vec<Scalar>> = self
            .components
            .iter()
            .flat_map(|c| c.basis.iter().cloned())
            .collect();
        Matrix::from_columns(dim, &cols).expect("component vectors have full length")
    }
}

pub fn cg_decompose(
    l: usize,
    m: usize,
    a: &Scalar,
    side: Side,
    ctx: &QContext,
) -> Result<CgDecomposition> {
    let rep = side_module(l, m, a, side, ctx)?;
    let raise = rep.action(Generator::E1p);
    let dim = rep.dim();
    let nu_max = l.min(m);
    let mut components = Vec::with_capacity(nu_max + 1);
    let mut span = EchelonBasis::new(dim);
    for nu in 0..=nu_max {
        let n = l + m - 2 * nu;
        let lowest = match side {
            Side::Source => cg_lowest_weight(l, m, a, nu, ctx)?,
            Side::Target => cg_lowest_weight_primed(l, m, a, nu, ctx)?,
        };
        let mut basis = vec![lowest.clone()];
        loop {
            let next = raise.apply(basis.last().unwrap());
            if next.iter().all(Scalar::is_zero) {
                break;
            }
            basis.push(next);
            if basis.len() > n + 1 {
                break;
            }
        }
        if basis.len() != n + 1 {
            return Err(Error::Decomposition(format!(
                "component n={n} raised to {} vectors, expected {}",
                basis.len(),
                n + 1
            )));
        }
        for b in &basis {
            if !span.insert_dense(b) {
                return Err(Error::Decomposition(format!(
                    "component n={n} is not independent"
                )));
            }
        }
        components.push(CgComponent {
            nu,
            n,
            lowest,
            basis,
        });
    }
    if !span.is_full() {
        return Err(Error::Decomposition(format!(
            "components span {} of {dim} dimensions",
            span.len()
        )));
    }
    Ok(CgDecomposition {
        l,
        m,
        side,
        nu_max,
        components,
    })
}

fn column(v: Vec<Scalar>) -> Matrix {
    let n = v.len();
    Matrix::from_flat(n, 1, v).expect("column")
}

/// `Δ(e0+) x̃_n = a q x̃_{n+2}` for every `ν >= 1`, and `Δ(e0+) x̃_{l+m} = 0`.
pub fn check_lemma5(l: usize, m: usize, a: &Scalar, ctx: &QContext) -> Result<RelationReport> {
    let rep = side_module(l, m, a, Side::Source, ctx)?;
    let e0p = rep.action(Generator::E0p);
    let aq = a * ctx.q();
    let mut r = RelationReport::new();
    let top = cg_lowest_weight(l, m, a, 0, ctx)?;
    r.record(
        "e0p_source_top",
        &column(e0p.apply(&top)),
        &column(vec![Scalar::zero(); top.len()]),
    );
    for nu in 1..=l.min(m) {
        let x = cg_lowest_weight(l, m, a, nu, ctx)?;
        let up = cg_lowest_weight(l, m, a, nu - 1, ctx)?;
        r.record(
            format!("e0p_source_nu{nu}"),
            &column(e0p.apply(&x)),
            &column(up.iter().map(|u| u * &aq).collect()),
        );
    }
    Ok(r)
}

/// `Δ(e0+) x̃'_n = -a q · q^{n+2} x̃'_{n+2}` for every `ν >= 1`, and
/// `Δ(e0+) x̃'_{l+m} = 0`.
pub fn check_lemma6(l: usize, m: usize, a: &Scalar, ctx: &QContext) -> Result<RelationReport> {
    let rep = side_module(l, m, a, Side::Target, ctx)?;
    let e0p = rep.action(Generator::E0p);
    let aq = a * ctx.q();
    let mut r = RelationReport::new();
    let top = cg_lowest_weight_primed(l, m, a, 0, ctx)?;
    r.record(
        "e0p_target_top",
        &column(e0p.apply(&top)),
        &column(vec![Scalar::zero(); top.len()]),
    );
    for nu in 1..=l.min(m) {
        let n = (l + m - 2 * nu) as i64;
        let c = -(&aq * &ctx.q_pow(n + 2));
        let x = cg_lowest_weight_primed(l, m, a, nu, ctx)?;
        let up = cg_lowest_weight_primed(l, m, a, nu - 1, ctx)?;
        r.record(
            format!("e0p_target_nu{nu}"),
            &column(e0p.apply(&x)),
            &column(up.iter().map(|u| u * &c).collect()),
        );
    }
    Ok(r)
}

/// The ladder `(e1- ⊗ 1) x̃_n = x̃_{n+2}` on the chosen side.
pub fn check_ladder(
    l: usize,
    m: usize,
    a: &Scalar,
    side: Side,
    ctx: &QContext,
) -> Result<RelationReport> {
    check_params(l, m, a)?;
    let (first, second) = match side {
        Side::Source => (l, m),
        Side::Target => (m, l),
    };
    let e1m = evaluation_module(first as i64, &Scalar::zero(), ctx)?
        .action(Generator::E1m)
        .kron(&Matrix::identity(second + 1));
    let prefix = match side {
        Side::Source => "ladder",
        Side::Target => "ladder_primed",
    };
    let mut r = RelationReport::new();
    for nu in 1..=l.min(m) {
        let x = lowest_weight(first, second, nu, ctx)?;
        let up = lowest_weight(first, second, nu - 1, ctx)?;
        r.record(
            format!("{prefix}_nu{nu}"),
            &column(e1m.apply(&x)),
            &column(up),
        );
    }
    Ok(r)
}

/// Both decompositions plus the inverse of the source basis matrix, shared by
/// every `R_n`.
struct Frames {
    target: CgDecomposition,
    source_inv: Matrix,
}

impl Frames {
    fn new(l: usize, m: usize, a: &Scalar, ctx: &QContext) -> Result<Self> {
        let source = cg_decompose(l, m, a, Side::Source, ctx)?;
        let target = cg_decompose(l, m, a, Side::Target, ctx)?;
        let source_inv = source.basis_matrix().inverse()?;
        Ok(Frames { target, source_inv })
    }

    /// `Σ_ν w_ν R_{l+m-2ν}` as `T_w B^{-1}`.
    fn combine(&self, weights: &[Scalar]) -> Matrix {
        let dim = self.source_inv.rows();
        let cols: Vec<Vec<Scalar>> = self
            .target
            .components
            .iter()
            .zip(weights)
            .flat_map(|(c, w)| {
                c.basis
                    .iter()
                    .map(move |b| b.iter().map(|x| x * w).collect())
            })
            .collect();
        let t = Matrix::from_columns(dim, &cols).expect("target columns");
        &t * &self.source_inv
    }
}

/// The map `V(l,a) ⊗ V(m) -> V(m) ⊗ V(l,a)` that sends the raised basis of
/// `Ṽ(n)` to that of `Ṽ'(n)` and vanishes on the other components.
pub fn build_rn(l: usize, m: usize, a: &Scalar, nu: usize, ctx: &QContext) -> Result<Matrix> {
    check_params(l, m, a)?;
    check_nu(l, m, nu)?;
    let frames = Frames::new(l, m, a, ctx)?;
    let weights: Vec<Scalar> = (0..=l.min(m))
        .map(|k| {
            if k == nu {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
        .collect();
    Ok(frames.combine(&weights))
}

/// `α_ν = (-1)^ν q^{-ν(l+m-ν+1)}`.
pub fn alphas(l: usize, m: usize, ctx: &QContext) -> Vec<Scalar> {
    (0..=l.min(m) as i64)
        .map(|nu| {
            let sign = if nu % 2 == 0 {
                Scalar::one()
            } else {
                Scalar::from_int(-1)
            };
            sign * ctx.q_pow(-nu * (l as i64 + m as i64 - nu + 1))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intertwiner {
    pub l: usize,
    pub m: usize,
    pub a: Scalar,
    pub r: Matrix,
    pub alphas: Vec<Scalar>,
}

impl Intertwiner {
    pub fn to_json(&self) -> Value {
        json!({
            "l": self.l,
            "m": self.m,
            "a": self.a.to_string(),
            "alphas": self.alphas.iter().map(Scalar::to_string).collect::<Vec<_>>(),
            "R": self.r.to_json(),
        })
    }

    pub fn source(&self, ctx: &QContext) -> Result<Representation> {
        side_module(self.l, self.m, &self.a, Side::Source, ctx)
    }

    pub fn target(&self, ctx: &QContext) -> Result<Representation> {
        side_module(self.l, self.m, &self.a, Side::Target, ctx)
    }
}

pub fn build_intertwiner(l: usize, m: usize, a: &Scalar, ctx: &QContext) -> Result<Intertwiner> {
    check_params(l, m, a)?;
    let frames = Frames::new(l, m, a, ctx)?;
    let alphas = alphas(l, m, ctx);
    let r = frames.combine(&alphas);
    Ok(Intertwiner {
        l,
        m,
        a: a.clone(),
        r,
        alphas,
    })
}

/// Checks `R Δ(ξ) = Δ(ξ) R` on all seven generators and that `R != 0`.
pub fn verify_intertwiner(it: &Intertwiner, ctx: &QContext) -> Result<RelationReport> {
    let src = it.source(ctx)?;
    let tgt = it.target(ctx)?;
    Ok(verify_map(&it.r, &src, &tgt))
}

/// Commutation report for an arbitrary candidate map `src -> tgt`.
pub fn verify_map(r: &Matrix, src: &Representation, tgt: &Representation) -> RelationReport {
    let mut rep = RelationReport::new();
    for g in Generator::ALL {
        rep.record(
            format!("commute_{g}"),
            &(r * src.action(g)),
            &(tgt.action(g) * r),
        );
    }
    rep.record_bool("nonzero", !r.is_zero());
    rep
}

/// All `X` with `X Δ_src(ξ) = Δ_tgt(ξ) X` for every generator, as a subspace
/// of row-major flattened `tgt.dim() x src.dim()` matrices.
pub fn intertwiner_space(source: &Representation, target: &Representation) -> Subspace {
    let (rows, cols) = (target.dim(), source.dim());
    let mut system = EchelonBasis::new(rows * cols);
    // Diagonal k constraints first: they pin most unknowns to zero cheaply.
    let order = [
        Generator::K0,
        Generator::K1,
        Generator::K0inv,
        Generator::K1inv,
        Generator::E1p,
        Generator::E1m,
        Generator::E0p,
    ];
    for g in order {
        let a = source.action(g);
        let b = target.action(g);
        for i in 0..rows {
            for j in 0..cols {
                let mut eq: BTreeMap<usize, Scalar> = BTreeMap::new();
                for k in 0..cols {
                    let c = a.get(k, j);
                    if !c.is_zero() {
                        *eq.entry(i * cols + k).or_insert_with(Scalar::zero) += c;
                    }
                }
                for k in 0..rows {
                    let c = b.get(i, k);
                    if !c.is_zero() {
                        *eq.entry(k * cols + j).or_insert_with(Scalar::zero) -= c;
                    }
                }
                let v = SparseVec::from_sorted(eq.into_iter().collect());
                if !v.is_zero() {
                    system.insert(v);
                }
            }
        }
    }
    system.null_space()
}

/// Some invertible intertwiner `a -> b`, searched among the basis of the
/// solution space and the sum of its basis vectors.
pub fn find_isomorphism(a: &Representation, b: &Representation) -> Option<Matrix> {
    if a.dim() != b.dim() {
        return None;
    }
    let n = a.dim();
    let space = intertwiner_space(a, b);
    let mut candidates: Vec<Vec<Scalar>> = space.basis().to_vec();
    if space.dim() > 1 {
        let mut sum = vec![Scalar::zero(); n * n];
        for v in space.basis() {
            for (s, x) in sum.iter_mut().zip(v) {
                *s += x;
            }
        }
        candidates.push(sum);
    }
    candidates.into_iter().find_map(|v| {
        let m = Matrix::from_flat(n, n, v).ok()?;
        (!m.determinant().ok()?.is_zero()).then_some(m)
    })
}
