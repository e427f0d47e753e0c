//! q-strings, irreducibility criteria and oracles, Drinfel'd polynomials and
//! the exceptional-set polynomials of the `phi_s` restriction.

use crate::algebra::{phi_s_image, Generator, Representation};
use crate::error::{Error, Result};
use crate::linalg::{algebra_span_dim, subspace_closure, Matrix, Subspace};
use crate::modules::{weight_decomposition, ModuleSpec};
use crate::poly::Polynomial;
use crate::scalar::{QContext, Scalar};

/// Default largest dimension the Burnside oracle will attempt.
pub const DEFAULT_ORACLE_CAP: usize = 36;

/// `S(l, a) = { a q^{2i-l+1} : 0 <= i < l }`, a geometric progression of
/// ratio `q^2` centred at `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QString {
    length: usize,
    center: Scalar,
    elements: Vec<Scalar>,
}

impl QString {
    pub fn new(length: usize, center: Scalar, ctx: &QContext) -> Result<Self> {
        if length < 1 {
            return Err(Error::OutOfRange("q-string length must be >= 1".into()));
        }
        if center.is_zero() {
            return Err(Error::Zero("q-string center"));
        }
        let l = length as i64;
        let elements = (0..l)
            .map(|i| &center * &ctx.q_pow(2 * i - l + 1))
            .collect();
        Ok(QString {
            length,
            center,
            elements,
        })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn center(&self) -> &Scalar {
        &self.center
    }

    /// Elements in increasing power of `q`.
    pub fn elements(&self) -> &[Scalar] {
        &self.elements
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        self.elements.contains(x)
    }

    pub fn includes(&self, other: &QString) -> bool {
        other.elements.iter().all(|x| self.contains(x))
    }
}

pub fn q_string(l: usize, a: &Scalar, ctx: &QContext) -> Result<QString> {
    QString::new(l, a.clone(), ctx)
}

/// Recognizes a set of nonzero scalars as some `S(l, a)`.
pub fn is_q_string(elements: &[Scalar], ctx: &QContext) -> Option<(usize, Scalar)> {
    let first = elements.first()?;
    if elements.iter().any(Scalar::is_zero) {
        return None;
    }
    let mut exps = Vec::with_capacity(elements.len());
    for x in elements {
        let e = ctx.log_q(&(x / first))?;
        if e % 2 != 0 {
            return None;
        }
        exps.push(e / 2);
    }
    exps.sort_unstable();
    exps.dedup();
    if exps.windows(2).any(|w| w[1] != w[0] + 1) {
        return None;
    }
    let l = exps.len();
    let smallest = first * &ctx.q_pow(2 * exps[0]);
    Some((l, smallest * ctx.q_pow(l as i64 - 1)))
}

/// Either the union is not a q-string, or one string includes the other.
pub fn general_position(s1: &QString, s2: &QString, ctx: &QContext) -> bool {
    if s1.includes(s2) || s2.includes(s1) {
        return true;
    }
    let union: Vec<Scalar> = s1.elements.iter().chain(&s2.elements).cloned().collect();
    is_q_string(&union, ctx).is_none()
}

fn factor_strings(spec: &ModuleSpec, ctx: &QContext) -> Vec<QString> {
    spec.factors()
        .iter()
        .map(|(l, a)| QString::new(*l, a.clone(), ctx).expect("validated spec"))
        .collect()
}

fn pairwise_general_position(strings: &[QString], ctx: &QContext) -> bool {
    strings
        .iter()
        .enumerate()
        .all(|(i, a)| strings[i + 1..].iter().all(|b| general_position(a, b, ctx)))
}

/// The q-string criterion: every pair of factor strings is in general
/// position. The `V(ell0)` factor imposes nothing.
pub fn irreducible_by_criterion(spec: &ModuleSpec, ctx: &QContext) -> bool {
    pairwise_general_position(&factor_strings(spec, ctx), ctx)
}

/// Irreducibility as a `phi_s(T_q)`-module: `-s^{-2}` lies in no factor
/// string and the strings are pairwise in general position.
pub fn irreducible_as_td_module(spec: &ModuleSpec, s: &Scalar, ctx: &QContext) -> Result<bool> {
    if s.is_zero() {
        return Err(Error::Zero("s"));
    }
    let strings = factor_strings(spec, ctx);
    let forbidden = -(s * s).recip();
    Ok(strings.iter().all(|st| !st.contains(&forbidden))
        && pairwise_general_position(&strings, ctx))
}

/// Burnside test on an arbitrary operator set: the generated algebra is all
/// of `M_n` exactly when the operators act absolutely irreducibly.
pub fn operators_irreducible(n: usize, ops: &[&Matrix], cap: usize) -> Result<bool> {
    if n > cap {
        return Err(Error::OracleCap { dim: n, cap });
    }
    Ok(algebra_span_dim(n, ops)? == n * n)
}

/// Burnside oracle over the seven generator actions. Refuses above `cap`.
pub fn irreducible_by_oracle(rep: &Representation, cap: usize) -> Result<bool> {
    operators_irreducible(rep.dim(), &rep.actions(), cap)
}

/// Burnside oracle for the restriction to `phi_s(T_q)` with `(eps, eps*) = (1, 0)`.
pub fn td_irreducible_by_oracle(
    rep: &Representation,
    s: &Scalar,
    ctx: &QContext,
    cap: usize,
) -> Result<bool> {
    let t = phi_s_image(rep, s, 1, 0, ctx)?;
    operators_irreducible(rep.dim(), &t.generators(), cap)
}

/// `λ^{ell0} · ∏_i ∏_{ζ ∈ S(l_i, a_i)} (λ + ζ)`.
pub fn drinfeld_polynomial(spec: &ModuleSpec, ctx: &QContext) -> Polynomial {
    let roots: Vec<Scalar> = factor_strings(spec, ctx)
        .into_iter()
        .flat_map(|s| s.elements)
        .collect();
    Polynomial::from_roots(&roots, spec.ell0())
}

fn submatrix(m: &Matrix, rows: &[usize], cols: &[usize]) -> Matrix {
    Matrix::from_fn(rows.len(), cols.len(), |i, j| {
        m.get(rows[i], cols[j]).clone()
    })
}

/// For each `0 <= i <= d/2`, the polynomial
/// `p_i(t) = det (e0+ + t e1- k1)^{d-2i} |_{U_i -> U_{d-i}}`, with `U_{d-i}`
/// identified with `U_i` through `(e1+)^{d-2i}`. Each is recovered by exact
/// interpolation at `t = 0, 1, ..., deg`.
pub fn exceptional_polynomials(rep: &Representation, ctx: &QContext) -> Result<Vec<Polynomial>> {
    use Generator::*;
    let wd = weight_decomposition(rep, ctx)?;
    if !wd.s0.is_one() {
        return Err(Error::Decomposition(format!(
            "exceptional polynomials need type (1,1), ladder center is {}",
            wd.s0
        )));
    }
    let d = wd.d;
    let e1m_k1 = rep.action(E1m) * rep.action(K1);
    let e0p = rep.action(E0p);
    let mut out = Vec::with_capacity(d / 2 + 1);
    for i in 0..=d / 2 {
        let power = (d - 2 * i) as u32;
        let low = wd.layer_indices(i);
        let high = wd.layer_indices(d - i);
        let ident = submatrix(&rep.action(E1p).pow(power), &low, &high);
        if ident.determinant()?.is_zero() {
            return Err(Error::Decomposition(format!(
                "(e1+)^{power} does not identify layer {} with layer {i}",
                d - i
            )));
        }
        let degree = power as usize * low.len();
        let points = (0..=degree as i64)
            .map(|t| {
                let t = Scalar::from_int(t);
                let a = (e0p + &e1m_k1.scale(&t)).pow(power);
                let block = &ident * &submatrix(&a, &high, &low);
                Ok((t, block.determinant()?))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(Polynomial::interpolate(&points)?);
    }
    Ok(out)
}

/// Searches for a proper nonzero invariant subspace by closing candidate
/// seeds: standard basis vectors and, weight layer by weight layer, the
/// vectors killed by `e1-` (lowest weight vectors for `<e1±, k1>`).
pub fn find_proper_invariant_subspace(
    rep: &Representation,
    ctx: &QContext,
) -> Result<Option<Subspace>> {
    let n = rep.dim();
    let ops = rep.actions();
    let mut seeds: Vec<Vec<Scalar>> = Vec::new();
    if let Ok(wd) = weight_decomposition(rep, ctx) {
        let e1m = rep.action(Generator::E1m);
        for i in 0..=wd.d {
            let idx = wd.layer_indices(i);
            let block = Matrix::from_fn(n, idx.len(), |r, c| e1m.get(r, idx[c]).clone());
            for k in block.kernel().basis() {
                let mut v = vec![Scalar::zero(); n];
                for (c, x) in idx.iter().zip(k) {
                    v[*c] = x.clone();
                }
                seeds.push(v);
            }
        }
    }
    seeds.extend((0..n).map(|j| {
        let mut v = vec![Scalar::zero(); n];
        v[j] = Scalar::one();
        v
    }));
    for seed in seeds {
        let w = subspace_closure(&Subspace::from_vectors(n, vec![seed]), &ops)?;
        if !w.is_zero() && !w.is_full() {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::build;

    fn ctx2() -> QContext {
        QContext::new(Scalar::from_int(2)).unwrap()
    }

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn spec(ell0: usize, f: &[(usize, i64)]) -> ModuleSpec {
        ModuleSpec::new(ell0, f.iter().map(|&(l, a)| (l, s(a))).collect()).unwrap()
    }

    #[test]
    fn q_string_examples() {
        let c = ctx2();
        let a = Scalar::new(3, 7);
        assert_eq!(
            q_string(1, &a, &c).unwrap().elements(),
            std::slice::from_ref(&a)
        );
        assert_eq!(
            q_string(2, &a, &c).unwrap().elements(),
            &[&a / c.q(), &a * c.q()]
        );
        assert_eq!(
            q_string(3, &s(1), &c).unwrap().elements(),
            &[Scalar::new(1, 4), s(1), s(4)]
        );
        assert!(q_string(0, &s(1), &c).is_err());
        assert!(q_string(1, &s(0), &c).is_err());
    }

    #[test]
    fn recognizes_q_strings() {
        let c = ctx2();
        assert_eq!(is_q_string(&[s(5)], &c), Some((1, s(5))));
        assert_eq!(is_q_string(&[s(1), s(4)], &c), Some((2, s(2))));
        assert_eq!(is_q_string(&[s(4), s(1)], &c), Some((2, s(2))));
        assert_eq!(is_q_string(&[s(1), s(16)], &c), None);
        assert_eq!(is_q_string(&[s(1), s(2)], &c), None);
        assert_eq!(is_q_string(&[s(1), s(4), s(16)], &c), Some((3, s(4))));
        // reconstruction round-trips through q_string
        for l in 1..5 {
            let st = q_string(l, &Scalar::new(-2, 3), &c).unwrap();
            let (l2, a2) = is_q_string(st.elements(), &c).unwrap();
            assert_eq!(q_string(l2, &a2, &c).unwrap(), st);
        }
    }

    #[test]
    fn general_position_examples() {
        let c = ctx2();
        let st = |l, a: i64| q_string(l, &s(a), &c).unwrap();
        assert!(general_position(&st(1, 1), &st(1, 16), &c));
        assert!(!general_position(&st(1, 1), &st(1, 4), &c));
        assert!(general_position(&st(3, 7), &st(1, 7), &c));
        assert!(general_position(&st(1, 1), &st(1, 1), &c));
    }

    #[test]
    fn criterion_examples() {
        let c = ctx2();
        assert!(irreducible_by_criterion(&ModuleSpec::plain(3), &c));
        assert!(!irreducible_by_criterion(&spec(0, &[(1, 1), (1, 4)]), &c));
        assert!(irreducible_by_criterion(&spec(0, &[(1, 1), (1, 16)]), &c));
    }

    #[test]
    fn td_criterion_examples() {
        let c = ctx2();
        assert!(!irreducible_as_td_module(&spec(0, &[(1, -1)]), &s(1), &c).unwrap());
        assert!(irreducible_as_td_module(&spec(0, &[(1, 1)]), &s(1), &c).unwrap());
        for sv in [s(1), s(3), Scalar::new(1, 5)] {
            assert!(!irreducible_as_td_module(&spec(0, &[(1, 1), (1, 4)]), &sv, &c).unwrap());
        }
        assert!(irreducible_as_td_module(&spec(0, &[(1, 1)]), &s(0), &c).is_err());
    }

    #[test]
    fn oracle_examples() {
        let c = ctx2();
        assert!(irreducible_by_oracle(&Representation::trivial(), DEFAULT_ORACLE_CAP).unwrap());
        let red = build(&spec(0, &[(1, 1), (1, 4)]), &c).unwrap();
        assert!(!irreducible_by_oracle(&red, DEFAULT_ORACLE_CAP).unwrap());
        let irr = build(&spec(0, &[(1, 1), (1, 16)]), &c).unwrap();
        assert!(irreducible_by_oracle(&irr, DEFAULT_ORACLE_CAP).unwrap());
        assert_eq!(
            irreducible_by_oracle(&irr, 3),
            Err(Error::OracleCap { dim: 4, cap: 3 })
        );
    }

    #[test]
    fn td_oracle_sees_the_forbidden_parameter() {
        let c = ctx2();
        let rep = build(&spec(0, &[(1, -1)]), &c).unwrap();
        assert!(!td_irreducible_by_oracle(&rep, &s(1), &c, 36).unwrap());
        assert!(td_irreducible_by_oracle(&rep, &s(2), &c, 36).unwrap());
    }

    #[test]
    fn drinfeld_examples() {
        let c = ctx2();
        let p = drinfeld_polynomial(&spec(1, &[(2, 1)]), &c);
        let expected = Polynomial::new(vec![s(0), s(1), Scalar::new(5, 2), s(1)]);
        assert_eq!(p, expected);
        assert_eq!(
            drinfeld_polynomial(&ModuleSpec::plain(0), &c),
            Polynomial::one()
        );
        let a = Scalar::new(-3, 5);
        let p = drinfeld_polynomial(&ModuleSpec::new(0, vec![(1, a.clone())]).unwrap(), &c);
        assert_eq!(p, Polynomial::new(vec![a, s(1)]));
    }

    #[test]
    fn exceptional_v11() {
        // p_0(t) = det(e1+ (e0+ + t e1- k1) on v_0) = q (a + t)
        let c = ctx2();
        let ps = exceptional_polynomials(&build(&spec(0, &[(1, 1)]), &c).unwrap(), &c).unwrap();
        assert_eq!(ps, vec![Polynomial::new(vec![s(2), s(2)])]);
    }

    #[test]
    fn exceptional_middle_layer_is_constant_one() {
        let c = ctx2();
        let ps = exceptional_polynomials(&build(&spec(0, &[(2, 3)]), &c).unwrap(), &c).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(ps[1], Polynomial::one());
        assert_eq!(ps[0].degree(), Some(2));
    }

    #[test]
    fn exceptional_two_factor_degree() {
        let c = ctx2();
        let ps =
            exceptional_polynomials(&build(&spec(0, &[(1, 1), (1, 16)]), &c).unwrap(), &c).unwrap();
        assert_eq!(ps[0].degree(), Some(2));
        assert_eq!(ps[1], Polynomial::one());
    }

    #[test]
    fn finds_submodule_of_reducible_product() {
        let c = ctx2();
        let red = build(&spec(0, &[(1, 1), (1, 4)]), &c).unwrap();
        let w = find_proper_invariant_subspace(&red, &c).unwrap().unwrap();
        assert!(w.dim() > 0 && w.dim() < 4);
        let irr = build(&spec(0, &[(1, 1), (1, 16)]), &c).unwrap();
        assert!(find_proper_invariant_subspace(&irr, &c).unwrap().is_none());
    }
}
