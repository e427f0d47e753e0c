//! Evaluation modules, tensor-product specs, weight-space layers and type
//! normalization.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::algebra::{coproduct_tensor, Generator, Representation};
use crate::error::{Error, Result};
use crate::linalg::{scalar_from_json, Matrix, Subspace};
use crate::scalar::{QContext, Scalar};

/// Recipe for `V(ell0) ⊗ V(l_1, a_1) ⊗ ... ⊗ V(l_n, a_n)`.
///
/// `ell0 = 0` makes the first factor trivial. Listed factors always have
/// `l_i >= 1` and `a_i != 0`; the evaluation parameter zero is reserved for
/// the `ell0` slot.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModuleSpec {
    ell0: usize,
    factors: Vec<(usize, Scalar)>,
}

impl ModuleSpec {
    pub fn new(ell0: usize, factors: Vec<(usize, Scalar)>) -> Result<Self> {
        for (l, a) in &factors {
            if *l == 0 {
                return Err(Error::InvalidSpec(
                    "factors must have l >= 1; use ell0 for V(l)".into(),
                ));
            }
            if a.is_zero() {
                return Err(Error::InvalidSpec(
                    "factors must have a != 0; use ell0 for V(l)".into(),
                ));
            }
        }
        Ok(ModuleSpec { ell0, factors })
    }

    /// Just `V(ell0)`.
    pub fn plain(ell0: usize) -> Self {
        ModuleSpec {
            ell0,
            factors: Vec::new(),
        }
    }

    pub fn ell0(&self) -> usize {
        self.ell0
    }

    pub fn factors(&self) -> &[(usize, Scalar)] {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        (self.ell0 + 1) * self.factors.iter().map(|(l, _)| l + 1).product::<usize>()
    }

    /// Sum of all highest weights, which is the diameter of the built module.
    pub fn diameter(&self) -> usize {
        self.ell0 + self.factors.iter().map(|(l, _)| l).sum::<usize>()
    }

    /// Same spec with factors sorted, so equal multisets compare equal.
    pub fn canonical(&self) -> ModuleSpec {
        let mut factors = self.factors.clone();
        factors.sort();
        ModuleSpec {
            ell0: self.ell0,
            factors,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ell0": self.ell0,
            "factors": self
                .factors
                .iter()
                .map(|(l, a)| json!([l, a.to_string()]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let ell0 = v
            .get("ell0")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("spec needs a nonnegative integer \"ell0\"".into()))?;
        let factors = match v.get("factors") {
            None | Some(Value::Null) => Vec::new(),
            Some(Value::Array(items)) => items
                .iter()
                .map(|f| {
                    let pair = f
                        .as_array()
                        .filter(|p| p.len() == 2)
                        .ok_or_else(|| Error::Parse("factor must be [l, \"a\"]".into()))?;
                    let l = pair[0].as_u64().ok_or_else(|| {
                        Error::Parse("factor l must be a nonnegative integer".into())
                    })?;
                    Ok((l as usize, scalar_from_json(&pair[1])?))
                })
                .collect::<Result<Vec<_>>>()?,
            Some(_) => return Err(Error::Parse("\"factors\" must be an array".into())),
        };
        ModuleSpec::new(ell0 as usize, factors)
    }
}

impl FromStr for ModuleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        ModuleSpec::from_json(&v)
    }
}

impl fmt::Debug for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V({})", self.ell0)?;
        for (l, a) in &self.factors {
            write!(f, "⊗V({l},{a})")?;
        }
        Ok(())
    }
}

/// The evaluation module `V(l, a)` on the standard basis `v_0..v_l`:
/// `k0 v_i = q^{2i-l} v_i`, `k1 v_i = q^{l-2i} v_i`,
/// `e0+ v_i = a q [i+1] v_{i+1}`, `e1+ v_i = [l-i+1] v_{i-1}`,
/// `e1- v_i = [i+1] v_{i+1}`.
pub fn evaluation_module(l: i64, a: &Scalar, ctx: &QContext) -> Result<Representation> {
    if l < 0 {
        return Err(Error::Negative {
            what: "evaluation module highest weight",
            value: l,
        });
    }
    if l == 0 {
        return Ok(Representation::trivial());
    }
    let dim = (l + 1) as usize;
    let weights =
        |sign: i64| -> Vec<Scalar> { (0..=l).map(|i| ctx.q_pow(sign * (2 * i - l))).collect() };
    let aq = a * ctx.q();
    let mut e0p = Matrix::zeros(dim, dim);
    let mut e1p = Matrix::zeros(dim, dim);
    let mut e1m = Matrix::zeros(dim, dim);
    for i in 0..dim {
        let ii = i as i64;
        if i + 1 < dim {
            let qi = ctx.q_int(ii + 1);
            e0p.set(i + 1, i, &aq * &qi);
            e1m.set(i + 1, i, qi);
        }
        if i >= 1 {
            e1p.set(i - 1, i, ctx.q_int(l - ii + 1));
        }
    }
    Representation::from_fn(dim, |g| match g {
        Generator::E0p => e0p.clone(),
        Generator::E1p => e1p.clone(),
        Generator::E1m => e1m.clone(),
        Generator::K0 => Matrix::diag(&weights(1)),
        Generator::K0inv => Matrix::diag(&weights(-1)),
        Generator::K1 => Matrix::diag(&weights(-1)),
        Generator::K1inv => Matrix::diag(&weights(1)),
    })
}

/// Left-nested tensor product of the spec's evaluation modules.
pub fn build(spec: &ModuleSpec, ctx: &QContext) -> Result<Representation> {
    let mut rep = evaluation_module(spec.ell0 as i64, &Scalar::zero(), ctx)?;
    for (l, a) in &spec.factors {
        let f = evaluation_module(*l as i64, a, ctx)?;
        rep = coproduct_tensor(&rep, &f);
    }
    Ok(rep)
}

/// `V = ⊕_{i=0}^{d} V(s0 q^{2i-d})`, the eigenspace ladder of `k0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDecomposition {
    pub d: usize,
    pub s0: Scalar,
    /// `(eigenvalue, eigenspace)` for `i = 0..=d`, eigenvalue `s0 q^{2i-d}`.
    pub layers: Vec<(Scalar, Subspace)>,
    /// Layer index of every basis vector.
    layer_of: Vec<usize>,
}

impl WeightDecomposition {
    pub fn layer_dims(&self) -> Vec<usize> {
        self.layers.iter().map(|(_, s)| s.dim()).collect()
    }

    pub fn layer(&self, i: usize) -> &Subspace {
        &self.layers[i].1
    }

    /// Basis indices spanning layer `i`; layers are coordinate subspaces.
    pub fn layer_indices(&self, i: usize) -> Vec<usize> {
        (0..self.layer_of.len())
            .filter(|&j| self.layer_of[j] == i)
            .collect()
    }

    pub fn layer_of(&self, basis_index: usize) -> usize {
        self.layer_of[basis_index]
    }
}

/// Weight-space decomposition with respect to `k0`, which must be diagonal in
/// the given basis with eigenvalues forming one unbroken `q^2`-chain. Also
/// verifies that `e0+` raises and `e1±` shift layers by `∓1`.
pub fn weight_decomposition(rep: &Representation, ctx: &QContext) -> Result<WeightDecomposition> {
    let k0 = rep.action(Generator::K0);
    if !k0.is_diagonal() {
        return Err(Error::Unsupported("k0 must be diagonal in the given basis"));
    }
    let diag = k0.diagonal();
    let base = diag[0].clone();
    if base.is_zero() {
        return Err(Error::Singular);
    }
    let mut half_exps = Vec::with_capacity(diag.len());
    for v in &diag {
        let e = ctx
            .log_q(&(v / &base))
            .filter(|e| e % 2 == 0)
            .ok_or_else(|| Error::NotAChain(format!("{v} / {base} is not a power of q^2")))?;
        half_exps.push(e / 2);
    }
    let lo = *half_exps.iter().min().unwrap();
    let hi = *half_exps.iter().max().unwrap();
    let d = (hi - lo) as usize;
    let layer_of: Vec<usize> = half_exps.iter().map(|e| (e - lo) as usize).collect();
    let n = rep.dim();
    let lowest = &base * &ctx.q_pow(2 * lo);
    let s0 = &lowest * &ctx.q_pow(d as i64);
    let mut layers = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let vecs: Vec<Vec<Scalar>> = (0..n)
            .filter(|&j| layer_of[j] == i)
            .map(|j| {
                let mut v = vec![Scalar::zero(); n];
                v[j] = Scalar::one();
                v
            })
            .collect();
        if vecs.is_empty() {
            return Err(Error::NotAChain(format!("layer {i} of 0..={d} is empty")));
        }
        let theta = &s0 * &ctx.q_pow(2 * i as i64 - d as i64);
        layers.push((theta, Subspace::from_vectors(n, vecs)));
    }
    for (g, shift) in [
        (Generator::E0p, 1i64),
        (Generator::E1p, -1),
        (Generator::E1m, 1),
    ] {
        let m = rep.action(g);
        for r in 0..n {
            for c in 0..n {
                if !m.get(r, c).is_zero() && layer_of[r] as i64 != layer_of[c] as i64 + shift {
                    return Err(Error::ShiftRule {
                        generator: g.name(),
                        row: r,
                        col: c,
                    });
                }
            }
        }
    }
    Ok(WeightDecomposition {
        d,
        s0,
        layers,
        layer_of,
    })
}

/// Twist data recovered by [`normalize_type`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeTwist {
    /// The scalar by which `k0 k1` acted before normalization.
    pub s: Scalar,
    /// `-1` if the sign automorphism was applied.
    pub sign: i8,
}

/// Brings a representation to type `(1,1)`: rescales `k0` so that `k0 k1 = 1`,
/// then applies `k_i ↦ -k_i, e1+ ↦ -e1+` if the ladder center is `-1`.
pub fn normalize_type(rep: &Representation, ctx: &QContext) -> Result<(Representation, TypeTwist)> {
    use Generator::*;
    let s = (rep.action(K0) * rep.action(K1))
        .as_scalar_multiple()
        .ok_or(Error::NotScalar)?;
    let rescaled = rep
        .with_action(K0, rep.action(K0).scale(&s.recip()))?
        .with_action(K0inv, rep.action(K0inv).scale(&s))?;
    let wd = weight_decomposition(&rescaled, ctx)?;
    let minus = Scalar::from_int(-1);
    let (out, sign) = if wd.s0.is_one() {
        (rescaled, 1)
    } else if wd.s0 == minus {
        let flipped = Representation::from_fn(rep.dim(), |g| match g {
            E0p | E1m => rescaled.action(g).clone(),
            _ => rescaled.action(g).scale(&minus),
        })?;
        (flipped, -1)
    } else {
        return Err(Error::Decomposition(format!(
            "ladder center {} after rescaling is not ±1",
            wd.s0
        )));
    };
    Ok((out, TypeTwist { s, sign }))
}
