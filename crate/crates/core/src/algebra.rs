//! Generators of `U'_q`, matrix representations, relation certificates, the
//! coproduct, and the embedding of the augmented TD-algebra.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{QContext, Scalar};

/// The seven generators acting on a `U'_q`-module. `e0-` is deliberately
/// absent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    E0p,
    E1p,
    E1m,
    K0,
    K0inv,
    K1,
    K1inv,
}

impl Generator {
    pub const ALL: [Generator; 7] = [
        Generator::E0p,
        Generator::E1p,
        Generator::E1m,
        Generator::K0,
        Generator::K0inv,
        Generator::K1,
        Generator::K1inv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::E0p => "e0p",
            Generator::E1p => "e1p",
            Generator::E1m => "e1m",
            Generator::K0 => "k0",
            Generator::K0inv => "k0inv",
            Generator::K1 => "k1",
            Generator::K1inv => "k1inv",
        }
    }

    pub fn from_name(name: &str) -> Option<Generator> {
        Generator::ALL.into_iter().find(|g| g.name() == name)
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A finite-dimensional representation: one `dim x dim` matrix per generator.
#[derive(Clone, PartialEq, Eq)]
pub struct Representation {
    dim: usize,
    actions: [Matrix; 7],
}

impl Representation {
    /// Actions are given in [`Generator::ALL`] order.
    pub fn new(dim: usize, actions: [Matrix; 7]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch(
                "representation of dimension 0".into(),
            ));
        }
        for (g, m) in Generator::ALL.iter().zip(&actions) {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "{g} is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Representation { dim, actions })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(Generator) -> Matrix) -> Result<Self> {
        Representation::new(dim, Generator::ALL.map(&mut f))
    }

    /// The one-dimensional module: every `e` acts as zero, every `k` as one.
    pub fn trivial() -> Self {
        Representation::from_fn(1, |g| match g {
            Generator::E0p | Generator::E1p | Generator::E1m => Matrix::zeros(1, 1),
            _ => Matrix::identity(1),
        })
        .expect("trivial module")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, g: Generator) -> &Matrix {
        &self.actions[g.index()]
    }

    pub fn actions(&self) -> Vec<&Matrix> {
        self.actions.iter().collect()
    }

    /// Copy with one generator's matrix replaced.
    pub fn with_action(&self, g: Generator, m: Matrix) -> Result<Self> {
        let mut actions = self.actions.clone();
        actions[g.index()] = m;
        Representation::new(self.dim, actions)
    }

    /// Conjugates every action by `p`: `g -> p g p^{-1}`.
    pub fn conjugate(&self, p: &Matrix) -> Result<Self> {
        let pinv = p.inverse()?;
        Representation::from_fn(self.dim, |g| &(p * self.action(g)) * &pinv)
    }

    pub fn to_json(&self, ctx: &QContext) -> Value {
        let action: BTreeMap<&str, Value> = Generator::ALL
            .iter()
            .map(|g| (g.name(), self.action(*g).to_json()))
            .collect();
        json!({ "dim": self.dim, "q": ctx.q().to_string(), "action": action })
    }

    pub fn from_json(v: &Value) -> Result<(Representation, QContext)> {
        let dim = v
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("representation needs an integer \"dim\"".into()))?
            as usize;
        let q = v
            .get("q")
            .ok_or_else(|| Error::Parse("representation needs \"q\"".into()))
            .and_then(crate::linalg::scalar_from_json)?;
        let ctx = QContext::new(q)?;
        let action = v
            .get("action")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("representation needs an \"action\" object".into()))?;
        let mut mats = Vec::with_capacity(7);
        for g in Generator::ALL {
            let m = action
                .get(g.name())
                .ok_or_else(|| Error::Parse(format!("missing action for {g}")))?;
            mats.push(Matrix::from_json(m)?);
        }
        let actions: [Matrix; 7] = mats.try_into().expect("seven generators");
        Ok((Representation::new(dim, actions)?, ctx))
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("Representation");
        d.field("dim", &self.dim);
        for g in Generator::ALL {
            d.field(g.name(), self.action(g));
        }
        d.finish()
    }
}

/// One named relation and whether it held; on failure the first offending
/// matrix entry is recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub relation: String,
    pub pass: bool,
    pub witness: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `lhs == rhs`.
    pub fn record(&mut self, relation: impl Into<String>, lhs: &Matrix, rhs: &Matrix) {
        let witness = lhs.first_difference(rhs);
        self.checks.push(RelationCheck {
            relation: relation.into(),
            pass: witness.is_none(),
            witness,
        });
    }

    pub fn record_bool(&mut self, relation: impl Into<String>, pass: bool) {
        self.checks.push(RelationCheck {
            relation: relation.into(),
            pass,
            witness: None,
        });
    }

    pub fn extend(&mut self, other: RelationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, relation: &str) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| c.relation == relation)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.checks
                .iter()
                .map(|c| {
                    json!({
                        "relation": c.relation,
                        "pass": c.pass,
                        "witness": c.witness.map(|(i, j)| json!([i, j])),
                    })
                })
                .collect(),
        )
    }
}

fn same_square(a: &Matrix, b: &Matrix) -> Result<()> {
    if !a.is_square() || a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(())
}

/// `[a, b] = ab - ba`.
pub fn bracket(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    same_square(a, b)?;
    Ok(&(a * b) - &(b * a))
}

/// `c ab - c^{-1} ba`.
fn bracket_with(a: &Matrix, b: &Matrix, c: &Scalar) -> Matrix {
    &(a * b).scale(c) - &(b * a).scale(&c.recip())
}

/// `[a, b]_q = q ab - q^{-1} ba`.
pub fn qbracket(a: &Matrix, b: &Matrix, ctx: &QContext) -> Result<Matrix> {
    same_square(a, b)?;
    Ok(bracket_with(a, b, ctx.q()))
}

/// `[a, [a, [a, b]_q]_{q^{-1}}]`.
pub fn serre(a: &Matrix, b: &Matrix, ctx: &QContext) -> Matrix {
    let inner = bracket_with(a, b, ctx.q());
    let mid = bracket_with(a, &inner, ctx.q_inv());
    &(a * &mid) - &(&mid * a)
}

/// Records `k e k^{-1} = c e`.
fn record_conjugation(
    report: &mut RelationReport,
    name: &str,
    k: &Matrix,
    kinv: &Matrix,
    e: &Matrix,
    c: &Scalar,
) {
    report.record(name, &(&(k * e) * kinv), &e.scale(c));
}

fn record_inverse(report: &mut RelationReport, name: &str, k: &Matrix, kinv: &Matrix) {
    let id = Matrix::identity(k.rows());
    let left = k * kinv;
    let right = kinv * k;
    let witness = left
        .first_difference(&id)
        .or_else(|| right.first_difference(&id));
    report.checks.push(RelationCheck {
        relation: name.into(),
        pass: witness.is_none(),
        witness,
    });
}

/// Evaluates every defining relation of `U'_q` as an exact matrix identity.
pub fn check_uprime_relations(rep: &Representation, ctx: &QContext) -> RelationReport {
    use Generator::*;
    let (e0p, e1p, e1m) = (rep.action(E0p), rep.action(E1p), rep.action(E1m));
    let (k0, k0i, k1, k1i) = (
        rep.action(K0),
        rep.action(K0inv),
        rep.action(K1),
        rep.action(K1inv),
    );
    let q2 = ctx.q_pow(2);
    let qm2 = ctx.q_pow(-2);
    let mut r = RelationReport::new();
    r.record("k0k1_commute", &(k0 * k1), &(k1 * k0));
    record_inverse(&mut r, "k0_inverse", k0, k0i);
    record_inverse(&mut r, "k1_inverse", k1, k1i);
    record_conjugation(&mut r, "k0_e0p", k0, k0i, e0p, &q2);
    record_conjugation(&mut r, "k0_e1p", k0, k0i, e1p, &qm2);
    record_conjugation(&mut r, "k0_e1m", k0, k0i, e1m, &q2);
    record_conjugation(&mut r, "k1_e0p", k1, k1i, e0p, &qm2);
    record_conjugation(&mut r, "k1_e1p", k1, k1i, e1p, &q2);
    record_conjugation(&mut r, "k1_e1m", k1, k1i, e1m, &qm2);
    r.record(
        "e1p_e1m",
        &(&(e1p * e1m) - &(e1m * e1p)),
        &(k1 - k1i).scale(&ctx.q_minus_qinv().recip()),
    );
    let zero = Matrix::zeros(rep.dim(), rep.dim());
    r.record("e0p_e1m", &(&(e0p * e1m) - &(e1m * e0p)), &zero);
    r.record("serre_e0p_e1p", &serre(e0p, e1p, ctx), &zero);
    r.record("serre_e1p_e0p", &serre(e1p, e0p, ctx), &zero);
    r
}

/// The three defining relations of `U_q(sl_2)` for a quadruple of matrices.
pub fn check_uqsl2_relations(
    x_plus: &Matrix,
    x_minus: &Matrix,
    k: &Matrix,
    kinv: &Matrix,
    ctx: &QContext,
) -> Result<RelationReport> {
    for m in [x_minus, k, kinv] {
        same_square(x_plus, m)?;
    }
    let mut r = RelationReport::new();
    record_inverse(&mut r, "K_inverse", k, kinv);
    record_conjugation(&mut r, "K_Xp", k, kinv, x_plus, &ctx.q_pow(2));
    record_conjugation(&mut r, "K_Xm", k, kinv, x_minus, &ctx.q_pow(-2));
    r.record(
        "Xp_Xm",
        &bracket(x_plus, x_minus)?,
        &(k - kinv).scale(&ctx.q_minus_qinv().recip()),
    );
    Ok(r)
}

/// The tensor product module `a ⊗ b` via the coproduct:
/// `k ↦ k⊗k`, `e_i+ ↦ k_i⊗e_i+ + e_i+⊗1`, `e1- ↦ 1⊗e1- + e1-⊗k1^{-1}`.
/// Basis vector `(i, j)` sits at index `i * b.dim() + j`.
pub fn coproduct_tensor(a: &Representation, b: &Representation) -> Representation {
    use Generator::*;
    let ia = Matrix::identity(a.dim());
    let ib = Matrix::identity(b.dim());
    let dim = a.dim() * b.dim();
    Representation::from_fn(dim, |g| match g {
        K0 | K0inv | K1 | K1inv => a.action(g).kron(b.action(g)),
        E0p => &a.action(K0).kron(b.action(E0p)) + &a.action(E0p).kron(&ib),
        E1p => &a.action(K1).kron(b.action(E1p)) + &a.action(E1p).kron(&ib),
        E1m => &ia.kron(b.action(E1m)) + &a.action(E1m).kron(b.action(K1inv)),
    })
    .expect("tensor shapes")
}

/// Images `x(s), y(s), k(s)^{±1}` of the augmented TD-algebra generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TdTriple {
    pub x: Matrix,
    pub y: Matrix,
    pub k: Matrix,
    pub kinv: Matrix,
    pub s: Scalar,
    pub eps: u8,
    pub eps_star: u8,
}

impl TdTriple {
    pub fn generators(&self) -> [&Matrix; 4] {
        [&self.x, &self.y, &self.k, &self.kinv]
    }
}

/// `x = -q^{-1}(q-q^{-1})^2 (s e0+ + eps s^{-1} e1- k1)`, `y = s^{-1} e1+`,
/// `k = s k0`. Only `eps_star = 0` is available since `e0-` is not in `U'_q`.
pub fn phi_s_image(
    rep: &Representation,
    s: &Scalar,
    eps: u8,
    eps_star: u8,
    ctx: &QContext,
) -> Result<TdTriple> {
    use Generator::*;
    if s.is_zero() {
        return Err(Error::Zero("s"));
    }
    if eps > 1 || eps_star > 1 {
        return Err(Error::OutOfRange("eps and eps_star must be 0 or 1".into()));
    }
    if eps_star == 1 {
        return Err(Error::Unsupported(
            "eps_star = 1 needs e0-, which U'_q lacks",
        ));
    }
    let sinv = s.recip();
    let qm = ctx.q_minus_qinv();
    let pref = -(ctx.q_inv() * &qm * &qm);
    let mut inner = rep.action(E0p).scale(s);
    if eps == 1 {
        inner = &inner + &(rep.action(E1m) * rep.action(K1)).scale(&sinv);
    }
    Ok(TdTriple {
        x: inner.scale(&pref),
        y: rep.action(E1p).scale(&sinv),
        k: rep.action(K0).scale(s),
        kinv: rep.action(K0inv).scale(&sinv),
        s: s.clone(),
        eps,
        eps_star,
    })
}

/// `delta = -(q-q^{-1})(q^2-q^{-2})(q^3-q^{-3}) q^4`.
pub fn td_delta(ctx: &QContext) -> Scalar {
    let d = |k: i64| ctx.q_pow(k) - ctx.q_pow(-k);
    -(d(1) * d(2) * d(3) * ctx.q_pow(4))
}

/// Checks `(TD)_0` and `(TD)_1` for the triple's own `eps`, `eps_star`.
pub fn check_td_relations(t: &TdTriple, ctx: &QContext) -> RelationReport {
    let (x, y, k, kinv) = (&t.x, &t.y, &t.k, &t.kinv);
    let mut r = RelationReport::new();
    record_inverse(&mut r, "k_inverse", k, kinv);
    record_conjugation(&mut r, "k_x", k, kinv, x, &ctx.q_pow(2));
    record_conjugation(&mut r, "k_y", k, kinv, y, &ctx.q_pow(-2));

    let delta = td_delta(ctx);
    let eps = Scalar::from_int(t.eps.into());
    let eps_star = Scalar::from_int(t.eps_star.into());
    let x2 = x * x;
    let y2 = y * y;
    let k2 = k * k;
    let km2 = kinv * kinv;
    let rhs_x = &(&x2 * &k2).scale(&eps_star) - &(&km2 * &x2).scale(&eps);
    let rhs_y = &(&y2 * &km2).scale(&eps) - &(&k2 * &y2).scale(&eps_star);
    r.record("td1_x", &serre(x, y, ctx), &rhs_x.scale(&delta));
    r.record("td1_y", &serre(y, x, ctx), &rhs_y.scale(&delta));
    r
}
