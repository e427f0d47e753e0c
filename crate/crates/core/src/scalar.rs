//! Exact rational scalars and the deformation parameter `q`.
//!
//! Every quantity in the workbench is a rational function of `q` and the
//! evaluation parameters, so all arithmetic is carried out over exact
//! rationals. A [`Scalar`] is always stored in lowest terms with a positive
//! denominator, which makes `==` structural.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `numer / denom`, reduced. Panics on a zero denominator.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Scalar(BigRational::new(numer, denom)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Scalar(self.0.recip())
    }

    pub fn checked_recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    /// Integer power; negative exponents invert. Panics for `0^k`, `k < 0`.
    pub fn pow(&self, exp: i64) -> Self {
        let e = i32::try_from(exp).expect("exponent out of range");
        if e < 0 {
            assert!(!self.is_zero(), "negative power of zero");
        }
        Scalar(num_traits::Pow::pow(&self.0, e))
    }

    /// In-place `self += a * b`, skipping the work when either factor is zero.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self += a * b;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `"p"` or `"p/q"` with optional sign and surrounding whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| {
            BigInt::from_str(t.trim()).map_err(|_| Error::Parse(format!("bad scalar {s:?}")))
        };
        match s.split_once('/') {
            Some((n, d)) => Scalar::from_big(parse_int(n)?, parse_int(d)?),
            None => Ok(Scalar(BigRational::from_integer(parse_int(s)?))),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar(r)
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Scalar {
    fn small(&self) -> Option<(i64, i64)> {
        Some((self.0.numer().to_i64()?, self.0.denom().to_i64()?))
    }

    /// `n / d` with `d > 0`, reduced with machine integers.
    fn from_i128(n: i128, d: i128) -> Scalar {
        let g = gcd_u128(n.unsigned_abs(), d.unsigned_abs()) as i128;
        let (n, d) = if g > 1 { (n / g, d / g) } else { (n, d) };
        Scalar(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))
    }
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact result computed in `i128` when both operands have `i64` parts.
fn small_op(op: Op, a: &Scalar, b: &Scalar) -> Option<Scalar> {
    let ((an, ad), (bn, bd)) = (a.small()?, b.small()?);
    let (an, ad, bn, bd) = (an as i128, ad as i128, bn as i128, bd as i128);
    let (n, d) = match op {
        Op::Add => ((an * bd).checked_add(bn * ad)?, ad * bd),
        Op::Sub => ((an * bd).checked_sub(bn * ad)?, ad * bd),
        Op::Mul => (an * bn, ad * bd),
        Op::Div => {
            assert!(bn != 0, "division by zero");
            if bn < 0 {
                (-(an * bd), -(ad * bn))
            } else {
                (an * bd, ad * bn)
            }
        }
    };
    Some(Scalar::from_i128(n, d))
}

macro_rules! binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident, $op:expr) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                small_op($op, &self, &rhs).unwrap_or_else(|| Scalar(self.0.$m(rhs.0)))
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                small_op($op, &self, rhs).unwrap_or_else(|| Scalar(self.0.$m(&rhs.0)))
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                small_op($op, self, &rhs).unwrap_or_else(|| Scalar((&self.0).$m(rhs.0)))
            }
        }
        impl<'a, 'b> $tr<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'b Scalar) -> Scalar {
                small_op($op, self, rhs).unwrap_or_else(|| Scalar((&self.0).$m(&rhs.0)))
            }
        }
        impl $atr<Scalar> for Scalar {
            fn $am(&mut self, rhs: Scalar) {
                match small_op($op, self, &rhs) {
                    Some(r) => *self = r,
                    None => self.0.$am(rhs.0),
                }
            }
        }
        impl<'a> $atr<&'a Scalar> for Scalar {
            fn $am(&mut self, rhs: &'a Scalar) {
                match small_op($op, self, rhs) {
                    Some(r) => *self = r,
                    None => self.0.$am(&rhs.0),
                }
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign, Op::Add);
binop!(Sub, sub, SubAssign, sub_assign, Op::Sub);
binop!(Mul, mul, MulAssign, mul_assign, Op::Mul);
binop!(Div, div, DivAssign, div_assign, Op::Div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

/// The deformation parameter together with the guarantee that it is usable:
/// `q` is nonzero and `|q| != 1`, which for a rational forces `q` not to be a
/// root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QContext {
    q: Scalar,
    q_inv: Scalar,
}

impl QContext {
    pub fn new(q: Scalar) -> Result<Self> {
        if q.is_zero() || q.abs().is_one() {
            return Err(Error::InvalidQ(q.to_string()));
        }
        let q_inv = q.recip();
        Ok(QContext { q, q_inv })
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn q_inv(&self) -> &Scalar {
        &self.q_inv
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(&self, k: i64) -> Scalar {
        self.q.pow(k)
    }

    /// `q - q^{-1}`, nonzero by construction.
    pub fn q_minus_qinv(&self) -> Scalar {
        &self.q - &self.q_inv
    }

    /// The q-integer `[t] = (q^t - q^{-t}) / (q - q^{-1})`.
    pub fn q_int(&self, t: i64) -> Scalar {
        if t == 0 {
            return Scalar::zero();
        }
        // Sum of q^{t-1-2j}, j = 0..|t|-1, avoids a rational division.
        let n = t.abs();
        let mut acc = Scalar::zero();
        let step = &self.q * &self.q;
        let mut term = self.q_pow(-(n - 1));
        for _ in 0..n {
            acc += &term;
            term *= &step;
        }
        if t < 0 {
            -acc
        } else {
            acc
        }
    }

    /// The q-factorial `[t]! = [t][t-1]...[1]`, with `[0]! = 1`.
    pub fn q_fact(&self, t: i64) -> Result<Scalar> {
        if t < 0 {
            return Err(Error::Negative {
                what: "q-factorial argument",
                value: t,
            });
        }
        Ok((1..=t).map(|i| self.q_int(i)).product())
    }

    /// The integer `k` with `q^k == r`, if one exists.
    pub fn log_q(&self, r: &Scalar) -> Option<i64> {
        if r.is_zero() {
            return None;
        }
        // Work with a base of modulus > 1 and flip the exponent sign if needed.
        let (base, flip) = if self.q.abs() > Scalar::one() {
            (self.q.abs(), false)
        } else {
            (self.q_inv.abs(), true)
        };
        let target = r.abs();
        let mut k: i64 = 0;
        let mut p = Scalar::one();
        match target.cmp(&Scalar::one()) {
            Ordering::Equal => {}
            Ordering::Greater => {
                while p < target {
                    p *= &base;
                    k += 1;
                }
            }
            Ordering::Less => {
                while p > target {
                    p /= &base;
                    k -= 1;
                }
            }
        }
        let k = if flip { -k } else { k };
        (self.q_pow(k) == *r).then_some(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(q: &str) -> QContext {
        QContext::new(q.parse().unwrap()).unwrap()
    }

    #[test]
    fn parses_and_prints_canonically() {
        let s: Scalar = "6/-4".parse().unwrap();
        assert_eq!(s.to_string(), "-3/2");
        assert_eq!("7".parse::<Scalar>().unwrap().to_string(), "7");
        assert_eq!(" -10/5 ".parse::<Scalar>().unwrap().to_string(), "-2");
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
    }

    #[test]
    fn rejects_bad_q() {
        for q in ["0", "1", "-1"] {
            assert!(QContext::new(q.parse().unwrap()).is_err(), "q = {q}");
        }
        assert!(QContext::new("1/2".parse().unwrap()).is_ok());
    }

    #[test]
    fn q_int_examples() {
        let c = ctx("2");
        assert_eq!(c.q_int(0), Scalar::zero());
        assert_eq!(c.q_int(1), Scalar::one());
        assert_eq!(c.q_int(2), Scalar::new(5, 2));
        assert_eq!(c.q_int(-2), Scalar::new(-5, 2));
    }

    #[test]
    fn q_fact_examples() {
        let c = ctx("2");
        assert_eq!(c.q_fact(0).unwrap(), Scalar::one());
        assert_eq!(c.q_fact(1).unwrap(), Scalar::one());
        assert_eq!(c.q_fact(3).unwrap(), Scalar::new(105, 8));
        assert!(c.q_fact(-1).is_err());
    }

    #[test]
    fn q_int_matches_defining_quotient() {
        for q in ["2", "3/2", "-1/3", "5"] {
            let c = ctx(q);
            for t in -10..=10 {
                let lhs = c.q_int(t) * c.q_minus_qinv();
                assert_eq!(lhs, c.q_pow(t) - c.q_pow(-t), "q={q} t={t}");
            }
        }
    }

    #[test]
    fn q_int_addition_law() {
        let c = ctx("3/2");
        for s in -10..=10 {
            for t in -10..=10 {
                let rhs = c.q_pow(t) * c.q_int(s) + c.q_pow(-s) * c.q_int(t);
                assert_eq!(c.q_int(s + t), rhs, "s={s} t={t}");
            }
        }
    }

    #[test]
    fn log_q_recovers_exponents() {
        for q in ["2", "1/3", "-2", "-3/5"] {
            let c = ctx(q);
            for k in -7..=7 {
                assert_eq!(c.log_q(&c.q_pow(k)), Some(k), "q={q} k={k}");
            }
            assert_eq!(c.log_q(&Scalar::from_int(7)), None);
            assert_eq!(c.log_q(&Scalar::zero()), None);
        }
        // sign mismatch for negative q
        assert_eq!(ctx("-2").log_q(&Scalar::from_int(-4)), None);
    }

    fn arb_scalar() -> impl proptest::strategy::Strategy<Value = Scalar> {
        use proptest::prelude::*;
        let edge = prop_oneof![
            Just(i64::MAX),
            Just(i64::MIN),
            Just(i64::MIN + 1),
            -1000i64..=1000
        ];
        (edge.clone(), edge.prop_filter("nonzero", |d| *d != 0))
            .prop_map(|(n, d)| Scalar(BigRational::new(BigInt::from(n), BigInt::from(d))))
    }

    proptest::proptest! {
        #[test]
        fn machine_path_matches_bigrational(a in arb_scalar(), b in arb_scalar()) {
            proptest::prop_assert_eq!(&a + &b, Scalar(&a.0 + &b.0));
            proptest::prop_assert_eq!(&a - &b, Scalar(&a.0 - &b.0));
            proptest::prop_assert_eq!(&a * &b, Scalar(&a.0 * &b.0));
            if !b.is_zero() {
                proptest::prop_assert_eq!(&a / &b, Scalar(&a.0 / &b.0));
            }
            let mut c = a.clone();
            c.add_mul(&a, &b);
            proptest::prop_assert_eq!(c, Scalar(&a.0 + &a.0 * &b.0));
        }
    }
}
