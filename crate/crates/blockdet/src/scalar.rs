//! Ring-abstraction scalar values: exact arbitrary-precision integers, exact
//! rationals (always in lowest terms), or binary64 floats.
//!
//! A computation runs in one arithmetic family throughout: exact (`Int`,
//! `Rat`, which promote freely to each other) or `F64`. Mixing the exact and
//! float families in one operation is a programming error and panics.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Arithmetic family of a run. `Exact` covers integers and rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithmeticMode {
    Exact,
    Float,
}

#[derive(Clone, Debug)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    F64(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Int(BigInt::zero())
    }

    pub fn one() -> Self {
        Scalar::Int(BigInt::one())
    }

    /// Additive identity of the given arithmetic family.
    pub fn zero_of(mode: ArithmeticMode) -> Self {
        match mode {
            ArithmeticMode::Exact => Scalar::zero(),
            ArithmeticMode::Float => Scalar::F64(0.0),
        }
    }

    /// Multiplicative identity of the given arithmetic family.
    pub fn one_of(mode: ArithmeticMode) -> Self {
        match mode {
            ArithmeticMode::Exact => Scalar::one(),
            ArithmeticMode::Float => Scalar::F64(1.0),
        }
    }

    pub fn from_i64(v: i64) -> Self {
        Scalar::Int(BigInt::from(v))
    }

    /// Exact rational `num/den` in lowest terms. Panics if `den == 0`.
    pub fn rational(num: i64, den: i64) -> Self {
        Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn float(v: f64) -> Self {
        Scalar::F64(v)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_zero(),
            Scalar::Rat(v) => v.is_zero(),
            Scalar::F64(v) => *v == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_one(),
            Scalar::Rat(v) => v.is_one(),
            Scalar::F64(v) => *v == 1.0,
        }
    }

    pub fn mode(&self) -> ArithmeticMode {
        match self {
            Scalar::F64(_) => ArithmeticMode::Float,
            _ => ArithmeticMode::Exact,
        }
    }

    pub fn is_int(&self) -> bool {
        matches!(self, Scalar::Int(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Int(v) => v.to_f64().unwrap_or(f64::NAN),
            Scalar::Rat(v) => v.to_f64().unwrap_or(f64::NAN),
            Scalar::F64(v) => *v,
        }
    }

    /// Exact value as a rational. Panics on floats.
    pub fn to_rational(&self) -> BigRational {
        match self {
            Scalar::Int(v) => BigRational::from_integer(v.clone()),
            Scalar::Rat(v) => v.clone(),
            Scalar::F64(_) => panic!("to_rational on a float scalar"),
        }
    }

    /// The integer this scalar equals, if it is an exact integer value
    /// (including rationals with unit denominator).
    pub fn as_exact_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Int(v) => Some(v.clone()),
            Scalar::Rat(v) if v.denom().is_one() => Some(v.numer().clone()),
            _ => None,
        }
    }

    /// Collapse `Rat(p/1)` to `Int(p)`; other values unchanged.
    pub fn canonical(self) -> Self {
        match self {
            Scalar::Rat(v) if v.denom().is_one() => Scalar::Int(v.numer().clone()),
            other => other,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Int(v) => Scalar::Int(v.abs()),
            Scalar::Rat(v) => Scalar::Rat(v.abs()),
            Scalar::F64(v) => Scalar::F64(v.abs()),
        }
    }

    /// Division, promoting exact integers to rationals.
    pub fn div(&self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "scalar division by zero");
        match (self, rhs) {
            (Scalar::F64(a), Scalar::F64(b)) => Scalar::F64(a / b),
            (a, b) if a.mode() == ArithmeticMode::Exact && b.mode() == ArithmeticMode::Exact => {
                Scalar::Rat(a.to_rational() / b.to_rational())
            }
            _ => mode_mismatch(),
        }
    }

    /// Division that is known to be exact in the current representation:
    /// integer division asserting zero remainder (the fraction-free
    /// elimination guarantee), plain division otherwise.
    pub fn div_exact(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => {
                let (q, r) = num::Integer::div_rem(a, b);
                assert!(r.is_zero(), "inexact integer division in div_exact");
                Scalar::Int(q)
            }
            _ => self.div(rhs),
        }
    }

    /// Parse an exact scalar: integer, `p/q`, or decimal (optionally with a
    /// base-10 exponent), converted exactly to a rational.
    pub fn parse_exact(text: &str) -> Result<Scalar> {
        let s = text.trim();
        if s.is_empty() {
            return Err(Error::Domain("empty scalar literal".into()));
        }
        if let Some((p, q)) = s.split_once('/') {
            let numer: BigInt = p
                .trim()
                .parse()
                .map_err(|_| Error::Domain(format!("invalid rational numerator {p:?}")))?;
            let denom: BigInt = q
                .trim()
                .parse()
                .map_err(|_| Error::Domain(format!("invalid rational denominator {q:?}")))?;
            if denom.is_zero() {
                return Err(Error::Domain(format!("zero denominator in {s:?}")));
            }
            return Ok(Scalar::Rat(BigRational::new(numer, denom)).canonical());
        }
        if let Ok(v) = s.parse::<BigInt>() {
            return Ok(Scalar::Int(v));
        }
        parse_decimal(s)
    }

    pub fn parse_float(text: &str) -> Result<Scalar> {
        let s = text.trim();
        s.parse::<f64>()
            .map(Scalar::F64)
            .map_err(|_| Error::Domain(format!("invalid float literal {s:?}")))
    }
}

/// Decimal literal with optional exponent, e.g. `-3.25`, `1.5e-2`.
fn parse_decimal(s: &str) -> Result<Scalar> {
    let bad = || Error::Domain(format!("invalid numeric literal {s:?}"));
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if frac_part.contains(['+', '-']) {
        return Err(bad());
    }
    let digits = format!(
        "{}{}",
        if int_part.is_empty() { "0" } else { int_part },
        frac_part
    );
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    let scale = frac_part.len() as i32 - exp;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::new(numer, ten.pow(scale as u32))
    } else {
        BigRational::from_integer(numer * ten.pow((-scale) as u32))
    };
    Ok(Scalar::Rat(value).canonical())
}

fn mode_mismatch() -> ! {
    panic!("arithmetic mode mismatch: exact and float scalars in one operation")
}

fn binop(
    a: &Scalar,
    b: &Scalar,
    fi: impl FnOnce(&BigInt, &BigInt) -> BigInt,
    fr: impl FnOnce(BigRational, BigRational) -> BigRational,
    ff: impl FnOnce(f64, f64) -> f64,
) -> Scalar {
    match (a, b) {
        (Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(fi(x, y)),
        (Scalar::F64(x), Scalar::F64(y)) => Scalar::F64(ff(*x, *y)),
        (x, y) if x.mode() == ArithmeticMode::Exact && y.mode() == ArithmeticMode::Exact => {
            Scalar::Rat(fr(x.to_rational(), y.to_rational()))
        }
        _ => mode_mismatch(),
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        binop(self, rhs, |a, b| a + b, |a, b| a + b, |a, b| a + b)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        binop(self, rhs, |a, b| a - b, |a, b| a - b, |a, b| a - b)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        binop(self, rhs, |a, b| a * b, |a, b| a * b, |a, b| a * b)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Int(v) => Scalar::Int(-v),
            Scalar::Rat(v) => Scalar::Rat(-v),
            Scalar::F64(v) => Scalar::F64(-v),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => a == b,
            (Scalar::F64(a), Scalar::F64(b)) => a == b,
            (a, b) if a.mode() == ArithmeticMode::Exact && b.mode() == ArithmeticMode::Exact => {
                a.to_rational() == b.to_rational()
            }
            _ => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Rat(v) if v.denom().is_one() => write!(f, "{}", v.numer()),
            Scalar::Rat(v) => write!(f, "{}/{}", v.numer(), v.denom()),
            Scalar::F64(v) => write!(f, "{v:.16e}"),
        }
    }
}
