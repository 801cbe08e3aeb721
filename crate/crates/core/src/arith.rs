//! Exact rationals and the scalar Pochhammer / hypergeometric coefficient formulas.
//!
//! Every cardinality in the crate is a [`Rational`]. `BigRational` keeps its
//! value reduced with a positive denominator, so `==` is exact structural
//! equality.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: u64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn checked_div(numer: &Rational, denom: &Rational) -> Result<Rational> {
    if denom.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(numer / denom)
}

/// Parses `p/q` or `p` with decimal integers and `q > 0`. No whitespace is
/// accepted anywhere.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let fail = |reason| Error::InvalidRational {
        input: input.to_string(),
        reason,
    };
    let (numer, denom) = match input.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (input, None),
    };
    let numer = parse_decimal(numer, true).ok_or_else(|| fail("numerator is not a decimal integer"))?;
    let denom = match denom {
        Some(q) => parse_decimal(q, false).ok_or_else(|| fail("denominator is not a decimal integer"))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(fail("denominator is zero"));
    }
    Ok(Rational::new(numer, denom))
}

fn parse_decimal(text: &str, signed: bool) -> Option<BigInt> {
    let digits = match text.strip_prefix('-') {
        Some(rest) if signed => rest,
        _ => text,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

/// `a (a + k) (a + 2k) ... (a + (n-1)k)`; the empty product is 1.
pub fn pochhammer_step(a: &Rational, n: usize, k: &Rational) -> Rational {
    let (numer, denom) = pochhammer_parts(a, n, k);
    Rational::new(numer, denom)
}

/// Unreduced numerator and denominator of `pochhammer_step`: with
/// `a = p/q`, `k = r/s` the terms are `(ps + irq) / qs`.
fn pochhammer_parts(a: &Rational, n: usize, k: &Rational) -> (BigInt, BigInt) {
    let step = k.numer() * a.denom();
    let mut term = a.numer() * k.denom();
    let mut numer = BigInt::one();
    for _ in 0..n {
        numer *= &term;
        term += &step;
    }
    (numer, (a.denom() * k.denom()).pow(n as u32))
}

/// Rising factorial `(a)_n`.
pub fn pochhammer(a: &Rational, n: usize) -> Rational {
    pochhammer_step(a, n, &Rational::one())
}

pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        // acc * (n - i) is always divisible by (i + 1)
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Coefficient of `x^n / n!` in `h(upper; lower)`.
pub fn hyper_coefficient(upper: &[Rational], lower: &[Rational], n: usize) -> Result<Rational> {
    check_lower(lower)?;
    // one reduction at the end instead of one per factor
    let one = Rational::one();
    let (mut numer, mut denom) = (BigInt::one(), BigInt::one());
    for a in upper {
        let (p, q) = pochhammer_parts(a, n, &one);
        numer *= p;
        denom *= q;
    }
    for b in lower {
        let (p, q) = pochhammer_parts(b, n, &one);
        numer *= q;
        denom *= p;
    }
    if denom.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(numer, denom))
}

pub(crate) fn check_lower(lower: &[Rational]) -> Result<()> {
    match lower.iter().position(|b| !b.is_positive()) {
        Some(index) => Err(Error::NonPositiveLowerParameter {
            index,
            value: lower[index].to_string(),
        }),
        None => Ok(()),
    }
}
