//! Truncated exponential generating functions `sum a_n x^n / n!` with exact
//! rational coefficients.
//!
//! Coefficients are stored in the `x^n / n!` basis. Binary operations insist
//! on equal orders rather than truncating silently.

use std::ops::Index;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{binomial, factorial, hyper_coefficient, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EgfSeries {
    coeffs: Vec<Rational>,
}

impl EgfSeries {
    /// Builds a series from `a_0..=a_N`; `coeffs` must be non-empty.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least the constant coefficient");
        Self { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Self::new((0..=order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| Rational::zero())
    }

    /// The series `1`.
    pub fn one(order: usize) -> Self {
        Self::from_fn(order, |n| if n == 0 { Rational::one() } else { Rational::zero() })
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::from_fn(order, |n| if n == 1 { Rational::one() } else { Rational::zero() })
    }

    /// `e^x`: every EGF coefficient is 1.
    pub fn exp(order: usize) -> Self {
        Self::from_fn(order, |_| Rational::one())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficients of `x^n` (the ordinary basis), `a_n / n!`.
    pub fn ordinary_coeffs(&self) -> Vec<Rational> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| a / Rational::from_integer(BigInt::from(factorial(n as u64))))
            .collect()
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self::new(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        ))
    }

    /// Coefficientwise product in the `x^n / n!` basis.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self::new(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).collect(),
        ))
    }

    /// EGF product: `c_n = sum_k C(n,k) a_k b_{n-k}`.
    pub fn cauchy_product(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self::from_fn(self.order(), |n| {
            (0..=n).fold(Rational::zero(), |acc, k| {
                let c = Rational::from_integer(binomial(n as u64, k as u64).into());
                acc + c * &self.coeffs[k] * &other.coeffs[n - k]
            })
        }))
    }

    /// `self(inner)`, which requires `inner` to have zero constant term.
    ///
    /// Summation runs over partition types of `n` (integer partitions with a
    /// multiplicity per part) weighted by the number of set partitions of that
    /// type, `n! / prod_j (j!^{m_j} m_j!)`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.same_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::CompositionRequiresZeroConstant);
        }
        let order = self.order();
        let fact: Vec<Rational> = (0..=order as u64)
            .map(|n| Rational::from_integer(factorial(n).into()))
            .collect();
        let mut out = vec![Rational::zero(); order + 1];
        out[0] = self.coeffs[0].clone();
        for (n, slot) in out.iter_mut().enumerate().skip(1) {
            let mut multiplicities = vec![0usize; n + 1];
            let mut total = Rational::zero();
            partition_types(n, n, &mut multiplicities, &mut |m| {
                let blocks: usize = m.iter().sum();
                let outer = &self.coeffs[blocks];
                if outer.is_zero() {
                    return;
                }
                let mut term = outer * &fact[n];
                for (part, &count) in m.iter().enumerate().skip(1) {
                    for _ in 0..count {
                        term *= &inner.coeffs[part];
                        term /= &fact[part];
                    }
                    term /= &fact[count];
                }
                total += term;
            });
            *slot = total;
        }
        Ok(Self::new(out))
    }
}

/// Calls `visit` with the multiplicity vector of every integer partition of
/// `remaining` into parts of size at most `max_part`.
fn partition_types(remaining: usize, max_part: usize, multiplicities: &mut [usize], visit: &mut impl FnMut(&[usize])) {
    if remaining == 0 {
        visit(multiplicities);
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        multiplicities[part] += 1;
        partition_types(remaining - part, part, multiplicities, visit);
        multiplicities[part] -= 1;
    }
}

impl Index<usize> for EgfSeries {
    type Output = Rational;

    fn index(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }
}

/// `h(upper; lower)` truncated at `order`.
pub fn hypergeometric_series(upper: &[Rational], lower: &[Rational], order: usize) -> Result<EgfSeries> {
    let coeffs = (0..=order)
        .map(|n| hyper_coefficient(upper, lower, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(EgfSeries::new(coeffs))
}
