//! Groupoid constructions whose cardinalities are hypergeometric
//! coefficients `prod (a_i/b_i)_n / prod (c_j/d_j)_n` with positive rational
//! parameters.
//!
//! An upper parameter `a/b` contributes `([a])_{n,[b]} x Zb^n`: a functorial
//! Pochhammer symbol of discrete sets (cardinality `(a)_{n,b}`) times `n`
//! copies of the cyclic groupoid `Z/b` (cardinality `b^-n`). A lower
//! parameter `c/d` contributes `[d]^n x Z_c x Z_{c+d} x ... x Z_{c+(n-1)d}`,
//! of cardinality `d^n / (c)_{n,d}`. The full species is their pointwise
//! product.

mod triples;
mod verify;

use std::fmt;

use crate::arith::{hyper_coefficient, rational, Rational};
use crate::error::{Error, Resource, Result};
use crate::groupoid::{ExplicitGroupoid, GroupoidExpr, Label, Limits};
use crate::species::Species;

pub use triples::{count_h_objects, explicit_h_objects, StepValue, TripleObject};
pub use verify::{
    verify_species, verify_theorem, verify_theorem_cached, ExplicitCache, ExplicitStrategy, Overflow,
    VerificationReport, VerificationRow, VerifyOptions,
};

/// Upper parameters `a_i / b_i` and lower parameters `c_j / d_j`, all
/// components positive integers. Pairs are kept as given (`2/4` and `1/2`
/// build different groupoids of equal cardinality).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HyperParams {
    pub upper: Vec<(u64, u64)>,
    pub lower: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Interpretation {
    /// Upper factors are `([a])_{n,[b]} x Zb^n`.
    Product,
    /// Upper factors are `(Zb^{+a})_n`.
    Alternative,
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Interpretation::Product => "product",
            Interpretation::Alternative => "alt",
        })
    }
}

impl HyperParams {
    pub fn new(upper: Vec<(u64, u64)>, lower: Vec<(u64, u64)>) -> Result<Self> {
        let p = Self { upper, lower };
        p.check()?;
        Ok(p)
    }

    pub fn check(&self) -> Result<()> {
        for &(p, q) in self.upper.iter().chain(&self.lower) {
            if p == 0 || q == 0 {
                return Err(Error::InvalidParameter(format!("{p}/{q} is not a positive fraction")));
            }
        }
        Ok(())
    }

    pub fn upper_rationals(&self) -> Vec<Rational> {
        self.upper.iter().map(|&(a, b)| rational(a as i64, b as i64)).collect()
    }

    pub fn lower_rationals(&self) -> Vec<Rational> {
        self.lower.iter().map(|&(c, d)| rational(c as i64, d as i64)).collect()
    }

    /// `prod (a_i/b_i)_n / prod (c_j/d_j)_n`.
    pub fn analytic(&self, n: usize) -> Result<Rational> {
        hyper_coefficient(&self.upper_rationals(), &self.lower_rationals(), n)
    }

    /// Each Hadamard factor's value at `[n]`, upper factors first.
    pub fn factor_values(&self, n: usize, interpretation: Interpretation) -> Vec<GroupoidExpr> {
        let upper = self.upper.iter().map(|&(a, b)| match interpretation {
            Interpretation::Product => upper_value(a, b, n),
            Interpretation::Alternative => alt_upper_value(a, b, n),
        });
        let lower = self.lower.iter().map(|&(c, d)| lower_value(c, d, n));
        upper.chain(lower).collect()
    }
}

impl fmt::Display for HyperParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[(u64, u64)]| v.iter().map(|(p, q)| format!("{p}/{q}")).collect::<Vec<_>>().join(",");
        write!(f, "{};{}", list(&self.upper), list(&self.lower))
    }
}

/// `prod_{i<n} (g + k x [i])`. Its cardinality is `(|g|)_{n,|k|}`.
pub fn functorial_pochhammer(g: &GroupoidExpr, k: &GroupoidExpr, n: usize) -> GroupoidExpr {
    GroupoidExpr::product(
        (0..n)
            .map(|i| {
                GroupoidExpr::union(vec![
                    g.clone(),
                    GroupoidExpr::product(vec![k.clone(), GroupoidExpr::tagged(i as u64, "level")]),
                ])
            })
            .collect(),
    )
}

/// `Z_c x Z_{c+d} x ... x Z_{c+(n-1)d}`, of cardinality `1 / (c)_{n,d}`.
pub fn zbar_chain(c: u64, n: usize, d: u64) -> GroupoidExpr {
    GroupoidExpr::product((0..n as u64).map(|i| GroupoidExpr::cyclic(c + i * d)).collect())
}

/// Value at `[n]` of the species for the upper parameter `a/b`.
pub fn upper_value(a: u64, b: u64, n: usize) -> GroupoidExpr {
    let steps = functorial_pochhammer(&GroupoidExpr::tagged(a, "base"), &GroupoidExpr::tagged(b, "block"), n);
    GroupoidExpr::product(vec![steps, GroupoidExpr::cyclic(b).power(n)])
}

/// Value at `[n]` of the species for the lower parameter `c/d`.
pub fn lower_value(c: u64, d: u64, n: usize) -> GroupoidExpr {
    GroupoidExpr::product(vec![GroupoidExpr::tagged(d, "color").power(n), zbar_chain(c, n, d)])
}

/// `(Zb^{+a})_n`: the functorial Pochhammer symbol of `a` copies of `Z/b`
/// with step `unit`. Objects are tuples `x` with `1 <= x_i <= a + i - 1`.
pub fn alt_upper_value(a: u64, b: u64, n: usize) -> GroupoidExpr {
    let copies = GroupoidExpr::union(vec![GroupoidExpr::cyclic(b); a as usize]);
    functorial_pochhammer(&copies, &GroupoidExpr::unit(), n)
}

pub fn species_h_upper(a: u64, b: u64) -> Species {
    Species::custom(format!("H({a}/{b};)"), move |n| upper_value(a, b, n))
}

pub fn species_h_lower(c: u64, d: u64) -> Species {
    Species::custom(format!("H(;{c}/{d})"), move |n| lower_value(c, d, n))
}

/// Pointwise product of one species per parameter. Its generating series is
/// `h(a_1/b_1, ...; c_1/d_1, ...)`.
pub fn species_h(params: &HyperParams, interpretation: Interpretation) -> Species {
    let head = match interpretation {
        Interpretation::Product => "H",
        Interpretation::Alternative => "Halt",
    };
    let p = params.clone();
    Species::custom(format!("{head}({p})"), move |n| {
        GroupoidExpr::product(p.factor_values(n, interpretation))
    })
}

/// Predicted (objects, morphisms, compositions) of [`alt_pochhammer_groupoid`].
/// Summing `b^{j c(x)}` over tuples factorizes position by position into
/// `prod_i (a b^j + i)`.
pub fn alt_pochhammer_size(a: u64, b: u64, n: usize) -> (u128, u128, u128) {
    let per_power = |j: u32| {
        let w = (a as u128).saturating_mul((b as u128).saturating_pow(j));
        (0..n as u128).fold(1u128, |acc, i| acc.saturating_mul(w.saturating_add(i)))
    };
    (per_power(0), per_power(1), per_power(2))
}

/// Builds `(Zb^{+a})_n` directly: one object per tuple `(x_1..x_n)` with
/// `1 <= x_i <= a + i - 1`, automorphisms `Z_b^{c(x)}` where `c(x)` counts
/// the entries `x_i <= a`, and no morphisms between distinct tuples.
pub fn alt_pochhammer_groupoid(a: u64, b: u64, n: usize, limits: &Limits) -> Result<ExplicitGroupoid> {
    let (objects, morphisms, compositions) = alt_pochhammer_size(a, b, n);
    let checks = [
        (Resource::Objects, objects, limits.max_objects),
        (Resource::Morphisms, morphisms, limits.max_morphisms),
        (Resource::Compositions, compositions, limits.max_compositions),
    ];
    for (resource, predicted, limit) in checks {
        if predicted > limit as u128 {
            return Err(Error::ResourceLimitExceeded {
                resource,
                predicted,
                limit: limit as u128,
            });
        }
    }
    let mut tuple = vec![1u64; n];
    let mut out = Vec::with_capacity(objects as usize);
    loop {
        let c = tuple.iter().filter(|&&x| x <= a).count();
        let label = Label::Tuple(
            tuple
                .iter()
                .map(|&index| Label::Elem { tag: "x".into(), index })
                .collect(),
        );
        out.push((label, vec![b; c]));
        // odometer, last position fastest
        let mut i = n;
        loop {
            if i == 0 {
                return ExplicitGroupoid::from_automorphism_groups(out, limits);
            }
            i -= 1;
            if tuple[i] < a + i as u64 {
                tuple[i] += 1;
                break;
            }
            tuple[i] = 1;
        }
    }
}
