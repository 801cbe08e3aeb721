//! Objects of the hypergeometric groupoid at `[n]` as triples `(I, f, g)`.
//!
//! For each upper parameter `a_i/b_i`: a set `I_i` of positions in
//! `{1, ..., n-1}` and a function `f_i` on `{0, ..., n-1}` with
//! `f_i(p) in [a_i]` when `p` is not in `I_i`, and `f_i(p) = (j, l)` with
//! `j in [b_i]`, `1 <= l <= p` when it is. For each lower parameter `c_j/d_j`:
//! a function `g_j: [n] -> [d_j]`.
//!
//! Only objects are enumerated; counts are compared against the realized
//! product construction.

use num_bigint::BigUint;
use num_traits::One;

use super::HyperParams;
use crate::error::{Error, Resource, Result};
use crate::groupoid::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StepValue {
    /// `f(p) in [a]`, position not in `I`.
    Base(u64),
    /// `f(p) = (block, level)` in `[b] x N`, position in `I`.
    Block { block: u64, level: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TripleObject {
    /// `I_i`, sorted.
    pub subsets: Vec<Vec<usize>>,
    pub f: Vec<Vec<StepValue>>,
    pub g: Vec<Vec<u64>>,
}

/// All `(I_i, f_i)` for one upper parameter.
fn upper_choices(a: u64, b: u64, n: usize) -> Vec<(Vec<usize>, Vec<StepValue>)> {
    let mut out = vec![(Vec::new(), Vec::new())];
    for p in 0..n {
        let mut options: Vec<StepValue> = (1..=a).map(StepValue::Base).collect();
        for block in 1..=b {
            for level in 1..=p {
                options.push(StepValue::Block { block, level });
            }
        }
        out = out
            .into_iter()
            .flat_map(|(subset, f)| {
                options.iter().map(move |&v| {
                    let mut subset = subset.clone();
                    let mut f = f.clone();
                    if matches!(v, StepValue::Block { .. }) {
                        subset.push(p);
                    }
                    f.push(v);
                    (subset, f)
                })
            })
            .collect();
    }
    out
}

/// All `g_j: [n] -> [d]`.
fn lower_choices(d: u64, n: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|g| {
                (1..=d).map(move |v| {
                    let mut g = g.clone();
                    g.push(v);
                    g
                })
            })
            .collect();
    }
    out
}

fn predicted(params: &HyperParams, n: usize) -> u128 {
    let upper = params.upper.iter().fold(1u128, |acc, &(a, b)| {
        (0..n as u128).fold(acc, |acc, p| {
            acc.saturating_mul((a as u128).saturating_add((b as u128).saturating_mul(p)))
        })
    });
    params.lower.iter().fold(upper, |acc, &(_, d)| {
        acc.saturating_mul((d as u128).saturating_pow(n as u32))
    })
}

/// Every triple at `[n]`, in lexicographic order of the per-parameter choices.
/// Refused when the count would exceed `limits.max_objects`.
pub fn explicit_h_objects(params: &HyperParams, n: usize, limits: &Limits) -> Result<Vec<TripleObject>> {
    let total = predicted(params, n);
    if total > limits.max_objects as u128 {
        return Err(Error::ResourceLimitExceeded {
            resource: Resource::Objects,
            predicted: total,
            limit: limits.max_objects as u128,
        });
    }
    let uppers: Vec<_> = params.upper.iter().map(|&(a, b)| upper_choices(a, b, n)).collect();
    let lowers: Vec<_> = params.lower.iter().map(|&(_, d)| lower_choices(d, n)).collect();
    let mut out = vec![TripleObject {
        subsets: Vec::new(),
        f: Vec::new(),
        g: Vec::new(),
    }];
    for choices in &uppers {
        out = out
            .into_iter()
            .flat_map(|t| {
                choices.iter().map(move |(subset, f)| {
                    let mut t = t.clone();
                    t.subsets.push(subset.clone());
                    t.f.push(f.clone());
                    t
                })
            })
            .collect();
    }
    for choices in &lowers {
        out = out
            .into_iter()
            .flat_map(|t| {
                choices.iter().map(move |g| {
                    let mut t = t.clone();
                    t.g.push(g.clone());
                    t
                })
            })
            .collect();
    }
    Ok(out)
}

/// Number of triples without listing them: the choices at each position are
/// independent.
pub fn count_h_objects(params: &HyperParams, n: usize) -> BigUint {
    // position p offers a base values and b*p blocks
    let upper = params
        .upper
        .iter()
        .flat_map(|&(a, b)| (0..n as u64).map(move |p| BigUint::from(a) + BigUint::from(b) * p));
    let lower = params.lower.iter().map(|&(_, d)| BigUint::from(d).pow(n as u32));
    upper.chain(lower).fold(BigUint::one(), |acc, c| acc * c)
}
