//! Three-way check of a species against hypergeometric coefficients: explicit
//! enumeration of the realized groupoid, symbolic cardinality of its
//! expression, and the Pochhammer formula.

use std::collections::HashMap;

use num_traits::One;

use super::{alt_pochhammer_groupoid, alt_pochhammer_size, alt_upper_value, lower_value, upper_value};
use super::{HyperParams, Interpretation};
use crate::arith::{hyper_coefficient, Rational};
use crate::error::{Error, Result};
use crate::groupoid::{cardinality_explicit_with, realize, GroupoidExpr, Limits, Node, ValidationOptions};
use crate::species::Species;

/// How the explicit side is materialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExplicitStrategy {
    /// Realize the whole value at `[n]`.
    Whole,
    /// Realize each Hadamard factor (one per parameter) and multiply totals.
    HadamardFactors,
    /// Like `HadamardFactors`, but a factor over the caps is split further
    /// along its product structure until every block fits.
    Blocks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub limits: Limits,
    pub validation: ValidationOptions,
    pub strategy: ExplicitStrategy,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            limits: Limits::default(),
            validation: ValidationOptions::default(),
            strategy: ExplicitStrategy::HadamardFactors,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationRow {
    pub n: usize,
    pub explicit: Rational,
    pub symbolic: Rational,
    pub analytic: Rational,
    pub pass: bool,
    /// Number of separately realized groupoids whose totals were multiplied.
    pub blocks: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overflow {
    pub n: usize,
    pub error: Error,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    /// One row per size that was completed, in increasing `n`.
    pub rows: Vec<VerificationRow>,
    /// Set when some size could not be materialized; later sizes are not attempted.
    pub overflow: Option<Overflow>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.overflow.is_none() && self.rows.iter().all(|r| r.pass)
    }

    pub fn first_failure(&self) -> Option<&VerificationRow> {
        self.rows.iter().find(|r| !r.pass)
    }
}

/// Explicit cardinalities of realized blocks, reusable across many checks.
/// Also keeps the per-parameter factor values, so repeated parameters share
/// subtrees.
#[derive(Debug, Default)]
pub struct ExplicitCache {
    /// Explicit total and the number of realized blocks it was assembled from.
    exprs: HashMap<GroupoidExpr, (Rational, usize)>,
    alt: HashMap<(u64, u64, usize), (Rational, usize)>,
    factors: HashMap<(Factor, u64, u64, usize), GroupoidExpr>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Factor {
    Upper,
    AltUpper,
    Lower,
}

impl ExplicitCache {
    /// Number of cached pieces, realized whole or assembled from factors.
    pub fn len(&self) -> usize {
        self.exprs.len() + self.alt.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn factor(&mut self, kind: Factor, p: u64, q: u64, n: usize) -> GroupoidExpr {
        self.factors
            .entry((kind, p, q, n))
            .or_insert_with(|| match kind {
                Factor::Upper => upper_value(p, q, n),
                Factor::AltUpper => alt_upper_value(p, q, n),
                Factor::Lower => lower_value(p, q, n),
            })
            .clone()
    }
}

#[derive(Debug, Clone)]
enum Piece {
    Expr(GroupoidExpr),
    /// The directly enumerated tuple groupoid for an upper parameter.
    Alt {
        a: u64,
        b: u64,
        n: usize,
    },
}

impl Piece {
    fn expr(&self) -> GroupoidExpr {
        match *self {
            Piece::Expr(ref e) => e.clone(),
            Piece::Alt { a, b, n } => alt_upper_value(a, b, n),
        }
    }

    fn fits(&self, limits: &Limits) -> bool {
        match *self {
            Piece::Expr(ref e) => limits.fits(&e.size()),
            Piece::Alt { a, b, n } => {
                let (objects, morphisms, compositions) = alt_pochhammer_size(a, b, n);
                objects <= limits.max_objects as u128
                    && morphisms <= limits.max_morphisms as u128
                    && compositions <= limits.max_compositions as u128
            }
        }
    }
}

struct Explicit<'a> {
    options: &'a VerifyOptions,
    cache: &'a mut ExplicitCache,
    blocks: usize,
}

impl Explicit<'_> {
    fn cached(&mut self, piece: &Piece) -> Option<Rational> {
        let hit = match *piece {
            Piece::Expr(ref e) => self.cache.exprs.get(e),
            Piece::Alt { a, b, n } => self.cache.alt.get(&(a, b, n)),
        };
        hit.map(|(total, blocks)| {
            self.blocks += blocks;
            total.clone()
        })
    }

    fn store(&mut self, piece: &Piece, total: &Rational, blocks: usize) {
        let entry = (total.clone(), blocks);
        match *piece {
            Piece::Expr(ref e) => self.cache.exprs.insert(e.clone(), entry),
            Piece::Alt { a, b, n } => self.cache.alt.insert((a, b, n), entry),
        };
    }

    /// Realizes `piece` whole.
    fn block(&mut self, piece: &Piece) -> Result<Rational> {
        if let Some(total) = self.cached(piece) {
            return Ok(total);
        }
        let options = self.options;
        let g = match *piece {
            Piece::Expr(ref e) => realize(e, &options.limits)?,
            Piece::Alt { a, b, n } => alt_pochhammer_groupoid(a, b, n, &options.limits)?,
        };
        let total = cardinality_explicit_with(&g, &options.validation)?.total;
        self.blocks += 1;
        self.store(piece, &total, 1);
        Ok(total)
    }

    /// Realizes `piece` whole if it fits, otherwise multiplies the totals of
    /// its product factors, recursively.
    fn split(&mut self, piece: &Piece) -> Result<Rational> {
        if let Some(total) = self.cached(piece) {
            return Ok(total);
        }
        if piece.fits(&self.options.limits) {
            return self.block(piece);
        }
        let e = piece.expr();
        match e.node() {
            Node::Product(children) => {
                let before = self.blocks;
                let mut acc = Rational::one();
                for c in children {
                    acc *= self.split(&Piece::Expr(c.clone()))?;
                }
                let blocks = self.blocks - before;
                self.store(piece, &acc, blocks);
                Ok(acc)
            }
            // cannot be split further; let realize report the overflow
            _ => self.block(&Piece::Expr(e)),
        }
    }

    fn total(&mut self, whole: &GroupoidExpr, pieces: &[Piece]) -> Result<Rational> {
        match self.options.strategy {
            ExplicitStrategy::Whole => self.block(&Piece::Expr(whole.clone())),
            ExplicitStrategy::HadamardFactors => {
                let mut acc = Rational::one();
                for p in pieces {
                    acc *= self.block(p)?;
                }
                Ok(acc)
            }
            ExplicitStrategy::Blocks => {
                let mut acc = Rational::one();
                for p in pieces {
                    acc *= self.split(p)?;
                }
                Ok(acc)
            }
        }
    }
}

fn run(
    order: usize,
    options: &VerifyOptions,
    cache: &mut ExplicitCache,
    mut size: impl FnMut(usize, &mut ExplicitCache) -> Result<(GroupoidExpr, Vec<Piece>, Rational)>,
) -> Result<VerificationReport> {
    let mut rows = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let attempt = size(n, cache).and_then(|(value, pieces, analytic)| {
            let mut explicit = Explicit {
                options,
                cache: &mut *cache,
                blocks: 0,
            };
            let total = explicit.total(&value, &pieces)?;
            let symbolic = value.cardinality();
            Ok(VerificationRow {
                n,
                pass: total == symbolic && symbolic == analytic,
                explicit: total,
                symbolic,
                analytic,
                blocks: explicit.blocks,
            })
        });
        match attempt {
            Ok(row) => rows.push(row),
            Err(error) if error.is_resource_limit() => {
                return Ok(VerificationReport {
                    rows,
                    overflow: Some(Overflow { n, error }),
                })
            }
            Err(error) => return Err(error),
        }
    }
    Ok(VerificationReport { rows, overflow: None })
}

/// Checks `|H(params)[n]| = prod (a_i/b_i)_n / prod (c_j/d_j)_n` for
/// `n = 0..=order`, comparing explicit enumeration, the symbolic cardinality
/// and the Pochhammer formula.
pub fn verify_theorem(
    params: &HyperParams,
    order: usize,
    interpretation: Interpretation,
    options: &VerifyOptions,
) -> Result<VerificationReport> {
    verify_theorem_cached(params, order, interpretation, options, &mut ExplicitCache::default())
}

/// As [`verify_theorem`], reusing realized blocks and factor values from
/// `cache`.
pub fn verify_theorem_cached(
    params: &HyperParams,
    order: usize,
    interpretation: Interpretation,
    options: &VerifyOptions,
    cache: &mut ExplicitCache,
) -> Result<VerificationReport> {
    params.check()?;
    run(order, options, cache, |n, cache| {
        let (value, pieces) = theorem_value(params, interpretation, n, cache);
        Ok((value, pieces, params.analytic(n)?))
    })
}

/// `species_h(params, interpretation)` at `[n]`, assembled from cached
/// factors, together with its Hadamard factors as blocks.
fn theorem_value(
    params: &HyperParams,
    interpretation: Interpretation,
    n: usize,
    cache: &mut ExplicitCache,
) -> (GroupoidExpr, Vec<Piece>) {
    let mut factors = Vec::with_capacity(params.upper.len() + params.lower.len());
    let mut pieces = Vec::with_capacity(factors.capacity());
    for &(a, b) in &params.upper {
        match interpretation {
            Interpretation::Product => {
                let f = cache.factor(Factor::Upper, a, b, n);
                pieces.push(Piece::Expr(f.clone()));
                factors.push(f);
            }
            Interpretation::Alternative => {
                factors.push(cache.factor(Factor::AltUpper, a, b, n));
                pieces.push(Piece::Alt { a, b, n });
            }
        }
    }
    for &(c, d) in &params.lower {
        let f = cache.factor(Factor::Lower, c, d, n);
        pieces.push(Piece::Expr(f.clone()));
        factors.push(f);
    }
    (GroupoidExpr::product(factors), pieces)
}

/// Checks an arbitrary species against `h(upper; lower)`. Factor strategies
/// split the value along its top-level product.
pub fn verify_species(
    species: &Species,
    upper: &[Rational],
    lower: &[Rational],
    order: usize,
    options: &VerifyOptions,
) -> Result<VerificationReport> {
    let mut cache = ExplicitCache::default();
    run(order, options, &mut cache, |n, _| {
        let value = species.value(n)?;
        let pieces = match value.node() {
            Node::Product(children) => children.iter().cloned().map(Piece::Expr).collect(),
            _ => vec![Piece::Expr(value.clone())],
        };
        Ok((value, pieces, hyper_coefficient(upper, lower, n)?))
    })
}
