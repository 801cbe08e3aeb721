//! Groupoid-valued species, evaluated on the canonical sets `[n]`.
//!
//! Subsets and partition blocks are transported to `[|block|]` by the
//! order-preserving bijection, so a species is fully described by its values
//! `n -> GroupoidExpr`. The action on bijections is not represented.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Resource, Result};
use crate::groupoid::GroupoidExpr;
use crate::series::EgfSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// Empty at every size.
    Zero,
    /// `unit` at size 0 only; generating series `1`.
    One,
    /// `unit` at size 1 only; generating series `x`.
    Singleton,
    /// `unit` at every size; generating series `e^x`.
    Sets,
    /// One object with automorphism group `Z/n` at size `n >= 1`.
    Z,
}

impl Builtin {
    pub const ALL: [Builtin; 5] = [
        Builtin::Zero,
        Builtin::One,
        Builtin::Singleton,
        Builtin::Sets,
        Builtin::Z,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Zero => "zero",
            Builtin::One => "one",
            Builtin::Singleton => "singleton",
            Builtin::Sets => "sets",
            Builtin::Z => "Z",
        }
    }

    fn value(self, n: usize) -> GroupoidExpr {
        match (self, n) {
            (Builtin::One, 0) | (Builtin::Singleton, 1) | (Builtin::Sets, _) => GroupoidExpr::unit(),
            (Builtin::Z, n) if n >= 1 => GroupoidExpr::cyclic(n as u64),
            _ => GroupoidExpr::empty(),
        }
    }
}

/// Largest sizes at which `prod` and `comp` agree to expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpansionLimits {
    /// `prod` has `2^n` summands.
    pub max_prod_size: usize,
    /// `comp` has `Bell(n)` summands.
    pub max_compose_size: usize,
}

impl Default for ExpansionLimits {
    fn default() -> Self {
        Self {
            max_prod_size: 20,
            max_compose_size: 12,
        }
    }
}

pub type Rule = Arc<dyn Fn(usize) -> GroupoidExpr + Send + Sync>;

#[derive(Clone)]
pub enum Kind {
    Builtin(Builtin),
    Custom { name: String, rule: Rule },
    Sum(Species, Species),
    Hadamard(Species, Species),
    Prod(Species, Species, ExpansionLimits),
    Compose(Species, Species, ExpansionLimits),
}

/// Cheap to clone; clones share the memo table.
#[derive(Clone)]
pub struct Species(Arc<Inner>);

struct Inner {
    kind: Kind,
    memo: RwLock<HashMap<usize, GroupoidExpr>>,
}

impl Species {
    fn from_kind(kind: Kind) -> Self {
        Self(Arc::new(Inner {
            kind,
            memo: RwLock::new(HashMap::new()),
        }))
    }

    pub fn builtin(b: Builtin) -> Self {
        Self::from_kind(Kind::Builtin(b))
    }

    pub fn custom(name: impl Into<String>, rule: impl Fn(usize) -> GroupoidExpr + Send + Sync + 'static) -> Self {
        Self::from_kind(Kind::Custom {
            name: name.into(),
            rule: Arc::new(rule),
        })
    }

    pub fn sum(f: &Species, g: &Species) -> Self {
        Self::from_kind(Kind::Sum(f.clone(), g.clone()))
    }

    pub fn hadamard(f: &Species, g: &Species) -> Self {
        Self::from_kind(Kind::Hadamard(f.clone(), g.clone()))
    }

    pub fn prod(f: &Species, g: &Species) -> Self {
        Self::prod_with(f, g, ExpansionLimits::default())
    }

    pub fn prod_with(f: &Species, g: &Species, limits: ExpansionLimits) -> Self {
        Self::from_kind(Kind::Prod(f.clone(), g.clone(), limits))
    }

    /// `f` substituted into `g`'s blocks. `g` must be empty on the empty set.
    pub fn compose(f: &Species, g: &Species) -> Result<Self> {
        Self::compose_with(f, g, ExpansionLimits::default())
    }

    pub fn compose_with(f: &Species, g: &Species, limits: ExpansionLimits) -> Result<Self> {
        if !g.value(0)?.is_empty_groupoid() {
            return Err(Error::CompositionRequiresZeroFree);
        }
        Ok(Self::from_kind(Kind::Compose(f.clone(), g.clone(), limits)))
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    /// The groupoid assigned to `[n]`. Memoized; concurrent callers may both
    /// compute a value, and the first stored one wins.
    pub fn value(&self, n: usize) -> Result<GroupoidExpr> {
        if let Some(v) = self.0.memo.read().expect("memo lock poisoned").get(&n) {
            return Ok(v.clone());
        }
        let v = self.compute(n)?;
        let mut memo = self.0.memo.write().expect("memo lock poisoned");
        Ok(memo.entry(n).or_insert(v).clone())
    }

    fn compute(&self, n: usize) -> Result<GroupoidExpr> {
        Ok(match &self.0.kind {
            Kind::Builtin(b) => b.value(n),
            Kind::Custom { rule, .. } => rule(n),
            Kind::Sum(f, g) => GroupoidExpr::union(vec![f.value(n)?, g.value(n)?]),
            Kind::Hadamard(f, g) => GroupoidExpr::product(vec![f.value(n)?, g.value(n)?]),
            Kind::Prod(f, g, limits) => prod_value(f, g, n, limits)?,
            Kind::Compose(f, g, limits) => compose_value(f, g, n, limits)?,
        })
    }

    /// Generating series `sum |F[n]| x^n / n!` up to `order`.
    pub fn valuation(&self, order: usize) -> Result<EgfSeries> {
        // fail before expanding anything: every node is asked for size `order`
        self.check_expansion(order)?;
        let coeffs = (0..=order)
            .map(|n| self.value(n).map(|e| e.cardinality()))
            .collect::<Result<Vec<_>>>()?;
        Ok(EgfSeries::new(coeffs))
    }
}

impl Species {
    fn check_expansion(&self, n: usize) -> Result<()> {
        match self.kind() {
            Kind::Builtin(_) | Kind::Custom { .. } => Ok(()),
            Kind::Sum(f, g) | Kind::Hadamard(f, g) => {
                f.check_expansion(n)?;
                g.check_expansion(n)
            }
            Kind::Prod(f, g, limits) => {
                if n > limits.max_prod_size {
                    return Err(prod_limit(n, limits));
                }
                f.check_expansion(n)?;
                g.check_expansion(n)
            }
            Kind::Compose(f, g, limits) => {
                if n > limits.max_compose_size {
                    return Err(compose_limit(n, limits));
                }
                f.check_expansion(n)?;
                g.check_expansion(n)
            }
        }
    }
}

fn prod_limit(n: usize, limits: &ExpansionLimits) -> Error {
    Error::ResourceLimitExceeded {
        resource: Resource::Summands,
        predicted: 1u128.checked_shl(n as u32).unwrap_or(u128::MAX),
        limit: 1u128 << limits.max_prod_size,
    }
}

fn compose_limit(n: usize, limits: &ExpansionLimits) -> Error {
    Error::ResourceLimitExceeded {
        resource: Resource::Summands,
        predicted: bell(n),
        limit: bell(limits.max_compose_size),
    }
}

pub fn builtin_species(name: &str) -> Result<Species> {
    Builtin::ALL
        .iter()
        .find(|b| b.name() == name)
        .map(|&b| Species::builtin(b))
        .ok_or_else(|| Error::UnknownBuiltin(name.to_string()))
}

pub fn species_value(f: &Species, n: usize) -> Result<GroupoidExpr> {
    f.value(n)
}

pub fn valuation(f: &Species, order: usize) -> Result<EgfSeries> {
    f.valuation(order)
}

fn subset_tag(mask: u64, n: usize) -> String {
    let items: Vec<String> = (0..n)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", items.join(","))
}

/// Disjoint union over subsets `S` of `[n]` of `F[|S|] x G[n - |S|]`, in
/// increasing bitmask order, each summand marked by a one-object tag.
fn prod_value(f: &Species, g: &Species, n: usize, limits: &ExpansionLimits) -> Result<GroupoidExpr> {
    if n > limits.max_prod_size {
        return Err(prod_limit(n, limits));
    }
    let left: Vec<GroupoidExpr> = (0..=n).map(|k| f.value(k)).collect::<Result<_>>()?;
    let right: Vec<GroupoidExpr> = (0..=n).map(|k| g.value(k)).collect::<Result<_>>()?;
    let summands = (0..1u64 << n)
        .map(|mask| {
            let k = mask.count_ones() as usize;
            GroupoidExpr::product(vec![
                GroupoidExpr::tagged(1, subset_tag(mask, n)),
                left[k].clone(),
                right[n - k].clone(),
            ])
        })
        .collect();
    Ok(GroupoidExpr::union(summands))
}

pub fn bell(n: usize) -> u128 {
    // Bell triangle
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for x in &row {
            let v = next.last().unwrap().saturating_add(*x);
            next.push(v);
        }
        row = next;
    }
    row[0]
}

/// Visits every set partition of `[n]` as a restricted growth string, in
/// lexicographic order.
pub fn for_each_set_partition(n: usize, mut visit: impl FnMut(&[usize])) {
    if n == 0 {
        visit(&[]);
        return;
    }
    let mut rgs = vec![0usize; n];
    // prefix_max[i] = max(rgs[0..=i])
    let mut prefix_max = vec![0usize; n];
    loop {
        visit(&rgs);
        // rightmost position that can still grow
        let mut i = n - 1;
        loop {
            if i == 0 {
                return;
            }
            if rgs[i] <= prefix_max[i - 1] {
                break;
            }
            i -= 1;
        }
        rgs[i] += 1;
        prefix_max[i] = prefix_max[i - 1].max(rgs[i]);
        for j in i + 1..n {
            rgs[j] = 0;
            prefix_max[j] = prefix_max[i];
        }
    }
}

fn partition_tag(rgs: &[usize]) -> String {
    let blocks = rgs.iter().copied().max().map_or(0, |m| m + 1);
    let mut out = String::new();
    for b in 0..blocks {
        let members: Vec<String> = rgs
            .iter()
            .enumerate()
            .filter(|(_, &x)| x == b)
            .map(|(i, _)| (i + 1).to_string())
            .collect();
        out.push('{');
        out.push_str(&members.join(","));
        out.push('}');
    }
    out
}

/// Disjoint union over set partitions `p` of `[n]` of
/// `F[|p|] x prod_{b in p} G[|b|]`.
fn compose_value(f: &Species, g: &Species, n: usize, limits: &ExpansionLimits) -> Result<GroupoidExpr> {
    if n > limits.max_compose_size {
        return Err(compose_limit(n, limits));
    }
    let outer: Vec<GroupoidExpr> = (0..=n).map(|k| f.value(k)).collect::<Result<_>>()?;
    let inner: Vec<GroupoidExpr> = (0..=n).map(|k| g.value(k)).collect::<Result<_>>()?;
    let mut summands = Vec::new();
    for_each_set_partition(n, |rgs| {
        let blocks = rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut sizes = vec![0usize; blocks];
        for &b in rgs {
            sizes[b] += 1;
        }
        let mut factors = Vec::with_capacity(blocks + 2);
        factors.push(GroupoidExpr::tagged(1, partition_tag(rgs)));
        factors.push(outer[blocks].clone());
        factors.extend(sizes.iter().map(|&s| inner[s].clone()));
        summands.push(GroupoidExpr::product(factors));
    });
    Ok(GroupoidExpr::union(summands))
}

impl fmt::Display for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            Kind::Builtin(b) => f.write_str(b.name()),
            Kind::Custom { name, .. } => f.write_str(name),
            Kind::Sum(a, b) => write!(f, "sum({a},{b})"),
            Kind::Hadamard(a, b) => write!(f, "had({a},{b})"),
            Kind::Prod(a, b, _) => write!(f, "prod({a},{b})"),
            Kind::Compose(a, b, _) => write!(f, "comp({a},{b})"),
        }
    }
}

impl fmt::Debug for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Species({self})")
    }
}
