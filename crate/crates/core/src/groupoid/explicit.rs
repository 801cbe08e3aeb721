use rustc_hash::FxHashMap;
use std::fmt;
use std::sync::Arc;

use super::expr::{GroupoidExpr, Node, Size};
use crate::error::{Error, Resource, Result};

pub type ObjectId = u32;
pub type MorphismId = u32;

/// Structured object label mirroring the expression a groupoid was realized from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// The single object of `unit` or `cyclic(m)`.
    Point,
    /// Element `index` (1-based) of a discrete set.
    Elem {
        tag: Arc<str>,
        index: u64,
    },
    /// Injection into the `usize`-th summand of a disjoint union.
    Inj(usize, Box<Label>),
    Tuple(Vec<Label>),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Point => f.write_str("*"),
            Label::Elem { tag, index } if tag.is_empty() => write!(f, "{index}"),
            Label::Elem { tag, index } => write!(f, "{tag}:{index}"),
            Label::Inj(i, inner) => write!(f, "in{i}({inner})"),
            Label::Tuple(items) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub source: ObjectId,
    pub target: ObjectId,
}

/// Fully materialized finite groupoid.
///
pub type CompositionTable = FxHashMap<(MorphismId, MorphismId), MorphismId>;

/// Composition is diagrammatic: `compose[(f, g)]` is "`f` then `g`" and is
/// defined exactly when `target(f) == source(g)`. Fields are public so that
/// hand-built and deliberately broken groupoids can be checked by
/// [`super::validate`]; nothing here assumes validity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitGroupoid {
    pub objects: Vec<Label>,
    pub morphisms: Vec<Morphism>,
    pub identity: Vec<MorphismId>,
    pub inverse: Vec<Option<MorphismId>>,
    pub compose: CompositionTable,
}

impl ExplicitGroupoid {
    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn composite(&self, first: MorphismId, second: MorphismId) -> Option<MorphismId> {
        self.compose.get(&(first, second)).copied()
    }

    /// Groupoid whose objects carry the given labels, with automorphism group
    /// `Z/m1 x ... x Z/mr` at an object with cyclic orders `[m1, ..., mr]`
    /// and no morphisms between distinct objects.
    pub fn from_automorphism_groups(objects: Vec<(Label, Vec<u64>)>, limits: &Limits) -> Result<Self> {
        let mut size = Size {
            objects: 0,
            morphisms: 0,
            compositions: 0,
            triples: 0,
        };
        for (_, orders) in &objects {
            let m: u128 = orders.iter().fold(1u128, |acc, &o| acc.saturating_mul(o as u128));
            size.objects += 1;
            size.morphisms = size.morphisms.saturating_add(m);
            size.compositions = size.compositions.saturating_add(m.saturating_mul(m));
        }
        limits.check(&size)?;
        let mut built = Built::default();
        let mut labels = Vec::with_capacity(objects.len());
        for (label, orders) in objects {
            let group = orders
                .iter()
                .map(|&m| Built::cyclic(m))
                .fold(Built::unit(), |acc, c| acc.times(&c));
            built.append(group);
            labels.push(label);
        }
        built.labels = labels;
        Ok(built.finish())
    }
}

/// Caps checked against predicted sizes before anything is allocated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_objects: u64,
    pub max_morphisms: u64,
    pub max_compositions: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_objects: 200_000,
            max_morphisms: 2_000_000,
            max_compositions: 4_000_000,
        }
    }
}

impl Limits {
    pub fn check(&self, size: &Size) -> Result<()> {
        let checks = [
            (Resource::Objects, size.objects, self.max_objects),
            (Resource::Morphisms, size.morphisms, self.max_morphisms),
            (Resource::Compositions, size.compositions, self.max_compositions),
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
        Ok(())
    }

    pub fn fits(&self, size: &Size) -> bool {
        self.check(size).is_ok()
    }
}

/// Materializes `e`. Fails with `ResourceLimitExceeded` before allocating if
/// the predicted size exceeds `limits`.
pub fn realize(e: &GroupoidExpr, limits: &Limits) -> Result<ExplicitGroupoid> {
    limits.check(&e.size())?;
    Ok(build(e).finish())
}

#[derive(Debug, Default)]
struct Built {
    labels: Vec<Label>,
    morphisms: Vec<Morphism>,
    identity: Vec<MorphismId>,
    inverse: Vec<MorphismId>,
    compose: Vec<(MorphismId, MorphismId, MorphismId)>,
}

impl Built {
    fn unit() -> Self {
        Self::cyclic(1)
    }

    fn cyclic(m: u64) -> Self {
        let m = m as u32;
        Built {
            labels: vec![Label::Point],
            morphisms: vec![Morphism { source: 0, target: 0 }; m as usize],
            identity: vec![0],
            inverse: (0..m).map(|k| (m - k) % m).collect(),
            compose: (0..m).flat_map(|i| (0..m).map(move |j| (i, j, (i + j) % m))).collect(),
        }
    }

    fn discrete(count: u64, tag: &Arc<str>) -> Self {
        let n = count as u32;
        Built {
            labels: (1..=count)
                .map(|index| Label::Elem {
                    tag: tag.clone(),
                    index,
                })
                .collect(),
            morphisms: (0..n).map(|x| Morphism { source: x, target: x }).collect(),
            identity: (0..n).collect(),
            inverse: (0..n).collect(),
            compose: (0..n).map(|x| (x, x, x)).collect(),
        }
    }

    fn append(&mut self, other: Built) {
        let ob = self.identity.len() as u32;
        let mo = self.morphisms.len() as u32;
        self.morphisms.extend(other.morphisms.iter().map(|m| Morphism {
            source: m.source + ob,
            target: m.target + ob,
        }));
        self.identity.extend(other.identity.iter().map(|i| i + mo));
        self.inverse.extend(other.inverse.iter().map(|i| i + mo));
        self.compose
            .extend(other.compose.iter().map(|&(f, g, h)| (f + mo, g + mo, h + mo)));
        self.labels.extend(other.labels);
    }

    /// Structural product; labels are left empty for the caller to fill.
    fn times(&self, other: &Built) -> Built {
        let ob = other.identity.len() as u32;
        let mb = other.morphisms.len() as u32;
        let mut morphisms = Vec::with_capacity(self.morphisms.len() * other.morphisms.len());
        for f in &self.morphisms {
            for g in &other.morphisms {
                morphisms.push(Morphism {
                    source: f.source * ob + g.source,
                    target: f.target * ob + g.target,
                });
            }
        }
        let identity = self
            .identity
            .iter()
            .flat_map(|&a| other.identity.iter().map(move |&b| a * mb + b))
            .collect();
        let inverse = self
            .inverse
            .iter()
            .flat_map(|&a| other.inverse.iter().map(move |&b| a * mb + b))
            .collect();
        let mut compose = Vec::with_capacity(self.compose.len() * other.compose.len());
        for &(f1, f2, f3) in &self.compose {
            for &(g1, g2, g3) in &other.compose {
                compose.push((f1 * mb + g1, f2 * mb + g2, f3 * mb + g3));
            }
        }
        Built {
            labels: Vec::new(),
            morphisms,
            identity,
            inverse,
            compose,
        }
    }

    fn finish(self) -> ExplicitGroupoid {
        ExplicitGroupoid {
            objects: self.labels,
            morphisms: self.morphisms,
            identity: self.identity,
            inverse: self.inverse.into_iter().map(Some).collect(),
            compose: self.compose.into_iter().map(|(f, g, h)| ((f, g), h)).collect(),
        }
    }
}

fn build(e: &GroupoidExpr) -> Built {
    match e.node() {
        Node::Empty => Built::default(),
        Node::Unit => Built::unit(),
        Node::Discrete { count, tag } => Built::discrete(*count, tag),
        Node::Cyclic(m) => Built::cyclic(*m),
        Node::Union(children) => {
            let mut acc = Built::default();
            for (i, child) in children.iter().enumerate() {
                let mut part = build(child);
                part.labels = part.labels.into_iter().map(|l| Label::Inj(i, Box::new(l))).collect();
                acc.append(part);
            }
            acc
        }
        // an empty factor makes the others irrelevant, however large
        Node::Product(_) if e.is_empty_groupoid() => Built::default(),
        Node::Product(children) => {
            let parts: Vec<Built> = children.iter().map(build).collect();
            let mut acc = parts.iter().fold(Built::unit(), |acc, p| acc.times(p));
            // object ids are mixed-radix in the child object ids
            let radices: Vec<usize> = parts.iter().map(|p| p.labels.len()).collect();
            let total = acc.identity.len();
            acc.labels = (0..total)
                .map(|mut id| {
                    let mut digits = vec![0; radices.len()];
                    for (slot, &r) in radices.iter().enumerate().rev() {
                        digits[slot] = id % r;
                        id /= r;
                    }
                    Label::Tuple(digits.iter().zip(&parts).map(|(&d, p)| p.labels[d].clone()).collect())
                })
                .collect();
            acc
        }
    }
}
