use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::{integer, Rational};

/// Symbolic finite groupoid built from discrete sets and cyclic-group
/// groupoids with disjoint union and cartesian product.
///
/// Cloning is cheap; subtrees are shared. Cardinality, size and a
/// structural hash are computed once, when a node is built.
#[derive(Clone)]
pub struct GroupoidExpr(Arc<Inner>);

struct Inner {
    node: Node,
    cardinality: Rational,
    size: Size,
    hash: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Empty,
    Unit,
    /// `count` objects, identities only. The tag prefixes realized labels.
    Discrete {
        count: u64,
        tag: Arc<str>,
    },
    /// One object whose automorphism group is `Z/m`.
    Cyclic(u64),
    Union(Vec<GroupoidExpr>),
    Product(Vec<GroupoidExpr>),
}

/// Predicted counts for the realized groupoid. Saturates at `u128::MAX`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Size {
    pub objects: u128,
    pub morphisms: u128,
    /// Composable pairs, i.e. entries of the composition table.
    pub compositions: u128,
    /// Composable triples, the work of an exhaustive associativity check.
    pub triples: u128,
}

impl Size {
    pub const ZERO: Size = Size {
        objects: 0,
        morphisms: 0,
        compositions: 0,
        triples: 0,
    };
    pub const ONE: Size = Size {
        objects: 1,
        morphisms: 1,
        compositions: 1,
        triples: 1,
    };

    pub fn plus(self, other: Size) -> Size {
        Size {
            objects: self.objects.saturating_add(other.objects),
            morphisms: self.morphisms.saturating_add(other.morphisms),
            compositions: self.compositions.saturating_add(other.compositions),
            triples: self.triples.saturating_add(other.triples),
        }
    }

    pub fn times(self, other: Size) -> Size {
        Size {
            objects: self.objects.saturating_mul(other.objects),
            morphisms: self.morphisms.saturating_mul(other.morphisms),
            compositions: self.compositions.saturating_mul(other.compositions),
            triples: self.triples.saturating_mul(other.triples),
        }
    }
}

impl GroupoidExpr {
    fn build(node: Node) -> Self {
        let cardinality = match &node {
            Node::Empty => Rational::zero(),
            Node::Unit => Rational::one(),
            Node::Discrete { count, .. } => integer(*count),
            Node::Cyclic(m) => Rational::new(1.into(), (*m).into()),
            Node::Union(children) => children.iter().fold(Rational::zero(), |acc, c| acc + &c.0.cardinality),
            Node::Product(children) => {
                let mut acc = Rational::one();
                for c in children {
                    if acc.is_zero() {
                        break;
                    }
                    acc *= &c.0.cardinality;
                }
                acc
            }
        };
        let size = match &node {
            Node::Empty => Size::ZERO,
            Node::Unit => Size::ONE,
            Node::Discrete { count, .. } => {
                let n = *count as u128;
                Size {
                    objects: n,
                    morphisms: n,
                    compositions: n,
                    triples: n,
                }
            }
            Node::Cyclic(m) => {
                let m = *m as u128;
                Size {
                    objects: 1,
                    morphisms: m,
                    compositions: m.saturating_mul(m),
                    triples: m.saturating_mul(m).saturating_mul(m),
                }
            }
            Node::Union(children) => children.iter().fold(Size::ZERO, |acc, c| acc.plus(c.0.size)),
            Node::Product(children) => children.iter().fold(Size::ONE, |acc, c| acc.times(c.0.size)),
        };
        let mut h = DefaultHasher::new();
        match &node {
            Node::Empty => 0u8.hash(&mut h),
            Node::Unit => 1u8.hash(&mut h),
            Node::Discrete { count, tag } => (2u8, count, tag).hash(&mut h),
            Node::Cyclic(m) => (3u8, m).hash(&mut h),
            Node::Union(c) | Node::Product(c) => {
                (if matches!(node, Node::Union(_)) { 4u8 } else { 5u8 }).hash(&mut h);
                c.len().hash(&mut h);
                for child in c {
                    child.0.hash.hash(&mut h);
                }
            }
        }
        Self(Arc::new(Inner {
            node,
            cardinality,
            size,
            hash: h.finish(),
        }))
    }

    pub fn empty() -> Self {
        Self::build(Node::Empty)
    }

    pub fn unit() -> Self {
        Self::build(Node::Unit)
    }

    pub fn discrete(count: u64) -> Self {
        Self::tagged(count, "")
    }

    pub fn tagged(count: u64, tag: impl Into<Arc<str>>) -> Self {
        Self::build(Node::Discrete { count, tag: tag.into() })
    }

    /// # Panics
    /// If `order` is zero; use [`GroupoidExpr::try_cyclic`] for untrusted input.
    pub fn cyclic(order: u64) -> Self {
        Self::try_cyclic(order).expect("cyclic group order must be positive")
    }

    pub fn try_cyclic(order: u64) -> Option<Self> {
        (order >= 1).then(|| Self::build(Node::Cyclic(order)))
    }

    pub fn union(children: Vec<GroupoidExpr>) -> Self {
        Self::build(Node::Union(children))
    }

    pub fn product(children: Vec<GroupoidExpr>) -> Self {
        Self::build(Node::Product(children))
    }

    /// `n`-fold product of copies of `self`.
    pub fn power(&self, n: usize) -> Self {
        Self::product(vec![self.clone(); n])
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn children(&self) -> &[GroupoidExpr] {
        match self.node() {
            Node::Union(c) | Node::Product(c) => c,
            _ => &[],
        }
    }

    /// Sum over isomorphism classes of `1 / |Aut|`, computed from the tree
    /// without materializing anything.
    pub fn cardinality(&self) -> Rational {
        self.0.cardinality.clone()
    }

    pub fn size(&self) -> Size {
        self.0.size
    }

    /// True when the groupoid has no objects.
    pub fn is_empty_groupoid(&self) -> bool {
        self.size().objects == 0
    }

    pub fn node_count(&self) -> usize {
        1 + self.children().iter().map(GroupoidExpr::node_count).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(GroupoidExpr::depth).max().unwrap_or(0)
    }
}

pub fn disjoint_union(g: &GroupoidExpr, h: &GroupoidExpr) -> GroupoidExpr {
    GroupoidExpr::union(vec![g.clone(), h.clone()])
}

pub fn product(g: &GroupoidExpr, h: &GroupoidExpr) -> GroupoidExpr {
    GroupoidExpr::product(vec![g.clone(), h.clone()])
}

pub fn cardinality_expr(e: &GroupoidExpr) -> Rational {
    e.cardinality()
}

impl PartialEq for GroupoidExpr {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.hash == other.0.hash && self.0.node == other.0.node)
    }
}

impl Eq for GroupoidExpr {}

impl Hash for GroupoidExpr {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash.hash(state);
    }
}

impl fmt::Display for GroupoidExpr {
    /// Renders the textual syntax accepted by [`crate::parse::parse_groupoid`].
    /// Discrete tags are not part of the syntax and are dropped.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, head: &str, children: &[GroupoidExpr]| {
            write!(f, "{head}(")?;
            for (i, c) in children.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str(")")
        };
        match self.node() {
            Node::Empty => f.write_str("empty"),
            Node::Unit => f.write_str("unit"),
            Node::Discrete { count, .. } => write!(f, "discrete({count})"),
            Node::Cyclic(m) => write!(f, "cyclic({m})"),
            Node::Union(c) => list(f, "u", c),
            Node::Product(c) => list(f, "x", c),
        }
    }
}

impl fmt::Debug for GroupoidExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self.node(), f)
    }
}
