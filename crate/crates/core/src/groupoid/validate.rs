use std::fmt;

use rustc_hash::FxHashMap;

use super::explicit::{ExplicitGroupoid, MorphismId, ObjectId};
use super::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MorphismEndpointOutOfRange {
        morphism: MorphismId,
    },
    MissingIdentity {
        object: ObjectId,
    },
    IdentityNotLoop {
        object: ObjectId,
        morphism: MorphismId,
    },
    LeftIdentityLaw {
        morphism: MorphismId,
    },
    RightIdentityLaw {
        morphism: MorphismId,
    },
    MissingInverse {
        morphism: MorphismId,
    },
    InverseEndpoints {
        morphism: MorphismId,
        inverse: MorphismId,
    },
    InverseLaw {
        morphism: MorphismId,
        inverse: MorphismId,
    },
    MissingComposite {
        first: MorphismId,
        second: MorphismId,
    },
    ComposedNonComposable {
        first: MorphismId,
        second: MorphismId,
    },
    CompositeEndpoints {
        first: MorphismId,
        second: MorphismId,
        result: MorphismId,
    },
    /// `first ; second` and `first ; other` agree although `second != other`
    /// (or the mirrored condition on the right).
    NotCancellative {
        fixed: MorphismId,
        a: MorphismId,
        b: MorphismId,
    },
    Associativity {
        f: MorphismId,
        g: MorphismId,
        h: MorphismId,
    },
    HomSizeMismatch {
        x: ObjectId,
        y: ObjectId,
        hom: usize,
        endo: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssociativityCoverage {
    Exhaustive {
        triples: u64,
    },
    /// Deterministic pseudo-random sample of composable triples.
    Sampled {
        checked: u64,
        total: u64,
    },
    /// Structural checks failed first, so associativity was not attempted.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub associativity: AssociativityCoverage,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationOptions {
    /// Composable triples checked exhaustively up to this many; beyond it a
    /// sample of this size is checked instead.
    pub associativity_budget: u64,
}

impl ValidationOptions {
    pub const EXHAUSTIVE: ValidationOptions = ValidationOptions {
        associativity_budget: u64::MAX,
    };
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self {
            associativity_budget: 1 << 20,
        }
    }
}

/// Checks every groupoid axiom exhaustively.
pub fn validate(g: &ExplicitGroupoid) -> ValidationReport {
    validate_with(g, &ValidationOptions::EXHAUSTIVE)
}

pub fn validate_with(g: &ExplicitGroupoid, options: &ValidationOptions) -> ValidationReport {
    let mut v = Vec::new();
    let n_obj = g.objects.len();
    let n_mor = g.morphisms.len() as u32;

    for (id, m) in g.morphisms.iter().enumerate() {
        if m.source as usize >= n_obj || m.target as usize >= n_obj {
            v.push(Violation::MorphismEndpointOutOfRange { morphism: id as u32 });
        }
    }
    if !v.is_empty() || g.identity.len() != n_obj || g.inverse.len() != g.morphisms.len() {
        // Tables are not even shaped like a groupoid; report what we can.
        for object in g.identity.len()..n_obj {
            v.push(Violation::MissingIdentity { object: object as u32 });
        }
        for morphism in g.inverse.len()..g.morphisms.len() {
            v.push(Violation::MissingInverse {
                morphism: morphism as u32,
            });
        }
        return ValidationReport {
            violations: v,
            associativity: AssociativityCoverage::Skipped,
        };
    }
    let src = |f: MorphismId| g.morphisms[f as usize].source;
    let tgt = |f: MorphismId| g.morphisms[f as usize].target;
    let valid_id = |f: MorphismId| f < n_mor;

    // morphisms leaving each object
    let mut outgoing: Vec<Vec<MorphismId>> = vec![Vec::new(); n_obj];
    for (id, m) in g.morphisms.iter().enumerate() {
        outgoing[m.source as usize].push(id as u32);
    }

    // composition table domain and endpoints
    for (&(f, h), &r) in &g.compose {
        if !valid_id(f) || !valid_id(h) || tgt(f) != src(h) {
            v.push(Violation::ComposedNonComposable { first: f, second: h });
        } else if !valid_id(r) || src(r) != src(f) || tgt(r) != tgt(h) {
            v.push(Violation::CompositeEndpoints {
                first: f,
                second: h,
                result: r,
            });
        }
    }
    // every composable pair has a composite, and f ; - is injective
    let mut stamp = vec![u32::MAX; n_mor as usize];
    for f in 0..n_mor {
        for &h in &outgoing[tgt(f) as usize] {
            match g.compose.get(&(f, h)) {
                None => v.push(Violation::MissingComposite { first: f, second: h }),
                Some(&r) if valid_id(r) => {
                    if stamp[r as usize] == f {
                        v.push(Violation::NotCancellative {
                            fixed: f,
                            a: first_with(g, f, r, &outgoing[tgt(f) as usize]),
                            b: h,
                        });
                    }
                    stamp[r as usize] = f;
                }
                Some(_) => {}
            }
        }
    }
    // - ; h is injective
    let mut incoming: Vec<Vec<MorphismId>> = vec![Vec::new(); n_obj];
    for (id, m) in g.morphisms.iter().enumerate() {
        incoming[m.target as usize].push(id as u32);
    }
    stamp.fill(u32::MAX);
    for h in 0..n_mor {
        for &f in &incoming[src(h) as usize] {
            if let Some(&r) = g.compose.get(&(f, h)) {
                if valid_id(r) {
                    if stamp[r as usize] == h {
                        let a = incoming[src(h) as usize]
                            .iter()
                            .copied()
                            .find(|&e| g.compose.get(&(e, h)) == Some(&r))
                            .unwrap_or(f);
                        v.push(Violation::NotCancellative { fixed: h, a, b: f });
                    }
                    stamp[r as usize] = h;
                }
            }
        }
    }
    drop(incoming);
    drop(stamp);

    // identities
    for (object, &e) in g.identity.iter().enumerate() {
        let object = object as u32;
        if !valid_id(e) {
            v.push(Violation::MissingIdentity { object });
            continue;
        }
        if src(e) != object || tgt(e) != object {
            v.push(Violation::IdentityNotLoop { object, morphism: e });
        }
    }
    for f in 0..n_mor {
        let left = g.identity[src(f) as usize];
        let right = g.identity[tgt(f) as usize];
        if g.composite(left, f) != Some(f) {
            v.push(Violation::LeftIdentityLaw { morphism: f });
        }
        if g.composite(f, right) != Some(f) {
            v.push(Violation::RightIdentityLaw { morphism: f });
        }
    }

    // inverses
    for f in 0..n_mor {
        match g.inverse[f as usize] {
            None => v.push(Violation::MissingInverse { morphism: f }),
            Some(i) if !valid_id(i) || src(i) != tgt(f) || tgt(i) != src(f) => v.push(Violation::InverseEndpoints {
                morphism: f,
                inverse: i,
            }),
            Some(i) => {
                let ok = g.composite(f, i) == Some(g.identity[src(f) as usize])
                    && g.composite(i, f) == Some(g.identity[tgt(f) as usize]);
                if !ok {
                    v.push(Violation::InverseLaw {
                        morphism: f,
                        inverse: i,
                    });
                }
            }
        }
    }

    // hom-set sizes within each connected component
    let mut hom: FxHashMap<(ObjectId, ObjectId), usize> = FxHashMap::default();
    let mut uf = UnionFind::new(n_obj);
    for m in &g.morphisms {
        *hom.entry((m.source, m.target)).or_default() += 1;
        uf.union(m.source, m.target);
    }
    let (class, count) = uf.classes();
    let mut members: Vec<Vec<ObjectId>> = vec![Vec::new(); count];
    for (x, &c) in class.iter().enumerate() {
        members[c as usize].push(x as u32);
    }
    for component in &members {
        for &x in component {
            let endo = hom.get(&(x, x)).copied().unwrap_or(0);
            for &y in component {
                let h = hom.get(&(x, y)).copied().unwrap_or(0);
                if h != endo {
                    v.push(Violation::HomSizeMismatch { x, y, hom: h, endo });
                }
            }
        }
    }

    let associativity = if v.is_empty() {
        check_associativity(g, &outgoing, options, &mut v)
    } else {
        AssociativityCoverage::Skipped
    };
    ValidationReport {
        violations: v,
        associativity,
    }
}

/// First `h` in `candidates` with `f ; h = r`.
fn first_with(g: &ExplicitGroupoid, f: MorphismId, r: MorphismId, candidates: &[MorphismId]) -> MorphismId {
    candidates
        .iter()
        .copied()
        .find(|&h| g.compose.get(&(f, h)) == Some(&r))
        .unwrap_or(f)
}

fn check_associativity(
    g: &ExplicitGroupoid,
    outgoing: &[Vec<MorphismId>],
    options: &ValidationOptions,
    v: &mut Vec<Violation>,
) -> AssociativityCoverage {
    let tgt = |f: MorphismId| g.morphisms[f as usize].target as usize;
    let comp = |a: MorphismId, b: MorphismId| g.compose[&(a, b)];
    let total: u64 = (0..g.morphisms.len() as u32)
        .map(|f| {
            outgoing[tgt(f)]
                .iter()
                .map(|&h| outgoing[tgt(h)].len() as u64)
                .sum::<u64>()
        })
        .fold(0u64, u64::saturating_add);
    let mut check = |f, h, k| {
        if comp(comp(f, h), k) != comp(f, comp(h, k)) {
            v.push(Violation::Associativity { f, g: h, h: k });
        }
    };
    if total <= options.associativity_budget {
        for f in 0..g.morphisms.len() as u32 {
            for &h in &outgoing[tgt(f)] {
                for &k in &outgoing[tgt(h)] {
                    check(f, h, k);
                }
            }
        }
        return AssociativityCoverage::Exhaustive { triples: total };
    }
    let mut rng = SplitMix64(0x9e37_79b9_7f4a_7c15);
    let m = g.morphisms.len() as u64;
    for _ in 0..options.associativity_budget {
        let f = (rng.next() % m) as u32;
        let out_f = &outgoing[tgt(f)];
        let h = out_f[(rng.next() % out_f.len() as u64) as usize];
        let out_h = &outgoing[tgt(h)];
        let k = out_h[(rng.next() % out_h.len() as u64) as usize];
        check(f, h, k);
    }
    AssociativityCoverage::Sampled {
        checked: options.associativity_budget,
        total,
    }
}

struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
}
