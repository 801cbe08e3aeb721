use num_traits::Zero;

use super::explicit::{ExplicitGroupoid, ObjectId};
use super::union_find::UnionFind;
use super::validate::{validate_with, AssociativityCoverage, ValidationOptions};
use crate::arith::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoClass {
    pub representative: ObjectId,
    pub members: usize,
    pub automorphisms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CardinalityReport {
    pub classes: Vec<IsoClass>,
    pub total: Rational,
    pub associativity: AssociativityCoverage,
}

impl CardinalityReport {
    pub fn iso_class_count(&self) -> usize {
        self.classes.len()
    }
}

fn ensure_valid(g: &ExplicitGroupoid, options: &ValidationOptions) -> Result<AssociativityCoverage> {
    let report = validate_with(g, options);
    match report.violations.first() {
        None => Ok(report.associativity),
        Some(first) => Err(Error::InvalidGroupoid {
            count: report.violations.len(),
            first: first.to_string(),
        }),
    }
}

/// Connected components, each listed in increasing object order; components
/// are ordered by their smallest object.
pub fn iso_classes(g: &ExplicitGroupoid) -> Result<Vec<Vec<ObjectId>>> {
    iso_classes_with(g, &ValidationOptions::default())
}

pub fn iso_classes_with(g: &ExplicitGroupoid, options: &ValidationOptions) -> Result<Vec<Vec<ObjectId>>> {
    ensure_valid(g, options)?;
    Ok(components(g))
}

fn components(g: &ExplicitGroupoid) -> Vec<Vec<ObjectId>> {
    let mut uf = UnionFind::new(g.objects.len());
    for m in &g.morphisms {
        uf.union(m.source, m.target);
    }
    let (class, count) = uf.classes();
    let mut out = vec![Vec::new(); count];
    for (x, &c) in class.iter().enumerate() {
        out[c as usize].push(x as ObjectId);
    }
    out
}

/// `sum over iso classes of 1 / |Aut(representative)|`, by enumeration.
pub fn cardinality_explicit(g: &ExplicitGroupoid) -> Result<CardinalityReport> {
    cardinality_explicit_with(g, &ValidationOptions::default())
}

pub fn cardinality_explicit_with(g: &ExplicitGroupoid, options: &ValidationOptions) -> Result<CardinalityReport> {
    let associativity = ensure_valid(g, options)?;
    let mut loops = vec![0u64; g.objects.len()];
    for m in &g.morphisms {
        if m.source == m.target {
            loops[m.source as usize] += 1;
        }
    }
    let classes: Vec<IsoClass> = components(g)
        .into_iter()
        .map(|members| IsoClass {
            representative: members[0],
            members: members.len(),
            automorphisms: loops[members[0] as usize],
        })
        .collect();
    let total = classes.iter().fold(Rational::zero(), |acc, c| {
        acc + Rational::new(1.into(), c.automorphisms.into())
    });
    Ok(CardinalityReport {
        classes,
        total,
        associativity,
    })
}
