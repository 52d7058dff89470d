//! Composition factors, simplicity and coprimality of groups.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Add;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::Result;
use crate::group::Group;
use crate::normal::NormalLattice;
use crate::numbers::{factorize, is_prime_u64};

/// Smallest order shared by two non-isomorphic simple groups (A8 and
/// PSL(3,4)). Labelling nonabelian factors by order is sound below it.
pub const SIMPLE_ORDER_AMBIGUITY: u64 = 20160;

/// One composition factor up to isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FactorLabel {
    /// `C_p` for a prime `p`.
    CyclicPrime(u64),
    /// A nonabelian simple group, identified by its order.
    NonabelianSimple(u64),
}

impl FactorLabel {
    /// Label of a simple group of the given order.
    pub fn simple_of_order(order: u64) -> FactorLabel {
        if is_prime_u64(order) {
            FactorLabel::CyclicPrime(order)
        } else {
            assert!(
                order < SIMPLE_ORDER_AMBIGUITY,
                "simple groups of order {order} are not determined by their order"
            );
            FactorLabel::NonabelianSimple(order)
        }
    }

    pub fn size(&self) -> u64 {
        match *self {
            FactorLabel::CyclicPrime(p) => p,
            FactorLabel::NonabelianSimple(m) => m,
        }
    }

    pub fn cyclic_prime(&self) -> Option<u64> {
        match *self {
            FactorLabel::CyclicPrime(p) => Some(p),
            FactorLabel::NonabelianSimple(_) => None,
        }
    }
}

impl fmt::Display for FactorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorLabel::CyclicPrime(p) => write!(f, "C{p}"),
            FactorLabel::NonabelianSimple(m) => write!(f, "simple({m})"),
        }
    }
}

/// Composition factors counted with multiplicity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FactorMultiset {
    counts: BTreeMap<FactorLabel, usize>,
}

impl FactorMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(label: FactorLabel) -> Self {
        let mut m = Self::new();
        m.insert(label, 1);
        m
    }

    /// c(C_n): one `C_p` per prime factor of `n`, with multiplicity.
    pub fn cyclic(n: u64) -> Result<Self> {
        let mut m = Self::new();
        for &(p, e) in factorize(&n)?.factors() {
            m.insert(FactorLabel::CyclicPrime(p), e as usize);
        }
        Ok(m)
    }

    pub fn insert(&mut self, label: FactorLabel, multiplicity: usize) {
        if multiplicity > 0 {
            *self.counts.entry(label).or_insert(0) += multiplicity;
        }
    }

    pub fn counts(&self) -> &BTreeMap<FactorLabel, usize> {
        &self.counts
    }

    pub fn multiplicity(&self, label: &FactorLabel) -> usize {
        self.counts.get(label).copied().unwrap_or(0)
    }

    pub fn labels(&self) -> BTreeSet<FactorLabel> {
        self.counts.keys().copied().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Product of factor sizes, which equals the order of the group.
    pub fn order(&self) -> BigUint {
        self.counts.iter().fold(BigUint::one(), |acc, (label, &k)| {
            acc * BigUint::from(label.size()).pow(k as u32)
        })
    }

    pub fn is_disjoint(&self, other: &FactorMultiset) -> bool {
        self.counts.keys().all(|k| !other.counts.contains_key(k))
    }
}

impl Add for FactorMultiset {
    type Output = FactorMultiset;

    fn add(mut self, rhs: FactorMultiset) -> FactorMultiset {
        for (label, k) in rhs.counts {
            self.insert(label, k);
        }
        self
    }
}

impl fmt::Display for FactorMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (label, k)) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{label}:{k}")?;
        }
        f.write_str("}")
    }
}

/// Which proper nontrivial normal subgroup to split along.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SplitChoice {
    #[default]
    First,
    Last,
}

pub fn is_simple(group: &Group) -> bool {
    NormalLattice::compute(group).is_simple()
}

/// c(G), computed through c(G) = c(G/N) + c(N).
pub fn composition_factors(group: &Group) -> FactorMultiset {
    composition_factors_with(group, SplitChoice::First)
}

pub fn composition_factors_with(group: &Group, choice: SplitChoice) -> FactorMultiset {
    let order = group.order() as u64;
    if order == 1 {
        return FactorMultiset::new();
    }
    if is_prime_u64(order) {
        return FactorMultiset::singleton(FactorLabel::CyclicPrime(order));
    }
    let lattice = NormalLattice::compute(group);
    let mut proper = lattice
        .members()
        .iter()
        .filter(|n| !n.is_trivial() && !n.is_whole());
    let split = match choice {
        SplitChoice::First => proper.next(),
        SplitChoice::Last => proper.next_back(),
    };
    match split {
        None => FactorMultiset::singleton(FactorLabel::simple_of_order(order)),
        Some(n) => {
            let quotient = group
                .quotient(n)
                .expect("lattice members are normal")
                .into_target();
            composition_factors_with(&quotient, choice)
                + composition_factors_with(&n.to_group(), choice)
        }
    }
}

/// No composition factor in common.
pub fn coprime(g1: &Group, g2: &Group) -> bool {
    composition_factors(g1).is_disjoint(&composition_factors(g2))
}
