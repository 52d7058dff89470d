//! Finite groups realized as multiplication tables.
//!
//! Elements are indices `0..order`. Every constructor in this module puts the
//! identity at index 0, but nothing downstream relies on that.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Index of an element inside its group's table.
pub type Element = usize;

/// Default cap on the number of elements a table may have.
pub const DEFAULT_MAX_ORDER: usize = 5000;

/// Orders up to this are checked for associativity exhaustively.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 512;

const SAMPLING_SEED: u64 = 0x5eed_7ab1e;

/// A finite group given by its full multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct Group {
    order: usize,
    table: Vec<u32>,
    identity: Element,
    inverse: Vec<u32>,
    label: String,
    // orders of the two factors when built by `direct_product`
    product_of: Option<(usize, usize)>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl Group {
    /// Builds a group from an explicit table, checking every group axiom.
    pub fn from_table(rows: &[Vec<Element>], label: impl Into<String>) -> Result<Group> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::domain("a group needs at least one element"));
        }
        let mut table = Vec::with_capacity(order * order);
        for row in rows {
            if row.len() != order {
                return Err(Error::domain("multiplication table is not square"));
            }
            for &x in row {
                if x >= order {
                    return Err(Error::domain(format!("table entry {x} out of range")));
                }
                table.push(x as u32);
            }
        }
        let group = Group::from_flat(order, table, label.into())
            .ok_or_else(|| Error::domain("table has no two-sided identity and inverses"))?;
        group.validate()?;
        Ok(group)
    }

    // Trusted constructor: derives identity and inverses, does not check
    // associativity.
    fn from_flat(order: usize, table: Vec<u32>, label: String) -> Option<Group> {
        let identity = (0..order).find(|&e| {
            (0..order)
                .all(|g| table[e * order + g] as usize == g && table[g * order + e] as usize == g)
        })?;
        let mut inverse = vec![u32::MAX; order];
        for g in 0..order {
            let row = &table[g * order..(g + 1) * order];
            let h = row.iter().position(|&x| x as usize == identity)?;
            if table[h * order + g] as usize != identity {
                return None;
            }
            inverse[g] = h as u32;
        }
        Some(Group {
            order,
            table,
            identity,
            inverse,
            label,
            product_of: None,
        })
    }

    /// Checks closure, identity, inverses and associativity.
    ///
    /// Associativity is exhaustive up to [`EXHAUSTIVE_ASSOCIATIVITY_LIMIT`]
    /// and sampled (deterministically, `order²` triples) above it.
    pub fn validate(&self) -> Result<()> {
        self.validate_with(EXHAUSTIVE_ASSOCIATIVITY_LIMIT)
    }

    pub fn validate_with(&self, exhaustive_limit: usize) -> Result<()> {
        let n = self.order;
        if self.table.len() != n * n || self.inverse.len() != n {
            return Err(Error::domain("table dimensions do not match the order"));
        }
        if self.table.iter().any(|&x| x as usize >= n) {
            return Err(Error::domain("table entry out of range"));
        }
        for g in 0..n {
            if self.mul(self.identity, g) != g || self.mul(g, self.identity) != g {
                return Err(Error::domain(format!("identity fails at element {g}")));
            }
            if self.mul(g, self.inv(g)) != self.identity
                || self.mul(self.inv(g), g) != self.identity
            {
                return Err(Error::domain(format!("inverse fails at element {g}")));
            }
        }
        let assoc = |a, b, c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= exhaustive_limit {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::domain(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLING_SEED);
            for _ in 0..n * n {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if !assoc(a, b, c) {
                    return Err(Error::domain(format!(
                        "associativity fails at ({a}, {b}, {c})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Group {
        self.label = label.into();
        self
    }

    pub fn identity(&self) -> Element {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Element) -> Element {
        self.inverse[a] as usize
    }

    /// `g x g⁻¹`
    #[inline]
    pub fn conjugate(&self, x: Element, g: Element) -> Element {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `[x, y] = x y x⁻¹ y⁻¹`
    #[inline]
    pub fn commutator(&self, x: Element, y: Element) -> Element {
        self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Least `k >= 1` with `x^k = e`.
    pub fn element_order(&self, x: Element) -> usize {
        let mut k = 1;
        let mut power = x;
        while power != self.identity {
            power = self.mul(power, x);
            k += 1;
        }
        k
    }

    /// Conjugacy classes, each sorted, listed by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Element>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for x in self.elements() {
            if seen[x] {
                continue;
            }
            let mut class = Vec::new();
            for g in self.elements() {
                let y = self.conjugate(x, g);
                if !seen[y] {
                    seen[y] = true;
                    class.push(y);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    pub fn trivial_subgroup(&self) -> Subgroup<'_> {
        Subgroup {
            parent: self,
            elements: vec![self.identity],
            is_normal: true,
        }
    }

    pub fn whole(&self) -> Subgroup<'_> {
        Subgroup {
            parent: self,
            elements: self.elements().collect(),
            is_normal: true,
        }
    }

    /// Smallest subgroup containing `seed`.
    pub fn subgroup_generated(&self, seed: impl IntoIterator<Item = Element>) -> Subgroup<'_> {
        let mut closure = Closure::new(self);
        for x in seed {
            closure.add(x);
        }
        let is_normal = closure.is_normalized_by_all();
        closure.into_subgroup(is_normal)
    }

    /// Derived subgroup, generated by all commutators.
    pub fn commutator_subgroup(&self) -> Subgroup<'_> {
        let mut closure = Closure::new(self);
        for x in self.elements() {
            for y in self.elements() {
                closure.add(self.commutator(x, y));
            }
        }
        closure.into_subgroup(true)
    }

    /// `G/N` together with the projection.
    pub fn quotient(&self, normal: &Subgroup<'_>) -> Result<QuotientMap<'_>> {
        if !std::ptr::eq(normal.parent, self) && normal.parent != self {
            return Err(Error::domain("subgroup belongs to a different group"));
        }
        if !normal.is_normal {
            return Err(Error::domain(format!(
                "cannot form a quotient of {} by a non-normal subgroup of order {}",
                self.label,
                normal.order()
            )));
        }
        let n = self.order;
        let mut coset = vec![usize::MAX; n];
        let mut reps = Vec::with_capacity(n / normal.order());
        for g in self.elements() {
            if coset[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &k in &normal.elements {
                coset[self.mul(g, k)] = id;
            }
        }
        let m = reps.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                table.push(coset[self.mul(a, b)] as u32);
            }
        }
        let label = format!("{}/N{}", self.label, normal.order());
        let target =
            Group::from_flat(m, table, label).expect("cosets of a normal subgroup form a group");
        Ok(QuotientMap {
            source: self,
            target,
            image: coset,
        })
    }

    /// Abelianization together with its invariant factors.
    pub fn abelianization(&self) -> (Group, AbelianStructure) {
        let derived = self.commutator_subgroup();
        let quotient = self
            .quotient(&derived)
            .expect("the derived subgroup is normal")
            .into_target()
            .with_label(format!("{}^ab", self.label));
        let structure = AbelianStructure::of(&quotient).expect("abelianization is abelian");
        (quotient, structure)
    }

    /// The canonical copies of both factors when `self` came from
    /// [`Realizer::direct_product`].
    pub fn factor_embeddings(&self) -> Option<(Subgroup<'_>, Subgroup<'_>)> {
        let (n1, n2) = self.product_of?;
        let left = (0..n1).map(|i| i * n2).collect();
        let right = (0..n2).collect();
        Some((
            Subgroup {
                parent: self,
                elements: left,
                is_normal: true,
            },
            Subgroup {
                parent: self,
                elements: right,
                is_normal: true,
            },
        ))
    }
}

/// Incremental subgroup closure. Generators already inside the current
/// subgroup are skipped, so at most log₂|H| of them are ever kept.
#[derive(Clone)]
pub(crate) struct Closure<'g> {
    group: &'g Group,
    member: Vec<bool>,
    elements: Vec<Element>,
    gens: Vec<Element>,
}

impl<'g> Closure<'g> {
    pub(crate) fn new(group: &'g Group) -> Self {
        let mut member = vec![false; group.order];
        member[group.identity] = true;
        Closure {
            group,
            member,
            elements: vec![group.identity],
            gens: Vec::new(),
        }
    }

    pub(crate) fn contains(&self, x: Element) -> bool {
        self.member[x]
    }

    pub(crate) fn generators(&self) -> &[Element] {
        &self.gens
    }

    /// Returns whether `x` enlarged the subgroup.
    pub(crate) fn add(&mut self, x: Element) -> bool {
        if self.member[x] {
            return false;
        }
        self.gens.push(x);
        let g = self.group;
        let mut i = 0;
        while i < self.elements.len() {
            let y = self.elements[i];
            for &s in &self.gens {
                let z = g.mul(y, s);
                if !self.member[z] {
                    self.member[z] = true;
                    self.elements.push(z);
                }
            }
            i += 1;
        }
        true
    }

    pub(crate) fn is_normalized_by_all(&self) -> bool {
        let g = self.group;
        self.gens
            .iter()
            .all(|&h| g.elements().all(|x| self.member[g.conjugate(h, x)]))
    }

    pub(crate) fn sorted_elements(&self) -> Vec<Element> {
        let mut v = self.elements.clone();
        v.sort_unstable();
        v
    }

    pub(crate) fn into_subgroup(self, is_normal: bool) -> Subgroup<'g> {
        let mut elements = self.elements;
        elements.sort_unstable();
        Subgroup {
            parent: self.group,
            elements,
            is_normal,
        }
    }
}

/// A subgroup of a realized group, as a sorted list of element indices.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup<'g> {
    parent: &'g Group,
    elements: Vec<Element>,
    is_normal: bool,
}

impl fmt::Debug for Subgroup<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("parent", &self.parent.label)
            .field("order", &self.elements.len())
            .field("is_normal", &self.is_normal)
            .finish()
    }
}

impl<'g> Subgroup<'g> {
    /// Checks that `elements` form a subgroup and determines normality.
    pub fn new(parent: &'g Group, elements: impl IntoIterator<Item = Element>) -> Result<Self> {
        let mut member = vec![false; parent.order];
        let mut list = Vec::new();
        for x in elements {
            if x >= parent.order {
                return Err(Error::domain(format!("element {x} out of range")));
            }
            if !member[x] {
                member[x] = true;
                list.push(x);
            }
        }
        list.sort_unstable();
        if !member[parent.identity] {
            return Err(Error::domain("subset does not contain the identity"));
        }
        for &a in &list {
            if !member[parent.inv(a)] || list.iter().any(|&b| !member[parent.mul(a, b)]) {
                return Err(Error::domain("subset is not closed under the group law"));
            }
        }
        if !parent.order.is_multiple_of(list.len()) {
            return Err(Error::domain(
                "subgroup order does not divide the group order",
            ));
        }
        let is_normal = list
            .iter()
            .all(|&h| parent.elements().all(|g| member[parent.conjugate(h, g)]));
        Ok(Subgroup {
            parent,
            elements: list,
            is_normal,
        })
    }

    pub(crate) fn from_sorted_normal(parent: &'g Group, elements: Vec<Element>) -> Self {
        Subgroup {
            parent,
            elements,
            is_normal: true,
        }
    }

    pub fn parent(&self) -> &'g Group {
        self.parent
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order / self.elements.len()
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.parent.order
    }

    pub fn contains(&self, x: Element) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup<'_>) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Realizes the subgroup as a standalone group, keeping element order.
    pub fn to_group(&self) -> Group {
        let pos: HashMap<Element, usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, i))
            .collect();
        let m = self.elements.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &self.elements {
            for &b in &self.elements {
                table.push(pos[&self.parent.mul(a, b)] as u32);
            }
        }
        let label = format!("{}<{}", self.parent.label, m);
        Group::from_flat(m, table, label).expect("subgroup closure was checked on construction")
    }
}

/// Projection `G → G/N`.
#[derive(Debug, Clone)]
pub struct QuotientMap<'g> {
    source: &'g Group,
    target: Group,
    image: Vec<Element>,
}

impl<'g> QuotientMap<'g> {
    pub fn source(&self) -> &'g Group {
        self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn into_target(self) -> Group {
        self.target
    }

    pub fn image(&self, x: Element) -> Element {
        self.image[x]
    }

    pub fn kernel(&self) -> Subgroup<'g> {
        let elements = self
            .source
            .elements()
            .filter(|&x| self.image[x] == self.target.identity)
            .collect();
        Subgroup::from_sorted_normal(self.source, elements)
    }

    /// Full preimage of a subgroup of the target.
    pub fn preimage(&self, sub: &Subgroup<'_>) -> Subgroup<'g> {
        let elements = self
            .source
            .elements()
            .filter(|&x| sub.contains(self.image[x]))
            .collect();
        Subgroup {
            parent: self.source,
            elements,
            is_normal: sub.is_normal,
        }
    }

    /// Exhaustive homomorphism and surjectivity check.
    pub fn is_surjective_homomorphism(&self) -> bool {
        let s = self.source;
        let hom = s.elements().all(|x| {
            s.elements()
                .all(|y| self.image[s.mul(x, y)] == self.target.mul(self.image[x], self.image[y]))
        });
        let mut hit = vec![false; self.target.order];
        for &t in &self.image {
            hit[t] = true;
        }
        hom && hit.into_iter().all(|h| h)
    }
}

/// Invariant factors `d₁ | d₂ | … | dₖ` of a finite abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianStructure {
    invariant_factors: Vec<u64>,
}

impl AbelianStructure {
    /// Decomposes an abelian group by repeatedly splitting off a cyclic
    /// subgroup of maximal order (always a direct summand).
    pub fn of(group: &Group) -> Result<AbelianStructure> {
        if !group.is_abelian() {
            return Err(Error::domain(format!("{} is not abelian", group.label)));
        }
        let mut factors = Vec::new();
        let mut current = group.clone();
        while current.order > 1 {
            let (x, ord) = current
                .elements()
                .map(|x| (x, current.element_order(x)))
                .max_by_key(|&(x, o)| (o, std::cmp::Reverse(x)))
                .expect("nonempty group");
            factors.push(ord as u64);
            let cyclic = current.subgroup_generated([x]);
            current = current.quotient(&cyclic)?.into_target();
        }
        factors.reverse();
        Ok(AbelianStructure {
            invariant_factors: factors,
        })
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    /// Number of invariant factors divisible by `p`.
    pub fn p_rank(&self, p: u64) -> usize {
        self.invariant_factors
            .iter()
            .filter(|&&d| d % p == 0)
            .count()
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }
}

/// A permutation of `0..degree`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::domain(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a >= degree || touched[a] {
                    return Err(Error::domain(format!(
                        "bad cycle {cycle:?} for degree {degree}"
                    )));
                }
                touched[a] = true;
                images[a] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `(self · other)(i) = self(other(i))`
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }
}

/// Builds table-backed groups subject to a maximum order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Realizer {
    max_order: usize,
}

impl Default for Realizer {
    fn default() -> Self {
        Realizer {
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

impl Realizer {
    pub fn new(max_order: usize) -> Self {
        Realizer { max_order }
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn check_order(&self, what: &str, order: &BigUint) -> Result<usize> {
        match usize::try_from(order) {
            Ok(n) if n <= self.max_order => Ok(n),
            _ => Err(Error::OrderBound {
                what: what.to_string(),
                needed: order.to_string(),
                bound: self.max_order,
            }),
        }
    }

    fn check(&self, what: &str, order: usize) -> Result<()> {
        self.check_order(what, &BigUint::from(order)).map(|_| ())
    }

    pub fn cyclic(&self, n: usize) -> Result<Group> {
        if n == 0 {
            return Err(Error::domain("cyclic group order must be at least 1"));
        }
        let label = format!("C{n}");
        self.check(&label, n)?;
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(((i + j) % n) as u32);
            }
        }
        Ok(Group::from_flat(n, table, label).expect("cyclic table"))
    }

    /// Dihedral group of order `m` (symmetries of the `m/2`-gon).
    ///
    /// Element `i + k·(m/2)` is `rᶦ sᵏ`. `m = 2` and `m = 4` give `C2` and
    /// `C2 x C2`.
    pub fn dihedral(&self, m: usize) -> Result<Group> {
        if m == 0 || m % 2 == 1 {
            return Err(Error::domain(format!(
                "dihedral order must be a positive even number, got {m}"
            )));
        }
        let label = format!("D{m}");
        self.check(&label, m)?;
        let n = m / 2;
        let mut table = Vec::with_capacity(m * m);
        for x in 0..m {
            let (a, b) = (x % n, x / n);
            for y in 0..m {
                let (c, d) = (y % n, y / n);
                let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                table.push((rot + n * (b ^ d)) as u32);
            }
        }
        Ok(Group::from_flat(m, table, label).expect("dihedral table"))
    }

    pub fn symmetric(&self, n: usize) -> Result<Group> {
        if n == 0 {
            return Err(Error::domain("symmetric group degree must be at least 1"));
        }
        let label = format!("S{n}");
        self.check_order(&label, &factorial(n as u64))?;
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[&[0, 1]])?);
            let cycle: Vec<usize> = (0..n).collect();
            gens.push(Permutation::from_cycles(n, &[&cycle])?);
        }
        Ok(self.from_generators(n, &gens)?.with_label(label))
    }

    pub fn alternating(&self, n: usize) -> Result<Group> {
        if n == 0 {
            return Err(Error::domain("alternating group degree must be at least 1"));
        }
        let label = format!("A{n}");
        let order = if n >= 2 {
            factorial(n as u64) / 2u32
        } else {
            BigUint::one()
        };
        self.check_order(&label, &order)?;
        let gens = (2..n)
            .map(|k| Permutation::from_cycles(n, &[&[0, 1, k]]))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.from_generators(n, &gens)?.with_label(label))
    }

    pub fn direct_product(&self, g1: &Group, g2: &Group) -> Result<Group> {
        let right = if g2.label.contains(" x ") {
            format!("({})", g2.label)
        } else {
            g2.label.clone()
        };
        let label = format!("{} x {}", g1.label, right);
        let order = BigUint::from(g1.order) * g2.order;
        let n = self.check_order(&label, &order)?;
        let (n1, n2) = (g1.order, g2.order);
        let mut table = Vec::with_capacity(n * n);
        for a1 in 0..n1 {
            for a2 in 0..n2 {
                for b1 in 0..n1 {
                    for b2 in 0..n2 {
                        table.push((g1.mul(a1, b1) * n2 + g2.mul(a2, b2)) as u32);
                    }
                }
            }
        }
        let mut group = Group::from_flat(n, table, label).expect("product table");
        group.product_of = Some((n1, n2));
        Ok(group)
    }

    /// Permutation group generated by `gens`, with elements numbered in
    /// breadth-first order from the identity over the generators as given.
    pub fn from_generators(&self, degree: usize, gens: &[Permutation]) -> Result<Group> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::domain(format!(
                    "generator {:?} does not act on {degree} points",
                    g.0
                )));
            }
            Permutation::from_images(g.0.clone())?;
        }
        let label = format!("<{} generators on {degree} points>", gens.len());
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        let mut perms = vec![Permutation::identity(degree)];
        index.insert(perms[0].clone(), 0);
        // word[j] = (i, s) with perms[j] = perms[i] · gens[s]
        let mut word: Vec<(usize, usize)> = vec![(0, 0)];
        // right[s][i] = index of perms[i] · gens[s]
        let mut right: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
        let mut i = 0;
        while i < perms.len() {
            for (s, gen) in gens.iter().enumerate() {
                let product = perms[i].compose(gen);
                let j = match index.get(&product) {
                    Some(&j) => j,
                    None => {
                        let j = perms.len();
                        if j >= self.max_order {
                            return Err(Error::OrderBound {
                                what: label,
                                needed: format!("more than {}", self.max_order),
                                bound: self.max_order,
                            });
                        }
                        index.insert(product.clone(), j);
                        perms.push(product);
                        word.push((i, s));
                        j
                    }
                };
                right[s].push(j as u32);
            }
            i += 1;
        }
        let n = perms.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            table[a * n] = a as u32;
            for b in 1..n {
                let (prefix, s) = word[b];
                table[a * n + b] = right[s][table[a * n + prefix] as usize];
            }
        }
        Ok(Group::from_flat(n, table, label).expect("permutation group table"))
    }
}
