//! The normal subgroup lattice and the quantities derived from it: D(G),
//! ν, normal generators, prime-index counts and tightness.

use std::collections::HashSet;
use std::ops::Add;

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::{Closure, Element, Group, Subgroup};
use crate::numbers::{self, lift_usize, Natural};

/// Smallest normal subgroup containing `seed`.
pub fn normal_closure(group: &Group, seed: impl IntoIterator<Item = Element>) -> Subgroup<'_> {
    let mut closure = Closure::new(group);
    for x in seed {
        if closure.contains(x) {
            continue;
        }
        for g in group.elements() {
            closure.add(group.conjugate(x, g));
        }
    }
    closure.into_subgroup(true)
}

/// Every normal subgroup of a group, sorted by order and then elements.
#[derive(Debug, Clone)]
pub struct NormalLattice<'g> {
    group: &'g Group,
    members: Vec<Subgroup<'g>>,
}

impl<'g> NormalLattice<'g> {
    /// Each normal subgroup is a union of conjugacy classes and therefore the
    /// join of the normal closures of its classes, so closing the trivial
    /// subgroup under "join with a class closure" reaches all of them.
    pub fn compute(group: &'g Group) -> Self {
        let mut class_closures: Vec<Closure<'g>> = Vec::new();
        let mut seen_closures = HashSet::new();
        for class in group.conjugacy_classes() {
            if class[0] == group.identity() {
                continue;
            }
            let mut c = Closure::new(group);
            for &x in &class {
                c.add(x);
            }
            if seen_closures.insert(c.sorted_elements()) {
                class_closures.push(c);
            }
        }

        let mut found: Vec<Closure<'g>> = vec![Closure::new(group)];
        let mut seen: HashSet<Vec<Element>> = HashSet::new();
        seen.insert(vec![group.identity()]);
        let mut i = 0;
        while i < found.len() {
            for c in &class_closures {
                if c.generators().iter().all(|&x| found[i].contains(x)) {
                    continue;
                }
                let mut join = found[i].clone();
                for &x in c.generators() {
                    join.add(x);
                }
                if seen.insert(join.sorted_elements()) {
                    found.push(join);
                }
            }
            i += 1;
        }

        let mut members: Vec<Subgroup<'g>> = seen
            .into_iter()
            .map(|elements| Subgroup::from_sorted_normal(group, elements))
            .collect();
        members.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
        NormalLattice { group, members }
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn members(&self) -> &[Subgroup<'g>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn orders(&self) -> Vec<usize> {
        self.members.iter().map(Subgroup::order).collect()
    }

    /// Σ f(N) over all normal subgroups.
    pub fn lifted_sum<T, F>(&self, f: F) -> T
    where
        T: Zero + Add<Output = T>,
        F: FnMut(&Subgroup<'g>) -> T,
    {
        self.members.iter().map(f).fold(T::zero(), |a, b| a + b)
    }

    pub fn d_value<T: Natural>(&self) -> T {
        self.lifted_sum(|n| lift_usize::<T>(n.order()))
    }

    pub fn d_result<T: Natural>(&self) -> DResult<T> {
        DResult::new(self.d_value(), lift_usize(self.group.order()))
    }

    /// Number of normal subgroups containing `x`.
    pub fn nu(&self, x: Element) -> usize {
        self.members.iter().filter(|n| n.contains(x)).count()
    }

    /// Elements contained in no proper normal subgroup.
    pub fn normal_generators(&self) -> Vec<Element> {
        self.group.elements().filter(|&x| self.nu(x) == 1).collect()
    }

    /// Number of normal subgroups of index `p`.
    pub fn index_count(&self, p: u64) -> usize {
        self.members
            .iter()
            .filter(|n| n.index() as u64 == p)
            .count()
    }

    pub fn is_simple(&self) -> bool {
        self.members.len() == 2
    }

    /// At most one normal subgroup of index p, for every prime p.
    pub fn is_tight(&self) -> bool {
        numbers::factorize(&(self.group.order() as u64))
            .expect("group orders are small")
            .primes()
            .all(|p| self.index_count(p) <= 1)
    }
}

/// D(G) with its order and exact ratio.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DResult<T: Natural> {
    pub d_value: T,
    pub order: T,
    pub ratio: Ratio<T>,
    pub is_perfect: bool,
}

impl<T: Natural> DResult<T> {
    pub fn new(d_value: T, order: T) -> Self {
        let ratio = Ratio::new(d_value.clone(), order.clone());
        let is_perfect = d_value == order.clone() + order.clone();
        DResult {
            d_value,
            order,
            ratio,
            is_perfect,
        }
    }

    /// D(G) ≤ 2|G|.
    pub fn is_deficient_or_perfect(&self) -> bool {
        self.d_value <= self.order.clone() + self.order.clone()
    }
}

pub fn normal_subgroups(group: &Group) -> NormalLattice<'_> {
    NormalLattice::compute(group)
}

pub fn d_group<T: Natural>(group: &Group) -> DResult<T> {
    NormalLattice::compute(group).d_result()
}

pub fn nu(group: &Group, x: Element) -> usize {
    NormalLattice::compute(group).nu(x)
}

pub fn normal_generators(group: &Group) -> Vec<Element> {
    NormalLattice::compute(group).normal_generators()
}

/// Count of index-`p` normal subgroups, paired with the p-rank of the
/// abelianization. The two always satisfy count = (pʳ − 1)/(p − 1).
pub fn prime_index_count(group: &Group, p: u64) -> Result<(usize, usize)> {
    if !numbers::is_prime_u64(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let count = NormalLattice::compute(group).index_count(p);
    let (_, structure) = group.abelianization();
    Ok((count, structure.p_rank(p)))
}

pub fn is_tight(group: &Group) -> bool {
    NormalLattice::compute(group).is_tight()
}

pub fn lifted_sum<T, F>(group: &Group, f: F) -> T
where
    T: Zero + Add<Output = T>,
    F: FnMut(&Subgroup<'_>) -> T,
{
    NormalLattice::compute(group).lifted_sum(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Realizer;

    fn r() -> Realizer {
        Realizer::default()
    }

    #[test]
    fn normal_closures() {
        let s3 = r().symmetric(3).unwrap();
        assert!(normal_closure(&s3, [s3.identity()]).is_trivial());
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        assert!(normal_closure(&s3, [t]).is_whole());
        let s4 = r().symmetric(4).unwrap();
        let three = s4.elements().find(|&x| s4.element_order(x) == 3).unwrap();
        let n = normal_closure(&s4, [three]);
        assert_eq!(n.order(), 12);
        assert_eq!(n, s4.commutator_subgroup());
    }

    #[test]
    fn lattice_orders() {
        let c6 = r().cyclic(6).unwrap();
        assert_eq!(normal_subgroups(&c6).orders(), vec![1, 2, 3, 6]);
        let s4 = r().symmetric(4).unwrap();
        assert_eq!(normal_subgroups(&s4).orders(), vec![1, 4, 12, 24]);
        let d8 = r().dihedral(8).unwrap();
        assert_eq!(normal_subgroups(&d8).orders(), vec![1, 2, 4, 4, 4, 8]);
        let a5 = r().alternating(5).unwrap();
        assert!(normal_subgroups(&a5).is_simple());
    }

    #[test]
    fn d_values() {
        let d = |g: &Group| d_group::<u64>(g).d_value;
        assert_eq!(d(&r().symmetric(3).unwrap()), 10);
        assert_eq!(d(&r().alternating(4).unwrap()), 17);
        assert_eq!(d(&r().cyclic(1).unwrap()), 1);
        let a5 = d_group::<u64>(&r().alternating(5).unwrap());
        assert_eq!(a5.ratio, Ratio::new(61, 60));
        assert!(!a5.is_perfect);
        let c28 = d_group::<u64>(&r().cyclic(28).unwrap());
        assert!(c28.is_perfect);
        assert_eq!(c28.ratio, Ratio::from_integer(2));
    }

    #[test]
    fn nu_and_normal_generators() {
        let s3 = r().symmetric(3).unwrap();
        let lattice = normal_subgroups(&s3);
        assert_eq!(lattice.nu(s3.identity()), lattice.len());
        let transpositions: Vec<Element> = s3
            .elements()
            .filter(|&x| s3.element_order(x) == 2)
            .collect();
        for &t in &transpositions {
            assert_eq!(nu(&s3, t), 1);
        }
        let total: usize = s3.elements().map(|x| lattice.nu(x)).sum();
        assert_eq!(total, 10);
        assert_eq!(normal_generators(&s3), transpositions);
        let c6 = r().cyclic(6).unwrap();
        let gens = normal_generators(&c6);
        assert!(gens.contains(&1) && gens.contains(&5));
    }

    #[test]
    fn prime_index_counts() {
        let c6 = r().cyclic(6).unwrap();
        assert_eq!(prime_index_count(&c6, 5).unwrap(), (0, 0));
        let c2 = r().cyclic(2).unwrap();
        let v4 = r().direct_product(&c2, &c2).unwrap();
        assert_eq!(prime_index_count(&v4, 2).unwrap(), (3, 2));
        let s3 = r().symmetric(3).unwrap();
        assert_eq!(prime_index_count(&s3, 2).unwrap(), (1, 1));
        assert!(matches!(prime_index_count(&s3, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn tightness() {
        let c2 = r().cyclic(2).unwrap();
        let v4 = r().direct_product(&c2, &c2).unwrap();
        assert!(!is_tight(&v4));
        assert!(is_tight(&r().symmetric(3).unwrap()));
        assert!(is_tight(&r().cyclic(12).unwrap()));
    }

    #[test]
    fn lifted_sums() {
        let s4 = r().symmetric(4).unwrap();
        let d: u64 = lifted_sum(&s4, |n| n.order() as u64);
        assert_eq!(d, 41);
        assert_eq!(lifted_sum(&s4, |_| 1u32), 4);
        assert_eq!(lifted_sum(&r().cyclic(6).unwrap(), |_| 1u32), 4);
    }
}
