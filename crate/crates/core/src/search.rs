//! Completing a seed group to a perfect group `seed × C_m`.
//!
//! D is multiplicative on coprime direct products and D(C_m) = σ(m), so
//! `seed × C_m` is perfect exactly when σ(m)/m = 2 / (D(seed)/|seed|) and
//! `C_m` shares no composition factor with the seed. The search builds `m`
//! one prime power at a time, dividing the remaining target abundancy by
//! σ(pᵏ)/pᵏ until it reaches 1.
//!
//! Any prime `p` in the denominator of a reduced residual must divide the
//! rest of `m`, because the denominator of σ(m')/m' divides m'. When the
//! denominator is 1 every unused prime is a candidate.

use std::collections::BTreeSet;

use num_rational::Ratio;
use num_traits::One;

use crate::composition::{composition_factors, FactorLabel};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::normal::NormalLattice;
use crate::numbers::{self, checked_mul, lift, lift_usize, Factorization, Natural};

/// Limits on the cofactor search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    /// Largest prime power allowed in a chain.
    pub max_prime_power: u64,
    /// Largest number of prime powers in a chain.
    pub max_depth: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_prime_power: 1024,
            max_depth: 8,
        }
    }
}

/// What the search needs to know about a seed group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedSummary<T: Natural> {
    pub label: String,
    pub order: T,
    pub d_value: T,
    pub factor_labels: BTreeSet<FactorLabel>,
    pub ratio: Ratio<T>,
}

impl<T: Natural> SeedSummary<T> {
    /// Summarizes a realized group through its normal lattice.
    pub fn from_group(group: &Group) -> Self {
        let lattice = NormalLattice::compute(group);
        let order: T = lift_usize(group.order());
        let d_value: T = lattice.d_value();
        SeedSummary {
            label: group.label().to_string(),
            ratio: Ratio::new(d_value.clone(), order.clone()),
            order,
            d_value,
            factor_labels: composition_factors(group).labels(),
        }
    }

    /// Summarizes a group known only by its order and simplicity.
    ///
    /// A simple group has exactly two normal subgroups, so D = order + 1.
    pub fn from_descriptor(label: impl Into<String>, order: T, is_simple: bool) -> Result<Self> {
        let label = label.into();
        if !is_simple {
            return Err(Error::domain(format!(
                "D({label}) cannot be derived without its normal subgroup lattice"
            )));
        }
        if order.is_zero() {
            return Err(Error::domain("group order must be positive"));
        }
        let mut factor_labels = BTreeSet::new();
        let d_value = if order.is_one() {
            T::one()
        } else {
            let size = order
                .to_u64()
                .ok_or_else(|| Error::TooLarge(order.to_string()))?;
            // The caller vouches for simplicity, so the order alone decides
            // between C_p and a nonabelian label.
            factor_labels.insert(if numbers::is_prime_u64(size) {
                FactorLabel::CyclicPrime(size)
            } else {
                FactorLabel::NonabelianSimple(size)
            });
            order.clone() + T::one()
        };
        Ok(SeedSummary {
            label,
            ratio: Ratio::new(d_value.clone(), order.clone()),
            order,
            d_value,
            factor_labels,
        })
    }

    /// Primes that a coprime cyclic cofactor must avoid.
    pub fn forbidden_primes(&self) -> BTreeSet<u64> {
        self.factor_labels
            .iter()
            .filter_map(FactorLabel::cyclic_prime)
            .collect()
    }
}

/// A partial cofactor: the prime powers chosen so far and the abundancy
/// still to be supplied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchNode<T: Natural> {
    pub residual: Ratio<T>,
    pub used_primes: BTreeSet<u64>,
    pub chain: Vec<u64>,
    pub depth: usize,
}

impl<T: Natural> SearchNode<T> {
    pub fn root(target: Ratio<T>) -> Self {
        SearchNode {
            residual: target,
            used_primes: BTreeSet::new(),
            chain: Vec::new(),
            depth: 0,
        }
    }

    pub fn is_solution(&self) -> bool {
        self.residual.is_one()
    }

    /// Product of the chain, i.e. the cofactor order.
    pub fn cofactor(&self) -> Result<T> {
        self.chain.iter().try_fold(T::one(), |acc, &q| {
            checked_mul(&acc, &lift::<T>(q)?, "cofactor")
        })
    }
}

fn prime_power_base(q: u64) -> Option<(u64, u32)> {
    let f = numbers::factorize(&q).ok()?;
    match f.factors() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

fn check_target<T: Natural>(target: &Ratio<T>) -> Result<()> {
    let (a, b) = (target.numer(), target.denom());
    if b.is_zero() || !a.gcd(b).is_one() {
        return Err(Error::domain(format!(
            "target {a}/{b} is not in lowest terms"
        )));
    }
    if a < b {
        return Err(Error::domain(format!(
            "target {a}/{b} is below 1; no cofactor can reach it"
        )));
    }
    Ok(())
}

/// Children of `node`: one per admissible prime power.
///
/// With a denominator above 1 only its smallest prime is branched on (it
/// must occur in every completion); otherwise every unused prime up to the
/// bound is tried. Children whose residual drops below 1 are dead and
/// omitted. Order: ascending prime, then ascending exponent.
pub fn expand<T: Natural>(
    node: &SearchNode<T>,
    forbidden: &BTreeSet<u64>,
    bounds: &SearchBounds,
    small_primes: &[u64],
) -> Result<Vec<SearchNode<T>>> {
    if node.residual.is_one() || node.depth >= bounds.max_depth || node.residual < Ratio::one() {
        return Ok(Vec::new());
    }
    let denom = node.residual.denom();
    let forced;
    let candidates: &[u64] = if denom.is_one() {
        small_primes
    } else {
        let p = numbers::factorize(denom)?
            .primes()
            .next()
            .expect("denominator above 1 has a prime factor");
        forced = [p];
        &forced
    };
    let mut children = Vec::new();
    for &p in candidates {
        if p > bounds.max_prime_power || forbidden.contains(&p) || node.used_primes.contains(&p) {
            continue;
        }
        let mut q = p;
        let mut e = 1;
        loop {
            let sigma: T = Factorization::from_pairs([(p, e)])?.divisor_sum()?;
            let step = Ratio::new(sigma, lift::<T>(q)?);
            let residual = node.residual.clone() / step;
            if residual < Ratio::one() {
                break;
            }
            let mut used = node.used_primes.clone();
            used.insert(p);
            let mut chain = node.chain.clone();
            chain.push(q);
            children.push(SearchNode {
                residual,
                used_primes: used,
                chain,
                depth: node.depth + 1,
            });
            match q.checked_mul(p) {
                Some(next) if next <= bounds.max_prime_power => {
                    q = next;
                    e += 1;
                }
                _ => break,
            }
        }
    }
    Ok(children)
}

/// All chains of prime powers with pairwise distinct primes (none
/// forbidden) whose abundancies multiply to exactly `target`.
///
/// Chains describing the same cofactor are reported once, in the
/// lexicographically first order found.
pub fn solve_ratio<T: Natural>(
    target: &Ratio<T>,
    forbidden: &BTreeSet<u64>,
    bounds: &SearchBounds,
) -> Result<Vec<SearchNode<T>>> {
    check_target(target)?;
    if bounds.max_prime_power.checked_mul(2).is_none() {
        return Err(Error::TooLarge(bounds.max_prime_power.to_string()));
    }
    let small_primes = numbers::primes_up_to(bounds.max_prime_power);
    let mut solutions = Vec::new();
    let mut stack = vec![SearchNode::root(target.clone())];
    while let Some(node) = stack.pop() {
        if node.is_solution() {
            solutions.push(node);
            continue;
        }
        let children = expand(&node, forbidden, bounds, &small_primes)?;
        stack.extend(children.into_iter().rev());
    }
    let mut seen = BTreeSet::new();
    solutions.retain(|n| {
        let mut key = n.chain.clone();
        key.sort_unstable();
        seen.insert(key)
    });
    Ok(solutions)
}

/// A verified perfect group `seed × C_cofactor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectCertificate<T: Natural> {
    pub seed: SeedSummary<T>,
    pub chain: Vec<u64>,
    pub cofactor: T,
    pub total_order: T,
    pub total_d: T,
}

impl<T: Natural> PerfectCertificate<T> {
    pub fn label(&self) -> String {
        if self.cofactor.is_one() {
            self.seed.label.clone()
        } else {
            format!("{} x C{}", self.seed.label, self.cofactor)
        }
    }
}

/// Every cyclic cofactor completing `seed` to a perfect group within
/// `bounds`, each re-verified.
pub fn perfect_completions<T: Natural>(
    seed: &SeedSummary<T>,
    bounds: &SearchBounds,
) -> Result<Vec<PerfectCertificate<T>>> {
    let two = Ratio::from_integer(lift::<T>(2)?);
    if seed.ratio > two {
        return Err(Error::domain(format!(
            "D/|G| = {} exceeds 2: an over-perfect seed cannot be completed by a direct product",
            seed.ratio
        )));
    }
    let target = two / seed.ratio.clone();
    let forbidden = seed.forbidden_primes();
    let mut out = Vec::new();
    for node in solve_ratio(&target, &forbidden, bounds)? {
        let factorization =
            Factorization::from_pairs(node.chain.iter().filter_map(|&q| prime_power_base(q)))?;
        let cofactor = node.cofactor()?;
        let sigma: T = factorization.divisor_sum()?;
        let cert = PerfectCertificate {
            seed: seed.clone(),
            chain: node.chain,
            total_order: checked_mul(&seed.order, &cofactor, "total order")?,
            total_d: checked_mul(&seed.d_value, &sigma, "total D")?,
            cofactor,
        };
        if !verify_certificate(&cert) {
            return Err(Error::domain(format!(
                "internal error: certificate for {} failed verification",
                cert.label()
            )));
        }
        out.push(cert);
    }
    Ok(out)
}

/// Re-derives every certificate invariant with plain arithmetic.
pub fn verify_certificate<T: Natural>(cert: &PerfectCertificate<T>) -> bool {
    verify(cert).unwrap_or(false)
}

fn verify<T: Natural>(cert: &PerfectCertificate<T>) -> Result<bool> {
    let seed = &cert.seed;
    if seed.order.is_zero() || seed.d_value.is_zero() || cert.cofactor.is_zero() {
        return Ok(false);
    }
    if seed.ratio != Ratio::new(seed.d_value.clone(), seed.order.clone()) {
        return Ok(false);
    }
    // Factor the cofactor directly when it fits; otherwise the chain must be
    // prime powers of distinct primes that multiply to it.
    let factorization = match numbers::factorize(&cert.cofactor) {
        Ok(f) => f,
        Err(Error::TooLarge(_)) => {
            let mut primes = BTreeSet::new();
            let mut pairs = Vec::new();
            for &q in &cert.chain {
                let Some((p, e)) = prime_power_base(q) else {
                    return Ok(false);
                };
                if !primes.insert(p) {
                    return Ok(false);
                }
                pairs.push((p, e));
            }
            let f = Factorization::from_pairs(pairs)?;
            if f.value::<T>()? != cert.cofactor {
                return Ok(false);
            }
            f
        }
        Err(e) => return Err(e),
    };
    let forbidden = seed.forbidden_primes();
    if factorization.primes().any(|p| forbidden.contains(&p)) {
        return Ok(false);
    }
    let sigma: T = factorization.divisor_sum()?;
    let order = checked_mul(&seed.order, &cert.cofactor, "total order")?;
    let d = checked_mul(&seed.d_value, &sigma, "total D")?;
    let twice = order.clone() + order.clone();
    Ok(cert.total_order == order && cert.total_d == d && d == twice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Realizer;
    use num_bigint::BigUint;

    fn ratio(a: u64, b: u64) -> Ratio<u64> {
        Ratio::new(a, b)
    }

    fn chains(nodes: &[SearchNode<u64>]) -> Vec<Vec<u64>> {
        nodes.iter().map(|n| n.chain.clone()).collect()
    }

    #[test]
    fn trivial_target() {
        let out = solve_ratio(&ratio(1, 1), &BTreeSet::new(), &SearchBounds::default()).unwrap();
        assert_eq!(chains(&out), vec![Vec::<u64>::new()]);
    }

    #[test]
    fn a5_chain() {
        let bounds = SearchBounds {
            max_prime_power: 256,
            max_depth: 6,
        };
        let out = solve_ratio(&ratio(120, 61), &BTreeSet::new(), &bounds).unwrap();
        assert!(chains(&out).contains(&vec![61, 31, 8]));
    }

    #[test]
    fn a6_chain() {
        let bounds = SearchBounds {
            max_prime_power: 512,
            max_depth: 6,
        };
        let out = solve_ratio(&ratio(720, 361), &BTreeSet::new(), &bounds).unwrap();
        assert!(chains(&out).contains(&vec![361, 127, 8]));
    }

    #[test]
    fn forbidden_primes_block_branches() {
        let bounds = SearchBounds::default();
        let blocked: BTreeSet<u64> = [2].into();
        let out = solve_ratio(&ratio(15, 8), &blocked, &bounds).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn bad_targets() {
        let b = SearchBounds::default();
        let none = BTreeSet::new();
        assert!(solve_ratio(&ratio(1, 2), &none, &b).is_err());
        assert!(solve_ratio(&Ratio::new_raw(4u64, 2), &none, &b).is_err());
    }

    #[test]
    fn perfect_number_targets() {
        // σ(m)/m = 2 is exactly the perfect numbers
        let bounds = SearchBounds {
            max_prime_power: 128,
            max_depth: 4,
        };
        let out = solve_ratio(&ratio(2, 1), &BTreeSet::new(), &bounds).unwrap();
        let mut ms: Vec<u64> = out.iter().map(|n| n.cofactor().unwrap()).collect();
        ms.sort_unstable();
        assert_eq!(ms, vec![6, 28, 496, 8128]);
    }

    #[test]
    fn seeds() {
        let a5 = Realizer::default().alternating(5).unwrap();
        let s = SeedSummary::<u64>::from_group(&a5);
        assert_eq!(s.ratio, ratio(61, 60));
        assert!(s.forbidden_primes().is_empty());
        let a6 = SeedSummary::<u64>::from_descriptor("A6", 360, true).unwrap();
        assert_eq!(a6.ratio, ratio(361, 360));
        let one = SeedSummary::<u64>::from_group(&Realizer::default().cyclic(1).unwrap());
        assert_eq!(one.ratio, ratio(1, 1));
        assert!(SeedSummary::<u64>::from_descriptor("X", 12, false).is_err());
        let c7 = SeedSummary::<u64>::from_descriptor("C7", 7, true).unwrap();
        assert_eq!(c7.forbidden_primes(), [7].into());
    }

    #[test]
    fn completions() {
        let a5 = Realizer::default().alternating(5).unwrap();
        let seed = SeedSummary::<BigUint>::from_group(&a5);
        let certs = perfect_completions(&seed, &SearchBounds::default()).unwrap();
        let c = certs
            .iter()
            .find(|c| c.cofactor == BigUint::from(15128u32))
            .expect("A5 x C15128");
        assert_eq!(c.total_order, BigUint::from(907_680u32));
        assert_eq!(c.label(), "A5 x C15128");
        let a6 = SeedSummary::<BigUint>::from_descriptor("A6", 360u32.into(), true).unwrap();
        let certs = perfect_completions(&a6, &SearchBounds::default()).unwrap();
        let c = certs
            .iter()
            .find(|c| c.cofactor == BigUint::from(366_776u32))
            .expect("A6 x C366776");
        assert_eq!(c.total_order, BigUint::from(132_039_360u32));
        assert_eq!(c.total_d, BigUint::from(264_078_720u32));
        let c6 = SeedSummary::<u64>::from_group(&Realizer::default().cyclic(6).unwrap());
        let certs = perfect_completions(&c6, &SearchBounds::default()).unwrap();
        assert_eq!(certs[0].cofactor, 1);
    }

    #[test]
    fn over_perfect_seed_is_rejected() {
        let c2 = Realizer::default().cyclic(2).unwrap();
        let v4 = Realizer::default().direct_product(&c2, &c2).unwrap();
        let seed = SeedSummary::<u64>::from_group(&v4);
        assert_eq!(seed.ratio, ratio(11, 4));
        assert!(matches!(
            perfect_completions(&seed, &SearchBounds::default()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn certificate_verification() {
        let a5 = SeedSummary::<u64>::from_descriptor("A5", 60, true).unwrap();
        let mut cert = PerfectCertificate {
            seed: a5,
            chain: vec![61, 31, 8],
            cofactor: 15128,
            total_order: 907_680,
            total_d: 1_815_360,
        };
        assert_eq!(61 * 29760, 1_815_360);
        assert!(verify_certificate(&cert));
        cert.cofactor = 15127;
        assert!(!verify_certificate(&cert));

        let r = Realizer::default();
        let g = r
            .direct_product(&r.symmetric(3).unwrap(), &r.cyclic(5).unwrap())
            .unwrap();
        let seed = SeedSummary::<u64>::from_group(&g);
        let cert = PerfectCertificate {
            seed,
            chain: vec![],
            cofactor: 1,
            total_order: 30,
            total_d: 60,
        };
        assert!(verify_certificate(&cert));
    }

    #[test]
    fn certificate_rejects_shared_cyclic_factor() {
        // C3 x C2 would be "perfect" by ratio alone, but C3 x C6 shares C3
        let c3 = SeedSummary::<u64>::from_descriptor("C3", 3, true).unwrap();
        let cert = PerfectCertificate {
            seed: c3,
            chain: vec![2],
            cofactor: 2,
            total_order: 6,
            total_d: 12,
        };
        assert!(verify_certificate(&cert));
        let cert = PerfectCertificate {
            chain: vec![3, 2],
            cofactor: 6,
            total_order: 18,
            total_d: 4 * 12,
            ..cert
        };
        assert!(!verify_certificate(&cert));
    }
}
