//! Divisor sums, primality and perfect numbers.
//!
//! Everything here is generic over an unsigned [`Natural`] scalar. The crate
//! root fixes the default to [`BigUint`](num_bigint::BigUint), so no value can
//! silently overflow; fixed-width scalars report [`Error::Overflow`] instead
//! of wrapping.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, ToPrimitive, Unsigned};

use crate::error::{Error, Result};

/// Unsigned integer scalar usable by the number-theoretic and search code.
pub trait Natural:
    Integer
    + Unsigned
    + Clone
    + Hash
    + Debug
    + Display
    + FromPrimitive
    + ToPrimitive
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Send
    + Sync
{
}

impl<T> Natural for T where
    T: Integer
        + Unsigned
        + Clone
        + Hash
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + Send
        + Sync
{
}

/// Converts a machine integer into `T`, failing if `T` is too narrow.
pub fn lift<T: Natural>(x: u64) -> Result<T> {
    T::from_u64(x).ok_or(Error::Overflow("scalar conversion"))
}

pub(crate) fn lift_usize<T: Natural>(x: usize) -> T {
    T::from_usize(x).expect("group orders fit every supported scalar")
}

pub(crate) fn checked_mul<T: Natural>(a: &T, b: &T, what: &'static str) -> Result<T> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

fn to_u64<T: Natural>(n: &T) -> Result<u64> {
    n.to_u64().ok_or_else(|| Error::TooLarge(n.to_string()))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// These witnesses make Miller-Rabin deterministic for every n < 2^64.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality of an arbitrary scalar; values of 2^64 and above are rejected.
pub fn is_prime<T: Natural>(n: &T) -> Result<bool> {
    Ok(is_prime_u64(to_u64(n)?))
}

/// All primes up to and including `limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Prime factorization with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Builds a factorization from `(prime, exponent)` pairs in any order.
    ///
    /// Pairs with the same prime are merged; zero exponents are dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, u32)>) -> Result<Self> {
        let mut factors: Vec<(u64, u32)> = Vec::new();
        for (p, e) in pairs {
            if !is_prime_u64(p) {
                return Err(Error::domain(format!("{p} is not prime")));
            }
            if e == 0 {
                continue;
            }
            match factors.iter_mut().find(|(q, _)| *q == p) {
                Some(slot) => slot.1 += e,
                None => factors.push((p, e)),
            }
        }
        factors.sort_unstable();
        Ok(Factorization { factors })
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Reconstructs the factored integer.
    pub fn value<T: Natural>(&self) -> Result<T> {
        let mut acc = T::one();
        for &(p, e) in &self.factors {
            let pe = checked_pow(&lift::<T>(p)?, e, "factorization value")?;
            acc = checked_mul(&acc, &pe, "factorization value")?;
        }
        Ok(acc)
    }

    /// σ evaluated multiplicatively: the product of (p^(e+1) - 1) / (p - 1).
    pub fn divisor_sum<T: Natural>(&self) -> Result<T> {
        let mut acc = T::one();
        for &(p, e) in &self.factors {
            let p_t = lift::<T>(p)?;
            let top = checked_pow(&p_t, e + 1, "divisor sum")?;
            let term = (top - T::one()) / (p_t - T::one());
            acc = checked_mul(&acc, &term, "divisor sum")?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn checked_pow<T: Natural>(base: &T, exp: u32, what: &'static str) -> Result<T> {
    let mut acc = T::one();
    for _ in 0..exp {
        acc = checked_mul(&acc, base, what)?;
    }
    Ok(acc)
}

// Past this size a long trial-division run is likely; test the cofactor for
// primality first.
const PRIMALITY_SHORTCUT: u64 = 1 << 40;

fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    fn take(n: &mut u64, d: u64, out: &mut Vec<(u64, u32)>) -> bool {
        let mut e = 0;
        while (*n).is_multiple_of(d) {
            *n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        e > 0
    }
    let mut out = Vec::new();
    for d in [2, 3, 5] {
        take(&mut n, d, &mut out);
    }
    // mod-30 wheel starting at 7
    const STEPS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut d: u64 = 7;
    let mut step = 0;
    let mut cofactor_prime = n >= PRIMALITY_SHORTCUT && is_prime_u64(n);
    while !cofactor_prime && d.saturating_mul(d) <= n {
        if take(&mut n, d, &mut out) {
            cofactor_prime = n >= PRIMALITY_SHORTCUT && is_prime_u64(n);
        }
        d += STEPS[step];
        step = (step + 1) % STEPS.len();
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Factorizes `n >= 1` by wheel trial division.
pub fn factorize<T: Natural>(n: &T) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::domain("cannot factorize 0"));
    }
    Ok(Factorization {
        factors: factor_u64(to_u64(n)?),
    })
}

/// σ(n), the sum of all divisors of `n`.
pub fn divisor_sum<T: Natural>(n: &T) -> Result<T> {
    factorize(n)?.divisor_sum()
}

/// σ(n) - n, the sum of the proper divisors.
pub fn aliquot_sum<T: Natural>(n: &T) -> Result<T> {
    Ok(divisor_sum(n)? - n.clone())
}

/// Whether σ(n) = 2n.
pub fn is_perfect_number<T: Natural>(n: &T) -> Result<bool> {
    let twice = checked_mul(&lift::<T>(2)?, n, "2n")?;
    Ok(divisor_sum(n)? == twice)
}

/// Every even perfect number `<= limit`, from the Mersenne-prime form
/// 2^(r-1) * (2^r - 1).
///
/// Each candidate is re-checked through its factorization. Limits large
/// enough to need a Mersenne number of 2^64 or more are rejected.
pub fn even_perfect_numbers<T: Natural>(limit: &T) -> Result<Vec<T>> {
    let two = lift::<T>(2)?;
    let mut out = Vec::new();
    for r in 2u32.. {
        // an overflowing candidate is necessarily above `limit`
        let Ok(half) = checked_pow(&two, r - 1, "even perfect number") else {
            break;
        };
        let Some(full) = half.checked_mul(&two) else {
            break;
        };
        let mersenne = full - T::one();
        match half.checked_mul(&mersenne) {
            Some(c) if &c <= limit => {}
            _ => break,
        }
        let candidate = half * mersenne.clone();
        if !is_prime(&mersenne)? {
            continue;
        }
        let m = to_u64(&mersenne)?;
        let sigma: T = Factorization::from_pairs([(2, r - 1), (m, 1)])?.divisor_sum()?;
        let twice = checked_mul(&two, &candidate, "even perfect number")?;
        if sigma != twice {
            return Err(Error::domain(format!(
                "classification produced {candidate}, which is not perfect"
            )));
        }
        out.push(candidate);
    }
    Ok(out)
}

/// `a/b` in lowest terms, always with the denominator shown.
pub fn format_ratio<T: Natural>(r: &Ratio<T>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// σ(n)/n in lowest terms.
pub fn abundancy<T: Natural>(n: &T) -> Result<Ratio<T>> {
    let sigma = divisor_sum(n)?;
    Ok(Ratio::new(sigma, n.clone()))
}
