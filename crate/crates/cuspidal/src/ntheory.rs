//! Exact integer and rational number-theoretic primitives.
//!
//! Everything downstream (cusp orders, modularity congruences, lattice
//! normal forms) runs on exact arithmetic: `BigInt` integers and reduced
//! `BigRational` values. No floating point appears anywhere in the crate;
//! the orders at cusps are rationals with denominators dividing 24N and
//! the modularity criteria are congruences, both of which floats would
//! corrupt.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number, always reduced, denominator positive.
pub type Rational = BigRational;

/// Shorthand for a rational from two machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NtheoryError {
    #[error("jacobi symbol (a|n) requires odd positive n, got n = {0}")]
    EvenModulus(i64),
}

/// Greatest common divisor of two unsigned machine integers.
pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Least common multiple.
pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// Inverse of `a` modulo `n`, when it exists. `modinv(x, 1) = Some(0)`.
pub fn modinv(a: u64, n: u64) -> Option<u64> {
    assert!(n >= 1);
    if n == 1 {
        return Some(0);
    }
    // Extended Euclid on (a mod n, n).
    let (mut r0, mut r1) = ((a % n) as i128, n as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(n as i128) as u64)
}

/// Trial division by 2, 3, then a mod-30 wheel. Targeted levels stay
/// below ~10^5, so nothing faster is needed.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut n = n;
    let mut out = Vec::new();
    for p in [2u64, 3, 5] {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    // Candidates coprime to 30 starting at 7.
    const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut w = 0usize;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += WHEEL[w];
        w = (w + 1) % WHEEL.len();
    }
    if n > 1 {
        out.push((n, 1));
    }
    out.sort_unstable();
    out
}

/// Sorted list of the positive divisors of `n`.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let mut next = Vec::with_capacity(ds.len() * (e as usize + 1));
        for d in &ds {
            let mut pk = 1u64;
            for _ in 0..=e {
                next.push(d * pk);
                pk = pk.saturating_mul(p);
            }
        }
        ds = next;
    }
    ds.sort_unstable();
    ds
}

/// Distinct prime divisors of `n`.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// The Moebius function: 0 on non-squarefree n, otherwise (-1)^{#primes}.
pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1, "moebius requires n >= 1");
    let fac = factorize(n);
    if fac.iter().any(|&(_, e)| e > 1) {
        return 0;
    }
    if fac.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler's totient, the order of (Z/n)^x.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi requires n >= 1");
    let mut out = n;
    for (p, _) in factorize(n) {
        out = out / p * (p - 1);
    }
    out
}

/// True iff n is squarefree.
pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Odd part of n (n with all factors of two removed).
pub fn odd_part(mut n: u64) -> u64 {
    assert!(n >= 1);
    while n % 2 == 0 {
        n /= 2;
    }
    n
}

/// Fractional part {x} in [0, 1).
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// The second Bernoulli function P2(x) = B2({x}) with B2(t) = t^2 - t + 1/6.
///
/// P2 is periodic with period 1 and even: P2(-x) = P2(1 - x) = P2(x).
pub fn p2(x: &Rational) -> Rational {
    let t = frac(x);
    &t * &t - &t + rat(1, 6)
}

/// Sum of P2 over a scaled unit group,
///
/// ```text
/// sum_{a in (Z/x)^x} P2(a n / y) = (x / 6 y^2) sum_{k | x} (mu(k)/k) (y, kn)^2,
/// ```
///
/// for y | x and any integer n, evaluated by the closed form on the right.
/// The gcd convention (y, 0) = y makes the n = 0 case agree with the plain
/// unit sum sum_a P2(0) = phi(x)/6.
pub fn unit_p2_sum(x: u64, y: u64, n: i64) -> Rational {
    assert!(x >= 1 && y >= 1 && x % y == 0, "unit_p2_sum requires y | x");
    let mut acc = Rational::zero();
    for k in divisors(x) {
        let mu = moebius(k);
        if mu == 0 {
            continue;
        }
        // (y, kn) with the (y, 0) = y convention; gcd on magnitudes.
        let kn = (k as i64).checked_mul(n).expect("kn overflow").unsigned_abs();
        let g = if kn == 0 { y } else { gcd(y, kn) };
        let term = Rational::new(
            BigInt::from(mu) * BigInt::from(g) * BigInt::from(g),
            BigInt::from(k),
        );
        acc += term;
    }
    acc * Rational::new(BigInt::from(x), BigInt::from(6u64) * BigInt::from(y) * BigInt::from(y))
}

/// The Legendre-Jacobi symbol (a|n) for odd positive n.
pub fn jacobi(a: i64, n: u64) -> Result<i64, NtheoryError> {
    if n % 2 == 0 {
        return Err(NtheoryError::EvenModulus(n as i64));
    }
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut sign = 1i64;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        Ok(sign)
    } else {
        Ok(0)
    }
}

/// A nonzero rational in factored form: a map prime -> exponent with no
/// zero exponents stored. Negative exponents encode denominators.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FactoredInteger {
    exponents: BTreeMap<u64, BigInt>,
}

impl FactoredInteger {
    pub fn one() -> Self {
        Self::default()
    }

    /// Factored form of a positive integer.
    pub fn from_u64(n: u64) -> Self {
        let mut out = Self::default();
        for (p, e) in factorize(n) {
            out.exponents.insert(p, BigInt::from(e));
        }
        out
    }

    /// Multiply in n^e.
    pub fn mul_pow(&mut self, n: u64, e: &BigInt) {
        if e.is_zero() {
            return;
        }
        for (p, k) in factorize(n) {
            let entry = self.exponents.entry(p).or_insert_with(BigInt::zero);
            *entry += BigInt::from(k) * e;
            if entry.is_zero() {
                self.exponents.remove(&p);
            }
        }
    }

    pub fn exponents(&self) -> &BTreeMap<u64, BigInt> {
        &self.exponents
    }

    /// Squarefree kernel: the product of the primes carrying odd exponents.
    /// Equals 1 exactly when the factored rational is a perfect square.
    pub fn squarefree_kernel(&self) -> BigInt {
        let mut out = BigInt::one();
        for (p, e) in &self.exponents {
            if e.abs() % 2 == BigInt::one() {
                out *= BigInt::from(*p);
            }
        }
        out
    }
}

/// True iff the factored rational is a square in Q^x, i.e. every stored
/// exponent is even.
pub fn is_rational_square(f: &FactoredInteger) -> bool {
    f.squarefree_kernel().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct-sum oracle for `unit_p2_sum`: term-by-term over (Z/x)^x.
    pub(crate) fn unit_p2_sum_direct(x: u64, y: u64, n: i64) -> Rational {
        let mut acc = Rational::zero();
        for alpha in 1..=x {
            if gcd(alpha, x) != 1 {
                continue;
            }
            let arg = Rational::new(BigInt::from(alpha as i64 * n), BigInt::from(y));
            acc += p2(&arg);
        }
        acc
    }

    #[test]
    fn moebius_small_values() {
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(12), 0);
        assert_eq!(moebius(30), -1);
    }

    #[test]
    fn moebius_sum_is_identity_indicator() {
        for n in 1..=10_000u64 {
            let s: i64 = divisors(n).into_iter().map(moebius).sum();
            assert_eq!(s, i64::from(n == 1), "sum_(d|n) mu(d) failed at n = {n}");
        }
    }

    #[test]
    fn euler_phi_small_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(euler_phi(15), 8);
    }

    #[test]
    fn p2_fixed_values() {
        assert_eq!(p2(&rat_int(0)), rat(1, 6));
        assert_eq!(p2(&rat(1, 3)), rat(-1, 18));
        assert_eq!(p2(&rat(-1, 3)), rat(-1, 18));
    }

    #[test]
    fn p2_periodic_and_even() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
        for _ in 0..1000 {
            let num = rng.gen_range(-10_000i64..10_000);
            let den = rng.gen_range(1i64..500);
            let x = rat(num, den);
            let shifted = &x + rat_int(1);
            assert_eq!(p2(&x), p2(&shifted));
            assert_eq!(p2(&x), p2(&(-&x)));
        }
    }

    #[test]
    fn unit_p2_sum_fixed_values() {
        assert_eq!(unit_p2_sum(1, 1, 0), rat(1, 6));
        assert_eq!(unit_p2_sum(3, 3, 1), rat(-1, 9));
        assert_eq!(unit_p2_sum(3, 3, 0), rat(1, 3));
    }

    #[test]
    fn unit_p2_sum_matches_direct_sum() {
        for x in 1..=60u64 {
            for y in divisors(x) {
                for n in 0..y.min(12) {
                    assert_eq!(
                        unit_p2_sum(x, y, n as i64),
                        unit_p2_sum_direct(x, y, n as i64),
                        "mismatch at x={x} y={y} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn unit_p2_sum_specializes_to_unit_sum() {
        // sum_{a in (Z/x)^x} P2(a/x) = (1/6x) prod_{p|x} (1 - p)
        for x in 1..=200u64 {
            let mut prod = Rational::one();
            for p in prime_divisors(x) {
                prod *= rat_int(1 - p as i64);
            }
            let expected = prod / rat_int(6 * x as i64);
            assert_eq!(unit_p2_sum(x, x, 1), expected, "x = {x}");
        }
    }

    #[test]
    fn jacobi_small_values() {
        assert_eq!(jacobi(1, 1), Ok(1));
        assert_eq!(jacobi(2, 9), Ok(1));
        assert_eq!(jacobi(3, 5), Ok(-1));
        assert_eq!(jacobi(15, 9), Ok(0));
        assert!(jacobi(3, 8).is_err());
    }

    #[test]
    fn jacobi_matches_euler_criterion_for_primes() {
        for &p in &[3u64, 5, 7, 11, 13, 17, 19, 23, 29] {
            for a in 0..p as i64 {
                // a^((p-1)/2) mod p as an element of {0, 1, -1}.
                let mut pow = 1u64;
                for _ in 0..(p - 1) / 2 {
                    pow = pow * a.rem_euclid(p as i64) as u64 % p;
                }
                let euler = if pow == 0 {
                    0
                } else if pow == 1 {
                    1
                } else {
                    -1
                };
                assert_eq!(jacobi(a, p).unwrap(), euler, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn rational_square_detection() {
        assert!(is_rational_square(&FactoredInteger::one()));

        let mut f = FactoredInteger::one();
        f.mul_pow(11, &BigInt::from(-12));
        assert!(is_rational_square(&f));

        let mut g = FactoredInteger::one();
        g.mul_pow(11, &BigInt::from(-2));
        g.mul_pow(2, &BigInt::from(3));
        assert!(!is_rational_square(&g));
        assert_eq!(g.squarefree_kernel(), BigInt::from(2));
    }

    #[test]
    fn factorize_round_trip() {
        for n in 1..=5000u64 {
            let back: u64 = factorize(n).iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n);
        }
    }

    #[test]
    fn modinv_basics() {
        assert_eq!(modinv(2, 3), Some(2));
        assert_eq!(modinv(7, 1), Some(0));
        assert_eq!(modinv(2, 4), None);
        for n in 1..=50u64 {
            for a in 1..=n {
                if gcd(a, n) == 1 {
                    let inv = modinv(a, n).unwrap();
                    assert_eq!(a * inv % n, 1 % n);
                }
            }
        }
    }
}
