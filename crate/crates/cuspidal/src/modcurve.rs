//! Combinatorics of the modular curve X_0(N).
//!
//! A cusp of X_0(N) is written a/c with c a positive divisor of N and
//! (a, N) = 1; two cusps a/c and a'/c' coincide exactly when c = c' and
//! a = a' mod z, where z = (c, N/c). The cusp a/c is defined over the
//! cyclotomic field of z-th roots of unity, and for s prime to L the
//! Galois element sending a primitive L-th root of unity to its s-th
//! power sends a/c to (s* a)/c with s s* = 1 mod L.
//!
//! For every divisor m of N the context precomputes
//!
//! - `ell(m)`: the largest integer whose square divides N/m,
//! - `m' = N/m`, `m'' = m'/ell(m)`, `N'(m) = N/ell(m)`,
//!
//! and `L = ell(1)`. These control the unit family F[m,h] built in
//! [`crate::etafam`]: the label (m, h) is only meaningful for h modulo
//! `ell(m)`, and the basis index set pairs each m != N with the
//! exponents 0 <= h < phi(ell(m)). The divisor bijection `iota` with
//! `ell(m) = (iota(m), N/iota(m))` shows that the basis index set has
//! exactly (number of cusps) - 1 elements.

use crate::ntheory::{divisors, euler_phi, gcd, modinv, odd_part};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModCurveError {
    #[error("level must be a positive integer")]
    ZeroLevel,
    #[error("{0} does not divide the level {1}")]
    NotADivisor(u64, u64),
    #[error("numerator {0} is not coprime to the level {1}")]
    NotCoprime(i64, u64),
    #[error("{0} shares a factor with L = {1}")]
    NotCoprimeToL(u64, u64),
}

/// A canonical cusp a/c of X_0(N): c | N, (a, N) = 1, and a is the
/// smallest positive integer coprime to N in its residue class modulo
/// z = (c, N/c). Ordered by (c, a).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cusp {
    c: u64,
    a: u64,
}

impl Cusp {
    pub fn a(&self) -> u64 {
        self.a
    }

    /// The level of the cusp (its denominator).
    pub fn c(&self) -> u64 {
        self.c
    }
}

impl std::fmt::Display for Cusp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.a, self.c)
    }
}

#[derive(Debug, Clone)]
struct DivisorData {
    ell: u64,
    m_dprime: u64,
    n_prime: u64,
}

/// Precomputed divisor data for a fixed level N, plus the canonical cusp
/// list. Immutable after construction; queries are read-only.
#[derive(Debug, Clone)]
pub struct LevelContext {
    n: u64,
    divisors: Vec<u64>,
    data: Vec<DivisorData>,
    big_l: u64,
    n0: u64,
    cusps: Vec<Cusp>,
}

impl LevelContext {
    pub fn new(n: u64) -> Result<Self, ModCurveError> {
        if n == 0 {
            return Err(ModCurveError::ZeroLevel);
        }
        let divs = divisors(n);
        let data = divs
            .iter()
            .map(|&m| {
                let m_prime = n / m;
                let ell = largest_square_divisor_root(m_prime);
                DivisorData {
                    ell,
                    m_dprime: m_prime / ell,
                    n_prime: n / ell,
                }
            })
            .collect::<Vec<_>>();
        let big_l = data[0].ell;
        let mut ctx = LevelContext {
            n,
            divisors: divs,
            data,
            big_l,
            n0: odd_part(n),
            cusps: Vec::new(),
        };
        ctx.cusps = ctx.enumerate_cusps();
        Ok(ctx)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// All positive divisors of N, sorted.
    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    /// The divisors of N different from N itself (the index set for the
    /// unit family).
    pub fn proper_divisors(&self) -> &[u64] {
        &self.divisors[..self.divisors.len() - 1]
    }

    pub fn is_divisor(&self, m: u64) -> bool {
        m >= 1 && self.n % m == 0
    }

    fn idx(&self, m: u64) -> usize {
        debug_assert!(self.is_divisor(m), "{} does not divide {}", m, self.n);
        self.divisors.binary_search(&m).expect("divisor of N")
    }

    /// Largest integer whose square divides N/m.
    pub fn ell(&self, m: u64) -> u64 {
        self.data[self.idx(m)].ell
    }

    /// m' = N/m.
    pub fn m_prime(&self, m: u64) -> u64 {
        self.n / m
    }

    /// m'' = (N/m) / ell(m).
    pub fn m_dprime(&self, m: u64) -> u64 {
        self.data[self.idx(m)].m_dprime
    }

    /// N' = N / ell(m).
    pub fn n_prime(&self, m: u64) -> u64 {
        self.data[self.idx(m)].n_prime
    }

    /// L = ell(1), the largest integer whose square divides N.
    pub fn big_l(&self) -> u64 {
        self.big_l
    }

    /// The odd part of N.
    pub fn n0(&self) -> u64 {
        self.n0
    }

    /// Representatives of (Z/m'')^x / {+-1}: the integers in [1, m''/2]
    /// coprime to m'' (just {1} for m'' <= 2). The divisor-level results
    /// do not depend on this choice.
    pub fn unit_half_reps(&self, m: u64) -> Vec<u64> {
        let mpp = self.m_dprime(m);
        if mpp <= 2 {
            return vec![1];
        }
        (1..=mpp / 2).filter(|&a| gcd(a, mpp) == 1).collect()
    }

    /// Basis index set: all (m, h) with m a proper divisor of N and
    /// 0 <= h < phi(ell(m)). Has exactly (number of cusps) - 1 members.
    pub fn basis_labels(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for &m in self.proper_divisors() {
            for h in 0..euler_phi(self.ell(m)) {
                out.push((m, h));
            }
        }
        out
    }

    /// Full index set: all (m, h) with m a proper divisor of N and
    /// 0 <= h < ell(m). Every unit label is equivalent to exactly one of
    /// these, since F[m,h] depends only on h mod ell(m).
    pub fn full_labels(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for &m in self.proper_divisors() {
            for h in 0..self.ell(m) {
                out.push((m, h));
            }
        }
        out
    }

    fn enumerate_cusps(&self) -> Vec<Cusp> {
        let mut out = Vec::new();
        for &c in &self.divisors {
            let z = gcd(c, self.n / c);
            for r in 1..=z {
                if gcd(r, z) != 1 {
                    continue;
                }
                out.push(Cusp {
                    c,
                    a: self.canonical_numerator(r, z),
                });
            }
        }
        out.sort();
        out
    }

    /// Smallest positive integer coprime to N congruent to r mod z.
    fn canonical_numerator(&self, r: u64, z: u64) -> u64 {
        if z == 1 {
            return 1;
        }
        debug_assert!(gcd(r, z) == 1, "numerator class must be a unit mod z");
        let mut a = r % z;
        if a == 0 {
            a = z;
        }
        loop {
            if gcd(a, self.n) == 1 {
                return a;
            }
            a += z;
        }
    }

    /// The canonical cusps of X_0(N), sorted by (c, a). Contains
    /// infinity = 1/N and zero = 1/1.
    pub fn cusps(&self) -> &[Cusp] {
        &self.cusps
    }

    /// The cusp at infinity, 1/N.
    pub fn infinity(&self) -> Cusp {
        Cusp { c: self.n, a: 1 }
    }

    /// The cusp zero, 1/1.
    pub fn zero_cusp(&self) -> Cusp {
        Cusp { c: 1, a: 1 }
    }

    /// Canonical representative of the cusp a/c.
    pub fn cusp(&self, a: i64, c: u64) -> Result<Cusp, ModCurveError> {
        if !self.is_divisor(c) {
            return Err(ModCurveError::NotADivisor(c, self.n));
        }
        if gcd(a.unsigned_abs() % self.n.max(1), self.n) != 1 && self.n > 1 {
            return Err(ModCurveError::NotCoprime(a, self.n));
        }
        let z = gcd(c, self.n / c);
        let r = a.rem_euclid(z as i64) as u64;
        Ok(Cusp {
            c,
            a: self.canonical_numerator(r, z),
        })
    }

    /// Whether a/c and a'/c' represent the same cusp: c = c' and
    /// a = a' mod (c, N/c).
    pub fn cusp_equiv(&self, a: i64, c: u64, a2: i64, c2: u64) -> Result<bool, ModCurveError> {
        if !self.is_divisor(c) {
            return Err(ModCurveError::NotADivisor(c, self.n));
        }
        if !self.is_divisor(c2) {
            return Err(ModCurveError::NotADivisor(c2, self.n));
        }
        for a in [a, a2] {
            if gcd(a.unsigned_abs() % self.n.max(1), self.n) != 1 && self.n > 1 {
                return Err(ModCurveError::NotCoprime(a, self.n));
            }
        }
        if c != c2 {
            return Ok(false);
        }
        let z = gcd(c, self.n / c) as i64;
        Ok((a - a2).rem_euclid(z) == 0)
    }

    /// Width of the cusp a/c: N / (c^2, N).
    pub fn cusp_width(&self, cusp: &Cusp) -> u64 {
        self.n / gcd(cusp.c * cusp.c, self.n)
    }

    /// z = (c, N/c): the cusp is defined over the field of z-th roots of
    /// unity, hence rational exactly when z <= 2.
    pub fn field_modulus(&self, cusp: &Cusp) -> u64 {
        gcd(cusp.c, self.n / cusp.c)
    }

    /// The Galois element for s (prime to L) sends a/c to (s* a)/c with
    /// s s* = 1 mod L. Returns the canonical representative.
    pub fn galois_act(&self, s: u64, cusp: &Cusp) -> Result<Cusp, ModCurveError> {
        if gcd(s % self.big_l.max(1), self.big_l) != 1 && self.big_l > 1 {
            return Err(ModCurveError::NotCoprimeToL(s, self.big_l));
        }
        let z = self.field_modulus(cusp);
        if z <= 1 {
            return Ok(*cusp);
        }
        // s* mod L determines s* mod z since z | L.
        let s_star = modinv(s % self.big_l, self.big_l).expect("s invertible mod L");
        let r = (s_star % z) * (cusp.a % z) % z;
        Ok(Cusp {
            c: cusp.c,
            a: self.canonical_numerator(r, z),
        })
    }

    /// Orbits of the cusps under the full Galois action, each sorted,
    /// listed in order of their smallest member.
    pub fn galois_orbits(&self) -> Vec<Vec<Cusp>> {
        let mut seen = std::collections::BTreeSet::new();
        let mut orbits = Vec::new();
        for cusp in &self.cusps {
            if seen.contains(cusp) {
                continue;
            }
            let mut orbit = Vec::new();
            for s in 1..=self.big_l {
                if gcd(s, self.big_l) != 1 {
                    continue;
                }
                let image = self.galois_act(s, cusp).expect("s coprime to L");
                if seen.insert(image) {
                    orbit.push(image);
                }
            }
            orbit.sort();
            orbits.push(orbit);
        }
        orbits
    }

    /// The divisor bijection iota with ell(m) = (iota(m), N/iota(m)).
    /// Per prime power p^r || N with p^f || m it maps the exponent f to
    /// floor((r+f+1)/2) for even f and floor((r-f)/2) for odd f.
    pub fn iota(&self, m: u64) -> u64 {
        assert!(self.is_divisor(m), "iota requires m | N");
        let mut out = 1u64;
        for (p, r) in crate::ntheory::factorize(self.n) {
            let mut f = 0u32;
            let mut mm = m;
            while mm % p == 0 {
                mm /= p;
                f += 1;
            }
            let g = if f % 2 == 0 { (r + f + 1) / 2 } else { (r - f) / 2 };
            out *= p.pow(g);
        }
        out
    }
}

/// Largest integer whose square divides n.
pub fn largest_square_divisor_root(n: u64) -> u64 {
    let mut out = 1u64;
    for (p, e) in crate::ntheory::factorize(n) {
        out *= p.pow(e / 2);
    }
    out
}
