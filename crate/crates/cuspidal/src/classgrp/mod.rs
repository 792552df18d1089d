//! The cuspidal subgroup, the rational cuspidal divisor class group, and
//! the rational cuspidal subgroup of J_0(N), as finite abelian groups.
//!
//! Working lattices live in Z^(number of cusps), coordinates over the
//! canonical cusp list:
//!
//! - the degree-zero lattice of integral cuspidal divisors;
//! - the unit divisor lattice: divisors of modular units, obtained by
//!   pushing the exponent lattice cut out by the five-condition
//!   criterion through the divisor map (needs the criterion hypotheses);
//! - the eta unit lattice: divisors of eta quotients passing the
//!   Ligozat conditions, available at every level;
//! - the Galois-invariant sublattice (divisors constant on cusp orbits)
//!   and the stable sublattice (divisors moved by Galois only within the
//!   unit lattice).
//!
//! The cuspidal subgroup C_N is degree-zero over units; the rational
//! cuspidal divisor class group C(N) is invariant degree-zero over eta
//! units; the rational cuspidal subgroup C_N(Q) is stable over units.
//! The main verification checks that the invariant divisors and the
//! stable divisors generate the same subgroup of C_N: equality of
//! sublattices after adding the unit lattice, not merely agreement of
//! abstract invariant factors.
//!
//! An averaging construction rounds a Galois-stable class of order q^r
//! to a rational representative when q does not divide phi(L): summing
//! the Galois orbit of D gives a rational divisor linearly equivalent to
//! phi(L) D, and inverting phi(L) mod q^r recovers the class.

pub mod intmat;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

pub use intmat::{congruence_kernel, lattice_preimage, same_lattice, IntMat};

use crate::etafam::{
    eta_order, f_divisor, f_order, f_order_special, CuspidalDivisor, FLabel, SpecialCusp,
};
use crate::modcurve::LevelContext;
use crate::ntheory::{euler_phi, factorize, gcd, modinv, Rational};
use crate::unitcheck::{check_hypotheses, HypothesisNotMet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassGroupError {
    #[error(transparent)]
    Hypothesis(#[from] HypothesisNotMet),
    #[error("divisor has non-integer coefficients")]
    NonIntegral,
    #[error("divisor has nonzero degree {0}")]
    NonZeroDegree(Rational),
    #[error("class is not Galois-stable: sigma_{s}(D) - D is not a unit divisor")]
    NotGaloisStable { s: u64 },
    #[error("averaging needs gcd(q, phi(L)) = 1, got q = {q} with phi(L) = {phi_l}")]
    BadOrder { q: u64, phi_l: u64 },
    #[error("the class of the divisor does not have order dividing {q}^{r}")]
    ClassOrderExceedsBound { q: u64, r: u32 },
}

/// A finite abelian group as its invariant factor decomposition
/// d_1 | d_2 | ... | d_k with every d_i > 1; the trivial group is the
/// empty list.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AbelianGroup {
    invariant_factors: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Builds the group from a list of Smith diagonal entries: drops
    /// units, keeps the divisibility chain in increasing order.
    fn from_diagonal(diag: Vec<BigInt>) -> Self {
        let mut invariant_factors: Vec<BigInt> = diag
            .into_iter()
            .filter(|d| !d.is_one() && !d.is_zero())
            .collect();
        invariant_factors.sort();
        AbelianGroup { invariant_factors }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors
            .iter()
            .fold(BigInt::one(), |acc, d| acc * d)
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// A sublattice of the integral cuspidal divisors of degree zero, stored
/// as a Hermite basis, coordinates over the canonical cusps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorLattice {
    level: u64,
    basis: IntMat,
}

impl DivisorLattice {
    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn basis(&self) -> &IntMat {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn contains_vec(&self, divisor: &[BigInt]) -> bool {
        self.basis.contains(divisor)
    }

    pub fn contains(&self, divisor: &CuspidalDivisor, ctx: &LevelContext) -> bool {
        match divisor.to_int_vector(ctx) {
            Some(v) => self.contains_vec(&v),
            None => false,
        }
    }
}

/// Basis of the degree-zero sublattice of Z^n: columns e_i - e_{n-1}.
fn degree_zero_basis(n: usize) -> IntMat {
    let mut out = IntMat::zero(n, n.saturating_sub(1));
    for j in 0..n.saturating_sub(1) {
        out[(j, j)] = BigInt::one();
        out[(n - 1, j)] = BigInt::from(-1);
    }
    out
}

/// The lattice of exponent vectors over the full label set
/// {(m, h) : m | N proper, 0 <= h < ell(m)} whose F-product is a modular
/// function on X_0(N), cut out by the five conditions as congruences.
/// Columns form a basis; the coordinate order is `ctx.full_labels()`.
/// Orders are scaled by 24N, which clears every denominator.
pub fn unit_exponent_lattice(ctx: &LevelContext) -> Result<IntMat, HypothesisNotMet> {
    check_hypotheses(ctx)?;
    let labels = ctx.full_labels();
    let scale = BigInt::from(24u64) * BigInt::from(ctx.n());
    let half_cusp = ctx.cusp(1, ctx.n0()).expect("1/N0 is a cusp");

    let to_int = |x: Rational| -> BigInt {
        let scaled = x * Rational::from_integer(scale.clone());
        assert!(scaled.is_integer(), "order denominator exceeds 24N");
        scaled.to_integer()
    };

    let mut row_inf = Vec::with_capacity(labels.len());
    let mut row_zero = Vec::with_capacity(labels.len());
    let mut row_half = Vec::with_capacity(labels.len());
    let mut row_mod_l = Vec::with_capacity(labels.len());
    for &(m, h) in &labels {
        let label = FLabel::new(ctx, m, h).expect("full label");
        row_inf.push(to_int(
            f_order_special(&label, SpecialCusp::Infinity, ctx).expect("infinity"),
        ));
        row_zero.push(to_int(
            f_order_special(&label, SpecialCusp::Zero, ctx).expect("zero"),
        ));
        row_half.push(to_int(f_order(&label, &half_cusp, ctx)));
        row_mod_l
            .push(BigInt::from(m) * BigInt::from(euler_phi(ctx.m_dprime(m))) * BigInt::from(h));
    }
    let mut rows = vec![
        (row_inf, scale.clone()),
        (row_zero, scale.clone()),
        (row_half, scale),
        (row_mod_l, BigInt::from(ctx.big_l())),
    ];
    for (p, _) in factorize(ctx.n()) {
        if p == 2 {
            continue;
        }
        let row: Vec<BigInt> = labels
            .iter()
            .map(|&(m, _)| {
                let fac = factorize(ctx.m_dprime(m));
                if fac.len() == 1 && fac[0].0 == p {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            })
            .collect();
        rows.push((row, BigInt::from(2)));
    }
    Ok(congruence_kernel(&rows, labels.len()))
}

/// The lattice of divisors of modular units: the image of the exponent
/// lattice under e -> sum e_{m,h} div F[m,h]. All entries are integers
/// and every column has degree zero.
pub fn unit_divisor_lattice(ctx: &LevelContext) -> Result<DivisorLattice, HypothesisNotMet> {
    let exponents = unit_exponent_lattice(ctx)?;
    let labels = ctx.full_labels();
    let table: Vec<CuspidalDivisor> = labels
        .iter()
        .map(|&(m, h)| f_divisor(&FLabel::new(ctx, m, h).expect("full label"), ctx))
        .collect();

    let mut cols = Vec::with_capacity(exponents.cols());
    for j in 0..exponents.cols() {
        let mut div = CuspidalDivisor::new(ctx.n());
        for (i, d) in table.iter().enumerate() {
            div.add_scaled(d, &Rational::from_integer(exponents[(i, j)].clone()));
        }
        let vec = div
            .to_int_vector(ctx)
            .expect("divisor of a certified modular unit is integral");
        debug_assert!(vec.iter().fold(BigInt::zero(), |a, b| a + b).is_zero());
        cols.push(vec);
    }
    let basis = IntMat::from_cols(ctx.cusps().len(), &cols).lattice_basis();
    assert_eq!(
        basis.cols() + 1,
        ctx.cusps().len(),
        "unit divisor lattice must have full rank in the degree-zero lattice"
    );
    Ok(DivisorLattice {
        level: ctx.n(),
        basis,
    })
}

/// The lattice of divisors of eta quotients passing the Ligozat
/// conditions, as a Hermite basis. Available at every level.
pub fn eta_unit_divisor_lattice(ctx: &LevelContext) -> IntMat {
    let divisors = ctx.divisors();
    let n = ctx.n();
    let mut rows: Vec<(Vec<BigInt>, BigInt)> = vec![
        (
            divisors.iter().map(|_| BigInt::one()).collect(),
            BigInt::zero(),
        ),
        (
            divisors.iter().map(|&d| BigInt::from(d)).collect(),
            BigInt::from(24),
        ),
        (
            divisors.iter().map(|&d| BigInt::from(n / d)).collect(),
            BigInt::from(24),
        ),
    ];
    for (p, _) in factorize(n) {
        let row: Vec<BigInt> = divisors
            .iter()
            .map(|&d| {
                let mut v = 0u32;
                let mut d = d;
                while d % p == 0 {
                    d /= p;
                    v += 1;
                }
                BigInt::from(v)
            })
            .collect();
        rows.push((row, BigInt::from(2)));
    }
    let kernel = congruence_kernel(&rows, divisors.len());

    let mut cols = Vec::with_capacity(kernel.cols());
    for j in 0..kernel.cols() {
        let mut div = CuspidalDivisor::new(n);
        for (i, &d) in divisors.iter().enumerate() {
            if kernel[(i, j)].is_zero() {
                continue;
            }
            for cusp in ctx.cusps() {
                let order = eta_order(d, cusp, ctx).expect("divisor of N");
                div.add_coeff(
                    *cusp,
                    &(order * Rational::from_integer(kernel[(i, j)].clone())),
                );
            }
        }
        let vec = div
            .to_int_vector(ctx)
            .expect("divisor of a Ligozat unit is integral");
        cols.push(vec);
    }
    IntMat::from_cols(ctx.cusps().len(), &cols).lattice_basis()
}

/// Generators of (Z/L)^x: a lifted primitive root per odd prime power
/// factor, plus -1 and 5 for the two-part.
pub fn galois_generators(l: u64) -> Vec<u64> {
    if l <= 2 {
        return Vec::new();
    }
    let crt = |residue: u64, modulus: u64| -> u64 {
        // x = residue mod modulus, x = 1 mod (l / modulus).
        let rest = l / modulus;
        if rest == 1 {
            return residue % l;
        }
        let inv_rest = modinv(rest % modulus, modulus).expect("coprime factors");
        let inv_mod = modinv(modulus % rest, rest).expect("coprime factors");
        (residue % modulus * rest % l * inv_rest % l + modulus * inv_mod % l) % l
    };
    let mut out = Vec::new();
    for (p, e) in factorize(l) {
        let pe = p.pow(e);
        if p == 2 {
            if e >= 2 {
                out.push(crt(pe - 1, pe));
            }
            if e >= 3 {
                out.push(crt(5, pe));
            }
        } else {
            out.push(crt(primitive_root(p, e), pe));
        }
    }
    out
}

/// Smallest primitive root modulo p^e for an odd prime p.
fn primitive_root(p: u64, e: u32) -> u64 {
    let pe = p.pow(e);
    let phi = euler_phi(pe);
    let prime_parts = crate::ntheory::prime_divisors(phi);
    let pow_mod = |base: u64, mut exp: u64| -> u64 {
        let mut acc = 1u128;
        let mut b = base as u128 % pe as u128;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % pe as u128;
            }
            b = b * b % pe as u128;
            exp >>= 1;
        }
        acc as u64
    };
    'candidates: for g in 2..pe {
        if gcd(g, pe) != 1 {
            continue;
        }
        for &q in &prime_parts {
            if pow_mod(g, phi / q) == 1 {
                continue 'candidates;
            }
        }
        return g;
    }
    unreachable!("odd prime powers have primitive roots");
}

/// Permutation matrix of the Galois element for s on the canonical cusp
/// coordinates.
fn galois_permutation_matrix(s: u64, ctx: &LevelContext) -> IntMat {
    let cusps = ctx.cusps();
    let index = |c: &crate::modcurve::Cusp| cusps.binary_search(c).expect("canonical cusp");
    let mut out = IntMat::zero(cusps.len(), cusps.len());
    for (j, cusp) in cusps.iter().enumerate() {
        let image = ctx.galois_act(s, cusp).expect("s coprime to L");
        out[(index(&image), j)] = BigInt::one();
    }
    out
}

/// Basis of the lattice of Galois-invariant integral divisors of degree
/// zero: integer combinations of orbit-sum vectors with total degree 0.
fn invariant_deg0_basis(ctx: &LevelContext) -> IntMat {
    let cusps = ctx.cusps();
    let index = |c: &crate::modcurve::Cusp| cusps.binary_search(c).expect("canonical cusp");
    let orbits = ctx.galois_orbits();
    let mut orbit_matrix = IntMat::zero(cusps.len(), orbits.len());
    let mut sizes = Vec::with_capacity(orbits.len());
    for (j, orbit) in orbits.iter().enumerate() {
        for cusp in orbit {
            orbit_matrix[(index(cusp), j)] = BigInt::one();
        }
        sizes.push(vec![BigInt::from(orbit.len())]);
    }
    let size_row = IntMat::from_cols(1, &sizes);
    let combos = size_row.kernel();
    orbit_matrix.mul(&combos).lattice_basis()
}

/// Basis of the lattice of integral degree-zero divisors whose Galois
/// translates differ from them by unit divisors.
fn stable_deg0_basis(ctx: &LevelContext, units: &DivisorLattice) -> IntMat {
    let n = ctx.cusps().len();
    let gens = galois_generators(ctx.big_l());
    if gens.is_empty() {
        return degree_zero_basis(n).lattice_basis();
    }
    // Stack (P_s - 1) over the generators; the preimage of the direct
    // sum of unit lattices is the stable lattice.
    let mut stacked = IntMat::zero(n * gens.len(), n);
    let mut blocks = IntMat::zero(n * gens.len(), units.rank() * gens.len());
    for (k, &s) in gens.iter().enumerate() {
        let p = galois_permutation_matrix(s, ctx);
        for i in 0..n {
            for j in 0..n {
                let mut v = p[(i, j)].clone();
                if i == j {
                    v -= BigInt::one();
                }
                stacked[(k * n + i, j)] = v;
            }
            for j in 0..units.rank() {
                blocks[(k * n + i, k * units.rank() + j)] = units.basis()[(i, j)].clone();
            }
        }
    }
    let preimage = lattice_preimage(&stacked, &blocks);
    // Intersect with degree zero.
    let degree_cols: Vec<Vec<BigInt>> = (0..preimage.cols())
        .map(|j| {
            vec![preimage
                .col(j)
                .iter()
                .fold(BigInt::zero(), |acc, v| acc + v)]
        })
        .collect();
    let degree_row = IntMat::from_cols(1, &degree_cols);
    let combos = degree_row.kernel();
    preimage.mul(&combos).lattice_basis()
}

/// Invariant factors of the quotient of the lattice spanned by `basis`
/// by the sublattice generated by `sub`; panics if `sub` is not inside
/// the lattice or the quotient is infinite.
fn quotient_invariants(basis: &IntMat, sub: &IntMat) -> AbelianGroup {
    let rank = basis.cols();
    let mut coords = Vec::with_capacity(sub.cols());
    for j in 0..sub.cols() {
        let x = basis
            .solve(&sub.col(j))
            .expect("sublattice generator outside the ambient lattice");
        coords.push(x);
    }
    let coord_matrix = IntMat::from_cols(rank, &coords);
    let (diag, _, _) = coord_matrix.snf();
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    assert_eq!(nonzero, rank, "quotient is not finite");
    AbelianGroup::from_diagonal(diag)
}

/// The cuspidal subgroup C_N: degree-zero integral cuspidal divisors
/// modulo divisors of modular units.
pub fn full_cuspidal_group(ctx: &LevelContext) -> Result<AbelianGroup, HypothesisNotMet> {
    let units = unit_divisor_lattice(ctx)?;
    let ambient = degree_zero_basis(ctx.cusps().len());
    Ok(quotient_invariants(&ambient, units.basis()))
}

/// The rational cuspidal divisor class group C(N): Galois-invariant
/// degree-zero integral divisors modulo divisors of Ligozat eta
/// quotients. Computable at every level.
pub fn rational_cuspidal_group(ctx: &LevelContext) -> AbelianGroup {
    let invariant = invariant_deg0_basis(ctx);
    let eta_units = eta_unit_divisor_lattice(ctx);
    quotient_invariants(&invariant, &eta_units)
}

/// The rational cuspidal subgroup C_N(Q): divisors whose classes are
/// fixed by the Galois action, modulo unit divisors.
pub fn rational_cuspidal_subgroup(ctx: &LevelContext) -> Result<AbelianGroup, HypothesisNotMet> {
    let units = unit_divisor_lattice(ctx)?;
    let stable = stable_deg0_basis(ctx, &units);
    Ok(quotient_invariants(&stable, units.basis()))
}

/// Whether an integral degree-zero cuspidal divisor is the divisor of a
/// modular unit, by membership in the unit divisor lattice.
pub fn principality_test(
    divisor: &CuspidalDivisor,
    ctx: &LevelContext,
) -> Result<bool, ClassGroupError> {
    let units = unit_divisor_lattice(ctx)?;
    principality_test_in(divisor, &units, ctx)
}

/// Membership variant reusing a precomputed unit lattice.
pub fn principality_test_in(
    divisor: &CuspidalDivisor,
    units: &DivisorLattice,
    ctx: &LevelContext,
) -> Result<bool, ClassGroupError> {
    let Some(vec) = divisor.to_int_vector(ctx) else {
        return Err(ClassGroupError::NonIntegral);
    };
    let degree = divisor.degree();
    if !degree.is_zero() {
        return Err(ClassGroupError::NonZeroDegree(degree));
    }
    Ok(units.contains_vec(&vec))
}

/// Report of the subgroup-equality verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainTheoremReport {
    pub level: u64,
    /// Whether the invariant divisors and the stable divisors span the
    /// same subgroup of C_N.
    pub holds: bool,
    /// Invariant factors of the image of the rational cuspidal divisor
    /// class group inside C_N.
    pub rational_class_group: AbelianGroup,
    /// Invariant factors of the rational cuspidal subgroup.
    pub rational_subgroup: AbelianGroup,
    /// Invariant factors of the full cuspidal subgroup, for context.
    pub cuspidal_group: AbelianGroup,
}

/// Checks that the rational cuspidal divisor class group equals the
/// rational cuspidal subgroup inside C_N: the lattice of invariant
/// divisors plus units must coincide with the lattice of stable
/// divisors. Subgroup equality, not merely isomorphic factor lists.
pub fn verify_main_theorem(ctx: &LevelContext) -> Result<MainTheoremReport, HypothesisNotMet> {
    let units = unit_divisor_lattice(ctx)?;
    let invariant = invariant_deg0_basis(ctx);
    let invariant_plus_units = invariant.hstack(units.basis()).lattice_basis();
    let stable = stable_deg0_basis(ctx, &units);
    let holds = same_lattice(&invariant_plus_units, &stable);
    Ok(MainTheoremReport {
        level: ctx.n(),
        holds,
        rational_class_group: quotient_invariants(&invariant_plus_units, units.basis()),
        rational_subgroup: quotient_invariants(&stable, units.basis()),
        cuspidal_group: quotient_invariants(&degree_zero_basis(ctx.cusps().len()), units.basis()),
    })
}

/// Rounds a Galois-stable class to a rational representative: returns
/// (k, D') with D' the sum over (Z/L)^x of the Galois translates of D
/// and k phi(L) = 1 mod q^r, so that D - k D' is a unit divisor.
/// Requires the class of D to have order dividing q^r with q coprime to
/// phi(L).
pub fn averaging_rationalize(
    divisor: &CuspidalDivisor,
    q: u64,
    r: u32,
    ctx: &LevelContext,
) -> Result<(BigInt, CuspidalDivisor), ClassGroupError> {
    if divisor.to_int_vector(ctx).is_none() {
        return Err(ClassGroupError::NonIntegral);
    }
    let degree = divisor.degree();
    if !degree.is_zero() {
        return Err(ClassGroupError::NonZeroDegree(degree));
    }
    let l = ctx.big_l();
    let phi_l = euler_phi(l);
    if gcd(q, phi_l) != 1 {
        return Err(ClassGroupError::BadOrder { q, phi_l });
    }
    let units = unit_divisor_lattice(ctx)?;

    for s in galois_generators(l) {
        let moved = divisor.galois_permute(s, ctx).expect("s coprime to L");
        if !units.contains(&moved.sub(divisor), ctx) {
            return Err(ClassGroupError::NotGaloisStable { s });
        }
    }

    let q_pow_r = BigInt::from(q).pow(r);
    let killed = divisor.scaled(&Rational::from_integer(q_pow_r.clone()));
    if !units.contains(&killed, ctx) {
        return Err(ClassGroupError::ClassOrderExceedsBound { q, r });
    }

    let mut rational = CuspidalDivisor::new(ctx.n());
    for s in 1..=l {
        if gcd(s, l) != 1 {
            continue;
        }
        rational.add_scaled(
            &divisor.galois_permute(s, ctx).expect("s coprime to L"),
            &Rational::one(),
        );
    }

    // k = phi(L)^{-1} mod q^r (k = 1 for the trivial modulus).
    let k = if q_pow_r.is_one() {
        BigInt::one()
    } else {
        let e = BigInt::from(phi_l).extended_gcd(&q_pow_r);
        debug_assert!(e.gcd.is_one());
        e.x.mod_floor(&q_pow_r)
    };

    let difference = divisor.sub(&rational.scaled(&Rational::from_integer(k.clone())));
    assert!(
        principality_test_in(&difference, &units, ctx) == Ok(true),
        "averaged representative must be linearly equivalent"
    );
    Ok((k, rational))
}
