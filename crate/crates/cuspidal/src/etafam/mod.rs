//! The two unit families on X_0(N) and their cuspidal divisors.
//!
//! The classical family is the eta quotients prod_{d | N} eta(d tau)^{r_d};
//! the order of eta(d tau) at a cusp a/c is N (c,d)^2 / (24 d (c^2, N)).
//!
//! The second family F[m,h], indexed by a proper divisor m of N and an
//! exponent h modulo ell(m), is built out of generalized Dedekind eta
//! functions
//!
//! ```text
//! E_{g,h}(tau) = q^{B2(g/N)/2} prod_{n >= 1}
//!     (1 - zeta_N^h q^{n-1+g/N}) (1 - zeta_N^{-h} q^{n-g/N}),
//! ```
//!
//! as the product of E_{alpha m ell, delta h N'}(N' tau) over
//! representatives alpha of (Z/m'')^x / {+-1} (with alpha delta = 1 mod
//! m''), and as a square root of a single E when m'' = 2. Every modular
//! unit on X_0(N) is a product of F[m,h] up to a constant, which is what
//! makes the family the backbone of the cuspidal group computations in
//! [`crate::classgrp`].
//!
//! The order of F[m,h] at a cusp a/c is
//!
//! ```text
//! ell (N',c)^2 / (4 (c^2, N)) *
//!     sum_{alpha in (Z/m'')^x} P2(alpha a' / m'' + delta h c' / ell),
//! ```
//!
//! with a' = N' a / (N', c) and c' = c / (N', c); closed forms at the
//! cusps infinity, 0 and 1/N_0 (N_0 the odd part of N) avoid the sum.
//! A single F[m,h] is generally not modular, so these orders are honest
//! rationals; integrality appears exactly for the certified products of
//! [`crate::unitcheck`].

pub mod qexp;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::modcurve::{Cusp, LevelContext, ModCurveError};
use crate::ntheory::{
    divisors, gcd, moebius, modinv, prime_divisors, rat_int, Rational,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EtafamError {
    #[error("(m, h) = ({0}, {1}) is not a valid unit label at level {2}: m must be a proper divisor of the level")]
    InvalidLabel(u64, u64, u64),
    #[error("{0} does not divide the level {1}")]
    NotADivisor(u64, u64),
    #[error("the level {0} is not twice an odd integer, so the cusp 1/N0 has no closed-form order")]
    UnsupportedCusp(u64),
    #[error("precision {0} is too small: the label (m, h) = ({1}, {2}) needs at least m + 1 = {3} coefficients")]
    PrecisionTooSmall(usize, u64, u64, usize),
    #[error("index pair (g, h) = ({0}, {1}) vanishes modulo {2}")]
    ZeroIndexPair(i64, i64, u64),
    #[error(transparent)]
    ModCurve(#[from] ModCurveError),
}

/// Label (m, h) of a member of the unit family: m a proper divisor of N,
/// h reduced modulo ell(m). Construction reduces h, so two labels compare
/// equal exactly when they name the same function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FLabel {
    m: u64,
    h: u64,
}

impl FLabel {
    pub fn new(ctx: &LevelContext, m: u64, h: u64) -> Result<Self, EtafamError> {
        if !ctx.is_divisor(m) || m == ctx.n() {
            return Err(EtafamError::InvalidLabel(m, h, ctx.n()));
        }
        Ok(FLabel {
            m,
            h: h % ctx.ell(m),
        })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn h(&self) -> u64 {
        self.h
    }
}

impl std::fmt::Display for FLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F[{},{}]", self.m, self.h)
    }
}

/// An eta quotient prod_{d | N} eta(d tau)^{r_d}: exponent map over the
/// divisors of N, zeros omitted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EtaQuotient {
    level: u64,
    exponents: BTreeMap<u64, BigInt>,
}

impl EtaQuotient {
    pub fn new(level: u64) -> Self {
        EtaQuotient {
            level,
            exponents: BTreeMap::new(),
        }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn mul_eta_pow(&mut self, ctx: &LevelContext, d: u64, e: &BigInt) -> Result<(), EtafamError> {
        if !ctx.is_divisor(d) {
            return Err(EtafamError::NotADivisor(d, ctx.n()));
        }
        debug_assert_eq!(self.level, ctx.n());
        if e.is_zero() {
            return Ok(());
        }
        let entry = self.exponents.entry(d).or_insert_with(BigInt::zero);
        *entry += e;
        if entry.is_zero() {
            self.exponents.remove(&d);
        }
        Ok(())
    }

    pub fn exponents(&self) -> &BTreeMap<u64, BigInt> {
        &self.exponents
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }
}

/// A formal product of the F[m,h], as an exponent map over labels with
/// zeros omitted. Labels are renormalized at insertion (h mod ell(m)),
/// so F[m,h] and F[m,h+ell(m)] accumulate into the same slot.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FProduct {
    level: u64,
    exponents: BTreeMap<FLabel, BigInt>,
}

impl FProduct {
    pub fn new(level: u64) -> Self {
        FProduct {
            level,
            exponents: BTreeMap::new(),
        }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn mul_f_pow(&mut self, label: FLabel, e: &BigInt) {
        if e.is_zero() {
            return;
        }
        let entry = self.exponents.entry(label).or_insert_with(BigInt::zero);
        *entry += e;
        if entry.is_zero() {
            self.exponents.remove(&label);
        }
    }

    pub fn exponents(&self) -> &BTreeMap<FLabel, BigInt> {
        &self.exponents
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// The divisor sum_{(m,h)} e_{m,h} div(F[m,h]).
    pub fn divisor(&self, ctx: &LevelContext) -> CuspidalDivisor {
        debug_assert_eq!(self.level, ctx.n());
        let mut out = CuspidalDivisor::new(ctx.n());
        for (label, e) in &self.exponents {
            let d = f_divisor(label, ctx);
            out.add_scaled(&d, &Rational::from_integer(e.clone()));
        }
        out
    }
}

/// A formal sum of canonical cusps with exact rational coefficients,
/// zeros omitted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CuspidalDivisor {
    level: u64,
    coeffs: BTreeMap<Cusp, Rational>,
}

impl CuspidalDivisor {
    pub fn new(level: u64) -> Self {
        CuspidalDivisor {
            level,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeff(&self, cusp: &Cusp) -> Rational {
        self.coeffs.get(cusp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Cusp, &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_coeff(&mut self, cusp: Cusp, value: &Rational) {
        if value.is_zero() {
            return;
        }
        let entry = self
            .coeffs
            .entry(cusp)
            .or_insert_with(Rational::zero);
        *entry += value;
        if entry.is_zero() {
            self.coeffs.remove(&cusp);
        }
    }

    pub fn add_scaled(&mut self, other: &CuspidalDivisor, scale: &Rational) {
        debug_assert_eq!(self.level, other.level);
        if scale.is_zero() {
            return;
        }
        for (cusp, value) in &other.coeffs {
            self.add_coeff(*cusp, &(value * scale));
        }
    }

    pub fn scaled(&self, scale: &Rational) -> CuspidalDivisor {
        let mut out = CuspidalDivisor::new(self.level);
        out.add_scaled(self, scale);
        out
    }

    pub fn sub(&self, other: &CuspidalDivisor) -> CuspidalDivisor {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    /// Total degree: the sum of all coefficients.
    pub fn degree(&self) -> Rational {
        let mut acc = Rational::zero();
        for v in self.coeffs.values() {
            acc += v;
        }
        acc
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|v| v.is_integer())
    }

    /// Image under the Galois element for s: the coefficient of P moves
    /// to the cusp (s* a)/c.
    pub fn galois_permute(
        &self,
        s: u64,
        ctx: &LevelContext,
    ) -> Result<CuspidalDivisor, ModCurveError> {
        debug_assert_eq!(self.level, ctx.n());
        let mut out = CuspidalDivisor::new(self.level);
        for (cusp, value) in &self.coeffs {
            out.add_coeff(ctx.galois_act(s, cusp)?, value);
        }
        Ok(out)
    }

    /// Coefficient vector over the canonical cusp list of the context.
    pub fn to_vector(&self, ctx: &LevelContext) -> Vec<Rational> {
        debug_assert_eq!(self.level, ctx.n());
        ctx.cusps().iter().map(|p| self.coeff(p)).collect()
    }

    /// Integer coefficient vector, if the divisor is integral.
    pub fn to_int_vector(&self, ctx: &LevelContext) -> Option<Vec<BigInt>> {
        let mut out = Vec::with_capacity(ctx.cusps().len());
        for p in ctx.cusps() {
            let v = self.coeff(p);
            if !v.is_integer() {
                return None;
            }
            out.push(v.to_integer());
        }
        Some(out)
    }

    pub fn from_int_vector(ctx: &LevelContext, vec: &[BigInt]) -> CuspidalDivisor {
        assert_eq!(vec.len(), ctx.cusps().len());
        let mut out = CuspidalDivisor::new(ctx.n());
        for (cusp, v) in ctx.cusps().iter().zip(vec) {
            out.add_coeff(*cusp, &Rational::from_integer(v.clone()));
        }
        out
    }
}

/// Result of pushing an index pair (g, h) of a generalized eta function
/// into the normal range 0 <= g <= N/2: the original function equals
/// `sign * zeta_N^zeta_power * E_{g,h}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ENormalization {
    pub g: u64,
    pub h: u64,
    pub sign: i8,
    pub zeta_power: u64,
}

/// Normalize an E index pair using the relations
/// `E_{g+N,h} = E_{-g,-h} = -zeta_N^{-h} E_{g,h}` and `E_{g,h+N} = E_{g,h}`.
pub fn normalize_e_index(g: i64, h: i64, n: u64) -> Result<ENormalization, EtafamError> {
    assert!(n >= 1);
    let n_i = n as i64;
    if g.rem_euclid(n_i) == 0 && h.rem_euclid(n_i) == 0 {
        return Err(EtafamError::ZeroIndexPair(g, h, n));
    }
    let mut sign = 1i8;
    let mut zpow: i64 = 0;
    let h0 = h.rem_euclid(n_i);
    let mut g0 = g;
    // Shifting g down by N costs -zeta_N^{-h}; shifting up costs -zeta_N^{h}.
    while g0 >= n_i {
        sign = -sign;
        zpow -= h0;
        g0 -= n_i;
    }
    while g0 < 0 {
        sign = -sign;
        zpow += h0;
        g0 += n_i;
    }
    let mut h_out = h0;
    if 2 * g0 > n_i {
        // E_{g,h} = E_{N-g, N-h} exactly (composing the two relations).
        g0 = n_i - g0;
        h_out = (n_i - h0) % n_i;
    }
    Ok(ENormalization {
        g: g0 as u64,
        h: h_out as u64,
        sign,
        zeta_power: zpow.rem_euclid(n_i) as u64,
    })
}

/// Order of eta(d tau) at the cusp a/c of X_0(N): N (c,d)^2 / (24 d (c^2, N)).
pub fn eta_order(d: u64, cusp: &Cusp, ctx: &LevelContext) -> Result<Rational, EtafamError> {
    if !ctx.is_divisor(d) {
        return Err(EtafamError::NotADivisor(d, ctx.n()));
    }
    let n = ctx.n();
    let c = cusp.c();
    let g = gcd(c, d);
    Ok(Rational::new(
        BigInt::from(n) * BigInt::from(g) * BigInt::from(g),
        BigInt::from(24u64) * BigInt::from(d) * BigInt::from(gcd(c * c, n)),
    ))
}

/// Divisor of an eta quotient: the exponent-weighted sum of eta orders
/// over the canonical cusps.
pub fn eta_quotient_divisor(q: &EtaQuotient, ctx: &LevelContext) -> CuspidalDivisor {
    debug_assert_eq!(q.level, ctx.n());
    let mut out = CuspidalDivisor::new(ctx.n());
    for cusp in ctx.cusps() {
        let mut acc = Rational::zero();
        for (&d, r) in &q.exponents {
            acc += eta_order(d, cusp, ctx).expect("validated divisor") * Rational::from_integer(r.clone());
        }
        out.add_coeff(*cusp, &acc);
    }
    out
}

/// Order of F[m,h] at a cusp a/c, by the P2 sum over (Z/m'')^x.
///
/// The P2 arguments share the denominator v = m'' ell, so the sum is
/// accumulated as a single integer numerator over 6 v^2. All quantities
/// stay far below the i128 range for the supported levels.
pub fn f_order(label: &FLabel, cusp: &Cusp, ctx: &LevelContext) -> Rational {
    let m = label.m;
    let h = label.h as i128;
    let ell = ctx.ell(m) as i128;
    let mpp = ctx.m_dprime(m);
    let npr = ctx.n_prime(m);
    let c = cusp.c();
    let a = cusp.a();
    let g = gcd(npr, c);
    let a_pr = (npr / g * a) as i128;
    let c_pr = (c / g) as i128;

    let v = mpp as i128 * ell;
    // numerator of sum_alpha P2(arg_alpha) over the denominator 6 v^2:
    // P2(u/v) = (6 r^2 - 6 r v + v^2) / (6 v^2) with r = u mod v.
    let mut num: i128 = 0;
    for alpha in 1..mpp {
        if gcd(alpha, mpp) != 1 {
            continue;
        }
        let delta = modinv(alpha, mpp).expect("alpha is a unit mod m''") as i128;
        let u = alpha as i128 * a_pr * ell + delta * h * c_pr * mpp as i128;
        let r = u.rem_euclid(v);
        num += 6 * r * r - 6 * r * v + v * v;
    }

    // Times ell (N',c)^2 / (4 (c^2, N)).
    let g = g as i128;
    let numerator = num * ell * g * g;
    let denominator = 6 * v * v * 4 * gcd(c * c, ctx.n()) as i128;
    Rational::new(BigInt::from(numerator), BigInt::from(denominator))
}

/// The three cusps with closed-form orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialCusp {
    /// The cusp 1/N.
    Infinity,
    /// The cusp 1/1.
    Zero,
    /// The cusp 1/N0 with N0 the odd part of N; only meaningful in
    /// closed form when N = 2 N0 with N0 odd.
    Half,
}

/// Closed-form order of F[m,h] at a special cusp:
///
/// - infinity: (m/24) prod_{p | m''} (1 - p), independent of h;
/// - zero: (m''/(24 ell)) sum_{k | m''} (mu(k)/k) (ell, kh)^2;
/// - 1/N0: (m/(24 (m,2))) prod_{p | m'', p != 2} (1 - p), requiring
///   N = 2 N0 with N0 odd.
pub fn f_order_special(
    label: &FLabel,
    which: SpecialCusp,
    ctx: &LevelContext,
) -> Result<Rational, EtafamError> {
    let m = label.m;
    let h = label.h;
    let ell = ctx.ell(m);
    let mpp = ctx.m_dprime(m);
    match which {
        SpecialCusp::Infinity => {
            let mut prod = Rational::new(BigInt::from(m), BigInt::from(24u64));
            for p in prime_divisors(mpp) {
                prod *= rat_int(1 - p as i64);
            }
            Ok(prod)
        }
        SpecialCusp::Zero => {
            let mut acc = Rational::zero();
            for k in divisors(mpp) {
                let mu = moebius(k);
                if mu == 0 {
                    continue;
                }
                let kh = k * h;
                let g = if kh == 0 { ell } else { gcd(ell, kh) };
                acc += Rational::new(
                    BigInt::from(mu) * BigInt::from(g) * BigInt::from(g),
                    BigInt::from(k),
                );
            }
            Ok(acc * Rational::new(BigInt::from(mpp), BigInt::from(24u64) * BigInt::from(ell)))
        }
        SpecialCusp::Half => {
            let n = ctx.n();
            if n % 2 != 0 || (n / 2) % 2 == 0 {
                return Err(EtafamError::UnsupportedCusp(n));
            }
            let mut prod = Rational::new(
                BigInt::from(m),
                BigInt::from(24u64) * BigInt::from(gcd(m, 2)),
            );
            for p in prime_divisors(mpp) {
                if p != 2 {
                    prod *= rat_int(1 - p as i64);
                }
            }
            Ok(prod)
        }
    }
}

/// Divisor of F[m,h]: the order at every canonical cusp. Total degree is
/// exactly zero.
pub fn f_divisor(label: &FLabel, ctx: &LevelContext) -> CuspidalDivisor {
    let mut out = CuspidalDivisor::new(ctx.n());
    for cusp in ctx.cusps() {
        let v = f_order(label, cusp, ctx);
        out.add_coeff(*cusp, &v);
    }
    out
}

/// The eta-quotient form of F[m,0]: exponent mu(k) on the divisor k m for
/// each k | m''. Its divisor equals div(F[m,0]) exactly.
pub fn f0_eta_quotient(m: u64, ctx: &LevelContext) -> Result<EtaQuotient, EtafamError> {
    if !ctx.is_divisor(m) || m == ctx.n() {
        return Err(EtafamError::InvalidLabel(m, 0, ctx.n()));
    }
    let mut out = EtaQuotient::new(ctx.n());
    for k in divisors(ctx.m_dprime(m)) {
        let mu = moebius(k);
        if mu != 0 {
            out.mul_eta_pow(ctx, k * m, &BigInt::from(mu))?;
        }
    }
    Ok(out)
}

/// Eta-quotient form of F[m,h] when one exists without constants that
/// matter at the divisor level: always for h = 0, and for the two
/// square-root labels (m'' = 2, where ell(m) <= 2):
///
/// - ell = 1:        F[m,0] = eta(m tau) / eta(2m tau);
/// - ell = 2, h = 0: F[m,0] = eta(m tau) / eta(2m tau);
/// - ell = 2, h = 1: F[m,1] = eta(2m tau)^2 / (eta(m tau) eta(4m tau)).
pub fn eta_form(label: &FLabel, ctx: &LevelContext) -> Option<EtaQuotient> {
    if label.h == 0 {
        return Some(f0_eta_quotient(label.m, ctx).expect("label already validated"));
    }
    if ctx.m_dprime(label.m) != 2 {
        return None;
    }
    // m'' = 2 and h = 1 forces ell = 2, so 4m | N.
    let m = label.m;
    let mut out = EtaQuotient::new(ctx.n());
    out.mul_eta_pow(ctx, 2 * m, &BigInt::from(2)).ok()?;
    out.mul_eta_pow(ctx, m, &BigInt::from(-1)).ok()?;
    out.mul_eta_pow(ctx, 4 * m, &BigInt::from(-1)).ok()?;
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcurve::LevelContext;
    use crate::ntheory::rat;

    fn label(ctx: &LevelContext, m: u64, h: u64) -> FLabel {
        FLabel::new(ctx, m, h).unwrap()
    }

    #[test]
    fn label_reduction_and_validation() {
        let ctx = LevelContext::new(9).unwrap();
        assert_eq!(label(&ctx, 1, 4).h(), 1);
        assert_eq!(label(&ctx, 3, 5).h(), 0);
        assert!(FLabel::new(&ctx, 9, 0).is_err());
        assert!(FLabel::new(&ctx, 2, 0).is_err());
    }

    #[test]
    fn normalize_e_index_relations() {
        let n = 12u64;
        for (g, h) in [(3i64, 5i64), (1, 0), (5, 11), (2, 7)] {
            let base = normalize_e_index(g, h, n).unwrap();
            assert_eq!((base.sign, base.zeta_power), (1, 0));
            assert_eq!((base.g as i64, base.h as i64), (g, h));

            // (g + N, h) picks up -zeta^{-h}.
            let up = normalize_e_index(g + n as i64, h, n).unwrap();
            assert_eq!(up.sign, -1);
            assert_eq!(up.zeta_power as i64, (-h).rem_euclid(n as i64));
            assert_eq!((up.g, up.h), (base.g, base.h));

            // (g, h + N) is free.
            let shifted = normalize_e_index(g, h + n as i64, n).unwrap();
            assert_eq!(shifted, base);

            // (-g, -h) picks up -zeta^{-h}.
            let neg = normalize_e_index(-g, -h, n).unwrap();
            assert_eq!(neg.sign, -1);
            assert_eq!(neg.zeta_power as i64, (-h).rem_euclid(n as i64));
            assert_eq!((neg.g, neg.h), (base.g, base.h));
        }
        assert!(normalize_e_index(12, 24, 12).is_err());
        assert!(normalize_e_index(0, 0, 5).is_err());
    }

    #[test]
    fn normalize_e_index_range() {
        let n = 10u64;
        for g in -25i64..25 {
            for h in -25i64..25 {
                let Ok(norm) = normalize_e_index(g, h, n) else {
                    continue;
                };
                assert!(2 * norm.g <= n);
                assert!(norm.h < n);
                assert!(norm.zeta_power < n);
            }
        }
    }

    #[test]
    fn eta_orders_level_11() {
        let ctx = LevelContext::new(11).unwrap();
        assert_eq!(
            eta_order(1, &ctx.infinity(), &ctx).unwrap(),
            rat(1, 24)
        );
        assert_eq!(
            eta_order(11, &ctx.infinity(), &ctx).unwrap(),
            rat(11, 24)
        );
        let ctx9 = LevelContext::new(9).unwrap();
        assert_eq!(
            eta_order(3, &ctx9.zero_cusp(), &ctx9).unwrap(),
            rat(1, 8)
        );
    }

    #[test]
    fn eta_quotient_divisor_level_11() {
        let ctx = LevelContext::new(11).unwrap();
        let mut q = EtaQuotient::new(11);
        q.mul_eta_pow(&ctx, 1, &BigInt::from(12)).unwrap();
        q.mul_eta_pow(&ctx, 11, &BigInt::from(-12)).unwrap();
        let div = eta_quotient_divisor(&q, &ctx);
        assert_eq!(div.coeff(&ctx.zero_cusp()), rat_int(5));
        assert_eq!(div.coeff(&ctx.infinity()), rat_int(-5));
        assert_eq!(div.degree(), Rational::zero());

        let empty = EtaQuotient::new(11);
        assert!(eta_quotient_divisor(&empty, &ctx).is_zero());
    }

    #[test]
    fn f_orders_level_9() {
        let ctx = LevelContext::new(9).unwrap();
        let f11 = label(&ctx, 1, 1);
        assert_eq!(f_order(&f11, &ctx.cusp(2, 3).unwrap(), &ctx), rat(1, 4));
        assert_eq!(f_order(&f11, &ctx.cusp(1, 3).unwrap(), &ctx), rat(-1, 12));
        let f10 = label(&ctx, 1, 0);
        assert_eq!(f_order(&f10, &ctx.infinity(), &ctx), rat(-1, 12));
    }

    #[test]
    fn f_divisors_level_9() {
        let ctx = LevelContext::new(9).unwrap();
        let d10 = f_divisor(&label(&ctx, 1, 0), &ctx);
        assert_eq!(d10.coeff(&ctx.zero_cusp()), rat(1, 4));
        assert_eq!(d10.coeff(&ctx.cusp(1, 3).unwrap()), rat(-1, 12));
        assert_eq!(d10.coeff(&ctx.cusp(2, 3).unwrap()), rat(-1, 12));
        assert_eq!(d10.coeff(&ctx.infinity()), rat(-1, 12));

        let d30 = f_divisor(&label(&ctx, 3, 0), &ctx);
        assert_eq!(d30.coeff(&ctx.zero_cusp()), rat(1, 12));
        assert_eq!(d30.coeff(&ctx.cusp(1, 3).unwrap()), rat(1, 12));
        assert_eq!(d30.coeff(&ctx.cusp(2, 3).unwrap()), rat(1, 12));
        assert_eq!(d30.coeff(&ctx.infinity()), rat(-1, 4));
    }

    #[test]
    fn special_orders() {
        let ctx = LevelContext::new(9).unwrap();
        let f10 = label(&ctx, 1, 0);
        assert_eq!(
            f_order_special(&f10, SpecialCusp::Infinity, &ctx).unwrap(),
            rat(-1, 12)
        );
        assert_eq!(
            f_order_special(&f10, SpecialCusp::Zero, &ctx).unwrap(),
            rat(1, 4)
        );
        assert!(f_order_special(&f10, SpecialCusp::Half, &ctx).is_err());

        let ctx18 = LevelContext::new(18).unwrap();
        for h in 0..ctx18.ell(1) {
            let l = label(&ctx18, 1, h);
            assert_eq!(
                f_order_special(&l, SpecialCusp::Half, &ctx18).unwrap(),
                rat(-1, 12)
            );
        }

        let ctx20 = LevelContext::new(20).unwrap();
        let l = label(&ctx20, 1, 0);
        assert!(matches!(
            f_order_special(&l, SpecialCusp::Half, &ctx20),
            Err(EtafamError::UnsupportedCusp(20))
        ));
    }

    /// Term-by-term BigRational oracle for the order formula.
    fn f_order_by_p2_sum(l: &FLabel, cusp: &Cusp, ctx: &LevelContext) -> Rational {
        use crate::ntheory::p2;
        let (m, h) = (l.m(), l.h());
        let ell = ctx.ell(m);
        let mpp = ctx.m_dprime(m);
        let npr = ctx.n_prime(m);
        let g = gcd(npr, cusp.c());
        let a_pr = npr / g * cusp.a();
        let c_pr = cusp.c() / g;
        let mut sum = Rational::zero();
        for alpha in 1..mpp {
            if gcd(alpha, mpp) != 1 {
                continue;
            }
            let delta = modinv(alpha, mpp).unwrap();
            let arg = Rational::new(BigInt::from(alpha * a_pr), BigInt::from(mpp))
                + Rational::new(BigInt::from(delta * h * c_pr), BigInt::from(ell));
            sum += p2(&arg);
        }
        sum * Rational::new(
            BigInt::from(ell * g * g),
            BigInt::from(4 * gcd(cusp.c() * cusp.c(), ctx.n())),
        )
    }

    #[test]
    fn f_order_matches_p2_sum_oracle() {
        for n in 2..=45u64 {
            let ctx = LevelContext::new(n).unwrap();
            for (m, h) in ctx.full_labels() {
                let l = label(&ctx, m, h);
                for cusp in ctx.cusps() {
                    assert_eq!(
                        f_order(&l, cusp, &ctx),
                        f_order_by_p2_sum(&l, cusp, &ctx),
                        "order oracle at N={n} ({m},{h}) cusp {cusp}"
                    );
                }
            }
        }
    }

    #[test]
    fn degree_zero_for_all_labels_up_to_60() {
        for n in 2..=60u64 {
            let ctx = LevelContext::new(n).unwrap();
            for (m, h) in ctx.full_labels() {
                let div = f_divisor(&label(&ctx, m, h), &ctx);
                assert_eq!(div.degree(), Rational::zero(), "degree at N={n} ({m},{h})");
            }
        }
    }

    #[test]
    fn special_orders_match_general_formula_up_to_120() {
        for n in 2..=120u64 {
            let ctx = LevelContext::new(n).unwrap();
            let half_cusp = ctx.cusp(1, ctx.n0()).unwrap();
            for (m, h) in ctx.full_labels() {
                let l = label(&ctx, m, h);
                assert_eq!(
                    f_order(&l, &ctx.infinity(), &ctx),
                    f_order_special(&l, SpecialCusp::Infinity, &ctx).unwrap(),
                    "infinity at N={n} ({m},{h})"
                );
                assert_eq!(
                    f_order(&l, &ctx.zero_cusp(), &ctx),
                    f_order_special(&l, SpecialCusp::Zero, &ctx).unwrap(),
                    "zero at N={n} ({m},{h})"
                );
                if let Ok(v) = f_order_special(&l, SpecialCusp::Half, &ctx) {
                    assert_eq!(
                        f_order(&l, &half_cusp, &ctx),
                        v,
                        "half at N={n} ({m},{h})"
                    );
                }
            }
        }
    }

    #[test]
    fn f0_eta_quotient_forms() {
        let ctx = LevelContext::new(9).unwrap();
        let q = f0_eta_quotient(1, &ctx).unwrap();
        let exps: Vec<(u64, i64)> = q
            .exponents()
            .iter()
            .map(|(&d, e)| (d, i64::try_from(e).unwrap()))
            .collect();
        assert_eq!(exps, vec![(1, 1), (3, -1)]);

        // m = N/2 at N = 2 mod 4: eta((N/2) tau) / eta(N tau).
        let ctx18 = LevelContext::new(18).unwrap();
        let q = f0_eta_quotient(9, &ctx18).unwrap();
        let exps: Vec<(u64, i64)> = q
            .exponents()
            .iter()
            .map(|(&d, e)| (d, i64::try_from(e).unwrap()))
            .collect();
        assert_eq!(exps, vec![(9, 1), (18, -1)]);

        // m = N/4 with 4 || N, h = 1: eta((N/2) tau)^2 / (eta((N/4) tau) eta(N tau)).
        let ctx20 = LevelContext::new(20).unwrap();
        let l = label(&ctx20, 5, 1);
        let q = eta_form(&l, &ctx20).unwrap();
        let exps: Vec<(u64, i64)> = q
            .exponents()
            .iter()
            .map(|(&d, e)| (d, i64::try_from(e).unwrap()))
            .collect();
        assert_eq!(exps, vec![(5, -1), (10, 2), (20, -1)]);
    }

    #[test]
    fn eta_identity_up_to_60() {
        for n in 2..=60u64 {
            let ctx = LevelContext::new(n).unwrap();
            for &m in ctx.proper_divisors() {
                let via_eta = eta_quotient_divisor(&f0_eta_quotient(m, &ctx).unwrap(), &ctx);
                let direct = f_divisor(&label(&ctx, m, 0), &ctx);
                assert_eq!(via_eta, direct, "eta identity at N={n}, m={m}");
            }
        }
    }

    #[test]
    fn eta_form_covers_square_root_labels() {
        for n in 2..=60u64 {
            let ctx = LevelContext::new(n).unwrap();
            for (m, h) in ctx.full_labels() {
                let l = label(&ctx, m, h);
                if ctx.m_dprime(m) == 2 || h == 0 {
                    let q = eta_form(&l, &ctx).expect("eta form exists");
                    assert_eq!(
                        eta_quotient_divisor(&q, &ctx),
                        f_divisor(&l, &ctx),
                        "eta form divisor at N={n} ({m},{h})"
                    );
                }
            }
        }
    }

    #[test]
    fn galois_equivariance_level_9_and_50() {
        for n in [9u64, 50] {
            let ctx = LevelContext::new(n).unwrap();
            let l = ctx.big_l();
            for (m, h) in ctx.full_labels() {
                for s in 1..=l {
                    if gcd(s, l) != 1 {
                        continue;
                    }
                    let lhs = f_divisor(&label(&ctx, m, h), &ctx)
                        .galois_permute(s, &ctx)
                        .unwrap();
                    let rhs = f_divisor(&label(&ctx, m, s * h), &ctx);
                    assert_eq!(lhs, rhs, "equivariance at N={n} ({m},{h}) s={s}");
                }
            }
        }
    }

    #[test]
    fn f_divisor_is_rational_for_h_zero() {
        for n in [9u64, 25, 45, 49] {
            let ctx = LevelContext::new(n).unwrap();
            for &m in ctx.proper_divisors() {
                let d = f_divisor(&label(&ctx, m, 0), &ctx);
                for orbit in ctx.galois_orbits() {
                    let v0 = d.coeff(&orbit[0]);
                    for p in &orbit[1..] {
                        assert_eq!(d.coeff(p), v0, "orbit constancy at N={n}, m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn fproduct_merges_equivalent_labels() {
        let ctx = LevelContext::new(9).unwrap();
        let mut f = FProduct::new(9);
        f.mul_f_pow(label(&ctx, 1, 1), &BigInt::from(5));
        f.mul_f_pow(label(&ctx, 1, 4), &BigInt::from(-5));
        assert!(f.is_empty());
    }
}
