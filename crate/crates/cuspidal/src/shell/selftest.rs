//! Invariant suites runnable from the CLI: each sweeps all levels up to
//! a bound and counts the checks it performed.

use crate::etafam::{
    self, f0_eta_quotient, f_divisor, f_order, f_order_special, qexp, FLabel, SpecialCusp,
};
use crate::modcurve::LevelContext;
use crate::ntheory::gcd;
use num_traits::Zero;

pub type SuiteResult = Result<usize, String>;

/// Total degree of every unit divisor is exactly zero.
pub fn degree_zero(max_level: u64) -> SuiteResult {
    let mut checks = 0;
    for n in 2..=max_level {
        let ctx = LevelContext::new(n).map_err(|e| e.to_string())?;
        for (m, h) in ctx.full_labels() {
            let label = FLabel::new(&ctx, m, h).map_err(|e| e.to_string())?;
            let degree = f_divisor(&label, &ctx).degree();
            if !degree.is_zero() {
                return Err(format!("degree {degree} for F[{m},{h}] at level {n}"));
            }
            checks += 1;
        }
    }
    Ok(checks)
}

/// The closed forms at the cusps infinity, 0 and 1/N0 agree with the
/// general order formula.
pub fn special_cusps(max_level: u64) -> SuiteResult {
    let mut checks = 0;
    for n in 2..=max_level {
        let ctx = LevelContext::new(n).map_err(|e| e.to_string())?;
        let half = ctx.cusp(1, ctx.n0()).map_err(|e| e.to_string())?;
        for (m, h) in ctx.full_labels() {
            let label = FLabel::new(&ctx, m, h).map_err(|e| e.to_string())?;
            let pairs = [
                (SpecialCusp::Infinity, ctx.infinity()),
                (SpecialCusp::Zero, ctx.zero_cusp()),
            ];
            for (which, cusp) in pairs {
                let direct = f_order(&label, &cusp, &ctx);
                let closed = f_order_special(&label, which, &ctx).map_err(|e| e.to_string())?;
                if direct != closed {
                    return Err(format!(
                        "order mismatch for F[{m},{h}] at {cusp} on level {n}: {direct} vs {closed}"
                    ));
                }
                checks += 1;
            }
            if let Ok(closed) = f_order_special(&label, SpecialCusp::Half, &ctx) {
                if f_order(&label, &half, &ctx) != closed {
                    return Err(format!(
                        "half-cusp order mismatch for F[{m},{h}] on level {n}"
                    ));
                }
                checks += 1;
            }
        }
    }
    Ok(checks)
}

/// div F[m,0] equals the divisor of its eta-quotient form.
pub fn eta_identity(max_level: u64) -> SuiteResult {
    let mut checks = 0;
    for n in 2..=max_level {
        let ctx = LevelContext::new(n).map_err(|e| e.to_string())?;
        for &m in ctx.proper_divisors() {
            let label = FLabel::new(&ctx, m, 0).map_err(|e| e.to_string())?;
            let quotient = f0_eta_quotient(m, &ctx).map_err(|e| e.to_string())?;
            if etafam::eta_quotient_divisor(&quotient, &ctx) != f_divisor(&label, &ctx) {
                return Err(format!("eta identity fails for m = {m} at level {n}"));
            }
            checks += 1;
        }
    }
    Ok(checks)
}

/// Permuting div F[m,h] by the Galois action equals div F[m,sh].
pub fn galois_equivariance(max_level: u64) -> SuiteResult {
    let mut checks = 0;
    for n in 2..=max_level {
        let ctx = LevelContext::new(n).map_err(|e| e.to_string())?;
        let l = ctx.big_l();
        for (m, h) in ctx.full_labels() {
            let label = FLabel::new(&ctx, m, h).map_err(|e| e.to_string())?;
            let divisor = f_divisor(&label, &ctx);
            for s in 1..=l {
                if gcd(s, l) != 1 {
                    continue;
                }
                let permuted = divisor.galois_permute(s, &ctx).map_err(|e| e.to_string())?;
                let twisted = FLabel::new(&ctx, m, s * h).map_err(|e| e.to_string())?;
                if permuted != f_divisor(&twisted, &ctx) {
                    return Err(format!(
                        "equivariance fails for F[{m},{h}] with s = {s} at level {n}"
                    ));
                }
                checks += 1;
            }
        }
    }
    Ok(checks)
}

/// q-expansions: the leading exponent is the order at infinity and the
/// normalized q^m coefficient is -zeta^h.
pub fn qexpansion(max_level: u64) -> SuiteResult {
    let mut checks = 0;
    for n in 2..=max_level.min(60) {
        let ctx = LevelContext::new(n).map_err(|e| e.to_string())?;
        for (m, h) in ctx.full_labels() {
            let label = FLabel::new(&ctx, m, h).map_err(|e| e.to_string())?;
            let series =
                qexp::f_qexpansion(&label, (m + 1) as usize, &ctx).map_err(|e| e.to_string())?;
            let expected_leading =
                f_order_special(&label, SpecialCusp::Infinity, &ctx).map_err(|e| e.to_string())?;
            if series.leading_exponent() != &expected_leading {
                return Err(format!(
                    "leading exponent of F[{m},{h}] at level {n} is {} but the infinity order is {expected_leading}",
                    series.leading_exponent()
                ));
            }
            let ring = series.ring();
            if series.coeff(0) != &ring.one() {
                return Err(format!("leading coefficient of F[{m},{h}] at level {n} is not 1"));
            }
            let expected = ring.neg(&ring.zeta_pow(h as i64));
            if series.coeff(m as usize) != &expected {
                return Err(format!(
                    "q^{m} coefficient of F[{m},{h}] at level {n} is not -zeta^{h}"
                ));
            }
            checks += 1;
        }
    }
    Ok(checks)
}

/// The basis label count is one less than the cusp count.
pub fn basis_count(max_level: u64) -> SuiteResult {
    let mut checks = 0;
    for n in 1..=max_level {
        let ctx = LevelContext::new(n).map_err(|e| e.to_string())?;
        if ctx.basis_labels().len() + 1 != ctx.cusps().len() {
            return Err(format!(
                "basis count {} with {} cusps at level {n}",
                ctx.basis_labels().len(),
                ctx.cusps().len()
            ));
        }
        checks += 1;
    }
    Ok(checks)
}

/// All suites in order, with their display names.
pub fn all(max_level: u64) -> Vec<(&'static str, SuiteResult)> {
    vec![
        ("degree_zero", degree_zero(max_level)),
        ("special_cusps", special_cusps(max_level)),
        ("eta_identity", eta_identity(max_level)),
        ("galois_equivariance", galois_equivariance(max_level)),
        ("qexpansion", qexpansion(max_level)),
        ("basis_count", basis_count(max_level)),
    ]
}
