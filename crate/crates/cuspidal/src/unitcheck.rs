//! Criteria deciding when a unit product is a modular function on X_0(N).
//!
//! For eta quotients prod eta(delta tau)^{r_delta} the classical Ligozat
//! conditions apply at every level:
//!
//! 0. sum r_delta = 0;
//! 1. sum r_delta delta = 0 mod 24;
//! 2. sum r_delta (N/delta) = 0 mod 24;
//! 3. prod delta^{r_delta} is a square in Q^x.
//!
//! For products of the F[m,h] there is a five-condition criterion that is
//! exact whenever L is odd and squarefree and (L, phi(N/L)) = 1:
//!
//! 1. the order at infinity is an integer;
//! 2. the order at 0 is an integer;
//! 3. the order at 1/N_0 is an integer (N_0 the odd part of N);
//! 4. sum_m m phi(m'') sum_h h e_{m,h} = 0 mod L;
//! 5. for each odd prime p | N, the total exponent over labels with m''
//!    a power of p is even.
//!
//! Without the hypothesis the five conditions are not known to be exact,
//! and the exact check refuses to guess ([`HypothesisNotMet`]). Dropping
//! the mod-L condition leaves a sufficiency criterion: conditions 1-3
//! and 5 certify that the L-th power of the product is modular. Each
//! individual F[m,h] becomes modular at the exponent lcm(2 m'', 24).
//!
//! Reports carry the exact witness value of every condition, so callers
//! can assert the arithmetic and not just the verdict.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::etafam::{f_order, f_order_special, EtaQuotient, FLabel, FProduct, SpecialCusp};
use crate::modcurve::LevelContext;
use crate::ntheory::{euler_phi, factorize, gcd, is_squarefree, lcm, FactoredInteger, Rational};

/// Why the five-condition criterion is unavailable at a level.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypothesisNotMet {
    #[error("L = {0} is even, the five-condition criterion does not apply")]
    EvenL(u64),
    #[error("L = {0} is not squarefree, the five-condition criterion does not apply")]
    NonSquarefreeL(u64),
    #[error("gcd(L, phi(N/L)) = gcd({l}, {phi}) = {g} > 1, the five-condition criterion does not apply")]
    SharedFactor { l: u64, phi: u64, g: u64 },
}

/// Checks the hypotheses of the five-condition criterion: L odd and
/// squarefree, and (L, phi(N/L)) = 1.
pub fn check_hypotheses(ctx: &LevelContext) -> Result<(), HypothesisNotMet> {
    let l = ctx.big_l();
    if l % 2 == 0 {
        return Err(HypothesisNotMet::EvenL(l));
    }
    if !is_squarefree(l) {
        return Err(HypothesisNotMet::NonSquarefreeL(l));
    }
    let phi = euler_phi(ctx.n() / l);
    let g = gcd(l, phi);
    if g > 1 {
        return Err(HypothesisNotMet::SharedFactor { l, phi, g });
    }
    Ok(())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UnitCheckError {
    #[error(transparent)]
    Hypothesis(#[from] HypothesisNotMet),
    #[error("G-units require odd L, got L = {0}")]
    EvenL(u64),
    #[error("G-unit label ({0}, {1}) needs ell({0}) > 1 and h nonzero mod ell")]
    TrivialLabel(u64, u64),
    #[error(transparent)]
    Etafam(#[from] crate::etafam::EtafamError),
}

/// Identifier of one tested condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionId {
    Deg0,
    InfIntegral,
    ZeroIntegral,
    HalfIntegral,
    ModL,
    Mod2,
    LigozatSum,
    Ligozat24Delta,
    Ligozat24NDelta,
    LigozatSquare,
}

impl ConditionId {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConditionId::Deg0 => "deg0",
            ConditionId::InfIntegral => "inf_integral",
            ConditionId::ZeroIntegral => "zero_integral",
            ConditionId::HalfIntegral => "half_integral",
            ConditionId::ModL => "mod_L",
            ConditionId::Mod2 => "mod_2",
            ConditionId::LigozatSum => "ligozat_sum",
            ConditionId::Ligozat24Delta => "ligozat_24_delta",
            ConditionId::Ligozat24NDelta => "ligozat_24_Ndelta",
            ConditionId::LigozatSquare => "ligozat_square",
        }
    }
}

/// One tested condition with its exact witness: the order, sum, or
/// squarefree kernel that was examined. For parity conditions `prime`
/// records which odd prime the sum belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    pub id: ConditionId,
    pub pass: bool,
    pub witness: Rational,
    pub prime: Option<u64>,
}

/// Outcome of a criterion run: overall verdict plus the per-condition
/// verdicts and witnesses. Overall passes exactly when every condition
/// does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionReport {
    pub overall: bool,
    pub conditions: Vec<Condition>,
}

impl CriterionReport {
    fn from_conditions(conditions: Vec<Condition>) -> Self {
        CriterionReport {
            overall: conditions.iter().all(|c| c.pass),
            conditions,
        }
    }

    pub fn condition(&self, id: ConditionId) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.id == id)
    }
}

fn integrality_condition(id: ConditionId, value: Rational) -> Condition {
    Condition {
        pass: value.is_integer(),
        witness: value,
        id,
        prime: None,
    }
}

/// The exponent k = lcm(2 m'', 24) for which F[m,h]^k is always a
/// modular function on X_0(N).
pub fn guaranteed_power(m: u64, ctx: &LevelContext) -> u64 {
    assert!(
        ctx.is_divisor(m) && m != ctx.n(),
        "guaranteed_power needs a proper divisor of the level"
    );
    lcm(2 * ctx.m_dprime(m), 24)
}

/// The classical Ligozat criteria for an eta quotient.
pub fn ligozat_check(q: &EtaQuotient, ctx: &LevelContext) -> CriterionReport {
    let n = ctx.n();
    let mut sum = BigInt::zero();
    let mut sum_delta = BigInt::zero();
    let mut sum_n_over_delta = BigInt::zero();
    let mut product = FactoredInteger::one();
    for (&d, r) in q.exponents() {
        sum += r;
        sum_delta += BigInt::from(d) * r;
        sum_n_over_delta += BigInt::from(n / d) * r;
        product.mul_pow(d, r);
    }
    let kernel = product.squarefree_kernel();
    let conditions = vec![
        Condition {
            id: ConditionId::LigozatSum,
            pass: sum.is_zero(),
            witness: Rational::from_integer(sum),
            prime: None,
        },
        Condition {
            id: ConditionId::Ligozat24Delta,
            pass: sum_delta.mod_floor(&BigInt::from(24)).is_zero(),
            witness: Rational::from_integer(sum_delta),
            prime: None,
        },
        Condition {
            id: ConditionId::Ligozat24NDelta,
            pass: sum_n_over_delta.mod_floor(&BigInt::from(24)).is_zero(),
            witness: Rational::from_integer(sum_n_over_delta),
            prime: None,
        },
        Condition {
            id: ConditionId::LigozatSquare,
            pass: kernel.is_one(),
            witness: Rational::from_integer(kernel),
            prime: None,
        },
    ];
    CriterionReport::from_conditions(conditions)
}

/// Orders of an F-product at the three distinguished cusps, by the
/// closed forms at infinity and 0 and the general formula at 1/N_0. At
/// odd N the cusp 1/N_0 is the cusp at infinity, so the third value
/// duplicates the first; it is evaluated unconditionally for uniformity.
fn special_orders(f: &FProduct, ctx: &LevelContext) -> (Rational, Rational, Rational) {
    let mut at_inf = Rational::zero();
    let mut at_zero = Rational::zero();
    let mut at_half = Rational::zero();
    let half_cusp = ctx.cusp(1, ctx.n0()).expect("1/N0 is a cusp");
    for (label, e) in f.exponents() {
        let e = Rational::from_integer(e.clone());
        at_inf += f_order_special(label, SpecialCusp::Infinity, ctx).expect("infinity") * &e;
        at_zero += f_order_special(label, SpecialCusp::Zero, ctx).expect("zero") * &e;
        at_half += f_order(label, &half_cusp, ctx) * e;
    }
    (at_inf, at_zero, at_half)
}

/// The mod-L witness sum_m m phi(m'') sum_h h e_{m,h}.
fn mod_l_witness(f: &FProduct, ctx: &LevelContext) -> BigInt {
    let mut acc = BigInt::zero();
    for (label, e) in f.exponents() {
        let weight = BigInt::from(label.m()) * BigInt::from(euler_phi(ctx.m_dprime(label.m())));
        acc += weight * BigInt::from(label.h()) * e;
    }
    acc
}

/// One parity condition per odd prime p | N: the total exponent over
/// labels whose m'' is a power of p.
fn mod_2_conditions(f: &FProduct, ctx: &LevelContext) -> Vec<Condition> {
    let mut out = Vec::new();
    for (p, _) in factorize(ctx.n()) {
        if p == 2 {
            continue;
        }
        let mut acc = BigInt::zero();
        for (label, e) in f.exponents() {
            let fac = factorize(ctx.m_dprime(label.m()));
            if fac.len() == 1 && fac[0].0 == p {
                acc += e;
            }
        }
        out.push(Condition {
            id: ConditionId::Mod2,
            pass: acc.mod_floor(&BigInt::from(2)).is_zero(),
            witness: Rational::from_integer(acc),
            prime: Some(p),
        });
    }
    out
}

fn degree_condition(f: &FProduct, ctx: &LevelContext) -> Condition {
    let degree = f.divisor(ctx).degree();
    Condition {
        pass: degree.is_zero(),
        witness: degree,
        id: ConditionId::Deg0,
        prime: None,
    }
}

/// The five-condition criterion: exact modularity test for an F-product,
/// available when L is odd and squarefree and (L, phi(N/L)) = 1. The
/// total degree of the divisor is reported as a zeroth condition.
pub fn thm17_check(f: &FProduct, ctx: &LevelContext) -> Result<CriterionReport, HypothesisNotMet> {
    check_hypotheses(ctx)?;
    let l = ctx.big_l();
    let (at_inf, at_zero, at_half) = special_orders(f, ctx);
    let mod_l = mod_l_witness(f, ctx);
    let mut conditions = vec![
        degree_condition(f, ctx),
        integrality_condition(ConditionId::InfIntegral, at_inf),
        integrality_condition(ConditionId::ZeroIntegral, at_zero),
        integrality_condition(ConditionId::HalfIntegral, at_half),
        Condition {
            id: ConditionId::ModL,
            pass: mod_l.mod_floor(&BigInt::from(l)).is_zero(),
            witness: Rational::from_integer(mod_l),
            prime: None,
        },
    ];
    conditions.extend(mod_2_conditions(f, ctx));
    Ok(CriterionReport::from_conditions(conditions))
}

/// The sufficiency criterion: conditions 1-3 plus the parity conditions.
/// A pass certifies that the L-th power of the product is a modular
/// function on X_0(N); no hypothesis on L is needed.
pub fn thm19_check(f: &FProduct, ctx: &LevelContext) -> CriterionReport {
    let (at_inf, at_zero, at_half) = special_orders(f, ctx);
    let mut conditions = vec![
        degree_condition(f, ctx),
        integrality_condition(ConditionId::InfIntegral, at_inf),
        integrality_condition(ConditionId::ZeroIntegral, at_zero),
        integrality_condition(ConditionId::HalfIntegral, at_half),
    ];
    conditions.extend(mod_2_conditions(f, ctx));
    CriterionReport::from_conditions(conditions)
}

/// The certified unit (F[m,h] / F[m,0])^{nL} with n = (3, L): a modular
/// function on X_0(N) whenever L is odd, ell(m) > 1 and h != 0 mod ell(m).
pub fn gunit(m: u64, h: u64, ctx: &LevelContext) -> Result<FProduct, UnitCheckError> {
    let l = ctx.big_l();
    if l % 2 == 0 {
        return Err(UnitCheckError::EvenL(l));
    }
    let label = FLabel::new(ctx, m, h)?;
    if ctx.ell(m) <= 1 || label.h() == 0 {
        return Err(UnitCheckError::TrivialLabel(m, h));
    }
    let n = gcd(3, l);
    let exponent = BigInt::from(n * l);
    let mut out = FProduct::new(ctx.n());
    out.mul_f_pow(label, &exponent);
    out.mul_f_pow(FLabel::new(ctx, m, 0)?, &(-exponent));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::etafam::f0_eta_quotient;
    use crate::ntheory::{rat, rat_int};

    fn fproduct(ctx: &LevelContext, entries: &[(u64, u64, i64)]) -> FProduct {
        let mut f = FProduct::new(ctx.n());
        for &(m, h, e) in entries {
            f.mul_f_pow(FLabel::new(ctx, m, h).unwrap(), &BigInt::from(e));
        }
        f
    }

    #[test]
    fn guaranteed_powers() {
        let ctx9 = LevelContext::new(9).unwrap();
        assert_eq!(guaranteed_power(1, &ctx9), 24); // m'' = 3
        let ctx25 = LevelContext::new(25).unwrap();
        assert_eq!(guaranteed_power(1, &ctx25), 120); // m'' = 5
        let ctx18 = LevelContext::new(18).unwrap();
        assert_eq!(guaranteed_power(9, &ctx18), 24); // m'' = 2
    }

    #[test]
    fn hypotheses() {
        assert!(check_hypotheses(&LevelContext::new(9).unwrap()).is_ok());
        assert!(check_hypotheses(&LevelContext::new(25).unwrap()).is_ok());
        assert!(check_hypotheses(&LevelContext::new(30).unwrap()).is_ok());
        assert_eq!(
            check_hypotheses(&LevelContext::new(12).unwrap()),
            Err(HypothesisNotMet::EvenL(2))
        );
        assert_eq!(
            check_hypotheses(&LevelContext::new(81).unwrap()),
            Err(HypothesisNotMet::NonSquarefreeL(9))
        );
        assert_eq!(
            check_hypotheses(&LevelContext::new(63).unwrap()),
            Err(HypothesisNotMet::SharedFactor { l: 3, phi: 12, g: 3 })
        );
    }

    #[test]
    fn ligozat_level_11() {
        let ctx = LevelContext::new(11).unwrap();
        let mut q = EtaQuotient::new(11);
        q.mul_eta_pow(&ctx, 1, &BigInt::from(12)).unwrap();
        q.mul_eta_pow(&ctx, 11, &BigInt::from(-12)).unwrap();
        let report = ligozat_check(&q, &ctx);
        assert!(report.overall);
        assert_eq!(
            report.condition(ConditionId::Ligozat24Delta).unwrap().witness,
            rat_int(-120)
        );
        assert_eq!(
            report.condition(ConditionId::Ligozat24NDelta).unwrap().witness,
            rat_int(120)
        );
        assert_eq!(
            report.condition(ConditionId::LigozatSquare).unwrap().witness,
            rat_int(1)
        );

        let mut q2 = EtaQuotient::new(11);
        q2.mul_eta_pow(&ctx, 1, &BigInt::from(2)).unwrap();
        q2.mul_eta_pow(&ctx, 11, &BigInt::from(-2)).unwrap();
        let report = ligozat_check(&q2, &ctx);
        assert!(!report.overall);
        let c = report.condition(ConditionId::Ligozat24Delta).unwrap();
        assert!(!c.pass);
        assert_eq!(c.witness, rat_int(-20));

        let empty = ligozat_check(&EtaQuotient::new(11), &ctx);
        assert!(empty.overall);
    }

    #[test]
    fn thm17_level_9() {
        let ctx = LevelContext::new(9).unwrap();
        let f = fproduct(&ctx, &[(1, 1, 12)]);
        let report = thm17_check(&f, &ctx).unwrap();
        assert!(report.overall, "{report:?}");
        assert_eq!(
            report.condition(ConditionId::InfIntegral).unwrap().witness,
            rat_int(-1)
        );
        assert_eq!(
            report.condition(ConditionId::ZeroIntegral).unwrap().witness,
            rat_int(-1)
        );
        assert_eq!(report.condition(ConditionId::ModL).unwrap().witness, rat_int(24));
        assert_eq!(report.condition(ConditionId::Mod2).unwrap().witness, rat_int(12));
    }

    #[test]
    fn thm17_level_25_mod_l() {
        let ctx = LevelContext::new(25).unwrap();

        let fail = fproduct(&ctx, &[(1, 1, 4), (1, 2, 2)]);
        let report = thm17_check(&fail, &ctx).unwrap();
        assert!(!report.overall);
        let failing: Vec<_> = report.conditions.iter().filter(|c| !c.pass).collect();
        assert_eq!(failing.len(), 1);
        assert_eq!(failing[0].id, ConditionId::ModL);
        assert_eq!(failing[0].witness, rat_int(32));
        assert_eq!(
            report.condition(ConditionId::InfIntegral).unwrap().witness,
            rat_int(-1)
        );
        assert_eq!(
            report.condition(ConditionId::ZeroIntegral).unwrap().witness,
            rat_int(-1)
        );
        assert_eq!(report.condition(ConditionId::Mod2).unwrap().witness, rat_int(6));

        let pass = fproduct(&ctx, &[(1, 1, 2), (1, 2, 4)]);
        let report = thm17_check(&pass, &ctx).unwrap();
        assert!(report.overall, "{report:?}");
        assert_eq!(report.condition(ConditionId::ModL).unwrap().witness, rat_int(40));
    }

    #[test]
    fn thm17_unavailable_at_63() {
        let ctx = LevelContext::new(63).unwrap();
        let f = fproduct(&ctx, &[(1, 1, 1)]);
        assert!(thm17_check(&f, &ctx).is_err());
    }

    #[test]
    fn thm17_is_h_periodic() {
        let ctx = LevelContext::new(25).unwrap();
        let a = fproduct(&ctx, &[(1, 1, 2), (1, 2, 4)]);
        let b = fproduct(&ctx, &[(1, 6, 2), (1, 7, 4)]);
        assert_eq!(a, b);
        assert_eq!(thm17_check(&a, &ctx).unwrap(), thm17_check(&b, &ctx).unwrap());
    }

    #[test]
    fn thm19_examples() {
        let ctx25 = LevelContext::new(25).unwrap();
        let f = fproduct(&ctx25, &[(1, 1, 4), (1, 2, 2)]);
        assert!(thm19_check(&f, &ctx25).overall);

        let ctx9 = LevelContext::new(9).unwrap();
        let f = fproduct(&ctx9, &[(3, 0, 1)]);
        let report = thm19_check(&f, &ctx9);
        assert!(!report.overall);
        assert_eq!(
            report.condition(ConditionId::InfIntegral).unwrap().witness,
            rat(-1, 4)
        );

        assert!(thm19_check(&FProduct::new(9), &ctx9).overall);
    }

    #[test]
    fn gunit_examples() {
        let ctx25 = LevelContext::new(25).unwrap();
        let g = gunit(1, 1, &ctx25).unwrap();
        let exps: Vec<(u64, u64, i64)> = g
            .exponents()
            .iter()
            .map(|(l, e)| (l.m(), l.h(), i64::try_from(e).unwrap()))
            .collect();
        assert_eq!(exps, vec![(1, 0, -5), (1, 1, 5)]);

        let ctx9 = LevelContext::new(9).unwrap();
        let g = gunit(1, 1, &ctx9).unwrap();
        let exps: Vec<(u64, u64, i64)> = g
            .exponents()
            .iter()
            .map(|(l, e)| (l.m(), l.h(), i64::try_from(e).unwrap()))
            .collect();
        assert_eq!(exps, vec![(1, 0, -9), (1, 1, 9)]);
        assert!(thm17_check(&g, &ctx9).unwrap().overall);

        assert!(gunit(1, 0, &ctx9).is_err());
        assert!(gunit(3, 1, &ctx9).is_err());
        let ctx12 = LevelContext::new(12).unwrap();
        assert!(matches!(gunit(1, 1, &ctx12), Err(UnitCheckError::EvenL(2))));
    }

    #[test]
    fn gunits_pass_thm19_up_to_120() {
        for n in 2..=120u64 {
            let ctx = LevelContext::new(n).unwrap();
            if ctx.big_l() % 2 == 0 {
                continue;
            }
            for &m in ctx.proper_divisors() {
                for h in 1..ctx.ell(m) {
                    let g = gunit(m, h, &ctx).unwrap();
                    assert!(
                        thm19_check(&g, &ctx).overall,
                        "gunit({m},{h}) at N={n} failed sufficiency"
                    );
                }
            }
        }
    }

    #[test]
    fn guaranteed_powers_pass_checks_up_to_120() {
        for n in 2..=120u64 {
            let ctx = LevelContext::new(n).unwrap();
            let hypotheses_ok = check_hypotheses(&ctx).is_ok();
            for (m, h) in ctx.full_labels() {
                let f = fproduct(&ctx, &[(m, h, guaranteed_power(m, &ctx) as i64)]);
                assert!(
                    thm19_check(&f, &ctx).overall,
                    "guaranteed power of ({m},{h}) at N={n} failed sufficiency"
                );
                if hypotheses_ok {
                    assert!(
                        thm17_check(&f, &ctx).unwrap().overall,
                        "guaranteed power of ({m},{h}) at N={n} failed exact criterion"
                    );
                }
            }
        }
    }

    #[test]
    fn thm17_passing_products_have_integral_divisors() {
        // A product passing the exact criterion is a modular function, so
        // its order at every cusp (not only the three tested ones) is an
        // integer of total degree zero.
        for n in [9u64, 25, 45, 49, 50] {
            let ctx = LevelContext::new(n).unwrap();
            for (m, h) in ctx.full_labels() {
                let f = fproduct(&ctx, &[(m, h, guaranteed_power(m, &ctx) as i64)]);
                let report = thm17_check(&f, &ctx).unwrap();
                assert!(report.overall);
                let div = f.divisor(&ctx);
                assert!(div.is_integral(), "divisor of certified product at N={n}");
                assert!(div.degree().is_zero());
            }
        }
    }

    #[test]
    fn ligozat_forms_of_certified_f0_powers_pass() {
        // F[m,0]^24 is modular and an eta quotient, so the quotient form
        // raised to 24 must pass the Ligozat conditions.
        for n in 2..=60u64 {
            let ctx = LevelContext::new(n).unwrap();
            for &m in ctx.proper_divisors() {
                let q0 = f0_eta_quotient(m, &ctx).unwrap();
                let mut q = EtaQuotient::new(n);
                for (&d, e) in q0.exponents() {
                    q.mul_eta_pow(&ctx, d, &(e * BigInt::from(24))).unwrap();
                }
                assert!(
                    ligozat_check(&q, &ctx).overall,
                    "24th power of eta form of F[{m},0] at N={n}"
                );
            }
        }
    }

    #[test]
    fn thm17_exhaustive_cross_check_level_9() {
        // Exhaust small exponent vectors at N = 9. The exact criterion
        // must agree with the independent test "the divisor is integral
        // at every cusp and the two congruences hold" -- equality of the
        // two is the content of the exactness theorem.
        let ctx = LevelContext::new(9).unwrap();
        let labels = ctx.full_labels();
        let mut pass_count = 0usize;
        let mut fail_count = 0usize;
        let k = labels.len();
        let radix = 7i64;
        let total = radix.pow(k as u32);
        for code in 0..total {
            let mut c = code;
            let mut f = FProduct::new(9);
            let mut vector = Vec::with_capacity(k);
            for &(m, h) in &labels {
                let e = c % radix - 3;
                c /= radix;
                vector.push(e);
                f.mul_f_pow(FLabel::new(&ctx, m, h).unwrap(), &BigInt::from(e));
            }
            let report = thm17_check(&f, &ctx).unwrap();
            let div = f.divisor(&ctx);
            let mod_l: i64 = labels
                .iter()
                .zip(&vector)
                .map(|(&(m, h), &e)| (m * euler_phi(ctx.m_dprime(m)) * h) as i64 * e)
                .sum();
            let mod_2: i64 = labels
                .iter()
                .zip(&vector)
                .filter(|(&(m, _), _)| {
                    let fac = factorize(ctx.m_dprime(m));
                    fac.len() == 1 && fac[0].0 == 3
                })
                .map(|(_, &e)| e)
                .sum();
            let expected = div.is_integral() && mod_l % 3 == 0 && mod_2 % 2 == 0;
            assert_eq!(report.overall, expected, "vector {vector:?}");
            if report.overall {
                pass_count += 1;
            } else {
                fail_count += 1;
            }
        }
        assert!(pass_count > 0 && fail_count > 0);
    }
}
