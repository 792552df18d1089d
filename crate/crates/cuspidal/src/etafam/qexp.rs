//! Exact q-expansions with cyclotomic integer coefficients.
//!
//! A [`QSeries`] is a truncated Fourier expansion q^A (c_0 + c_1 q + ...)
//! with an exact rational leading exponent A and coefficients in
//! Z[x]/Phi_l(x), the ring of integers of the l-th cyclotomic field.
//! The unit F[m,h] expands with l = ell(m): its leading exponent is its
//! order at infinity, and after normalizing the leading coefficient to 1
//! the coefficient of q^m is -zeta_l^h. That coefficient is what makes
//! the family multiplicatively independent, and the series here exist to
//! cross-check the divisor formulas against honest products.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{eta_form, EtafamError, FLabel};
use crate::modcurve::LevelContext;
use crate::ntheory::{divisors, modinv, Rational};

/// The ring Z[x]/Phi_l(x). Elements are coordinate vectors of length
/// phi(l) in the power basis 1, x, ..., x^{phi(l)-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicRing {
    ell: u64,
    /// Monic minimal polynomial Phi_l, coefficients low to high.
    modulus: Vec<BigInt>,
}

/// An element of a cyclotomic integer ring, as a coordinate vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycElem {
    coords: Vec<BigInt>,
}

impl CycElem {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// Coefficients of the l-th cyclotomic polynomial, low to high, computed
/// by dividing x^l - 1 by the cyclotomic polynomials of the proper
/// divisors of l.
fn cyclotomic_polynomial(ell: u64) -> Vec<BigInt> {
    assert!(ell >= 1);
    if ell == 1 {
        return vec![BigInt::from(-1), BigInt::one()];
    }
    // x^l - 1
    let mut num = vec![BigInt::zero(); ell as usize + 1];
    num[0] = BigInt::from(-1);
    num[ell as usize] = BigInt::one();
    for d in divisors(ell) {
        if d == ell {
            continue;
        }
        num = poly_div_exact(&num, &cyclotomic_polynomial(d));
    }
    num
}

/// Exact division of polynomials over Z; the divisor must be monic and
/// the division must leave no remainder.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    assert!(rem.len() > dn);
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for i in (dn..rem.len()).rev() {
        let lead = std::mem::take(&mut rem[i]);
        if lead.is_zero() {
            continue;
        }
        for (j, d) in den[..dn].iter().enumerate() {
            let sub = d * &lead;
            rem[i - dn + j] -= sub;
        }
        quot[i - dn] = lead;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

impl CyclotomicRing {
    pub fn new(ell: u64) -> Self {
        CyclotomicRing {
            ell,
            modulus: cyclotomic_polynomial(ell),
        }
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    /// phi(l), the rank of the ring over Z.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn zero(&self) -> CycElem {
        CycElem {
            coords: vec![BigInt::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> CycElem {
        self.from_int(BigInt::one())
    }

    pub fn from_int(&self, n: BigInt) -> CycElem {
        let mut coords = vec![BigInt::zero(); self.degree()];
        coords[0] = n;
        CycElem { coords }
    }

    /// zeta^k as a ring element, for any integer k.
    pub fn zeta_pow(&self, k: i64) -> CycElem {
        let k = k.rem_euclid(self.ell as i64) as usize;
        let mut poly = vec![BigInt::zero(); k + 1];
        poly[k] = BigInt::one();
        self.reduce(poly)
    }

    fn reduce(&self, mut poly: Vec<BigInt>) -> CycElem {
        let deg = self.degree();
        let mut i = poly.len();
        while i > deg {
            i -= 1;
            let lead = std::mem::take(&mut poly[i]);
            if lead.is_zero() {
                continue;
            }
            for (j, c) in self.modulus[..deg].iter().enumerate() {
                let sub = c * &lead;
                poly[i - deg + j] -= sub;
            }
        }
        poly.truncate(deg);
        poly.resize(deg, BigInt::zero());
        CycElem { coords: poly }
    }

    pub fn add(&self, a: &CycElem, b: &CycElem) -> CycElem {
        CycElem {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn sub(&self, a: &CycElem, b: &CycElem) -> CycElem {
        CycElem {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    pub fn neg(&self, a: &CycElem) -> CycElem {
        CycElem {
            coords: a.coords.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, a: &CycElem, b: &CycElem) -> CycElem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut poly = vec![BigInt::zero(); a.coords.len() + b.coords.len() - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        self.reduce(poly)
    }
}

/// Truncated q-series q^leading (coeffs[0] + coeffs[1] q + ...), with
/// coefficients in Z[x]/Phi_l(x). `coeffs.len()` is the precision: the
/// stored relative exponents are 0 .. precision - 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    ring: CyclotomicRing,
    leading: Rational,
    coeffs: Vec<CycElem>,
}

impl QSeries {
    pub fn one(ring: CyclotomicRing, precision: usize) -> Self {
        assert!(precision >= 1);
        let mut coeffs = vec![ring.zero(); precision];
        coeffs[0] = ring.one();
        QSeries {
            ring,
            leading: Rational::zero(),
            coeffs,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.ring.ell()
    }

    pub fn ring(&self) -> &CyclotomicRing {
        &self.ring
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn leading_exponent(&self) -> &Rational {
        &self.leading
    }

    /// Coefficient of q^{leading + i}.
    pub fn coeff(&self, i: usize) -> &CycElem {
        &self.coeffs[i]
    }

    /// Multiply in place by (1 + c q^k).
    fn mul_binomial(&mut self, k: usize, c: &CycElem) {
        if k == 0 {
            panic!("binomial factor must have positive exponent");
        }
        for i in (k..self.coeffs.len()).rev() {
            let add = self.ring.mul(&self.coeffs[i - k], c);
            self.coeffs[i] = self.ring.add(&self.coeffs[i], &add);
        }
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        assert_eq!(self.ring.ell(), other.ring.ell(), "modulus mismatch");
        let prec = self.precision().min(other.precision());
        let ring = self.ring.clone();
        let mut coeffs = vec![ring.zero(); prec];
        for i in 0..prec.min(self.coeffs.len()) {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..(prec - i).min(other.coeffs.len()) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let add = ring.mul(&self.coeffs[i], &other.coeffs[j]);
                coeffs[i + j] = ring.add(&coeffs[i + j], &add);
            }
        }
        QSeries {
            ring,
            leading: &self.leading + &other.leading,
            coeffs,
        }
    }

    /// Reciprocal series; the leading coefficient must be 1.
    pub fn inv(&self) -> QSeries {
        assert!(
            self.coeffs[0] == self.ring.one(),
            "inversion requires leading coefficient 1"
        );
        let ring = self.ring.clone();
        let prec = self.precision();
        let mut coeffs = vec![ring.zero(); prec];
        coeffs[0] = ring.one();
        for k in 1..prec {
            let mut acc = ring.zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() || coeffs[k - j].is_zero() {
                    continue;
                }
                let add = ring.mul(&self.coeffs[j], &coeffs[k - j]);
                acc = ring.add(&acc, &add);
            }
            coeffs[k] = ring.neg(&acc);
        }
        QSeries {
            ring,
            leading: -self.leading.clone(),
            coeffs,
        }
    }

    pub fn pow(&self, e: i64) -> QSeries {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut out = QSeries::one(self.ring.clone(), self.precision());
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Reinterpret a rational-coefficient series (modulus 1) in a larger
    /// cyclotomic ring.
    pub fn lift(&self, ring: &CyclotomicRing) -> QSeries {
        assert_eq!(self.ring.ell(), 1, "lift starts from a rational series");
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| ring.from_int(c.coords[0].clone()))
            .collect();
        QSeries {
            ring: ring.clone(),
            leading: self.leading.clone(),
            coeffs,
        }
    }
}

/// q-expansion of eta(d tau) = q^{d/24} prod_{n >= 1} (1 - q^{dn}),
/// truncated to `precision` coefficients, via the pentagonal number
/// expansion of the product.
pub fn eta_qexpansion(d: u64, precision: usize) -> QSeries {
    assert!(d >= 1 && precision >= 1);
    let ring = CyclotomicRing::new(1);
    let mut coeffs = vec![ring.zero(); precision];
    coeffs[0] = ring.one();
    let mut k = 1u64;
    loop {
        let g1 = d * (k * (3 * k - 1) / 2);
        let g2 = d * (k * (3 * k + 1) / 2);
        if g1 as usize >= precision {
            break;
        }
        let sign = if k % 2 == 1 {
            BigInt::from(-1)
        } else {
            BigInt::one()
        };
        coeffs[g1 as usize] = ring.from_int(sign.clone());
        if (g2 as usize) < precision {
            coeffs[g2 as usize] = ring.from_int(sign);
        }
        k += 1;
    }
    QSeries {
        ring,
        leading: Rational::new(BigInt::from(d), BigInt::from(24u64)),
        coeffs,
    }
}

/// q-expansion of an eta quotient, truncated to `precision` coefficients.
pub fn eta_quotient_qexpansion(
    q: &super::EtaQuotient,
    precision: usize,
) -> QSeries {
    let ring = CyclotomicRing::new(1);
    let mut out = QSeries::one(ring, precision);
    for (&d, e) in q.exponents() {
        let e = i64::try_from(e).expect("eta exponent fits in i64");
        out = out.mul(&eta_qexpansion(d, precision).pow(e));
    }
    out
}

/// q-expansion of F[m,h], truncated to `precision` coefficients, with
/// coefficients in Z[x]/Phi_{ell(m)}(x).
///
/// For m'' != 2 this is the product over representatives alpha in
/// [1, m''/2] coprime to m'' (with delta the inverse of alpha mod m'') of
///
/// ```text
/// q^{N' B2(alpha/m'')/2} prod_{n >= 0}
///     (1 - zeta^{delta h} q^{alpha m + N' n})
///     (1 - zeta^{-delta h} q^{(m''-alpha) m + N' n});
/// ```
///
/// for m'' = 2 the square-root definition is sidestepped through the
/// exact eta-quotient forms, which keeps the series arithmetic in
/// integer powers of q.
pub fn f_qexpansion(
    label: &FLabel,
    precision: usize,
    ctx: &LevelContext,
) -> Result<QSeries, EtafamError> {
    let m = label.m();
    let h = label.h();
    if precision < (m + 1) as usize {
        return Err(EtafamError::PrecisionTooSmall(
            precision,
            m,
            h,
            (m + 1) as usize,
        ));
    }
    let ell = ctx.ell(m);
    let mpp = ctx.m_dprime(m);
    let ring = CyclotomicRing::new(ell);

    if mpp == 2 {
        let quotient = eta_form(label, ctx).expect("m'' = 2 labels have an eta form");
        return Ok(eta_quotient_qexpansion(&quotient, precision).lift(&ring));
    }

    let npr = ctx.n_prime(m);
    let mut series = QSeries::one(ring.clone(), precision);
    let mut leading = Rational::zero();
    for alpha in ctx.unit_half_reps(m) {
        let delta = modinv(alpha, mpp).expect("alpha is a unit mod m''") as i64;
        // q^{N' B2(alpha/m'')/2}
        let x = Rational::new(BigInt::from(alpha), BigInt::from(mpp));
        let b2 = &x * &x - &x + Rational::new(BigInt::one(), BigInt::from(6u64));
        leading += b2 * Rational::new(BigInt::from(npr), BigInt::from(2u64));

        let z_pos = ring.neg(&ring.zeta_pow(delta * h as i64));
        let z_neg = ring.neg(&ring.zeta_pow(-delta * h as i64));
        let mut k = (alpha * m) as usize;
        while k < precision {
            series.mul_binomial(k, &z_pos);
            k += npr as usize;
        }
        let mut k = ((mpp - alpha) * m) as usize;
        while k < precision {
            series.mul_binomial(k, &z_neg);
            k += npr as usize;
        }
    }
    series.leading = leading;
    Ok(series)
}
