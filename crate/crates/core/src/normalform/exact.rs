//! Exact polynomial arithmetic for the resultant identity.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Variables of [`MPoly`], in exponent order.
const PHI: usize = 0;
const L: usize = 1;
const V3: usize = 2;
const V4: usize = 3;

type Exp = [u32; 4];

/// Polynomial in `(φ, L, v₃, v₄)` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub(crate) struct MPoly {
    terms: BTreeMap<Exp, BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl MPoly {
    fn constant(c: BigRational) -> Self {
        let mut p = MPoly::default();
        p.add_term([0; 4], c);
        p
    }

    fn int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    fn var(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        let mut p = MPoly::default();
        p.add_term(e, BigRational::one());
        p
    }

    fn add_term(&mut self, e: Exp, c: BigRational) {
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.neg())
    }

    fn mul(&self, o: &MPoly) -> MPoly {
        let mut out = MPoly::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    fn pow(&self, k: u32) -> MPoly {
        (0..k).fold(MPoly::int(1), |acc, _| acc.mul(self))
    }

    /// Set variable `i` to zero.
    fn kill(&self, i: usize) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[i] == 0)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Divide out the monomial gcd of all terms and the rational content, so
    /// that the result has coprime integer coefficients.
    fn primitive(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut lo = [u32::MAX; 4];
        for e in self.terms.keys() {
            for (l, x) in lo.iter_mut().zip(e) {
                *l = (*l).min(*x);
            }
        }
        let den_lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num_gcd = self.terms.values().fold(BigInt::zero(), |acc, c| {
            acc.gcd(&(c.numer() * &den_lcm / c.denom()))
        });
        let scale = BigRational::new(den_lcm, num_gcd);
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let e = [e[0] - lo[0], e[1] - lo[1], e[2] - lo[2], e[3] - lo[3]];
                    (e, c * &scale)
                })
                .collect(),
        }
    }

    /// Coefficients of `φʲ` as polynomials in the remaining variables.
    fn phi_coeffs(&self) -> Vec<MPoly> {
        let deg = self.terms.keys().map(|e| e[PHI]).max().unwrap_or(0) as usize;
        let mut out = vec![MPoly::default(); deg + 1];
        for (e, c) in &self.terms {
            let mut rest = *e;
            rest[PHI] = 0;
            out[e[PHI] as usize].add_term(rest, c.clone());
        }
        out
    }

    fn from_phi_coeffs(cs: &[MPoly]) -> MPoly {
        let mut out = MPoly::default();
        for (j, c) in cs.iter().enumerate() {
            for (e, v) in &c.terms {
                let mut e = *e;
                e[PHI] = j as u32;
                out.add_term(e, v.clone());
            }
        }
        out
    }

    /// Quotient by `φ² − 1` when the division is exact.
    fn div_phi2_minus_1(&self) -> Option<MPoly> {
        let c = self.phi_coeffs();
        if c.len() < 3 {
            return None;
        }
        // p = (φ² − 1)q gives c_j = q_{j−2} − q_j.
        let mut q = vec![MPoly::default(); c.len() - 2];
        for j in (2..c.len()).rev() {
            let above = if j < q.len() {
                q[j].clone()
            } else {
                MPoly::default()
            };
            q[j - 2] = c[j].add(&above);
        }
        for j in 0..2 {
            let qj = q.get(j).cloned().unwrap_or_default();
            if !c[j].add(&qj).is_zero() {
                return None;
            }
        }
        Some(MPoly::from_phi_coeffs(&q))
    }

    /// Substitute `(L, v₃, v₄)` and return the univariate polynomial in `φ`.
    fn at(&self, l: &BigRational, v3: &BigRational, v4: &BigRational) -> RationalPoly {
        let deg = self.terms.keys().map(|e| e[PHI]).max().unwrap_or(0) as usize;
        let mut c = vec![BigRational::zero(); deg + 1];
        for (e, v) in &self.terms {
            c[e[PHI] as usize] += v * rpow(l, e[L]) * rpow(v3, e[V3]) * rpow(v4, e[V4]);
        }
        RationalPoly::new(c)
    }
}

fn rpow(x: &BigRational, k: u32) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, _| acc * x)
}

/// Rational function as an unreduced numerator/denominator pair.
#[derive(Clone)]
struct Frac {
    num: MPoly,
    den: MPoly,
}

impl Frac {
    fn new(num: MPoly, den: MPoly) -> Self {
        Frac { num, den }
    }

    fn poly(p: MPoly) -> Self {
        Frac::new(p, MPoly::int(1))
    }

    fn add(&self, o: &Frac) -> Frac {
        Frac::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    fn sub(&self, o: &Frac) -> Frac {
        self.add(&Frac::new(o.num.neg(), o.den.clone()))
    }

    fn mul(&self, o: &Frac) -> Frac {
        Frac::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    /// Numerator in lowest terms. The denominators built here only carry
    /// monomial factors and powers of `φ² − 1`, so those are all that needs
    /// cancelling.
    fn reduced_numerator(&self) -> MPoly {
        let mut num = self.num.primitive();
        let mut den = self.den.primitive();
        while let (Some(n), Some(d)) = (num.div_phi2_minus_1(), den.div_phi2_minus_1()) {
            num = n;
            den = d;
        }
        num
    }
}

/// Univariate polynomial in `φ` with exact rational coefficients, lowest
/// degree first; the leading coefficient is nonzero unless the polynomial is 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalPoly {
    #[serde(serialize_with = "ser_rats")]
    pub coefficients: Vec<BigRational>,
}

fn ser_rats<S: serde::Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

fn ser_rat<S: serde::Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl RationalPoly {
    pub fn new(mut coefficients: Vec<BigRational>) -> Self {
        while coefficients.last().is_some_and(|c| c.is_zero()) {
            coefficients.pop();
        }
        RationalPoly { coefficients }
    }

    /// Degree, with the zero polynomial given degree 0.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let coef = if a.is_one() && j > 0 {
                String::new()
            } else {
                format!("{a}*")
            };
            match j {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{coef}phi")?,
                _ => write!(f, "{coef}phi^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `res(p, q)` as the determinant of the Sylvester matrix, by fraction-exact
/// Gaussian elimination.
pub fn sylvester_resultant(p: &RationalPoly, q: &RationalPoly) -> BigRational {
    let (dp, dq) = (p.degree(), q.degree());
    let n = dp + dq;
    if n == 0 {
        return BigRational::one();
    }
    let mut m = vec![vec![BigRational::zero(); n]; n];
    // Rows hold coefficients from the leading one down.
    for r in 0..dq {
        for (k, c) in p.coefficients.iter().rev().enumerate() {
            m[r][r + k] = c.clone();
        }
    }
    for r in 0..dp {
        for (k, c) in q.coefficients.iter().rev().enumerate() {
            m[dq + r][r + k] = c.clone();
        }
    }
    determinant(m)
}

fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let d = &f * &m[col][c];
                m[r][c] -= d;
            }
        }
    }
    det
}

/// Which branch of the closed-form resultant applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResultantCase {
    /// `2¹²3⁶5⁶L²⁴v₃¹²`
    CubicPresent,
    /// `2¹²3⁴L¹⁰v₄⁴`
    QuarticOnly,
    /// `1`
    Neither,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultantReport {
    pub case: ResultantCase,
    /// Numerator of the hessian determinant, content and `φᵏ` removed.
    pub m: RationalPoly,
    /// Numerator of the bordered determinant, normalized the same way.
    pub n: RationalPoly,
    #[serde(serialize_with = "ser_rat")]
    pub resultant: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub expected: BigRational,
    /// `resultant / expected` when that is `±1`, otherwise 0.
    pub sign: i8,
}

impl ResultantReport {
    pub fn matches(&self) -> bool {
        self.sign != 0
    }
}

/// Hessian and bordered-hessian numerators of the second-order invariants,
/// symbolic in `(φ, L, v₃, v₄)`, before any specialization.
fn determinant_numerators() -> (MPoly, MPoly) {
    let phi = MPoly::var(PHI);
    let l = MPoly::var(L);
    let v3 = MPoly::var(V3);
    let v4 = MPoly::var(V4);
    let c = |n: i64| MPoly::int(n);
    let phi2m1 = phi.pow(2).sub(&c(1));

    // 2A₁₁ = 3L/2
    let a = Frac::new(c(3).mul(&l), c(2));
    // 2A₁₂ = −Lφ(3φ² − 2) / (4(φ² − 1))
    let b = Frac::new(
        l.mul(&phi).mul(&c(3).mul(&phi.pow(2)).sub(&c(2))).neg(),
        c(4).mul(&phi2m1),
    );
    // 2A₂₂ = N₂₂ / (8Lφ⁴(φ² − 1))
    let n22 = l
        .pow(2)
        .mul(&phi.pow(6))
        .mul(&c(2).mul(&phi.pow(2)).sub(&c(3)))
        .add(&c(24).mul(&l).mul(&phi.pow(2)).mul(&v4).mul(&phi2m1))
        .sub(&c(60).mul(&v3.pow(2)).mul(&phi2m1));
    let d = Frac::new(n22, c(8).mul(&l).mul(&phi.pow(4)).mul(&phi2m1));

    let hess = a.mul(&d).sub(&b.mul(&b));
    // With ω₁ = −√2 and ω₂ = φ/√2 the border contributes ω₂² = φ²/2,
    // ω₁ω₂ = −φ and ω₁² = 2, all rational:
    // det = −aω₂² + 2bω₁ω₂ − dω₁².
    let half_phi2 = Frac::new(phi.pow(2), c(2));
    let bord = Frac::poly(c(0))
        .sub(&a.mul(&half_phi2))
        .sub(&b.mul(&Frac::poly(c(2).mul(&phi))))
        .sub(&d.mul(&Frac::poly(c(2))));
    (hess.reduced_numerator(), bord.reduced_numerator())
}

fn expected_resultant(
    case: ResultantCase,
    l: &BigRational,
    v3: &BigRational,
    v4: &BigRational,
) -> BigRational {
    match case {
        ResultantCase::CubicPresent => rat(46_656_000_000) * rpow(l, 24) * rpow(v3, 12),
        ResultantCase::QuarticOnly => rat(331_776) * rpow(l, 10) * rpow(v4, 4),
        ResultantCase::Neither => BigRational::one(),
    }
}

/// Resultant in `φ` of the hessian and bordered-hessian numerators.
///
/// Parameters that vanish are set to zero symbolically before the content
/// is removed, so the three branches of the closed form are reproduced
/// including their powers of `L`. Requires `L > 0`.
pub fn resultant_check(
    l: &BigRational,
    v3: &BigRational,
    v4: &BigRational,
) -> crate::Result<ResultantReport> {
    if !l.is_positive() {
        return Err(crate::Error::Domain(format!("L = {l} must be positive")));
    }
    let (mut hm, mut hn) = determinant_numerators();
    let case = if !v3.is_zero() {
        ResultantCase::CubicPresent
    } else if !v4.is_zero() {
        ResultantCase::QuarticOnly
    } else {
        ResultantCase::Neither
    };
    if v3.is_zero() {
        hm = hm.kill(V3);
        hn = hn.kill(V3);
    }
    if v4.is_zero() {
        hm = hm.kill(V4);
        hn = hn.kill(V4);
    }
    let m = hm.primitive().at(l, v3, v4);
    let n = hn.primitive().at(l, v3, v4);
    let resultant = sylvester_resultant(&m, &n);
    let expected = expected_resultant(case, l, v3, v4);
    let sign = if resultant == expected {
        1
    } else if resultant == -expected.clone() {
        -1
    } else {
        0
    };
    Ok(ResultantReport {
        case,
        m,
        n,
        resultant,
        expected,
        sign,
    })
}

/// Parse `"3/4"`, `"-0.25"` or `"1e-3"` as an exact rational; decimals are
/// read digit by digit, so `"0.2"` is `1/5`.
pub fn parse_rational(text: &str) -> crate::Result<BigRational> {
    let bad = || crate::Error::Config(format!("cannot read {text:?} as a rational number"));
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(all.parse::<BigInt>().map_err(|_| bad())?);
    let shift = exp - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    value = if shift >= 0 {
        value * rpow(&ten, shift as u32)
    } else {
        value / rpow(&ten, shift.unsigned_abs())
    };
    Ok(if neg { -value } else { value })
}

/// [`parse_rational`] applied to the shortest decimal that round-trips `x`.
pub fn rational_from_f64(x: f64) -> crate::Result<BigRational> {
    if !x.is_finite() {
        return Err(crate::Error::Domain(format!("{x} has no rational value")));
    }
    parse_rational(&format!("{x:e}"))
}

/// The closed-form invariants in exact arithmetic. `ω₁ = −√2` and
/// `ω₂ = φ/√2` are irrational but the bordered determinant
/// `−A₁₁φ² − 4A₁₂φ − 4A₂₂` is not.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactInvariants {
    #[serde(serialize_with = "ser_rat")]
    pub a11: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub a12: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub a22: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub hess_det: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub bordered_det: BigRational,
}

pub fn closed_form_exact(
    l: &BigRational,
    phi: &BigRational,
    v3: &BigRational,
    v4: &BigRational,
) -> crate::Result<ExactInvariants> {
    let p2 = phi * phi;
    let d = &p2 - rat(1);
    if !l.is_positive() || !phi.is_positive() {
        return Err(crate::Error::Domain("L and phi must be positive".into()));
    }
    if d.is_zero() {
        return Err(crate::Error::Resonance(
            "1*omega1 + 2*omega2 = 0 at phi = 1".into(),
        ));
    }
    let a11 = rat(3) * l / rat(4);
    let a12 = -(l * phi * (rat(3) * &p2 - rat(2))) / (rat(8) * &d);
    let a22 = (l * l * rpow(phi, 6) * (rat(2) * &p2 - rat(3)) + rat(24) * l * &p2 * v4 * &d
        - rat(60) * v3 * v3 * &d)
        / (rat(16) * l * &p2 * &p2 * &d);
    let hess_det = rat(4) * (&a11 * &a22 - &a12 * &a12);
    let bordered_det = -(&a11 * &p2) - rat(4) * &a12 * phi - rat(4) * &a22;
    Ok(ExactInvariants {
        a11,
        a12,
        a22,
        hess_det,
        bordered_det,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ints(v: &[i64]) -> RationalPoly {
        RationalPoly::new(v.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("0.2").unwrap(), r(1, 5));
        assert_eq!(parse_rational("-3/6").unwrap(), r(-1, 2));
        assert_eq!(parse_rational("1.5e-2").unwrap(), r(3, 200));
        assert_eq!(parse_rational("2E3").unwrap(), rat(2000));
        assert_eq!(parse_rational(".5").unwrap(), r(1, 2));
        for bad in ["", "1/0", "abc", "1.2.3", "-", "1e"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
        assert_eq!(rational_from_f64(0.1).unwrap(), r(1, 10));
        assert!(rational_from_f64(f64::NAN).is_err());
    }

    #[test]
    fn exact_invariants_match_floating_point() {
        let e = closed_form_exact(&rat(1), &rat(2), &rat(0), &rat(0)).unwrap();
        assert_eq!(e.a12, r(-5, 6));
        assert_eq!(e.a22, r(5, 12));
        let p = super::super::elliptic_params(1.5, 2.5, 0.2, -0.7).unwrap();
        let f =
            super::super::birkhoff_closed_form(&p, super::super::ResonancePolicy::Relaxed).unwrap();
        let e = closed_form_exact(&r(3, 2), &r(5, 2), &r(1, 5), &r(-7, 10)).unwrap();
        let close = |a: &BigRational, b: f64| {
            let a = num_traits::ToPrimitive::to_f64(a).unwrap();
            (a - b).abs() <= 1e-13 * b.abs().max(1.0)
        };
        assert!(close(&e.a12, f.a12));
        assert!(close(&e.a22, f.a22));
        assert!(close(&e.hess_det, f.hess_det));
        assert!(close(&e.bordered_det, f.bordered_det));
        assert!(closed_form_exact(&rat(1), &rat(1), &rat(0), &rat(0)).is_err());
    }

    #[test]
    fn sylvester_small_cases() {
        // res(x − 2, x − 3) = 2 − 3.
        let a = ints(&[-2, 1]);
        let b = ints(&[-3, 1]);
        assert_eq!(sylvester_resultant(&a, &b), rat(-1));
        // Common root gives zero.
        let c = ints(&[2, -3, 1]);
        assert_eq!(sylvester_resultant(&a, &c), rat(0));
        // res(x² + 1, x) = 1.
        assert_eq!(
            sylvester_resultant(&ints(&[1, 0, 1]), &ints(&[0, 1])),
            rat(1)
        );
    }

    fn hand_forms(
        x: &BigRational,
        l: &BigRational,
        v3: &BigRational,
        v4: &BigRational,
    ) -> (BigRational, BigRational) {
        let p2 = x * x;
        let p6 = rpow(x, 6);
        let l2p6 = l * l * &p6;
        let n22 = &l2p6 * (rat(2) * &p2 - rat(3)) + rat(24) * l * &p2 * v4 * (&p2 - rat(1))
            - rat(60) * v3 * v3 * (&p2 - rat(1));
        let t = rat(3) * &p2 - rat(2);
        let m = rat(3) * &n22 * (&p2 - rat(1)) - &l2p6 * &t * &t;
        let n = rat(-3) * &l2p6 * (&p2 - rat(1)) + rat(2) * &l2p6 * &t - &n22;
        (m, n)
    }

    #[test]
    fn numerators_match_hand_reduction() {
        let (m, n) = determinant_numerators();
        let (l, v3, v4) = (r(2, 1), r(3, 1), r(5, 1));
        let (m, n) = (
            m.primitive().at(&l, &v3, &v4),
            n.primitive().at(&l, &v3, &v4),
        );
        let xs = [r(3, 2), r(5, 1), r(-7, 3), r(1, 9)];
        let ratios: Vec<_> = xs
            .iter()
            .map(|x| {
                let (hm, hn) = hand_forms(x, &l, &v3, &v4);
                (m.eval(x) / hm, n.eval(x) / hn)
            })
            .collect();
        for w in ratios.windows(2) {
            assert_eq!(w[0], w[1]);
        }
    }

    #[test]
    fn resultant_examples() {
        let one = rat(1);
        let zero = rat(0);
        let a = resultant_check(&one, &one, &r(7, 3)).unwrap();
        assert_eq!(a.resultant.abs(), rat(46_656_000_000));
        assert!(a.matches());
        let b = resultant_check(&one, &zero, &one).unwrap();
        assert_eq!(b.resultant.abs(), rat(331_776));
        assert!(b.matches());
        let c = resultant_check(&r(5, 2), &zero, &zero).unwrap();
        assert_eq!(c.resultant.abs(), one);
        assert!(c.matches());
    }

    #[test]
    fn rational_parameters() {
        let a = resultant_check(&r(3, 7), &r(-2, 5), &r(11, 4)).unwrap();
        assert!(a.matches(), "{} vs {}", a.resultant, a.expected);
        let b = resultant_check(&r(9, 2), &rat(0), &r(-1, 3)).unwrap();
        assert!(b.matches(), "{} vs {}", b.resultant, b.expected);
    }

    #[test]
    fn rejects_nonpositive_l() {
        assert!(resultant_check(&rat(0), &rat(1), &rat(1)).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(ints(&[-5, 0, 3]).to_string(), "3*phi^2 - 5");
        assert_eq!(ints(&[]).to_string(), "0");
        assert_eq!(ints(&[2, -1, 1]).to_string(), "phi^2 - phi + 2");
    }
}
