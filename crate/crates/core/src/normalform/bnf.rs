//! Degree-4 Birkhoff normalization of the polynomial Hamiltonian about the
//! elliptic point, in complex coordinates `zⱼ, cⱼ` with `Iⱼ = zⱼcⱼ`.

use std::collections::HashMap;

use num_complex::Complex64;

use super::{
    bordered_det, check_elliptic_params, hess_det, BirkhoffInvariants, H2Variant, ResonancePolicy,
};
use crate::error::{Error, Result};
use crate::models::ModelParams;

/// Exponents of `(z₁, c₁, z₂, c₂)`.
type Mono = [u8; 4];

#[derive(Debug, Clone, Default, PartialEq)]
pub(crate) struct CPoly(pub(crate) HashMap<Mono, Complex64>);

impl CPoly {
    fn add_term(&mut self, m: Mono, c: Complex64) {
        *self.0.entry(m).or_default() += c;
    }

    fn one() -> Self {
        let mut p = CPoly::default();
        p.add_term([0; 4], Complex64::new(1.0, 0.0));
        p
    }

    fn mul(&self, o: &CPoly) -> CPoly {
        let mut out = CPoly::default();
        for (a, ca) in &self.0 {
            for (b, cb) in &o.0 {
                let m = [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]];
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    fn degree_part(&self, d: u8) -> CPoly {
        CPoly(
            self.0
                .iter()
                .filter(|(m, _)| m.iter().sum::<u8>() == d)
                .map(|(m, c)| (*m, *c))
                .collect(),
        )
    }

    fn coeff(&self, m: Mono) -> Complex64 {
        self.0.get(&m).copied().unwrap_or_default()
    }

    fn deriv(&self, var: usize) -> CPoly {
        let mut out = CPoly::default();
        for (m, c) in &self.0 {
            if m[var] > 0 {
                let mut e = *m;
                e[var] -= 1;
                out.add_term(e, c * m[var] as f64);
            }
        }
        out
    }

    /// `{f, g} = −i Σⱼ (∂f/∂zⱼ ∂g/∂cⱼ − ∂f/∂cⱼ ∂g/∂zⱼ)`, the canonical
    /// bracket pulled back to `z = (q + ip)/√2`, `c = (q − ip)/√2`.
    fn bracket(&self, g: &CPoly) -> CPoly {
        let mut out = CPoly::default();
        for (z, c) in [(0, 1), (2, 3)] {
            let t1 = self.deriv(z).mul(&g.deriv(c));
            let t2 = self.deriv(c).mul(&g.deriv(z));
            for (m, v) in t1.0 {
                out.add_term(m, -Complex64::i() * v);
            }
            for (m, v) in t2.0 {
                out.add_term(m, Complex64::i() * v);
            }
        }
        out
    }
}

/// Real polynomial in `(u, U, w, W)`: coefficient and exponents.
pub(crate) type RealTerms = Vec<(f64, [u8; 4])>;

/// Terms of `−H⁽¹⁾ + H⁽²⁾` about the elliptic point. `uncoupled` drops every
/// term of `H⁽²⁾` that contains both `u` and `w`.
pub(crate) fn hamiltonian_terms(
    p: &ModelParams,
    variant: H2Variant,
    uncoupled: bool,
) -> Result<RealTerms> {
    let phi = check_elliptic_params(p)?;
    let l = p.big_l();
    let sl = l.sqrt();
    let (v3, v4) = (p.v3(), p.v4());
    let mut t: RealTerms = vec![
        (-0.5, [0, 2, 0, 0]),
        (-1.0, [2, 0, 0, 0]),
        (-sl, [3, 0, 0, 0]),
        (-0.25 * l, [4, 0, 0, 0]),
    ];
    let h = 0.5 * phi;
    let (c_uw2, c_u2w2, c_w3, c_uw3, c_w4) = match variant {
        H2Variant::Corrected => (
            sl,
            0.5 * l,
            v3 / (phi.powf(2.5) * sl),
            v3 / phi.powf(2.5),
            v4 / phi.powi(3),
        ),
        H2Variant::Printed => (
            phi * sl,
            0.5 * phi * l,
            v3 / (phi.powi(3) * l).sqrt(),
            v3 / phi.powf(1.5),
            v4 / phi.powi(2),
        ),
    };
    t.push((h, [0, 0, 0, 2]));
    t.push((0.5 * h, [0, 0, 2, 0]));
    t.push((h * c_w3, [0, 0, 3, 0]));
    t.push((h * c_w4, [0, 0, 4, 0]));
    if !uncoupled {
        t.push((h * c_uw2, [1, 0, 2, 0]));
        t.push((h * c_u2w2, [2, 0, 2, 0]));
        t.push((h * c_uw3, [1, 0, 3, 0]));
    }
    t.retain(|(c, _)| *c != 0.0);
    Ok(t)
}

/// `u, U, w, W` as linear forms in `(z₁, c₁, z₂, c₂)`.
fn linear_forms() -> [CPoly; 4] {
    let a = 2f64.powf(-0.75);
    let b = 2f64.powf(-0.25);
    let mi = -Complex64::i();
    let form = |coefs: [Complex64; 4]| {
        let mut p = CPoly::default();
        for (k, c) in coefs.into_iter().enumerate() {
            if c != Complex64::default() {
                let mut m = [0; 4];
                m[k] = 1;
                p.add_term(m, c);
            }
        }
        p
    };
    let r = |x: f64| Complex64::new(x, 0.0);
    let z = Complex64::default();
    [
        form([r(a), r(a), z, z]),
        form([mi * b, -mi * b, z, z]),
        form([z, z, r(b), r(b)]),
        form([z, z, mi * a, -mi * a]),
    ]
}

pub(crate) fn to_complex(terms: &RealTerms) -> CPoly {
    let forms = linear_forms();
    let powers: Vec<Vec<CPoly>> = forms
        .iter()
        .map(|f| {
            let mut v = vec![CPoly::one()];
            for k in 1..=4 {
                let next = v[k - 1].mul(f);
                v.push(next);
            }
            v
        })
        .collect();
    let mut out = CPoly::default();
    for (c, e) in terms {
        let mut prod = CPoly::one();
        for (k, &ek) in e.iter().enumerate() {
            prod = prod.mul(&powers[k][ek as usize]);
        }
        for (m, v) in prod.0 {
            out.add_term(m, v * *c);
        }
    }
    out
}

fn divisor(m: &Mono, omega: (f64, f64)) -> f64 {
    (m[0] as f64 - m[1] as f64) * omega.0 + (m[2] as f64 - m[3] as f64) * omega.1
}

pub(crate) const SMALL_DIVISOR: f64 = 1e-9;

fn resonance_error(m: &Mono, div: f64, phi: f64) -> Error {
    let d1 = m[0] as i32 - m[1] as i32;
    let d2 = m[2] as i32 - m[3] as i32;
    Error::Resonance(format!(
        "{d1}*omega1 + {d2}*omega2 = {div:e} at phi = {phi}"
    ))
}

/// Second-order invariants with their imaginary residues, which vanish for
/// a real Hamiltonian.
pub(crate) fn normalize(
    p: &ModelParams,
    policy: ResonancePolicy,
    variant: H2Variant,
    uncoupled: bool,
) -> Result<([Complex64; 3], (f64, f64))> {
    let phi = check_elliptic_params(p)?;
    let h = to_complex(&hamiltonian_terms(p, variant, uncoupled)?);
    let omega = (h.coeff([1, 1, 0, 0]).re, h.coeff([0, 0, 1, 1]).re);
    if policy == ResonancePolicy::Strict {
        for d in [3u8, 4] {
            for m in monomials(d) {
                let div = divisor(&m, omega);
                if (m[0] != m[1] || m[2] != m[3]) && div.abs() < SMALL_DIVISOR {
                    return Err(resonance_error(&m, div, phi));
                }
            }
        }
    }
    let h3 = h.degree_part(3);
    // Coefficients at roundoff level are cancellations, not terms.
    let floor = 1e-14 * h3.0.values().map(|c| c.norm()).fold(0.0, f64::max);
    let mut chi = CPoly::default();
    for (m, c) in &h3.0 {
        if c.norm() <= floor {
            continue;
        }
        let div = divisor(m, omega);
        if div.abs() < SMALL_DIVISOR {
            return Err(resonance_error(m, div, phi));
        }
        chi.add_term(*m, Complex64::i() * c / div);
    }
    let mut k4 = h.degree_part(4);
    for (m, v) in h3.bracket(&chi).0 {
        k4.add_term(m, 0.5 * v);
    }
    Ok((
        [
            k4.coeff([2, 2, 0, 0]),
            0.5 * k4.coeff([1, 1, 1, 1]),
            k4.coeff([0, 0, 2, 2]),
        ],
        omega,
    ))
}

fn monomials(d: u8) -> Vec<Mono> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            for c in 0..=d - a - b {
                out.push([a, b, c, d - a - b - c]);
            }
        }
    }
    out
}

/// Options of [`birkhoff_numeric`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BnfOptions {
    pub policy: ResonancePolicy,
    pub variant: H2Variant,
    /// Drop the `uw²`, `u²w²` and `uw³` terms of `H⁽²⁾`.
    pub uncoupled: bool,
}

/// Numerical Birkhoff normal form to degree 4.
pub fn birkhoff_numeric(p: &ModelParams, opts: BnfOptions) -> Result<BirkhoffInvariants> {
    let ([a11, a12, a22], omega) = normalize(p, opts.policy, opts.variant, opts.uncoupled)?;
    let (a11, a12, a22) = (a11.re, a12.re, a22.re);
    Ok(BirkhoffInvariants {
        omega1: omega.0,
        omega2: omega.1,
        a11,
        a12,
        a22,
        hess_det: hess_det(a11, a12, a22),
        bordered_det: bordered_det(a11, a12, a22, omega.0, omega.1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{Coupling, Curvature};

    fn params(l: f64, phi: f64, v3: f64, v4: f64) -> ModelParams {
        super::super::elliptic_params(l, phi, v3, v4).unwrap()
    }

    #[test]
    fn quadratic_part_is_diagonal() {
        let p = params(1.3, 1.7, 0.4, 0.2);
        let h = to_complex(&hamiltonian_terms(&p, H2Variant::Corrected, false).unwrap());
        let h2 = h.degree_part(2);
        for (m, c) in &h2.0 {
            match m {
                [1, 1, 0, 0] => assert!((c.re + 2f64.sqrt()).abs() < 1e-14 && c.im.abs() < 1e-14),
                [0, 0, 1, 1] => {
                    assert!((c.re - 1.7 / 2f64.sqrt()).abs() < 1e-14 && c.im.abs() < 1e-14)
                }
                _ => assert!(c.norm() < 1e-14, "{m:?} {c}"),
            }
        }
    }

    #[test]
    fn invariants_are_real() {
        let p = params(0.8, 2.7, 0.5, -0.3);
        let (a, _) = normalize(&p, ResonancePolicy::Relaxed, H2Variant::Corrected, false).unwrap();
        for c in a {
            assert!(c.im.abs() < 1e-12 * c.re.abs().max(1.0), "{c}");
        }
    }

    #[test]
    fn bracket_is_canonical() {
        let mut z = CPoly::default();
        z.add_term([1, 0, 0, 0], Complex64::new(1.0, 0.0));
        let mut c = CPoly::default();
        c.add_term([0, 1, 0, 0], Complex64::new(1.0, 0.0));
        assert_eq!(z.bracket(&c).coeff([0; 4]), -Complex64::i());
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(3).len(), 20);
        assert_eq!(monomials(4).len(), 35);
    }

    #[test]
    fn other_curvature_rejected() {
        let p = ModelParams::unit_scalar(Curvature::Positive, Coupling::Minimal, 1.5).unwrap();
        assert!(birkhoff_numeric(&p, BnfOptions::default()).is_err());
    }
}
