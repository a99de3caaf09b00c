use crate::error::{domain, Result};

/// Parameter `m = k²` of the Jacobi elliptic functions, restricted to `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EllipticModulus(f64);

impl EllipticModulus {
    pub fn new(m: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&m) {
            return domain(format!("elliptic parameter m = {m} outside [0, 1)"));
        }
        Ok(Self(m))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Complementary parameter `1 - m`.
    pub fn complement(self) -> f64 {
        1.0 - self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiValues {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

const AGM_MAX_STEPS: usize = 40;

/// `sn`, `cn`, `dn` by descending Landen transformation on the AGM sequence.
pub fn jacobi(u: f64, m: EllipticModulus) -> JacobiValues {
    let m = m.value();
    if m == 0.0 {
        let (s, c) = u.sin_cos();
        return JacobiValues {
            sn: s,
            cn: c,
            dn: 1.0,
        };
    }

    let mut a = [0.0f64; AGM_MAX_STEPS + 1];
    let mut c = [0.0f64; AGM_MAX_STEPS + 1];
    a[0] = 1.0;
    c[0] = m.sqrt();
    let mut b = (1.0 - m).sqrt();
    let mut n = 0;
    while c[n].abs() > f64::EPSILON * a[n] && n < AGM_MAX_STEPS {
        let an = a[n];
        a[n + 1] = 0.5 * (an + b);
        c[n + 1] = 0.5 * (an - b);
        b = (an * b).sqrt();
        n += 1;
    }

    let mut phi = (1u64 << n) as f64 * a[n] * u;
    let mut prev = phi;
    for j in (1..=n).rev() {
        prev = phi;
        phi = 0.5 * (phi + (c[j] * phi.sin() / a[j]).asin());
    }
    let (sn, cn) = phi.sin_cos();
    // The cosine ratio is exact away from the zeros of cn; near them the
    // algebraic identity is well conditioned instead.
    let dn = if n == 0 {
        1.0
    } else if cn.abs() > 0.25 {
        cn / (prev - phi).cos()
    } else {
        (1.0 - m * sn * sn).sqrt()
    };
    JacobiValues { sn, cn, dn }
}

/// Arithmetic-geometric mean of two positive numbers.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..AGM_MAX_STEPS {
        if (a - b).abs() <= f64::EPSILON * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    0.5 * (a + b)
}

/// Complete elliptic integral of the first kind `K(m)`.
pub fn complete_k(m: EllipticModulus) -> f64 {
    std::f64::consts::FRAC_PI_2 / agm(1.0, m.complement().sqrt())
}
