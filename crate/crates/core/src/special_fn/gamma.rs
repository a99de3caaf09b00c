use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

// Lanczos approximation, g = 7, nine terms.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_P: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// Principal branch of `ln Γ(z)`: real on the positive real axis, analytic
/// off the non-positive real axis, and equal to the limit from above on it.
pub fn ln_gamma_complex(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    if z.re >= 0.5 {
        return Ok(lanczos_ln(z));
    }
    if z.im < 0.0 {
        return ln_gamma_complex(z.conj()).map(|v| v.conj());
    }
    // Reflection with a branch of ln sin(πz) that is continuous in the
    // closed upper half plane:
    //   ln sin(πz) = -iπz + ln(1/2) + iπ/2 + ln(1 - e^{2iπz}).
    let i = Complex64::i();
    let e = (2.0 * PI * i * z).exp();
    let ln_sin = -i * PI * z + Complex64::new(-std::f64::consts::LN_2, 0.5 * PI) + (1.0 - e).ln();
    let reflected = lanczos_ln(1.0 - z);
    Ok(LN_PI - ln_sin - reflected)
}

/// `Γ(z)` itself; overflows to infinity for large arguments.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    ln_gamma_complex(z).map(|v| v.exp())
}

fn lanczos_ln(z: Complex64) -> Complex64 {
    let zm1 = z - 1.0;
    let mut series = Complex64::new(LANCZOS_P[0], 0.0);
    for (k, &p) in LANCZOS_P.iter().enumerate().skip(1) {
        series += p / (zm1 + k as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    HALF_LN_2PI + (zm1 + 0.5) * t.ln() - t + series.ln()
}
