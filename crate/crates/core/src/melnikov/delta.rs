use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::PhiMatrix;

/// `δ(Φ, z) = −Φ + zσ(Φ)` with `σ(Φ) = diag(row sums)`, and
/// `Δ(z) = det δ(Φ, z)` as a polynomial in `z`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaDiagnostics {
    pub phi: PhiMatrix,
    /// Diagonal of `σ(Φ)`.
    pub sigma: Vec<f64>,
    /// Coefficients of `Δ`, lowest degree first; length `n + 1`.
    pub delta_poly: Vec<f64>,
}

const MAX_EXPANSION_DIM: usize = 9;

pub fn delta_and_big_delta(phi: &PhiMatrix) -> Result<DeltaDiagnostics> {
    let n = phi.n();
    if n > MAX_EXPANSION_DIM {
        return Err(Error::Unsupported(format!(
            "cofactor expansion of Delta(z) is limited to n <= {MAX_EXPANSION_DIM}, got {n}"
        )));
    }
    let sigma = phi.row_sums();
    // Entry (i, j) as the linear polynomial [constant, z-coefficient].
    let entries: Vec<Vec<Vec<f64>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| vec![-phi.get(i, j), if i == j { sigma[i] } else { 0.0 }])
                .collect()
        })
        .collect();
    let cols: Vec<usize> = (0..n).collect();
    let mut delta_poly = cofactor_det(&entries, 0, &cols);
    delta_poly.resize(n + 1, 0.0);
    Ok(DeltaDiagnostics {
        phi: phi.clone(),
        sigma,
        delta_poly,
    })
}

impl DeltaDiagnostics {
    pub fn delta_at(&self, z: f64) -> Vec<Vec<f64>> {
        let n = self.phi.n();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| -self.phi.get(i, j) + if i == j { z * self.sigma[i] } else { 0.0 })
                    .collect()
            })
            .collect()
    }

    /// `Δ(z)` by Horner's rule.
    pub fn big_delta(&self, z: f64) -> f64 {
        self.delta_poly.iter().rev().fold(0.0, |acc, c| acc * z + c)
    }
}

/// Laplace expansion along row `row` over the remaining columns.
fn cofactor_det(m: &[Vec<Vec<f64>>], row: usize, cols: &[usize]) -> Vec<f64> {
    if cols.is_empty() {
        return vec![1.0];
    }
    let mut acc = vec![0.0];
    for (k, &c) in cols.iter().enumerate() {
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = cofactor_det(m, row + 1, &rest);
        let term = poly_mul(&m[row][c], &minor);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        if acc.len() < term.len() {
            acc.resize(term.len(), 0.0);
        }
        for (a, t) in acc.iter_mut().zip(&term) {
            *a += sign * t;
        }
    }
    acc
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn scalar_case() {
        let d = delta_and_big_delta(&PhiMatrix::diagonal(&[2.5]).unwrap()).unwrap();
        assert_eq!(d.delta_poly, vec![-2.5, 2.5]);
        assert_eq!(d.big_delta(5.0), 10.0);
    }

    #[test]
    fn diagonal_case() {
        let d = delta_and_big_delta(&PhiMatrix::diagonal(&[1.0, 2.0, 3.0]).unwrap()).unwrap();
        for z in [-1.0, 0.5, 3.0, 5.0] {
            assert_abs_diff_eq!(d.big_delta(z), (z - 1.0_f64).powi(3) * 6.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn vanishes_at_one() {
        let phi = PhiMatrix::new(vec![
            vec![3.0, 0.4, -0.2],
            vec![0.4, 2.0, 0.3],
            vec![-0.2, 0.3, 1.5],
        ])
        .unwrap();
        let d = delta_and_big_delta(&phi).unwrap();
        assert_abs_diff_eq!(d.big_delta(1.0), 0.0, epsilon = 1e-12);
        let m = d.delta_at(1.0);
        for row in &m {
            assert_abs_diff_eq!(row.iter().sum::<f64>(), 0.0, epsilon = 1e-14);
        }
    }
}
