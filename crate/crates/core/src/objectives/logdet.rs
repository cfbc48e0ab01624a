use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{ElementSet, Error, Result, SetFunction};

const JITTER: f64 = 1e-10;

/// `f(S) = log det(I + K_S)` for a symmetric PSD kernel `K`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogDetObjective {
    n: usize,
    kernel: Vec<f64>,
}

impl LogDetObjective {
    /// `kernel` is row-major `n × n`.
    pub fn new(n: usize, kernel: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInstance("kernel is empty".into()));
        }
        if kernel.len() != n * n {
            return Err(Error::InvalidInstance(format!(
                "kernel has {} entries, expected {n}x{n}",
                kernel.len()
            )));
        }
        if kernel.iter().any(|k| !k.is_finite()) {
            return Err(Error::InvalidInstance("kernel has non-finite entries".into()));
        }
        for i in 0..n {
            for j in 0..i {
                let (a, b) = (kernel[i * n + j], kernel[j * n + i]);
                if (a - b).abs() > 1e-12 * (1.0 + a.abs().max(b.abs())) {
                    return Err(Error::InvalidInstance(format!(
                        "kernel is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self { n, kernel })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kernel(&self) -> &[f64] {
        &self.kernel
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.kernel[i * self.n + j]
    }
}

impl SetFunction for LogDetObjective {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn eval(&self, set: &ElementSet) -> Result<f64> {
        let idx = set.as_slice();
        let m = idx.len();
        if m == 0 {
            return Ok(0.0);
        }
        let mut a = vec![0.0; m * m];
        for (r, &i) in idx.iter().enumerate() {
            for (c, &j) in idx.iter().enumerate() {
                a[r * m + c] = self.entry(i, j) + if r == c { 1.0 } else { 0.0 };
            }
        }
        let half = match cholesky_log_diag(&a, m, 0.0) {
            Some(v) => v,
            None => cholesky_log_diag(&a, m, JITTER).ok_or_else(|| {
                Error::NumericalDomain(format!("I + K_S is not positive definite for a set of size {m}"))
            })?,
        };
        Ok(2.0 * half)
    }
}

/// Σ ln L_ii of the Cholesky factor of `a + jitter·I`, or `None` if a pivot
/// is not positive.
fn cholesky_log_diag(a: &[f64], m: usize, jitter: f64) -> Option<f64> {
    let mut l = vec![0.0; m * m];
    let mut acc = 0.0;
    for j in 0..m {
        let mut d = a[j * m + j] + jitter;
        for k in 0..j {
            d -= l[j * m + k] * l[j * m + k];
        }
        if d.is_nan() || d <= 0.0 {
            return None;
        }
        let ljj = libm::sqrt(d);
        l[j * m + j] = ljj;
        acc += libm::log(ljj);
        for i in j + 1..m {
            let mut s = a[i * m + j];
            for k in 0..j {
                s -= l[i * m + k] * l[j * m + k];
            }
            l[i * m + j] = s / ljj;
        }
    }
    Some(acc)
}

/// `K_ij = exp(−‖x_i − x_j‖² / σ²)`, row-major.
pub fn build_gaussian_kernel(features: &[Vec<f64>], sigma: f64) -> Result<Vec<f64>> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "sigma must be positive, got {sigma}"
        )));
    }
    let n = features.len();
    if let Some(first) = features.first() {
        let dim = first.len();
        if let Some(bad) = features.iter().position(|x| x.len() != dim) {
            return Err(Error::InvalidParameter(format!(
                "feature {bad} has dimension {}, expected {dim}",
                features[bad].len()
            )));
        }
    }
    let s2 = sigma * sigma;
    let mut k = vec![0.0; n * n];
    for i in 0..n {
        k[i * n + i] = 1.0;
        for j in 0..i {
            let d2: f64 = features[i]
                .iter()
                .zip(&features[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            let v = libm::exp(-d2 / s2);
            k[i * n + j] = v;
            k[j * n + i] = v;
        }
    }
    Ok(k)
}
