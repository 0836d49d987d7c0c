use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub const DEFAULT_REL_TOL: f64 = 1e-8;

fn check(m: &DMatrix<f64>, rel_tol: f64) -> Result<()> {
    if !(rel_tol > 0.0 && rel_tol < 1.0) {
        return Err(Error::input(format!("rel_tol {rel_tol} outside (0, 1)")));
    }
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if !m[(i, j)].is_finite() {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Number of singular values above `rel_tol` times the largest one.
pub fn numeric_rank(m: &DMatrix<f64>, rel_tol: f64) -> Result<usize> {
    check(m, rel_tol)?;
    if m.is_empty() {
        return Ok(0);
    }
    let sv = m.clone().svd(false, false).singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|&&s| s > rel_tol * smax).count())
}

/// Numeric rank of a complex matrix.
pub fn numeric_rank_complex(m: &DMatrix<Complex64>, rel_tol: f64) -> Result<usize> {
    if !(rel_tol > 0.0 && rel_tol < 1.0) {
        return Err(Error::input(format!("rel_tol {rel_tol} outside (0, 1)")));
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite { row: 0, col: 0 });
    }
    if m.is_empty() {
        return Ok(0);
    }
    let sv = m.clone().svd(false, false).singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|&&s| s > rel_tol * smax).count())
}

pub fn norm_c(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn normalize_c(v: &[Complex64]) -> Vec<Complex64> {
    let n = norm_c(v);
    if n == 0.0 {
        return v.to_vec();
    }
    v.iter().map(|z| z / n).collect()
}

/// Scales a projective point to unit norm with its largest-modulus
/// coordinate real and positive.
pub fn phase_normalize(v: &[Complex64]) -> Vec<Complex64> {
    let u = normalize_c(v);
    let Some(big) = u.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())) else {
        return u;
    };
    if big.norm() == 0.0 {
        return u;
    }
    let phase = big.conj() / big.norm();
    u.iter().map(|z| z * phase).collect()
}

/// Sine of the angle between two projective points (0 when equal).
pub fn angular_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let a = normalize_c(a);
    let b = normalize_c(b);
    let ip: Complex64 = a.iter().zip(&b).map(|(x, y)| x.conj() * y).sum();
    let resid: Vec<Complex64> = b.iter().zip(&a).map(|(y, x)| y - ip * x).collect();
    norm_c(&resid)
}
