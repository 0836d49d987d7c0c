//! Univariate helpers for the plane solver: exact interpolation and
//! companion-matrix roots.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;

use crate::exactlin::{rat, to_f64, Rational};

/// Coefficients (constant term first) of the unique polynomial of degree
/// below `xs.len()` through the given points, by Newton divided differences.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // expand Newton form from the innermost coefficient outwards
    let mut coeffs = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        // coeffs <- coeffs * (x - xs[i]) + dd[i]
        let mut next = vec![Rational::zero(); n];
        for k in 0..n {
            if coeffs[k].is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += &coeffs[k];
            }
            next[k] -= &coeffs[k] * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

/// Sample abscissae `0, 1, -1, 2, -2, ...`.
pub fn sample_points(n: usize) -> Vec<Rational> {
    (0..n)
        .map(|k| {
            let h = k.div_ceil(2) as i64;
            if k % 2 == 1 {
                rat(h)
            } else {
                rat(-h)
            }
        })
        .collect()
}

/// Strips exact trailing zeros (high degree) and converts to floats scaled
/// so that the largest coefficient has modulus one.
pub fn to_scaled_f64(coeffs: &[Rational]) -> Vec<f64> {
    let deg = coeffs.iter().rposition(|c| !c.is_zero());
    let Some(deg) = deg else {
        return Vec::new();
    };
    let big = coeffs[..=deg]
        .iter()
        .map(num_traits::Signed::abs)
        .max()
        .expect("nonempty");
    coeffs[..=deg].iter().map(|c| to_f64(&(c / &big))).collect()
}

pub fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of `Σ c_k z^k` (constant term first, nonzero leading
/// coefficient) as eigenvalues of the companion matrix, each polished by a
/// few Newton steps.
pub fn roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let Some(deg) = coeffs.iter().rposition(|c| c.norm() > 0.0) else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let monic: Vec<Complex64> = coeffs[..deg].iter().map(|c| c / lead).collect();
    let mut comp = DMatrix::<Complex64>::zeros(deg, deg);
    for i in 1..deg {
        comp[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -monic[i];
    }
    let eig = schur_eigenvalues(comp);
    let poly = &coeffs[..=deg];
    eig.into_iter().map(|z| polish(poly, z)).collect()
}

/// Eigenvalues read off the Schur form, solving any remaining 2x2 diagonal
/// blocks directly.
fn schur_eigenvalues(a: DMatrix<Complex64>) -> Vec<Complex64> {
    let n = a.nrows();
    let (_, t) = a.schur().unpack();
    let mut out = Vec::with_capacity(n);
    let mut k = 0;
    while k < n {
        if k + 1 < n && t[(k + 1, k)].norm() > 0.0 {
            let (p, q, r, s) = (t[(k, k)], t[(k, k + 1)], t[(k + 1, k)], t[(k + 1, k + 1)]);
            let half = (p + s) / 2.0;
            let disc = (((p - s) / 2.0).powu(2) + q * r).sqrt();
            out.push(half + disc);
            out.push(half - disc);
            k += 2;
        } else {
            out.push(t[(k, k)]);
            k += 1;
        }
    }
    out
}

fn polish(poly: &[Complex64], mut z: Complex64) -> Complex64 {
    let (mut best, mut best_val) = (z, horner(poly, z).0.norm());
    for _ in 0..8 {
        let (p, dp) = horner(poly, z);
        if dp.norm() == 0.0 {
            break;
        }
        z -= p / dp;
        let v = horner(poly, z).0.norm();
        if v < best_val {
            best = z;
            best_val = v;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = [rat(3), rat(-1), rat(0), rat(2)];
        let xs = sample_points(5);
        let ys: Vec<Rational> = xs
            .iter()
            .map(|x| p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c))
            .collect();
        let c = interpolate(&xs, &ys);
        assert_eq!(&c[..4], &p);
        assert!(c[4].is_zero());
    }

    #[test]
    fn companion_roots() {
        // (z - 1)(z + 2)(z - 3i)
        let c = |re, im| Complex64::new(re, im);
        let coeffs = [c(0.0, 6.0), c(-2.0, -3.0), c(1.0, -3.0), c(1.0, 0.0)];
        let mut r = roots(&coeffs);
        r.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        let want = [c(-2.0, 0.0), c(0.0, 3.0), c(1.0, 0.0)];
        for (a, b) in r.iter().zip(&want) {
            assert!((a - b).norm() < 1e-12, "{a} vs {b}");
        }
        assert!(roots(&[c(5.0, 0.0)]).is_empty());
    }

    #[test]
    fn scaled_conversion_drops_leading_zeros() {
        let v = to_scaled_f64(&[rat(2), rat(-4), rat(0)]);
        assert_eq!(v, vec![0.5, -1.0]);
        assert!(to_scaled_f64(&[rat(0)]).is_empty());
    }
}
