use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{
    from_f64_exact, normalize_c, phase_normalize, primitive_integer_vector, reconstruct, to_f64, Rational, RationalRepr,
};

/// A point of projective space, exact or numeric (complex).
#[derive(Clone, Debug, PartialEq)]
pub enum ProjPoint {
    Exact(Vec<Rational>),
    Numeric(Vec<Complex64>),
}

impl ProjPoint {
    pub fn exact(coords: Vec<Rational>) -> Self {
        ProjPoint::Exact(coords)
    }

    pub fn real(coords: &[f64]) -> Self {
        ProjPoint::Numeric(coords.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        match self {
            ProjPoint::Exact(v) => v.len(),
            ProjPoint::Numeric(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ProjPoint::Exact(v) => v.iter().all(Zero::is_zero),
            ProjPoint::Numeric(v) => v.iter().all(|z| z.norm() == 0.0),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ProjPoint::Exact(_))
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        match self {
            ProjPoint::Exact(v) => v.iter().map(|r| Complex64::new(to_f64(r), 0.0)).collect(),
            ProjPoint::Numeric(v) => v.clone(),
        }
    }

    /// Unit-norm, phase-normalised representative.
    pub fn normalized(&self) -> Vec<Complex64> {
        phase_normalize(&self.to_complex())
    }

    /// Imaginary norm of the phase-normalised representative.
    pub fn imaginary_norm(&self) -> f64 {
        self.normalized().iter().map(|z| z.im * z.im).sum::<f64>().sqrt()
    }

    pub fn is_real(&self, tol: f64) -> bool {
        match self {
            ProjPoint::Exact(_) => true,
            ProjPoint::Numeric(_) => self.imaginary_norm() < tol,
        }
    }

    /// Real coordinates of the normalised representative (imaginary parts
    /// dropped).
    pub fn real_part(&self) -> Vec<f64> {
        self.normalized().iter().map(|z| z.re).collect()
    }

    /// Tries to recover exact coordinates: scales the real representative
    /// so its largest coordinate is one and reconstructs each entry with
    /// denominator at most `max_denom`.
    pub fn rationalize(&self, max_denom: u64, tol: f64) -> Option<Vec<Rational>> {
        match self {
            ProjPoint::Exact(v) => Some(v.clone()),
            ProjPoint::Numeric(_) => {
                if !self.is_real(tol.max(1e-9)) {
                    return None;
                }
                let re = self.real_part();
                let big = re
                    .iter()
                    .cloned()
                    .fold(0.0_f64, |a, b| if b.abs() > a.abs() { b } else { a });
                if big == 0.0 {
                    return None;
                }
                let coords = re
                    .iter()
                    .map(|x| reconstruct(x / big, max_denom, tol))
                    .collect::<Option<Vec<_>>>()?;
                Some(
                    primitive_integer_vector(&coords)
                        .into_iter()
                        .map(Rational::from_integer)
                        .collect(),
                )
            }
        }
    }

    pub fn to_repr(&self) -> PointRepr {
        match self {
            ProjPoint::Exact(v) => PointRepr::Exact(v.iter().map(RationalRepr::from).collect()),
            ProjPoint::Numeric(v) => PointRepr::Numeric(normalize_c(v).iter().map(|z| [z.re, z.im]).collect()),
        }
    }

    pub fn from_repr(r: PointRepr) -> Result<Self> {
        match r {
            PointRepr::Exact(v) => Ok(ProjPoint::Exact(
                v.into_iter()
                    .map(RationalRepr::into_rational)
                    .collect::<Result<Vec<_>>>()?,
            )),
            PointRepr::Numeric(v) => {
                if v.iter().flatten().any(|x| !x.is_finite()) {
                    return Err(Error::Parse("non-finite coordinate".into()));
                }
                Ok(ProjPoint::Numeric(
                    v.iter().map(|[re, im]| Complex64::new(*re, *im)).collect(),
                ))
            }
        }
    }

    /// Exact coordinates when available; real floats are converted exactly.
    pub fn as_exact(&self) -> Option<Vec<Rational>> {
        match self {
            ProjPoint::Exact(v) => Some(v.clone()),
            ProjPoint::Numeric(v) if v.iter().all(|z| z.im == 0.0) => v.iter().map(|z| from_f64_exact(z.re)).collect(),
            ProjPoint::Numeric(_) => None,
        }
    }
}

/// Wire form: exact points as rational strings, numeric points as
/// `[re, im]` pairs per coordinate.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointRepr {
    Numeric(Vec<[f64; 2]>),
    Exact(Vec<RationalRepr>),
}

impl Serialize for ProjPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        ProjPoint::from_repr(PointRepr::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{frac, rat};

    #[test]
    fn wire_forms() {
        let p = ProjPoint::Exact(vec![rat(1), frac(-1, 2), rat(0)]);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"["1","-1/2","0"]"#);
        let back: ProjPoint = serde_json::from_str(r#"["1","-1/2",0]"#).unwrap();
        assert_eq!(back, p);
        let q: ProjPoint = serde_json::from_str("[[1.0,0.0],[0.0,2.0]]").unwrap();
        assert!(!q.is_exact());
        assert!(!q.is_real(1e-7));
    }

    #[test]
    fn rationalize_scaled_point() {
        let p = ProjPoint::real(&[-0.5, 0.25, 0.0]);
        assert_eq!(p.rationalize(1_000_000, 1e-12).unwrap(), vec![rat(2), rat(-1), rat(0)]);
        let irr = ProjPoint::real(&[1.0, std::f64::consts::SQRT_2]);
        assert!(irr.rationalize(1000, 1e-12).is_none());
    }

    #[test]
    fn complex_multiple_of_real_point_is_real() {
        let z = Complex64::new(0.3, -1.7);
        let p = ProjPoint::Numeric(vec![z * 2.0, z * -1.0, z * 0.5]);
        assert!(p.is_real(1e-12));
        assert_eq!(p.rationalize(100, 1e-9).unwrap(), vec![rat(4), rat(-2), rat(1)]);
    }
}
