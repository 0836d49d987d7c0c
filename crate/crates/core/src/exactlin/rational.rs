//! Arbitrary-precision rationals and their string form.
//!
//! `Rational` is `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator. The wire format is `"p/q"`, or
//! `"p"` when the denominator is one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            if let Ok(n) = s.parse::<BigInt>() {
                return Ok(Rational::from_integer(n));
            }
            let f: f64 = s.parse().map_err(|_| bad())?;
            from_f64_exact(f).ok_or_else(bad)
        }
    }
}

/// Exact dyadic value of a finite float.
pub fn from_f64_exact(f: f64) -> Option<Rational> {
    Rational::from_f64(f)
}

pub fn to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale both down by the same power of two
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

/// Best rational approximation with denominator at most `max_denom`, found
/// from the continued fraction expansion of `x`. Returns `None` when the
/// approximation misses `x` by more than `tol`.
pub fn reconstruct(x: f64, max_denom: u64, tol: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let max_denom = BigInt::from(max_denom);
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut rem = x;
    let mut best: Option<Rational> = None;
    for _ in 0..64 {
        let a = rem.floor();
        let ai = BigInt::from_f64(a)?;
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        if q2 > max_denom {
            break;
        }
        let cand = Rational::new(p2.clone(), q2.clone());
        let err = (to_f64(&cand) - x).abs();
        best = Some(cand);
        if err <= f64::EPSILON * x.abs().max(1.0) {
            break;
        }
        let f = rem - a;
        if f.abs() < 1e-300 {
            break;
        }
        rem = 1.0 / f;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
    best.filter(|r| (to_f64(r) - x).abs() <= tol)
}

/// Common denominator of a slice: the lcm of all denominators.
pub fn lcm_denominator(values: &[Rational]) -> BigInt {
    values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales a vector to a primitive integer vector (gcd 1) whose first nonzero
/// entry is positive.
pub fn primitive_integer_vector(values: &[Rational]) -> Vec<BigInt> {
    let l = lcm_denominator(values);
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| (v * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return ints;
    }
    let sign = match ints.iter().find(|v| !v.is_zero()) {
        Some(v) if v.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|v| v / &g * &sign).collect()
}

pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        format_rational(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let v = RationalRepr::deserialize(d)?;
        v.into_rational().map_err(serde::de::Error::custom)
    }
}

pub mod serde_rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<RationalRepr>::deserialize(d)?
            .into_iter()
            .map(RationalRepr::into_rational)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)
    }
}

/// Accepts `"p/q"` strings, integers and floats on input.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
pub enum RationalRepr {
    Int(i64),
    Float(f64),
    Text(String),
}

impl RationalRepr {
    pub fn into_rational(self) -> Result<Rational> {
        match self {
            RationalRepr::Int(i) => Ok(rat(i)),
            RationalRepr::Float(f) => from_f64_exact(f).ok_or_else(|| Error::Parse(format!("non-finite number {f}"))),
            RationalRepr::Text(s) => parse_rational(&s),
        }
    }
}

impl From<&Rational> for RationalRepr {
    fn from(r: &Rational) -> Self {
        RationalRepr::Text(format_rational(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = frac(6, -4);
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&frac(0, 7)), "0");
        assert!(frac(0, 7).denom().is_one());
        assert_eq!(format_rational(&frac(10, 5)), "2");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_rational(" -7 ").unwrap(), rat(-7));
        assert_eq!(parse_rational("0.5").unwrap(), frac(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn reconstruct_small_fractions() {
        assert_eq!(reconstruct(0.25, 1_000_000, 1e-12), Some(frac(1, 4)));
        assert_eq!(reconstruct(-2.0 / 3.0, 1_000_000, 1e-12), Some(frac(-2, 3)));
        assert_eq!(reconstruct(355.0 / 113.0, 1_000_000, 1e-12), Some(frac(355, 113)));
        assert_eq!(reconstruct(std::f64::consts::PI, 100, 1e-12), None);
    }

    #[test]
    fn primitive_vectors() {
        let v = [frac(-1, 2), frac(1, 3), rat(0)];
        let p = primitive_integer_vector(&v);
        assert_eq!(p, vec![BigInt::from(3), BigInt::from(-2), BigInt::from(0)]);
    }

    #[test]
    fn huge_values_convert() {
        let big = Rational::from_integer(BigInt::from(10).pow(400));
        let r = &big / (&big * rat(4));
        assert_eq!(to_f64(&r), 0.25);
        let r = Rational::new(BigInt::from(10).pow(400) * 3, BigInt::from(10).pow(400));
        assert!((to_f64(&r) - 3.0).abs() < 1e-12);
    }
}
