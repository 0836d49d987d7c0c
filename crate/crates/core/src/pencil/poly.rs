//! Sparse multivariate polynomials with rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{format_rational, rat, to_f64, Rational, RationalRepr};

/// Exponent vector ordered by graded lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    num_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(num_vars: usize) -> Self {
        MultiPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        let mut p = MultiPoly::zero(num_vars);
        p.add_term(vec![0; num_vars], c);
        p
    }

    pub fn one(num_vars: usize) -> Self {
        MultiPoly::constant(num_vars, Rational::one())
    }

    /// The variable with index `i` (zero-based).
    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        let mut p = MultiPoly::zero(num_vars);
        p.add_term(e, Rational::one());
        p
    }

    /// The linear form `Σ c_i x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = MultiPoly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn monomial(exps: Vec<u32>, c: Rational) -> Self {
        let mut p = MultiPoly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Result<Self> {
        let mut p = MultiPoly::zero(num_vars);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::dims(format!(
                    "exponent vector of length {} in {num_vars} variables",
                    e.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        debug_assert_eq!(exps.len(), self.num_vars);
        if c.is_zero() {
            return;
        }
        let key = Monomial(exps);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.num_vars);
        }
        MultiPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = MultiPoly::one(self.num_vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = MultiPoly::zero(self.num_vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e > 0 {
                let mut exps = m.0.clone();
                exps[var] -= 1;
                out.add_term(exps, c * rat(e as i64));
            }
        }
        out
    }

    /// Derivative along the direction `dir`: `Σ dir_i ∂/∂x_i`.
    pub fn directional_derivative(&self, dir: &[Rational]) -> Self {
        let mut out = MultiPoly::zero(self.num_vars);
        for (i, d) in dir.iter().enumerate() {
            if !d.is_zero() {
                out = &out + &self.derivative(i).scale(d);
            }
        }
        out
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.num_vars, "evaluation point length");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(xi.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| to_f64(c) * x.iter().zip(&m.0).map(|(xi, &e)| xi.powi(e as i32)).product::<f64>())
            .sum()
    }

    pub fn eval_complex(&self, x: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = Complex64::new(to_f64(c), 0.0);
                for (xi, &e) in x.iter().zip(&m.0) {
                    if e > 0 {
                        t *= xi.powu(e);
                    }
                }
                t
            })
            .sum()
    }

    /// Substitutes `x_i -> images[i]`; all images must share a variable count.
    pub fn compose(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.num_vars {
            return Err(Error::dims(format!(
                "{} substitutions for {} variables",
                images.len(),
                self.num_vars
            )));
        }
        let n = images.first().map_or(0, |p| p.num_vars);
        if images.iter().any(|p| p.num_vars != n) {
            return Err(Error::dims("substitutions in different rings"));
        }
        let max_deg = self.terms.keys().flat_map(|m| m.0.iter().copied()).max().unwrap_or(0);
        let powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| {
                let mut v = vec![MultiPoly::one(n)];
                for k in 1..=max_deg as usize {
                    let next = &v[k - 1] * p;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = MultiPoly::zero(n);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(n, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Largest absolute coefficient.
    pub fn max_coefficient(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// True when `self = λ · other` for some nonzero rational λ.
    pub fn proportional_to(&self, other: &MultiPoly) -> bool {
        if self.num_vars != other.num_vars || self.terms.len() != other.terms.len() {
            return false;
        }
        let Some(((m1, c1), (m2, c2))) = self.terms.iter().next().zip(other.terms.iter().next()) else {
            return self.is_zero() && other.is_zero();
        };
        if m1 != m2 {
            return false;
        }
        let lambda = c1 / c2;
        *self == other.scale(&lambda)
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            if factors.is_empty() {
                out.push_str(&format_rational(&a));
            } else {
                if !a.is_one() {
                    out.push_str(&format_rational(&a));
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    pub fn display_prefixed(&self, prefix: &str) -> String {
        self.display_with(&var_names(prefix, self.num_vars))
    }

    pub fn to_json(&self, names: &[String]) -> PolyJson {
        PolyJson {
            vars: names.to_vec(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson {
                    exps: m.0.clone(),
                    coeff: RationalRepr::from(c),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<MultiPoly> {
        let n = j.vars.len();
        MultiPoly::from_terms(
            n,
            j.terms
                .iter()
                .map(|t| Ok((t.exps.clone(), t.coeff.clone().into_rational()?)))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

pub fn var_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Wire form: `{vars: [...], terms: [{exps: [...], coeff: "p/q"}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub coeff: RationalRepr,
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_prefixed("x"))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.num_vars, rhs.num_vars, "adding polynomials in different rings");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.0.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(
            self.num_vars, rhs.num_vars,
            "subtracting polynomials in different rings"
        );
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.0.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(
            self.num_vars, rhs.num_vars,
            "multiplying polynomials in different rings"
        );
        let mut out = MultiPoly::zero(self.num_vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let e = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&rat(-1))
    }
}

/// Determinant of a square matrix of polynomials by Laplace expansion along
/// rows, memoised on the remaining column set.
pub fn poly_det(entries: &[Vec<MultiPoly>], num_vars: usize) -> MultiPoly {
    let n = entries.len();
    if n == 0 {
        return MultiPoly::one(num_vars);
    }
    assert!(n <= 16, "polynomial determinant limited to 16x16");
    let mut memo: std::collections::HashMap<u32, MultiPoly> = std::collections::HashMap::new();
    laplace(entries, 0, (1u32 << n) - 1, num_vars, &mut memo)
}

fn laplace(
    entries: &[Vec<MultiPoly>],
    row: usize,
    cols: u32,
    num_vars: usize,
    memo: &mut std::collections::HashMap<u32, MultiPoly>,
) -> MultiPoly {
    if cols == 0 {
        return MultiPoly::one(num_vars);
    }
    if let Some(p) = memo.get(&cols) {
        return p.clone();
    }
    let mut acc = MultiPoly::zero(num_vars);
    let mut sign_positive = true;
    for c in 0..entries.len() {
        if cols & (1 << c) == 0 {
            continue;
        }
        let e = &entries[row][c];
        if !e.is_zero() {
            let sub = laplace(entries, row + 1, cols & !(1 << c), num_vars, memo);
            let t = e * &sub;
            acc = if sign_positive { &acc + &t } else { &acc - &t };
        }
        sign_positive = !sign_positive;
    }
    memo.insert(cols, acc.clone());
    acc
}
