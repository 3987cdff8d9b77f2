//! Weighted polynomial rings and sparse homogeneous-friendly polynomials.
//!
//! Monomials cache their weighted degree so that the graded reverse
//! lexicographic order can be evaluated without consulting the ring.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRing {
    variables: Vec<String>,
    weights: Vec<u32>,
    field: Field,
}

impl GradedRing {
    pub fn new<S: Into<String>>(variables: Vec<S>, weights: Vec<u32>, field: Field) -> Result<Arc<Self>> {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        if variables.len() != weights.len() {
            return Err(Error::InvalidRing("one weight per variable required".into()));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidRing("weights must be positive".into()));
        }
        for (i, v) in variables.iter().enumerate() {
            let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidRing(format!("invalid variable name `{v}`")));
            }
            if variables[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(GradedRing { variables, weights, field }))
    }

    /// Standard-graded ring with the given variable names.
    pub fn standard<S: Into<String>>(variables: Vec<S>, field: Field) -> Result<Arc<Self>> {
        let n = variables.len();
        Self::new(variables, vec![1; n], field)
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(1)
    }

    pub fn weight_sum(&self) -> i64 {
        self.weights.iter().map(|&w| w as i64).sum()
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn monomial(&self, exps: &[u32]) -> Monomial {
        assert_eq!(exps.len(), self.nvars());
        let degree = exps.iter().zip(&self.weights).map(|(e, w)| e * w).sum();
        Monomial { degree, exps: exps.iter().copied().collect() }
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial { degree: 0, exps: SmallVec::from_elem(0, self.nvars()) }
    }

    pub fn var_monomial(&self, i: usize) -> Monomial {
        let mut exps = vec![0; self.nvars()];
        exps[i] = 1;
        self.monomial(&exps)
    }

    pub fn lcm(&self, a: &Monomial, b: &Monomial) -> Monomial {
        let exps: Vec<u32> = a.exps.iter().zip(&b.exps).map(|(x, y)| *x.max(y)).collect();
        self.monomial(&exps)
    }

    /// All monomials of weighted degree `degree`, in descending term order.
    pub fn monomials_of_degree(&self, degree: i64) -> Vec<Monomial> {
        if degree < 0 {
            return Vec::new();
        }
        let n = self.nvars();
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        fn rec(ring: &GradedRing, i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == ring.nvars() {
                if left == 0 {
                    out.push(ring.monomial(exps));
                }
                return;
            }
            let w = ring.weights[i];
            let mut e = 0;
            while e * w <= left {
                exps[i] = e;
                rec(ring, i + 1, left - e * w, exps, out);
                e += 1;
            }
            exps[i] = 0;
        }
        if n == 0 {
            if degree == 0 {
                out.push(self.one_monomial());
            }
            return out;
        }
        rec(self, 0, degree as u32, &mut exps, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero()
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::constant(self, self.field.one())
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        Polynomial::constant(self, self.field.from_i64(c))
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::term(self.var_monomial(i), self.field.one())
    }
}

/// Exponent vector with cached weighted degree. Ordered by weighted graded reverse lex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: SmallVec<[u32; 4]>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if it exists.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial { degree: other.degree - self.degree, exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect() })
    }

    /// The variable index if this monomial is a pure power `x_i^e` with `e > 0`.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }
}

// exponents add under multiplication
#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Mul for &Monomial {
    type Output = Monomial;
    fn mul(self, rhs: &Monomial) -> Monomial {
        Monomial { degree: self.degree + rhs.degree, exps: self.exps.iter().zip(&rhs.exps).map(|(a, b)| a + b).collect() }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    // smaller exponent in the last differing variable wins
                    o => return o.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

/// Sparse polynomial; terms sorted strictly descending, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(ring: &GradedRing, c: Scalar) -> Self {
        Self::term(ring.one_monomial(), c)
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(mut terms: Vec<(Monomial, Scalar)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
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

    pub fn leading(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let Some((m, _)) = self.terms.first() else {
            return Homogeneity::Zero;
        };
        if self.terms.iter().all(|(t, _)| t.degree == m.degree) {
            Homogeneity::Homogeneous(m.degree)
        } else {
            Homogeneity::Inhomogeneous
        }
    }

    /// Degree if nonzero and homogeneous.
    pub fn degree(&self) -> Option<u32> {
        match self.homogeneity() {
            Homogeneity::Homogeneous(d) => Some(d),
            _ => None,
        }
    }

    pub fn is_homogeneous_of(&self, degree: i64) -> bool {
        self.is_zero() || self.degree().is_some_and(|d| d as i64 == degree)
    }

    /// Nonzero constant term of a polynomial whose only term is constant.
    pub fn as_constant(&self) -> Option<&Scalar> {
        match self.terms.as_slice() {
            [(m, c)] if m.is_one() => Some(c),
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.binary_search_by(|(t, _)| m.cmp(t)).ok().map(|i| &self.terms[i].1)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(t, a)| (t * m, a * c)).collect() }
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn pow(&self, e: u32, ring: &GradedRing) -> Polynomial {
        let mut acc = ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn display<'a>(&'a self, ring: &'a GradedRing) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, ring }
    }

    pub fn to_string_in(&self, ring: &GradedRing) -> String {
        self.display(ring).to_string()
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                terms.push((m * n, a * b));
            }
        }
        Polynomial::from_terms(terms)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    ring: &'a GradedRing,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.variables[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.variables[i], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qxy() -> Arc<GradedRing> {
        GradedRing::standard(vec!["x", "y"], Field::Rational).unwrap()
    }

    #[test]
    fn grevlex_order() {
        let r = qxy();
        let x2 = r.monomial(&[2, 0]);
        let xy = r.monomial(&[1, 1]);
        let y2 = r.monomial(&[0, 2]);
        let x = r.monomial(&[1, 0]);
        assert!(x2 > xy && xy > y2 && y2 > x);
        let r3 = GradedRing::standard(vec!["x", "y", "z"], Field::Rational).unwrap();
        // grevlex: x*z^? style tie-break on last variable
        assert!(r3.monomial(&[1, 1, 0]) > r3.monomial(&[2, 0, 0]).min(r3.monomial(&[0, 2, 0])));
        assert!(r3.monomial(&[0, 2, 0]) > r3.monomial(&[1, 0, 1]));
    }

    #[test]
    fn rejects_bad_rings() {
        assert!(GradedRing::new(vec!["x", "x"], vec![1, 1], Field::Rational).is_err());
        assert!(GradedRing::new(vec!["x"], vec![0], Field::Rational).is_err());
        assert!(GradedRing::new(vec!["x"], vec![1, 2], Field::Rational).is_err());
    }

    #[test]
    fn arithmetic_and_homogeneity() {
        let r = qxy();
        let x = r.var(0);
        let y = r.var(1);
        let p = &(&x * &y) - &(&y * &x);
        assert!(p.is_zero());
        let q = &(&x + &y) * &(&x - &y);
        assert_eq!(q.homogeneity(), Homogeneity::Homogeneous(2));
        assert_eq!(q.to_string_in(&r), "x^2 - y^2");
        let inh = &x + &r.one();
        assert_eq!(inh.homogeneity(), Homogeneity::Inhomogeneous);
    }

    #[test]
    fn weighted_monomials_of_degree() {
        let r = GradedRing::new(vec!["x", "y"], vec![3, 2], Field::Rational).unwrap();
        let ms = r.monomials_of_degree(6);
        assert_eq!(ms.len(), 2);
        assert!(r.monomials_of_degree(1).is_empty());
        assert_eq!(qxy().monomials_of_degree(3).len(), 4);
    }
}
