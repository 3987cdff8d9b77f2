//! Graded matrix factorizations of a homogeneous potential `W` of degree `d`.
//!
//! An object is a pair of maps `p1: P1 -> P0` (degree 0) and `p0: P0 -> P1`
//! (degree `d`) with `p0 p1 = W` and `p1 p0 = W`. A morphism `(f1, f0)`
//! satisfies `q1 f1 = f0 p1` and `f1 p0 = q0 f0`; it is null-homotopic when
//! `f1 = q0 t + s p1` and `f0 = t p0 + q1 s` for some `s: P0 -> Q1` of degree 0
//! and `t: P1 -> Q0` of degree `-d`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::free::{GradedFreeModule, GradedMatrix, MatrixReport};
use crate::groebner;
use crate::linalg::{self, Span, SparseColumns};
use crate::modules::{check_potential, hilbert_function, ModulePresentation, Quotient};
use crate::poly::{GradedRing, Monomial, Polynomial};

type Mat = Vec<Vec<Polynomial>>;

/// `a * b` with `b` having `cols` columns.
fn raw_mul(a: &[Vec<Polynomial>], b: &[Vec<Polynomial>], inner: usize, cols: usize) -> Mat {
    let rows = a.len();
    let mut out = vec![vec![Polynomial::zero(); cols]; rows];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let mut acc = Polynomial::zero();
            for k in 0..inner {
                if !a[i][k].is_zero() && !b[k][j].is_zero() {
                    acc = &acc + &(&a[i][k] * &b[k][j]);
                }
            }
            *slot = acc;
        }
    }
    out
}

fn raw_add(a: &[Vec<Polynomial>], b: &[Vec<Polynomial>]) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

fn raw_sub(a: &[Vec<Polynomial>], b: &[Vec<Polynomial>]) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

fn raw_zero(rows: usize, cols: usize) -> Mat {
    vec![vec![Polynomial::zero(); cols]; rows]
}

/// One failing entry of `p0 p1 - W` or `p1 p0 - W`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompositeFailure {
    pub composite: String,
    pub row: usize,
    pub col: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MfReport {
    pub valid: bool,
    pub p1: MatrixReport,
    pub p0: MatrixReport,
    pub interface_errors: Vec<String>,
    pub composite_failures: Vec<CompositeFailure>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFactorization {
    ring: Arc<GradedRing>,
    potential: Polynomial,
    d: i64,
    p1: GradedMatrix,
    p0: GradedMatrix,
}

impl MatrixFactorization {
    /// Validated construction.
    pub fn new(ring: Arc<GradedRing>, potential: Polynomial, p1: GradedMatrix, p0: GradedMatrix) -> Result<Self> {
        let x = Self::unchecked(ring, potential, p1, p0)?;
        let rep = x.validate();
        if !rep.valid {
            let why = rep
                .interface_errors
                .first()
                .cloned()
                .or_else(|| rep.p1.violations.first().map(|v| format!("p1 entry ({}, {}) has wrong degree", v.row, v.col)))
                .or_else(|| rep.p0.violations.first().map(|v| format!("p0 entry ({}, {}) has wrong degree", v.row, v.col)))
                .or_else(|| {
                    rep.composite_failures
                        .first()
                        .map(|f| format!("{} entry ({}, {}) is {} instead of {}", f.composite, f.row, f.col, f.found, f.expected))
                })
                .unwrap_or_default();
            return Err(Error::InvalidFactorization(why));
        }
        Ok(x)
    }

    /// Construction without the composite checks; see [`MatrixFactorization::validate`].
    pub fn unchecked(ring: Arc<GradedRing>, potential: Polynomial, p1: GradedMatrix, p0: GradedMatrix) -> Result<Self> {
        let d = check_potential(&potential)? as i64;
        Ok(MatrixFactorization { ring, potential, d, p1, p0 })
    }

    /// Builds a factorization from generator degrees of `P1`, `P0` and entry matrices.
    pub fn from_entries(
        ring: Arc<GradedRing>,
        potential: Polynomial,
        p1_source: Vec<i64>,
        p0_source: Vec<i64>,
        p1: Mat,
        p0: Mat,
    ) -> Result<Self> {
        let d = check_potential(&potential)? as i64;
        let big_p1 = GradedFreeModule::new(p1_source);
        let big_p0 = GradedFreeModule::new(p0_source);
        let m1 = GradedMatrix::new_unchecked(ring.clone(), big_p1.clone(), big_p0.clone(), 0, p1)?;
        let m0 = GradedMatrix::new_unchecked(ring.clone(), big_p0, big_p1, d, p0)?;
        Self::new(ring, potential, m1, m0)
    }

    pub fn zero(ring: Arc<GradedRing>, potential: Polynomial) -> Result<Self> {
        Self::from_entries(ring, potential, Vec::new(), Vec::new(), Vec::new(), Vec::new())
    }

    /// The contractible pair `(1, W)` with both generators in degree `g`.
    pub fn unit_pair(ring: Arc<GradedRing>, potential: Polynomial, g: i64) -> Result<Self> {
        let one = ring.one();
        Self::from_entries(ring, potential.clone(), vec![g], vec![g], vec![vec![one]], vec![vec![potential]])
    }

    /// The contractible pair `(W, 1)` with `P0` generated in degree `g`.
    pub fn potential_pair(ring: Arc<GradedRing>, potential: Polynomial, g: i64) -> Result<Self> {
        let d = check_potential(&potential)? as i64;
        let one = ring.one();
        Self::from_entries(ring, potential.clone(), vec![g + d], vec![g], vec![vec![potential]], vec![vec![one]])
    }

    /// Koszul factorization of `W = sum u_i v_i` on the exterior algebra of the pairs:
    /// `P1` spans odd subsets, `P0` even subsets, and the differential is
    /// `sum v_i (e_i ^ -) + u_i (contraction by e_i)`.
    pub fn koszul(ring: Arc<GradedRing>, potential: Polynomial, pairs: &[(Polynomial, Polynomial)]) -> Result<Self> {
        let d = check_potential(&potential)? as i64;
        let mut sum = Polynomial::zero();
        for (u, v) in pairs {
            sum = &sum + &(u * v);
        }
        if sum != potential {
            return Err(Error::InvalidFactorization("pairs do not multiply to the potential".into()));
        }
        let n = pairs.len();
        let mut v_deg = Vec::new();
        for (u, v) in pairs {
            match (u.degree(), v.degree()) {
                (Some(a), Some(b)) if (a + b) as i64 == d => v_deg.push(b as i64),
                _ => return Err(Error::Inhomogeneous("Koszul pair entries must be homogeneous".into())),
            }
        }
        let subsets: Vec<u32> = (0..(1u32 << n)).collect();
        let odd: Vec<u32> = subsets.iter().copied().filter(|s| s.count_ones() % 2 == 1).collect();
        let even: Vec<u32> = subsets.iter().copied().filter(|s| s.count_ones() % 2 == 0).collect();
        let gamma = |s: u32| -> i64 {
            let k = s.count_ones() as i64;
            -(0..n).filter(|i| s >> i & 1 == 1).map(|i| v_deg[i]).sum::<i64>() + (k + 1) / 2 * d
        };
        let sign = |s: u32, i: usize| -> bool { (s & ((1u32 << i) - 1)).count_ones() % 2 == 1 };
        // matrix of the differential from `from` subsets to `to` subsets
        let block = |from: &[u32], to: &[u32]| -> Mat {
            let pos: HashMap<u32, usize> = to.iter().enumerate().map(|(k, &s)| (s, k)).collect();
            let mut m = raw_zero(to.len(), from.len());
            for (j, &s) in from.iter().enumerate() {
                for (i, (u, v)) in pairs.iter().enumerate() {
                    let bit = 1u32 << i;
                    let (target, coef) = if s & bit == 0 { (s | bit, v) } else { (s & !bit, u) };
                    let c = if sign(s, i) { -coef } else { coef.clone() };
                    let row = pos[&target];
                    m[row][j] = &m[row][j] + &c;
                }
            }
            m
        };
        let p1 = block(&odd, &even);
        let p0 = block(&even, &odd);
        let p1_deg: Vec<i64> = odd.iter().map(|&s| gamma(s)).collect();
        let p0_deg: Vec<i64> = even.iter().map(|&s| gamma(s)).collect();
        Self::from_entries(ring, potential, p1_deg, p0_deg, p1, p0)
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn potential(&self) -> &Polynomial {
        &self.potential
    }

    pub fn potential_degree(&self) -> i64 {
        self.d
    }

    pub fn p1(&self) -> &GradedMatrix {
        &self.p1
    }

    pub fn p0(&self) -> &GradedMatrix {
        &self.p0
    }

    /// The module `P1`.
    pub fn odd_module(&self) -> &GradedFreeModule {
        self.p1.source()
    }

    /// The module `P0`.
    pub fn even_module(&self) -> &GradedFreeModule {
        self.p1.target()
    }

    pub fn rank(&self) -> usize {
        self.p1.cols()
    }

    pub fn validate(&self) -> MfReport {
        let mut interface_errors = Vec::new();
        if self.p1.source() != self.p0.target() || self.p1.target() != self.p0.source() {
            interface_errors.push("p1 and p0 do not have matching modules".to_string());
        }
        if self.p1.rows() != self.p1.cols() {
            interface_errors.push("P1 and P0 must have equal rank".to_string());
        }
        if self.p1.degree() != 0 {
            interface_errors.push("p1 must have degree 0".to_string());
        }
        if self.p0.degree() != self.d {
            interface_errors.push(format!("p0 must have degree {}", self.d));
        }
        let p1_rep = self.p1.validate();
        let p0_rep = self.p0.validate();
        let mut composite_failures = Vec::new();
        if interface_errors.is_empty() {
            let r = self.rank();
            let checks = [
                ("p0*p1", raw_mul(self.p0.entries(), self.p1.entries(), r, r)),
                ("p1*p0", raw_mul(self.p1.entries(), self.p0.entries(), r, r)),
            ];
            for (name, prod) in checks {
                for (i, row) in prod.iter().enumerate() {
                    for (j, e) in row.iter().enumerate() {
                        let expected = if i == j { self.potential.clone() } else { Polynomial::zero() };
                        if *e != expected {
                            composite_failures.push(CompositeFailure {
                                composite: name.to_string(),
                                row: i,
                                col: j,
                                expected: expected.to_string_in(&self.ring),
                                found: e.to_string_in(&self.ring),
                            });
                        }
                    }
                }
            }
        }
        MfReport {
            valid: interface_errors.is_empty() && p1_rep.valid && p0_rep.valid && composite_failures.is_empty(),
            p1: p1_rep,
            p0: p0_rep,
            interface_errors,
            composite_failures,
        }
    }

    /// Translation `X[1] = (P0, P1(d), -p0, -p1)`.
    pub fn shift(&self) -> Self {
        let new_p1_src = self.even_module().clone();
        let new_p0_src = self.odd_module().twist(self.d);
        let p1 = self.p0.neg().reinterpret(new_p1_src.clone(), new_p0_src.clone(), 0).expect("shifted p1 is homogeneous");
        let p0 = self.p1.neg().reinterpret(new_p0_src, new_p1_src, self.d).expect("shifted p0 is homogeneous");
        MatrixFactorization { p1, p0, ..self.clone() }
    }

    /// `X(q)`: every generator degree drops by `q`.
    pub fn twist(&self, q: i64) -> Self {
        MatrixFactorization { p1: self.p1.twist(q), p0: self.p0.twist(q), ..self.clone() }
    }

    /// `X[p]`, with `[2] = (d)`: odd part by one translation, the rest by a twist.
    pub fn shift_by(&self, p: i64) -> Self {
        let m = p.div_euclid(2);
        let base = if p.rem_euclid(2) == 1 { self.shift() } else { self.clone() };
        base.twist(m * self.d)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.same_category(other)?;
        Ok(MatrixFactorization { p1: self.p1.direct_sum(&other.p1)?, p0: self.p0.direct_sum(&other.p0)?, ..self.clone() })
    }

    fn same_category(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring || self.potential != other.potential {
            return Err(Error::InterfaceMismatch("factorizations of different potentials".into()));
        }
        Ok(())
    }

    /// Base change by automorphisms `a` of `P0` and `b` of `P1`: `(a p1 b^-1, b p0 a^-1)`.
    pub fn conjugate(&self, a: &GradedMatrix, a_inv: &GradedMatrix, b: &GradedMatrix, b_inv: &GradedMatrix) -> Result<Self> {
        let p1 = a.compose(&self.p1)?.compose(b_inv)?;
        let p0 = b.compose(&self.p0)?.compose(a_inv)?;
        Self::new(self.ring.clone(), self.potential.clone(), p1, p0)
    }

    /// Splits off contractible summands through unit entries of `p1` or `p0`.
    pub fn minimize(&self) -> Self {
        let mut p1 = self.p1.entries().to_vec();
        let mut p0 = self.p0.entries().to_vec();
        let mut odd = self.odd_module().degrees().to_vec();
        let mut even = self.even_module().degrees().to_vec();
        loop {
            if let Some((i, j)) = find_unit(&p0) {
                // p0: P0 -> P1, unit at (P1 row i, P0 col j)
                let (a, b) = split_unit(&p0, &p1, i, j);
                p0 = a;
                p1 = b;
                odd.remove(i);
                even.remove(j);
            } else if let Some((i, j)) = find_unit(&p1) {
                let (a, b) = split_unit(&p1, &p0, i, j);
                p1 = a;
                p0 = b;
                even.remove(i);
                odd.remove(j);
            } else {
                break;
            }
        }
        let odd = GradedFreeModule::new(odd);
        let even = GradedFreeModule::new(even);
        let m1 = GradedMatrix::new(self.ring.clone(), odd.clone(), even.clone(), 0, p1).expect("minimization keeps degrees");
        let m0 = GradedMatrix::new(self.ring.clone(), even, odd, self.d, p0).expect("minimization keeps degrees");
        MatrixFactorization { p1: m1, p0: m0, ..self.clone() }
    }

    /// No unit entries remain.
    pub fn is_minimal(&self) -> bool {
        find_unit(self.p1.entries()).is_none() && find_unit(self.p0.entries()).is_none()
    }

    /// `Coker(p1)` as a module over `A`.
    pub fn cokernel(&self) -> ModulePresentation {
        ModulePresentation::new(self.ring.clone(), Some(self.potential.clone()), self.p1.clone()).expect("p1 has degree 0")
    }
}

fn find_unit(m: &[Vec<Polynomial>]) -> Option<(usize, usize)> {
    for (i, row) in m.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if e.as_constant().is_some() {
                return Some((i, j));
            }
        }
    }
    None
}

/// With `a: S -> T` having a unit at `(i, j)` and `b: T -> S` its partner, changes bases so
/// that the unit spans a direct summand and deletes it; `a` loses row `i` and column `j`,
/// `b` loses row `j` and column `i`.
fn split_unit(a: &Mat, b: &Mat, i: usize, j: usize) -> (Mat, Mat) {
    let u_inv = a[i][j].as_constant().expect("unit").inv();
    let (rows, cols) = (a.len(), a[0].len());
    // U = I - sum_{k != i} (a[k][j]/u) E_{k,i} on T; V = I - sum_{l != j} (a[i][l]/u) E_{j,l} on S
    let col_factor: Vec<Polynomial> = (0..rows).map(|k| if k == i { Polynomial::zero() } else { a[k][j].scale(&u_inv) }).collect();
    let row_factor: Vec<Polynomial> = (0..cols).map(|l| if l == j { Polynomial::zero() } else { a[i][l].scale(&u_inv) }).collect();
    // a' = U a V: row ops then column ops
    let mut a1 = a.to_vec();
    for k in 0..rows {
        if !col_factor[k].is_zero() {
            for l in 0..cols {
                a1[k][l] = &a1[k][l] - &(&col_factor[k] * &a[i][l]);
            }
        }
    }
    for l in 0..cols {
        if !row_factor[l].is_zero() {
            for row in a1.iter_mut().take(rows) {
                let pivot_col = row[j].clone();
                row[l] = &row[l] - &(&row_factor[l] * &pivot_col);
            }
        }
    }
    // b' = V^-1 b U^-1, with V^-1 = I + sum (a[i][l]/u) E_{j,l} and U^-1 = I + sum (a[k][j]/u) E_{k,i}
    let mut b1 = b.to_vec();
    // left by V^-1: row j += sum_l row_factor[l] * row l
    let mut new_row_j = b1[j].clone();
    for l in 0..cols {
        if !row_factor[l].is_zero() {
            for c in 0..rows {
                new_row_j[c] = &new_row_j[c] + &(&row_factor[l] * &b1[l][c]);
            }
        }
    }
    b1[j] = new_row_j;
    // right by U^-1: column i += sum_k col_factor[k] * column k
    for row in b1.iter_mut().take(cols) {
        let mut acc = row[i].clone();
        for k in 0..rows {
            if !col_factor[k].is_zero() {
                acc = &acc + &(&row[k] * &col_factor[k]);
            }
        }
        row[i] = acc;
    }
    let a2: Mat = a1
        .into_iter()
        .enumerate()
        .filter(|(k, _)| *k != i)
        .map(|(_, row)| row.into_iter().enumerate().filter(|(l, _)| *l != j).map(|(_, e)| e).collect())
        .collect();
    let b2: Mat = b1
        .into_iter()
        .enumerate()
        .filter(|(k, _)| *k != j)
        .map(|(_, row)| row.into_iter().enumerate().filter(|(l, _)| *l != i).map(|(_, e)| e).collect())
        .collect();
    (a2, b2)
}

/// A morphism `(f1, f0)` of factorizations.
#[derive(Clone, Debug, PartialEq)]
pub struct MfMorphism {
    pub source: MatrixFactorization,
    pub target: MatrixFactorization,
    pub f1: GradedMatrix,
    pub f0: GradedMatrix,
}

/// A null-homotopy `(s, t)` with `s: P0 -> Q1` (degree 0) and `t: P1 -> Q0` (degree `-d`).
#[derive(Clone, Debug, PartialEq)]
pub struct Homotopy {
    pub s: GradedMatrix,
    pub t: GradedMatrix,
}

impl MfMorphism {
    pub fn new(source: MatrixFactorization, target: MatrixFactorization, f1: GradedMatrix, f0: GradedMatrix) -> Result<Self> {
        let f = MfMorphism { source, target, f1, f0 };
        f.check()?;
        Ok(f)
    }

    fn check(&self) -> Result<()> {
        let (x, y) = (&self.source, &self.target);
        x.same_category(y)?;
        if self.f1.source() != x.odd_module()
            || self.f1.target() != y.odd_module()
            || self.f0.source() != x.even_module()
            || self.f0.target() != y.even_module()
            || self.f1.degree() != 0
            || self.f0.degree() != 0
        {
            return Err(Error::InvalidMorphism("components do not match the factorizations".into()));
        }
        let (a, b) = morphism_defect(x, y, self.f1.entries(), self.f0.entries());
        if a.iter().chain(&b).flatten().any(|e| !e.is_zero()) {
            return Err(Error::InvalidMorphism("commuting squares fail".into()));
        }
        Ok(())
    }

    pub fn identity(x: &MatrixFactorization) -> Self {
        MfMorphism {
            source: x.clone(),
            target: x.clone(),
            f1: GradedMatrix::identity(x.ring.clone(), x.odd_module().clone()),
            f0: GradedMatrix::identity(x.ring.clone(), x.even_module().clone()),
        }
    }

    pub fn zero(x: &MatrixFactorization, y: &MatrixFactorization) -> Self {
        MfMorphism {
            source: x.clone(),
            target: y.clone(),
            f1: GradedMatrix::zero(x.ring.clone(), x.odd_module().clone(), y.odd_module().clone(), 0),
            f0: GradedMatrix::zero(x.ring.clone(), x.even_module().clone(), y.even_module().clone(), 0),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MfMorphism) -> Result<MfMorphism> {
        if other.target != self.source {
            return Err(Error::InterfaceMismatch("morphisms are not composable".into()));
        }
        Ok(MfMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            f1: self.f1.compose(&other.f1)?,
            f0: self.f0.compose(&other.f0)?,
        })
    }

    pub fn add(&self, other: &MfMorphism) -> Result<MfMorphism> {
        Ok(MfMorphism { f1: self.f1.add(&other.f1)?, f0: self.f0.add(&other.f0)?, ..self.clone() })
    }

    pub fn sub(&self, other: &MfMorphism) -> Result<MfMorphism> {
        Ok(MfMorphism { f1: self.f1.sub(&other.f1)?, f0: self.f0.sub(&other.f0)?, ..self.clone() })
    }

    pub fn scale(&self, c: &Scalar) -> MfMorphism {
        MfMorphism { f1: self.f1.scale(c), f0: self.f0.scale(c), ..self.clone() }
    }

    /// Some null-homotopy of this morphism, if one exists.
    pub fn null_homotopy(&self) -> Option<Homotopy> {
        let sys = HomSystem::new(&self.source, &self.target, 0);
        let field = self.source.ring.field();
        let b = sys.cochains.coordinates(&[self.f1.entries().to_vec(), self.f0.entries().to_vec()], field)?;
        let sol = linalg::solve(&sys.homotopy_operator(), &b, field)?;
        let parts = sys.homotopies.matrices(&sol);
        Some(Homotopy {
            s: GradedMatrix::new(
                self.source.ring.clone(),
                self.source.even_module().clone(),
                self.target.odd_module().clone(),
                0,
                parts[0].clone(),
            )
            .expect("homotopy degrees"),
            t: GradedMatrix::new(
                self.source.ring.clone(),
                self.source.odd_module().clone(),
                self.target.even_module().clone(),
                -self.source.d,
                parts[1].clone(),
            )
            .expect("homotopy degrees"),
        })
    }

    pub fn is_null_homotopic(&self) -> bool {
        self.null_homotopy().is_some()
    }
}

/// `(q1 f1 - f0 p1, f1 p0 - q0 f0)`.
fn morphism_defect(x: &MatrixFactorization, y: &MatrixFactorization, f1: &[Vec<Polynomial>], f0: &[Vec<Polynomial>]) -> (Mat, Mat) {
    let r = x.rank();
    let s = y.rank();
    let a = raw_sub(&raw_mul(y.p1.entries(), f1, s, r), &raw_mul(f0, x.p1.entries(), r, r));
    let b = raw_sub(&raw_mul(f1, x.p0.entries(), r, r), &raw_mul(y.p0.entries(), f0, s, r));
    (a, b)
}

/// `(q0 t + s p1, t p0 + q1 s)`.
fn homotopy_image(x: &MatrixFactorization, y: &MatrixFactorization, s: &[Vec<Polynomial>], t: &[Vec<Polynomial>]) -> (Mat, Mat) {
    let r = x.rank();
    let k = y.rank();
    let f1 = raw_add(&raw_mul(y.p0.entries(), t, k, r), &raw_mul(s, x.p1.entries(), r, r));
    let f0 = raw_add(&raw_mul(t, x.p0.entries(), r, r), &raw_mul(y.p1.entries(), s, k, r));
    (f1, f0)
}

/// Homogeneous matrices `src -> tgt` of a fixed degree, coordinatized by single-monomial entries.
#[derive(Clone, Debug)]
struct MatSpace {
    rows: usize,
    cols: usize,
    slots: Vec<(usize, usize, Monomial)>,
    index: HashMap<(usize, usize, Monomial), usize>,
}

impl MatSpace {
    fn new(ring: &GradedRing, src: &GradedFreeModule, tgt: &GradedFreeModule, degree: i64) -> Self {
        let mut slots = Vec::new();
        for i in 0..tgt.rank() {
            for j in 0..src.rank() {
                for m in ring.monomials_of_degree(src.degree(j) - tgt.degree(i) + degree) {
                    slots.push((i, j, m));
                }
            }
        }
        let index = slots.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect();
        MatSpace { rows: tgt.rank(), cols: src.rank(), slots, index }
    }

    fn len(&self) -> usize {
        self.slots.len()
    }

    fn unit(&self, k: usize, one: &Scalar) -> Mat {
        let mut m = raw_zero(self.rows, self.cols);
        let (i, j, mono) = &self.slots[k];
        m[*i][*j] = Polynomial::term(mono.clone(), one.clone());
        m
    }

    fn coordinates(&self, m: &Mat, offset: usize, out: &mut Vec<(usize, Scalar)>) -> bool {
        for (i, row) in m.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                for (mono, c) in p.terms() {
                    match self.index.get(&(i, j, mono.clone())) {
                        Some(&k) => out.push((offset + k, c.clone())),
                        None => return false,
                    }
                }
            }
        }
        true
    }

    fn matrix(&self, coords: &[Scalar]) -> Mat {
        let mut terms: Vec<Vec<Vec<(Monomial, Scalar)>>> = vec![vec![Vec::new(); self.cols]; self.rows];
        for (k, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                let (i, j, m) = &self.slots[k];
                terms[*i][*j].push((m.clone(), c.clone()));
            }
        }
        terms.into_iter().map(|r| r.into_iter().map(Polynomial::from_terms).collect()).collect()
    }
}

/// A product of matrix spaces with concatenated coordinates.
#[derive(Clone, Debug)]
struct BlockSpace {
    parts: Vec<MatSpace>,
    offsets: Vec<usize>,
    total: usize,
}

impl BlockSpace {
    fn new(parts: Vec<MatSpace>) -> Self {
        let mut offsets = Vec::new();
        let mut total = 0;
        for p in &parts {
            offsets.push(total);
            total += p.len();
        }
        BlockSpace { parts, offsets, total }
    }

    fn locate(&self, k: usize) -> (usize, usize) {
        let b = self.offsets.partition_point(|&o| o <= k) - 1;
        (b, k - self.offsets[b])
    }

    /// Dense coordinates, or `None` if some entry has the wrong degree.
    fn coordinates(&self, ms: &[Mat], field: Field) -> Option<Vec<Scalar>> {
        let mut v = vec![field.zero(); self.total];
        for (k, c) in self.sparse_coordinates(ms)? {
            v[k] = &v[k] + &c;
        }
        Some(v)
    }

    fn sparse_coordinates(&self, ms: &[Mat]) -> Option<Vec<(usize, Scalar)>> {
        let mut out = Vec::new();
        for ((p, m), &o) in self.parts.iter().zip(ms).zip(&self.offsets) {
            if !p.coordinates(m, o, &mut out) {
                return None;
            }
        }
        out.sort_by_key(|(k, _)| *k);
        Some(out)
    }

    fn matrices(&self, coords: &[Scalar]) -> Vec<Mat> {
        self.parts.iter().zip(&self.offsets).map(|(p, &o)| p.matrix(&coords[o..o + p.len()])).collect()
    }

    fn operator(&self, target: &BlockSpace, one: &Scalar, f: impl Fn(usize, &Mat) -> Vec<Mat>) -> SparseColumns {
        let mut op = SparseColumns::new(target.total);
        for k in 0..self.total {
            let (b, local) = self.locate(k);
            let unit = self.parts[b].unit(local, one);
            let image = f(b, &unit);
            let col = target.sparse_coordinates(&image).expect("operator respects degrees");
            op.push(merge_duplicates(col));
        }
        op
    }
}

fn merge_duplicates(col: Vec<(usize, Scalar)>) -> Vec<(usize, Scalar)> {
    let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(col.len());
    for (k, c) in col {
        match out.last_mut() {
            Some((lk, lc)) if *lk == k => *lc = &*lc + &c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// The linear systems for degree-`q` morphisms `X -> Y` and their homotopies.
struct HomSystem<'a> {
    x: &'a MatrixFactorization,
    y: &'a MatrixFactorization,
    cochains: BlockSpace,
    defects: BlockSpace,
    homotopies: BlockSpace,
}

impl<'a> HomSystem<'a> {
    fn new(x: &'a MatrixFactorization, y: &'a MatrixFactorization, q: i64) -> Self {
        let ring = &x.ring;
        let d = x.d;
        let (p1m, p0m) = (x.odd_module(), x.even_module());
        let (q1m, q0m) = (y.odd_module(), y.even_module());
        let cochains = BlockSpace::new(vec![MatSpace::new(ring, p1m, q1m, q), MatSpace::new(ring, p0m, q0m, q)]);
        let defects = BlockSpace::new(vec![MatSpace::new(ring, p1m, q0m, q), MatSpace::new(ring, p0m, q1m, q + d)]);
        let homotopies = BlockSpace::new(vec![MatSpace::new(ring, p0m, q1m, q), MatSpace::new(ring, p1m, q0m, q - d)]);
        HomSystem { x, y, cochains, defects, homotopies }
    }

    fn one(&self) -> Scalar {
        self.x.ring.field().one()
    }

    fn cocycle_operator(&self) -> SparseColumns {
        let (x, y) = (self.x, self.y);
        let zero1 = raw_zero(y.rank(), x.rank());
        self.cochains.operator(&self.defects, &self.one(), |b, m| {
            let (a, c) = if b == 0 { morphism_defect(x, y, m, &zero1) } else { morphism_defect(x, y, &zero1, m) };
            vec![a, c]
        })
    }

    fn homotopy_operator(&self) -> SparseColumns {
        let (x, y) = (self.x, self.y);
        let zero = raw_zero(y.rank(), x.rank());
        self.homotopies.operator(&self.cochains, &self.one(), |b, m| {
            let (f1, f0) = if b == 0 { homotopy_image(x, y, m, &zero) } else { homotopy_image(x, y, &zero, m) };
            vec![f1, f0]
        })
    }
}

/// Morphisms `X -> Y` modulo null-homotopic ones, with a basis of representatives.
#[derive(Clone, Debug)]
pub struct MfHom {
    pub source: MatrixFactorization,
    pub target: MatrixFactorization,
    pub dimension: usize,
    pub basis: Vec<MfMorphism>,
    /// Nullity of the cocycle system before dividing by homotopies.
    pub cocycle_dimension: usize,
    coords: Option<QuotientCoordinates>,
}

#[derive(Clone, Debug)]
struct QuotientCoordinates {
    cochains: BlockSpace,
    /// independent boundaries followed by the basis cocycles, as columns
    op: SparseColumns,
    boundary_rank: usize,
}

impl MfHom {
    /// Coordinates of the homotopy class of `f` in [`MfHom::basis`].
    pub fn coordinates(&self, f: &MfMorphism) -> Result<Vec<Scalar>> {
        let field = self.source.ring.field();
        let qc = self.coords.as_ref().expect("coordinates retained");
        if self.dimension == 0 {
            return Ok(Vec::new());
        }
        let b = qc
            .cochains
            .coordinates(&[f.f1.entries().to_vec(), f.f0.entries().to_vec()], field)
            .ok_or_else(|| Error::InvalidMorphism("morphism has the wrong degree".into()))?;
        let x = linalg::solve(&qc.op, &b, field).ok_or_else(|| Error::InvalidMorphism("not a cocycle of this space".into()))?;
        Ok(x[qc.boundary_rank..].to_vec())
    }
}

/// Degree-0 morphisms `X -> Y[p](q)` up to homotopy.
pub fn mf_hom(x: &MatrixFactorization, y: &MatrixFactorization, p: i64, q: i64) -> Result<MfHom> {
    x.same_category(y)?;
    let target = y.shift_by(p).twist(q);
    hom_degree(x, &target, 0)
}

fn hom_degree(x: &MatrixFactorization, y: &MatrixFactorization, q: i64) -> Result<MfHom> {
    let field = x.ring.field();
    let sys = HomSystem::new(x, y, q);
    let cocycles = linalg::kernel(&sys.cocycle_operator(), field);
    let hop = sys.homotopy_operator();
    let mut span = Span::new(field, sys.cochains.total);
    let mut op = SparseColumns::new(sys.cochains.total);
    for col in &hop.cols {
        let mut dense = vec![field.zero(); sys.cochains.total];
        for (k, c) in col {
            dense[*k] = c.clone();
        }
        if span.insert(&dense) {
            op.push(col.clone());
        }
    }
    let boundary_rank = span.rank();
    let mut basis = Vec::new();
    for v in &cocycles {
        if span.insert(v) {
            op.push(v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect());
            let ms = sys.cochains.matrices(v);
            let ring = x.ring.clone();
            basis.push(MfMorphism {
                source: x.clone(),
                target: y.clone(),
                f1: GradedMatrix::new(ring.clone(), x.odd_module().clone(), y.odd_module().clone(), q, ms[0].clone())
                    .expect("cochain degrees"),
                f0: GradedMatrix::new(ring, x.even_module().clone(), y.even_module().clone(), q, ms[1].clone()).expect("cochain degrees"),
            });
        }
    }
    Ok(MfHom {
        source: x.clone(),
        target: y.clone(),
        dimension: basis.len(),
        basis,
        cocycle_dimension: cocycles.len(),
        coords: Some(QuotientCoordinates { cochains: sys.cochains, op, boundary_rank }),
    })
}

/// Structure constants of composition `Hom(Y, Z) x Hom(X, Y) -> Hom(X, Z)`:
/// entry `[a][b]` holds the coordinates of `g_a ∘ f_b`.
pub fn composition_table(g: &MfHom, f: &MfHom, gf: &MfHom) -> Result<Vec<Vec<Vec<Scalar>>>> {
    let mut out = Vec::new();
    for ga in &g.basis {
        let mut row = Vec::new();
        for fb in &f.basis {
            row.push(gf.coordinates(&ga.compose(fb)?)?);
        }
        out.push(row);
    }
    Ok(out)
}

/// The mapping cone of `f: X -> Y` with its canonical maps `Y -> C(f)` and `C(f) -> X[1]`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub object: MatrixFactorization,
    pub inclusion: MfMorphism,
    pub projection: MfMorphism,
}

/// `C(f)` with `C1 = Q1 + P0`, `C0 = Q0 + P1(d)`, `c1 = [[q1, f0], [0, -p0]]`, `c0 = [[q0, f1], [0, -p1]]`.
pub fn mf_cone(f: &MfMorphism) -> Result<Cone> {
    f.check()?;
    let (x, y) = (&f.source, &f.target);
    let ring = x.ring.clone();
    let d = x.d;
    let xs = x.shift();
    let c1_src = y.odd_module().direct_sum(x.even_module());
    let c0_src = y.even_module().direct_sum(&x.odd_module().twist(d));
    let zero1 = GradedMatrix::zero(ring.clone(), y.odd_module().clone(), xs.even_module().clone(), 0);
    let c1 = GradedMatrix::block(&y.p1, &f.f0, &zero1, xs.p1())?;
    let f1_shifted = f.f1.reinterpret(xs.even_module().clone(), y.odd_module().clone(), d)?;
    let zero0 = GradedMatrix::zero(ring.clone(), y.even_module().clone(), xs.odd_module().clone(), d);
    let c0 = GradedMatrix::block(&y.p0, &f1_shifted, &zero0, xs.p0())?;
    debug_assert_eq!(c1.source(), &c1_src);
    debug_assert_eq!(c0.source(), &c0_src);
    let cone = MatrixFactorization::new(ring.clone(), x.potential.clone(), c1, c0)?;
    let embed = |top: &GradedFreeModule, bottom: &GradedFreeModule| -> GradedMatrix {
        let id = GradedMatrix::identity(ring.clone(), top.clone());
        let z = GradedMatrix::zero(ring.clone(), top.clone(), bottom.clone(), 0);
        let mut entries = id.entries().to_vec();
        entries.extend(z.entries().iter().cloned());
        GradedMatrix::new(ring.clone(), top.clone(), top.direct_sum(bottom), 0, entries).expect("inclusion")
    };
    let project = |top: &GradedFreeModule, bottom: &GradedFreeModule| -> GradedMatrix {
        let z = GradedMatrix::zero(ring.clone(), top.clone(), bottom.clone(), 0);
        let id = GradedMatrix::identity(ring.clone(), bottom.clone()).neg();
        let entries = z.entries().iter().zip(id.entries()).map(|(a, b)| a.iter().chain(b).cloned().collect()).collect();
        GradedMatrix::new(ring.clone(), top.direct_sum(bottom), bottom.clone(), 0, entries).expect("projection")
    };
    let inclusion =
        MfMorphism::new(y.clone(), cone.clone(), embed(y.odd_module(), x.even_module()), embed(y.even_module(), xs.even_module()))?;
    let projection =
        MfMorphism::new(cone.clone(), xs.clone(), project(y.odd_module(), x.even_module()), project(y.even_module(), xs.even_module()))?;
    Ok(Cone { object: cone, inclusion, projection })
}

/// Graded pieces of the internal Hom cohomology `H(X, Y)`, a finite-length module
/// for isolated singularities, whose degree-`q` part is `Hom(X, Y(q))`.
#[derive(Clone, Debug, Serialize)]
pub struct HomSeries {
    /// `None` when the cohomology module is not finite-dimensional.
    pub series: Option<BTreeMap<i64, usize>>,
}

/// Internal Hom cohomology of `X` and `Y` as a graded module over `B`.
pub fn hom_module(x: &MatrixFactorization, y: &MatrixFactorization) -> Result<ModulePresentation> {
    x.same_category(y)?;
    let ring = x.ring.clone();
    let d = x.d;
    let block = |p: &GradedFreeModule, q: &GradedFreeModule, sigma: i64| -> Vec<i64> {
        let mut out = Vec::new();
        for i in 0..q.rank() {
            for j in 0..p.rank() {
                out.push(q.degree(i) - p.degree(j) - sigma);
            }
        }
        out
    };
    let (p1m, p0m) = (x.odd_module(), x.even_module());
    let (q1m, q0m) = (y.odd_module(), y.even_module());
    let h0 = GradedFreeModule::new([block(p1m, q1m, 0), block(p0m, q0m, 0)].concat());
    let h1 = GradedFreeModule::new([block(p1m, q0m, 0), block(p0m, q1m, d)].concat());
    let hm = GradedFreeModule::new([block(p0m, q1m, 0), block(p1m, q0m, -d)].concat());
    let shapes0 = [(q1m.rank(), p1m.rank()), (q0m.rank(), p0m.rank())];
    let shapesm = [(q1m.rank(), p0m.rank()), (q0m.rank(), p1m.rank())];
    let one = ring.one();
    let flatten = |ms: &[Mat]| -> Vec<Polynomial> { ms.iter().flat_map(|m| m.iter().flatten().cloned()).collect() };
    let units = |shapes: &[(usize, usize); 2]| -> Vec<(usize, Mat)> {
        let mut out = Vec::new();
        for (b, &(r, c)) in shapes.iter().enumerate() {
            for i in 0..r {
                for j in 0..c {
                    let mut m = raw_zero(r, c);
                    m[i][j] = one.clone();
                    out.push((b, m));
                }
            }
        }
        out
    };
    let zero_like = |shape: (usize, usize)| raw_zero(shape.0, shape.1);
    let delta_cols: Vec<Vec<Polynomial>> = units(&shapes0)
        .into_iter()
        .map(|(b, m)| {
            let (f1, f0) = if b == 0 { (m, zero_like(shapes0[1])) } else { (zero_like(shapes0[0]), m) };
            let (a, c) = morphism_defect(x, y, &f1, &f0);
            flatten(&[a, c])
        })
        .collect();
    let h_cols: Vec<Vec<Polynomial>> = units(&shapesm)
        .into_iter()
        .map(|(b, m)| {
            let (s, t) = if b == 0 { (m, zero_like(shapesm[1])) } else { (zero_like(shapesm[0]), m) };
            let (f1, f0) = homotopy_image(x, y, &s, &t);
            flatten(&[f1, f0])
        })
        .collect();
    let delta = GradedMatrix::from_columns(ring.clone(), h1, h0.degrees().to_vec(), 0, delta_cols)?;
    let h = GradedMatrix::from_columns(ring.clone(), h0.clone(), hm.degrees().to_vec(), 0, h_cols)?;
    let z = groebner::kernel(&delta)?;
    let lifted = groebner::lift(&h, &z)?;
    let kz = groebner::kernel(&z)?;
    let rel = lifted.hconcat(&kz)?;
    ModulePresentation::new(ring, None, rel)
}

/// Full Hilbert series of [`hom_module`], if finite.
pub fn hom_series(x: &MatrixFactorization, y: &MatrixFactorization) -> Result<HomSeries> {
    let h = hom_module(x, y)?;
    let q = Quotient::of_matrix(h.relations(), None)?;
    Ok(HomSeries { series: q.finite_hilbert_series() })
}

/// One row of a Hom table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomCell {
    pub shift: i64,
    pub dimension: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomTable {
    pub cells: Vec<HomCell>,
    /// Vanishing outside the window is proven for every shift.
    pub certified: bool,
    /// Nonzero `dim Hom(X, Y[p])` for all `p`, when certified.
    pub support: Option<Vec<HomCell>>,
    /// Shifts at or below this value vanish because every entry degree is negative.
    pub negative_bound: i64,
    /// Window values agree with the certificate.
    pub consistent: bool,
}

/// `Hom(X, Y(q))` has no nonzero entries for `q` below this value.
fn entry_degree_bound(x: &MatrixFactorization, y: &MatrixFactorization) -> i64 {
    let mut best = i64::MAX;
    for (p, q) in [(x.odd_module(), y.odd_module()), (x.even_module(), y.even_module())] {
        for &gp in p.degrees() {
            for &gq in q.degrees() {
                best = best.min(gq - gp);
            }
        }
    }
    best
}

/// `dim Hom(X, Y[p])` for `p` in `[lo, hi]`; with `certify`, the finite Hom cohomology
/// of `(X, Y)` and `(X, Y[1])` determines every shift.
pub fn mf_hom_table(x: &MatrixFactorization, y: &MatrixFactorization, lo: i64, hi: i64, certify: bool) -> Result<HomTable> {
    if lo > hi {
        return Err(Error::EmptyWindow { lo, hi });
    }
    let d = x.d;
    let cells = crate::par_map((lo..=hi).collect(), |p| mf_hom(x, y, p, 0).map(|h| HomCell { shift: p, dimension: h.dimension }))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    // Hom(X, Y[2m+r]) = Hom(X, Y[r](md)) vanishes once md < -(bound for Y[r])
    let b0 = entry_degree_bound(x, y);
    let b1 = entry_degree_bound(x, &y.shift());
    let m_even = b0.saturating_sub(1).div_euclid(d);
    let m_odd = b1.saturating_sub(1).div_euclid(d);
    let negative_bound = m_even.saturating_mul(2).saturating_add(1).min(m_odd.saturating_mul(2).saturating_add(2));
    let mut support = None;
    let mut certified = false;
    let mut consistent = true;
    if certify {
        let s0 = hom_series(x, y)?.series;
        let s1 = hom_series(x, &y.shift())?.series;
        if let (Some(s0), Some(s1)) = (s0, s1) {
            certified = true;
            let mut sup = Vec::new();
            for (r, s) in [(0, &s0), (1, &s1)] {
                for (&e, &dim) in s {
                    if dim > 0 && e.rem_euclid(d) == 0 {
                        sup.push(HomCell { shift: 2 * e.div_euclid(d) + r, dimension: dim });
                    }
                }
            }
            sup.sort_by_key(|c| c.shift);
            for c in &cells {
                let expected = sup.iter().find(|s| s.shift == c.shift).map_or(0, |s| s.dimension);
                if expected != c.dimension {
                    consistent = false;
                }
            }
            support = Some(sup);
        }
    }
    Ok(HomTable { cells, certified, support, negative_bound, consistent })
}

/// A pair of mutually inverse homotopy classes.
#[derive(Clone, Debug)]
pub struct IsoWitness {
    pub forward: MfMorphism,
    pub backward: MfMorphism,
}

/// Invariants reported when no isomorphism witness is found.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Discriminators {
    pub hom_dimensions: [usize; 4],
    pub source_cokernel_hilbert: Vec<usize>,
    pub target_cokernel_hilbert: Vec<usize>,
    pub window: (i64, i64),
}

#[derive(Clone, Debug)]
pub enum IsoSearch {
    Found(Box<IsoWitness>),
    NotFound(Discriminators),
}

impl IsoSearch {
    pub fn is_found(&self) -> bool {
        matches!(self, IsoSearch::Found(_))
    }
}

fn random_scalar(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(1..p as i64)),
        Field::Rational => {
            let v: i64 = rng.gen_range(1..=20);
            field.from_i64(if rng.gen_bool(0.5) { v } else { -v })
        }
    }
}

/// Searches for mutually inverse classes `X -> Y`, `Y -> X` using seeded random combinations.
pub fn mf_is_isomorphic(x: &MatrixFactorization, y: &MatrixFactorization, seed: u64) -> Result<IsoSearch> {
    x.same_category(y)?;
    let field = x.ring.field();
    let hxy = hom_degree(x, y, 0)?;
    let hyx = hom_degree(y, x, 0)?;
    let exx = hom_degree(x, x, 0)?;
    let eyy = hom_degree(y, y, 0)?;
    let discriminate = || -> Result<IsoSearch> {
        let (lo, hi) = (-(x.d) * 2, x.d * 4);
        let hx = hilbert_function(&x.minimize().cokernel().minimized()?, lo, hi)?;
        let hy = hilbert_function(&y.minimize().cokernel().minimized()?, lo, hi)?;
        Ok(IsoSearch::NotFound(Discriminators {
            hom_dimensions: [hxy.dimension, hyx.dimension, exx.dimension, eyy.dimension],
            source_cokernel_hilbert: hx,
            target_cokernel_hilbert: hy,
            window: (lo, hi),
        }))
    };
    if exx.dimension == 0 && eyy.dimension == 0 {
        return Ok(IsoSearch::Found(Box::new(IsoWitness { forward: MfMorphism::zero(x, y), backward: MfMorphism::zero(y, x) })));
    }
    if hxy.dimension == 0 || hyx.dimension == 0 || exx.dimension == 0 || eyy.dimension == 0 {
        return discriminate();
    }
    let id_x = exx.coordinates(&MfMorphism::identity(x))?;
    let id_y = eyy.coordinates(&MfMorphism::identity(y))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..6 {
        let mut f = MfMorphism::zero(x, y);
        for b in &hxy.basis {
            f = f.add(&b.scale(&random_scalar(&mut rng, field)))?;
        }
        // unknown g = sum y_b g_b with g f = id_X and f g = id_Y in the quotients
        let mut op = SparseColumns::new(exx.dimension + eyy.dimension);
        for gb in &hyx.basis {
            let a = exx.coordinates(&gb.compose(&f)?)?;
            let c = eyy.coordinates(&f.compose(gb)?)?;
            let col = a.into_iter().chain(c).enumerate().filter(|(_, v)| !v.is_zero()).collect();
            op.push(col);
        }
        let rhs: Vec<Scalar> = id_x.iter().chain(&id_y).cloned().collect();
        if let Some(sol) = linalg::solve(&op, &rhs, field) {
            let mut g = MfMorphism::zero(y, x);
            for (c, b) in sol.iter().zip(&hyx.basis) {
                g = g.add(&b.scale(c))?;
            }
            let ok_x = g.compose(&f)?.sub(&MfMorphism::identity(x))?.is_null_homotopic();
            let ok_y = f.compose(&g)?.sub(&MfMorphism::identity(y))?.is_null_homotopic();
            if ok_x && ok_y {
                return Ok(IsoSearch::Found(Box::new(IsoWitness { forward: f, backward: g })));
            }
        }
    }
    discriminate()
}
