//! Graded free modules `⊕ B(-g_j)` and homogeneous matrices between them.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::poly::{GradedRing, Polynomial};

/// A graded free module, stored by the degrees of its generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GradedFreeModule {
    degrees: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(degrees: Vec<i64>) -> Self {
        GradedFreeModule { degrees }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    /// `F(q)`: every generator degree drops by `q`.
    pub fn twist(&self, q: i64) -> Self {
        GradedFreeModule { degrees: self.degrees.iter().map(|g| g - q).collect() }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        GradedFreeModule { degrees }
    }

    pub fn select(&self, keep: &[usize]) -> Self {
        GradedFreeModule { degrees: keep.iter().map(|&i| self.degrees[i]).collect() }
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.degrees.iter().copied().min()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.degrees.iter().copied().max()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryViolation {
    pub row: usize,
    pub col: usize,
    pub required_degree: i64,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixReport {
    pub valid: bool,
    pub violations: Vec<EntryViolation>,
}

/// A homogeneous map `source -> target` of degree `degree`; entry `(i, j)` is zero or
/// homogeneous of degree `g_src[j] - g_tgt[i] + degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    ring: Arc<GradedRing>,
    source: GradedFreeModule,
    target: GradedFreeModule,
    degree: i64,
    entries: Vec<Vec<Polynomial>>,
}

impl GradedMatrix {
    /// Builds and checks a matrix; fails on wrong shape or any degree violation.
    pub fn new(
        ring: Arc<GradedRing>,
        source: GradedFreeModule,
        target: GradedFreeModule,
        degree: i64,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        let m = Self::new_unchecked(ring, source, target, degree, entries)?;
        let report = m.validate();
        if let Some(v) = report.violations.first() {
            return Err(Error::Degree(format!("entry ({}, {}) = {} should have degree {}", v.row, v.col, v.found, v.required_degree)));
        }
        Ok(m)
    }

    /// Shape-checked constructor that skips the degree check (used for negative controls).
    pub fn new_unchecked(
        ring: Arc<GradedRing>,
        source: GradedFreeModule,
        target: GradedFreeModule,
        degree: i64,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if entries.len() != target.rank() || entries.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::Shape(format!("expected {}x{} entries", target.rank(), source.rank())));
        }
        Ok(GradedMatrix { ring, source, target, degree, entries })
    }

    pub fn zero(ring: Arc<GradedRing>, source: GradedFreeModule, target: GradedFreeModule, degree: i64) -> Self {
        let entries = vec![vec![Polynomial::zero(); source.rank()]; target.rank()];
        GradedMatrix { ring, source, target, degree, entries }
    }

    pub fn identity(ring: Arc<GradedRing>, module: GradedFreeModule) -> Self {
        Self::scalar_multiple(ring.clone(), module, &ring.one(), 0)
    }

    /// `p * Id` on `module`, a map of degree `degree` (the degree of `p`).
    pub fn scalar_multiple(ring: Arc<GradedRing>, module: GradedFreeModule, p: &Polynomial, degree: i64) -> Self {
        let r = module.rank();
        let mut entries = vec![vec![Polynomial::zero(); r]; r];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = p.clone();
        }
        GradedMatrix { ring, source: module.clone(), target: module, degree, entries }
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn into_entries(self) -> Vec<Vec<Polynomial>> {
        self.entries
    }

    /// Degree forced on entry `(i, j)`.
    pub fn entry_degree(&self, i: usize, j: usize) -> i64 {
        self.source.degree(j) - self.target.degree(i) + self.degree
    }

    /// Degree of the image of source generator `j`.
    pub fn column_degree(&self, j: usize) -> i64 {
        self.source.degree(j) + self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(Polynomial::is_zero))
    }

    pub fn validate(&self) -> MatrixReport {
        let mut violations = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                let req = self.entry_degree(i, j);
                if !p.is_homogeneous_of(req) {
                    violations.push(EntryViolation { row: i, col: j, required_degree: req, found: p.to_string_in(&self.ring) });
                }
            }
        }
        MatrixReport { valid: violations.is_empty(), violations }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if self.source != other.target {
            return Err(Error::InterfaceMismatch(format!(
                "cannot compose: source {:?} vs target {:?}",
                self.source.degrees(),
                other.target.degrees()
            )));
        }
        let mut entries = vec![vec![Polynomial::zero(); other.cols()]; self.rows()];
        for (i, out_row) in entries.iter_mut().enumerate() {
            for (k, a) in self.entries[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, out) in out_row.iter_mut().enumerate() {
                    let b = &other.entries[k][j];
                    if !b.is_zero() {
                        *out = &*out + &(a * b);
                    }
                }
            }
        }
        GradedMatrix::new(self.ring.clone(), other.source.clone(), self.target.clone(), self.degree + other.degree, entries)
    }

    fn check_same_shape(&self, other: &GradedMatrix) -> Result<()> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree {
            return Err(Error::InterfaceMismatch("matrices live in different Hom spaces".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &GradedMatrix, f: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> GradedMatrix {
        let entries = self.entries.iter().zip(&other.entries).map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect()).collect();
        GradedMatrix { entries, ..self.clone() }
    }

    pub fn neg(&self) -> GradedMatrix {
        self.map_entries(|p| -p)
    }

    pub fn scale(&self, c: &Scalar) -> GradedMatrix {
        self.map_entries(|p| p.scale(c))
    }

    pub fn map_entries(&self, f: impl Fn(&Polynomial) -> Polynomial) -> GradedMatrix {
        GradedMatrix { entries: self.entries.iter().map(|r| r.iter().map(&f).collect()).collect(), ..self.clone() }
    }

    /// Same entries, reinterpreted between other modules with another degree.
    pub fn reinterpret(&self, source: GradedFreeModule, target: GradedFreeModule, degree: i64) -> Result<GradedMatrix> {
        GradedMatrix::new(self.ring.clone(), source, target, degree, self.entries.clone())
    }

    /// The same map between twisted modules `source(q) -> target(q)`.
    pub fn twist(&self, q: i64) -> GradedMatrix {
        GradedMatrix { source: self.source.twist(q), target: self.target.twist(q), ..self.clone() }
    }

    pub fn transpose_entries(&self) -> Vec<Vec<Polynomial>> {
        (0..self.cols()).map(|j| (0..self.rows()).map(|i| self.entries[i][j].clone()).collect()).collect()
    }

    /// Block matrix `[[a, b], [c, d]]`; blocks must agree on the shared modules.
    pub fn block(a: &GradedMatrix, b: &GradedMatrix, c: &GradedMatrix, d: &GradedMatrix) -> Result<GradedMatrix> {
        let deg = a.degree;
        if [b.degree, c.degree, d.degree].iter().any(|&x| x != deg)
            || a.target != b.target
            || c.target != d.target
            || a.source != c.source
            || b.source != d.source
        {
            return Err(Error::InterfaceMismatch("incompatible blocks".into()));
        }
        let mut entries = Vec::with_capacity(a.rows() + c.rows());
        for (ra, rb) in a.entries.iter().zip(&b.entries) {
            entries.push(ra.iter().chain(rb).cloned().collect());
        }
        for (rc, rd) in c.entries.iter().zip(&d.entries) {
            entries.push(rc.iter().chain(rd).cloned().collect());
        }
        GradedMatrix::new(a.ring.clone(), a.source.direct_sum(&b.source), a.target.direct_sum(&c.target), deg, entries)
    }

    pub fn direct_sum(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        let tr = GradedMatrix::zero(self.ring.clone(), other.source.clone(), self.target.clone(), self.degree);
        let bl = GradedMatrix::zero(self.ring.clone(), self.source.clone(), other.target.clone(), self.degree);
        GradedMatrix::block(self, &tr, &bl, other)
    }

    /// Keeps the listed rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> GradedMatrix {
        GradedMatrix {
            ring: self.ring.clone(),
            source: self.source.select(cols),
            target: self.target.select(rows),
            degree: self.degree,
            entries: rows.iter().map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect()).collect(),
        }
    }

    /// Matrix whose columns are `cols` (each a vector of `target.rank()` polynomials),
    /// with source degrees recomputed from the column degrees.
    pub fn from_columns(
        ring: Arc<GradedRing>,
        target: GradedFreeModule,
        source_degrees: Vec<i64>,
        degree: i64,
        cols: Vec<Vec<Polynomial>>,
    ) -> Result<GradedMatrix> {
        let rows = target.rank();
        let mut entries = vec![Vec::with_capacity(cols.len()); rows];
        for c in &cols {
            if c.len() != rows {
                return Err(Error::Shape("column length mismatch".into()));
            }
            for (i, p) in c.iter().enumerate() {
                entries[i].push(p.clone());
            }
        }
        GradedMatrix::new(ring, GradedFreeModule::new(source_degrees), target, degree, entries)
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    /// Horizontal concatenation `[self | other]` (same target and degree).
    pub fn hconcat(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if self.target != other.target || self.degree != other.degree {
            return Err(Error::InterfaceMismatch("hconcat needs equal targets".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.iter().chain(b).cloned().collect()).collect();
        Ok(GradedMatrix {
            ring: self.ring.clone(),
            source: self.source.direct_sum(&other.source),
            target: self.target.clone(),
            degree: self.degree,
            entries,
        })
    }

    pub fn display(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(|p| p.to_string_in(&self.ring)).collect()).collect()
    }
}

/// Free-standing form of [`GradedMatrix::validate`].
pub fn validate_matrix(m: &GradedMatrix) -> MatrixReport {
    m.validate()
}

/// Free-standing form of [`GradedMatrix::compose`]: `f ∘ g`.
pub fn matrix_compose(f: &GradedMatrix, g: &GradedMatrix) -> Result<GradedMatrix> {
    f.compose(g)
}
