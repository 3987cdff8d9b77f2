//! Finitely generated graded modules over `B` and over `A = B/W`.
//!
//! A module is a cokernel of a degree-0 relation matrix into the free module
//! on its generators. Modules over `A` keep `W` separately; the relations
//! `W * e_j` are appended whenever a computation needs them.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::free::{GradedFreeModule, GradedMatrix};
use crate::groebner::{self, ModuleGroebnerBasis, ModuleVector};
use crate::linalg::{self, Span, SparseColumns};
use crate::poly::{GradedRing, Monomial, Polynomial};

/// How a vanishing or precondition claim was established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certification {
    /// Holds by construction (e.g. the module is a cokernel of a factorization).
    Structural,
    /// Decided exactly by a finite computation.
    Exact,
    /// Checked only inside a finite window.
    Window { i_max: usize, lo: i64, hi: i64 },
    /// The check failed; results are reported but not backed by theory.
    Violated,
}

/// A finite-dimensional space of morphisms with an explicit basis.
#[derive(Clone, Debug)]
pub struct HomSpace<T> {
    pub dimension: usize,
    pub basis: Vec<T>,
    pub certification: Certification,
}

impl<T> HomSpace<T> {
    pub fn zero(certification: Certification) -> Self {
        HomSpace { dimension: 0, basis: Vec::new(), certification }
    }
}

pub(crate) fn check_potential(w: &Polynomial) -> Result<u32> {
    match w.degree() {
        Some(d) if d > 0 => Ok(d),
        Some(_) => Err(Error::Inhomogeneous("potential must have positive degree".into())),
        None if w.is_zero() => Err(Error::Inhomogeneous("potential must be nonzero".into())),
        None => Err(Error::Inhomogeneous("potential is not homogeneous".into())),
    }
}

/// Cokernel of a degree-0 relation matrix, over `B` or over `A = B/W`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModulePresentation {
    ring: Arc<GradedRing>,
    potential: Option<Polynomial>,
    relations: GradedMatrix,
}

impl ModulePresentation {
    pub fn new(ring: Arc<GradedRing>, potential: Option<Polynomial>, relations: GradedMatrix) -> Result<Self> {
        if let Some(w) = &potential {
            check_potential(w)?;
        }
        if relations.degree() != 0 {
            return Err(Error::Degree("relation matrices have degree 0".into()));
        }
        let rep = relations.validate();
        if let Some(v) = rep.violations.first() {
            return Err(Error::Inhomogeneous(format!(
                "relation entry ({}, {}) = {} must have degree {}",
                v.row, v.col, v.found, v.required_degree
            )));
        }
        Ok(ModulePresentation { ring, potential, relations })
    }

    /// Builds a presentation from relation columns; column degrees are inferred and zero columns dropped.
    pub fn from_columns(
        ring: Arc<GradedRing>,
        potential: Option<Polynomial>,
        generator_degrees: Vec<i64>,
        cols: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        let gens = GradedFreeModule::new(generator_degrees);
        let mut kept = Vec::new();
        let mut degrees = Vec::new();
        for (j, c) in cols.into_iter().enumerate() {
            if c.len() != gens.rank() {
                return Err(Error::Shape(format!("relation column {j} has {} entries, expected {}", c.len(), gens.rank())));
            }
            let v = ModuleVector::from_column(&c);
            if v.is_zero() {
                continue;
            }
            let d = v.degree(&gens).ok_or_else(|| Error::Inhomogeneous(format!("relation column {j} is not homogeneous")))?;
            degrees.push(d);
            kept.push(c);
        }
        let rel = GradedMatrix::from_columns(ring.clone(), gens, degrees, 0, kept)?;
        Self::new(ring, potential, rel)
    }

    pub fn free(ring: Arc<GradedRing>, potential: Option<Polynomial>, generator_degrees: Vec<i64>) -> Result<Self> {
        let rel = GradedMatrix::zero(ring.clone(), GradedFreeModule::zero(), GradedFreeModule::new(generator_degrees), 0);
        Self::new(ring, potential, rel)
    }

    pub fn zero_module(ring: Arc<GradedRing>, potential: Option<Polynomial>) -> Self {
        Self::free(ring, potential, Vec::new()).expect("empty presentation")
    }

    /// The residue field `k = B/(x_1, ..., x_N)` placed in degree 0.
    pub fn residue_field(ring: Arc<GradedRing>, potential: Option<Polynomial>) -> Result<Self> {
        let cols = (0..ring.nvars()).map(|i| vec![ring.var(i)]).collect();
        Self::from_columns(ring, potential, vec![0], cols)
    }

    /// `R / (x^k)`-style cyclic modules: one generator in degree 0 with the given relations.
    pub fn cyclic(ring: Arc<GradedRing>, potential: Option<Polynomial>, relations: Vec<Polynomial>) -> Result<Self> {
        let cols = relations.into_iter().map(|p| vec![p]).collect();
        Self::from_columns(ring, potential, vec![0], cols)
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn potential(&self) -> Option<&Polynomial> {
        self.potential.as_ref()
    }

    pub fn is_over_a(&self) -> bool {
        self.potential.is_some()
    }

    pub fn generators(&self) -> &GradedFreeModule {
        self.relations.target()
    }

    pub fn relations(&self) -> &GradedMatrix {
        &self.relations
    }

    pub fn rank(&self) -> usize {
        self.generators().rank()
    }

    /// Relations with `W * e_j` appended for modules over `A`.
    pub fn full_relations(&self) -> GradedMatrix {
        groebner::with_modulus(&self.relations, self.potential.as_ref())
    }

    /// `M(q)`: all degrees drop by `q`.
    pub fn twist(&self, q: i64) -> Self {
        ModulePresentation { relations: self.relations.twist(q), ..self.clone() }
    }

    /// Minimal presentation: no unit relations, no redundant relation columns.
    pub fn minimized(&self) -> Result<Self> {
        let rel = groebner::minimize_presentation(&self.relations, self.potential.as_ref())?;
        Self::new(self.ring.clone(), self.potential.clone(), rel)
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.minimized()?.rank() == 0)
    }

    pub fn quotient(&self) -> Result<Quotient> {
        Quotient::of_matrix(&self.relations, self.potential.as_ref())
    }
}

/// Degree-`e` basis of a quotient of a free module, indexed by standard monomials.
#[derive(Clone, Debug)]
pub struct SliceBasis {
    pub degree: i64,
    elems: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

impl SliceBasis {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[(usize, Monomial)] {
        &self.elems
    }

    pub fn index_of(&self, pos: usize, m: &Monomial) -> Option<usize> {
        self.index.get(&(pos, m.clone())).copied()
    }
}

/// A free module modulo a submodule, with degreewise bases from a Gröbner basis.
#[derive(Clone, Debug)]
pub struct Quotient {
    gb: ModuleGroebnerBasis,
}

impl Quotient {
    pub fn new(ring: Arc<GradedRing>, ambient: GradedFreeModule, relations: &[ModuleVector]) -> Result<Self> {
        Ok(Quotient { gb: ModuleGroebnerBasis::new(ring, ambient, relations)? })
    }

    /// Cokernel of `rel`, with `W * e_j` added when a modulus is given.
    pub fn of_matrix(rel: &GradedMatrix, modulus: Option<&Polynomial>) -> Result<Self> {
        let full = groebner::with_modulus(rel, modulus);
        let cols: Vec<ModuleVector> = (0..full.cols()).map(|j| ModuleVector::from_column(&full.column(j))).collect();
        Self::new(rel.ring().clone(), rel.target().clone(), &cols)
    }

    /// The free module itself, or its reduction mod `W`.
    pub fn free(ring: Arc<GradedRing>, module: GradedFreeModule, modulus: Option<&Polynomial>) -> Result<Self> {
        let rel = GradedMatrix::zero(ring, GradedFreeModule::zero(), module, 0);
        Self::of_matrix(&rel, modulus)
    }

    pub fn groebner_basis(&self) -> &ModuleGroebnerBasis {
        &self.gb
    }

    pub fn ambient(&self) -> &GradedFreeModule {
        self.gb.ambient()
    }

    pub fn slice(&self, e: i64) -> SliceBasis {
        let elems = self.gb.standard_monomials(e);
        let index = elems.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        SliceBasis { degree: e, elems, index }
    }

    /// Sparse coordinates of the class of a homogeneous degree-`slice.degree` vector.
    pub fn coordinates(&self, v: &ModuleVector, slice: &SliceBasis) -> Vec<(usize, Scalar)> {
        let r = self.gb.normal_form(v);
        let mut out: Vec<(usize, Scalar)> =
            r.terms().iter().map(|(p, m, c)| (slice.index_of(*p, m).expect("normal form lies in the slice"), c.clone())).collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }

    pub fn element(&self, slice: &SliceBasis, coords: &[Scalar]) -> ModuleVector {
        let mut v = ModuleVector::zero();
        for (k, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                let (p, m) = &slice.elems[k];
                v = v.add(&ModuleVector::basis_term(*p, m.clone(), c.clone()));
            }
        }
        v
    }

    pub fn hilbert(&self, e: i64) -> usize {
        self.gb.standard_monomials(e).len()
    }

    /// Full Hilbert function if the quotient is finite-dimensional.
    pub fn finite_hilbert_series(&self) -> Option<BTreeMap<i64, usize>> {
        self.gb.finite_hilbert_series()
    }
}

/// The degree-`e` slice `S_e -> T_{e + deg map}` of a map between quotients of free modules.
pub fn slice_operator(map: &GradedMatrix, src: &Quotient, tgt: &Quotient, e: i64) -> (SliceBasis, SliceBasis, SparseColumns) {
    let s = src.slice(e);
    let t = tgt.slice(e + map.degree());
    let cols: Vec<ModuleVector> = (0..map.cols()).map(|j| ModuleVector::from_column(&map.column(j))).collect();
    let one = map.ring().field().one();
    let mut op = SparseColumns::new(t.len());
    for (pos, m) in s.elements() {
        let img = cols[*pos].mul_term(m, &one);
        op.push(tgt.coordinates(&img, &t));
    }
    (s, t, op)
}

fn window(lo: i64, hi: i64) -> Result<()> {
    if lo > hi {
        return Err(Error::EmptyWindow { lo, hi });
    }
    Ok(())
}

/// `dim_k M_e` for `e` in `[lo, hi]`, from ranks of degreewise relation slices.
pub fn hilbert_function(m: &ModulePresentation, lo: i64, hi: i64) -> Result<Vec<usize>> {
    window(lo, hi)?;
    let ring = m.ring();
    let full = m.full_relations();
    let gens = m.generators();
    let field = ring.field();
    let one = field.one();
    let cols: Vec<ModuleVector> = (0..full.cols()).map(|j| ModuleVector::from_column(&full.column(j))).collect();
    let mut out = Vec::new();
    for e in lo..=hi {
        let mut index: HashMap<(usize, Monomial), usize> = HashMap::new();
        for pos in 0..gens.rank() {
            for mono in ring.monomials_of_degree(e - gens.degree(pos)) {
                let k = index.len();
                index.insert((pos, mono), k);
            }
        }
        let mut op = SparseColumns::new(index.len());
        for (j, c) in cols.iter().enumerate() {
            for u in ring.monomials_of_degree(e - full.source().degree(j)) {
                let v = c.mul_term(&u, &one);
                let mut col: Vec<(usize, Scalar)> = v.terms().iter().map(|(p, mm, s)| (index[&(*p, mm.clone())], s.clone())).collect();
                col.sort_by_key(|(i, _)| *i);
                op.push(col);
            }
        }
        out.push(index.len() - linalg::rank(&op, field));
    }
    Ok(out)
}

/// Monomial multiples of the generators that generate `M_{>=p}`, as columns over the generators.
fn tail_generators(m: &ModulePresentation, p: i64) -> (Vec<i64>, Vec<Vec<Polynomial>>) {
    let ring = m.ring();
    let gens = m.generators();
    let maxw = ring.max_weight() as i64;
    let one = ring.field().one();
    let mut degrees = Vec::new();
    let mut cols = Vec::new();
    for j in 0..gens.rank() {
        let g = gens.degree(j);
        let lo = (p - g).max(0);
        let hi = if g >= p { 0 } else { p - g + maxw - 1 };
        for e in lo..=hi {
            for mono in ring.monomials_of_degree(e) {
                let mut col = vec![Polynomial::zero(); gens.rank()];
                col[j] = Polynomial::term(mono, one.clone());
                degrees.push(g + e);
                cols.push(col);
            }
        }
    }
    (degrees, cols)
}

/// Presentation of `M_{>=p}`.
pub fn truncate_tail(m: &ModulePresentation, p: i64) -> Result<ModulePresentation> {
    let ring = m.ring().clone();
    let (new_degrees, cols) = tail_generators(m, p);
    if cols.is_empty() {
        return Ok(ModulePresentation::zero_module(ring, m.potential().cloned()));
    }
    let phi = GradedMatrix::from_columns(ring.clone(), m.generators().clone(), new_degrees, 0, cols)?;
    let full = phi.hconcat(&m.full_relations())?;
    let k = groebner::kernel(&full)?;
    let rows: Vec<usize> = (0..phi.cols()).collect();
    let all: Vec<usize> = (0..k.cols()).collect();
    let projected = k.submatrix(&rows, &all);
    let pres = ModulePresentation::new(ring, m.potential().cloned(), projected)?;
    pres.minimized()
}

/// Presentation of `M / M_{>=p}`.
pub fn quotient_by_tail(m: &ModulePresentation, p: i64) -> Result<ModulePresentation> {
    let (degrees, cols) = tail_generators(m, p);
    if cols.is_empty() {
        return Ok(m.clone());
    }
    let phi = GradedMatrix::from_columns(m.ring().clone(), m.generators().clone(), degrees, 0, cols)?;
    let rel = m.relations().hconcat(&phi)?;
    ModulePresentation::new(m.ring().clone(), m.potential().cloned(), rel)?.minimized()
}

/// `Omega^k M`: the cokernel of `d_{k+1}` on `F_k` in a minimal resolution (over `A` when `M` is an `A`-module).
pub fn syzygy_module(m: &ModulePresentation, k: usize) -> Result<ModulePresentation> {
    if k == 0 {
        return Ok(m.clone());
    }
    let res = groebner::minimal_resolution(m.relations(), k + 1, m.potential())?;
    let ring = m.ring().clone();
    let w = m.potential().cloned();
    if res.len() > k {
        return ModulePresentation::new(ring, w, res[k].clone());
    }
    if res.len() == k {
        // ker d_k = 0, so F_k is the syzygy and is free
        return ModulePresentation::free(ring, w, res[k - 1].source().degrees().to_vec());
    }
    Ok(ModulePresentation::zero_module(ring, w))
}

/// True if `M` (over `A`) is maximal Cohen-Macaulay, i.e. has projective dimension at most 1 over `B`.
pub fn is_mcm(m: &ModulePresentation) -> Result<bool> {
    if m.potential().is_none() {
        return Err(Error::Precondition("maximal Cohen-Macaulay test needs a module over A".into()));
    }
    let over_b = groebner::minimize_presentation(&m.full_relations(), None)?;
    if over_b.cols() == 0 {
        return Ok(over_b.rows() == 0);
    }
    Ok(groebner::kernel(&over_b)?.cols() == 0)
}

/// `dim Ext^i_A(M, A)_e` for `i = 0..=i_max` and `e` in `[lo, hi]`; row `i` is the table for `Ext^i`.
pub fn ext_against_a(m: &ModulePresentation, i_max: usize, lo: i64, hi: i64) -> Result<Vec<Vec<usize>>> {
    window(lo, hi)?;
    let w = m.potential().ok_or_else(|| Error::Precondition("Ext against A needs a module over A".into()))?.clone();
    let ring = m.ring().clone();
    let res = groebner::minimal_resolution(m.relations(), i_max + 1, Some(&w))?;
    // free modules F_0..F_{i_max+1} and differentials d_1..d_{i_max+1}
    let mut frees: Vec<GradedFreeModule> = vec![res[0].target().clone()];
    for d in &res {
        frees.push(d.source().clone());
    }
    while frees.len() < i_max + 2 {
        frees.push(GradedFreeModule::zero());
    }
    let dual = |f: &GradedFreeModule| GradedFreeModule::new(f.degrees().iter().map(|g| -g).collect());
    let duals: Vec<Quotient> = frees.iter().map(|f| Quotient::free(ring.clone(), dual(f), Some(&w))).collect::<Result<_>>()?;
    // d_i^T : F_{i-1}^* -> F_i^*
    let transpose = |i: usize| -> Result<GradedMatrix> {
        let (src, tgt) = (dual(&frees[i - 1]), dual(&frees[i]));
        match res.get(i - 1) {
            Some(d) => GradedMatrix::new(ring.clone(), src, tgt, 0, d.transpose_entries()),
            None => Ok(GradedMatrix::zero(ring.clone(), src, tgt, 0)),
        }
    };
    let field = ring.field();
    let mut table = Vec::new();
    for i in 0..=i_max {
        let out_map = transpose(i + 1)?;
        let in_map = if i > 0 { Some(transpose(i)?) } else { None };
        let mut row = Vec::new();
        for e in lo..=hi {
            let (s, _, op) = slice_operator(&out_map, &duals[i], &duals[i + 1], e);
            let nullity = s.len() - linalg::rank(&op, field);
            let incoming = match &in_map {
                Some(mp) => {
                    let (_, _, op_in) = slice_operator(mp, &duals[i - 1], &duals[i], e);
                    linalg::rank(&op_in, field)
                }
                None => 0,
            };
            row.push(nullity - incoming);
        }
        table.push(row);
    }
    Ok(table)
}

/// `a = sum of weights - deg W` (or the weight sum for `B` itself).
pub fn gorenstein_parameter(ring: &GradedRing, potential: Option<&Polynomial>) -> Result<i64> {
    match potential {
        None => Ok(ring.weight_sum()),
        Some(w) => Ok(ring.weight_sum() - check_potential(w)? as i64),
    }
}

/// Unknowns of a degree-0 map out of `M`: images of generators in `N`.
struct HomSystem {
    blocks: Vec<SliceBasis>,
    offsets: Vec<usize>,
    total: usize,
}

impl HomSystem {
    fn new(m: &ModulePresentation, nq: &Quotient) -> Self {
        let blocks: Vec<SliceBasis> = m.generators().degrees().iter().map(|&g| nq.slice(g)).collect();
        let mut offsets = Vec::new();
        let mut total = 0;
        for b in &blocks {
            offsets.push(total);
            total += b.len();
        }
        HomSystem { blocks, offsets, total }
    }

    fn to_matrix(&self, coords: &[Scalar], m: &ModulePresentation, n: &ModulePresentation) -> GradedMatrix {
        let ring = m.ring();
        let mut entries = vec![vec![Polynomial::zero(); m.rank()]; n.rank()];
        for (j, b) in self.blocks.iter().enumerate() {
            let mut col: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); n.rank()];
            for (k, (pos, mono)) in b.elements().iter().enumerate() {
                let c = &coords[self.offsets[j] + k];
                if !c.is_zero() {
                    col[*pos].push((mono.clone(), c.clone()));
                }
            }
            for (i, terms) in col.into_iter().enumerate() {
                entries[i][j] = Polynomial::from_terms(terms);
            }
        }
        GradedMatrix::new(ring.clone(), m.generators().clone(), n.generators().clone(), 0, entries).expect("homogeneous by construction")
    }

    /// Coordinates of a map given as a matrix of generator images.
    fn coordinates(&self, phi: &GradedMatrix, nq: &Quotient) -> Vec<Scalar> {
        let field = phi.ring().field();
        let mut out = vec![field.zero(); self.total];
        for (j, b) in self.blocks.iter().enumerate() {
            let v = ModuleVector::from_column(&phi.column(j));
            for (k, c) in nq.coordinates(&v, b) {
                out[self.offsets[j] + k] = c;
            }
        }
        out
    }
}

fn check_same_ring(m: &ModulePresentation, n: &ModulePresentation) -> Result<()> {
    if m.ring() != n.ring() || m.potential() != n.potential() {
        return Err(Error::InterfaceMismatch("modules live over different rings".into()));
    }
    Ok(())
}

fn hom_kernel(m: &ModulePresentation, nq: &Quotient) -> (HomSystem, Vec<Vec<Scalar>>) {
    let sys = HomSystem::new(m, nq);
    let rel = m.full_relations();
    let field = m.ring().field();
    let one = field.one();
    let mut rows_total = 0;
    let mut rel_slices = Vec::new();
    for r in 0..rel.cols() {
        let s = nq.slice(rel.source().degree(r));
        rel_slices.push((rows_total, s.clone()));
        rows_total += s.len();
    }
    let mut op = SparseColumns::new(rows_total);
    for (j, b) in sys.blocks.iter().enumerate() {
        for (pos, mono) in b.elements() {
            let image = ModuleVector::basis_term(*pos, mono.clone(), one.clone());
            let mut col = Vec::new();
            for (r, (offset, slice)) in rel_slices.iter().enumerate() {
                let coef = rel.entry(j, r);
                if coef.is_zero() {
                    continue;
                }
                let v = image.mul_poly(coef);
                col.extend(nq.coordinates(&v, slice).into_iter().map(|(i, c)| (offset + i, c)));
            }
            op.push(col);
        }
    }
    let ker = linalg::kernel(&op, field);
    (sys, ker)
}

/// All degree-0 module maps `M -> N`.
pub fn module_hom(m: &ModulePresentation, n: &ModulePresentation) -> Result<HomSpace<GradedMatrix>> {
    check_same_ring(m, n)?;
    let nq = n.quotient()?;
    let (sys, ker) = hom_kernel(m, &nq);
    let basis: Vec<GradedMatrix> = ker.iter().map(|v| sys.to_matrix(v, m, n)).collect();
    Ok(HomSpace { dimension: basis.len(), basis, certification: Certification::Exact })
}

/// Degree-0 maps `M -> N` modulo those factoring through a projective module.
/// The certification records whether `M` was verified maximal Cohen-Macaulay.
pub fn stable_hom(m: &ModulePresentation, n: &ModulePresentation) -> Result<HomSpace<GradedMatrix>> {
    let cert = if is_mcm(m)? { Certification::Exact } else { Certification::Violated };
    stable_hom_certified(m, n, cert)
}

/// [`stable_hom`] with a caller-supplied precondition certificate.
pub fn stable_hom_certified(
    m: &ModulePresentation,
    n: &ModulePresentation,
    certification: Certification,
) -> Result<HomSpace<GradedMatrix>> {
    check_same_ring(m, n)?;
    if m.potential().is_none() {
        return Err(Error::Precondition("stable Hom needs modules over A".into()));
    }
    let nq = n.quotient()?;
    let (sys, ker) = hom_kernel(m, &nq);
    let field = m.ring().field();
    // maps into the free cover of N, pushed forward to N
    let cover = ModulePresentation::free(n.ring().clone(), n.potential().cloned(), n.generators().degrees().to_vec())?;
    let cq = cover.quotient()?;
    let (csys, cker) = hom_kernel(m, &cq);
    let mut span = Span::new(field, sys.total);
    for v in &cker {
        let psi = csys.to_matrix(v, m, &cover);
        span.insert(&sys.coordinates(&psi, &nq));
    }
    let mut basis = Vec::new();
    for v in &ker {
        if span.insert(v) {
            basis.push(sys.to_matrix(v, m, n));
        }
    }
    Ok(HomSpace { dimension: basis.len(), basis, certification })
}

/// Result of a singularity-category Hom computation with the syzygy depths used.
#[derive(Clone, Debug)]
pub struct DsingHom {
    pub space: HomSpace<GradedMatrix>,
    pub source_depth: usize,
    pub target_depth: usize,
}

/// `Hom(M, N[p])` in the graded singularity category, as
/// `stable_hom(Omega^k M, Omega^(k-p) N)` with `Omega^k M` maximal Cohen-Macaulay.
pub fn dsing_hom(m: &ModulePresentation, n: &ModulePresentation, p: i64) -> Result<DsingHom> {
    check_same_ring(m, n)?;
    if m.potential().is_none() {
        return Err(Error::Precondition("singularity category Hom needs modules over A".into()));
    }
    let base = p.max(0) as usize;
    let cap = m.ring().nvars() + 2;
    let mut source = syzygy_module(m, base)?;
    let mut k = base;
    loop {
        if is_mcm(&source)? {
            break;
        }
        if k - base >= cap {
            return Err(Error::SyzygyCapExceeded { cap });
        }
        source = syzygy_module(&source, 1)?;
        k += 1;
    }
    let target_depth = (k as i64 - p) as usize;
    let target = syzygy_module(n, target_depth)?;
    let space = if source.rank() == 0 || target.rank() == 0 {
        HomSpace::zero(Certification::Exact)
    } else {
        stable_hom_certified(&source, &target, Certification::Exact)?
    };
    Ok(DsingHom { space, source_depth: k, target_depth })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::parse::parse_polynomial;

    fn line(n: u32) -> (Arc<GradedRing>, Polynomial) {
        let r = GradedRing::standard(vec!["x"], Field::Rational).unwrap();
        let w = parse_polynomial(&format!("x^{n}"), &r).unwrap();
        (r, w)
    }

    fn cyc(r: &Arc<GradedRing>, w: Option<&Polynomial>, rels: &[&str]) -> ModulePresentation {
        let rels = rels.iter().map(|s| parse_polynomial(s, r).unwrap()).collect();
        ModulePresentation::cyclic(r.clone(), w.cloned(), rels).unwrap()
    }

    #[test]
    fn hilbert_examples() {
        let (r, w) = line(3);
        let a = ModulePresentation::free(r.clone(), Some(w.clone()), vec![0]).unwrap();
        assert_eq!(hilbert_function(&a, 0, 4).unwrap(), [1, 1, 1, 0, 0]);
        let r2 = GradedRing::standard(vec!["x", "y"], Field::Rational).unwrap();
        let k = ModulePresentation::residue_field(r2.clone(), None).unwrap();
        assert_eq!(hilbert_function(&k, -1, 3).unwrap(), [0, 1, 0, 0, 0]);
        assert!(matches!(hilbert_function(&k, 2, 1), Err(Error::EmptyWindow { .. })));
        let q = k.quotient().unwrap();
        assert_eq!((0..4).map(|e| q.hilbert(e)).collect::<Vec<_>>(), [1, 0, 0, 0]);
    }

    #[test]
    fn tails() {
        let r = GradedRing::standard(vec!["x"], Field::Rational).unwrap();
        let b = ModulePresentation::free(r.clone(), None, vec![0]).unwrap();
        let t = truncate_tail(&b, 2).unwrap();
        assert_eq!(t.generators().degrees(), &[2]);
        assert_eq!(t.relations().cols(), 0);
        let k = ModulePresentation::residue_field(r.clone(), None).unwrap();
        assert_eq!(truncate_tail(&k, 1).unwrap().rank(), 0);
        let (r, w) = line(3);
        let a1 = ModulePresentation::free(r.clone(), Some(w), vec![-1]).unwrap();
        let t = truncate_tail(&a1, 0).unwrap();
        assert_eq!(t.generators().degrees(), &[0]);
        assert_eq!(hilbert_function(&t, -1, 3).unwrap(), [0, 1, 1, 0, 0]);
    }

    #[test]
    fn syzygies() {
        let r = GradedRing::standard(vec!["x"], Field::Rational).unwrap();
        let k = ModulePresentation::residue_field(r.clone(), None).unwrap();
        let om = syzygy_module(&k, 1).unwrap();
        assert_eq!(om.generators().degrees(), &[1]);
        assert_eq!(om.relations().cols(), 0);
        let (r, w) = line(3);
        let k = ModulePresentation::residue_field(r.clone(), Some(w)).unwrap();
        let om = syzygy_module(&k, 1).unwrap();
        assert_eq!(om.generators().degrees(), &[1]);
        assert_eq!(om.relations().entry(0, 0).to_string_in(&r), "x^2");
        assert_eq!(syzygy_module(&k, 0).unwrap(), k);
    }

    #[test]
    fn ext_and_gorenstein() {
        let (r, w) = line(2);
        let a = ModulePresentation::free(r.clone(), Some(w.clone()), vec![0]).unwrap();
        let t = ext_against_a(&a, 3, -4, 6).unwrap();
        assert!(t[1..].iter().all(|row| row.iter().all(|&x| x == 0)));
        let k = ModulePresentation::residue_field(r.clone(), Some(w.clone())).unwrap();
        let t = ext_against_a(&k, 3, -4, 6).unwrap();
        assert!(t[1..].iter().all(|row| row.iter().all(|&x| x == 0)));
        let pos: Vec<i64> = (-4..=6).zip(&t[0]).filter(|(_, &d)| d > 0).map(|(e, _)| e).collect();
        assert_eq!(pos, [1]);
        assert_eq!(t[0].iter().sum::<usize>(), 1);
        assert_eq!(gorenstein_parameter(&r, Some(&w)).unwrap(), -1);
        let r3 = GradedRing::standard(vec!["x", "y", "z"], Field::Rational).unwrap();
        assert_eq!(gorenstein_parameter(&r3, None).unwrap(), 3);
        let cubic = parse_polynomial("x^3+y^3+z^3", &r3).unwrap();
        assert_eq!(gorenstein_parameter(&r3, Some(&cubic)).unwrap(), 0);
        assert!(gorenstein_parameter(&r3, Some(&Polynomial::zero())).is_err());
    }

    #[test]
    fn hom_examples() {
        let (r, w) = line(3);
        let wo = Some(&w);
        let k = cyc(&r, wo, &["x"]);
        let a_x2 = cyc(&r, wo, &["x^2"]);
        let a = ModulePresentation::free(r.clone(), Some(w.clone()), vec![0]).unwrap();
        assert_eq!(module_hom(&k, &a_x2).unwrap().dimension, 0);
        assert_eq!(module_hom(&a_x2, &k).unwrap().dimension, 1);
        assert_eq!(module_hom(&a, &a_x2).unwrap().dimension, 1);
        assert_eq!(stable_hom(&a_x2, &k).unwrap().dimension, 1);
        assert_eq!(stable_hom(&a, &k).unwrap().dimension, 0);
        assert_eq!(stable_hom(&a, &a_x2).unwrap().dimension, 0);

        let (r, w) = line(2);
        let k = ModulePresentation::residue_field(r.clone(), Some(w)).unwrap();
        let st = stable_hom(&k, &k).unwrap();
        assert_eq!(st.dimension, 1);
        assert_eq!(st.certification, Certification::Exact);
        assert_eq!(dsing_hom(&k, &k, 0).unwrap().space.dimension, 1);
    }

    #[test]
    fn mcm_detection() {
        let (r, w) = line(3);
        let k = cyc(&r, Some(&w), &["x"]);
        assert!(is_mcm(&k).unwrap());
        let r2 = GradedRing::standard(vec!["x", "y"], Field::Rational).unwrap();
        let w2 = parse_polynomial("x*y", &r2).unwrap();
        let k2 = ModulePresentation::residue_field(r2.clone(), Some(w2)).unwrap();
        assert!(!is_mcm(&k2).unwrap());
        assert!(is_mcm(&syzygy_module(&k2, 1).unwrap()).unwrap());
    }
}
