//! The cokernel functor from factorizations to modules over `A = B/W`, its
//! quasi-inverse on objects, and the checks tying the two Hom theories together.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::free::GradedMatrix;
use crate::groebner::{self, ModuleVector};
use crate::linalg;
use crate::mf::{mf_hom, mf_is_isomorphic, Discriminators, IsoSearch, MatrixFactorization, MfMorphism};
use crate::modules::{dsing_hom, is_mcm, slice_operator, syzygy_module, Certification, ModulePresentation, Quotient};

/// `Coker(p1)` with the certificate that `Ext^i_A(-, A)` vanishes for `i > 0`.
#[derive(Clone, Debug)]
pub struct CokResult {
    pub module: ModulePresentation,
    pub source: MatrixFactorization,
    pub certification: Certification,
}

pub fn cok(x: &MatrixFactorization) -> Result<CokResult> {
    let rep = x.validate();
    if !rep.valid {
        return Err(Error::InvalidFactorization("cokernel of an invalid factorization".into()));
    }
    Ok(CokResult { module: x.cokernel(), source: x.clone(), certification: Certification::Structural })
}

/// The map `Coker(p1) -> Coker(q1)` induced by `f0` on generators.
pub fn cok_on_morphism(f: &MfMorphism) -> Result<GradedMatrix> {
    MfMorphism::new(f.source.clone(), f.target.clone(), f.f1.clone(), f.f0.clone())?;
    Ok(f.f0.clone())
}

/// True if the module map `phi: M -> N` given on generators is zero, i.e. every
/// generator image lies in the relations of `N`.
pub fn module_map_is_zero(phi: &GradedMatrix, n: &ModulePresentation) -> Result<bool> {
    let q = n.quotient()?;
    let gb = q.groebner_basis();
    Ok((0..phi.cols()).all(|j| gb.contains(&ModuleVector::from_column(&phi.column(j)))))
}

/// One degree where the periodic complex `A ⊗ P1 -> A ⊗ P0 -> A ⊗ P1(d)` fails to be exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessFailure {
    pub degree: i64,
    /// `"P0"` or `"P1"`: the term where exactness fails.
    pub term: String,
    pub kernel_dimension: usize,
    pub image_dimension: usize,
    /// The two consecutive maps do not compose to zero.
    pub not_a_complex: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcyclicityReport {
    pub exact: bool,
    pub window: (i64, i64),
    pub failures: Vec<ExactnessFailure>,
}

/// Degreewise exactness of `X ⊗_B A` in degrees `[lo, hi]`.
pub fn check_acyclic_tensor(x: &MatrixFactorization, lo: i64, hi: i64) -> Result<AcyclicityReport> {
    if lo > hi {
        return Err(Error::EmptyWindow { lo, hi });
    }
    let ring = x.ring().clone();
    let field = ring.field();
    let w = x.potential();
    let d = x.potential_degree();
    let q1 = Quotient::free(ring.clone(), x.odd_module().clone(), Some(w))?;
    let q0 = Quotient::free(ring.clone(), x.even_module().clone(), Some(w))?;
    let mut failures = Vec::new();
    for e in lo..=hi {
        // at P0 in degree e: P1_e -> P0_e -> P1_{e+d}
        let (_, _, into) = slice_operator(x.p1(), &q1, &q0, e);
        let (s0, _, out) = slice_operator(x.p0(), &q0, &q1, e);
        check_term(e, "P0", &into, &out, s0.len(), field, &mut failures);
        // at P1 in degree e: P0_{e-d} -> P1_e -> P0_e
        let (_, _, into) = slice_operator(x.p0(), &q0, &q1, e - d);
        let (s1, _, out) = slice_operator(x.p1(), &q1, &q0, e);
        check_term(e, "P1", &into, &out, s1.len(), field, &mut failures);
    }
    Ok(AcyclicityReport { exact: failures.is_empty(), window: (lo, hi), failures })
}

fn check_term(
    e: i64,
    term: &str,
    into: &linalg::SparseColumns,
    out: &linalg::SparseColumns,
    dim: usize,
    field: crate::field::Field,
    failures: &mut Vec<ExactnessFailure>,
) {
    let image = linalg::rank(into, field);
    let kernel = dim - linalg::rank(out, field);
    let zero = field.zero();
    let not_a_complex = into.cols.iter().any(|col| {
        let mut dense = vec![zero.clone(); dim];
        for (k, c) in col {
            dense[*k] = c.clone();
        }
        out.apply(&dense, field).iter().any(|c| !c.is_zero())
    });
    if not_a_complex || image != kernel {
        failures.push(ExactnessFailure {
            degree: e,
            term: term.to_string(),
            kernel_dimension: kernel,
            image_dimension: image,
            not_a_complex,
        });
    }
}

/// A factorization representing a module in the singularity category, with the
/// number of syzygy steps taken to reach a maximal Cohen-Macaulay module.
#[derive(Clone, Debug)]
pub struct Stabilized {
    pub factorization: MatrixFactorization,
    pub depth: usize,
}

/// Quasi-inverse of [`cok`] on objects: `Omega^depth M` is presented over `B` by a
/// square injective `p1`, and `p0` lifts `W · Id` through it.
pub fn stabilize(m: &ModulePresentation) -> Result<Stabilized> {
    let w = m.potential().ok_or_else(|| Error::Precondition("stabilization needs a module over A".into()))?.clone();
    let ring = m.ring().clone();
    let cap = ring.nvars() + 2;
    let mut current = m.minimized()?;
    let mut depth = 0;
    while !is_mcm(&current)? {
        if depth >= cap {
            return Err(Error::SyzygyCapExceeded { cap });
        }
        current = syzygy_module(&current, 1)?.minimized()?;
        depth += 1;
    }
    let p1 = groebner::minimize_presentation(&current.full_relations(), None)?;
    if p1.rows() != p1.cols() {
        return Err(Error::Precondition(format!("maximal Cohen-Macaulay presentation is not square ({} x {})", p1.rows(), p1.cols())));
    }
    let d = w.degree().expect("checked potential") as i64;
    let wid = GradedMatrix::scalar_multiple(ring.clone(), p1.target().clone(), &w, d);
    let p0 = groebner::lift(&wid, &p1)?;
    let x = MatrixFactorization::new(ring, w, p1, p0)?;
    Ok(Stabilized { factorization: x.minimize(), depth })
}

/// `dim Hom(X, Y[p])` against `dim Hom(Cok X, Cok Y[p])` in the singularity category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaithfulnessCell {
    pub shift: i64,
    pub factorization_dimension: usize,
    pub module_dimension: usize,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaithfulnessReport {
    pub cells: Vec<FaithfulnessCell>,
    pub all_agree: bool,
}

pub fn check_full_faithfulness(x: &MatrixFactorization, y: &MatrixFactorization, shifts: &[i64]) -> Result<FaithfulnessReport> {
    let m = cok(x)?.module;
    let n = cok(y)?.module;
    let cells = crate::par_map(shifts.to_vec(), |p| -> Result<FaithfulnessCell> {
        let a = mf_hom(x, y, p, 0)?.dimension;
        let b = dsing_hom(&m, &n, p)?.space.dimension;
        Ok(FaithfulnessCell { shift: p, factorization_dimension: a, module_dimension: b, agree: a == b })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(FaithfulnessReport { all_agree: cells.iter().all(|c| c.agree), cells })
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundTripReport {
    pub isomorphic: bool,
    pub original_rank: usize,
    pub minimal_rank: usize,
    pub recovered_rank: usize,
    pub depth: usize,
    pub discriminators: Option<Discriminators>,
}

/// Compares `stabilize(cok X)` with `X` stripped of contractible summands.
pub fn check_round_trip(x: &MatrixFactorization, seed: u64) -> Result<RoundTripReport> {
    let xmin = x.minimize();
    let back = stabilize(&cok(x)?.module)?;
    let search = mf_is_isomorphic(&back.factorization, &xmin, seed)?;
    let (isomorphic, discriminators) = match search {
        IsoSearch::Found(_) => (true, None),
        IsoSearch::NotFound(d) => (false, Some(d)),
    };
    Ok(RoundTripReport {
        isomorphic,
        original_rank: x.rank(),
        minimal_rank: xmin.rank(),
        recovered_rank: back.factorization.rank(),
        depth: back.depth,
        discriminators,
    })
}

/// True if `X` is the zero object: its identity is null-homotopic.
pub fn is_contractible(x: &MatrixFactorization) -> bool {
    MfMorphism::identity(x).is_null_homotopic()
}

/// If some syzygy of `Cok X` among the first `steps` is free, the cokernel is perfect;
/// reports that and whether `X` is then contractible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerfectnessReport {
    pub perfect: bool,
    pub contractible: bool,
    pub consistent: bool,
}

pub fn check_perfect_cokernel(x: &MatrixFactorization, steps: usize) -> Result<PerfectnessReport> {
    let m = cok(x)?.module;
    let res = groebner::minimal_resolution(m.relations(), steps, m.potential())?;
    let perfect = res.len() < steps || res.last().is_some_and(|d| d.cols() == 0);
    let contractible = is_contractible(x);
    Ok(PerfectnessReport { perfect, contractible, consistent: !perfect || contractible })
}
