//! Exceptional objects and collections in the homotopy category of graded
//! factorizations, the dual collection of a finite-dimensional `A`, its
//! endomorphism algebra, and the classification by the Gorenstein parameter.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::free::GradedFreeModule;
use crate::functors::stabilize;
use crate::mf::{composition_table, mf_hom, mf_hom_table, HomTable, MatrixFactorization, MfHom};
use crate::modules::{check_potential, gorenstein_parameter, quotient_by_tail, ModulePresentation, Quotient};
use crate::poly::{GradedRing, Polynomial};

#[derive(Clone, Debug, Serialize)]
pub struct ExceptionalityReport {
    pub end_dimension: usize,
    pub table: HomTable,
    /// `End = k` and no self-maps in nonzero shifts of the window.
    pub exceptional: bool,
    /// The verdict holds for every shift, not only the window.
    pub certified: bool,
}

pub fn check_exceptional(e: &MatrixFactorization, lo: i64, hi: i64) -> Result<ExceptionalityReport> {
    let table = mf_hom_table(e, e, lo, hi, true)?;
    let end_dimension = mf_hom(e, e, 0, 0)?.dimension;
    let in_window = end_dimension == 1 && table.cells.iter().all(|c| c.shift == 0 || c.dimension == 0);
    let everywhere = table.support.as_ref().map(|s| s.len() == 1 && s[0].shift == 0 && s[0].dimension == 1);
    let certified = table.certified && table.consistent;
    Ok(ExceptionalityReport {
        end_dimension,
        exceptional: in_window && everywhere.unwrap_or(true),
        certified: certified && everywhere.is_some(),
        table,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PairTable {
    pub source: usize,
    pub target: usize,
    pub table: HomTable,
}

#[derive(Clone, Debug, Serialize)]
pub struct CollectionReport {
    pub length: usize,
    pub objects: Vec<ExceptionalityReport>,
    pub pairs: Vec<PairTable>,
    pub exceptional_objects: bool,
    /// `Hom(E_i, E_j[p]) = 0` for `i > j` and all `p`.
    pub semiorthogonal: bool,
    /// `Hom(E_i, E_j[p]) = 0` for `i < j` and `p != 0`, when requested.
    pub strong: Option<bool>,
    pub exceptional_collection: bool,
    pub certified: bool,
}

fn vanishes(t: &HomTable, skip_zero: bool) -> bool {
    let ok = |shift: i64, dim: usize| dim == 0 || (skip_zero && shift == 0);
    let window = t.cells.iter().all(|c| ok(c.shift, c.dimension));
    let beyond = t.support.as_ref().is_none_or(|s| s.iter().all(|c| ok(c.shift, c.dimension)));
    window && beyond
}

/// Pairwise Hom tables of an ordered list of objects and the resulting verdicts.
pub fn check_collection(objects: &[MatrixFactorization], lo: i64, hi: i64, strong: bool) -> Result<CollectionReport> {
    let n = objects.len();
    let singles = crate::par_map(objects.to_vec(), |e| check_exceptional(&e, lo, hi)).into_iter().collect::<Result<Vec<_>>>()?;
    let mut index_pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && (i > j || strong) {
                index_pairs.push((i, j));
            }
        }
    }
    let pairs = crate::par_map(index_pairs, |(i, j)| {
        mf_hom_table(&objects[i], &objects[j], lo, hi, true).map(|table| PairTable { source: i, target: j, table })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let exceptional_objects = singles.iter().all(|s| s.exceptional);
    let semiorthogonal = pairs.iter().filter(|p| p.source > p.target).all(|p| vanishes(&p.table, false));
    let strong_verdict = strong.then(|| pairs.iter().filter(|p| p.source < p.target).all(|p| vanishes(&p.table, true)));
    let certified = singles.iter().all(|s| s.certified) && pairs.iter().all(|p| p.table.certified && p.table.consistent);
    Ok(CollectionReport {
        length: n,
        exceptional_collection: exceptional_objects && semiorthogonal,
        objects: singles,
        pairs,
        exceptional_objects,
        semiorthogonal,
        strong: strong_verdict,
        certified,
    })
}

/// `E_i = A(i+a+1) / A(i+a+1)_{>=t}` for `i = 0 .. -a-1`; the default cut is `t = -a`.
pub fn dual_collection(ring: &Arc<GradedRing>, potential: &Polynomial, truncation: Option<i64>) -> Result<Vec<ModulePresentation>> {
    check_potential(potential)?;
    let a = gorenstein_parameter(ring, Some(potential))?;
    let algebra = Quotient::free(ring.clone(), GradedFreeModule::new(vec![0]), Some(potential))?;
    if algebra.finite_hilbert_series().is_none() {
        return Err(Error::NotFiniteDimensional("A = B/W has infinitely many nonzero degrees".into()));
    }
    let t = truncation.unwrap_or(-a);
    let mut out = Vec::new();
    for i in 0..(-a).max(0) {
        let s = i + a + 1;
        let free = ModulePresentation::free(ring.clone(), Some(potential.clone()), vec![-s])?;
        out.push(quotient_by_tail(&free, t)?);
    }
    Ok(out)
}

/// Structure constants of `End(E_0 + ... + E_m)` restricted to one triple of summands:
/// `table[a][b]` holds the coordinates of `g_a ∘ f_b` for `f_b: E_i -> E_j`, `g_a: E_j -> E_k`.
#[derive(Clone, Debug, Serialize)]
pub struct CompositionBlock {
    pub first: usize,
    pub second: usize,
    pub third: usize,
    pub table: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QAlgebraSummary {
    pub dimension_matrix: Vec<Vec<usize>>,
    pub total_dimension: usize,
    pub compositions: Vec<CompositionBlock>,
}

pub fn q_algebra(objects: &[MatrixFactorization]) -> Result<QAlgebraSummary> {
    let n = objects.len();
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let homs: Vec<MfHom> = crate::par_map(cells, |(i, j)| mf_hom(&objects[i], &objects[j], 0, 0)).into_iter().collect::<Result<_>>()?;
    let hom = |i: usize, j: usize| &homs[i * n + j];
    let dimension_matrix: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| hom(i, j).dimension).collect()).collect();
    let mut compositions = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (f, g, gf) = (hom(i, j), hom(j, k), hom(i, k));
                if f.dimension == 0 || g.dimension == 0 {
                    continue;
                }
                let t = composition_table(g, f, gf)?;
                compositions.push(CompositionBlock {
                    first: i,
                    second: j,
                    third: k,
                    table: t.iter().map(|row| row.iter().map(|v| v.iter().map(|c| c.to_string()).collect()).collect()).collect(),
                });
            }
        }
    }
    Ok(QAlgebraSummary { total_dimension: dimension_matrix.iter().flatten().sum(), dimension_matrix, compositions })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `a > 0`: the hypersurface is Fano.
    Fano,
    /// `a = 0`.
    CalabiYau,
    /// `a < 0`: the hypersurface is of general type.
    GeneralType,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrichotomyReport {
    pub variables: usize,
    pub degree: u32,
    pub gorenstein_parameter: i64,
    pub regime: Regime,
    pub statement: String,
    /// Line bundles in the decomposition of the hypersurface's derived category.
    pub line_bundle_count: usize,
    /// Twists of the residue field completing the factorization category.
    pub exceptional_count: usize,
}

pub fn trichotomy_report(ring: &GradedRing, potential: &Polynomial) -> Result<TrichotomyReport> {
    let d = check_potential(potential)?;
    let a = gorenstein_parameter(ring, Some(potential))?;
    let range = |first: String, last: String, n: i64| if n == 1 { first } else { format!("{first}, ..., {last}") };
    let (regime, statement) = match a.signum() {
        1 => (
            Regime::Fano,
            format!(
                "the derived category of the hypersurface is generated by {a} line bundles {} together with graded matrix factorizations",
                range(format!("O({})", 1 - a), "O".into(), a)
            ),
        ),
        0 => (
            Regime::CalabiYau,
            "graded matrix factorizations are equivalent to the derived category of the hypersurface".to_string(),
        ),
        _ => (
            Regime::GeneralType,
            format!(
                "graded matrix factorizations are generated by {} exceptional objects {} together with the derived category of the hypersurface",
                -a,
                range("k(0)".into(), format!("k({})", a + 1), -a)
            ),
        ),
    };
    Ok(TrichotomyReport {
        variables: ring.nvars(),
        degree: d,
        gorenstein_parameter: a,
        regime,
        statement,
        line_bundle_count: a.max(0) as usize,
        exceptional_count: (-a).max(0) as usize,
    })
}

/// The factorizations `stabilize(k(q))` for `q = 0, -1, ..., a+1`.
pub fn residue_field_sequence(ring: &Arc<GradedRing>, potential: &Polynomial) -> Result<Vec<MatrixFactorization>> {
    let a = gorenstein_parameter(ring, Some(potential))?;
    let k = ModulePresentation::residue_field(ring.clone(), Some(potential.clone()))?;
    (0..(-a).max(0)).map(|i| stabilize(&k.twist(-i)).map(|s| s.factorization)).collect()
}

/// Factorizations of the dual collection's modules, in order.
pub fn dual_collection_factorizations(
    ring: &Arc<GradedRing>,
    potential: &Polynomial,
    truncation: Option<i64>,
) -> Result<Vec<MatrixFactorization>> {
    dual_collection(ring, potential, truncation)?.iter().map(|m| stabilize(m).map(|s| s.factorization)).collect()
}
