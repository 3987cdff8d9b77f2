//! Gröbner bases for homogeneous submodules of graded free modules.
//!
//! Module order is position over term: a lower generator index beats any
//! monomial, and within a position the weighted graded reverse lex order on
//! monomials applies. Buchberger's algorithm runs degree by degree (normal
//! strategy), which also lets it report which input generators are redundant.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::free::{GradedFreeModule, GradedMatrix};
use crate::poly::{GradedRing, Monomial, Polynomial};

/// An element of a free module, as terms `c * m * e_pos` sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ModuleVector {
    terms: Vec<(usize, Monomial, Scalar)>,
}

fn unit_like(m: &Monomial) -> Monomial {
    m.quotient_of(m).expect("self-division")
}

fn cmp_term(a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| a.1.cmp(b.1))
}

impl ModuleVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_column(col: &[Polynomial]) -> Self {
        let mut terms = Vec::new();
        for (pos, p) in col.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push((pos, m.clone(), c.clone()));
            }
        }
        ModuleVector { terms }
    }

    /// `c * m * e_pos`.
    pub fn basis_term(pos: usize, m: Monomial, c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ModuleVector { terms: vec![(pos, m, c)] }
    }

    pub fn to_column(&self, rank: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); rank];
        for (pos, m, c) in &self.terms {
            buckets[*pos].push((m.clone(), c.clone()));
        }
        buckets.into_iter().map(Polynomial::from_terms).collect()
    }

    pub fn terms(&self) -> &[(usize, Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(usize, Monomial, Scalar)> {
        self.terms.first()
    }

    /// Degree if homogeneous with respect to the generator degrees of `ambient`.
    pub fn degree(&self, ambient: &GradedFreeModule) -> Option<i64> {
        let mut it = self.terms.iter().map(|(p, m, _)| m.degree() as i64 + ambient.degree(*p));
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn is_homogeneous(&self, ambient: &GradedFreeModule) -> bool {
        self.is_zero() || self.degree(ambient).is_some()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ModuleVector { terms: self.terms.iter().map(|(p, m, a)| (*p, m.clone(), a * c)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ModuleVector { terms: self.terms.iter().map(|(p, t, a)| (*p, t * m, a * c)).collect() }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        let mut acc = ModuleVector::zero();
        for (m, c) in p.terms() {
            acc = acc.add(&self.mul_term(m, c));
        }
        acc
    }

    /// `self - c * m * other`.
    pub fn sub_multiple(&self, c: &Scalar, m: &Monomial, other: &ModuleVector) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let a = &self.terms;
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < other.terms.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == other.terms.len() {
                Ordering::Greater
            } else {
                let (bp, bm, _) = &other.terms[j];
                // compare a[i] with m * b[j] without building the product when positions differ
                if a[i].0 != *bp {
                    bp.cmp(&a[i].0)
                } else {
                    a[i].1.cmp(&(bm * m))
                }
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (bp, bm, bc) = &other.terms[j];
                    out.push((*bp, bm * m, -&(c * bc)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &a[i].2 - &(c * &other.terms[j].2);
                    if !v.is_zero() {
                        out.push((a[i].0, a[i].1.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        ModuleVector { terms: out }
    }

    pub fn add(&self, other: &ModuleVector) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        let neg_one = -&other.terms[0].2.field().one();
        self.sub_multiple(&neg_one, &unit_like(&other.terms[0].1), other)
    }

    pub fn sub(&self, other: &ModuleVector) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        let one = other.terms[0].2.field().one();
        self.sub_multiple(&one, &unit_like(&other.terms[0].1), other)
    }

    fn make_monic(self) -> Self {
        match self.terms.first() {
            Some((_, _, c)) if !c.is_one() => {
                let inv = c.inv();
                self.scale(&inv)
            }
            _ => self,
        }
    }

    /// Keeps positions `>= from`, renumbered to start at zero.
    pub fn tail_positions(&self, from: usize) -> Self {
        ModuleVector { terms: self.terms.iter().filter(|(p, _, _)| *p >= from).map(|(p, m, c)| (p - from, m.clone(), c.clone())).collect() }
    }

    /// Keeps positions `< upto`.
    pub fn head_positions(&self, upto: usize) -> Self {
        ModuleVector { terms: self.terms.iter().filter(|(p, _, _)| *p < upto).cloned().collect() }
    }

    /// Moves every term `offset` positions down.
    pub fn shift_positions(&self, offset: usize) -> Self {
        ModuleVector { terms: self.terms.iter().map(|(p, m, c)| (p + offset, m.clone(), c.clone())).collect() }
    }

    pub fn concat(&self, tail: &ModuleVector) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(tail.terms.iter().cloned());
        debug_assert!(terms.windows(2).all(|w| cmp_term((w[0].0, &w[0].1), (w[1].0, &w[1].1)) == Ordering::Greater));
        ModuleVector { terms }
    }
}

/// A reduced Gröbner basis of a homogeneous submodule of `ambient`.
#[derive(Clone, Debug)]
pub struct ModuleGroebnerBasis {
    ring: Arc<GradedRing>,
    ambient: GradedFreeModule,
    elements: Vec<ModuleVector>,
    by_pos: Vec<Vec<usize>>,
}

struct Buchberger {
    elements: Vec<ModuleVector>,
    by_pos: Vec<Vec<usize>>,
}

impl Buchberger {
    fn reducer(&self, pos: usize, m: &Monomial) -> Option<usize> {
        self.by_pos[pos].iter().copied().find(|&k| self.elements[k].terms[0].1.divides(m))
    }

    fn reduce(&self, v: ModuleVector) -> ModuleVector {
        reduce_with(&self.elements, &self.by_pos, v)
    }
}

fn reduce_with(elements: &[ModuleVector], by_pos: &[Vec<usize>], v: ModuleVector) -> ModuleVector {
    let mut rem = v;
    let mut done: Vec<(usize, Monomial, Scalar)> = Vec::new();
    while let Some((pos, m, c)) = rem.terms.first().cloned() {
        let red = by_pos[pos].iter().copied().find(|&k| elements[k].terms[0].1.divides(&m));
        match red {
            Some(k) => {
                let g = &elements[k];
                let q = g.terms[0].1.quotient_of(&m).expect("divides");
                let f = &c * &g.terms[0].2.inv();
                rem = rem.sub_multiple(&f, &q, g);
            }
            None => {
                done.push(rem.terms.remove(0));
            }
        }
    }
    ModuleVector { terms: done }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Item {
    // pairs sort before generators of the same degree
    Pair(usize, usize),
    Forced(usize),
    Counted(usize),
}

/// Runs Buchberger on `forced` and `counted` generators; returns the (unreduced) basis
/// and the indices of counted generators not generated by earlier material.
fn buchberger(
    ring: &GradedRing,
    ambient: &GradedFreeModule,
    forced: &[ModuleVector],
    counted: &[ModuleVector],
) -> Result<(Vec<ModuleVector>, Vec<usize>)> {
    let mut queue: BTreeMap<i64, Vec<Item>> = BTreeMap::new();
    for (k, v) in forced.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let d = v.degree(ambient).ok_or_else(|| Error::Inhomogeneous(format!("generator {k} is not homogeneous")))?;
        queue.entry(d).or_default().push(Item::Forced(k));
    }
    for (k, v) in counted.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let d = v.degree(ambient).ok_or_else(|| Error::Inhomogeneous(format!("generator {k} is not homogeneous")))?;
        queue.entry(d).or_default().push(Item::Counted(k));
    }
    let mut state = Buchberger { elements: Vec::new(), by_pos: vec![Vec::new(); ambient.rank()] };
    let mut essential = Vec::new();
    while let Some((&deg, _)) = queue.iter().next() {
        let mut items = queue.remove(&deg).expect("present");
        items.sort();
        for item in items {
            let v = match item {
                Item::Pair(i, j) => {
                    let (a, b) = (&state.elements[i], &state.elements[j]);
                    let (_, ma, ca) = &a.terms[0];
                    let (_, mb, cb) = &b.terms[0];
                    let l = ring.lcm(ma, mb);
                    let qa = ma.quotient_of(&l).expect("lcm");
                    let qb = mb.quotient_of(&l).expect("lcm");
                    let sa = a.mul_term(&qa, &ca.inv());
                    sa.sub_multiple(&cb.inv(), &qb, b)
                }
                Item::Forced(k) => forced[k].clone(),
                Item::Counted(k) => counted[k].clone(),
            };
            let r = state.reduce(v);
            if r.is_zero() {
                continue;
            }
            if let Item::Counted(k) = item {
                essential.push(k);
            }
            let r = r.make_monic();
            let (pos, lm, _) = r.terms[0].clone();
            let idx = state.elements.len();
            for &other in &state.by_pos[pos] {
                let om = &state.elements[other].terms[0].1;
                let l = ring.lcm(om, &lm);
                let d = l.degree() as i64 + ambient.degree(pos);
                queue.entry(d).or_default().push(Item::Pair(other, idx));
            }
            state.by_pos[pos].push(idx);
            state.elements.push(r);
            debug_assert!(state.reducer(pos, &lm).is_some());
        }
    }
    Ok((state.elements, essential))
}

impl ModuleGroebnerBasis {
    /// Reduced Gröbner basis of the submodule generated by `gens`.
    pub fn new(ring: Arc<GradedRing>, ambient: GradedFreeModule, gens: &[ModuleVector]) -> Result<Self> {
        let (raw, _) = buchberger(&ring, &ambient, &[], gens)?;
        Ok(Self::from_raw(ring, ambient, raw))
    }

    fn from_raw(ring: Arc<GradedRing>, ambient: GradedFreeModule, raw: Vec<ModuleVector>) -> Self {
        // drop elements whose leading term is divisible by another's
        let mut keep: Vec<ModuleVector> = Vec::new();
        for (i, v) in raw.iter().enumerate() {
            let (p, m, _) = &v.terms[0];
            let redundant = raw.iter().enumerate().any(|(j, w)| {
                let (q, n, _) = &w.terms[0];
                j != i && p == q && n.divides(m) && (n != m || j < i)
            });
            if !redundant {
                keep.push(v.clone());
            }
        }
        keep.sort_by(|a, b| {
            let (pa, ma, _) = &a.terms[0];
            let (pb, mb, _) = &b.terms[0];
            cmp_term((*pb, mb), (*pa, ma))
        });
        let mut by_pos = vec![Vec::new(); ambient.rank()];
        for (i, v) in keep.iter().enumerate() {
            by_pos[v.terms[0].0].push(i);
        }
        // tail reduction
        let mut elements = keep.clone();
        for i in 0..elements.len() {
            let head = elements[i].terms[0].clone();
            let tail = ModuleVector { terms: elements[i].terms[1..].to_vec() };
            let reduced = reduce_with(&elements, &by_pos, tail);
            let mut terms = vec![head];
            terms.extend(reduced.terms);
            elements[i] = ModuleVector { terms };
        }
        ModuleGroebnerBasis { ring, ambient, elements, by_pos }
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn ambient(&self) -> &GradedFreeModule {
        &self.ambient
    }

    pub fn elements(&self) -> &[ModuleVector] {
        &self.elements
    }

    pub fn leading_terms(&self) -> impl Iterator<Item = (usize, &Monomial)> {
        self.elements.iter().map(|v| (v.terms[0].0, &v.terms[0].1))
    }

    /// True if `(pos, m)` is not divisible by any leading term.
    pub fn is_standard(&self, pos: usize, m: &Monomial) -> bool {
        !self.by_pos[pos].iter().any(|&k| self.elements[k].terms[0].1.divides(m))
    }

    pub fn normal_form(&self, v: &ModuleVector) -> ModuleVector {
        reduce_with(&self.elements, &self.by_pos, v.clone())
    }

    pub fn contains(&self, v: &ModuleVector) -> bool {
        self.normal_form(v).is_zero()
    }

    /// Every S-vector reduces to zero.
    pub fn is_groebner(&self) -> bool {
        for (i, a) in self.elements.iter().enumerate() {
            for b in &self.elements[i + 1..] {
                let (pa, ma, _) = &a.terms[0];
                let (pb, mb, _) = &b.terms[0];
                if pa != pb {
                    continue;
                }
                let l = self.ring.lcm(ma, mb);
                let s = a.mul_term(&ma.quotient_of(&l).unwrap(), &a.terms[0].2.inv()).sub_multiple(
                    &b.terms[0].2.inv(),
                    &mb.quotient_of(&l).unwrap(),
                    b,
                );
                if !self.contains(&s) {
                    return false;
                }
            }
        }
        true
    }

    /// Standard monomials `(pos, m)` of total degree `e`.
    pub fn standard_monomials(&self, e: i64) -> Vec<(usize, Monomial)> {
        let mut out = Vec::new();
        for pos in 0..self.ambient.rank() {
            for m in self.ring.monomials_of_degree(e - self.ambient.degree(pos)) {
                if self.is_standard(pos, &m) {
                    out.push((pos, m));
                }
            }
        }
        out
    }

    /// Full Hilbert function of `ambient / submodule` when it is finite-dimensional.
    pub fn finite_hilbert_series(&self) -> Option<BTreeMap<i64, usize>> {
        let n = self.ring.nvars();
        let mut series = BTreeMap::new();
        for pos in 0..self.ambient.rank() {
            let lms: Vec<&Monomial> = self.by_pos[pos].iter().map(|&k| &self.elements[k].terms[0].1).collect();
            if lms.iter().any(|m| m.is_one()) {
                continue;
            }
            let mut bounds = vec![None; n];
            for m in &lms {
                if let Some((v, e)) = m.pure_power() {
                    bounds[v] = Some(bounds[v].map_or(e, |b: u32| b.min(e)));
                }
            }
            if bounds.iter().any(Option::is_none) {
                return None;
            }
            let bounds: Vec<u32> = bounds.into_iter().map(Option::unwrap).collect();
            let mut exps = vec![0u32; n];
            loop {
                let m = self.ring.monomial(&exps);
                if !lms.iter().any(|l| l.divides(&m)) {
                    *series.entry(m.degree() as i64 + self.ambient.degree(pos)).or_insert(0) += 1;
                }
                // odometer
                let mut k = 0;
                loop {
                    if k == n {
                        break;
                    }
                    exps[k] += 1;
                    if exps[k] < bounds[k] {
                        break;
                    }
                    exps[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
            if n == 0 {
                *series.entry(self.ambient.degree(pos)).or_insert(0) += 1;
            }
        }
        Some(series)
    }
}

/// Gröbner basis of the submodule of `ambient` spanned by `gens`.
pub fn groebner(ring: Arc<GradedRing>, ambient: GradedFreeModule, gens: &[ModuleVector]) -> Result<ModuleGroebnerBasis> {
    ModuleGroebnerBasis::new(ring, ambient, gens)
}

pub fn normal_form(v: &ModuleVector, gb: &ModuleGroebnerBasis) -> ModuleVector {
    gb.normal_form(v)
}

fn columns(m: &GradedMatrix) -> Vec<ModuleVector> {
    (0..m.cols()).map(|j| ModuleVector::from_column(&m.column(j))).collect()
}

fn check_homogeneous(m: &GradedMatrix) -> Result<()> {
    let rep = m.validate();
    if let Some(v) = rep.violations.first() {
        return Err(Error::Inhomogeneous(format!("entry ({}, {}) = {} not of degree {}", v.row, v.col, v.found, v.required_degree)));
    }
    Ok(())
}

/// Columns `(f e_j, e_j)` of the graph of `f` inside `target ⊕ source`.
fn graph_gens(f: &GradedMatrix) -> (GradedFreeModule, Vec<ModuleVector>) {
    let rg = f.rows();
    let aug = f.target().direct_sum(&f.source().twist(-f.degree()));
    let one = f.ring().field().one();
    let unit = f.ring().one_monomial();
    let gens = (0..f.cols())
        .map(|j| {
            let col = ModuleVector::from_column(&f.column(j));
            col.concat(&ModuleVector::basis_term(rg + j, unit.clone(), one.clone()))
        })
        .collect();
    (aug, gens)
}

/// Indices of a minimal generating set among `counted`, modulo the submodule
/// spanned by `forced` (processed first in each degree).
pub fn essential_generators(
    ring: &Arc<GradedRing>,
    ambient: &GradedFreeModule,
    forced: &[ModuleVector],
    counted: &[ModuleVector],
) -> Result<Vec<usize>> {
    let (_, ess) = buchberger(ring, ambient, forced, counted)?;
    Ok(ess)
}

/// A minimal homogeneous generating set of `ker f`, as the columns of a matrix into `f.source()`.
pub fn kernel(f: &GradedMatrix) -> Result<GradedMatrix> {
    check_homogeneous(f)?;
    let ring = f.ring().clone();
    let rg = f.rows();
    let (aug, gens) = graph_gens(f);
    let gb = ModuleGroebnerBasis::new(ring.clone(), aug.clone(), &gens)?;
    let ker: Vec<ModuleVector> = gb.elements().iter().filter(|v| v.terms[0].0 >= rg).map(|v| v.tail_positions(rg)).collect();
    let src = f.source().clone();
    let ess = essential_generators(&ring, &src, &[], &ker)?;
    let chosen: Vec<&ModuleVector> = ess.iter().map(|&k| &ker[k]).collect();
    let degrees = chosen.iter().map(|v| v.degree(&src).expect("homogeneous")).collect();
    let cols = chosen.iter().map(|v| v.to_column(src.rank())).collect();
    GradedMatrix::from_columns(ring, src, degrees, 0, cols)
}

/// Solves `through ∘ h = target_map` for `h`.
pub fn lift(target_map: &GradedMatrix, through: &GradedMatrix) -> Result<GradedMatrix> {
    check_homogeneous(target_map)?;
    check_homogeneous(through)?;
    if target_map.target() != through.target() {
        return Err(Error::InterfaceMismatch("lift: maps have different targets".into()));
    }
    let ring = through.ring().clone();
    let rg = through.rows();
    let (aug, gens) = graph_gens(through);
    let gb = ModuleGroebnerBasis::new(ring.clone(), aug, &gens)?;
    let mut cols = Vec::with_capacity(target_map.cols());
    for j in 0..target_map.cols() {
        let v = ModuleVector::from_column(&target_map.column(j));
        let r = gb.normal_form(&v);
        if !r.head_positions(rg).is_zero() {
            return Err(Error::NotInImage { column: j });
        }
        let h = r.tail_positions(rg).scale(&-&ring.field().one());
        cols.push(h.to_column(through.cols()));
    }
    let mut entries = vec![Vec::with_capacity(cols.len()); through.cols()];
    for c in cols {
        for (i, p) in c.into_iter().enumerate() {
            entries[i].push(p);
        }
    }
    let h =
        GradedMatrix::new(ring, target_map.source().clone(), through.source().clone(), target_map.degree() - through.degree(), entries)?;
    debug_assert_eq!(&through.compose(&h)?, target_map);
    Ok(h)
}

/// Removes generators of a presentation matrix (rows) through unit entries.
/// Each pivot is the lexicographically first nonzero constant entry.
pub fn prune_units(rel: &GradedMatrix) -> GradedMatrix {
    let mut m = rel.clone();
    loop {
        let mut pivot = None;
        'search: for i in 0..m.rows() {
            for j in 0..m.cols() {
                if m.entry_degree(i, j) == 0 && m.entry(i, j).as_constant().is_some() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((i, j)) = pivot else {
            return m;
        };
        let u_inv = m.entry(i, j).as_constant().expect("unit").inv();
        let pivot_col = m.column(j);
        let mut entries = m.entries().to_vec();
        for c in 0..m.cols() {
            if c == j || m.entry(i, c).is_zero() {
                continue;
            }
            let f = m.entry(i, c).scale(&u_inv);
            for (k, row) in entries.iter_mut().enumerate() {
                if !pivot_col[k].is_zero() {
                    row[c] = &row[c] - &(&f * &pivot_col[k]);
                }
            }
        }
        let rows: Vec<usize> = (0..m.rows()).filter(|&k| k != i).collect();
        let cols: Vec<usize> = (0..m.cols()).filter(|&c| c != j).collect();
        let full = GradedMatrix::new(m.ring().clone(), m.source().clone(), m.target().clone(), m.degree(), entries)
            .expect("pivoting preserves homogeneity");
        m = full.submatrix(&rows, &cols);
    }
}

fn modulus_columns(ring: &GradedRing, module: &GradedFreeModule, w: &Polynomial) -> Vec<ModuleVector> {
    let _ = ring;
    (0..module.rank())
        .map(|i| {
            let mut col = vec![Polynomial::zero(); module.rank()];
            col[i] = w.clone();
            ModuleVector::from_column(&col)
        })
        .collect()
}

/// Keeps a minimal set of columns generating the same submodule, modulo `w · target`
/// when a modulus is given. Zero columns are dropped.
pub fn minimal_columns(rel: &GradedMatrix, modulus: Option<&Polynomial>) -> Result<GradedMatrix> {
    let ring = rel.ring().clone();
    let forced = modulus.map_or_else(Vec::new, |w| modulus_columns(&ring, rel.target(), w));
    let cols = columns(rel);
    let mut ess = essential_generators(&ring, rel.target(), &forced, &cols)?;
    ess.sort_by_key(|&k| (rel.column_degree(k), k));
    let rows: Vec<usize> = (0..rel.rows()).collect();
    Ok(rel.submatrix(&rows, &ess))
}

/// Unit pruning followed by minimal column selection.
pub fn minimize_presentation(rel: &GradedMatrix, modulus: Option<&Polynomial>) -> Result<GradedMatrix> {
    let pruned = prune_units(rel);
    minimal_columns(&pruned, modulus)
}

/// `[rel | w·Id]` when a modulus is present.
pub fn with_modulus(rel: &GradedMatrix, modulus: Option<&Polynomial>) -> GradedMatrix {
    match modulus {
        None => rel.clone(),
        Some(w) => {
            let d = w.degree().expect("homogeneous modulus") as i64;
            let wid = GradedMatrix::scalar_multiple(rel.ring().clone(), rel.target().clone(), w, d)
                .reinterpret(rel.target().twist(-d), rel.target().clone(), 0)
                .expect("w·Id is homogeneous");
            rel.hconcat(&wid).expect("same target")
        }
    }
}

/// Minimal graded free resolution `F_s -> ... -> F_1 -> F_0` of the cokernel of `pres`,
/// over `B` or, with a modulus `W`, over `A = B/W`. Returns the differentials
/// `d_1, d_2, ...` (at most `steps` of them); stops early once a kernel vanishes.
pub fn minimal_resolution(pres: &GradedMatrix, steps: usize, modulus: Option<&Polynomial>) -> Result<Vec<GradedMatrix>> {
    check_homogeneous(pres)?;
    if pres.degree() != 0 {
        return Err(Error::Degree("presentation matrices must have degree 0".into()));
    }
    let mut out = Vec::new();
    if steps == 0 {
        return Ok(out);
    }
    let mut d = minimize_presentation(pres, modulus)?;
    loop {
        if d.cols() == 0 {
            if out.is_empty() {
                out.push(d);
            }
            break;
        }
        out.push(d.clone());
        if out.len() == steps {
            break;
        }
        let full = with_modulus(&d, modulus);
        let k = kernel(&full)?;
        let first: Vec<usize> = (0..d.cols()).collect();
        let all: Vec<usize> = (0..k.cols()).collect();
        let projected = k.submatrix(&first, &all);
        let next = minimize_presentation(&projected, modulus)?;
        if next.rows() != d.cols() {
            return Err(Error::Degree("unexpected non-minimal generators in resolution".into()));
        }
        d = next;
    }
    Ok(out)
}
