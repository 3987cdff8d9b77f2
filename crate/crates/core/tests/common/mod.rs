#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use gmf_core::{Field, GradedFreeModule, GradedMatrix, GradedRing, Monomial, Polynomial, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_scalar(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    field.from_i64(rng.gen_range(-3..=3))
}

/// Random homogeneous polynomial of degree `e`; each monomial survives with probability `density`.
pub fn random_homogeneous(rng: &mut ChaCha8Rng, ring: &GradedRing, e: i64, density: f64) -> Polynomial {
    if e < 0 {
        return Polynomial::zero();
    }
    let mut terms = Vec::new();
    for m in ring.monomials_of_degree(e) {
        if rng.gen_bool(density) {
            terms.push((m, small_scalar(rng, ring.field())));
        }
    }
    Polynomial::from_terms(terms)
}

pub fn random_matrix(
    rng: &mut ChaCha8Rng,
    ring: &Arc<GradedRing>,
    source: &[i64],
    target: &[i64],
    degree: i64,
    density: f64,
) -> GradedMatrix {
    let entries =
        target.iter().map(|&t| source.iter().map(|&s| random_homogeneous(rng, ring, s - t + degree, density)).collect()).collect();
    GradedMatrix::new(ring.clone(), GradedFreeModule::new(source.to_vec()), GradedFreeModule::new(target.to_vec()), degree, entries)
        .expect("homogeneous by construction")
}

/// Monomial basis of the degree-`e` part of a free module.
pub struct DenseSlice {
    index: HashMap<(usize, Monomial), usize>,
}

impl DenseSlice {
    pub fn new(ring: &GradedRing, module: &GradedFreeModule, e: i64) -> Self {
        let mut index = HashMap::new();
        for pos in 0..module.rank() {
            for m in ring.monomials_of_degree(e - module.degree(pos)) {
                let k = index.len();
                index.insert((pos, m), k);
            }
        }
        DenseSlice { index }
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn vector(&self, field: Field, column: &[Polynomial]) -> Vec<Scalar> {
        let mut v = vec![field.zero(); self.dim()];
        for (pos, p) in column.iter().enumerate() {
            for (m, c) in p.terms() {
                let k = self.index[&(pos, m.clone())];
                v[k] = &v[k] + c;
            }
        }
        v
    }
}

fn times(ring: &GradedRing, column: &[Polynomial], m: &Monomial) -> Vec<Polynomial> {
    let one = ring.field().one();
    column.iter().map(|p| p.mul_term(m, &one)).collect()
}

/// Images of the monomial basis of `source_e` under `f`, as dense vectors in `target_{e + deg f}`.
pub fn dense_images(f: &GradedMatrix, e: i64) -> Vec<Vec<Scalar>> {
    let ring = f.ring();
    let field = ring.field();
    let tgt = DenseSlice::new(ring, f.target(), e + f.degree());
    let mut out = Vec::new();
    for j in 0..f.cols() {
        let col = f.column(j);
        for m in ring.monomials_of_degree(e - f.source().degree(j)) {
            out.push(tgt.vector(field, &times(ring, &col, &m)));
        }
    }
    out
}

/// `dim (ker f)_e` by dense rank.
pub fn dense_kernel_dim(f: &GradedMatrix, e: i64) -> usize {
    let src = DenseSlice::new(f.ring(), f.source(), e);
    let images = dense_images(f, e);
    src.dim() - dense_rank(images)
}

/// `dim` of the degree-`e` span of the columns of `k` and their monomial multiples.
pub fn dense_span_dim(k: &GradedMatrix, e: i64) -> usize {
    let ring = k.ring();
    let tgt = DenseSlice::new(ring, k.target(), e);
    let mut rows = Vec::new();
    for j in 0..k.cols() {
        let col = k.column(j);
        for m in ring.monomials_of_degree(e - k.column_degree(j)) {
            rows.push(tgt.vector(ring.field(), &times(ring, &col, &m)));
        }
    }
    dense_rank(rows)
}

/// Row-echelon rank by plain Gaussian elimination.
pub fn dense_rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][c].inv();
        let pivot: Vec<Scalar> = rows[rank].iter().map(|v| v * &inv).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[c].clone();
            if !f.is_zero() {
                for k in c..ncols {
                    row[k] = &row[k] - &(&f * &pivot[k]);
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Number of monomials of degree `e` in `n` standard-graded variables.
pub fn monomial_count(n: u64, e: i64) -> u64 {
    if e < 0 {
        return 0;
    }
    let e = e as u64;
    (1..n).fold(1u64, |acc, i| acc * (e + i) / i)
}
