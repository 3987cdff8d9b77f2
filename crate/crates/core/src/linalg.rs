//! Exact linear algebra over [`Field`]: reduced row echelon forms, kernels, solving,
//! and an incremental span used for quotient-space coordinates.
//!
//! Prime fields run on dense `u32` rows; rationals use sparse rows to keep
//! big-integer allocations proportional to the fill-in.

use crate::field::{mod_inverse, Field, Scalar};

/// A linear operator given by its sparse columns.
#[derive(Clone, Debug)]
pub struct SparseColumns {
    pub nrows: usize,
    pub cols: Vec<Vec<(usize, Scalar)>>,
}

impl SparseColumns {
    pub fn new(nrows: usize) -> Self {
        SparseColumns { nrows, cols: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn push(&mut self, col: Vec<(usize, Scalar)>) {
        self.cols.push(col);
    }

    fn to_rows(&self) -> Vec<Vec<(usize, Scalar)>> {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                if !v.is_zero() {
                    rows[*i].push((j, v.clone()));
                }
            }
        }
        rows
    }

    pub fn apply(&self, x: &[Scalar], field: Field) -> Vec<Scalar> {
        let mut out = vec![field.zero(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            if x[j].is_zero() {
                continue;
            }
            for (i, v) in col {
                out[*i] = &out[*i] + &(v * &x[j]);
            }
        }
        out
    }
}

/// Reduced row echelon form: unit pivots, zero above and below each pivot.
#[derive(Clone, Debug)]
pub struct Rref {
    pub ncols: usize,
    pub rows: Vec<Vec<(usize, Scalar)>>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the right kernel.
    pub fn kernel(&self, field: Field) -> Vec<Vec<Scalar>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![field.zero(); self.ncols];
            v[f] = field.one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if let Ok(k) = row.binary_search_by_key(&f, |(c, _)| *c) {
                    v[p] = -&row[k].1;
                }
            }
            basis.push(v);
        }
        basis
    }
}

fn rref_rows(rows: Vec<Vec<(usize, Scalar)>>, ncols: usize, field: Field) -> Rref {
    match field {
        Field::Prime(p) => rref_prime(rows, ncols, p),
        Field::Rational => rref_sparse(rows, ncols, field),
    }
}

fn rref_prime(rows: Vec<Vec<(usize, Scalar)>>, ncols: usize, p: u32) -> Rref {
    let pm = p as u64;
    let mut dense: Vec<Vec<u32>> = rows
        .into_iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let mut d = vec![0u32; ncols];
            for (c, v) in r {
                d[c] = v.prime_value();
            }
            d
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == dense.len() {
            break;
        }
        let Some(k) = (r..dense.len()).find(|&k| dense[k][c] != 0) else {
            continue;
        };
        dense.swap(r, k);
        let inv = mod_inverse(dense[r][c], p) as u64;
        for v in dense[r][c..].iter_mut() {
            *v = ((*v as u64 * inv) % pm) as u32;
        }
        let nz: Vec<usize> = (c..ncols).filter(|&j| dense[r][j] != 0).collect();
        let (top, rest) = dense.split_at_mut(r);
        let (pivot_row, bottom) = rest.split_first_mut().expect("pivot row");
        for other in top.iter_mut().chain(bottom.iter_mut()) {
            let f = other[c];
            if f == 0 {
                continue;
            }
            let neg = pm - f as u64;
            for &j in &nz {
                other[j] = ((other[j] as u64 + neg * pivot_row[j] as u64) % pm) as u32;
            }
        }
        pivots.push(c);
        r += 1;
    }
    dense.truncate(r);
    let rows = dense
        .into_iter()
        .map(|d| d.into_iter().enumerate().filter(|(_, v)| *v != 0).map(|(c, v)| (c, Scalar::Prime { value: v, modulus: p })).collect())
        .collect();
    Rref { ncols, rows, pivots }
}

fn axpy_sparse(a: &[(usize, Scalar)], f: &Scalar, b: &[(usize, Scalar)]) -> Vec<(usize, Scalar)> {
    // a - f * b
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -&(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(f * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn rref_sparse(rows: Vec<Vec<(usize, Scalar)>>, ncols: usize, _field: Field) -> Rref {
    let mut rows: Vec<Vec<(usize, Scalar)>> = rows
        .into_iter()
        .map(|mut r| {
            r.sort_by_key(|(c, _)| *c);
            r.retain(|(_, v)| !v.is_zero());
            r
        })
        .filter(|r| !r.is_empty())
        .collect();
    let mut done: Vec<Vec<(usize, Scalar)>> = Vec::new();
    let mut pivots = Vec::new();
    while !rows.is_empty() {
        // choose the row with the smallest leading column, shortest among ties
        let (k, _) = rows.iter().enumerate().min_by_key(|(_, r)| (r[0].0, r.len())).expect("nonempty");
        let mut pr = rows.swap_remove(k);
        let c = pr[0].0;
        let inv = pr[0].1.inv();
        for e in pr.iter_mut() {
            e.1 = &e.1 * &inv;
        }
        for r in rows.iter_mut() {
            if r[0].0 == c {
                let f = r[0].1.clone();
                *r = axpy_sparse(r, &f, &pr);
            }
        }
        rows.retain(|r| !r.is_empty());
        done.push(pr);
        pivots.push(c);
    }
    // back substitution, last pivot first
    let mut order: Vec<usize> = (0..done.len()).collect();
    order.sort_by_key(|&i| pivots[i]);
    let mut rows_sorted: Vec<Vec<(usize, Scalar)>> = order.iter().map(|&i| done[i].clone()).collect();
    let piv_sorted: Vec<usize> = order.iter().map(|&i| pivots[i]).collect();
    for k in (0..rows_sorted.len()).rev() {
        let c = piv_sorted[k];
        let (top, rest) = rows_sorted.split_at_mut(k);
        let pr = &rest[0];
        for r in top.iter_mut() {
            if let Ok(pos) = r.binary_search_by_key(&c, |(cc, _)| *cc) {
                let f = r[pos].1.clone();
                *r = axpy_sparse(r, &f, pr);
            }
        }
    }
    Rref { ncols, rows: rows_sorted, pivots: piv_sorted }
}

/// RREF of the matrix whose columns are `op.cols`.
pub fn rref(op: &SparseColumns, field: Field) -> Rref {
    rref_rows(op.to_rows(), op.ncols(), field)
}

pub fn rank(op: &SparseColumns, field: Field) -> usize {
    rref(op, field).rank()
}

pub fn kernel(op: &SparseColumns, field: Field) -> Vec<Vec<Scalar>> {
    rref(op, field).kernel(field)
}

/// Rank of a dense row-major matrix.
pub fn rank_dense(rows: &[Vec<Scalar>], field: Field) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let sparse = rows.iter().map(|r| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect()).collect();
    rref_rows(sparse, ncols, field).rank()
}

/// Some solution of `op · x = b`, if one exists.
pub fn solve(op: &SparseColumns, b: &[Scalar], field: Field) -> Option<Vec<Scalar>> {
    let n = op.ncols();
    let mut rows = op.to_rows();
    for (i, v) in b.iter().enumerate() {
        if !v.is_zero() {
            rows[i].push((n, v.clone()));
        }
    }
    let r = rref_rows(rows, n + 1, field);
    if r.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![field.zero(); n];
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        if let Some((c, v)) = row.last() {
            if *c == n {
                x[p] = v.clone();
            }
        }
    }
    Some(x)
}

/// Incrementally built subspace of `field^dim` in echelon form.
#[derive(Clone, Debug)]
pub struct Span {
    field: Field,
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new(field: Field, dim: usize) -> Self {
        Span { field, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Remainder of `v` modulo the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&f * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv();
        let r: Vec<Scalar> = r.iter().map(|x| x * &inv).collect();
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op_from_dense(rows: &[&[i64]], f: Field) -> SparseColumns {
        let ncols = rows[0].len();
        let mut op = SparseColumns::new(rows.len());
        for j in 0..ncols {
            op.push(rows.iter().enumerate().filter(|(_, r)| r[j] != 0).map(|(i, r)| (i, f.from_i64(r[j]))).collect());
        }
        op
    }

    #[test]
    fn rank_and_kernel_agree_across_fields() {
        let m: &[&[i64]] = &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]];
        for f in [Field::Rational, Field::Prime(32003)] {
            let op = op_from_dense(m, f);
            assert_eq!(rank(&op, f), 2);
            let k = kernel(&op, f);
            assert_eq!(k.len(), 1);
            assert!(op.apply(&k[0], f).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn characteristic_matters() {
        let m: &[&[i64]] = &[&[1, 1], &[1, 6]];
        assert_eq!(rank(&op_from_dense(m, Field::Prime(5)), Field::Prime(5)), 1);
        assert_eq!(rank(&op_from_dense(m, Field::Rational), Field::Rational), 2);
    }

    #[test]
    fn solve_consistent_and_not() {
        let f = Field::Rational;
        let op = op_from_dense(&[&[1, 1], &[2, 2]], f);
        let x = solve(&op, &[f.from_i64(3), f.from_i64(6)], f).unwrap();
        assert_eq!(op.apply(&x, f), vec![f.from_i64(3), f.from_i64(6)]);
        assert!(solve(&op, &[f.from_i64(3), f.from_i64(5)], f).is_none());
    }

    #[test]
    fn span_membership() {
        let f = Field::Prime(7);
        let mut s = Span::new(f, 3);
        let v = |a: i64, b: i64, c: i64| vec![f.from_i64(a), f.from_i64(b), f.from_i64(c)];
        assert!(s.insert(&v(1, 2, 0)));
        assert!(s.insert(&v(0, 1, 1)));
        assert!(!s.insert(&v(1, 3, 1)));
        assert!(s.contains(&v(2, 5, 1)));
        assert!(!s.contains(&v(0, 0, 1)));
    }
}
