//! Seeded random factorizations over a fixed list of potentials.
//!
//! Objects are Koszul factorizations of known decompositions of each potential,
//! optionally summed with a contractible pair, twisted, and conjugated by random
//! elementary automorphisms so that their matrices are not in normal form.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::free::{GradedFreeModule, GradedMatrix};
use crate::mf::MatrixFactorization;
use crate::parse::parse_polynomial;
use crate::poly::{GradedRing, Polynomial};

/// A ring with a potential and decompositions `W = sum u_i v_i`.
#[derive(Clone, Debug)]
pub struct CorpusRing {
    pub name: &'static str,
    pub ring: Arc<GradedRing>,
    pub potential: Polynomial,
    pub decompositions: Vec<Vec<(Polynomial, Polynomial)>>,
}

fn build(name: &'static str, vars: &[&str], field: Field, w: &str, decs: &[&[(&str, &str)]]) -> CorpusRing {
    let ring = GradedRing::standard(vars.to_vec(), field).expect("corpus ring");
    let p = |s: &str| parse_polynomial(s, &ring).expect("corpus polynomial");
    let decompositions = decs.iter().map(|d| d.iter().map(|(u, v)| (p(u), p(v))).collect()).collect();
    CorpusRing { name, potential: p(w), ring, decompositions }
}

/// The four potentials `x^3`, `xy`, `x^3 + y^3` (over the rationals) and `x^3 + y^3 + z^3` over `F_32003`.
pub fn corpus_rings() -> Vec<CorpusRing> {
    let q = Field::Rational;
    let fp = Field::Prime(32003);
    vec![
        build("x^3", &["x"], q, "x^3", &[&[("x", "x^2")], &[("x^2", "x")]]),
        build("xy", &["x", "y"], q, "x*y", &[&[("x", "y")], &[("y", "x")]]),
        build(
            "x^3+y^3",
            &["x", "y"],
            q,
            "x^3+y^3",
            &[
                &[("x+y", "x^2-x*y+y^2")],
                &[("x^2-x*y+y^2", "x+y")],
                &[("x", "x^2"), ("y", "y^2")],
                &[("x^2", "x"), ("y", "y^2")],
                &[("x", "x^2"), ("y^2", "y")],
            ],
        ),
        build(
            "x^3+y^3+z^3",
            &["x", "y", "z"],
            fp,
            "x^3+y^3+z^3",
            &[
                &[("x", "x^2"), ("y+z", "y^2-y*z+z^2")],
                &[("x^2", "x"), ("y+z", "y^2-y*z+z^2")],
                &[("x", "x^2"), ("y^2-y*z+z^2", "y+z")],
                &[("x", "x^2"), ("y", "y^2"), ("z", "z^2")],
                &[("x^2", "x"), ("y", "y^2"), ("z^2", "z")],
            ],
        ),
    ]
}

/// Generates random factorizations of rank at most `max_rank`.
pub struct CorpusGenerator {
    rng: ChaCha8Rng,
    pub max_rank: usize,
}

impl CorpusGenerator {
    pub fn new(seed: u64) -> Self {
        CorpusGenerator { rng: ChaCha8Rng::seed_from_u64(seed), max_rank: 4 }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn scalar(&mut self, field: Field) -> crate::field::Scalar {
        let v: i64 = self.rng.gen_range(1..=5);
        field.from_i64(if self.rng.gen_bool(0.5) { v } else { -v })
    }

    /// A random Koszul factorization, possibly plus a second one or a contractible pair.
    pub fn koszul(&mut self, cr: &CorpusRing) -> MatrixFactorization {
        let dec = cr.decompositions.choose(&mut self.rng).expect("nonempty").clone();
        let mut x = MatrixFactorization::koszul(cr.ring.clone(), cr.potential.clone(), &dec).expect("corpus decomposition");
        if x.rank() * 2 <= self.max_rank && self.rng.gen_bool(0.25) {
            let dec = cr.decompositions.choose(&mut self.rng).expect("nonempty").clone();
            let y = MatrixFactorization::koszul(cr.ring.clone(), cr.potential.clone(), &dec).expect("corpus decomposition");
            if x.rank() + y.rank() <= self.max_rank {
                let q = self.rng.gen_range(-1..=1);
                x = x.direct_sum(&y.twist(q)).expect("same potential");
            }
        }
        x
    }

    /// Adds a contractible pair `(1, W)` or `(W, 1)` in a random degree.
    pub fn with_contractible(&mut self, x: &MatrixFactorization) -> MatrixFactorization {
        let g = self.rng.gen_range(-1..=1);
        let t = if self.rng.gen_bool(0.5) {
            MatrixFactorization::unit_pair(x.ring().clone(), x.potential().clone(), g)
        } else {
            MatrixFactorization::potential_pair(x.ring().clone(), x.potential().clone(), g)
        };
        x.direct_sum(&t.expect("trivial pair")).expect("same potential")
    }

    /// Random automorphism `I + c m E_ij` of a free module and its inverse.
    fn elementary(&mut self, ring: &Arc<GradedRing>, module: &GradedFreeModule) -> Option<(GradedMatrix, GradedMatrix)> {
        let r = module.rank();
        if r < 2 {
            return None;
        }
        let i = self.rng.gen_range(0..r);
        let mut j = self.rng.gen_range(0..r - 1);
        if j >= i {
            j += 1;
        }
        let e = module.degree(j) - module.degree(i);
        if e < 0 {
            return None;
        }
        let monos = ring.monomials_of_degree(e);
        let m = monos.choose(&mut self.rng)?.clone();
        let c = self.scalar(ring.field());
        let entry = Polynomial::term(m, c);
        let id = GradedMatrix::identity(ring.clone(), module.clone());
        let mut fwd = id.entries().to_vec();
        fwd[i][j] = entry.clone();
        let mut inv = id.entries().to_vec();
        inv[i][j] = -&entry;
        Some((
            GradedMatrix::new(ring.clone(), module.clone(), module.clone(), 0, fwd).expect("elementary automorphism"),
            GradedMatrix::new(ring.clone(), module.clone(), module.clone(), 0, inv).expect("elementary automorphism"),
        ))
    }

    /// Conjugates by a few random elementary automorphisms of `P0` and `P1`.
    pub fn scramble(&mut self, x: &MatrixFactorization, steps: usize) -> MatrixFactorization {
        let ring = x.ring().clone();
        let mut x = x.clone();
        for _ in 0..steps {
            let even = self.elementary(&ring, x.even_module()).unwrap_or_else(|| {
                let id = GradedMatrix::identity(ring.clone(), x.even_module().clone());
                (id.clone(), id)
            });
            let odd = self.elementary(&ring, x.odd_module()).unwrap_or_else(|| {
                let id = GradedMatrix::identity(ring.clone(), x.odd_module().clone());
                (id.clone(), id)
            });
            x = x.conjugate(&even.0, &even.1, &odd.0, &odd.1).expect("conjugation preserves factorizations");
        }
        x
    }

    /// A corpus object: random Koszul sum, twisted by `-1..=1`, scrambled.
    pub fn object(&mut self, cr: &CorpusRing) -> MatrixFactorization {
        let x = self.koszul(cr);
        let q = self.rng.gen_range(-1..=1);
        let steps = self.rng.gen_range(0..=2);
        self.scramble(&x.twist(q), steps)
    }
}

/// `per_ring` seeded pairs of corpus objects for every corpus ring.
pub fn corpus_pairs(seed: u64, per_ring: usize) -> Vec<(CorpusRing, MatrixFactorization, MatrixFactorization)> {
    let mut g = CorpusGenerator::new(seed);
    let mut out = Vec::new();
    for cr in corpus_rings() {
        for _ in 0..per_ring {
            let x = g.object(&cr);
            let y = g.object(&cr);
            out.push((cr.clone(), x, y));
        }
    }
    out
}

/// `per_ring` seeded objects for every corpus ring, each with a contractible summand attached.
pub fn corpus_objects(seed: u64, per_ring: usize) -> Vec<(CorpusRing, MatrixFactorization)> {
    let mut g = CorpusGenerator::new(seed);
    g.max_rank = 3;
    let mut out = Vec::new();
    for cr in corpus_rings() {
        for _ in 0..per_ring {
            let x = g.object(&cr);
            let x = if x.rank() < 4 { g.with_contractible(&x) } else { x };
            out.push((cr.clone(), x));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_valid_and_reproducible() {
        let a = corpus_pairs(11, 3);
        let b = corpus_pairs(11, 3);
        assert_eq!(a.len(), 12);
        for ((_, x, y), (_, x2, y2)) in a.iter().zip(&b) {
            assert!(x.validate().valid && y.validate().valid);
            assert!(x.rank() <= 4 && y.rank() <= 4);
            assert_eq!((x, y), (x2, y2));
        }
        for (_, x) in corpus_objects(5, 2) {
            assert!(x.validate().valid && x.rank() <= 4);
        }
    }
}
