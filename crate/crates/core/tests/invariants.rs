mod common;

use gmf_core::corpus::{corpus_rings, CorpusGenerator};
use gmf_core::functors::{cok, is_contractible};
use gmf_core::groebner::{groebner, kernel, ModuleVector};
use gmf_core::mf::{mf_cone, mf_hom, MfMorphism};
use gmf_core::modules::{dsing_hom, ext_against_a, syzygy_module, ModulePresentation};
use gmf_core::{parse_polynomial, Field, GradedFreeModule, GradedRing};
use proptest::prelude::*;
use rand::Rng;

use common::{dense_kernel_dim, dense_span_dim, random_homogeneous, random_matrix, rng};

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(32003)), Just(Field::Prime(7))]
}

proptest! {
    #[test]
    fn field_axioms(field in fields(), a in -50i64..50, b in -50i64..50, c in -50i64..50) {
        let (a, b, c) = (field.from_i64(a), field.from_i64(b), field.from_i64(c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &field.zero(), a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
        }
    }

    #[test]
    fn printing_then_parsing_is_identity(seed in any::<u64>(), which in 0usize..4, e in 0i64..5) {
        let cr = &corpus_rings()[which];
        let mut g = rng(seed);
        let p = random_homogeneous(&mut g, &cr.ring, e, 0.5);
        let q = random_homogeneous(&mut g, &cr.ring, e + 1, 0.3);
        let sum = &p + &(&q * &q);
        for f in [p, sum] {
            let text = f.to_string_in(&cr.ring);
            prop_assert_eq!(parse_polynomial(&text, &cr.ring).unwrap(), f);
        }
    }

    #[test]
    fn weighted_parse_respects_weights(seed in any::<u64>()) {
        let r = GradedRing::new(vec!["x", "y", "z"], vec![1, 2, 3], Field::Rational).unwrap();
        let mut g = rng(seed);
        let e = g.gen_range(0..7);
        let p = random_homogeneous(&mut g, &r, e, 0.6);
        prop_assert!(p.is_zero() || p.is_homogeneous_of(e));
        prop_assert_eq!(parse_polynomial(&p.to_string_in(&r), &r).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative(seed in any::<u64>(), which in 0usize..4) {
        let cr = &corpus_rings()[which];
        let mut g = rng(seed);
        let d0: Vec<i64> = (0..g.gen_range(1..3)).map(|_| g.gen_range(0..2)).collect();
        let d1: Vec<i64> = (0..g.gen_range(1..3)).map(|_| g.gen_range(0..2)).collect();
        let d2: Vec<i64> = (0..g.gen_range(1..3)).map(|_| g.gen_range(0..2)).collect();
        let d3: Vec<i64> = (0..g.gen_range(1..3)).map(|_| g.gen_range(0..2)).collect();
        let a = random_matrix(&mut g, &cr.ring, &d0, &d1, 1, 0.6);
        let b = random_matrix(&mut g, &cr.ring, &d1, &d2, 1, 0.6);
        let c = random_matrix(&mut g, &cr.ring, &d2, &d3, 0, 0.6);
        let left = c.compose(&b).unwrap().compose(&a).unwrap();
        let right = c.compose(&b.compose(&a).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn kernel_matches_dense_oracle(seed in any::<u64>(), which in 1usize..4) {
        let cr = &corpus_rings()[which];
        let mut g = rng(seed);
        let src: Vec<i64> = (0..g.gen_range(1..4)).map(|_| g.gen_range(0..2)).collect();
        let tgt: Vec<i64> = (0..g.gen_range(1..3)).map(|_| g.gen_range(-1..1)).collect();
        let f = random_matrix(&mut g, &cr.ring, &src, &tgt, 0, 0.5);
        let k = kernel(&f).unwrap();
        prop_assert!(f.compose(&k).unwrap().is_zero());
        for e in 0..=4 {
            prop_assert_eq!(dense_span_dim(&k, e), dense_kernel_dim(&f, e), "degree {}", e);
        }
    }

    #[test]
    fn normal_form_is_idempotent(seed in any::<u64>(), which in 1usize..4) {
        let cr = &corpus_rings()[which];
        let mut g = rng(seed);
        let ambient = GradedFreeModule::new(vec![0, 1]);
        let gens: Vec<ModuleVector> = (0..g.gen_range(1..4))
            .map(|_| {
                let e = g.gen_range(1..3);
                let col = vec![random_homogeneous(&mut g, &cr.ring, e, 0.6), random_homogeneous(&mut g, &cr.ring, e - 1, 0.6)];
                ModuleVector::from_column(&col)
            })
            .collect();
        let gb = groebner(cr.ring.clone(), ambient, &gens).unwrap();
        prop_assert!(gb.is_groebner());
        for v in &gens {
            prop_assert!(gb.normal_form(v).is_zero());
        }
        let e = g.gen_range(2..4);
        let v = ModuleVector::from_column(&[random_homogeneous(&mut g, &cr.ring, e, 0.7), random_homogeneous(&mut g, &cr.ring, e - 1, 0.7)]);
        let r = gb.normal_form(&v);
        prop_assert_eq!(gb.normal_form(&r), r.clone());
        prop_assert!(gb.contains(&v.sub(&r)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn double_shift_is_potential_twist(seed in any::<u64>(), which in 0usize..4) {
        let cr = &corpus_rings()[which];
        let x = CorpusGenerator::new(seed).object(cr);
        let d = x.potential_degree();
        prop_assert_eq!(x.shift().shift(), x.twist(d));
        prop_assert_eq!(x.shift_by(2), x.twist(d));
        prop_assert_eq!(x.twist(3).twist(-3), x.clone());
        prop_assert!(x.shift().validate().valid);
    }

    #[test]
    fn cone_of_identity_is_contractible(seed in any::<u64>(), which in 0usize..4) {
        let cr = &corpus_rings()[which];
        let x = CorpusGenerator::new(seed).object(cr);
        let c = mf_cone(&MfMorphism::identity(&x)).unwrap();
        prop_assert!(c.object.validate().valid);
        prop_assert!(is_contractible(&c.object));
        prop_assert_eq!(c.object.minimize().rank(), 0);
    }

    #[test]
    fn hom_is_twist_invariant(seed in any::<u64>(), which in 0usize..4, q in -2i64..3, p in -2i64..3) {
        let cr = &corpus_rings()[which];
        let mut g = CorpusGenerator::new(seed);
        let (x, y) = (g.object(cr), g.object(cr));
        let base = mf_hom(&x, &y, p, 0).unwrap().dimension;
        prop_assert_eq!(mf_hom(&x.twist(q), &y.twist(q), p, 0).unwrap().dimension, base);
        prop_assert_eq!(mf_hom(&x.minimize(), &y, p, 0).unwrap().dimension, base);
    }

    #[test]
    fn identity_is_a_nonzero_cocycle(seed in any::<u64>(), which in 0usize..4) {
        let cr = &corpus_rings()[which];
        let mut g = CorpusGenerator::new(seed);
        let x = g.object(cr);
        let x = g.with_contractible(&x);
        let id = MfMorphism::identity(&x);
        prop_assert_eq!(id.compose(&id).unwrap(), id.clone());
        prop_assert!(!id.is_null_homotopic());
        let h = mf_hom(&x, &x, 0, 0).unwrap();
        prop_assert!(h.dimension >= 1);
        prop_assert!(h.coordinates(&id).unwrap().iter().any(|c| !c.is_zero()));
    }

    #[test]
    fn translation_lowers_the_shift(seed in any::<u64>(), which in 0usize..4, p in -2i64..3) {
        let cr = &corpus_rings()[which];
        let mut g = CorpusGenerator::new(seed);
        let (x, y) = (g.object(cr), g.object(cr));
        let n = cok(&y).unwrap().module;
        let shifted = dsing_hom(&cok(&x.shift()).unwrap().module, &n, p).unwrap().space.dimension;
        let plain = dsing_hom(&cok(&x).unwrap().module, &n, p - 1).unwrap().space.dimension;
        prop_assert_eq!(shifted, plain);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn syzygy_lowers_ext_index(seed in any::<u64>()) {
        let cr = &corpus_rings()[2];
        let mut g = rng(seed);
        let gens: Vec<i64> = (0..g.gen_range(1..3)).map(|_| g.gen_range(0..2)).collect();
        let rels: Vec<i64> = (0..g.gen_range(1..3)).map(|_| g.gen_range(1..3)).collect();
        let f = random_matrix(&mut g, &cr.ring, &rels, &gens, 0, 0.6);
        let m = ModulePresentation::new(cr.ring.clone(), Some(cr.potential.clone()), f).unwrap();
        let omega = syzygy_module(&m, 1).unwrap();
        let em = ext_against_a(&m, 3, -6, 8).unwrap();
        let eo = ext_against_a(&omega, 2, -6, 8).unwrap();
        for i in 1..=2 {
            prop_assert_eq!(&em[i + 1], &eo[i], "Ext^{}", i + 1);
        }
    }
}
