//! Acceptance suite: one pass/fail line per criterion, each timed against a 60 s budget.

#[path = "../../core/tests/common/mod.rs"]
mod common;
mod support;

use std::sync::Arc;
use std::time::{Duration, Instant};

use gmf_core::corpus::{corpus_objects, corpus_pairs, corpus_rings, CorpusGenerator};
use gmf_core::functors::{check_acyclic_tensor, check_full_faithfulness, check_round_trip, cok, is_contractible, stabilize};
use gmf_core::groebner::{groebner, kernel, ModuleVector};
use gmf_core::mf::{mf_cone, mf_hom, MatrixFactorization, MfMorphism};
use gmf_core::modules::{dsing_hom, ext_against_a, gorenstein_parameter, hilbert_function, is_mcm, syzygy_module, ModulePresentation};
use gmf_core::sod::{
    check_collection, check_exceptional, dual_collection_factorizations, q_algebra, residue_field_sequence, trichotomy_report, Regime,
};
use gmf_core::{parse_polynomial, Field, GradedFreeModule, GradedMatrix, GradedRing, Polynomial};
use rand::Rng;
use rayon::prelude::*;

const BUDGET: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ring(vars: &[&str], field: Field) -> Arc<GradedRing> {
    GradedRing::standard(vars.to_vec(), field).unwrap()
}

fn truncated_line(n: usize) -> (Arc<GradedRing>, Polynomial) {
    let r = ring(&["x"], Field::Rational);
    let w = parse_polynomial(&format!("x^{}", n + 1), &r).unwrap();
    (r, w)
}

fn criterion_1() -> Outcome {
    for n in 1..=4usize {
        let (r, w) = truncated_line(n);
        let objects = dual_collection_factorizations(&r, &w, None).map_err(|e| e.to_string())?;
        ensure(objects.len() == n, || format!("n = {n}: length {}", objects.len()))?;
        let c = check_collection(&objects, -6, 6, true).map_err(|e| e.to_string())?;
        ensure(c.exceptional_collection && c.certified && c.strong == Some(true), || {
            format!("n = {n}: not a certified strong exceptional collection")
        })?;
        let q = q_algebra(&objects).map_err(|e| e.to_string())?;
        let paths: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| usize::from(i <= j)).collect()).collect();
        ensure(q.dimension_matrix == paths, || format!("n = {n}: Hom matrix {:?}", q.dimension_matrix))?;
        ensure(q.total_dimension == n * (n + 1) / 2, || format!("n = {n}: dim Q = {}", q.total_dimension))?;
        ensure(q.compositions.iter().all(|b| b.table[0][0][0] != "0"), || format!("n = {n}: a composite of paths vanishes"))?;
    }
    Ok("n = 1..4: strong, upper-triangular all-ones, dim Q = 1, 3, 6, 10".into())
}

fn criterion_2() -> Outcome {
    let pairs = corpus_pairs(2024, 6);
    let shifts: Vec<i64> = (-4..=4).collect();
    let reports: Vec<_> =
        pairs.par_iter().map(|(_, x, y)| check_full_faithfulness(x, y, &shifts)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let cells: usize = reports.iter().map(|r| r.cells.len()).sum();
    let agree: usize = reports.iter().map(|r| r.cells.iter().filter(|c| c.agree).count()).sum();
    ensure(agree == cells, || format!("{agree}/{cells} cells agree"))?;
    Ok(format!("{} pairs, {cells}/{cells} cells agree", pairs.len()))
}

fn module_inputs() -> Vec<(String, ModulePresentation)> {
    let mut out = Vec::new();
    for n in 1..=4usize {
        let (r, w) = truncated_line(n);
        let k = ModulePresentation::residue_field(r.clone(), Some(w.clone())).unwrap();
        out.push((format!("k over x^{}", n + 1), k));
        if n >= 2 {
            let q = ModulePresentation::cyclic(r.clone(), Some(w.clone()), vec![parse_polynomial("x^2", &r).unwrap()]).unwrap();
            out.push((format!("Omega(A/x^2) over x^{}", n + 1), syzygy_module(&q, 1).unwrap()));
            out.push((format!("A/x^2 over x^{}", n + 1), q));
        }
    }
    let r = ring(&["x", "y"], Field::Rational);
    let w = parse_polynomial("x^3+y^3", &r).unwrap();
    let k = ModulePresentation::residue_field(r.clone(), Some(w.clone())).unwrap();
    for s in 1..=2 {
        out.push((format!("Omega^{s} k over x^3+y^3"), syzygy_module(&k, s).unwrap()));
    }
    out.push(("k over x^3+y^3".into(), k));
    let line = ModulePresentation::cyclic(r.clone(), Some(w), vec![parse_polynomial("x+y", &r).unwrap()]).unwrap();
    out.push(("A/(x+y) over x^3+y^3".into(), line));
    out
}

fn criterion_3() -> Outcome {
    let objects = corpus_objects(77, 5);
    let failures: Vec<String> = objects
        .par_iter()
        .enumerate()
        .filter_map(|(i, (cr, x))| match check_round_trip(x, 1000 + i as u64) {
            Ok(r) if r.isomorphic => None,
            Ok(_) => Some(format!("object {i} over {}: no isomorphism found", cr.name)),
            Err(e) => Some(format!("object {i} over {}: {e}", cr.name)),
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;

    let inputs = module_inputs();
    let mut compared_hilbert = 0;
    for (name, m) in &inputs {
        // cok(stabilize M) is the syzygy at the reported depth, i.e. M shifted by -depth
        let s = stabilize(m).map_err(|e| e.to_string())?;
        let back = cok(&s.factorization.shift_by(s.depth as i64)).map_err(|e| e.to_string())?.module;
        if is_mcm(m).map_err(|e| e.to_string())? {
            ensure(s.depth == 0, || format!("{name}: MCM input needed depth {}", s.depth))?;
            let (h, hb) = (hilbert_function(m, -4, 20).unwrap(), hilbert_function(&back, -4, 20).unwrap());
            ensure(h == hb, || format!("{name}: Hilbert {h:?} vs {hb:?}"))?;
            compared_hilbert += 1;
        }
        let k = ModulePresentation::residue_field(m.ring().clone(), m.potential().cloned()).unwrap();
        for p in -4..=4 {
            for t in [m, &k] {
                let d1 = dsing_hom(m, t, p).map_err(|e| e.to_string())?.space.dimension;
                let d2 = dsing_hom(&back, t, p).map_err(|e| e.to_string())?.space.dimension;
                ensure(d1 == d2, || format!("{name}: stable Hom at shift {p}: {d1} vs {d2}"))?;
            }
        }
    }
    Ok(format!(
        "{} corpus objects round-trip; {} module inputs agree ({} MCM with equal Hilbert functions)",
        objects.len(),
        inputs.len(),
        compared_hilbert
    ))
}

/// Two broken variants: `p0` replaced by zero, and the first nonzero entry of `p1` removed.
fn corrupt(x: &MatrixFactorization) -> Vec<MatrixFactorization> {
    let ring = x.ring();
    let zero_p0 = x.p0().map_entries(|_| Polynomial::zero());
    let mut dropped = x.p1().entries().to_vec();
    if let Some(entry) = dropped.iter_mut().flatten().find(|p| !p.is_zero()) {
        *entry = Polynomial::zero();
    }
    let dropped = GradedMatrix::new(ring.clone(), x.odd_module().clone(), x.even_module().clone(), 0, dropped).unwrap();
    [(x.p1().clone(), zero_p0), (dropped, x.p0().clone())]
        .into_iter()
        .map(|(p1, p0)| MatrixFactorization::unchecked(ring.clone(), x.potential().clone(), p1, p0).unwrap())
        .collect()
}

fn criterion_4() -> Outcome {
    let objects = corpus_objects(404, 5);
    let failures: Vec<String> = objects
        .par_iter()
        .enumerate()
        .filter_map(|(i, (cr, x))| {
            let run = || -> Result<(), String> {
                let m = cok(x).map_err(|e| e.to_string())?.module;
                let t = ext_against_a(&m, 4, -8, 20).map_err(|e| e.to_string())?;
                ensure(t[1..].iter().all(|row| row.iter().all(|&v| v == 0)), || "Ext^i(cok X, A) != 0 for some i in 1..4".into())?;
                let a = check_acyclic_tensor(x, 0, 20).map_err(|e| e.to_string())?;
                ensure(a.exact, || format!("X ⊗ A not exact: {} failures", a.failures.len()))
            };
            run().err().map(|e| format!("object {i} over {}: {e}", cr.name))
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    let mut controls = 0;
    for (_, x) in objects.iter().take(8) {
        for bad in corrupt(x) {
            ensure(!bad.validate().valid, || "corrupted pair validates".into())?;
            let a = check_acyclic_tensor(&bad, 0, 20).map_err(|e| e.to_string())?;
            ensure(!a.exact, || "corrupted pair passes the acyclicity check".into())?;
            controls += 1;
        }
    }
    Ok(format!("{} corpus objects certified; {controls} corrupted controls rejected", objects.len()))
}

fn criterion_5() -> Outcome {
    for n in 1..=4usize {
        let (r, w) = truncated_line(n);
        let seq = residue_field_sequence(&r, &w).map_err(|e| e.to_string())?;
        ensure(seq.len() == n, || format!("n = {n}: length {}", seq.len()))?;
        let c = check_collection(&seq, -6, 6, false).map_err(|e| e.to_string())?;
        ensure(c.exceptional_collection && c.certified, || format!("n = {n}: residue sequence is not a certified exceptional collection"))?;
    }
    let r = ring(&["x", "y"], Field::Rational);
    let w = parse_polynomial("x^3+y^3", &r).unwrap();
    let k = ModulePresentation::residue_field(r.clone(), Some(w)).unwrap();
    let e = stabilize(&k).map_err(|e| e.to_string())?.factorization;
    let rep = check_exceptional(&e, -6, 6).map_err(|e| e.to_string())?;
    ensure(rep.exceptional && rep.certified, || "stabilize(k) over x^3+y^3 is not certified exceptional".into())?;
    Ok("n = 1..4 certified; stabilize(k) over x^3+y^3 certified exceptional".into())
}

fn criterion_6() -> Outcome {
    for n in 1..=4usize {
        let (r, w) = truncated_line(n);
        let a = gorenstein_parameter(&r, Some(&w)).map_err(|e| e.to_string())?;
        ensure(a == -(n as i64), || format!("n = {n}: a = {a}"))?;
        let k = ModulePresentation::residue_field(r.clone(), Some(w)).unwrap();
        let hom = &ext_against_a(&k, 0, -10, 10).map_err(|e| e.to_string())?[0];
        let support: Vec<i64> = (-10..=10).zip(hom).filter(|(_, &v)| v > 0).map(|(e, _)| e).collect();
        ensure(support == vec![-a], || format!("n = {n}: Hom(k, A) supported in {support:?}, a = {a}"))?;
    }
    let names = ["x", "y", "z", "w"];
    for (nvars, regime) in [(3, Regime::CalabiYau), (2, Regime::GeneralType), (4, Regime::Fano)] {
        let r = ring(&names[..nvars], Field::Prime(32003));
        let w = names[..nvars].iter().map(|v| format!("{v}^3")).collect::<Vec<_>>().join("+");
        let t = trichotomy_report(&r, &parse_polynomial(&w, &r).unwrap()).map_err(|e| e.to_string())?;
        ensure(t.regime == regime, || format!("(N, d) = ({nvars}, 3): {:?}", t.regime))?;
    }
    Ok("a = -n matches Hom(k, A) position for n = 1..4; (3,3), (2,3), (4,3) classified".into())
}

fn structural_case(i: u64) -> Result<(), String> {
    let rings = corpus_rings();
    let cr = &rings[(i % 4) as usize];
    let mut g = CorpusGenerator::new(10_000 + i);
    let x = g.object(cr);
    let y = g.object(cr);
    let d = x.potential_degree();
    ensure(x.shift().shift() == x.twist(d), || "X[1][1] != X(d)".into())?;
    let cone = mf_cone(&MfMorphism::identity(&x)).map_err(|e| e.to_string())?;
    ensure(is_contractible(&cone.object), || "cone(id) is not contractible".into())?;
    let p = (i % 5) as i64 - 2;
    let q = (i % 3) as i64 - 1;
    let h = mf_hom(&x, &y, p, 0).map_err(|e| e.to_string())?.dimension;
    let ht = mf_hom(&x.twist(q), &y.twist(q), p, 0).map_err(|e| e.to_string())?.dimension;
    ensure(h == ht, || format!("Hom dimension {h} changes to {ht} under twist {q}"))?;

    let rng = g.rng();
    let ambient = GradedFreeModule::new(vec![0, 1]);
    let gens: Vec<ModuleVector> = (0..rng.gen_range(1..4))
        .map(|_| {
            let e = rng.gen_range(1..3);
            let c0 = common::random_homogeneous(rng, &cr.ring, e, 0.6);
            let c1 = common::random_homogeneous(rng, &cr.ring, e - 1, 0.6);
            ModuleVector::from_column(&[c0, c1])
        })
        .collect();
    let gb = groebner(cr.ring.clone(), ambient, &gens).map_err(|e| e.to_string())?;
    let v =
        ModuleVector::from_column(&[common::random_homogeneous(rng, &cr.ring, 3, 0.7), common::random_homogeneous(rng, &cr.ring, 2, 0.7)]);
    let r = gb.normal_form(&v);
    ensure(gb.normal_form(&r) == r, || "normal form is not idempotent".into())?;

    let src: Vec<i64> = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(0..2)).collect();
    let tgt: Vec<i64> = (0..rng.gen_range(1..3)).map(|_| rng.gen_range(-1..1)).collect();
    let f = common::random_matrix(rng, &cr.ring, &src, &tgt, 0, 0.5);
    let k = kernel(&f).map_err(|e| e.to_string())?;
    for e in 0..=4 {
        let (got, want) = (common::dense_span_dim(&k, e), common::dense_kernel_dim(&f, e));
        ensure(got == want, || format!("kernel misses degree {e}: {got} vs {want}"))?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let failures: Vec<String> =
        (0..1000u64).into_par_iter().filter_map(|i| structural_case(i).err().map(|e| format!("case {i}: {e}"))).collect();
    ensure(failures.is_empty(), || failures.join("; "))?;

    let mut commands = std::collections::BTreeSet::new();
    for (command, args, code) in support::invocations() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let run = support::gmf(&args);
        ensure(run.code == code, || format!("{args:?}: exit {} (expected {code})", run.code))?;
        let v = support::violations(command, &run.json());
        ensure(v.is_empty(), || format!("{args:?}: {}", v.join("; ")))?;
        commands.insert(command);
    }
    ensure(commands.len() == 18, || format!("only {} subcommands exercised", commands.len()))?;
    for entry in std::fs::read_dir(support::root().join("docs/problems")).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let v = support::violations("problem", &serde_json::from_str(&text).unwrap());
        ensure(v.is_empty(), || v.join("; "))?;
    }
    Ok("1000 seeded cases hold; 18 subcommands match exit codes and schemas".into())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("A_n quiver reproduction", criterion_1),
        ("full faithfulness of the cokernel functor", criterion_2),
        ("equivalence round trip", criterion_3),
        ("Ext vanishing and acyclicity certificates", criterion_4),
        ("residue-field exceptional sequences", criterion_5),
        ("Gorenstein parameter consistency", criterion_6),
        ("structural invariant suite", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed <= BUDGET => Ok(msg),
            Ok(msg) => Err(format!("{msg}; exceeded the {} s budget", BUDGET.as_secs())),
            Err(e) => Err(e),
        };
        match outcome {
            Ok(msg) => println!("criterion {} ({name}): PASS in {:.2} s: {msg}", i + 1, elapsed.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL in {:.2} s: {msg}", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
