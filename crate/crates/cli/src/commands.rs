use gmf_core::functors::{check_full_faithfulness, check_round_trip, cok, stabilize};
use gmf_core::groebner::minimal_resolution;
use gmf_core::mf::{mf_hom, mf_hom_table, MatrixFactorization};
use gmf_core::modules::{
    dsing_hom, ext_against_a, gorenstein_parameter, hilbert_function, is_mcm, stable_hom, truncate_tail, Certification,
};
use gmf_core::sod::{
    check_collection, check_exceptional, dual_collection_factorizations, q_algebra, residue_field_sequence, trichotomy_report,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::problem::Problem;
use crate::render;
use crate::{Command, Common, Format, Objects};

pub struct Output {
    pub text: String,
    pub success: bool,
}

struct Outcome {
    result: Value,
    certification: Value,
    success: bool,
    table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
}

impl Outcome {
    fn new(result: impl Serialize, certification: impl Serialize) -> Self {
        Outcome {
            result: serde_json::to_value(result).expect("serializable result"),
            certification: serde_json::to_value(certification).expect("serializable certification"),
            success: true,
            table: None,
        }
    }

    fn success(mut self, ok: bool) -> Self {
        self.success = ok;
        self
    }

    fn table(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.table = Some((header, rows));
        self
    }
}

fn exact() -> Certification {
    Certification::Exact
}

/// Vanishing outside a shift window, proved by a finite-length Hom module or only observed.
fn vanishing(certified: bool) -> Value {
    json!({ "kind": if certified { "certified_vanishing" } else { "window_only" }, "certified": certified })
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Validate { common }
        | Command::Cok { common, .. }
        | Command::Stabilize { common, .. }
        | Command::Hom { common, .. }
        | Command::HomTable { common, .. }
        | Command::StableHom { common, .. }
        | Command::DsingHom { common, .. }
        | Command::Resolve { common, .. }
        | Command::Hilbert { common, .. }
        | Command::Ext { common, .. }
        | Command::Truncate { common, .. }
        | Command::Exceptional { common, .. }
        | Command::Collection { common, .. }
        | Command::QAlgebra { common, .. }
        | Command::Gorenstein { common }
        | Command::Trichotomy { common, .. }
        | Command::Fullfaith { common, .. }
        | Command::Roundtrip { common, .. } => common,
    }
}

fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Validate { .. } => "validate",
        Command::Cok { .. } => "cok",
        Command::Stabilize { .. } => "stabilize",
        Command::Hom { .. } => "hom",
        Command::HomTable { .. } => "hom-table",
        Command::StableHom { .. } => "stable-hom",
        Command::DsingHom { .. } => "dsing-hom",
        Command::Resolve { .. } => "resolve",
        Command::Hilbert { .. } => "hilbert",
        Command::Ext { .. } => "ext",
        Command::Truncate { .. } => "truncate",
        Command::Exceptional { .. } => "exceptional",
        Command::Collection { .. } => "collection",
        Command::QAlgebra { .. } => "q-algebra",
        Command::Gorenstein { .. } => "gorenstein",
        Command::Trichotomy { .. } => "trichotomy",
        Command::Fullfaith { .. } => "fullfaith",
        Command::Roundtrip { .. } => "roundtrip",
    }
}

pub fn run(cmd: &Command) -> Result<Output, CliError> {
    let c = common(cmd);
    let problem = Problem::load(&c.problem)?;
    let seed = c.seed.unwrap_or(problem.seed);
    let outcome = execute(cmd, &problem, seed)?;
    let text = match c.format {
        Format::Json => {
            let mut doc = match outcome.result {
                Value::Object(m) => m,
                other => {
                    let mut m = serde_json::Map::new();
                    m.insert("result".into(), other);
                    m
                }
            };
            doc.insert("command".into(), json!(name(cmd)));
            doc.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
            doc.insert("field".into(), json!(problem.field.to_string()));
            doc.insert("seed".into(), json!(seed));
            doc.insert("certification".into(), outcome.certification);
            format!("{}\n", serde_json::to_string_pretty(&Value::Object(doc)).expect("json"))
        }
        Format::Csv => {
            let (header, rows) =
                outcome.table.ok_or_else(|| CliError::Input(format!("`{}` has no tabular output; use --format json", name(cmd))))?;
            let mut w = csv::Writer::from_writer(Vec::new());
            let written = w.write_record(&header).and_then(|_| rows.iter().try_for_each(|r| w.write_record(r)));
            written.map_err(|e| CliError::Input(format!("csv: {e}")))?;
            String::from_utf8(w.into_inner().map_err(|e| CliError::Input(format!("csv: {e}")))?).expect("utf-8 csv")
        }
    };
    Ok(Output { text, success: outcome.success })
}

fn objects(problem: &Problem, o: &Objects) -> Result<Vec<MatrixFactorization>, CliError> {
    if o.residue_sequence {
        return Ok(residue_field_sequence(&problem.ring, problem.potential()?)?);
    }
    if o.dual {
        return Ok(dual_collection_factorizations(&problem.ring, problem.potential()?, o.truncation)?);
    }
    if o.mfs.is_empty() {
        return Err(CliError::Input("name the objects with --mfs, or use --residue-sequence or --dual".into()));
    }
    o.mfs.iter().map(|n| problem.mf(n).cloned()).collect()
}

fn hilbert_json(lo: i64, hi: i64, values: &[usize]) -> Value {
    json!({ "lo": lo, "hi": hi, "values": values })
}

fn execute(cmd: &Command, problem: &Problem, seed: u64) -> Result<Outcome, CliError> {
    Ok(match cmd {
        Command::Validate { .. } => {
            let reports: Vec<_> = problem.mfs.iter().map(|(n, x)| (n, x.validate())).collect();
            let valid = reports.iter().all(|(_, r)| r.valid);
            let factorizations: Vec<_> =
                reports.iter().map(|(n, r)| render::ValidationJson { name: n, valid: r.valid, report: r }).collect();
            let modules: Vec<&String> = problem.modules.keys().collect();
            Outcome::new(json!({ "valid": valid, "factorizations": factorizations, "modules": modules }), exact()).success(valid)
        }
        Command::Cok { mf, window, .. } => {
            let r = cok(problem.mf(mf)?)?;
            let h = hilbert_function(&r.module, window.lo, window.hi)?;
            let rows = (window.lo..=window.hi).zip(&h).map(|(e, d)| vec![e.to_string(), d.to_string()]).collect();
            Outcome::new(
                json!({ "module": render::module(&r.module), "hilbert_function": hilbert_json(window.lo, window.hi, &h) }),
                r.certification,
            )
            .table(vec!["degree", "dimension"], rows)
        }
        Command::Stabilize { module, .. } => {
            let s = stabilize(problem.module(module)?)?;
            Outcome::new(
                json!({ "factorization": render::factorization(&s.factorization), "depth": s.depth, "zero_object": s.factorization.rank() == 0 }),
                exact(),
            )
        }
        Command::Hom { source, target, shift, twist, basis, .. } => {
            let h = mf_hom(problem.mf(source)?, problem.mf(target)?, *shift, *twist)?;
            let mut v = json!({ "dimension": h.dimension, "cocycle_dimension": h.cocycle_dimension, "shift": shift, "twist": twist });
            if *basis {
                let b: Vec<Value> = h.basis.iter().map(|f| json!({ "f1": render::matrix(&f.f1), "f0": render::matrix(&f.f0) })).collect();
                v["basis"] = Value::Array(b);
            }
            Outcome::new(v, exact())
        }
        Command::HomTable { source, target, window, no_certify, .. } => {
            let t = mf_hom_table(problem.mf(source)?, problem.mf(target)?, window.lo, window.hi, !no_certify)?;
            let rows = t.cells.iter().map(|c| vec![c.shift.to_string(), c.dimension.to_string()]).collect();
            let mut cert = vanishing(t.certified);
            cert["consistent"] = json!(t.consistent);
            let ok = t.consistent;
            Outcome::new(&t, cert).success(ok).table(vec!["shift", "dimension"], rows)
        }
        Command::StableHom { source, target, .. } => {
            let h = stable_hom(problem.module(source)?, problem.module(target)?)?;
            let warning = (h.certification == Certification::Violated)
                .then_some("source is not maximal Cohen-Macaulay; the quotient is not a singularity-category Hom");
            Outcome::new(json!({ "dimension": h.dimension, "warning": warning }), h.certification)
        }
        Command::DsingHom { source, target, shift, .. } => {
            let h = dsing_hom(problem.module(source)?, problem.module(target)?, *shift)?;
            Outcome::new(
                json!({ "dimension": h.space.dimension, "shift": shift, "source_depth": h.source_depth, "target_depth": h.target_depth }),
                h.space.certification,
            )
        }
        Command::Resolve { module, steps, .. } => {
            let m = problem.module(module)?;
            let res = minimal_resolution(m.relations(), *steps, m.potential())?;
            let ds: Vec<_> = res.iter().map(render::matrix).collect();
            let ranks: Vec<usize> = std::iter::once(m.relations().rows()).chain(res.iter().map(|d| d.cols())).collect();
            Outcome::new(json!({ "differentials": ds, "ranks": ranks }), exact())
        }
        Command::Hilbert { module, window, .. } => {
            let h = hilbert_function(problem.module(module)?, window.lo, window.hi)?;
            let rows = (window.lo..=window.hi).zip(&h).map(|(e, d)| vec![e.to_string(), d.to_string()]).collect();
            Outcome::new(hilbert_json(window.lo, window.hi, &h), exact()).table(vec!["degree", "dimension"], rows)
        }
        Command::Ext { module, i_max, window, .. } => {
            let m = problem.module(module)?;
            let t = ext_against_a(m, *i_max, window.lo, window.hi)?;
            let mut rows = Vec::new();
            for (i, row) in t.iter().enumerate() {
                for (e, d) in (window.lo..=window.hi).zip(row) {
                    rows.push(vec![i.to_string(), e.to_string(), d.to_string()]);
                }
            }
            let vanishing = t[1..].iter().all(|r| r.iter().all(|&d| d == 0));
            let cert =
                if is_mcm(m)? { Certification::Exact } else { Certification::Window { i_max: *i_max, lo: window.lo, hi: window.hi } };
            Outcome::new(json!({ "i_max": i_max, "lo": window.lo, "hi": window.hi, "table": t, "higher_vanishing": vanishing }), cert)
                .table(vec!["i", "degree", "dimension"], rows)
        }
        Command::Truncate { module, degree, .. } => {
            let t = truncate_tail(problem.module(module)?, *degree)?;
            Outcome::new(json!({ "degree": degree, "module": render::module(&t) }), exact())
        }
        Command::Exceptional { mf, window, .. } => {
            let r = check_exceptional(problem.mf(mf)?, window.lo, window.hi)?;
            let cert = vanishing(r.certified);
            let ok = r.exceptional;
            Outcome::new(&r, cert).success(ok)
        }
        Command::Collection { objects: o, strong, window, .. } => {
            let xs = objects(problem, o)?;
            let r = check_collection(&xs, window.lo, window.hi, *strong)?;
            let mut rows = Vec::new();
            for p in &r.pairs {
                for c in &p.table.cells {
                    rows.push(vec![p.source.to_string(), p.target.to_string(), c.shift.to_string(), c.dimension.to_string()]);
                }
            }
            let ok = r.exceptional_collection && r.strong != Some(false);
            let cert = vanishing(r.certified);
            Outcome::new(&r, cert).success(ok).table(vec!["source", "target", "shift", "dimension"], rows)
        }
        Command::QAlgebra { objects: o, .. } => {
            let xs = objects(problem, o)?;
            let q = q_algebra(&xs)?;
            let mut rows = Vec::new();
            for (i, row) in q.dimension_matrix.iter().enumerate() {
                for (j, d) in row.iter().enumerate() {
                    rows.push(vec![i.to_string(), j.to_string(), d.to_string()]);
                }
            }
            Outcome::new(&q, exact()).table(vec!["source", "target", "dimension"], rows)
        }
        Command::Gorenstein { .. } => {
            let a = gorenstein_parameter(&problem.ring, problem.potential.as_ref())?;
            Outcome::new(json!({ "gorenstein_parameter": a }), Certification::Structural)
        }
        Command::Trichotomy { verify, window, .. } => {
            let w = problem.potential()?;
            let r = trichotomy_report(&problem.ring, w)?;
            let mut v = serde_json::to_value(&r).expect("json");
            let mut ok = true;
            if *verify && r.gorenstein_parameter < 0 {
                let xs = residue_field_sequence(&problem.ring, w)?;
                let c = check_collection(&xs, window.lo, window.hi, false)?;
                ok = c.exceptional_collection && c.length == r.exceptional_count;
                v["verification"] = json!({
                    "length": c.length,
                    "exceptional_collection": c.exceptional_collection,
                    "certified": c.certified,
                });
            }
            Outcome::new(v, Certification::Structural).success(ok)
        }
        Command::Fullfaith { source, target, lo, hi, .. } => {
            if lo > hi {
                return Err(CliError::Input(format!("empty shift window [{lo}, {hi}]")));
            }
            let shifts: Vec<i64> = (*lo..=*hi).collect();
            let r = check_full_faithfulness(problem.mf(source)?, problem.mf(target)?, &shifts)?;
            let rows = r
                .cells
                .iter()
                .map(|c| {
                    vec![c.shift.to_string(), c.factorization_dimension.to_string(), c.module_dimension.to_string(), c.agree.to_string()]
                })
                .collect();
            let ok = r.all_agree;
            Outcome::new(&r, exact()).success(ok).table(vec!["shift", "factorization_dimension", "module_dimension", "agree"], rows)
        }
        Command::Roundtrip { mf, .. } => {
            let r = check_round_trip(problem.mf(mf)?, seed)?;
            let ok = r.isomorphic;
            Outcome::new(&r, exact()).success(ok)
        }
    })
}
