use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use gmf_core::free::{GradedFreeModule, GradedMatrix};
use gmf_core::mf::MatrixFactorization;
use gmf_core::modules::ModulePresentation;
use gmf_core::{parse_polynomial, Field, GradedRing, Polynomial};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingEntry {
    pub variables: Vec<String>,
    #[serde(default)]
    pub weights: Option<Vec<u32>>,
    #[serde(default = "default_field")]
    pub field: String,
}

fn default_field() -> String {
    "QQ".to_string()
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleEntry {
    pub generator_degrees: Vec<i64>,
    /// Row-major: one row per generator, one column per relation.
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
    #[serde(default = "default_true")]
    pub over_a: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MfEntry {
    #[serde(default)]
    pub p1_source_degrees: Option<Vec<i64>>,
    #[serde(default)]
    pub p0_source_degrees: Option<Vec<i64>>,
    #[serde(default)]
    pub p1: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub p0: Option<Vec<Vec<String>>>,
    /// Pairs `[u, v]` with `W = sum u v`, as an alternative to explicit matrices.
    #[serde(default)]
    pub koszul: Option<Vec<[String; 2]>>,
    #[serde(default)]
    pub twist: i64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub ring: RingEntry,
    #[serde(default)]
    pub potential: Option<String>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleEntry>,
    #[serde(default)]
    pub mfs: BTreeMap<String, MfEntry>,
    #[serde(default)]
    pub seed: Option<u64>,
}

/// A loaded problem. Factorizations are kept even when invalid so that `validate` can report them.
pub struct Problem {
    pub ring: Arc<GradedRing>,
    pub field: Field,
    pub potential: Option<Polynomial>,
    pub modules: BTreeMap<String, ModulePresentation>,
    pub mfs: BTreeMap<String, MatrixFactorization>,
    pub seed: u64,
}

fn input<E: std::fmt::Display>(context: &str) -> impl FnOnce(E) -> CliError + '_ {
    move |e| CliError::Input(format!("{context}: {e}"))
}

fn parse_rows(ring: &GradedRing, rows: &[Vec<String>], what: &str) -> Result<Vec<Vec<Polynomial>>, CliError> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter().enumerate().map(|(j, s)| parse_polynomial(s, ring).map_err(input(&format!("{what} entry ({i}, {j})")))).collect()
        })
        .collect()
}

impl Problem {
    pub fn load(path: &Path) -> Result<Problem, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        let file: ProblemFile = serde_json::from_str(&text).map_err(input("problem file"))?;
        Problem::from_file(file)
    }

    pub fn from_file(file: ProblemFile) -> Result<Problem, CliError> {
        let field: Field = file.ring.field.parse().map_err(input("ring.field"))?;
        let weights = file.ring.weights.clone().unwrap_or_else(|| vec![1; file.ring.variables.len()]);
        let ring = GradedRing::new(file.ring.variables.clone(), weights, field).map_err(input("ring"))?;
        let potential = match &file.potential {
            Some(s) => {
                let w = parse_polynomial(s, &ring).map_err(input("potential"))?;
                gmf_core::modules::gorenstein_parameter(&ring, Some(&w)).map_err(input("potential"))?;
                Some(w)
            }
            None => None,
        };
        let mut modules = BTreeMap::new();
        for (name, m) in &file.modules {
            let ctx = format!("module `{name}`");
            let w = if m.over_a {
                Some(potential.clone().ok_or_else(|| CliError::Input(format!("{ctx} is over A but no potential is given")))?)
            } else {
                None
            };
            let rows = parse_rows(&ring, &m.relations, &ctx)?;
            let r = m.generator_degrees.len();
            if rows.len() != r && !(rows.is_empty() || rows.iter().all(Vec::is_empty)) {
                return Err(CliError::Input(format!("{ctx}: {} relation rows for {r} generators", rows.len())));
            }
            let ncols = rows.first().map_or(0, Vec::len);
            if rows.iter().any(|row| row.len() != ncols) {
                return Err(CliError::Input(format!("{ctx}: relation rows have different lengths")));
            }
            let cols = (0..ncols).map(|j| rows.iter().map(|row| row[j].clone()).collect()).collect();
            let pres = ModulePresentation::from_columns(ring.clone(), w, m.generator_degrees.clone(), cols).map_err(input(&ctx))?;
            modules.insert(name.clone(), pres);
        }
        let mut mfs = BTreeMap::new();
        for (name, x) in &file.mfs {
            let ctx = format!("factorization `{name}`");
            let w = potential.clone().ok_or_else(|| CliError::Input(format!("{ctx} needs a potential")))?;
            let mf = if let Some(pairs) = &x.koszul {
                let parsed = pairs
                    .iter()
                    .map(|[u, v]| Ok((parse_polynomial(u, &ring)?, parse_polynomial(v, &ring)?)))
                    .collect::<gmf_core::Result<Vec<_>>>()
                    .map_err(input(&ctx))?;
                MatrixFactorization::koszul(ring.clone(), w, &parsed).map_err(input(&ctx))?
            } else {
                let missing = || CliError::Input(format!("{ctx}: give either `koszul` or all of p1, p0 and their source degrees"));
                let d1 = x.p1_source_degrees.clone().ok_or_else(missing)?;
                let d0 = x.p0_source_degrees.clone().ok_or_else(missing)?;
                let p1 = parse_rows(&ring, x.p1.as_ref().ok_or_else(missing)?, &format!("{ctx} p1"))?;
                let p0 = parse_rows(&ring, x.p0.as_ref().ok_or_else(missing)?, &format!("{ctx} p0"))?;
                let d = w.degree().expect("checked potential") as i64;
                let big_p1 = GradedFreeModule::new(d1);
                let big_p0 = GradedFreeModule::new(d0);
                let m1 = GradedMatrix::new_unchecked(ring.clone(), big_p1.clone(), big_p0.clone(), 0, p1)
                    .map_err(input(&format!("{ctx} p1")))?;
                let m0 = GradedMatrix::new_unchecked(ring.clone(), big_p0, big_p1, d, p0).map_err(input(&format!("{ctx} p0")))?;
                MatrixFactorization::unchecked(ring.clone(), w, m1, m0).map_err(input(&ctx))?
            };
            mfs.insert(name.clone(), mf.twist(x.twist));
        }
        Ok(Problem { ring, field, potential, modules, mfs, seed: file.seed.unwrap_or(0) })
    }

    pub fn module(&self, name: &str) -> Result<&ModulePresentation, CliError> {
        self.modules.get(name).ok_or_else(|| CliError::Input(format!("unknown module `{name}`")))
    }

    /// A factorization that must be valid for the requested operation.
    pub fn mf(&self, name: &str) -> Result<&MatrixFactorization, CliError> {
        let x = self.mfs.get(name).ok_or_else(|| CliError::Input(format!("unknown factorization `{name}`")))?;
        if !x.validate().valid {
            return Err(CliError::Math(format!("factorization `{name}` is invalid; run `gmf validate` for details")));
        }
        Ok(x)
    }

    pub fn potential(&self) -> Result<&Polynomial, CliError> {
        self.potential.as_ref().ok_or_else(|| CliError::Input("this command needs a potential".into()))
    }
}
