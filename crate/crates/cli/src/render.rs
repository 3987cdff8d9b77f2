use gmf_core::free::GradedMatrix;
use gmf_core::mf::{MatrixFactorization, MfReport};
use gmf_core::modules::ModulePresentation;
use serde::Serialize;

#[derive(Serialize)]
pub struct MatrixJson {
    pub source_degrees: Vec<i64>,
    pub target_degrees: Vec<i64>,
    pub degree: i64,
    pub entries: Vec<Vec<String>>,
}

pub fn matrix(m: &GradedMatrix) -> MatrixJson {
    MatrixJson {
        source_degrees: m.source().degrees().to_vec(),
        target_degrees: m.target().degrees().to_vec(),
        degree: m.degree(),
        entries: m.display(),
    }
}

#[derive(Serialize)]
pub struct ModuleJson {
    pub generator_degrees: Vec<i64>,
    pub relations: Vec<Vec<String>>,
    pub over_a: bool,
}

pub fn module(m: &ModulePresentation) -> ModuleJson {
    ModuleJson { generator_degrees: m.generators().degrees().to_vec(), relations: m.relations().display(), over_a: m.is_over_a() }
}

#[derive(Serialize)]
pub struct MfJson {
    pub rank: usize,
    pub p1_source_degrees: Vec<i64>,
    pub p0_source_degrees: Vec<i64>,
    pub p1: Vec<Vec<String>>,
    pub p0: Vec<Vec<String>>,
}

pub fn factorization(x: &MatrixFactorization) -> MfJson {
    MfJson {
        rank: x.rank(),
        p1_source_degrees: x.odd_module().degrees().to_vec(),
        p0_source_degrees: x.even_module().degrees().to_vec(),
        p1: x.p1().display(),
        p0: x.p0().display(),
    }
}

#[derive(Serialize)]
pub struct ValidationJson<'a> {
    pub name: &'a str,
    pub valid: bool,
    pub report: &'a MfReport,
}
