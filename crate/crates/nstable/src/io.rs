//! JSON file formats (`"format": "nstab/1"`) for algebras, modules,
//! diagrams, and complexes, plus the builtin algebra registry.
//!
//! Matrices are row-major nested arrays of residues.  Serialization is
//! deterministic: struct field order is fixed and no hash maps are used,
//! so identical inputs produce byte-identical outputs.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{rad2_cycle, Algebra};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::mat::Mat;
use crate::mmor::{MMorObj, MorObj};
use crate::module::{ModMap, Module};
use crate::ncomplex::NComplex;

pub const FORMAT: &str = "nstab/1";

fn check_format(tag: &str) -> Result<()> {
    if tag != FORMAT {
        return Err(Error::Parse(format!("unsupported format tag {tag:?}, expected {FORMAT:?}")));
    }
    Ok(())
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(untagged)]
pub enum IdemSpec {
    /// Index of a basis element that is already a primitive idempotent.
    Index(usize),
    /// Arbitrary coefficient vector.
    Vector(Vec<u64>),
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct AlgebraFile {
    pub format: String,
    pub p: u64,
    pub dim: usize,
    pub basis: Vec<String>,
    /// `mult[i][j]` is the coefficient vector of `b_i · b_j`.
    pub mult: Vec<Vec<Vec<u64>>>,
    pub unit: Vec<u64>,
    pub idempotents: Vec<IdemSpec>,
    pub radical: Vec<IdemSpec>,
}

impl AlgebraFile {
    pub fn to_algebra(&self) -> Result<Arc<Algebra>> {
        check_format(&self.format)?;
        let field = FieldSpec::new(self.p)?;
        if self.basis.len() != self.dim {
            return Err(Error::Parse("basis length does not match dim".into()));
        }
        let expand = |s: &IdemSpec| -> Result<Vec<u64>> {
            match s {
                IdemSpec::Index(i) => {
                    if *i >= self.dim {
                        return Err(Error::Parse(format!("basis index {i} out of range")));
                    }
                    let mut v = vec![0u64; self.dim];
                    v[*i] = 1;
                    Ok(v)
                }
                IdemSpec::Vector(v) => {
                    if v.len() != self.dim {
                        return Err(Error::Parse("coefficient vector length mismatch".into()));
                    }
                    Ok(v.clone())
                }
            }
        };
        let idempotents: Result<Vec<Vec<u64>>> = self.idempotents.iter().map(expand).collect();
        let radical: Result<Vec<Vec<u64>>> = self.radical.iter().map(expand).collect();
        Algebra::new(field, self.basis.clone(), self.mult.clone(), self.unit.clone(), idempotents?, radical?)
    }

    pub fn from_algebra(a: &Algebra) -> AlgebraFile {
        AlgebraFile {
            format: FORMAT.into(),
            p: a.field().p(),
            dim: a.dim(),
            basis: a.labels().to_vec(),
            mult: a.mult_table().clone(),
            unit: a.unit().to_vec(),
            idempotents: a.idempotents().iter().map(|v| IdemSpec::Vector(v.clone())).collect(),
            radical: a.radical_basis().iter().map(|v| IdemSpec::Vector(v.clone())).collect(),
        }
    }
}

/// Resolves `builtin:<name>` or a file path into an algebra.
/// The builtin `rad2-cycle` is the worked-example algebra.
pub fn load_algebra(spec: &str, base: Option<&Path>, p: u64) -> Result<Arc<Algebra>> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return match name {
            "rad2-cycle" => Ok(rad2_cycle(FieldSpec::new(p)?)),
            other => Err(Error::Parse(format!("unknown builtin algebra {other:?}"))),
        };
    }
    let path = resolve(spec, base);
    let text = std::fs::read_to_string(&path)?;
    let file: AlgebraFile =
        serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_algebra()
}

fn resolve(spec: &str, base: Option<&Path>) -> std::path::PathBuf {
    let p = Path::new(spec);
    match base {
        Some(dir) if !p.is_absolute() => dir.join(p),
        _ => p.to_path_buf(),
    }
}

fn mat_to_rows(m: &Mat) -> Vec<Vec<u64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn rows_to_mat(field: FieldSpec, rows: &[Vec<u64>], expect_cols: usize) -> Result<Mat> {
    if rows.is_empty() {
        return Ok(Mat::zeros(field, 0, expect_cols));
    }
    Mat::from_rows(field, rows)
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ModuleFile {
    pub format: String,
    pub algebra: String,
    pub dim: usize,
    /// One `dim × dim` matrix per algebra basis element.
    pub action: Vec<Vec<Vec<u64>>>,
}

impl ModuleFile {
    pub fn to_module(&self, base: Option<&Path>, p: u64) -> Result<(Arc<Algebra>, Module)> {
        check_format(&self.format)?;
        let alg = load_algebra(&self.algebra, base, p)?;
        let m = self.to_module_over(&alg)?;
        Ok((alg, m))
    }

    pub fn to_module_over(&self, alg: &Arc<Algebra>) -> Result<Module> {
        let f = alg.field();
        if self.action.len() != alg.dim() {
            return Err(Error::Parse(format!(
                "module has {} action matrices, algebra dim is {}",
                self.action.len(),
                alg.dim()
            )));
        }
        let mut mats = Vec::new();
        for rows in &self.action {
            if rows.len() != self.dim {
                return Err(Error::Parse("action matrix row count != dim".into()));
            }
            mats.push(rows_to_mat(f, rows, self.dim)?);
        }
        Module::new(alg.clone(), mats)
    }

    pub fn from_module(m: &Module, algebra_ref: &str) -> ModuleFile {
        ModuleFile {
            format: FORMAT.into(),
            algebra: algebra_ref.into(),
            dim: m.dim(),
            action: m.actions().iter().map(mat_to_rows).collect(),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ModuleSpec {
    pub dim: usize,
    pub action: Vec<Vec<Vec<u64>>>,
}

impl ModuleSpec {
    pub fn to_module(&self, alg: &Arc<Algebra>) -> Result<Module> {
        let f = alg.field();
        if self.action.len() != alg.dim() {
            return Err(Error::Parse("one action matrix per basis element required".into()));
        }
        let mut mats = Vec::new();
        for rows in &self.action {
            if rows.len() != self.dim {
                return Err(Error::Parse("action matrix row count != dim".into()));
            }
            mats.push(rows_to_mat(f, rows, self.dim)?);
        }
        Module::new(alg.clone(), mats)
    }

    pub fn from_module(m: &Module) -> ModuleSpec {
        ModuleSpec { dim: m.dim(), action: m.actions().iter().map(mat_to_rows).collect() }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct DiagramFile {
    pub format: String,
    pub algebra: String,
    /// Number of maps; the diagram has `k + 1` objects.
    pub k: usize,
    pub objects: Vec<ModuleSpec>,
    /// `maps[i]` is the `dim X_i × dim X_{i+1}` matrix of the i-th map.
    pub maps: Vec<Vec<Vec<u64>>>,
}

impl DiagramFile {
    pub fn to_diagram(&self, base: Option<&Path>, p: u64) -> Result<(Arc<Algebra>, MorObj)> {
        check_format(&self.format)?;
        let alg = load_algebra(&self.algebra, base, p)?;
        if self.objects.len() != self.k + 1 {
            return Err(Error::Parse(format!(
                "diagram with k = {} needs {} objects, got {}",
                self.k,
                self.k + 1,
                self.objects.len()
            )));
        }
        let objects: Result<Vec<Module>> =
            self.objects.iter().map(|s| s.to_module(&alg)).collect();
        let objects = objects?;
        let f = alg.field();
        let mut maps = Vec::new();
        for (i, rows) in self.maps.iter().enumerate() {
            let mat = rows_to_mat(f, rows, objects[i + 1].dim())?;
            maps.push(ModMap::new(objects[i].clone(), objects[i + 1].clone(), mat)?);
        }
        Ok((alg.clone(), MorObj::new(alg, objects, maps)?))
    }

    pub fn from_diagram(x: &MorObj, algebra_ref: &str) -> DiagramFile {
        DiagramFile {
            format: FORMAT.into(),
            algebra: algebra_ref.into(),
            k: x.len() - 1,
            objects: x.objects().iter().map(ModuleSpec::from_module).collect(),
            maps: x.maps().iter().map(|m| mat_to_rows(m.mat())).collect(),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ComplexFile {
    pub format: String,
    pub algebra: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub lo: i64,
    pub hi: i64,
    pub terms: Vec<ModuleSpec>,
    pub diffs: Vec<Vec<Vec<u64>>>,
}

impl ComplexFile {
    pub fn to_complex(&self, base: Option<&Path>, p: u64) -> Result<(Arc<Algebra>, NComplex)> {
        check_format(&self.format)?;
        let alg = load_algebra(&self.algebra, base, p)?;
        let expected = (self.hi - self.lo + 1).max(0) as usize;
        if self.terms.len() != expected {
            return Err(Error::Parse(format!(
                "complex on [{},{}] needs {} terms, got {}",
                self.lo,
                self.hi,
                expected,
                self.terms.len()
            )));
        }
        let terms: Result<Vec<Module>> = self.terms.iter().map(|s| s.to_module(&alg)).collect();
        let terms = terms?;
        let f = alg.field();
        let mut diffs = Vec::new();
        for (i, rows) in self.diffs.iter().enumerate() {
            let mat = rows_to_mat(f, rows, terms[i + 1].dim())?;
            diffs.push(ModMap::new(terms[i].clone(), terms[i + 1].clone(), mat)?);
        }
        let c = NComplex::new(alg.clone(), self.n, self.lo, terms, diffs)?;
        Ok((alg, c))
    }

    pub fn from_complex(x: &NComplex, algebra_ref: &str) -> ComplexFile {
        let (lo, hi) = x.support().unwrap_or((0, -1));
        let mut terms = Vec::new();
        let mut diffs = Vec::new();
        if lo <= hi {
            for i in lo..=hi {
                terms.push(ModuleSpec::from_module(&x.term(i)));
            }
            for i in lo..hi {
                diffs.push(mat_to_rows(x.diff(i).mat()));
            }
        }
        ComplexFile {
            format: FORMAT.into(),
            algebra: algebra_ref.into(),
            n: x.order(),
            lo,
            hi,
            terms,
            diffs,
        }
    }
}

/// Serializable homology report.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct HomologyReportFile {
    pub format: String,
    #[serde(rename = "N")]
    pub n_order: usize,
    pub slots: Vec<HomologySlotFile>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct HomologySlotFile {
    pub n: i64,
    pub r: usize,
    pub z_dim: usize,
    pub b_dim: usize,
    pub h_dim: usize,
    pub cycle_basis: Vec<Vec<u64>>,
    pub boundary_basis: Vec<Vec<u64>>,
}

pub fn homology_report_file(x: &NComplex) -> Result<HomologyReportFile> {
    let slots = crate::ncomplex::homology_report(x)?;
    Ok(HomologyReportFile {
        format: FORMAT.into(),
        n_order: x.order(),
        slots: slots
            .into_iter()
            .map(|s| HomologySlotFile {
                n: s.n,
                r: s.r,
                z_dim: s.z_dim,
                b_dim: s.b_dim,
                h_dim: s.h_dim,
                cycle_basis: (0..s.cycles.rows()).map(|i| s.cycles.row(i).to_vec()).collect(),
                boundary_basis: (0..s.boundaries.rows())
                    .map(|i| s.boundaries.row(i).to_vec())
                    .collect(),
            })
            .collect(),
    })
}

/// Parses a diagram file and additionally checks the monomorphism property.
pub fn to_mmor(x: MorObj) -> Result<MMorObj> {
    MMorObj::new(x)
}
