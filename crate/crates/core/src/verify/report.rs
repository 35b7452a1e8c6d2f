use serde::Serialize;

use super::{Stages, VerifyConfig, SCHEMA_VERSION};
use crate::algkit::{IsoWitness, QuiverData, Side};
use crate::error::Error;
use crate::ffield::FiniteField;
use crate::fusion::{CentricClassSummary, FusionSystem};
use crate::matgrp::SylowKind;
use crate::qschur::{ImageData, PrincipalBlock, SchurBuild, SchurSource, SocleData};
use crate::wfca::{Decomposition, WfcaResult};

/// The number of partitions of 2.
pub const PARTITIONS_OF_TWO: usize = 2;

/// Where an expected value comes from.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Stated outright for GL2(q).
    Published,
    /// Follows from an independent computation or a standard formula.
    Derived,
    /// Taken as known input rather than computed.
    External,
}

/// Classifies an assertion by the provenance of its expected value.
pub(crate) fn source_of(stage: &str, name: &str) -> Source {
    match (stage, name) {
        ("centric_classes", _) | ("counts", _) | ("socle_quotient", "witness_found") => Source::Published,
        ("sylow2", _) => Source::Published,
        ("wfca", "semisimple_quotient_k_x_m2" | "corner_radical_squared_zero" | "quiver_arrows") => Source::Derived,
        ("wfca", _) => Source::Published,
        (_, "image_dim" | "basic_dim" | "projective_dims" | "simple_dims") => Source::Derived,
        ("schur_image" | "schur_def", _) => Source::Published,
        ("principal_block", "b0_acts_as_identity") => Source::Published,
        _ => Source::Derived,
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Claim {
    pub stage: String,
    pub name: String,
    pub passed: bool,
    /// Observed and expected values.
    pub detail: String,
    pub source: Source,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    Bound,
    SplittingFailure,
    Invalid,
    Internal,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct StageError {
    pub stage: String,
    pub kind: ErrorKind,
    pub message: String,
}

impl StageError {
    pub(crate) fn new(stage: &str, e: &Error) -> Self {
        StageError { stage: stage.into(), kind: e.into(), message: e.to_string() }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Bound,
}

impl Outcome {
    /// Process exit code: 0 pass, 1 mathematical mismatch, 3 resource bound.
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Bound => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldInfo {
    pub role: String,
    pub characteristic: u32,
    pub degree: u32,
    /// Coefficients of the modulus, low degree first.
    pub modulus: Vec<u32>,
}

impl FieldInfo {
    pub(crate) fn new(role: &str, f: &FiniteField) -> Self {
        FieldInfo {
            role: role.into(),
            characteristic: f.characteristic(),
            degree: f.degree(),
            modulus: f.modulus().to_vec(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SylowInfo {
    pub kind: SylowKind,
    pub m: u32,
    pub order: u64,
    pub center_order: u64,
    /// Named generators as row-major packed entries.
    pub generators: Vec<(String, [u32; 4])>,
    pub relations: Vec<String>,
}

impl SylowInfo {
    pub(crate) fn new(fs: &FusionSystem) -> Self {
        let s = fs.sylow();
        let m = s.m;
        let mut generators = vec![("x".to_string(), s.x.0.map(|e| e.0))];
        if let Some(y) = s.y {
            generators.push(("y".into(), y.0.map(|e| e.0)));
        }
        generators.push(("t".into(), s.t.0.map(|e| e.0)));
        let relations = match s.kind {
            SylowKind::Semidihedral => vec![
                format!("x^{} = 1", 1u64 << (m - 1)),
                "t^2 = 1".into(),
                format!("txt = x^{}", (1u64 << (m - 2)) - 1),
            ],
            SylowKind::Wreath => vec!["xy = yx".into(), "txt = y".into()],
        };
        SylowInfo {
            kind: s.kind,
            m,
            order: s.group.order() as u64,
            center_order: fs.p().center().len() as u64,
            generators,
            relations,
        }
    }
}

/// One row of the centric class table.
#[derive(Clone, Debug, Serialize)]
pub struct CentricRow {
    #[serde(flatten)]
    pub summary: CentricClassSummary,
    /// Blocks of `k Aut_F̄(Q)` as `(dim, defect_zero)`.
    pub blocks: Vec<(usize, bool)>,
    pub in_support: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WfcaReport {
    pub category_dim: usize,
    pub corner_dim: usize,
    pub decomposition: Decomposition,
    pub basic_dim: usize,
    pub quiver: QuiverData,
    pub vertex_objects: Vec<usize>,
}

impl WfcaReport {
    pub(crate) fn new(r: &WfcaResult) -> Self {
        WfcaReport {
            category_dim: r.category_dim,
            corner_dim: r.algebra.dim(),
            decomposition: r.decomposition.clone(),
            basic_dim: r.basic.algebra.dim(),
            quiver: r.quiver.clone(),
            vertex_objects: r.vertex_objects.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SchurReport {
    pub source: SchurSource,
    pub dim: usize,
    pub module_dim: usize,
    pub simple_dims: Vec<usize>,
    pub basic_dim: usize,
    pub quiver: QuiverData,
    pub socle: SocleData,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub image: Option<ImageData>,
}

impl SchurReport {
    pub(crate) fn new(b: &SchurBuild) -> Self {
        SchurReport {
            source: b.source,
            dim: b.algebra.dim(),
            module_dim: b.module.dim(),
            simple_dims: b.simple_dims(),
            basic_dim: b.basic.algebra.dim(),
            quiver: b.basic.quiver.clone(),
            socle: b.socle.clone(),
            image: b.image.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SocleQuotient {
    pub side: Side,
    pub socle_dim: usize,
    pub quotient_dim: usize,
}

/// An algebra isomorphism as its matrix; column `i` is the image of basis element `i`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Witness {
    pub dim: usize,
    pub rows: Vec<Vec<u32>>,
}

impl Witness {
    pub(crate) fn new(w: &IsoWitness) -> Self {
        let m = &w.matrix;
        Witness { dim: m.rows(), rows: (0..m.rows()).map(|i| m.row(i).iter().map(|e| e.0).collect()).collect() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Counts {
    /// Simple modules of the weighted fusion category algebra.
    pub fusion_simples: Option<usize>,
    pub partitions_of_two: usize,
    pub schur_simples: Option<usize>,
    /// Simple modules of the principal block; an external input, not computed.
    pub principal_block_simples: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub q: u64,
    pub q_mod_4: u64,
    pub m: Option<u32>,
    pub seed: u64,
    pub field_policy: String,
    pub coefficient_degree: u32,
    pub stages: Vec<String>,
    pub fields: Vec<FieldInfo>,
    pub sylow: Option<SylowInfo>,
    pub centric_classes: Vec<CentricRow>,
    pub wfca: Option<WfcaReport>,
    pub schur_image: Option<SchurReport>,
    pub schur_hecke: Option<SchurReport>,
    pub cross_witness: Option<Witness>,
    pub principal_block: Option<PrincipalBlock>,
    pub socle_quotients: Vec<SocleQuotient>,
    pub socle_side: Option<Side>,
    pub witness: Option<Witness>,
    pub counts: Option<Counts>,
    pub notes: Vec<String>,
    pub errors: Vec<StageError>,
    pub assertions: Vec<Claim>,
    pub outcome: Outcome,
    /// Wall-clock seconds per stage; left out of JSON so reruns are byte-identical.
    #[serde(skip)]
    pub timings: Vec<(String, f64)>,
    #[serde(skip)]
    pub(crate) stages_full: bool,
}

impl VerificationReport {
    pub(crate) fn empty(q: u64, e: u32, config: &VerifyConfig) -> Self {
        let s = config.stages;
        let stages = [("fusion", s.fusion), ("schur", s.schur), ("hecke", s.hecke)]
            .into_iter()
            .filter(|x| x.1)
            .map(|x| x.0.to_string())
            .collect();
        let mut notes = Vec::new();
        if q % 4 == 1 && s.fusion {
            notes.push(
                "Sylow subgroup checked as C_{2^m} wr C_2 of order 2^(2m+1); a printed exponent of (m-1)/2 would not match"
                    .to_string(),
            );
        }
        if s == Stages::ALL {
            notes.push("principal_block_simples is an external input, not computed".to_string());
        }
        VerificationReport {
            schema: SCHEMA_VERSION,
            q,
            q_mod_4: q % 4,
            m: None,
            seed: config.seed,
            field_policy: config.field_degree.to_string(),
            coefficient_degree: e,
            stages,
            fields: Vec::new(),
            sylow: None,
            centric_classes: Vec::new(),
            wfca: None,
            schur_image: None,
            schur_hecke: None,
            cross_witness: None,
            principal_block: None,
            socle_quotients: Vec::new(),
            socle_side: None,
            witness: None,
            counts: None,
            notes,
            errors: Vec::new(),
            assertions: Vec::new(),
            outcome: Outcome::Fail,
            timings: Vec::new(),
            stages_full: s == Stages::ALL,
        }
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.assertions.iter().filter(|a| !a.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
