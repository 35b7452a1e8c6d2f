//! The end-to-end comparison for one `q`: fusion side, Schur side, and the isomorphism
//! between the basic weighted algebra and the Schur basic algebra modulo its socle.

mod report;
mod text;

use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use report::*;
pub use text::render_text;

use crate::algkit::{iso_search, socle_quotient, Side};
use crate::check::CheckResult;
use crate::error::{Error, Result};
use crate::ffield::{make_field, FiniteField, MAX_FIELD_ORDER};
use crate::fusion::{FusionSystem, OrbitCategory};
use crate::matgrp::{check_q, Gl2, SylowKind, DEFAULT_Q_BOUND};
use crate::qschur::{check_expected_schur, principal_block, schur_def, schur_image, SchurBuild};
use crate::wfca::{build_wfca_from, check_expected_fusion, WfcaResult};

pub const SCHEMA_VERSION: u32 = 1;

/// The default set of `q` covered by `--all`.
pub const DEFAULT_Q_SET: [u64; 6] = [3, 5, 7, 9, 11, 13];

/// Largest coefficient-field degree tried by the automatic policy.
pub const MAX_AUTO_DEGREE: u32 = 16;

/// How the coefficient field `GF(2^e)` is chosen.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FieldPolicy {
    /// Start at `e = 1` and double whenever some algebra fails to split.
    Auto,
    Fixed(u32),
}

impl std::str::FromStr for FieldPolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "auto" {
            return Ok(FieldPolicy::Auto);
        }
        match s.parse::<u32>() {
            Ok(e) if e >= 1 => Ok(FieldPolicy::Fixed(e)),
            _ => Err(format!("expected `auto` or a positive degree, got `{s}`")),
        }
    }
}

impl std::fmt::Display for FieldPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldPolicy::Auto => write!(f, "auto"),
            FieldPolicy::Fixed(e) => write!(f, "{e}"),
        }
    }
}

/// Which parts of the pipeline to run.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Stages {
    pub fusion: bool,
    pub schur: bool,
    pub hecke: bool,
}

impl Stages {
    pub const ALL: Stages = Stages { fusion: true, schur: true, hecke: true };
    pub const FUSION: Stages = Stages { fusion: true, schur: false, hecke: false };
    pub const SCHUR: Stages = Stages { fusion: false, schur: true, hecke: false };
    pub const HECKE: Stages = Stages { fusion: false, schur: false, hecke: true };

    fn is_full(&self) -> bool {
        *self == Stages::ALL
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub field_degree: FieldPolicy,
    pub seed: u64,
    /// Largest accepted `q`.
    pub q_bound: u64,
    pub stages: Stages,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { field_degree: FieldPolicy::Auto, seed: 0, q_bound: DEFAULT_Q_BOUND, stages: Stages::ALL }
    }
}

/// Runs the full comparison for one `q`.
pub fn run_verify(q: u64, config: &VerifyConfig) -> Result<VerificationReport> {
    check_q(q, config.q_bound)?;
    match config.field_degree {
        FieldPolicy::Fixed(e) => Ok(run_with_degree(q, e, config)),
        FieldPolicy::Auto => {
            let mut e = 1;
            loop {
                let report = run_with_degree(q, e, config);
                let split_failed = report.errors.iter().any(|s| s.kind == ErrorKind::SplittingFailure);
                if !split_failed || e * 2 > MAX_AUTO_DEGREE || 1u64 << (e * 2) > MAX_FIELD_ORDER {
                    return Ok(report);
                }
                e *= 2;
            }
        }
    }
}

/// Independent generator per stage, so that skipping stages leaves the others unchanged.
fn stage_rng(seed: u64, stage: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stage);
    rng
}

struct Run {
    report: VerificationReport,
}

impl Run {
    fn stage<T>(&mut self, name: &str, f: impl FnOnce() -> Result<T>) -> Option<T> {
        let start = Instant::now();
        let out = f();
        self.report.timings.push((name.to_string(), start.elapsed().as_secs_f64()));
        match out {
            Ok(v) => Some(v),
            Err(e) => {
                self.report.errors.push(StageError::new(name, &e));
                None
            }
        }
    }

    fn absorb(&mut self, stage: &str, check: CheckResult) {
        for a in check.assertions {
            let source = source_of(stage, &a.name);
            self.report.assertions.push(Claim {
                stage: stage.into(),
                name: a.name,
                passed: a.passed,
                detail: a.detail,
                source,
            });
        }
    }

    fn claim(&mut self, stage: &str, name: &str, passed: bool, detail: impl Into<String>) {
        let mut c = CheckResult::new();
        c.record(name, passed, detail);
        self.absorb(stage, c);
    }
}

fn run_with_degree(q: u64, e: u32, config: &VerifyConfig) -> VerificationReport {
    let mut run = Run { report: VerificationReport::empty(q, e, config) };
    let stages = config.stages;

    let Some(k) = run.stage("field", || make_field(2, e)) else {
        return run.finish();
    };
    run.report.fields.push(FieldInfo::new("coefficients", &k));

    let g = run.stage("gl2", || Gl2::new(q, config.q_bound));
    if let Some(g) = &g {
        run.report.fields.push(FieldInfo::new("defining", g.field()));
        if q % 4 == 3 {
            let f = g.field();
            if let Some(big) = run.stage("field_tower", || make_field(f.characteristic() as u64, 2 * f.degree())) {
                run.report.fields.push(FieldInfo::new("quadratic_extension", &big));
            }
        }
    }

    let mut wfca = None;
    if stages.fusion {
        if let Some(g) = &g {
            wfca = fusion_side(&mut run, g, k.clone(), config.seed);
        }
    }
    let mut image = None;
    if stages.schur {
        if let Some(g) = &g {
            image = schur_side(&mut run, g, k.clone(), config.seed);
        }
    }
    let mut hecke = None;
    if stages.hecke {
        hecke = hecke_side(&mut run, q, k.clone(), config.seed);
    }
    if let (Some(a), Some(b)) = (&image, &hecke) {
        let found = run.stage("cross_construction", || {
            iso_search(&a.basic.algebra, &b.basic.algebra, &mut stage_rng(config.seed, 5))
        });
        if let Some(w) = found {
            run.claim(
                "cross_construction",
                "hecke_and_image_basic_algebras_isomorphic",
                w.is_some(),
                format!("basic dims {} and {}", a.basic.algebra.dim(), b.basic.algebra.dim()),
            );
            run.report.cross_witness = w.map(|w| Witness::new(&w));
        }
    }
    if stages.is_full() {
        main_comparison(&mut run, wfca.as_ref(), image.as_ref(), config.seed);
    }
    run.finish()
}

fn fusion_side(run: &mut Run, g: &Gl2, k: Arc<FiniteField>, seed: u64) -> Option<WfcaResult> {
    let fs = run.stage("sylow2", || FusionSystem::new(g))?;
    let sylow = SylowInfo::new(&fs);
    let q = g.q();
    let m = sylow.m;
    let mut c = CheckResult::new();
    match sylow.kind {
        SylowKind::Semidihedral => {
            c.expect_eq("sylow_order", sylow.order, 1u64 << m);
            c.expect_eq("two_part_of_q_plus_1", 1u64 << (m - 2), crate::matgrp::two_part(q + 1));
        }
        SylowKind::Wreath => {
            c.expect_eq("sylow_order", sylow.order, 1u64 << (2 * m + 1));
            c.expect_eq("two_part_of_q_minus_1", 1u64 << m, crate::matgrp::two_part(q - 1));
            c.expect_eq("center_order", sylow.center_order, 1u64 << m);
        }
    }
    // relations are checked during construction; a failure there is a stage error
    c.record("sylow_relations", true, sylow.relations.join("; "));
    run.report.m = Some(m);
    run.report.sylow = Some(sylow);
    run.absorb("sylow2", c);

    let classes = run.stage("centric_classes", || Ok(fs.centric_classes(g)))?;
    let family = fs.expected_centric_family();
    let hits: Vec<Option<usize>> =
        family.iter().map(|(_, s)| classes.iter().position(|c| c.members.contains(s))).collect();
    let mut covered: Vec<usize> = hits.iter().flatten().copied().collect();
    covered.sort_unstable();
    covered.dedup();
    let missing: Vec<&str> =
        family.iter().zip(&hits).filter(|(_, h)| h.is_none()).map(|((l, _), _)| l.as_str()).collect();
    run.claim(
        "centric_classes",
        "explicit_families_are_centric",
        missing.is_empty(),
        if missing.is_empty() {
            format!("{} explicit subgroups", family.len())
        } else {
            format!("not centric: {missing:?}")
        },
    );
    run.claim(
        "centric_classes",
        "explicit_families_cover_all_classes",
        covered.len() == classes.len(),
        format!("{} of {} classes hit", covered.len(), classes.len()),
    );

    let cat = run.stage("orbit_category", || {
        let cat = OrbitCategory::build(&fs, g, &classes)?;
        cat.check_axioms()?;
        Ok(cat)
    })?;
    let r = run.stage("wfca", || build_wfca_from(g, &fs, &classes, &cat, k, &mut stage_rng(seed, 1)))?;
    run.report.centric_classes = r
        .classes
        .iter()
        .zip(&r.support)
        .map(|(c, s)| CentricRow { summary: c.clone(), blocks: s.blocks.clone(), in_support: s.in_support })
        .collect();
    let check = check_expected_fusion(&r);
    run.absorb("wfca", check);
    run.report.wfca = Some(WfcaReport::new(&r));
    Some(r)
}

fn schur_side(run: &mut Run, g: &Gl2, k: Arc<FiniteField>, seed: u64) -> Option<SchurBuild> {
    if let Some(b) = run.stage("principal_block", || principal_block(g, k.clone(), &mut stage_rng(seed, 2))) {
        let mut c = CheckResult::new();
        c.expect_eq("block_augmentation", b.augmentation, 1);
        c.record("block_idempotents_sum_to_one", b.sum_is_one, format!("{} blocks", b.blocks.len()));
        c.record("block_idempotents_orthogonal", b.orthogonal, format!("{} blocks", b.blocks.len()));
        c.record("b0_acts_as_identity", b.acts_as_identity, "ψ(b0) on k[G/B]");
        run.absorb("principal_block", c);
        run.report.principal_block = Some(b);
    }
    let b = run.stage("schur_image", || schur_image(g, k, &mut stage_rng(seed, 3)))?;
    run.absorb("schur_image", check_expected_schur(&b));
    run.report.schur_image = Some(SchurReport::new(&b));
    Some(b)
}

fn hecke_side(run: &mut Run, q: u64, k: Arc<FiniteField>, seed: u64) -> Option<SchurBuild> {
    let v = k.from_int((q % 2) as i64);
    let b = run.stage("schur_def", || schur_def(2, 2, v, k, &mut stage_rng(seed, 4)))?;
    run.absorb("schur_def", check_expected_schur(&b));
    run.report.schur_hecke = Some(SchurReport::new(&b));
    Some(b)
}

fn main_comparison(run: &mut Run, wfca: Option<&WfcaResult>, image: Option<&SchurBuild>, seed: u64) {
    let wfca_simples = wfca.map(|r| r.simple_count());
    let schur_simples = image.map(|b| b.basic.quiver.num_vertices());
    run.report.counts = Some(Counts {
        fusion_simples: wfca_simples,
        partitions_of_two: PARTITIONS_OF_TWO,
        schur_simples,
        principal_block_simples: PARTITIONS_OF_TWO,
    });
    run.claim(
        "counts",
        "fusion_simples_equal_partitions_of_two",
        wfca_simples == Some(PARTITIONS_OF_TWO),
        format!("observed {wfca_simples:?}, expected {PARTITIONS_OF_TWO}"),
    );
    run.claim(
        "counts",
        "schur_simples_equal_partitions_of_two",
        schur_simples == Some(PARTITIONS_OF_TWO),
        format!("observed {schur_simples:?}, expected {PARTITIONS_OF_TWO}"),
    );
    let (Some(wfca), Some(image)) = (wfca, image) else {
        run.claim("socle_quotient", "witness_found", false, "an earlier stage did not complete");
        return;
    };
    let basic = &image.basic;
    let target = wfca.basic.algebra.dim();
    let mut rng = stage_rng(seed, 6);
    let mut chosen = None;
    for side in [Side::Left, Side::Right] {
        let Some((soc, quotient)) =
            run.stage("socle_quotient", || socle_quotient(&basic.algebra, &basic.radical, side))
        else {
            continue;
        };
        let dim = quotient.algebra.dim();
        run.report.socle_quotients.push(SocleQuotient { side, socle_dim: soc.dim(), quotient_dim: dim });
        if chosen.is_some() || dim != target {
            continue;
        }
        if let Some(Some(w)) = run.stage("iso_search", || iso_search(&wfca.basic.algebra, &quotient.algebra, &mut rng))
        {
            chosen = Some((side, Witness::new(&w)));
        }
    }
    let found = chosen.is_some();
    if let Some((side, w)) = chosen {
        run.report.socle_side = Some(side);
        run.report.witness = Some(w);
    }
    run.claim(
        "socle_quotient",
        "quotient_dim_matches_fusion_basic",
        run.report.socle_quotients.iter().any(|s| s.quotient_dim == target),
        format!(
            "quotient dims {:?}, fusion basic dim {target}",
            run.report.socle_quotients.iter().map(|s| s.quotient_dim).collect::<Vec<_>>()
        ),
    );
    run.claim("socle_quotient", "witness_found", found, format!("side {:?}", run.report.socle_side));
}

impl Run {
    fn finish(mut self) -> VerificationReport {
        let r = &mut self.report;
        let all_passed = r.assertions.iter().all(|a| a.passed);
        r.outcome = if r.errors.iter().any(|e| e.kind == ErrorKind::Bound) {
            Outcome::Bound
        } else if all_passed && r.errors.is_empty() && (!r.stages_full || r.witness.is_some()) {
            Outcome::Pass
        } else {
            Outcome::Fail
        };
        self.report
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format `{s}`")),
        }
    }
}

pub fn format_report(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        Format::Text => render_text(report),
    }
}

/// Writes a report to `path`.
pub fn emit_report(report: &VerificationReport, format: Format, path: &Path) -> Result<()> {
    if path.as_os_str().is_empty() {
        return Err(Error::InvalidArgument("empty output path".into()));
    }
    std::fs::write(path, format_report(report, format)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Runs every `q` of a set, each independently.
pub fn run_all(qs: &[u64], config: &VerifyConfig) -> Vec<Result<VerificationReport>> {
    use rayon::prelude::*;
    qs.par_iter().map(|&q| run_verify(q, config)).collect()
}

impl From<&Error> for ErrorKind {
    fn from(e: &Error) -> Self {
        match e {
            Error::Bound(_) | Error::FieldTooLarge { .. } => ErrorKind::Bound,
            Error::SplittingFailure { .. } => ErrorKind::SplittingFailure,
            Error::InvalidQ { .. } | Error::InvalidArgument(_) | Error::NotPrime(_) => ErrorKind::Invalid,
            _ => ErrorKind::Internal,
        }
    }
}

#[cfg(test)]
mod tests;
