//! q-Schur algebras, built as Hecke endomorphism algebras and as the image of
//! `kGL2(q)` acting on the projective line.

pub mod block;
pub mod hecke;
pub mod image;

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

pub use block::{class_sum_center, principal_block, BlockSummary, ClassSumCenter, PrincipalBlock};
pub use hecke::{Composition, HeckeAlgebra, RightModule, MAX_HECKE_N};
pub use image::{image_algebra, permutation_matrix, ImageAlgebra, ProjectiveLine};

use crate::algkit::{basic_presentation, socle, Algebra, AlgebraModule, BasicPresentation, Side};
use crate::check::CheckResult;
use crate::error::{Error, Result};
use crate::ffield::{Fe, FiniteField};
use crate::linalg::{unit_vector, Subspace};
use crate::matgrp::Gl2;

/// Largest `dim ⊕ M^μ` accepted when solving for `End_H`.
pub const MAX_ENDO_MODULE_DIM: usize = 64;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SchurSource {
    Hecke,
    Image,
}

/// Socle dimensions of the basic algebra, and of the quotients by them.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SocleData {
    pub left: usize,
    pub right: usize,
    pub two_sided: usize,
    pub left_is_ideal: bool,
    pub right_is_ideal: bool,
}

/// Module-theoretic facts about `V = k[G/B]` on the image route.
#[derive(Clone, Debug, Serialize)]
pub struct ImageData {
    pub q: u64,
    pub distinct_permutations: usize,
    pub scalars_trivial: bool,
    /// Composition factor dimensions of `V`, top first.
    pub v_composition: Vec<usize>,
    /// Composition factor dimensions of the sum-zero submodule `W`, top first.
    pub w_composition: Vec<usize>,
    pub all_ones_submodule: bool,
    pub v_projective: bool,
    pub w_projective: bool,
}

#[derive(Clone, Debug)]
pub struct SchurBuild {
    pub source: SchurSource,
    pub algebra: Algebra,
    pub module: AlgebraModule,
    pub basic: BasicPresentation,
    pub socle: SocleData,
    pub image: Option<ImageData>,
}

impl SchurBuild {
    /// Dimensions of the simple modules, in Wedderburn order.
    pub fn simple_dims(&self) -> Vec<usize> {
        self.basic.structure.factors.iter().map(|w| w.size * w.center_dim).collect()
    }
}

fn socle_data(b: &BasicPresentation) -> SocleData {
    let alg = &b.algebra;
    let f = alg.field();
    let left = socle(alg, &b.radical, Side::Left);
    let right = socle(alg, &b.radical, Side::Right);
    SocleData {
        left: left.dim(),
        right: right.dim(),
        two_sided: left.intersection(f, &right).dim(),
        left_is_ideal: alg.is_ideal(&left),
        right_is_ideal: alg.is_ideal(&right),
    }
}

/// `End_H(⊕_{μ ∈ Λ(d,n)} M^μ)` for the Hecke algebra with parameter `v`.
pub fn schur_def<R: Rng>(n: usize, d: usize, v: Fe, k: Arc<FiniteField>, rng: &mut R) -> Result<SchurBuild> {
    if d > n {
        return Err(Error::InvalidArgument(format!("height bound d = {d} exceeds n = {n}")));
    }
    schur_def_with(n, &Composition::all(d, n), v, k, rng)
}

/// `End_H(⊕ M^μ)` over an explicit list of compositions (repeats allowed up to isomorphism).
pub fn schur_def_with<R: Rng>(
    n: usize,
    compositions: &[Composition],
    v: Fe,
    k: Arc<FiniteField>,
    rng: &mut R,
) -> Result<SchurBuild> {
    let h = HeckeAlgebra::new(n, v, k.clone())?;
    let parts: Vec<RightModule> = compositions.iter().map(|mu| h.m_mu_module(mu)).collect::<Result<_>>()?;
    let total = RightModule::direct_sum(&parts)?;
    let dim = total.dim();
    if dim > MAX_ENDO_MODULE_DIM {
        return Err(Error::Bound(format!("module of dimension {dim} exceeds {MAX_ENDO_MODULE_DIM}")));
    }
    let endos = total.endomorphisms(&k)?;
    let span = Subspace::from_vectors(&k, dim * dim, endos.into_iter().map(|m| m.into_flat()));
    let algebra = Algebra::from_matrix_span(k, dim, &span)?;
    finish(SchurSource::Hecke, algebra, None, rng)
}

fn finish<R: Rng>(source: SchurSource, algebra: Algebra, image: Option<ImageData>, rng: &mut R) -> Result<SchurBuild> {
    let module = AlgebraModule::natural(&algebra)?;
    let basic = basic_presentation(&algebra, rng)?;
    let socle = socle_data(&basic);
    Ok(SchurBuild { source, algebra, module, basic, socle, image })
}

/// The image of `kG` in `End_k(k[G/B])`, with the structure of `V` and `W` recorded.
pub fn schur_image<R: Rng>(g: &Gl2, k: Arc<FiniteField>, rng: &mut R) -> Result<SchurBuild> {
    let img = image_algebra(g, k.clone())?;
    let algebra = img.algebra;
    let module = AlgebraModule::natural(&algebra)?;
    let basic = basic_presentation(&algebra, rng)?;
    let s = &basic.structure;
    let n = img.line.len();
    let ones = Subspace::from_vectors(&k, n, [vec![Fe::ONE; n]]);
    let sum_zero = Subspace::from_vectors(
        &k,
        n,
        (0..n - 1).map(|i| crate::linalg::sum(&k, &unit_vector(n, i), &unit_vector(n, n - 1))),
    );
    let w = module.submodule(&sum_zero)?;
    let dims = |fs: Vec<crate::algkit::CompositionFactor>| fs.into_iter().map(|c| c.dim).collect::<Vec<_>>();
    let data = ImageData {
        q: g.q(),
        distinct_permutations: img.distinct_permutations,
        scalars_trivial: img.scalars_trivial,
        v_composition: dims(module.composition_factors(s)?),
        w_composition: dims(w.composition_factors(s)?),
        all_ones_submodule: module.is_submodule(&ones),
        v_projective: module.is_projective(&algebra, s, &basic.parent_idempotents)?,
        w_projective: w.is_projective(&algebra, s, &basic.parent_idempotents)?,
    };
    let socle = socle_data(&basic);
    Ok(SchurBuild { source: SchurSource::Image, algebra, module, basic, socle, image: Some(data) })
}

/// Compares a build with the expected basic algebra: two vertices, one arrow each way,
/// exactly one vanishing length-two cycle, projectives of dimensions 3 and 2.
pub fn check_expected_schur(b: &SchurBuild) -> CheckResult {
    let mut c = CheckResult::new();
    let quiver = &b.basic.quiver;
    c.expect_eq("simple_count", quiver.num_vertices(), 2);
    c.expect_eq("basic_dim", b.basic.algebra.dim(), 5);
    c.record(
        "one_arrow_each_direction",
        quiver.num_vertices() == 2 && quiver.arrows[0][1] == 1 && quiver.arrows[1][0] == 1 && !quiver.has_loops(),
        format!("arrows {:?}", quiver.arrows),
    );
    let cycles: Vec<bool> = quiver
        .composites
        .iter()
        .filter(|x| x.path[0] == x.path[2] && x.path[0] != x.path[1])
        .map(|x| x.vanishes)
        .collect();
    c.record(
        "exactly_one_vanishing_composite",
        cycles.len() == 2 && cycles.iter().filter(|&&v| v).count() == 1,
        format!("length-two cycles vanish: {cycles:?}"),
    );
    let mut proj: Vec<usize> = quiver.vertices.iter().map(|v| v.projective_dim).collect();
    proj.sort();
    c.expect_eq("projective_dims", proj, vec![2, 3]);
    if let Some(img) = &b.image {
        let q = img.q as usize;
        let mut simple = b.simple_dims();
        simple.sort();
        c.expect_eq("simple_dims", simple, vec![1, q - 1]);
        c.expect_eq("image_dim", b.algebra.dim(), q * q + 1);
        c.expect_eq("v_composition", img.v_composition.clone(), vec![1, q - 1, 1]);
        c.expect_eq("w_composition", img.w_composition.clone(), vec![q - 1, 1]);
        c.record("all_ones_submodule", img.all_ones_submodule, "span of v_1 + ... + v_(q+1) is invariant");
        c.record("scalars_act_trivially", img.scalars_trivial, "ψ factors through PGL2(q)");
        c.record("v_projective", img.v_projective, "dim V equals the dimension of its projective cover");
        c.record("w_projective", img.w_projective, "dim W equals the dimension of its projective cover");
    }
    c
}

#[cfg(test)]
mod tests;
