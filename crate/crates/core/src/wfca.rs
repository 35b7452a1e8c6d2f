//! The weighted fusion category algebra `ē k F̄^c ē` of the principal 2-block of GL2(q).

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::algkit::{
    algebra_from_category, basic_presentation, defect_zero_idempotent, lift_blocks, radical, Algebra,
    BasicPresentation, QuiverData,
};
use crate::check::CheckResult;
use crate::error::{internal, Result};
use crate::ffield::{Fe, FiniteField};
use crate::fusion::{summarize, CentricClass, CentricClassSummary, FusionSystem, OrbitCategory};
use crate::linalg::{axpy, is_zero};
use crate::matgrp::{build_gl2, Gl2};
use crate::smallgroup::StructureType;

/// Defect-zero data of `k Aut_F̄(Q)` for one object of the skeleton.
#[derive(Clone, Debug, Serialize)]
pub struct SupportEntry {
    pub object: usize,
    pub subgroup_order: usize,
    pub aut_fbar_order: usize,
    pub aut_fbar_structure: String,
    /// Dimensions of the blocks of `k Aut_F̄(Q)`, with their defect-zero flags.
    pub blocks: Vec<(usize, bool)>,
    /// Whether `ē_Q` is nonzero.
    pub in_support: bool,
}

/// Dimensions of the pieces `ē_Q A ē_Q` and of the off-diagonal part.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Decomposition {
    /// `(object, dim ē_Q A ē_Q)` for the support objects.
    pub diagonal: Vec<(usize, usize)>,
    pub off_diagonal: usize,
    pub radical: usize,
    pub radical_squared: usize,
}

#[derive(Clone, Debug)]
pub struct WfcaResult {
    pub q: u64,
    pub field: Arc<FiniteField>,
    pub classes: Vec<CentricClassSummary>,
    pub category_dim: usize,
    /// `ē` in the category algebra.
    pub e_bar: Vec<Fe>,
    pub support: Vec<SupportEntry>,
    /// The corner algebra with unit `ē`.
    pub algebra: Algebra,
    pub decomposition: Decomposition,
    pub basic: BasicPresentation,
    /// Quiver with vertex 0 the class of `P`.
    pub quiver: QuiverData,
    /// Skeleton object of each quiver vertex.
    pub vertex_objects: Vec<usize>,
}

impl WfcaResult {
    pub fn simple_count(&self) -> usize {
        self.quiver.num_vertices()
    }
}

/// Builds the fusion data of GL2(q) and then the weighted algebra over `field`.
pub fn build_wfca<R: Rng>(q: u64, field: Arc<FiniteField>, rng: &mut R) -> Result<WfcaResult> {
    let g = build_gl2(q)?;
    let fs = FusionSystem::new(&g)?;
    let classes = fs.centric_classes(&g);
    let cat = OrbitCategory::build(&fs, &g, &classes)?;
    build_wfca_from(&g, &fs, &classes, &cat, field, rng)
}

/// The weighted algebra for an already computed orbit category.
pub fn build_wfca_from<R: Rng>(
    g: &Gl2,
    fs: &FusionSystem,
    classes: &[CentricClass],
    cat: &OrbitCategory,
    field: Arc<FiniteField>,
    rng: &mut R,
) -> Result<WfcaResult> {
    let f = field.clone();
    let full = algebra_from_category(cat, field.clone())?;
    let d = full.dim();

    let mut e_bar = vec![Fe::ZERO; d];
    let mut support = Vec::with_capacity(cat.num_objects());
    let mut pieces = Vec::new();
    for obj in 0..cat.num_objects() {
        let (aut, morphisms) = cat.auto_group(obj)?;
        let group_alg = Algebra::from_group(&aut, field.clone())?;
        let j = radical(&group_alg)?;
        let blocks = lift_blocks(&group_alg, &j, rng)?;
        let local = defect_zero_idempotent(&group_alg, &blocks);
        let mut e_q = vec![Fe::ZERO; d];
        for (i, &c) in local.iter().enumerate() {
            e_q[morphisms[i] as usize] = c;
        }
        if !full.is_idempotent(&e_q) {
            return internal("defect-zero idempotent does not stay idempotent in the category algebra");
        }
        let in_support = !is_zero(&e_q);
        support.push(SupportEntry {
            object: obj,
            subgroup_order: fs.subgroup(cat.object(obj)).order(),
            aut_fbar_order: aut.order(),
            aut_fbar_structure: aut.structure().to_string(),
            blocks: blocks.iter().map(|b| (b.dim, b.defect_zero)).collect(),
            in_support,
        });
        if in_support {
            axpy(&f, &mut e_bar, Fe::ONE, &e_q);
            pieces.push((obj, e_q));
        }
    }
    let (algebra, embedding) = full.corner(&e_bar)?;

    let diagonal: Vec<(usize, usize)> = pieces.iter().map(|(o, e)| (*o, full.peirce(e, e).dim())).collect();
    let off_diagonal = algebra.dim() - diagonal.iter().map(|x| x.1).sum::<usize>();
    let jac = radical(&algebra)?;
    let jac2 = algebra.product_space(jac.basis(), jac.basis());

    let basic = basic_presentation(&algebra, rng)?;
    // a quiver vertex belongs to the support object whose ē_Q it does not annihilate
    let mut vertex_objects = Vec::with_capacity(basic.idempotents.len());
    for e in &basic.idempotents {
        let in_corner = combine(&f, algebra.dim(), &basic.embedding, e);
        let in_full = combine(&f, d, &embedding, &in_corner);
        let owner = pieces
            .iter()
            .find(|(_, e_q)| !is_zero(&full.mul(e_q, &in_full)))
            .map(|(o, _)| *o)
            .ok_or_else(|| crate::error::Error::Internal("vertex idempotent outside the support".into()))?;
        vertex_objects.push(owner);
    }
    let mut perm: Vec<usize> = (0..vertex_objects.len()).collect();
    perm.sort_by_key(|&v| vertex_objects[v]);
    let quiver = basic.quiver.relabeled(&perm);
    let vertex_objects = perm.iter().map(|&v| vertex_objects[v]).collect();

    Ok(WfcaResult {
        q: g.q(),
        field,
        classes: summarize(fs, cat, classes)?,
        category_dim: d,
        e_bar,
        support,
        decomposition: Decomposition { diagonal, off_diagonal, radical: jac.dim(), radical_squared: jac2.dim() },
        algebra,
        basic,
        quiver,
        vertex_objects,
    })
}

/// `Σ coords[r] basis[r]`.
fn combine(f: &FiniteField, dim: usize, basis: &[Vec<Fe>], coords: &[Fe]) -> Vec<Fe> {
    let mut out = vec![Fe::ZERO; dim];
    for (b, &c) in basis.iter().zip(coords) {
        if !c.is_zero() {
            axpy(f, &mut out, c, b);
        }
    }
    out
}

/// Compares a build with the expected answer: two simples, a three-dimensional basic algebra
/// with one arrow from the non-`P` vertex to the `P` vertex and square-zero radical.
pub fn check_expected_fusion(r: &WfcaResult) -> CheckResult {
    let mut c = CheckResult::new();
    let supported: Vec<&SupportEntry> = r.support.iter().filter(|s| s.in_support).collect();
    c.expect_eq("support_size", supported.len(), 2);
    c.record(
        "support_contains_p",
        supported.first().is_some_and(|s| s.object == 0 && s.aut_fbar_order == 1),
        "the whole Sylow subgroup has trivial Aut_F̄ and is in the support",
    );
    c.record(
        "support_other_is_s3",
        supported.get(1).is_some_and(|s| s.aut_fbar_structure == StructureType::Symmetric3.to_string()),
        format!("{:?}", supported.iter().map(|s| s.aut_fbar_structure.clone()).collect::<Vec<_>>()),
    );
    c.record(
        "two_groups_contribute_nothing",
        r.support.iter().all(|s| s.in_support || s.aut_fbar_order.is_power_of_two() && s.aut_fbar_order > 1),
        "every class outside the support has a nontrivial 2-group as Aut_F̄",
    );
    c.expect_eq("simple_count", r.simple_count(), 2);
    c.expect_eq("basic_dim", r.basic.algebra.dim(), 3);
    c.expect_eq("basic_radical_dim", r.basic.radical.dim(), 1);
    c.expect_eq("radical_squared_zero", r.quiver.radical_layers.get(1).copied(), Some(0));
    c.expect_eq("quiver_arrows", r.quiver.arrows.clone(), vec![vec![0, 0], vec![1, 0]]);
    c.record(
        "quiver_up_to_relabeling",
        r.quiver.num_vertices() == 2 && r.quiver.num_arrows() == 1 && !r.quiver.has_loops(),
        format!("arrows {:?}", r.quiver.arrows),
    );
    let mut sizes: Vec<usize> = r.basic.structure.factors.iter().map(|w| w.size).collect();
    sizes.sort();
    c.record(
        "semisimple_quotient_k_x_m2",
        sizes == [1, 2] && r.basic.structure.is_split(),
        format!("factor sizes {sizes:?}"),
    );
    c.expect_eq("corner_radical_squared_zero", r.decomposition.radical_squared, 0);
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn q3_matches_expected_shape() {
        let f = make_field(2, 1).unwrap();
        let r = build_wfca(3, f, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        let check = check_expected_fusion(&r);
        for a in check.failures() {
            panic!("{}: {}", a.name, a.detail);
        }
        // k (for P) plus M2(k) (for Q8) plus a two-dimensional radical
        assert_eq!(r.decomposition.diagonal.iter().map(|x| x.1).collect::<Vec<_>>(), vec![1, 4]);
        assert_eq!(r.decomposition.off_diagonal, 2);
        assert_eq!(r.decomposition.radical, 2);
    }

    #[test]
    fn q5_support_skips_r2() {
        let f = make_field(2, 1).unwrap();
        let r = build_wfca(5, f, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        assert!(check_expected_fusion(&r).passed());
        let c2 = r.support.iter().find(|s| s.aut_fbar_order == 2).expect("a class with Aut_F̄ = C2");
        assert!(!c2.in_support);
    }

    #[test]
    fn every_default_q_passes() {
        let f = make_field(2, 1).unwrap();
        for q in [7, 9, 11, 13] {
            let r = build_wfca(q, f.clone(), &mut ChaCha8Rng::seed_from_u64(q)).unwrap();
            let check = check_expected_fusion(&r);
            assert!(check.passed(), "q={q}: {:?}", check.failures().collect::<Vec<_>>());
        }
    }
}
