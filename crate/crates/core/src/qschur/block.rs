//! The principal block idempotent of `kG` on the class-sum basis of `Z(kG)`.

use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::image::{permutation_matrix, ProjectiveLine};
use crate::algkit::{split_commutative, Algebra, MAX_TABLE_DIM};
use crate::error::{internal, Error, Result};
use crate::ffield::{Fe, FiniteField};
use crate::linalg::{axpy, Matrix};
use crate::matgrp::{ConjClassTable, Gl2};

/// `Z(kG)` with basis the class sums.
pub struct ClassSumCenter {
    pub classes: ConjClassTable,
    pub algebra: Algebra,
}

/// Structure constants `C_i C_j = Σ_k c_ijk C_k`, where `c_ijk` counts `x in C_i` with
/// `x^-1 z_k in C_j` for a fixed `z_k in C_k`.
pub fn class_sum_center(g: &Gl2, k: Arc<FiniteField>) -> Result<ClassSumCenter> {
    let classes = g.conjugacy_classes();
    let r = classes.len();
    if r > MAX_TABLE_DIM {
        return Err(Error::Bound(format!("{r} conjugacy classes exceed the table bound {MAX_TABLE_DIM}")));
    }
    // counts[k][i * r + j]
    let counts: Vec<Vec<u64>> = classes
        .classes
        .par_iter()
        .map(|ck| {
            let z = g.element(ck.representative);
            let mut c = vec![0u64; r * r];
            for (xi, x) in g.elements().iter().enumerate() {
                let y = g.index_of(&g.mul(&g.inv(x), &z)).expect("group element");
                let i = classes.class_of[xi] as usize;
                let j = classes.class_of[y] as usize;
                c[i * r + j] += 1;
            }
            c
        })
        .collect();
    let mut table = vec![Vec::new(); r * r];
    for (kk, c) in counts.iter().enumerate() {
        for (idx, &n) in c.iter().enumerate() {
            let v = k.from_int((n % k.characteristic() as u64) as i64);
            if !v.is_zero() {
                table[idx].push((kk as u32, v));
            }
        }
    }
    let identity = classes.class_of[g.index_of(&g.identity()).expect("identity")] as usize;
    let mut one = vec![Fe::ZERO; r];
    one[identity] = Fe::ONE;
    let algebra = Algebra::from_table(k, r, table, one)?;
    Ok(ClassSumCenter { classes, algebra })
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockSummary {
    /// Number of class sums in the support of the idempotent.
    pub support: usize,
    pub augmentation: u32,
}

/// The principal block `b0` and the checks made on it.
#[derive(Clone, Debug, Serialize)]
pub struct PrincipalBlock {
    pub class_count: usize,
    pub blocks: Vec<BlockSummary>,
    /// Coordinates of `b0` on the class sums.
    #[serde(skip)]
    pub b0: Vec<Fe>,
    pub augmentation: u32,
    pub sum_is_one: bool,
    pub orthogonal: bool,
    /// `ψ(b0)` is the identity of `End_k(k[G/B])`.
    pub acts_as_identity: bool,
}

fn augmentation(k: &FiniteField, classes: &ConjClassTable, x: &[Fe]) -> Fe {
    let mut a = Fe::ZERO;
    for (c, &v) in classes.classes.iter().zip(x) {
        a = k.add(a, k.mul(v, k.from_int((c.size() % k.characteristic() as usize) as i64)));
    }
    a
}

pub fn principal_block<R: Rng>(g: &Gl2, k: Arc<FiniteField>, rng: &mut R) -> Result<PrincipalBlock> {
    let center = class_sum_center(g, k.clone())?;
    let z = &center.algebra;
    let idems = split_commutative(z, rng)?;
    let mut total = z.zero();
    for e in &idems {
        axpy(&k, &mut total, Fe::ONE, e);
    }
    let orthogonal = idems
        .iter()
        .enumerate()
        .all(|(i, a)| idems.iter().skip(i + 1).all(|b| z.mul(a, b).iter().all(|c| c.is_zero())));
    let blocks: Vec<BlockSummary> = idems
        .iter()
        .map(|e| BlockSummary {
            support: e.iter().filter(|c| !c.is_zero()).count(),
            augmentation: augmentation(&k, &center.classes, e).0,
        })
        .collect();
    let principal: Vec<&Vec<Fe>> = idems.iter().filter(|e| augmentation(&k, &center.classes, e) == Fe::ONE).collect();
    let [b0] = principal.as_slice() else {
        return internal("expected exactly one block idempotent with augmentation 1");
    };

    let line = ProjectiveLine::new(g.field().clone());
    let n = line.len();
    let mut image = Matrix::zeros(n, n);
    for (class, &c) in center.classes.classes.iter().zip(b0.iter()) {
        if c.is_zero() {
            continue;
        }
        for &x in &class.members {
            let m = permutation_matrix(&line.permutation(&g.element(x)));
            image = image.add(&k, &m.scale(&k, c));
        }
    }
    Ok(PrincipalBlock {
        class_count: center.classes.len(),
        blocks,
        b0: (*b0).clone(),
        augmentation: augmentation(&k, &center.classes, b0).0,
        sum_is_one: total == z.one(),
        orthogonal,
        acts_as_identity: image == Matrix::identity(n),
    })
}
