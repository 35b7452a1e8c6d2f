//! The image of `kG` in `End_k(k[P^1(F_q)])` for `G = GL2(q)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algkit::Algebra;
use crate::error::{Error, Result};
use crate::ffield::{Fe, FiniteField};
use crate::linalg::{Matrix, Subspace};
use crate::matgrp::{Gl2, GroupElement};

/// Points of the projective line in the order `[1:0], [0:1], [ε:1], [ε^2:1], ..., [ε^(q-1):1]`.
#[derive(Clone, Debug)]
pub struct ProjectiveLine {
    field: Arc<FiniteField>,
    points: Vec<[Fe; 2]>,
}

impl ProjectiveLine {
    pub fn new(field: Arc<FiniteField>) -> Self {
        let q = field.order() as usize;
        let eps = field.generator();
        let mut points = vec![[Fe::ONE, Fe::ZERO], [Fe::ZERO, Fe::ONE]];
        let mut x = eps;
        for _ in 1..q {
            points.push([x, Fe::ONE]);
            x = field.mul(x, eps);
        }
        ProjectiveLine { field, points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[[Fe; 2]] {
        &self.points
    }

    /// Index of the point through a nonzero vector.
    pub fn index(&self, u: Fe, v: Fe) -> usize {
        let f = &*self.field;
        if v.is_zero() {
            return 0;
        }
        let r = f.mul(u, f.inv(v).expect("nonzero"));
        if r.is_zero() {
            return 1;
        }
        let q = f.order() as usize;
        // ε^i sits at position i + 1, with ε^(q-1) = 1 last
        let i = f.log(r).expect("nonzero") as usize;
        if i == 0 {
            q
        } else {
            i + 1
        }
    }

    /// The permutation of the points induced by a matrix acting on column vectors.
    pub fn permutation(&self, g: &GroupElement) -> Vec<u16> {
        let f = &*self.field;
        let [a, b, c, d] = g.0;
        self.points
            .iter()
            .map(|&[u, v]| self.index(f.add(f.mul(a, u), f.mul(b, v)), f.add(f.mul(c, u), f.mul(d, v))) as u16)
            .collect()
    }
}

/// Permutation matrix over `k` with `v_j -> v_{perm[j]}`.
pub fn permutation_matrix(perm: &[u16]) -> Matrix {
    let n = perm.len();
    let mut m = Matrix::zeros(n, n);
    for (j, &i) in perm.iter().enumerate() {
        m.set(i as usize, j, Fe::ONE);
    }
    m
}

/// The image algebra with the distinct permutations it is spanned by.
pub struct ImageAlgebra {
    pub line: ProjectiveLine,
    pub algebra: Algebra,
    pub distinct_permutations: usize,
    pub scalars_trivial: bool,
}

/// Spans `ψ(G)` inside `M_{q+1}(k)` by inserting the distinct permutation matrices.
pub fn image_algebra(g: &Gl2, k: Arc<FiniteField>) -> Result<ImageAlgebra> {
    let line = ProjectiveLine::new(g.field().clone());
    let n = line.len();
    let perms: BTreeSet<Vec<u16>> = g.elements().par_iter().map(|x| line.permutation(x)).collect();
    let identity: Vec<u16> = (0..n as u16).collect();
    let scalars_trivial =
        g.field().elements().filter(|s| !s.is_zero()).all(|s| line.permutation(&g.scalar(s)) == identity);
    let mut span = Subspace::new(n * n);
    for p in &perms {
        span.insert(&k, permutation_matrix(p).into_flat());
    }
    let gens: Vec<Matrix> = g.generators().iter().map(|x| permutation_matrix(&line.permutation(x))).collect();
    let algebra = Algebra::from_matrix_span(k, n, &span)?;
    let gen_coords: Vec<Vec<Fe>> = gens
        .iter()
        .map(|m| algebra.coords_of_matrix(m).ok_or_else(|| Error::Internal("generator outside image".into())))
        .collect::<Result<_>>()?;
    Ok(ImageAlgebra {
        line,
        algebra: algebra.with_generators(gen_coords),
        distinct_permutations: perms.len(),
        scalars_trivial,
    })
}
